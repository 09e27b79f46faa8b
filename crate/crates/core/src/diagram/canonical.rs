//! Canonical forms of floor diagrams up to label-preserving isomorphism.
//!
//! Floors are first split by iterated colour refinement, which only depends
//! on the isomorphism class. The canonical key is then the smallest encoding
//! over all orderings that respect the colour classes; the orderings that
//! reach it differ by exactly the floor automorphisms.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::FloorDiagram;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<i64>);

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// Floor permutations `sigma` (as `sigma[old] = new`) mapping the diagram
    /// onto itself. Always contains the identity.
    pub floor_automorphisms: Vec<Vec<usize>>,
    /// Position of each floor in the canonical ordering.
    pub canonical_order: Vec<usize>,
}

fn refine_colours(d: &FloorDiagram) -> Vec<usize> {
    let n = d.floors.len();
    let mut colour: Vec<usize> = {
        let sigs: Vec<_> = d.floors.iter().map(|f| (f.l, f.r, f.sources, f.sinks)).collect();
        rank(&sigs)
    };
    loop {
        let sigs: Vec<_> = (0..n)
            .map(|v| {
                let outs: Vec<(usize, u64)> =
                    d.elevators.iter().filter(|e| e.from == v).map(|e| (colour[e.to], e.weight)).sorted().collect();
                let ins: Vec<(usize, u64)> =
                    d.elevators.iter().filter(|e| e.to == v).map(|e| (colour[e.from], e.weight)).sorted().collect();
                (colour[v], outs, ins)
            })
            .collect();
        let next = rank(&sigs);
        let classes = |c: &[usize]| c.iter().copied().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let distinct: BTreeMap<T, usize> = sigs.iter().cloned().sorted().dedup().enumerate().map(|(i, s)| (s, i)).collect();
    sigs.iter().map(|s| distinct[s]).collect()
}

fn encode(d: &FloorDiagram, pos: &[usize]) -> Vec<i64> {
    let n = d.floors.len();
    let mut by_pos = vec![0usize; n];
    for (v, &p) in pos.iter().enumerate() {
        by_pos[p] = v;
    }
    let mut key = Vec::with_capacity(1 + 4 * n + 1 + 3 * d.elevators.len());
    key.push(n as i64);
    for &v in &by_pos {
        let f = &d.floors[v];
        key.extend([f.l, f.r, f.sources as i64, f.sinks as i64]);
    }
    let edges: Vec<(usize, usize, u64)> =
        d.elevators.iter().map(|e| (pos[e.from], pos[e.to], e.weight)).sorted().collect();
    key.push(edges.len() as i64);
    for (a, b, w) in edges {
        key.extend([a as i64, b as i64, w as i64]);
    }
    key
}

pub(super) fn canonical_form(d: &FloorDiagram) -> CanonicalForm {
    let colour = refine_colours(d);
    let n = colour.len();
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        blocks.entry(colour[v]).or_default().push(v);
    }
    let blocks: Vec<Vec<usize>> = blocks.into_values().collect();
    let block_perms: Vec<Vec<Vec<usize>>> =
        blocks.iter().map(|b| b.iter().copied().permutations(b.len()).collect()).collect();

    let mut best: Option<Vec<i64>> = None;
    let mut best_positions: Vec<Vec<usize>> = Vec::new();
    for choice in block_perms.iter().map(|p| p.iter()).multi_cartesian_product() {
        let mut pos = vec![0usize; n];
        let mut next = 0;
        for perm in &choice {
            for &v in perm.iter() {
                pos[v] = next;
                next += 1;
            }
        }
        let key = encode(d, &pos);
        match &best {
            Some(b) if key > *b => {}
            Some(b) if key == *b => best_positions.push(pos),
            _ => {
                best = Some(key);
                best_positions = vec![pos];
            }
        }
    }
    if blocks.is_empty() {
        best = Some(encode(d, &[]));
        best_positions = vec![Vec::new()];
    }
    let base = best_positions[0].clone();
    let mut inverse_base = vec![0usize; n];
    for (v, &p) in base.iter().enumerate() {
        inverse_base[p] = v;
    }
    let floor_automorphisms = best_positions.iter().map(|pos| (0..n).map(|v| inverse_base[pos[v]]).collect()).collect();
    CanonicalForm {
        key: CanonicalKey(best.expect("at least one ordering")),
        floor_automorphisms,
        canonical_order: base,
    }
}
