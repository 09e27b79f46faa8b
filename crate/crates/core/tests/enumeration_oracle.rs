//! Brute-force floor diagram generator for `Delta_{a,b,n}`: every labelled
//! DAG with edges going up in index, every distribution of sources and sinks,
//! every weighting; classes compared up to relabelling of floors.

use std::collections::{BTreeMap, BTreeSet};

use floordiag_core::diagram::enumerate_floor_diagrams;
use floordiag_core::{FloorDiagram, HTransversePolygon};
use itertools::Itertools;

type Encoding = (Vec<(u32, u32)>, Vec<(usize, usize, u64)>);

fn encode(legs: &[(u32, u32)], edges: &[(usize, usize, u64)]) -> Encoding {
    let a = legs.len();
    (0..a)
        .permutations(a)
        .map(|perm| {
            let mut l = vec![(0, 0); a];
            for (old, &new) in perm.iter().enumerate() {
                l[new] = legs[old];
            }
            let mut e: Vec<_> = edges.iter().map(|&(i, j, w)| (perm[i], perm[j], w)).collect();
            e.sort_unstable();
            (l, e)
        })
        .min()
        .unwrap()
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|x| {
            compositions(total - x, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, x);
                rest
            })
        })
        .collect()
}

fn connected(a: usize, pairs: &[(usize, usize)]) -> bool {
    let mut comp: Vec<usize> = (0..a).collect();
    fn find(c: &mut Vec<usize>, v: usize) -> usize {
        if c[v] != v {
            let r = find(c, c[v]);
            c[v] = r;
        }
        c[v]
    }
    for &(i, j) in pairs {
        let (ri, rj) = (find(&mut comp, i), find(&mut comp, j));
        comp[ri] = rj;
    }
    (0..a).map(|v| find(&mut comp, v)).collect::<BTreeSet<_>>().len() == 1
}

/// Assigns weights edge by edge (edges sorted by tail), closing the balance
/// of a floor once all its outgoing edges have weights.
fn weightings(pairs: &[(usize, usize)], out_needed: &dyn Fn(usize, u64) -> i64, a: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    fn rec(
        k: usize,
        pairs: &[(usize, usize)],
        w: &mut Vec<u64>,
        inflow: &mut Vec<u64>,
        out_needed: &dyn Fn(usize, u64) -> i64,
        a: usize,
        out: &mut Vec<Vec<u64>>,
    ) {
        // check floors whose outgoing edges are all assigned
        let done_upto = if k < pairs.len() { pairs[k].0 } else { a };
        let first_open = if k == 0 { 0 } else { pairs[k - 1].0 };
        for v in first_open..done_upto {
            let need = out_needed(v, inflow[v]);
            let have: u64 = pairs[..k].iter().zip(w.iter()).filter(|(p, _)| p.0 == v).map(|(_, &x)| x).sum();
            if need != have as i64 {
                return;
            }
        }
        if k == pairs.len() {
            out.push(w.clone());
            return;
        }
        let (i, j) = pairs[k];
        let need = out_needed(i, inflow[i]);
        let used: u64 = pairs[..k].iter().zip(w.iter()).filter(|(p, _)| p.0 == i).map(|(_, &x)| x).sum();
        let later = pairs[k + 1..].iter().filter(|p| p.0 == i).count() as i64;
        let max = need - used as i64 - later;
        // parallel edges get non-increasing weights
        let cap = if k > 0 && pairs[k - 1] == pairs[k] { w[k - 1] as i64 } else { i64::MAX };
        for x in 1..=max.min(cap) {
            w.push(x as u64);
            inflow[j] += x as u64;
            rec(k + 1, pairs, w, inflow, out_needed, a, out);
            inflow[j] -= x as u64;
            w.pop();
        }
    }
    rec(0, pairs, &mut Vec::new(), &mut vec![0; a], out_needed, a, &mut out);
    out
}

fn oracle(a: usize, b: u32, n: u32, g: usize) -> BTreeSet<Encoding> {
    let all_pairs: Vec<(usize, usize)> = (0..a).flat_map(|i| (i + 1..a).map(move |j| (i, j))).collect();
    let edges = a - 1 + g;
    let mut found = BTreeSet::new();
    for src in compositions(a as u32 * n + b, a) {
        for snk in compositions(b, a) {
            let out_needed = |v: usize, inflow: u64| inflow as i64 + src[v] as i64 - snk[v] as i64 - n as i64;
            for pairs in all_pairs.iter().copied().combinations_with_replacement(edges) {
                if a > 1 && !connected(a, &pairs) {
                    continue;
                }
                for w in weightings(&pairs, &out_needed, a) {
                    let legs: Vec<(u32, u32)> = src.iter().zip(&snk).map(|(&s, &t)| (s, t)).collect();
                    let e: Vec<_> = pairs.iter().zip(&w).map(|(&(i, j), &x)| (i, j, x)).collect();
                    found.insert(encode(&legs, &e));
                }
            }
        }
    }
    found
}

fn encode_diagram(d: &FloorDiagram) -> Encoding {
    let legs: Vec<(u32, u32)> = d.floors().iter().map(|f| (f.sources, f.sinks)).collect();
    let e: Vec<_> = d.elevators().iter().map(|e| (e.from, e.to, e.weight)).collect();
    encode(&legs, &e)
}

#[test]
fn enumeration_matches_brute_force() {
    let mut counts = BTreeMap::new();
    for a in 1..=4usize {
        for b in 0..=4u32 {
            for n in 0..=3u32 {
                if (b == 0 && n == 0) || a as u32 * n + 2 * b > 8 {
                    continue;
                }
                let p = HTransversePolygon::abn(a as u64, b as u64, n as u64).unwrap();
                let iota = p.interior_points() as usize;
                for g in 0..=iota.min(2) {
                    let expected = oracle(a, b, n, g);
                    let got: BTreeSet<Encoding> =
                        enumerate_floor_diagrams(&p, g as u64).iter().map(encode_diagram).collect();
                    assert_eq!(
                        enumerate_floor_diagrams(&p, g as u64).len(),
                        got.len(),
                        "duplicate classes for Delta_{{{a},{b},{n}}} g={g}"
                    );
                    assert_eq!(got, expected, "Delta_{{{a},{b},{n}}} g={g}");
                    counts.insert((a, b, n, g), got.len());
                }
            }
        }
    }
    assert_eq!(counts[&(4, 0, 1, 0)], 12);
    assert_eq!(counts[&(3, 0, 1, 1)], 1);
}
