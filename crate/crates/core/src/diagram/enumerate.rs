//! Exhaustive enumeration of floor diagrams with a given Newton polygon and
//! genus, optionally restricted to small codegree.
//!
//! Floors are generated along a topological order. Writing `C_k` for the
//! total weight crossing the cut between the first `k` floors and the rest,
//!
//! ```text
//! codeg(D) = iota + N - 1 - sum_k C_k + sum_e w(e) * (span(e) - 1)
//! ```
//!
//! where `span(e)` is the number of cuts an elevator crosses. The first part
//! only depends on how slopes, sources and sinks are distributed over the
//! floors (the profile), the second part on the elevators. Both parts are
//! bounded by the codegree cap, which keeps small-codegree searches cheap.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{CanonicalKey, Elevator, Floor, FloorDiagram};
use crate::polygon::HTransversePolygon;

/// All floor diagrams of the given genus, one per isomorphism class, sorted by
/// canonical key.
pub fn enumerate_floor_diagrams(polygon: &HTransversePolygon, genus: u64) -> Vec<FloorDiagram> {
    enumerate_up_to_codegree(polygon, genus, None)
}

/// Floor diagrams of the given genus and codegree at most `max_codegree`.
pub fn enumerate_up_to_codegree(
    polygon: &HTransversePolygon,
    genus: u64,
    max_codegree: Option<u64>,
) -> Vec<FloorDiagram> {
    let iota = polygon.interior_points();
    if genus > iota {
        return Vec::new();
    }
    let cap = max_codegree.unwrap_or(iota - genus).min(iota - genus) as i64;
    let ctx = Context {
        n: polygon.height(),
        d_b: polygon.d_b() as u32,
        d_t: polygon.d_t() as u32,
        iota: iota as i64,
        cap,
        edges: polygon.height() - 1 + genus as usize,
    };
    let mut profiles = Vec::new();
    let mut l_seq: Vec<i64> = polygon.d_l().to_vec();
    l_seq.sort_unstable();
    loop {
        let mut r_seq: Vec<i64> = polygon.d_r().to_vec();
        r_seq.sort_unstable();
        loop {
            let divs: Vec<i64> = l_seq.iter().zip(&r_seq).map(|(l, r)| r - l).collect();
            let mut floors = Vec::with_capacity(ctx.n);
            ctx.profiles(&l_seq, &r_seq, &divs, &mut floors, ctx.d_b, ctx.d_t, 0, 0, &mut profiles);
            if !next_permutation(&mut r_seq) {
                break;
            }
        }
        if !next_permutation(&mut l_seq) {
            break;
        }
    }

    let found: Vec<(CanonicalKey, FloorDiagram)> = profiles
        .par_iter()
        .flat_map_iter(|(floors, profile_codeg)| {
            let mut out = Vec::new();
            let mut search = EdgeSearch::new(&ctx, floors, cap - profile_codeg);
            search.run(0, &mut out);
            out
        })
        .collect();

    let mut classes: BTreeMap<CanonicalKey, FloorDiagram> = BTreeMap::new();
    for (key, d) in found {
        match classes.get(&key) {
            Some(old) if (&old.floors, &old.elevators) <= (&d.floors, &d.elevators) => {}
            _ => {
                classes.insert(key, d);
            }
        }
    }
    classes.into_values().collect()
}

/// Lexicographic successor of a sequence, as in C++ `next_permutation`.
fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

struct Context {
    n: usize,
    d_b: u32,
    d_t: u32,
    iota: i64,
    cap: i64,
    edges: usize,
}

impl Context {
    /// Distributes sources and sinks over the floors, keeping every cut
    /// crossed by positive weight and the profile part of the codegree
    /// within the cap.
    #[allow(clippy::too_many_arguments)]
    fn profiles(
        &self,
        l_seq: &[i64],
        r_seq: &[i64],
        divs: &[i64],
        floors: &mut Vec<Floor>,
        src_left: u32,
        snk_left: u32,
        crossing: i64,
        crossing_sum: i64,
        out: &mut Vec<(Vec<Floor>, i64)>,
    ) {
        let j = floors.len();
        let last = j + 1 == self.n;
        for s in 0..=src_left {
            if last && s != src_left {
                continue;
            }
            for t in 0..=snk_left {
                if last && t != snk_left {
                    continue;
                }
                let c = crossing + s as i64 - t as i64 - divs[j];
                if last {
                    if c != 0 {
                        continue;
                    }
                    let profile = self.iota + self.n as i64 - 1 - crossing_sum;
                    if profile > self.cap {
                        continue;
                    }
                    let mut fl = floors.clone();
                    fl.push(Floor::new(l_seq[j], r_seq[j], s, t));
                    out.push((fl, profile));
                    continue;
                }
                if c < 1 {
                    continue;
                }
                // Largest possible sum of the remaining crossings: every
                // remaining source on the next floor, every sink on the last.
                let rest = src_left - s;
                let mut best = crossing_sum + c;
                let mut run = c + rest as i64;
                for k in j + 1..self.n - 1 {
                    run -= divs[k];
                    best += run.max(0);
                }
                if self.iota + self.n as i64 - 1 - best > self.cap {
                    continue;
                }
                floors.push(Floor::new(l_seq[j], r_seq[j], s, t));
                self.profiles(l_seq, r_seq, divs, floors, rest, snk_left - t, c, crossing_sum + c, out);
                floors.pop();
            }
        }
    }
}

struct EdgeSearch<'a> {
    ctx: &'a Context,
    floors: &'a [Floor],
    /// Out-weight minus internal in-weight of every floor.
    net_out: Vec<i64>,
    pending_in: Vec<i64>,
    edges: Vec<Elevator>,
    component: Vec<usize>,
    components: usize,
    excess_left: i64,
}

impl<'a> EdgeSearch<'a> {
    fn new(ctx: &'a Context, floors: &'a [Floor], excess_left: i64) -> Self {
        let net_out = floors.iter().map(|f| f.sources as i64 - f.sinks as i64 - f.divergence()).collect();
        EdgeSearch {
            ctx,
            floors,
            net_out,
            pending_in: vec![0; floors.len()],
            edges: Vec::new(),
            component: (0..floors.len()).collect(),
            components: floors.len(),
            excess_left,
        }
    }

    fn key(&self, v: usize) -> (i64, i64, u32, u32) {
        let f = &self.floors[v];
        (f.l, f.r, f.sources, f.sinks)
    }

    /// Edges that may still be spent on closing cycles.
    fn slack(&self) -> i64 {
        self.ctx.edges as i64 - self.edges.len() as i64 - (self.components as i64 - 1)
    }

    fn run(&mut self, j: usize, out: &mut Vec<(CanonicalKey, FloorDiagram)>) {
        let n = self.floors.len();
        if j > 0 {
            let linked = self.edges.iter().any(|e| e.from == j - 1 && e.to == j);
            if !linked && self.key(j - 1) > self.key(j) {
                return;
            }
        }
        let total = self.net_out[j] + self.pending_in[j];
        if total < 0 {
            return;
        }
        if j + 1 == n {
            if total == 0 && self.components == 1 && self.edges.len() == self.ctx.edges {
                let d = FloorDiagram::from_parts_unchecked(self.floors.to_vec(), self.edges.clone());
                out.push((d.canonical_form().key, d));
            }
            return;
        }
        self.choose_out(j, j + 1, total, u64::MAX, out);
    }

    /// Chooses the elevators leaving floor `j`, target by target, with
    /// weights non-increasing within each target.
    fn choose_out(
        &mut self,
        j: usize,
        target: usize,
        remaining: i64,
        max_weight: u64,
        out: &mut Vec<(CanonicalKey, FloorDiagram)>,
    ) {
        if remaining == 0 {
            self.run(j + 1, out);
            return;
        }
        let n = self.floors.len();
        if target >= n {
            return;
        }
        // Move on to the next target.
        self.choose_out(j, target + 1, remaining, u64::MAX, out);

        let span = (target - j - 1) as i64;
        let top = (remaining as u64).min(max_weight);
        for w in (1..=top).rev() {
            let cost = w as i64 * span;
            if cost > self.excess_left {
                continue;
            }
            let (ca, cb) = (self.find(j), self.find(target));
            let merges = ca != cb;
            if !merges && self.slack() < 1 {
                continue;
            }
            let saved = self.component.clone();
            if merges {
                self.union(ca, cb);
            }
            self.edges.push(Elevator::new(j, target, w));
            self.pending_in[target] += w as i64;
            self.excess_left -= cost;

            self.choose_out(j, target, remaining - w as i64, w, out);

            self.excess_left += cost;
            self.pending_in[target] -= w as i64;
            self.edges.pop();
            if merges {
                self.component = saved;
                self.components += 1;
            }
        }
    }

    fn find(&self, v: usize) -> usize {
        let mut v = v;
        while self.component[v] != v {
            v = self.component[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        self.component[a.max(b)] = a.min(b);
        self.components -= 1;
    }
}
