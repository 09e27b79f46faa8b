//! Floor diagrams: weighted oriented graphs whose vertices (floors) carry
//! left and right slopes of a polygon.
//!
//! Sources and sinks (the infinite edges of weight one) are stored as counts
//! on the floor they touch. Internal edges are called elevators.

mod canonical;
mod enumerate;
mod ops;

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{quantum_square, LaurentPoly};
use crate::polygon::HTransversePolygon;

pub use canonical::{CanonicalForm, CanonicalKey};
pub use enumerate::{enumerate_floor_diagrams, enumerate_up_to_codegree};
pub use ops::{EdgeRef, OpKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Floor {
    pub l: i64,
    pub r: i64,
    pub sources: u32,
    pub sinks: u32,
}

impl Floor {
    pub fn new(l: i64, r: i64, sources: u32, sinks: u32) -> Self {
        Floor { l, r, sources, sinks }
    }

    pub fn divergence(&self) -> i64 {
        self.r - self.l
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Elevator {
    pub from: usize,
    pub to: usize,
    pub weight: u64,
}

impl Elevator {
    pub fn new(from: usize, to: usize, weight: u64) -> Self {
        Elevator { from, to, weight }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FloorDiagram {
    floors: Vec<Floor>,
    elevators: Vec<Elevator>,
}

/// Combinatorial data of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramStats {
    pub floors: usize,
    pub elevators: usize,
    pub sources: u64,
    pub sinks: u64,
    pub genus: u64,
    pub degree: u64,
    /// Number of vertices plus edges, the length of a marking.
    pub marking_length: usize,
}

impl FloorDiagram {
    /// Builds a diagram and checks the structural conditions: valid indices,
    /// positive weights, no cycles and a connected underlying graph.
    pub fn new(floors: Vec<Floor>, elevators: Vec<Elevator>) -> Result<Self> {
        let d = FloorDiagram { floors, elevators };
        d.check_structure()?;
        Ok(d)
    }

    fn check_structure(&self) -> Result<()> {
        let n = self.floors.len();
        if n == 0 {
            return Err(Error::InvalidDiagram("a diagram needs at least one floor".into()));
        }
        for e in &self.elevators {
            if e.from >= n || e.to >= n {
                return Err(Error::InvalidDiagram(format!("elevator {e:?} refers to a missing floor")));
            }
            if e.from == e.to {
                return Err(Error::InvalidDiagram(format!("elevator {e:?} is a loop")));
            }
            if e.weight == 0 {
                return Err(Error::InvalidDiagram(format!("elevator {e:?} has weight zero")));
            }
        }
        if self.topological_order().is_none() {
            return Err(Error::InvalidDiagram("elevators form an oriented cycle".into()));
        }
        if !self.is_connected() {
            return Err(Error::InvalidDiagram("diagram is disconnected".into()));
        }
        Ok(())
    }

    pub fn floors(&self) -> &[Floor] {
        &self.floors
    }

    pub fn elevators(&self) -> &[Elevator] {
        &self.elevators
    }

    pub fn floor_count(&self) -> usize {
        self.floors.len()
    }

    pub fn source_count(&self) -> u64 {
        self.floors.iter().map(|f| f.sources as u64).sum()
    }

    pub fn sink_count(&self) -> u64 {
        self.floors.iter().map(|f| f.sinks as u64).sum()
    }

    pub fn in_weight(&self, v: usize) -> u64 {
        self.elevators.iter().filter(|e| e.to == v).map(|e| e.weight).sum::<u64>() + self.floors[v].sources as u64
    }

    pub fn out_weight(&self, v: usize) -> u64 {
        self.elevators.iter().filter(|e| e.from == v).map(|e| e.weight).sum::<u64>() + self.floors[v].sinks as u64
    }

    /// In-weight minus out-weight, counting sources and sinks.
    pub fn flow_divergence(&self, v: usize) -> i64 {
        self.in_weight(v) as i64 - self.out_weight(v) as i64
    }

    pub fn genus(&self) -> u64 {
        (self.elevators.len() + 1 - self.floors.len()) as u64
    }

    /// Sum of `weight - 1` over elevators.
    pub fn degree(&self) -> u64 {
        self.elevators.iter().map(|e| e.weight - 1).sum()
    }

    /// `interior - genus - degree`.
    pub fn codegree(&self, polygon: &HTransversePolygon) -> i64 {
        polygon.interior_points() as i64 - self.genus() as i64 - self.degree() as i64
    }

    pub fn marking_length(&self) -> usize {
        self.floors.len() + self.elevators.len() + self.source_count() as usize + self.sink_count() as usize
    }

    pub fn stats(&self) -> DiagramStats {
        DiagramStats {
            floors: self.floors.len(),
            elevators: self.elevators.len(),
            sources: self.source_count(),
            sinks: self.sink_count(),
            genus: self.genus(),
            degree: self.degree(),
            marking_length: self.marking_length(),
        }
    }

    /// Product of `[w]^2` over the elevators.
    pub fn multiplicity(&self) -> LaurentPoly {
        self.elevators
            .iter()
            .map(|e| quantum_square(e.weight as i64).expect("weights are positive"))
            .fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }

    /// A topological order of the floors, or `None` if there is a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.floors.len();
        let mut indeg = vec![0usize; n];
        for e in &self.elevators {
            indeg[e.to] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for e in self.elevators.iter().filter(|e| e.from == v) {
                indeg[e.to] -= 1;
                if indeg[e.to] == 0 {
                    queue.push_back(e.to);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    fn is_connected(&self) -> bool {
        let n = self.floors.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.elevators {
                let w = if e.from == v {
                    e.to
                } else if e.to == v {
                    e.from
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `reach[u][v]` is true when there is an oriented path from `u` to `v`
    /// (including `u == v`).
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.floors.len();
        let mut reach = vec![vec![false; n]; n];
        let order = self.topological_order().expect("diagram is acyclic");
        for &u in order.iter().rev() {
            reach[u][u] = true;
            for e in self.elevators.iter().filter(|e| e.from == u) {
                for v in 0..n {
                    if reach[e.to][v] {
                        reach[u][v] = true;
                    }
                }
            }
        }
        reach
    }

    /// Whether the floors are totally ordered by the diagram.
    pub fn is_totally_ordered(&self) -> bool {
        let reach = self.reachability();
        let n = self.floors.len();
        (0..n).all(|u| (0..n).all(|v| reach[u][v] || reach[v][u]))
    }

    /// Checks that this is a floor diagram with Newton polygon `polygon`.
    pub fn validate_for(&self, polygon: &HTransversePolygon) -> Result<()> {
        self.check_structure()?;
        if self.floors.len() != polygon.height() {
            return Err(Error::InvalidDiagram(format!(
                "{} floors but the polygon has {} rows",
                self.floors.len(),
                polygon.height()
            )));
        }
        let mut l: Vec<i64> = self.floors.iter().map(|f| f.l).collect();
        let mut r: Vec<i64> = self.floors.iter().map(|f| f.r).collect();
        let mut pl = polygon.d_l().to_vec();
        let mut pr = polygon.d_r().to_vec();
        l.sort_unstable();
        r.sort_unstable();
        pl.sort_unstable();
        pr.sort_unstable();
        if l != pl || r != pr {
            return Err(Error::InvalidDiagram("floor slopes do not match the polygon sides".into()));
        }
        if self.source_count() != polygon.d_b() || self.sink_count() != polygon.d_t() {
            return Err(Error::InvalidDiagram(format!(
                "{} sources and {} sinks, expected {} and {}",
                self.source_count(),
                self.sink_count(),
                polygon.d_b(),
                polygon.d_t()
            )));
        }
        for (v, f) in self.floors.iter().enumerate() {
            if self.flow_divergence(v) != f.divergence() {
                return Err(Error::InvalidDiagram(format!(
                    "floor {v} has divergence {} but r - l = {}",
                    self.flow_divergence(v),
                    f.divergence()
                )));
            }
        }
        Ok(())
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self)
    }

    /// Order of the automorphism group acting on floors and elevators.
    /// Sources and sinks at a floor are not distinguished from each other.
    pub fn automorphism_count(&self) -> BigUint {
        let cf = self.canonical_form();
        let mut count = BigUint::from(cf.floor_automorphisms.len());
        for size in self.parallel_class_sizes() {
            for k in 2..=size {
                count *= BigUint::from(k);
            }
        }
        count
    }

    /// Sizes of the classes of parallel elevators with equal weight.
    pub fn parallel_class_sizes(&self) -> Vec<usize> {
        let mut sorted = self.elevators.clone();
        sorted.sort();
        let mut sizes = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i;
            while j < sorted.len() && sorted[j] == sorted[i] {
                j += 1;
            }
            sizes.push(j - i);
            i = j;
        }
        sizes
    }

    /// The same diagram with floors renumbered by `perm` (old index to new).
    pub fn relabeled(&self, perm: &[usize]) -> FloorDiagram {
        let mut floors = self.floors.clone();
        for (old, f) in self.floors.iter().enumerate() {
            floors[perm[old]] = f.clone();
        }
        let mut elevators: Vec<Elevator> =
            self.elevators.iter().map(|e| Elevator::new(perm[e.from], perm[e.to], e.weight)).collect();
        elevators.sort();
        FloorDiagram { floors, elevators }
    }

    /// Renumbers floors along a topological order and sorts elevators.
    pub fn normalized(&self) -> FloorDiagram {
        let order = self.topological_order().expect("diagram is acyclic");
        let mut perm = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        self.relabeled(&perm)
    }

    pub(crate) fn from_parts_unchecked(floors: Vec<Floor>, elevators: Vec<Elevator>) -> Self {
        FloorDiagram { floors, elevators }
    }

    pub fn apply(&self, op: OpKind) -> Result<FloorDiagram> {
        ops::apply(self, op)
    }

    /// `|Aut|` including permutations of the sources and of the sinks at a
    /// common floor.
    pub fn full_automorphism_count(&self) -> BigUint {
        let mut count = self.automorphism_count();
        for f in &self.floors {
            for k in (2..=f.sources as u64).chain(2..=f.sinks as u64) {
                count *= BigUint::from(k);
            }
        }
        count
    }
}

impl fmt::Display for FloorDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let floors: Vec<String> = self
            .floors
            .iter()
            .enumerate()
            .map(|(i, fl)| format!("v{i}(l={},r={},src={},snk={})", fl.l, fl.r, fl.sources, fl.sinks))
            .collect();
        let edges: Vec<String> =
            self.elevators.iter().map(|e| format!("v{}->v{}:{}", e.from, e.to, e.weight)).collect();
        write!(f, "[{}] {{{}}}", floors.join(" "), edges.join(" "))
    }
}
