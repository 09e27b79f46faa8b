//! Markings of floor diagrams and their pairing multiplicities.
//!
//! A marking is a linear extension of the partial order on floors and edges
//! (sources, elevators and sinks), listed by the point that marks each
//! element. Markings are counted up to automorphisms of the diagram.
//!
//! Elements that are interchangeable under every automorphism (parallel
//! elevators of equal weight, sources or sinks at a common floor) are grouped
//! into twin classes. Counting is done by dynamic programming over how many
//! members of each class have been placed. This counts markings up to twin
//! permutations; the remaining floor automorphisms act freely and are divided
//! out at the end.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::FloorDiagram;
use crate::error::{Error, Result};
use crate::laurent::{quantum_integer, quantum_square, LaurentPoly};

/// One element of the poset of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Element {
    Floor(usize),
    Elevator(usize),
    Source { floor: usize, index: u32 },
    Sink { floor: usize, index: u32 },
}

/// A marking, listed as `order[p - 1]` = the element marked by point `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Marking {
    pub order: Vec<Element>,
}

/// A set of disjoint pairs `{i, i + 1}` of marking positions (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Pairing {
    starts: BTreeSet<usize>,
}

impl Pairing {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a pairing from pairs `(i, i + 1)`.
    pub fn new(pairs: &[(usize, usize)]) -> Result<Self> {
        let mut starts = BTreeSet::new();
        for &(i, j) in pairs {
            if i == 0 || j != i + 1 {
                return Err(Error::InvalidPairing(format!("{{{i},{j}}} is not of the form {{i,i+1}} with i >= 1")));
            }
            if starts.contains(&i) || starts.contains(&(i + 1)) || (i > 1 && starts.contains(&(i - 1))) {
                return Err(Error::InvalidPairing(format!("pair {{{i},{j}}} overlaps another pair")));
            }
            starts.insert(i);
        }
        Ok(Pairing { starts })
    }

    /// `{1,2}, {3,4}, ..., {2s-1, 2s}`.
    pub fn consecutive(s: usize) -> Self {
        Pairing { starts: (0..s).map(|k| 2 * k + 1).collect() }
    }

    /// The `s` pairs ending at position `n`: `{n-2s+1, n-2s+2}, ..., {n-1, n}`.
    pub fn top(s: usize, n: usize) -> Result<Self> {
        if 2 * s > n {
            return Err(Error::InvalidPairing(format!("{s} pairs do not fit in {n} positions")));
        }
        Ok(Pairing { starts: (0..s).map(|k| n + 1 - 2 * s + 2 * k).collect() })
    }

    pub fn order(&self) -> usize {
        self.starts.len()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.starts.iter().map(|&i| (i, i + 1)).collect()
    }

    pub fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        self.starts.iter().copied()
    }

    /// Largest position used, zero for the empty pairing.
    pub fn max_position(&self) -> usize {
        self.starts.iter().next_back().map_or(0, |&i| i + 1)
    }

    pub fn fits(&self, n: usize) -> Result<()> {
        if self.max_position() > n {
            return Err(Error::InvalidPairing(format!(
                "pairing uses position {} but markings have length {n}",
                self.max_position()
            )));
        }
        Ok(())
    }

    /// Every pairing of order `s` of `{1, ..., n}`.
    pub fn all_of_order(s: usize, n: usize) -> Vec<Pairing> {
        fn rec(start: usize, left: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Pairing>) {
            if left == 0 {
                out.push(Pairing { starts: cur.iter().copied().collect() });
                return;
            }
            let mut i = start;
            while i + 2 * left - 1 <= n {
                cur.push(i);
                rec(i + 2, left - 1, n, cur, out);
                cur.pop();
                i += 1;
            }
        }
        let mut out = Vec::new();
        rec(1, s, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "pairs:{}", parts.join(","))
    }
}

impl FromStr for Pairing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rest = s
            .trim()
            .strip_prefix("pairs:")
            .ok_or_else(|| Error::Parse(format!("pairing literal must start with 'pairs:': {s:?}")))?;
        let mut pairs = Vec::new();
        for part in rest.split(',').filter(|p| !p.trim().is_empty()) {
            let (a, b) = part.split_once('-').ok_or_else(|| Error::Parse(format!("malformed pair {part:?}")))?;
            let parse =
                |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("malformed pair {part:?}")));
            pairs.push((parse(a)?, parse(b)?));
        }
        Pairing::new(&pairs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum ClassKind {
    Floor(usize),
    Elevator { from: usize, to: usize, weight: u64 },
    Sources(usize),
    Sinks(usize),
}

impl ClassKind {
    fn is_floor(self) -> bool {
        matches!(self, ClassKind::Floor(_))
    }

    fn weight(self) -> u64 {
        match self {
            ClassKind::Elevator { weight, .. } => weight,
            _ => 1,
        }
    }

    /// Floor at which the edge starts (`None` for sources and floors).
    fn tail(self) -> Option<usize> {
        match self {
            ClassKind::Elevator { from, .. } => Some(from),
            ClassKind::Sinks(f) => Some(f),
            _ => None,
        }
    }

    /// Floor at which the edge ends (`None` for sinks and floors).
    fn head(self) -> Option<usize> {
        match self {
            ClassKind::Elevator { to, .. } => Some(to),
            ClassKind::Sources(f) => Some(f),
            _ => None,
        }
    }

    fn touches(self, floor: usize) -> bool {
        self.tail() == Some(floor) || self.head() == Some(floor)
    }

    fn mapped(self, sigma: &[usize]) -> ClassKind {
        match self {
            ClassKind::Floor(f) => ClassKind::Floor(sigma[f]),
            ClassKind::Elevator { from, to, weight } => {
                ClassKind::Elevator { from: sigma[from], to: sigma[to], weight }
            }
            ClassKind::Sources(f) => ClassKind::Sources(sigma[f]),
            ClassKind::Sinks(f) => ClassKind::Sinks(sigma[f]),
        }
    }
}

/// How a compatible pair of elements contributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    /// An edge of weight `w` and one of its end floors: factor `[w](q^2)`.
    EdgeAndFloor { weight: u64 },
    /// Two edges leaving or entering a common floor:
    /// factor `[w1][w2][w1 + w2] / [2]`.
    TwoEdges { w1: u64, w2: u64 },
}

impl PairKind {
    pub fn factor(self) -> LaurentPoly {
        match self {
            PairKind::EdgeAndFloor { weight } => {
                quantum_integer(weight as i64).expect("positive weight").substitute_q_squared()
            }
            PairKind::TwoEdges { w1, w2 } => {
                let q = |k: u64| quantum_integer(k as i64).expect("positive weight");
                (&(&q(w1) * &q(w2)) * &q(w1 + w2)).divide_exact(&q(2)).expect("[w1][w2][w1+w2] is divisible by [2]")
            }
        }
    }
}

fn pair_kind(a: ClassKind, b: ClassKind) -> Option<PairKind> {
    match (a.is_floor(), b.is_floor()) {
        (true, true) => None,
        (true, false) | (false, true) => {
            let (floor, edge) = if a.is_floor() { (a, b) } else { (b, a) };
            let ClassKind::Floor(f) = floor else { unreachable!() };
            edge.touches(f).then_some(PairKind::EdgeAndFloor { weight: edge.weight() })
        }
        (false, false) => {
            let common_tail = a.tail().is_some() && a.tail() == b.tail();
            let common_head = a.head().is_some() && a.head() == b.head();
            (common_tail || common_head).then_some(PairKind::TwoEdges { w1: a.weight(), w2: b.weight() })
        }
    }
}

struct Class {
    kind: ClassKind,
    members: Vec<Element>,
    prereqs: Vec<usize>,
}

/// Twin classes of the poset of a diagram.
struct ElementTable {
    classes: Vec<Class>,
    index: HashMap<ClassKind, usize>,
    length: usize,
}

impl ElementTable {
    fn new(d: &FloorDiagram) -> Self {
        let mut kinds: Vec<(ClassKind, Vec<Element>)> = Vec::new();
        for v in 0..d.floor_count() {
            kinds.push((ClassKind::Floor(v), vec![Element::Floor(v)]));
        }
        let mut elevator_classes: Vec<(ClassKind, Vec<Element>)> = Vec::new();
        for (i, e) in d.elevators().iter().enumerate() {
            let kind = ClassKind::Elevator { from: e.from, to: e.to, weight: e.weight };
            match elevator_classes.iter_mut().find(|(k, _)| *k == kind) {
                Some((_, members)) => members.push(Element::Elevator(i)),
                None => elevator_classes.push((kind, vec![Element::Elevator(i)])),
            }
        }
        elevator_classes.sort_by_key(|(k, _)| *k);
        kinds.extend(elevator_classes);
        for (v, f) in d.floors().iter().enumerate() {
            if f.sources > 0 {
                kinds.push((
                    ClassKind::Sources(v),
                    (0..f.sources).map(|index| Element::Source { floor: v, index }).collect(),
                ));
            }
            if f.sinks > 0 {
                kinds
                    .push((ClassKind::Sinks(v), (0..f.sinks).map(|index| Element::Sink { floor: v, index }).collect()));
            }
        }
        let index: HashMap<ClassKind, usize> = kinds.iter().enumerate().map(|(i, (k, _))| (*k, i)).collect();
        let classes = kinds
            .iter()
            .map(|(kind, members)| {
                let prereqs = match *kind {
                    ClassKind::Floor(v) => {
                        kinds.iter().enumerate().filter(|(_, (k, _))| k.head() == Some(v)).map(|(i, _)| i).collect()
                    }
                    ClassKind::Elevator { from, .. } => vec![index[&ClassKind::Floor(from)]],
                    ClassKind::Sinks(v) => vec![index[&ClassKind::Floor(v)]],
                    ClassKind::Sources(_) => Vec::new(),
                };
                Class { kind: *kind, members: members.clone(), prereqs }
            })
            .collect();
        let length = kinds.iter().map(|(_, m)| m.len()).sum();
        ElementTable { classes, index, length }
    }

    fn class_of(&self, d: &FloorDiagram, el: Element) -> Option<usize> {
        let kind = match el {
            Element::Floor(v) => ClassKind::Floor(v),
            Element::Elevator(i) => {
                let e = d.elevators().get(i)?;
                ClassKind::Elevator { from: e.from, to: e.to, weight: e.weight }
            }
            Element::Source { floor, .. } => ClassKind::Sources(floor),
            Element::Sink { floor, .. } => ClassKind::Sinks(floor),
        };
        self.index.get(&kind).copied()
    }

    fn available(&self, state: &[u16], k: usize) -> bool {
        let c = &self.classes[k];
        (state[k] as usize) < c.members.len()
            && c.prereqs.iter().all(|&p| state[p] as usize == self.classes[p].members.len())
    }

    fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }
}

/// Coefficient domain of the counting recursion.
trait Weight: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
}

impl Weight for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Weight for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// A sum of Laurent polynomials sharing a nominal top degree, kept only
/// through its coefficients at doubled exponents `top - j`, `j < cap`.
#[derive(Clone)]
struct TopSeries {
    c: Vec<BigInt>,
    cap: usize,
}

impl TopSeries {
    fn from_poly(p: &LaurentPoly, top2: i64, cap: usize) -> Self {
        TopSeries { c: (0..cap as i64).map(|j| p.coeff(top2 - j)).collect(), cap }
    }
}

impl Weight for TopSeries {
    fn zero() -> Self {
        TopSeries { c: Vec::new(), cap: usize::MAX }
    }
    fn one() -> Self {
        TopSeries { c: vec![BigInt::one()], cap: usize::MAX }
    }
    fn add_assign(&mut self, other: &Self) {
        self.cap = self.cap.min(other.cap);
        if self.c.len() < other.c.len() {
            self.c.resize(other.c.len(), BigInt::zero());
        }
        for (x, y) in self.c.iter_mut().zip(&other.c) {
            *x += y;
        }
        self.c.truncate(self.cap);
    }
    fn mul(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        if self.c.is_empty() || other.c.is_empty() {
            return TopSeries { c: Vec::new(), cap };
        }
        let len = (self.c.len() + other.c.len() - 1).min(cap);
        let mut c = vec![BigInt::zero(); len];
        for (i, x) in self.c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in other.c.iter().enumerate().take(len.saturating_sub(i)) {
                c[i + j] += x * y;
            }
        }
        TopSeries { c, cap }
    }
}

struct ExtensionCounter<'a, W> {
    table: &'a ElementTable,
    pair_start: Vec<bool>,
    single: Vec<W>,
    pair: Vec<Vec<Option<W>>>,
    memo: HashMap<Vec<u16>, W>,
}

impl<'a, W: Weight> ExtensionCounter<'a, W> {
    fn new(
        table: &'a ElementTable,
        pairing: &Pairing,
        single: impl Fn(ClassKind) -> W,
        pair: impl Fn(PairKind) -> W,
    ) -> Self {
        let mut pair_start = vec![false; table.length + 2];
        for s in pairing.starts() {
            pair_start[s] = true;
        }
        let single = table.classes.iter().map(|c| single(c.kind)).collect();
        let pair = if pairing.order() == 0 {
            Vec::new()
        } else {
            let mut factors: HashMap<PairKind, W> = HashMap::new();
            table
                .classes
                .iter()
                .map(|a| {
                    table
                        .classes
                        .iter()
                        .map(|b| pair_kind(a.kind, b.kind).map(|k| factors.entry(k).or_insert_with(|| pair(k)).clone()))
                        .collect()
                })
                .collect()
        };
        ExtensionCounter { table, pair_start, single, pair, memo: HashMap::new() }
    }

    fn run(&mut self) -> W {
        let mut state = vec![0u16; self.table.classes.len()];
        self.go(&mut state, 0)
    }

    fn go(&mut self, state: &mut Vec<u16>, placed: usize) -> W {
        if placed == self.table.length {
            return W::one();
        }
        if let Some(w) = self.memo.get(state.as_slice()) {
            return w.clone();
        }
        let k = self.table.classes.len();
        let mut acc = W::zero();
        if self.pair_start[placed + 1] {
            for x in 0..k {
                if !self.table.available(state, x) {
                    continue;
                }
                state[x] += 1;
                for y in 0..k {
                    if !self.table.available(state, y) {
                        continue;
                    }
                    let Some(f) = self.pair[x][y].clone() else { continue };
                    state[y] += 1;
                    let sub = self.go(state, placed + 2);
                    state[y] -= 1;
                    acc.add_assign(&f.mul(&sub));
                }
                state[x] -= 1;
            }
        } else {
            for x in 0..k {
                if !self.table.available(state, x) {
                    continue;
                }
                state[x] += 1;
                let sub = self.go(state, placed + 1);
                state[x] -= 1;
                acc.add_assign(&self.single[x].mul(&sub));
            }
        }
        self.memo.insert(state.clone(), acc.clone());
        acc
    }
}

fn floor_automorphism_count(d: &FloorDiagram) -> usize {
    d.canonical_form().floor_automorphisms.len()
}

/// Number of markings of `d` up to automorphism.
pub fn count_markings(d: &FloorDiagram) -> BigUint {
    count_compatible_markings(d, &Pairing::empty()).expect("empty pairing always fits")
}

/// Number of markings of `d`, up to automorphism, compatible with `pairing`.
pub fn count_compatible_markings(d: &FloorDiagram, pairing: &Pairing) -> Result<BigUint> {
    let table = ElementTable::new(d);
    pairing.fits(table.length)?;
    let mut counter = ExtensionCounter::new(&table, pairing, |_| <BigUint as One>::one(), |_| <BigUint as One>::one());
    let total = counter.run();
    Ok(total / BigUint::from(floor_automorphism_count(d)))
}

/// Sum of `mu_S(d, m)` over the markings `m` of `d` up to automorphism.
pub fn marked_multiplicity_sum(d: &FloorDiagram, pairing: &Pairing) -> Result<LaurentPoly> {
    let table = ElementTable::new(d);
    pairing.fits(table.length)?;
    if pairing.order() == 0 {
        // every marking has multiplicity mu(D)
        return Ok(d.multiplicity().scale(&BigInt::from(count_markings(d))));
    }
    let mut counter = ExtensionCounter::new(
        &table,
        pairing,
        |kind| match kind {
            ClassKind::Elevator { weight, .. } => quantum_square(weight as i64).expect("positive weight"),
            _ => LaurentPoly::one(),
        },
        PairKind::factor,
    );
    let total = counter.run();
    total.div_integer_exact(&BigInt::from(floor_automorphism_count(d)))
}

/// The coefficients of `q^(deg(d) - j)`, `j < terms`, of
/// [`marked_multiplicity_sum`]. Every factor of `mu_S` has top degree
/// `w - 1` per edge of weight `w`, so the sum can be carried out on
/// truncated series.
pub fn marked_multiplicity_top(d: &FloorDiagram, pairing: &Pairing, terms: usize) -> Result<Vec<BigInt>> {
    let table = ElementTable::new(d);
    pairing.fits(table.length)?;
    if terms == 0 {
        return Ok(Vec::new());
    }
    let cap = 2 * terms - 1;
    let mut counter = ExtensionCounter::new(
        &table,
        pairing,
        |kind| match kind {
            ClassKind::Elevator { weight, .. } => TopSeries::from_poly(
                &quantum_square(weight as i64).expect("positive weight"),
                2 * (weight as i64 - 1),
                cap,
            ),
            _ => TopSeries::one(),
        },
        |kind| {
            let nominal = match kind {
                PairKind::EdgeAndFloor { weight } => weight as i64 - 1,
                PairKind::TwoEdges { w1, w2 } => (w1 + w2) as i64 - 2,
            };
            TopSeries::from_poly(&kind.factor(), 2 * nominal, cap)
        },
    );
    let total = counter.run();
    let auts = BigInt::from(floor_automorphism_count(d));
    Ok((0..terms).map(|j| total.c.get(2 * j).map(|x| x / &auts).unwrap_or_default()).collect())
}

/// One representative of every automorphism class of markings of `d`.
pub fn enumerate_markings(d: &FloorDiagram) -> Vec<Marking> {
    let table = ElementTable::new(d);
    let sizes = table.sizes();
    let auts = d.canonical_form().floor_automorphisms;
    let images: Vec<Vec<usize>> =
        auts.iter().map(|sigma| table.classes.iter().map(|c| table.index[&c.kind.mapped(sigma)]).collect()).collect();

    let mut sequences = Vec::new();
    let mut state = vec![0u16; sizes.len()];
    let mut seq = Vec::with_capacity(table.length);
    fn rec(table: &ElementTable, state: &mut Vec<u16>, seq: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if seq.len() == table.length {
            out.push(seq.clone());
            return;
        }
        for x in 0..table.classes.len() {
            if table.available(state, x) {
                state[x] += 1;
                seq.push(x);
                rec(table, state, seq, out);
                seq.pop();
                state[x] -= 1;
            }
        }
    }
    rec(&table, &mut state, &mut seq, &mut sequences);

    let mut out = Vec::new();
    for seq in sequences {
        let mut minimal = true;
        for img in &images {
            let mapped: Vec<usize> = seq.iter().map(|&c| img[c]).collect();
            if mapped < seq {
                minimal = false;
                break;
            }
        }
        if !minimal {
            continue;
        }
        let mut used = vec![0usize; sizes.len()];
        let order = seq
            .iter()
            .map(|&c| {
                let el = table.classes[c].members[used[c]];
                used[c] += 1;
                el
            })
            .collect();
        out.push(Marking { order });
    }
    out
}

/// Whether `m` lists every element of `d` once, in an order extending the
/// diagram's partial order.
pub fn is_marking(d: &FloorDiagram, m: &Marking) -> bool {
    let table = ElementTable::new(d);
    if m.order.len() != table.length {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    let mut state = vec![0u16; table.classes.len()];
    for &el in &m.order {
        if !seen.insert(el) {
            return false;
        }
        let Some(c) = table.class_of(d, el) else { return false };
        if !table.classes[c].members.contains(&el) || !table.available(&state, c) {
            return false;
        }
        state[c] += 1;
    }
    true
}

/// Which edges end up in which factor of `mu_S`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgePartition {
    /// Edges not involved in any pair.
    pub unpaired: Vec<Element>,
    /// Edges paired with one of their end floors.
    pub with_floor: Vec<Element>,
    /// Pairs of edges sharing a start or an end floor.
    pub edge_pairs: Vec<(Element, Element)>,
}

fn element_kind(d: &FloorDiagram, el: Element) -> ClassKind {
    match el {
        Element::Floor(v) => ClassKind::Floor(v),
        Element::Elevator(i) => {
            let e = &d.elevators()[i];
            ClassKind::Elevator { from: e.from, to: e.to, weight: e.weight }
        }
        Element::Source { floor, .. } => ClassKind::Sources(floor),
        Element::Sink { floor, .. } => ClassKind::Sinks(floor),
    }
}

/// Splits the edges of `d` according to `pairing`, or `None` when some pair
/// is incompatible.
pub fn partition_edges(d: &FloorDiagram, m: &Marking, pairing: &Pairing) -> Option<EdgePartition> {
    let mut part = EdgePartition::default();
    let mut paired = std::collections::HashSet::new();
    for (i, j) in pairing.pairs() {
        let (a, b) = (*m.order.get(i - 1)?, *m.order.get(j - 1)?);
        match pair_kind(element_kind(d, a), element_kind(d, b))? {
            PairKind::EdgeAndFloor { .. } => {
                part.with_floor.push(if matches!(a, Element::Floor(_)) { b } else { a });
            }
            PairKind::TwoEdges { .. } => part.edge_pairs.push((a, b)),
        }
        paired.insert(a);
        paired.insert(b);
    }
    part.unpaired =
        m.order.iter().copied().filter(|el| !matches!(el, Element::Floor(_)) && !paired.contains(el)).collect();
    Some(part)
}

pub fn is_compatible(d: &FloorDiagram, m: &Marking, pairing: &Pairing) -> bool {
    partition_edges(d, m, pairing).is_some()
}

/// `mu_S(d, m)`; zero when `m` is not compatible with the pairing.
pub fn mu_s(d: &FloorDiagram, m: &Marking, pairing: &Pairing) -> LaurentPoly {
    let Some(part) = partition_edges(d, m, pairing) else {
        return LaurentPoly::zero();
    };
    let w = |el: Element| element_kind(d, el).weight();
    let mut acc = LaurentPoly::one();
    for &el in &part.unpaired {
        acc = &acc * &quantum_square(w(el) as i64).expect("positive weight");
    }
    for &el in &part.with_floor {
        acc = &acc * &PairKind::EdgeAndFloor { weight: w(el) }.factor();
    }
    for &(a, b) in &part.edge_pairs {
        acc = &acc * &PairKind::TwoEdges { w1: w(a), w2: w(b) }.factor();
    }
    acc
}
