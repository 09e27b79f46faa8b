//! Templates, capping trees and the reconstruction of layered floor diagrams
//! with Newton polygon `Delta_{a,b,n}` from admissible collections of
//! templates.
//!
//! A template of length `l` has vertices `v_1 < .. < v_l`. Consecutive
//! vertices are joined by unweighted short edges (at least one per gap, since
//! the vertex order is total); longer edges carry weights. Source legs sit on
//! `v_2 .. v_l`, sink legs on `v_1 .. v_{l-1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{CanonicalKey, Elevator, Floor, FloorDiagram};
use crate::error::{Error, Result};
use crate::polygon::HTransversePolygon;

/// A weighted edge spanning at least two gaps, 0-based endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LongEdge {
    pub from: usize,
    pub to: usize,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Template {
    /// Number of short edges in each gap `v_j -> v_{j+1}`.
    unweighted_short_edges: Vec<u32>,
    long_edges: Vec<LongEdge>,
    sources: Vec<u32>,
    sinks: Vec<u32>,
}

impl Template {
    /// The template reduced to one vertex.
    pub fn point() -> Self {
        Template { unweighted_short_edges: Vec::new(), long_edges: Vec::new(), sources: vec![0], sinks: vec![0] }
    }

    /// Builds and checks a template.
    pub fn new(short: Vec<u32>, mut long: Vec<LongEdge>, sources: Vec<u32>, sinks: Vec<u32>) -> Result<Self> {
        long.sort();
        let t = Template { unweighted_short_edges: short, long_edges: long, sources, sinks };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        let l = self.length();
        let bad = |msg: String| Err(Error::Domain(format!("not a template: {msg}")));
        if self.sources.len() != l || self.sinks.len() != l {
            return bad("one source and one sink count per vertex".into());
        }
        if self.unweighted_short_edges.iter().any(|&g| g == 0) {
            return bad("consecutive vertices must be joined".into());
        }
        if self.sources[0] > 0 || self.sinks[l - 1] > 0 {
            return bad("legs at the extremal vertices belong to the outside".into());
        }
        for e in &self.long_edges {
            if e.to >= l || e.to < e.from + 2 || e.weight == 0 {
                return bad(format!("bad long edge {e:?}"));
            }
        }
        if let Some(j) = (0..l.saturating_sub(1)).find(|&j| self.separates(j)) {
            return bad(format!("the short edge after v_{} separates", j + 1));
        }
        Ok(())
    }

    /// Whether gap `j` holds a single short edge whose removal disconnects
    /// the graph and which is comparable with every other element.
    fn separates(&self, j: usize) -> bool {
        self.unweighted_short_edges[j] == 1
            && !self.long_edges.iter().any(|e| e.from <= j && e.to > j)
            && self.sources[j + 1..].iter().all(|&x| x == 0)
            && self.sinks[..=j].iter().all(|&x| x == 0)
    }

    pub fn length(&self) -> usize {
        self.unweighted_short_edges.len() + 1
    }

    pub fn short_edges(&self) -> &[u32] {
        &self.unweighted_short_edges
    }

    pub fn long_edges(&self) -> &[LongEdge] {
        &self.long_edges
    }

    pub fn sources(&self) -> &[u32] {
        &self.sources
    }

    pub fn sinks(&self) -> &[u32] {
        &self.sinks
    }

    pub fn source_count(&self) -> u64 {
        self.sources.iter().map(|&x| x as u64).sum()
    }

    pub fn sink_count(&self) -> u64 {
        self.sinks.iter().map(|&x| x as u64).sum()
    }

    pub fn is_point(&self) -> bool {
        self.length() == 1
    }

    /// Not a point and without legs.
    pub fn is_closed(&self) -> bool {
        !self.is_point() && self.source_count() == 0 && self.sink_count() == 0
    }

    pub fn genus(&self) -> u64 {
        let edges: u64 =
            self.unweighted_short_edges.iter().map(|&g| g as u64).sum::<u64>() + self.long_edges.len() as u64;
        edges + 1 - self.length() as u64
    }

    pub fn codegree(&self) -> u64 {
        let l = self.length();
        let legs: u64 =
            (0..l).map(|j| self.sources[j] as u64 * j as u64 + self.sinks[j] as u64 * (l - 1 - j) as u64).sum();
        let long: u64 = self.long_edges.iter().map(|e| (e.to - e.from - 1) as u64 * e.weight).sum();
        legs + long
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l={} short={:?}", self.length(), self.unweighted_short_edges)?;
        if !self.long_edges.is_empty() {
            let long: Vec<String> =
                self.long_edges.iter().map(|e| format!("{}->{}:{}", e.from + 1, e.to + 1, e.weight)).collect();
            write!(f, " long=[{}]", long.join(","))?;
        }
        if self.source_count() > 0 {
            write!(f, " sources={:?}", self.sources)?;
        }
        if self.sink_count() > 0 {
            write!(f, " sinks={:?}", self.sinks)?;
        }
        Ok(())
    }
}

/// Every multiset of items (with per-item cost) with at most `max_items`
/// elements and total cost at most `budget`.
fn multisets<T: Clone>(items: &[(T, u64)], max_items: usize, budget: u64) -> Vec<(Vec<T>, u64)> {
    fn rec<T: Clone>(
        items: &[(T, u64)],
        start: usize,
        left_items: usize,
        left_cost: u64,
        cur: &mut Vec<T>,
        spent: u64,
        out: &mut Vec<(Vec<T>, u64)>,
    ) {
        out.push((cur.clone(), spent));
        if left_items == 0 {
            return;
        }
        for k in start..items.len() {
            let (item, cost) = &items[k];
            if *cost > left_cost {
                continue;
            }
            cur.push(item.clone());
            rec(items, k, left_items - 1, left_cost - cost, cur, spent + cost, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, 0, max_items, budget, &mut Vec::new(), 0, &mut out);
    out
}

/// All templates of genus at most `max_genus` and codegree at most
/// `max_codeg`, sorted by (genus, codegree, length). Templates carrying both
/// sources and sinks are left out: they never occur in an admissible
/// collection.
pub fn enumerate_templates(max_genus: u64, max_codeg: u64) -> Vec<Template> {
    let max_len = (max_codeg + max_genus + 1) as usize;
    let mut skeletons: Vec<(usize, Vec<u32>)> = Vec::new();
    for l in 1..=max_len {
        let gaps = l - 1;
        // short-edge multiplicities with sum(g_j - 1) <= max_genus
        let mut stack = vec![Vec::<u32>::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == gaps {
                skeletons.push((l, cur));
                continue;
            }
            let used: u64 = cur.iter().map(|&g| g as u64 - 1).sum();
            for g in 1..=(1 + max_genus - used) as u32 {
                let mut next = cur.clone();
                next.push(g);
                stack.push(next);
            }
        }
    }
    let mut out: Vec<Template> =
        skeletons.par_iter().flat_map_iter(|(l, short)| templates_on(*l, short, max_genus, max_codeg)).collect();
    out.sort_by_key(|t| (t.genus(), t.codegree(), t.length(), t.clone()));
    out.dedup();
    out
}

fn templates_on(l: usize, short: &[u32], max_genus: u64, max_codeg: u64) -> Vec<Template> {
    if l == 1 {
        return vec![Template::point()];
    }
    let short_extra: u64 = short.iter().map(|&g| g as u64 - 1).sum();
    let long_items: Vec<(LongEdge, u64)> = (0..l)
        .flat_map(|from| (from + 2..l).map(move |to| (from, to)))
        .flat_map(|(from, to)| {
            let span = (to - from - 1) as u64;
            (1..=max_codeg / span).map(move |weight| (LongEdge { from, to, weight }, span * weight))
        })
        .collect();
    let source_items: Vec<(usize, u64)> = (1..l).map(|j| (j, j as u64)).collect();
    let sink_items: Vec<(usize, u64)> = (0..l - 1).map(|j| (j, (l - 1 - j) as u64)).collect();
    let mut out = Vec::new();
    for (long, long_cost) in multisets(&long_items, (max_genus - short_extra) as usize, max_codeg) {
        let left = max_codeg - long_cost;
        let mut legs: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        for (at, _) in multisets(&source_items, usize::MAX, left) {
            let mut s = vec![0; l];
            at.iter().for_each(|&j| s[j] += 1);
            legs.push((s, vec![0; l]));
        }
        for (at, _) in multisets(&sink_items, usize::MAX, left) {
            if at.is_empty() {
                continue;
            }
            let mut t = vec![0; l];
            at.iter().for_each(|&j| t[j] += 1);
            legs.push((vec![0; l], t));
        }
        for (sources, sinks) in legs {
            if let Ok(t) = Template::new(short.to_vec(), long.clone(), sources, sinks) {
                out.push(t);
            }
        }
    }
    out
}

/// Census of templates by `(genus, codegree)`.
pub fn template_census(max_genus: u64, max_codeg: u64) -> BTreeMap<(u64, u64), usize> {
    let mut census = BTreeMap::new();
    for g in 0..=max_genus {
        for c in 0..=max_codeg {
            census.insert((g, c), 0);
        }
    }
    for t in enumerate_templates(max_genus, max_codeg) {
        *census.entry((t.genus(), t.codegree())).or_default() += 1;
    }
    census
}

/// A rooted tree whose edges point away from the root, each carrying `n`
/// times the size of the subtree above it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CappingTree {
    n: u64,
    /// `parent[v]` for `v >= 1`, vertices in preorder, root `0`.
    parent: Vec<Option<usize>>,
}

impl CappingTree {
    pub fn floors(&self) -> usize {
        self.parent.len()
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    fn subtree_sizes(&self) -> Vec<u64> {
        let mut size = vec![1u64; self.floors()];
        for v in (1..self.floors()).rev() {
            let p = self.parent[v].expect("non-root vertices have a parent");
            size[p] += size[v];
        }
        size
    }

    pub fn elevators(&self) -> Vec<Elevator> {
        let size = self.subtree_sizes();
        (1..self.floors()).map(|v| Elevator::new(self.parent[v].unwrap(), v, self.n * size[v])).collect()
    }

    pub fn root_degree(&self) -> usize {
        self.parent.iter().filter(|p| **p == Some(0)).count()
    }

    pub fn codegree(&self) -> i64 {
        let a = self.floors() as i64;
        let n = self.n as i64;
        let excess: i64 = self.elevators().iter().map(|e| e.weight as i64 - 1).sum();
        (a - 1) * (n * a - 2) / 2 - excess
    }
}

impl Serialize for CappingTreeView<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CappingTree", 4)?;
        st.serialize_field("floors", &self.0.floors())?;
        st.serialize_field("n", &self.0.n)?;
        st.serialize_field("elevators", &self.0.elevators())?;
        st.serialize_field("codegree", &self.0.codegree())?;
        st.end()
    }
}

/// Serialisation of a capping tree with its weights and codegree.
pub struct CappingTreeView<'a>(pub &'a CappingTree);

/// Rooted unlabelled trees on `size` vertices, as nested child lists in a
/// canonical order.
fn rooted_trees(size: usize, memo: &mut BTreeMap<usize, Vec<String>>) -> Vec<String> {
    if let Some(v) = memo.get(&size) {
        return v.clone();
    }
    let mut out = BTreeSet::new();
    // children as a non-increasing sequence of (size, code) pairs
    fn extend(
        left: usize,
        max: Option<(usize, String)>,
        cur: &mut Vec<String>,
        memo: &mut BTreeMap<usize, Vec<String>>,
        out: &mut BTreeSet<String>,
    ) {
        if left == 0 {
            out.insert(format!("({})", cur.join("")));
            return;
        }
        for s in (1..=left).rev() {
            for code in rooted_trees(s, memo) {
                let key = (s, code.clone());
                if let Some(m) = &max {
                    if key > *m {
                        continue;
                    }
                }
                cur.push(code);
                extend(left - s, Some(key), cur, memo, out);
                cur.pop();
            }
        }
    }
    extend(size - 1, None, &mut Vec::new(), memo, &mut out);
    let v: Vec<String> = out.into_iter().collect();
    memo.insert(size, v.clone());
    v
}

fn tree_from_code(code: &str) -> Vec<Option<usize>> {
    let mut parent = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for ch in code.chars() {
        if ch == '(' {
            parent.push(stack.last().copied());
            stack.push(parent.len() - 1);
        } else {
            stack.pop();
        }
    }
    parent
}

/// All capping trees with `a` floors for slope `n` and codegree at most
/// `max_codeg`, ordered by codegree.
pub fn enumerate_capping_trees(a: usize, n: u64, max_codeg: i64) -> Vec<CappingTree> {
    if a < 3 || n == 0 {
        return Vec::new();
    }
    let mut memo = BTreeMap::new();
    let mut out: Vec<CappingTree> = rooted_trees(a, &mut memo)
        .into_iter()
        .map(|code| CappingTree { n, parent: tree_from_code(&code) })
        .filter(|t| t.root_degree() >= 2 && t.codegree() <= max_codeg)
        .collect();
    out.sort_by_key(|t| (t.codegree(), t.parent.clone()));
    out
}

/// A sequence of templates whose first member has no sinks, whose last has
/// no sources, and whose middle members are closed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AdmissibleCollection {
    templates: Vec<Template>,
}

impl AdmissibleCollection {
    pub fn new(templates: Vec<Template>) -> Result<Self> {
        let m = templates.len();
        if m == 0 {
            return Err(Error::Domain("an admissible collection is not empty".into()));
        }
        if templates[0].sink_count() > 0 || templates[m - 1].source_count() > 0 {
            return Err(Error::Domain("no sinks at the bottom, no sources at the top".into()));
        }
        if templates[1..m.saturating_sub(1)].iter().any(|t| !t.is_closed()) {
            return Err(Error::Domain("middle templates must be closed".into()));
        }
        Ok(AdmissibleCollection { templates })
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    pub fn genus(&self) -> u64 {
        self.templates.iter().map(Template::genus).sum()
    }

    pub fn codegree(&self) -> u64 {
        self.templates.iter().map(Template::codegree).sum()
    }

    pub fn total_length(&self) -> usize {
        self.templates.iter().map(Template::length).sum()
    }
}

/// Admissible collections of genus `g` and codegree `i` fitting in `a`
/// floors.
pub fn admissible_collections(g: u64, i: u64, a: usize) -> Vec<AdmissibleCollection> {
    let pool = enumerate_templates(g, i);
    let first: Vec<&Template> = pool.iter().filter(|t| t.sink_count() == 0).collect();
    let middle: Vec<&Template> = pool.iter().filter(|t| t.is_closed()).collect();
    let last: Vec<&Template> = pool.iter().filter(|t| t.source_count() == 0).collect();
    let mut out = Vec::new();
    for t in &first {
        if t.genus() == g && t.codegree() == i && t.sink_count() == 0 && t.source_count() == 0 && t.length() <= a {
            out.push(AdmissibleCollection { templates: vec![(*t).clone()] });
        }
    }
    fn rec(
        prefix: &mut Vec<Template>,
        g_left: u64,
        i_left: u64,
        len_left: usize,
        middle: &[&Template],
        last: &[&Template],
        out: &mut Vec<AdmissibleCollection>,
    ) {
        for t in last {
            if t.genus() == g_left && t.codegree() == i_left && t.length() <= len_left {
                let mut ts = prefix.clone();
                ts.push((*t).clone());
                out.push(AdmissibleCollection { templates: ts });
            }
        }
        for t in middle {
            if t.genus() <= g_left && t.codegree() <= i_left && t.length() < len_left {
                prefix.push((*t).clone());
                rec(prefix, g_left - t.genus(), i_left - t.codegree(), len_left - t.length(), middle, last, out);
                prefix.pop();
            }
        }
    }
    for t in &first {
        if t.genus() <= g && t.codegree() <= i && t.length() < a {
            let mut prefix = vec![(*t).clone()];
            rec(&mut prefix, g - t.genus(), i - t.codegree(), a - t.length(), &middle, &last, &mut out);
        }
    }
    out.sort();
    out
}

/// Starting floors `kappa = (k_1 = 1, .., k_m)` (1-based) with
/// `k_{j+1} >= k_j + l(Theta_j)` and `k_m + l(Theta_m) = a + 1`.
pub fn spacings(xi: &AdmissibleCollection, a: usize) -> Vec<Vec<usize>> {
    let lens: Vec<usize> = xi.templates.iter().map(Template::length).collect();
    let m = lens.len();
    let mut out = Vec::new();
    fn rec(lens: &[usize], a: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let j = cur.len();
        let m = lens.len();
        if j == m {
            out.push(cur.clone());
            return;
        }
        let lo = cur[j - 1] + lens[j - 1];
        if j + 1 == m {
            if a + 1 >= lens[j] && a + 1 - lens[j] >= lo {
                cur.push(a + 1 - lens[j]);
                rec(lens, a, cur, out);
                cur.pop();
            }
            return;
        }
        let rest: usize = lens[j..].iter().sum();
        for k in lo..=(a + 1).saturating_sub(rest) {
            cur.push(k);
            rec(lens, a, cur, out);
            cur.pop();
        }
    }
    if m == 1 {
        if lens[0] == a {
            out.push(vec![1]);
        }
        return out;
    }
    rec(&lens, a, &mut vec![1], &mut out);
    out
}

/// Short-edge weights: for every template and every gap, the multiset of
/// weights of its short edges in non-increasing order.
pub type ShortWeights = Vec<Vec<Vec<u64>>>;

/// Places sources and sinks for `(Xi, kappa)` and returns, for every floor,
/// `(sources, sinks)` together with the crossing weight of every cut.
fn layout(xi: &AdmissibleCollection, kappa: &[usize], a: usize, b: u64, n: u64) -> Result<(Vec<(u64, u64)>, Vec<i64>)> {
    let mut legs = vec![(0u64, 0u64); a];
    for (t, &k) in xi.templates.iter().zip(kappa) {
        for v in 0..t.length() {
            legs[k - 1 + v].0 += t.sources[v] as u64;
            legs[k - 1 + v].1 += t.sinks[v] as u64;
        }
    }
    let placed_src: u64 = legs.iter().map(|x| x.0).sum();
    let placed_snk: u64 = legs.iter().map(|x| x.1).sum();
    let total = a as u64 * n + b;
    if placed_src > total || placed_snk > b {
        return Err(Error::Domain("more template legs than the polygon allows".into()));
    }
    legs[0].0 += total - placed_src;
    legs[a - 1].1 += b - placed_snk;
    let mut crossing = Vec::with_capacity(a.saturating_sub(1));
    let mut c = 0i64;
    for leg in legs.iter().take(a - 1) {
        c += leg.0 as i64 - leg.1 as i64 - n as i64;
        crossing.push(c);
    }
    Ok((legs, crossing))
}

fn partitions_into(total: i64, parts: usize) -> Vec<Vec<u64>> {
    fn rec(left: i64, parts: usize, max: i64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = max.min(left - (parts as i64 - 1));
        for w in (1..=hi).rev() {
            if w * (parts as i64) < left {
                break;
            }
            cur.push(w as u64);
            rec(left - w, parts - 1, w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 && total >= parts as i64 {
        rec(total, parts, total, &mut Vec::new(), &mut out);
    }
    out
}

/// The set `B_{a,b,n}(Xi, kappa)`: every way to weight the short edges so that
/// all floors but the extremal ones absorb `n`.
pub fn short_weight_choices(
    xi: &AdmissibleCollection,
    kappa: &[usize],
    a: usize,
    b: u64,
    n: u64,
) -> Result<Vec<ShortWeights>> {
    let (_, crossing) = layout(xi, kappa, a, b, n)?;
    let mut per_gap: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut shape: Vec<usize> = Vec::new();
    for (t, &k) in xi.templates.iter().zip(kappa) {
        shape.push(t.short_edges().len());
        for (j, &g) in t.short_edges().iter().enumerate() {
            let cut = k - 1 + j;
            let long: i64 = t.long_edges.iter().filter(|e| e.from <= j && e.to > j).map(|e| e.weight as i64).sum();
            per_gap.push(partitions_into(crossing[cut] - long, g as usize));
        }
    }
    let mut flat: Vec<Vec<Vec<u64>>> = vec![Vec::new()];
    for options in &per_gap {
        flat = flat
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect();
    }
    Ok(flat
        .into_iter()
        .map(|gaps| {
            let mut it = gaps.into_iter();
            shape.iter().map(|&s| it.by_ref().take(s).collect()).collect()
        })
        .collect())
}

/// Glues the templates of `xi` at the floors given by `kappa`, joins them by
/// chains and adds the remaining sources and sinks at the extremal floors.
pub fn reconstruct(
    xi: &AdmissibleCollection,
    kappa: &[usize],
    omega: &ShortWeights,
    a: usize,
    b: u64,
    n: u64,
) -> Result<FloorDiagram> {
    if kappa.len() != xi.templates.len() || omega.len() != xi.templates.len() {
        return Err(Error::Domain("one start floor and one weighting per template".into()));
    }
    if !spacings(xi, a).iter().any(|k| k == kappa) {
        return Err(Error::Domain(format!("{kappa:?} is not a valid spacing")));
    }
    let (legs, crossing) = layout(xi, kappa, a, b, n)?;
    let floors: Vec<Floor> = legs.iter().map(|&(s, t)| Floor::new(0, n as i64, s as u32, t as u32)).collect();
    let mut elevators = Vec::new();
    let mut covered = vec![false; a.saturating_sub(1)];
    for ((t, &k), weights) in xi.templates.iter().zip(kappa).zip(omega) {
        let base = k - 1;
        if weights.len() != t.short_edges().len() {
            return Err(Error::Domain("one weight multiset per gap".into()));
        }
        for (j, ws) in weights.iter().enumerate() {
            if ws.len() != t.short_edges()[j] as usize || ws.iter().any(|&w| w == 0) {
                return Err(Error::Domain("short edge weights do not match the template".into()));
            }
            covered[base + j] = true;
            elevators.extend(ws.iter().map(|&w| Elevator::new(base + j, base + j + 1, w)));
        }
        elevators.extend(t.long_edges.iter().map(|e| Elevator::new(base + e.from, base + e.to, e.weight)));
    }
    for (cut, done) in covered.iter().enumerate() {
        if !done {
            if crossing[cut] < 1 {
                return Err(Error::Domain(format!(
                    "chain edge above floor {} would have weight {}",
                    cut + 1,
                    crossing[cut]
                )));
            }
            elevators.push(Elevator::new(cut, cut + 1, crossing[cut] as u64));
        }
    }
    let d = FloorDiagram::new(floors, elevators)?;
    let p = HTransversePolygon::abn(a as u64, b, n)?;
    d.validate_for(&p)?;
    Ok(d)
}

/// Comparison of the reconstructed and the enumerated diagrams of one genus
/// and codegree.
#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub a: usize,
    pub b: u64,
    pub n: u64,
    pub genus: u64,
    pub codegree: u64,
    pub collections: usize,
    pub triples: usize,
    pub enumerated: usize,
    pub reconstructed_classes: usize,
    /// Triples whose diagram coincides with an earlier triple's.
    pub collisions: usize,
    /// Enumerated diagrams no triple produces.
    pub missing: Vec<String>,
    /// Reconstructed diagrams absent from the enumeration.
    pub extra: Vec<String>,
    /// Enumerated diagrams of codegree at most `i` that are not totally
    /// ordered.
    pub non_layered: usize,
    /// Reconstructions whose genus or codegree differ from their collection's.
    pub inconsistent: usize,
    pub passed: bool,
}

/// Reconstructs every triple `(Xi, kappa, Omega)` of genus `g` and codegree
/// `i` for `Delta_{a,b,n}` and compares with direct enumeration.
pub fn verify_bijection(a: usize, b: u64, n: u64, g: u64, i: u64) -> Result<BijectionReport> {
    if b <= i || a as u64 <= i {
        return Err(Error::OutOfRegion(format!("need b > i and a > i, got a={a}, b={b}, i={i}")));
    }
    compare_reconstruction(a, b, n, g, i)
}

/// The comparison behind [`verify_bijection`] without the region check.
/// Outside `b > i, a > i` diagrams need not be layered and the comparison is
/// expected to fail.
pub fn compare_reconstruction(a: usize, b: u64, n: u64, g: u64, i: u64) -> Result<BijectionReport> {
    let polygon = HTransversePolygon::abn(a as u64, b, n)?;
    let all = crate::diagram::enumerate_up_to_codegree(&polygon, g, Some(i));
    let non_layered = all.iter().filter(|d| !d.is_totally_ordered()).count();
    let enumerated: BTreeMap<CanonicalKey, &FloorDiagram> =
        all.iter().filter(|d| d.codegree(&polygon) == i as i64).map(|d| (d.canonical_form().key, d)).collect();

    let collections = admissible_collections(g, i, a);
    let mut triples = 0;
    let mut collisions = 0;
    let mut inconsistent = 0;
    let mut built: BTreeMap<CanonicalKey, FloorDiagram> = BTreeMap::new();
    for xi in &collections {
        for kappa in spacings(xi, a) {
            let Ok(choices) = short_weight_choices(xi, &kappa, a, b, n) else { continue };
            for omega in choices {
                let Ok(d) = reconstruct(xi, &kappa, &omega, a, b, n) else { continue };
                triples += 1;
                if d.genus() != xi.genus() || d.codegree(&polygon) != xi.codegree() as i64 {
                    inconsistent += 1;
                }
                let key = d.canonical_form().key;
                if built.insert(key, d).is_some() {
                    collisions += 1;
                }
            }
        }
    }
    let missing: Vec<String> =
        enumerated.iter().filter(|(k, _)| !built.contains_key(k)).map(|(_, d)| d.to_string()).collect();
    let extra: Vec<String> =
        built.iter().filter(|(k, _)| !enumerated.contains_key(k)).map(|(_, d)| d.to_string()).collect();
    let passed = missing.is_empty() && extra.is_empty() && collisions == 0 && non_layered == 0 && inconsistent == 0;
    Ok(BijectionReport {
        a,
        b,
        n,
        genus: g,
        codegree: i,
        collections: collections.len(),
        triples,
        enumerated: enumerated.len(),
        reconstructed_classes: built.len(),
        collisions,
        missing,
        extra,
        non_layered,
        inconsistent,
        passed,
    })
}
