//! h-transverse lattice polygons.
//!
//! A polygon is stored by its side data: the multiset `d_l` of left-side
//! slopes (one entry per unit row, the horizontal shift of the left boundary
//! when moving one row *down*), the multiset `d_r` of right-side slopes
//! (horizontal shift of the right boundary when moving one row *up*, negated),
//! and the lengths `d_b`, `d_t` of the bottom and top horizontal sides.
//!
//! Rows are indexed from the bottom. Convexity forces `d_l` to be read in
//! non-increasing and `d_r` in non-decreasing order when walking upward.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HTransversePolygon {
    d_l: Vec<i64>,
    d_r: Vec<i64>,
    d_b: u64,
    d_t: u64,
}

/// Unvalidated side data, as parsed from user input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonSides {
    pub d_l: Vec<i64>,
    pub d_r: Vec<i64>,
    pub d_b: i64,
    pub d_t: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    EmptySides,
    SideCountMismatch { left: usize, right: usize },
    NegativeBottom(i64),
    NegativeTop(i64),
    ClosureMismatch { d_b: i64, expected: i64 },
    NegativeWidth { row: usize, width: i64 },
    Degenerate,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptySides => write!(f, "d_l and d_r must be nonempty"),
            Violation::SideCountMismatch { left, right } => {
                write!(f, "|d_l| = {left} differs from |d_r| = {right}")
            }
            Violation::NegativeBottom(v) => write!(f, "d_b = {v} is negative"),
            Violation::NegativeTop(v) => write!(f, "d_t = {v} is negative"),
            Violation::ClosureMismatch { d_b, expected } => {
                write!(f, "d_b = {d_b} but d_t + sum(d_r) - sum(d_l) = {expected}")
            }
            Violation::NegativeWidth { row, width } => {
                write!(f, "width {width} at height {row} is negative")
            }
            Violation::Degenerate => write!(f, "polygon has zero area"),
        }
    }
}

/// Lattice point counts of a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeStats {
    pub interior: u64,
    pub boundary: u64,
    /// Number of points constraining a genus-0 curve: `boundary - 1`.
    pub n_delta: u64,
    /// Largest admissible number of pairs: `floor(n_delta / 2)`.
    pub s_max: u64,
}

fn sorted_sides(d_l: &[i64], d_r: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let mut l = d_l.to_vec();
    l.sort_unstable_by(|a, b| b.cmp(a));
    let mut r = d_r.to_vec();
    r.sort_unstable();
    (l, r)
}

/// Widths of the polygon at every integer height, bottom first.
fn widths_of(l: &[i64], r: &[i64], d_b: i64) -> Vec<i64> {
    let mut w = vec![d_b];
    let mut cur = d_b;
    for (kl, kr) in l.iter().zip(r) {
        cur += kl - kr;
        w.push(cur);
    }
    w
}

/// Lists every way in which the side data fails to describe a polygon.
pub fn validate(sides: &PolygonSides) -> Vec<Violation> {
    let mut out = Vec::new();
    if sides.d_l.is_empty() || sides.d_r.is_empty() {
        out.push(Violation::EmptySides);
    }
    if sides.d_l.len() != sides.d_r.len() {
        out.push(Violation::SideCountMismatch { left: sides.d_l.len(), right: sides.d_r.len() });
    }
    if sides.d_b < 0 {
        out.push(Violation::NegativeBottom(sides.d_b));
    }
    if sides.d_t < 0 {
        out.push(Violation::NegativeTop(sides.d_t));
    }
    let expected = sides.d_t + sides.d_r.iter().sum::<i64>() - sides.d_l.iter().sum::<i64>();
    if expected != sides.d_b {
        out.push(Violation::ClosureMismatch { d_b: sides.d_b, expected });
    }
    if !out.is_empty() {
        return out;
    }
    let (l, r) = sorted_sides(&sides.d_l, &sides.d_r);
    let widths = widths_of(&l, &r, sides.d_b);
    for (row, &w) in widths.iter().enumerate() {
        if w < 0 {
            out.push(Violation::NegativeWidth { row, width: w });
        }
    }
    if out.is_empty() && widths.iter().all(|&w| w == 0) {
        out.push(Violation::Degenerate);
    }
    out
}

impl HTransversePolygon {
    pub fn new(d_l: Vec<i64>, d_r: Vec<i64>, d_b: i64, d_t: i64) -> Result<Self> {
        Self::from_sides(&PolygonSides { d_l, d_r, d_b, d_t })
    }

    pub fn from_sides(sides: &PolygonSides) -> Result<Self> {
        let violations = validate(sides);
        if !violations.is_empty() {
            return Err(Error::InvalidPolygon(violations));
        }
        let (d_l, d_r) = sorted_sides(&sides.d_l, &sides.d_r);
        Ok(HTransversePolygon { d_l, d_r, d_b: sides.d_b as u64, d_t: sides.d_t as u64 })
    }

    /// The trapezoid with vertices `(0,0), (0,a), (b,a), (an+b,0)`.
    pub fn abn(a: u64, b: u64, n: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::Domain("Delta_{a,b,n} needs a >= 1".into()));
        }
        if b == 0 && n == 0 {
            return Err(Error::Domain("Delta_{a,0,0} is degenerate".into()));
        }
        let (a, b, n) = (a as i64, b as i64, n as i64);
        Self::new(vec![0; a as usize], vec![n; a as usize], a * n + b, b)
    }

    /// The triangle of degree `d`.
    pub fn triangle(d: u64) -> Result<Self> {
        Self::abn(d, 0, 1)
    }

    pub fn sides(&self) -> PolygonSides {
        PolygonSides { d_l: self.d_l.clone(), d_r: self.d_r.clone(), d_b: self.d_b as i64, d_t: self.d_t as i64 }
    }

    /// Left slopes, bottom row first.
    pub fn d_l(&self) -> &[i64] {
        &self.d_l
    }

    /// Right slopes, bottom row first.
    pub fn d_r(&self) -> &[i64] {
        &self.d_r
    }

    pub fn d_b(&self) -> u64 {
        self.d_b
    }

    pub fn d_t(&self) -> u64 {
        self.d_t
    }

    /// Number of unit rows, which is also the number of floors of its diagrams.
    pub fn height(&self) -> usize {
        self.d_l.len()
    }

    pub fn widths(&self) -> Vec<i64> {
        widths_of(&self.d_l, &self.d_r, self.d_b as i64)
    }

    /// Left and right abscissae of the boundary at every integer height,
    /// with the bottom-left corner at the origin.
    pub fn boundary_abscissae(&self) -> Vec<(i64, i64)> {
        let mut out = vec![(0, self.d_b as i64)];
        let (mut xl, mut xr) = (0, self.d_b as i64);
        for (kl, kr) in self.d_l.iter().zip(&self.d_r) {
            xl -= kl;
            xr -= kr;
            out.push((xl, xr));
        }
        out
    }

    /// Vertices in counterclockwise order starting at the bottom left,
    /// with collinear boundary points removed.
    pub fn vertices(&self) -> Vec<(i64, i64)> {
        let rows = self.boundary_abscissae();
        let h = rows.len() - 1;
        let mut ring: Vec<(i64, i64)> = Vec::new();
        for (y, &(_, xr)) in rows.iter().enumerate() {
            ring.push((xr, y as i64));
        }
        for y in (0..=h).rev() {
            ring.push((rows[y].0, y as i64));
        }
        ring.dedup();
        if ring.len() > 1 && ring.first() == ring.last() {
            ring.pop();
        }
        let n = ring.len();
        let mut out: Vec<(i64, i64)> = Vec::new();
        for i in 0..n {
            let p = ring[(i + n - 1) % n];
            let c = ring[i];
            let nx = ring[(i + 1) % n];
            let cross = (c.0 - p.0) * (nx.1 - c.1) - (c.1 - p.1) * (nx.0 - c.0);
            if cross != 0 {
                out.push(c);
            }
        }
        let start = (0..out.len()).min_by_key(|&i| (out[i].1, out[i].0)).unwrap_or(0);
        out.rotate_left(start);
        out
    }

    /// Twice the area.
    pub fn double_area(&self) -> u64 {
        self.widths().windows(2).map(|w| (w[0] + w[1]) as u64).sum()
    }

    pub fn lattice_stats(&self) -> LatticeStats {
        let boundary = self.d_b + self.d_t + 2 * self.height() as u64;
        let interior = (self.double_area() + 2 - boundary) / 2;
        let n_delta = boundary - 1;
        LatticeStats { interior, boundary, n_delta, s_max: n_delta / 2 }
    }

    pub fn interior_points(&self) -> u64 {
        self.lattice_stats().interior
    }

    /// Whether this polygon is one of the triangle shapes, possibly with
    /// corners cut, on which the pairing recursion is known to hold.
    /// Returns the cut sizes `(a, b)` of the bottom-left and bottom-right
    /// corners when it is.
    pub fn recursion_family(&self) -> Option<(u64, u64)> {
        let d = self.height() as u64;
        if self.d_t != 0 || d < 3 {
            return None;
        }
        if !self.d_l.iter().all(|&k| k == 0 || k == 1) || !self.d_r.iter().all(|&k| k == 0 || k == 1) {
            return None;
        }
        let a = self.d_l.iter().filter(|&&k| k == 1).count() as u64;
        let b = self.d_r.iter().filter(|&&k| k == 0).count() as u64;
        if d < a.max(b) + 2 || self.d_b + a + b != d {
            return None;
        }
        Some((a, b))
    }

    /// Removes the two top rows of a polygon from the recursion family.
    pub fn chop_top(&self) -> Result<Self> {
        if self.recursion_family().is_none() {
            return Err(Error::UnsupportedPolygon(format!(
                "{self} is not a triangle with at most two bottom corners cut and at least three rows"
            )));
        }
        let h = self.height();
        let d_l = self.d_l[..h - 2].to_vec();
        let d_r = self.d_r[..h - 2].to_vec();
        let d_b = self.d_b as i64;
        let d_t = d_b - d_r.iter().sum::<i64>() + d_l.iter().sum::<i64>();
        Self::new(d_l, d_r, d_b, d_t)
    }

    /// Returns `(a, b, n)` if this polygon is `Delta_{a,b,n}`.
    pub fn as_abn(&self) -> Option<(u64, u64, u64)> {
        let n = *self.d_r.first()?;
        if n < 0 || self.d_l.iter().any(|&k| k != 0) || self.d_r.iter().any(|&k| k != n) {
            return None;
        }
        Some((self.height() as u64, self.d_t, n as u64))
    }

    /// Parses `abn:a,b,n` or `ht:dl=[..];dr=[..];db=N;dt=M`.
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for HTransversePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((a, b, n)) = self.as_abn() {
            return write!(f, "abn:{a},{b},{n}");
        }
        let join = |v: &[i64]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "ht:dl=[{}];dr=[{}];db={};dt={}", join(&self.d_l), join(&self.d_r), self.d_b, self.d_t)
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.trim().parse().map_err(|_| Error::Parse(format!("expected an integer, got {s:?}")))
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_int).collect()
}

impl FromStr for HTransversePolygon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("abn:") {
            let parts: Vec<i64> = rest.split(',').map(parse_int).collect::<Result<_>>()?;
            let [a, b, n] = parts[..] else {
                return Err(Error::Parse(format!("abn literal needs three integers: {s:?}")));
            };
            if a < 0 || b < 0 || n < 0 {
                return Err(Error::Parse(format!("abn parameters must be nonnegative: {s:?}")));
            }
            return Self::abn(a as u64, b as u64, n as u64);
        }
        if let Some(rest) = s.strip_prefix("ht:") {
            let (mut dl, mut dr, mut db, mut dt) = (None, None, None, None);
            for field in rest.split(';') {
                let (key, value) =
                    field.split_once('=').ok_or_else(|| Error::Parse(format!("malformed field {field:?}")))?;
                match key.trim() {
                    "dl" => dl = Some(parse_list(value)?),
                    "dr" => dr = Some(parse_list(value)?),
                    "db" => db = Some(parse_int(value)?),
                    "dt" => dt = Some(parse_int(value)?),
                    other => return Err(Error::Parse(format!("unknown field {other:?}"))),
                }
            }
            let missing = |name: &str| Error::Parse(format!("missing field {name} in {s:?}"));
            return Self::from_sides(&PolygonSides {
                d_l: dl.ok_or_else(|| missing("dl"))?,
                d_r: dr.ok_or_else(|| missing("dr"))?,
                d_b: db.ok_or_else(|| missing("db"))?,
                d_t: dt.ok_or_else(|| missing("dt"))?,
            });
        }
        Err(Error::Parse(format!("unknown polygon literal {s:?}")))
    }
}
