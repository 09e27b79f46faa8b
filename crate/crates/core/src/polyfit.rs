//! Exact interpolation of integer data on boxes, used to test that
//! coefficients are polynomial in their parameters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::binomial;
use crate::error::{Error, Result};

/// `P^{(n)}(X) = sum_l (-1)^l C(n, l) P(X + l)` for every start `X` such
/// that `X + n` is still in range. Needs at least `n + 1` values.
pub fn discrete_derivative(values: &[BigInt], n: usize) -> Result<Vec<BigInt>> {
    if values.len() <= n {
        return Err(Error::Domain(format!("derivative of order {n} needs {} values, got {}", n + 1, values.len())));
    }
    Ok((0..values.len() - n)
        .map(|x| {
            (0..=n).fold(BigInt::zero(), |acc, l| {
                let term = binomial(n as i64, l as i64) * &values[x + l];
                if l % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect())
}

/// A multivariate polynomial with rational coefficients, keyed by exponent
/// vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl RationalPoly {
    pub fn zero(vars: &[&str]) -> Self {
        RationalPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    /// Degree in the variable at position `var`, `None` for the zero
    /// polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            let mono =
                e.iter().zip(point).fold(BigRational::one(), |m, (&k, x)| m * num_traits::pow(x.clone(), k as usize));
            acc + c * mono
        })
    }

    pub fn evaluate_int(&self, point: &[i64]) -> BigRational {
        let pt: Vec<BigRational> = point.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        self.evaluate(&pt)
    }

    /// Terms as `(exponents, coefficient)` strings for serialisation.
    pub fn term_list(&self) -> Vec<(Vec<u32>, String)> {
        self.ordered_terms().into_iter().map(|(e, c)| (e.clone(), c.to_string())).collect()
    }

    fn ordered_terms(&self) -> Vec<(&Vec<u32>, &BigRational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|(a, _), (b, _)| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        ts
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts = self.ordered_terms();
        if ts.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Monomial coefficients of the polynomial through the given points, lowest
/// degree first.
fn newton_to_monomial(xs: &[i64], ys: &[BigRational]) -> Result<Vec<BigRational>> {
    let m = xs.len();
    let distinct: BTreeSet<i64> = xs.iter().copied().collect();
    if distinct.len() != m {
        let dup = xs.iter().find(|x| xs.iter().filter(|y| y == x).count() > 1).unwrap();
        return Err(Error::DuplicateAbscissa(dup.to_string()));
    }
    // divided differences
    let mut dd = ys.to_vec();
    for level in 1..m {
        for k in (level..m).rev() {
            let denom = BigRational::from_integer((xs[k] - xs[k - level]).into());
            dd[k] = (&dd[k] - &dd[k - 1]) / denom;
        }
    }
    // Horner on the Newton basis
    let mut coeffs = vec![BigRational::zero(); m];
    for k in (0..m).rev() {
        // coeffs = coeffs * (x - xs[k]) + dd[k]
        let shift = BigRational::from_integer(xs[k].into());
        let mut next = vec![BigRational::zero(); m];
        for d in 0..m {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < m {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * &shift;
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    Ok(coeffs)
}

/// The unique polynomial of degree below `points.len()` through the points.
pub fn interpolate(var: &str, points: &[(i64, BigRational)]) -> Result<RationalPoly> {
    let xs: Vec<i64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<BigRational> = points.iter().map(|p| p.1.clone()).collect();
    let coeffs = newton_to_monomial(&xs, &ys)?;
    let mut poly = RationalPoly::zero(&[var]);
    for (d, c) in coeffs.into_iter().enumerate() {
        poly.add_term(vec![d as u32], c);
    }
    Ok(poly)
}

/// Interpolates values on the product grid `axes[0] x axes[1] x ...`, given
/// in row-major order with the last axis fastest.
pub fn interpolate_tensor(vars: &[&str], axes: &[Vec<i64>], values: &[BigRational]) -> Result<RationalPoly> {
    if vars.len() != axes.len() {
        return Err(Error::Domain("one axis per variable".into()));
    }
    let dims: Vec<usize> = axes.iter().map(Vec::len).collect();
    let size: usize = dims.iter().product();
    if size != values.len() {
        return Err(Error::Domain(format!("expected {size} values, got {}", values.len())));
    }
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let mut data = values.to_vec();
    for (ax, xs) in axes.iter().enumerate() {
        let (len, stride) = (dims[ax], strides[ax]);
        for base in 0..size {
            if (base / stride) % len != 0 {
                continue;
            }
            let fiber: Vec<BigRational> = (0..len).map(|k| data[base + k * stride].clone()).collect();
            let coeffs = newton_to_monomial(xs, &fiber)?;
            for (k, c) in coeffs.into_iter().enumerate() {
                data[base + k * stride] = c;
            }
        }
    }
    let mut poly = RationalPoly::zero(vars);
    for (flat, c) in data.into_iter().enumerate() {
        let exps: Vec<u32> = (0..dims.len()).map(|k| ((flat / strides[k]) % dims[k]) as u32).collect();
        poly.add_term(exps, c);
    }
    Ok(poly)
}

/// An axis-aligned box of integer points, bounds inclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridBox {
    pub vars: Vec<String>,
    pub ranges: Vec<(i64, i64)>,
}

impl GridBox {
    pub fn new(vars: &[&str], ranges: &[(i64, i64)]) -> Self {
        GridBox { vars: vars.iter().map(|s| s.to_string()).collect(), ranges: ranges.to_vec() }
    }

    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &(lo, hi) in &self.ranges {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (lo..=hi).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub point: Vec<i64>,
    pub value: String,
    pub predicted: String,
}

/// Outcome of fitting on a sub-grid and checking the rest of the box.
#[derive(Clone, Debug, Serialize)]
pub struct PolynomialityReport {
    pub region: GridBox,
    pub expected_degrees: Vec<u32>,
    pub fitted_degrees: Vec<Option<u32>>,
    pub polynomial: String,
    pub terms: Vec<(Vec<u32>, String)>,
    pub fit_points: usize,
    pub held_out_points: usize,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
    #[serde(skip)]
    pub fitted: Option<RationalPoly>,
}

/// Samples `f` on every point of `region`, fits a polynomial of the given
/// degree per variable on the first `deg + 1` values of each axis, and checks
/// the fit on all remaining points. Passes when nothing mismatches and the
/// fitted degrees are exactly the expected ones.
pub fn verify_polynomiality<F>(f: F, region: &GridBox, degrees: &[u32]) -> Result<PolynomialityReport>
where
    F: Fn(&[i64]) -> Result<BigInt> + Sync,
{
    if degrees.len() != region.ranges.len() {
        return Err(Error::Domain("one degree per variable".into()));
    }
    for (k, (&(lo, hi), &d)) in region.ranges.iter().zip(degrees).enumerate() {
        if hi - lo + 1 < d as i64 + 1 {
            return Err(Error::Domain(format!(
                "axis {} has {} points, degree {d} needs {}",
                region.vars[k],
                hi - lo + 1,
                d + 1
            )));
        }
    }
    let points = region.points();
    let values: Vec<BigInt> = points.par_iter().map(|p| f(p)).collect::<Result<_>>()?;
    let table: BTreeMap<&Vec<i64>, &BigInt> = points.iter().zip(&values).collect();

    let axes: Vec<Vec<i64>> =
        region.ranges.iter().zip(degrees).map(|(&(lo, _), &d)| (lo..=lo + d as i64).collect()).collect();
    let in_fit = |p: &[i64]| p.iter().zip(&axes).all(|(x, ax)| ax.contains(x));
    let fit_pts: Vec<&Vec<i64>> = points.iter().filter(|p| in_fit(p)).collect();
    let fit_vals: Vec<BigRational> = fit_pts.iter().map(|p| BigRational::from_integer(table[p].clone())).collect();
    let vars: Vec<&str> = region.vars.iter().map(String::as_str).collect();
    let poly = interpolate_tensor(&vars, &axes, &fit_vals)?;

    let mut mismatches = Vec::new();
    let mut held_out = 0;
    for (p, v) in points.iter().zip(&values) {
        if in_fit(p) {
            continue;
        }
        held_out += 1;
        let pred = poly.evaluate_int(p);
        if pred != BigRational::from_integer(v.clone()) {
            mismatches.push(Mismatch { point: p.clone(), value: v.to_string(), predicted: pred.to_string() });
        }
    }
    let fitted_degrees: Vec<Option<u32>> = (0..degrees.len()).map(|k| poly.degree_in(k)).collect();
    let degrees_ok = fitted_degrees.iter().zip(degrees).all(|(f, &d)| f.unwrap_or(0) == d);
    Ok(PolynomialityReport {
        region: region.clone(),
        expected_degrees: degrees.to_vec(),
        fitted_degrees,
        polynomial: poly.to_string(),
        terms: poly.term_list(),
        fit_points: fit_pts.len(),
        held_out_points: held_out,
        passed: mismatches.is_empty() && degrees_ok,
        mismatches,
        fitted: Some(poly),
    })
}

/// Checks on a sequence `s -> N(s)` for `s = 0, 1, ..`: the `i`-th discrete
/// derivative is constant and equal to `2^i`, so that `N` has degree `i` with
/// leading coefficient `(-2)^i / i!`.
#[derive(Clone, Debug, Serialize)]
pub struct SPolynomialReport {
    pub i: u32,
    pub values: Vec<String>,
    pub derivative: Vec<String>,
    pub degree: Option<u32>,
    pub leading_coefficient: Option<String>,
    pub expected_leading: String,
    pub passed: bool,
}

pub fn check_s_polynomial(values: &[BigInt], i: u32) -> Result<SPolynomialReport> {
    if values.len() < i as usize + 2 {
        return Err(Error::Domain(format!("need at least {} values, got {}", i + 2, values.len())));
    }
    let deriv = discrete_derivative(values, i as usize)?;
    let target = BigInt::from(2).pow(i);
    let points: Vec<(i64, BigRational)> =
        values.iter().enumerate().map(|(s, v)| (s as i64, BigRational::from_integer(v.clone()))).collect();
    let poly = interpolate("s", &points)?;
    let degree = poly.degree_in(0);
    let leading = degree.map(|d| poly.coeff(&[d]));
    let fact: BigInt = (1..=i as u64).fold(BigInt::one(), |a, k| a * BigInt::from(k));
    let expected = BigRational::new(BigInt::from(-2).pow(i), fact);
    let passed = deriv.iter().all(|d| *d == target) && degree == Some(i) && leading.as_ref() == Some(&expected);
    Ok(SPolynomialReport {
        i,
        values: values.iter().map(ToString::to_string).collect(),
        derivative: deriv.iter().map(ToString::to_string).collect(),
        degree,
        leading_coefficient: leading.map(|c| c.to_string()),
        expected_leading: expected.to_string(),
        passed,
    })
}
