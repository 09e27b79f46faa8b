//! Closed formulas for the top coefficients of `G_{Delta_{a,b,n}}(0; s)`.
//!
//! In the stable range, every diagram of codegree at most `i` is a chain
//! `D_{a,b,n,u,ũ}`: `u_j` sources are lifted to the floor `v_{j+1}` and `ũ_j`
//! sinks lowered to `v_{a-j}`. The coefficient of codegree `i` is then a sum
//! of marking counts `nu` times coefficients `Phi` of products of squares of
//! quantum integers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagram::{Elevator, Floor, FloorDiagram};
use crate::error::{Error, Result};
use crate::laurent::{quantum_square, LaurentPoly};

/// `C(n, k)`, zero unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `F(k, l)`: sum over compositions of `l` into `k` positive parts of the
/// product of the parts, by direct enumeration.
pub fn f_brute(k: u64, l: u64) -> BigInt {
    fn rec(k: u64, l: u64) -> BigInt {
        if k == 0 {
            return if l == 0 { BigInt::one() } else { BigInt::zero() };
        }
        let mut acc = BigInt::zero();
        for first in 1..=l {
            if l - first >= k - 1 {
                acc += BigInt::from(first) * rec(k - 1, l - first);
            }
        }
        acc
    }
    rec(k, l)
}

/// `F(k, l)` by the recurrence on the first part, memoised.
pub fn f_recurrence(k: u64, l: u64) -> BigInt {
    static MEMO: OnceLock<Mutex<HashMap<(u64, u64), BigInt>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    fn go(k: u64, l: u64, memo: &Mutex<HashMap<(u64, u64), BigInt>>) -> BigInt {
        if k == 0 {
            return if l == 0 { BigInt::one() } else { BigInt::zero() };
        }
        if l < k {
            return BigInt::zero();
        }
        if let Some(v) = memo.lock().unwrap().get(&(k, l)) {
            return v.clone();
        }
        let mut acc = BigInt::zero();
        for first in 1..=l - k + 1 {
            acc += BigInt::from(first) * go(k - 1, l - first, memo);
        }
        memo.lock().unwrap().insert((k, l), acc.clone());
        acc
    }
    go(k, l, memo)
}

/// `F(k, l)`, enumerating compositions for small `l`.
pub fn f(k: u64, l: u64) -> BigInt {
    if l <= 10 {
        f_brute(k, l)
    } else {
        f_recurrence(k, l)
    }
}

/// `Phi_l(k) = F(k, k + l)`: the coefficient of codegree `l` of a product of
/// `k` squared quantum integers `[a_j]^2` with every `a_j > l`.
pub fn phi(l: u64, k: u64) -> BigInt {
    f(k, k + l)
}

/// Coefficient of codegree `i` of `prod [a_j]^2`. Uses `Phi_i` when all
/// weights exceed `i`, and expands the product otherwise.
pub fn coeff_product_of_squares(i: u64, weights: &[u64]) -> BigInt {
    if weights.iter().all(|&a| a > i) {
        return phi(i, weights.len() as u64);
    }
    let prod = weights
        .iter()
        .map(|&a| quantum_square(a as i64).expect("weights are positive"))
        .fold(LaurentPoly::one(), |acc, p| &acc * &p);
    prod.codegree_coeff(i).expect("a product of squares is nonzero")
}

/// `sum_j j * (u_j + ũ_j)`.
pub fn codegree_of(u: &[u64], u_tilde: &[u64]) -> u64 {
    weighted(u) + weighted(u_tilde)
}

fn weighted(u: &[u64]) -> u64 {
    u.iter().enumerate().map(|(j, &x)| (j as u64 + 1) * x).sum()
}

/// All pairs `(u, ũ)` of length-`i` vectors with codegree at most `i`.
pub fn enumerate_c_i(i: u64) -> Vec<(Vec<u64>, Vec<u64>)> {
    fn vectors(len: usize, budget: u64) -> Vec<(Vec<u64>, u64)> {
        let mut out = Vec::new();
        fn rec(j: usize, len: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<(Vec<u64>, u64)>, budget: u64) {
            if j == len {
                out.push((cur.clone(), budget - left));
                return;
            }
            let step = j as u64 + 1;
            for x in 0..=left / step {
                cur.push(x);
                rec(j + 1, len, left - x * step, cur, out, budget);
                cur.pop();
            }
        }
        rec(0, len, budget, &mut Vec::new(), &mut out, budget);
        out
    }
    let mut out = Vec::new();
    for (u, cu) in vectors(i as usize, i) {
        for (ut, _) in vectors(i as usize, i - cu) {
            out.push((u.clone(), ut));
        }
    }
    out
}

/// The chain diagram `D_{a,b,n,u,ũ}` with Newton polygon `Delta_{a,b,n}`.
pub fn build_d(a: u64, b: u64, n: u64, u: &[u64], u_tilde: &[u64]) -> Result<FloorDiagram> {
    if a == 0 {
        return Err(Error::Domain("a chain needs at least one floor".into()));
    }
    let a_us = a as usize;
    let mut floors: Vec<Floor> = (0..a_us).map(|_| Floor::new(0, n as i64, 0, 0)).collect();
    let total_src = a * n + b;
    let lifted: u64 = u.iter().sum();
    let lowered: u64 = u_tilde.iter().sum();
    if lifted > total_src || lowered > b {
        return Err(Error::Domain(format!("cannot move {lifted} sources and {lowered} sinks")));
    }
    for (j, &x) in u.iter().enumerate() {
        if x > 0 {
            let v = j + 1;
            if v >= a_us {
                return Err(Error::Domain(format!("u_{} needs floor v_{} but a = {a}", j + 1, j + 2)));
            }
            floors[v].sources += x as u32;
        }
    }
    for (j, &x) in u_tilde.iter().enumerate() {
        if x > 0 {
            let Some(v) = a_us.checked_sub(j + 2) else {
                return Err(Error::Domain(format!("ũ_{} needs floor v_{{a-{}}}", j + 1, j + 1)));
            };
            floors[v].sinks += x as u32;
        }
    }
    floors[0].sources += (total_src - lifted) as u32;
    floors[a_us - 1].sinks += (b - lowered) as u32;
    let mut elevators = Vec::new();
    let mut crossing = 0i64;
    for k in 0..a_us - 1 {
        crossing += floors[k].sources as i64 - floors[k].sinks as i64 - n as i64;
        if crossing < 1 {
            return Err(Error::Domain(format!("elevator above v_{} would have weight {crossing}", k + 1)));
        }
        elevators.push(Elevator::new(k, k + 1, crossing as u64));
    }
    FloorDiagram::new(floors, elevators)
}

/// `nũ_u(a, b, n, s)`: markings of the source side of a chain compatible with
/// the first `s` pairs.
pub fn nu_tilde(u: &[u64], a: u64, b: u64, n: u64, s: u64) -> BigInt {
    let i = u.len();
    let base = (a * n + b) as i64;
    let mut total = BigInt::zero();
    let mut parts = vec![0u64; i + 1];
    fn compositions(idx: usize, left: u64, parts: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
        if idx + 1 == parts.len() {
            parts[idx] = left;
            visit(parts);
            return;
        }
        for x in 0..=left {
            parts[idx] = x;
            compositions(idx + 1, left - x, parts, visit);
        }
    }
    let s_fact = factorial(s);
    compositions(0, s, &mut parts, &mut |sj: &[u64]| {
        let mut term = s_fact.clone();
        for x in sj {
            term /= factorial(*x);
        }
        let mut prefix = sj[0] as i64;
        for j in 1..=i {
            prefix += sj[j] as i64;
            let later: i64 = u[j..].iter().map(|&x| x as i64).sum();
            let top = base + 2 * j as i64 - 2 * prefix - later;
            let bottom = u[j - 1] as i64 - 2 * sj[j] as i64;
            term *= binomial(top, bottom);
            if term.is_zero() {
                return;
            }
        }
        total += term;
    });
    total
}

/// `nu_{u,ũ} = nũ_u(a, b, n, s) * nũ_ũ(0, b, 0, 0)`, the number of markings
/// of `D_{a,b,n,u,ũ}` compatible with the first `s` consecutive pairs.
/// Requires `b >= i` and `an + b >= i + 2s` where `i` is the length of `u`.
pub fn nu(a: u64, b: u64, n: u64, u: &[u64], u_tilde: &[u64], s: u64) -> Result<BigInt> {
    let i = u.len().max(u_tilde.len()) as u64;
    if b < i || a * n + b < i + 2 * s {
        return Err(Error::OutOfRegion(format!("nu needs b >= {i} and an + b >= {}", i + 2 * s)));
    }
    Ok(nu_unchecked(a, b, n, u, u_tilde, s))
}

/// The formula behind [`nu`] without the region check.
pub fn nu_unchecked(a: u64, b: u64, n: u64, u: &[u64], u_tilde: &[u64], s: u64) -> BigInt {
    nu_tilde(u, a, b, n, s) * nu_tilde(u_tilde, 0, b, 0, 0)
}

/// Whether `(a, b, n, s)` lies in the stable range for codegree `i`:
/// `an + b >= i + 2s`, `b > i` and `a > i`.
pub fn in_stable_range(i: u64, a: u64, b: u64, n: u64, s: u64) -> bool {
    a * n + b >= i + 2 * s && b > i && a > i
}

/// Coefficient of codegree `i` of `G_{Delta_{a,b,n}}(0; s)` from the closed
/// formula. Fails outside the stable range.
pub fn coeff_closed_form(i: u64, a: u64, b: u64, n: u64, s: u64) -> Result<BigInt> {
    if !in_stable_range(i, a, b, n, s) {
        return Err(Error::OutOfRegion(format!(
            "(a,b,n,s) = ({a},{b},{n},{s}) is outside the stable range for i = {i}"
        )));
    }
    Ok(coeff_closed_form_unchecked(i, a, b, n, s))
}

/// The closed formula evaluated anywhere with `a >= 1`, stable range or not.
pub fn coeff_closed_form_unchecked(i: u64, a: u64, b: u64, n: u64, s: u64) -> BigInt {
    let mut total = BigInt::zero();
    for (u, ut) in enumerate_c_i(i) {
        let c = weighted(&u) + weighted(&ut);
        total += nu_unchecked(a, b, n, &u, &ut, s) * phi(i - c, a.saturating_sub(1));
    }
    total
}

/// One row of a coefficient table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffRow {
    pub i: u64,
    pub a: u64,
    pub b: u64,
    pub n: u64,
    pub s: Option<u64>,
    pub value: String,
    pub source: &'static str,
}
