//! Laurent polynomials in `q^{1/2}` with arbitrary-precision integer
//! coefficients.
//!
//! Exponents are stored doubled: the term `c * q^{e}` is kept under the key
//! `2e`, so half-integer exponents stay exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exponent of `q`, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub i64);

impl Exponent {
    pub fn from_integer(e: i64) -> Self {
        Exponent(2 * e)
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c * q^{exp2/2}`.
    pub fn monomial(exp2: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp2, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Builds `sum c_k q^{top - k}` from integer exponents listed downward.
    pub fn from_descending(top: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (2 * (top - k as i64), c)))
    }

    pub fn add_term(&mut self, exp2: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp2).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp2);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^{exp2/2}`.
    pub fn coeff(&self, exp2: i64) -> BigInt {
        self.terms.get(&exp2).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn degree(&self) -> Option<Exponent> {
        self.terms.keys().next_back().map(|&e| Exponent(e))
    }

    pub fn low_degree(&self) -> Option<Exponent> {
        self.terms.keys().next().map(|&e| Exponent(e))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Coefficient of codegree `i`, i.e. of `q^{deg - i}`.
    pub fn codegree_coeff(&self, i: u64) -> Result<BigInt> {
        let top = self.degree().ok_or_else(|| Error::Domain("codegree of the zero polynomial".into()))?;
        Ok(self.coeff(top.0 - 2 * i as i64))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Multiplies by `q^{exp2/2}`.
    pub fn shift(&self, exp2: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + exp2, c.clone())).collect() }
    }

    /// Divides every coefficient by `d`, failing unless all divisions are exact.
    pub fn div_integer_exact(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (quo, rem) = c.div_rem(d);
            if !rem.is_zero() {
                return Err(Error::InexactDivision(format!("{c} is not divisible by {d}")));
            }
            terms.insert(*e, quo);
        }
        Ok(LaurentPoly { terms })
    }

    /// Exact division `self / d`; fails when `d` does not divide `self`.
    pub fn divide_exact(&self, d: &LaurentPoly) -> Result<Self> {
        let (d_top, d_lead) = match d.terms.iter().next_back() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let d_low = *d.terms.keys().next().unwrap();
        let Some(p_low) = self.terms.keys().next().copied() else {
            return Ok(Self::zero());
        };
        let floor = p_low - d_low;
        let mut rem = self.clone();
        let mut quotient = Self::zero();
        while let Some((&r_top, r_lead)) = rem.terms.iter().next_back() {
            let t = r_top - d_top;
            let (c, r) = r_lead.div_rem(&d_lead);
            if t < floor || !r.is_zero() {
                return Err(Error::InexactDivision(format!("({self}) / ({d})")));
            }
            let step = Self::monomial(t, c);
            rem -= &(&step * d);
            quotient += &step;
        }
        Ok(quotient)
    }

    /// `P(q) -> P(q^2)`.
    pub fn substitute_q_squared(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (2 * e, c.clone())).collect() }
    }

    /// Coefficientwise comparison `self >= other`.
    pub fn poly_geq(&self, other: &LaurentPoly) -> bool {
        (self - other).terms.values().all(|c| !c.is_negative())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Invariance under `q -> q^{-1}`.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// The quantum integer `[k] = (q^{k/2} - q^{-k/2}) / (q^{1/2} - q^{-1/2})`.
pub fn quantum_integer(k: i64) -> Result<LaurentPoly> {
    if k < 1 {
        return Err(Error::Domain(format!("quantum integer [{k}] needs k >= 1")));
    }
    Ok(LaurentPoly::from_terms((0..k).map(|j| (k - 1 - 2 * j, BigInt::one()))))
}

/// `[k]^2`, the contribution of an edge of weight `k`.
pub fn quantum_square(k: i64) -> Result<LaurentPoly> {
    let a = quantum_integer(k)?;
    Ok(&a * &a)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let var = match *e {
                0 => String::new(),
                2 => "q".to_string(),
                e if e % 2 == 0 => format!("q^{}", e / 2),
                e => format!("q^({e}/2)"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            let key = e.to_string();
            match c.to_i64() {
                Some(v) => map.serialize_entry(&key, &v)?,
                None => map.serialize_entry(&key, &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from doubled exponents to integer coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<LaurentPoly, A::Error> {
                let mut p = LaurentPoly::zero();
                while let Some((key, value)) = access.next_entry::<String, serde_json::Value>()? {
                    let e: i64 = key.parse().map_err(|_| de::Error::custom(format!("bad exponent key {key:?}")))?;
                    let c: BigInt = match &value {
                        serde_json::Value::Number(n) => {
                            n.to_string().parse().map_err(|_| de::Error::custom(format!("bad coefficient {n}")))?
                        }
                        serde_json::Value::String(s) => {
                            s.parse().map_err(|_| de::Error::custom(format!("bad coefficient {s:?}")))?
                        }
                        other => return Err(de::Error::custom(format!("bad coefficient {other}"))),
                    };
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(k: i64) -> LaurentPoly {
        quantum_integer(k).unwrap()
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(q(1), LaurentPoly::one());
        assert_eq!(q(3).to_string(), "q + 1 + q^-1");
        assert_eq!(q(2).to_string(), "q^(1/2) + q^(-1/2)");
        assert!(matches!(quantum_integer(0), Err(Error::Domain(_))));
        assert!(matches!(quantum_integer(-2), Err(Error::Domain(_))));
    }

    #[test]
    fn square_of_three() {
        let p = quantum_square(3).unwrap();
        assert_eq!(p, LaurentPoly::from_descending(2, &[1, 2, 3, 2, 1]));
        assert_eq!(p.to_string(), "q^2 + 2*q + 3 + 2*q^-1 + q^-2");
    }

    #[test]
    fn exact_division() {
        let p = &q(4) * &q(2);
        assert_eq!(p.divide_exact(&q(2)).unwrap(), q(4));
        assert!(matches!(q(3).divide_exact(&q(2)), Err(Error::InexactDivision(_))));
        assert!(matches!(q(3).divide_exact(&LaurentPoly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn q_squared_substitution() {
        // [4]/[2] = [2](q^2)
        let lhs = q(4).divide_exact(&q(2)).unwrap();
        assert_eq!(lhs, q(2).substitute_q_squared());
    }

    #[test]
    fn codegree_coefficients() {
        let p = LaurentPoly::from_descending(3, &[1, 13, 94, 404, 94, 13, 1]);
        assert_eq!(p.codegree_coeff(0).unwrap(), BigInt::from(1));
        assert_eq!(p.codegree_coeff(3).unwrap(), BigInt::from(404));
        assert_eq!(p.codegree_coeff(9).unwrap(), BigInt::zero());
        assert!(LaurentPoly::zero().codegree_coeff(0).is_err());
    }

    #[test]
    fn negative_rendering() {
        let p = LaurentPoly::from_terms([(2, -1), (0, 3), (-4, -2)]);
        assert_eq!(p.to_string(), "-q + 3 - 2*q^-2");
    }

    #[test]
    fn json_round_trip() {
        let p = LaurentPoly::from_descending(1, &[1, 10, 1]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"2":1,"0":10,"-2":1}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let huge = LaurentPoly::monomial(0, BigInt::from(u64::MAX) * 7);
        let s = serde_json::to_string(&huge).unwrap();
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), huge);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-8i64..8, -20i64..20), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.divide_exact(&b).unwrap(), a);
        }

        #[test]
        fn substitution_is_multiplicative(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(
                (&a * &b).substitute_q_squared(),
                &a.substitute_q_squared() * &b.substitute_q_squared()
            );
        }
    }
}
