//! Identities and inequalities between quantum integers, checked exactly on a
//! finite range.

use serde::Serialize;

use crate::laurent::{quantum_integer, LaurentPoly};

/// One family of identities checked for all parameters up to a bound.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub statement: &'static str,
    pub cases: usize,
    /// Parameters `(k, l)` where the identity fails.
    pub failures: Vec<(i64, i64)>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn q(k: i64) -> LaurentPoly {
    quantum_integer(k).expect("positive argument")
}

/// `[k][k+l] = [2k+l-1] + [2k+l-3] + .. + [l+1]` for `1 <= k <= bound`,
/// `0 <= l <= bound`.
pub fn product_expansion(bound: i64) -> IdentityCheck {
    let mut failures = Vec::new();
    let mut cases = 0;
    for k in 1..=bound {
        for l in 0..=bound {
            cases += 1;
            let lhs = &q(k) * &q(k + l);
            let rhs: LaurentPoly = (0..k).map(|c| q(2 * k + l - 1 - 2 * c)).sum();
            if lhs != rhs {
                failures.push((k, l));
            }
        }
    }
    IdentityCheck { name: "product-expansion", statement: "[k][k+l] = sum_c [2k+l-1-2c]", cases, failures }
}

/// `[k][k+l-1] = [k-1][k+l] + [l]` for `1 <= k, l <= bound`.
pub fn shifted_product(bound: i64) -> IdentityCheck {
    shifted_product_with(bound, false)
}

/// The same identity with `[k]` in place of `[l]` on the right; it only holds
/// when `k = l`.
pub fn shifted_product_printed(bound: i64) -> IdentityCheck {
    shifted_product_with(bound, true)
}

fn shifted_product_with(bound: i64, use_k: bool) -> IdentityCheck {
    let mut failures = Vec::new();
    let mut cases = 0;
    for k in 1..=bound {
        for l in 1..=bound {
            cases += 1;
            let lhs = &q(k) * &q(k + l - 1);
            let prev = if k == 1 { LaurentPoly::zero() } else { &q(k - 1) * &q(k + l) };
            let rhs = prev + q(if use_k { k } else { l });
            if lhs != rhs {
                failures.push((k, l));
            }
        }
    }
    let statement = if use_k { "[k][k+l-1] = [k-1][k+l] + [k]" } else { "[k][k+l-1] = [k-1][k+l] + [l]" };
    IdentityCheck {
        name: if use_k { "shifted-product-printed" } else { "shifted-product" },
        statement,
        cases,
        failures,
    }
}

/// `[2k]/[2] (q) = [k](q^2)` and `[2k-1] >= [2k]/[2]` for `1 <= k <= bound`.
pub fn halving(bound: i64) -> IdentityCheck {
    let mut failures = Vec::new();
    let two = q(2);
    for k in 1..=bound {
        let ok = match q(2 * k).divide_exact(&two) {
            Ok(h) => h == q(k).substitute_q_squared() && q(2 * k - 1).poly_geq(&h),
            Err(_) => false,
        };
        if !ok {
            failures.push((k, 0));
        }
    }
    IdentityCheck {
        name: "halving",
        statement: "[2k]/[2](q) = [k](q^2) and [2k-1] >= [2k]/[2]",
        cases: bound as usize,
        failures,
    }
}

/// `[k]^2 [l]^2 >= [k][l][k+l]/[2]` for `1 <= k, l <= bound`, the quotient
/// being exact.
pub fn square_bound(bound: i64) -> IdentityCheck {
    let mut failures = Vec::new();
    let mut cases = 0;
    let two = q(2);
    for k in 1..=bound {
        for l in 1..=bound {
            cases += 1;
            let lhs = &(&q(k) * &q(k)) * &(&q(l) * &q(l));
            let ok = match (&(&q(k) * &q(l)) * &q(k + l)).divide_exact(&two) {
                Ok(rhs) => lhs.poly_geq(&rhs),
                Err(_) => false,
            };
            if !ok {
                failures.push((k, l));
            }
        }
    }
    IdentityCheck { name: "square-bound", statement: "[k]^2[l]^2 >= [k][l][k+l]/[2]", cases, failures }
}

/// All identities that are expected to hold.
pub fn suite(bound: i64) -> Vec<IdentityCheck> {
    vec![product_expansion(bound), shifted_product(bound), halving(bound), square_bound(bound)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_holds_to_twelve() {
        for check in suite(12) {
            assert!(check.holds(), "{} fails at {:?}", check.name, check.failures);
        }
    }

    #[test]
    fn printed_variant_only_on_the_diagonal() {
        let c = shifted_product_printed(6);
        assert_eq!(c.failures.len(), 36 - 6);
        assert!(c.failures.iter().all(|(k, l)| k != l));
    }
}
