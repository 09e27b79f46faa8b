use std::collections::BTreeMap;

use floordiag_core::diagram::{enumerate_floor_diagrams, enumerate_up_to_codegree};
use floordiag_core::marking::{count_compatible_markings, count_markings, enumerate_markings, mu_s};
use floordiag_core::{Engine, HTransversePolygon, LaurentPoly, Pairing};
use num_bigint::BigInt;

fn poly(top: i64, c: &[i64]) -> LaurentPoly {
    LaurentPoly::from_descending(top, c)
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

#[test]
fn cubic_invariants() {
    let e = Engine::new();
    let p = HTransversePolygon::triangle(3).unwrap();
    assert_eq!(e.refined_invariant(&p, 1).unwrap(), LaurentPoly::one());
    assert_eq!(e.refined_invariant(&p, 0).unwrap(), poly(1, &[1, 10, 1]));
    for s in 0..=4 {
        assert_eq!(e.refined_descendant(&p, s).unwrap(), poly(1, &[1, 10 - 2 * s as i64, 1]));
    }
}

#[test]
fn quartic_invariants() {
    let e = Engine::new();
    let p = HTransversePolygon::triangle(4).unwrap();
    assert_eq!(e.refined_invariant(&p, 3).unwrap(), LaurentPoly::one());
    assert_eq!(e.refined_invariant(&p, 2).unwrap(), poly(1, &[3, 21, 3]));
    assert_eq!(e.refined_invariant(&p, 1).unwrap(), poly(2, &[3, 33, 153, 33, 3]));
    assert_eq!(e.refined_invariant(&p, 0).unwrap(), poly(3, &[1, 13, 94, 404, 94, 13, 1]));
    let rows = [[13, 94, 404], [11, 70, 264], [9, 50, 164], [7, 34, 96], [5, 22, 52], [3, 14, 24]];
    for (s, [c1, c2, c3]) in rows.into_iter().enumerate() {
        let expected = poly(3, &[1, c1, c2, c3, c2, c1, 1]);
        assert_eq!(e.refined_descendant(&p, s as u64).unwrap(), expected, "s={s}");
    }
}

/// Column entries `(mu, mu_S1, .., mu_S4)` with `S_i` the top `i` pairs of
/// the nine boundary points.
#[test]
fn cubic_table_columns() {
    let p = HTransversePolygon::triangle(3).unwrap();
    let pairings: Vec<Pairing> =
        std::iter::once(Pairing::empty()).chain((1..=4).map(|i| Pairing::top(i, 8).unwrap())).collect();
    let mut columns: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    let mut marked = 0;
    for d in enumerate_floor_diagrams(&p, 0) {
        for m in enumerate_markings(&d) {
            marked += 1;
            let col: Vec<String> = pairings.iter().map(|s| mu_s(&d, &m, s).to_string()).collect();
            *columns.entry(col).or_default() += 1;
        }
    }
    assert_eq!(marked, 9);
    let one = || LaurentPoly::one().to_string();
    let zero = || LaurentPoly::zero().to_string();
    let square2 = poly(1, &[1, 2, 1]).to_string();
    let q_plus_inv = poly(1, &[1, 0, 1]).to_string();
    let mut expected: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    expected.insert(vec![square2.clone(), square2, q_plus_inv.clone(), q_plus_inv.clone(), q_plus_inv], 1);
    expected.insert(vec![one(), one(), one(), one(), one()], 2);
    expected.insert(vec![one(), one(), one(), zero(), zero()], 2);
    expected.insert(vec![one(), one(), one(), one(), zero()], 2);
    expected.insert(vec![one(), zero(), zero(), zero(), zero()], 2);
    assert_eq!(columns, expected);
}

#[test]
fn pairings_follow_the_top_convention() {
    assert_eq!(Pairing::top(2, 8).unwrap().pairs(), vec![(5, 6), (7, 8)]);
    assert_eq!("pairs:5-6,7-8".parse::<Pairing>().unwrap(), Pairing::top(2, 8).unwrap());
}

#[test]
fn codegree_zero_coefficient_is_binomial() {
    let e = Engine::new();
    for (a, b, n) in [(3, 0, 1), (4, 0, 1), (2, 2, 1), (3, 2, 1), (2, 3, 0)] {
        let p = HTransversePolygon::abn(a, b, n).unwrap();
        let iota = p.interior_points();
        for g in 0..=iota {
            let top = e.top_coefficients(&p, g, &Pairing::empty(), 1).unwrap();
            assert_eq!(top[0], binom(iota, g), "Delta_{{{a},{b},{n}}} g={g}");
        }
    }
}

#[test]
fn codegree_zero_diagrams_of_an_irregular_polygon() {
    let p: HTransversePolygon = "ht:dl=[-2,0,1,1];dr=[2,0,0,-1];db=2;dt=1".parse().unwrap();
    assert_eq!(p.interior_points(), 11);
    let g0 = enumerate_up_to_codegree(&p, 0, Some(0));
    assert_eq!(g0.len(), 1);
    assert_eq!(count_markings(&g0[0]), 1u32.into());
    let g1 = enumerate_up_to_codegree(&p, 1, Some(0));
    let mut counts: Vec<u64> = g1.iter().map(|d| count_markings(d).try_into().unwrap()).collect();
    counts.sort_unstable();
    assert_eq!(counts, vec![1, 2, 2, 2, 2, 2]);
}

/// `codeg(D) >= (k-1)(#sources - n k / 2)` for `k` minimal floors.
#[test]
fn minimal_floor_bound() {
    let mut checked = 0;
    for (a, b, n) in [(3, 0, 1), (4, 0, 1), (3, 2, 1), (4, 2, 1), (3, 3, 0), (3, 1, 2)] {
        let p = HTransversePolygon::abn(a, b, n).unwrap();
        for g in 0..=p.interior_points().min(2) {
            for d in enumerate_floor_diagrams(&p, g) {
                let k = (0..d.floor_count()).filter(|&v| d.elevators().iter().all(|e| e.to != v)).count() as i64;
                let bound = (k - 1) * (2 * d.source_count() as i64 - n as i64 * k);
                assert!(2 * d.codegree(&p) >= bound, "{d}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn compatible_marking_counts_shrink_with_pairings() {
    let p = HTransversePolygon::triangle(4).unwrap();
    for d in enumerate_floor_diagrams(&p, 0) {
        let mut last = count_markings(&d);
        for s in 1..=5 {
            let c = count_compatible_markings(&d, &Pairing::consecutive(s)).unwrap();
            assert!(c <= last);
            last = c;
        }
    }
}
