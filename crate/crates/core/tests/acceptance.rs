//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact; the only tolerances are the wall-clock budgets below.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail. The process
//! exits non-zero if any other criterion fails or a known failure passes.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use floordiag_core::coeff::{coeff_closed_form, in_stable_range};
use floordiag_core::diagram::enumerate_floor_diagrams;
use floordiag_core::identities;
use floordiag_core::marking::{enumerate_markings, mu_s};
use floordiag_core::polyfit::{check_s_polynomial, verify_polynomiality, GridBox};
use floordiag_core::templates::{
    compare_reconstruction, enumerate_capping_trees, enumerate_templates, template_census, verify_bijection,
};
use floordiag_core::{Engine, HTransversePolygon, LaurentPoly, Pairing};
use num_bigint::BigInt;

const KNOWN_FAILURES: &[&str] = &["C12"];

const BUDGET_C1: Duration = Duration::from_secs(1);
const BUDGET_C2: Duration = Duration::from_secs(10);
const BUDGET_C3: Duration = Duration::from_secs(30);
const BUDGET_C6: Duration = Duration::from_secs(300);
const BUDGET_C8: Duration = Duration::from_secs(1);
const BUDGET_C12: Duration = Duration::from_secs(10);
const BUDGET_POLY: Duration = Duration::from_secs(600);

struct Outcome {
    id: &'static str,
    passed: bool,
}

fn run(id: &'static str, title: &'static str, budget: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, mut detail) = f();
    let elapsed = start.elapsed();
    let mut passed = ok;
    if let Some(b) = budget {
        if elapsed > b {
            passed = false;
            detail = format!("{detail}; over budget {:.1} s", b.as_secs_f64());
        }
    }
    let known = KNOWN_FAILURES.contains(&id);
    let status = match (passed, known) {
        (true, false) => "PASS",
        (false, true) => "FAIL (known)",
        (false, false) => "FAIL",
        (true, true) => "PASS (unexpected)",
    };
    println!("{status:<17} {id} {title} [{:.2} s] {detail}", elapsed.as_secs_f64());
    Outcome { id, passed }
}

fn poly(top: i64, c: &[i64]) -> LaurentPoly {
    LaurentPoly::from_descending(top, c)
}

fn abn(a: u64, b: u64, n: u64) -> HTransversePolygon {
    HTransversePolygon::abn(a, b, n).expect("valid polygon")
}

fn binom(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

fn c1(e: &Engine) -> (bool, String) {
    let p = HTransversePolygon::triangle(3).unwrap();
    let g1 = e.refined_invariant(&p, 1).unwrap();
    let g0 = e.refined_invariant(&p, 0).unwrap();
    (g1 == LaurentPoly::one() && g0 == poly(1, &[1, 10, 1]), format!("G(1) = {g1}, G(0) = {g0}"))
}

fn c2(e: &Engine) -> (bool, String) {
    let p = HTransversePolygon::triangle(4).unwrap();
    let expected = [
        poly(3, &[1, 13, 94, 404, 94, 13, 1]),
        poly(2, &[3, 33, 153, 33, 3]),
        poly(1, &[3, 21, 3]),
        LaurentPoly::one(),
    ];
    let mut bad = Vec::new();
    for (g, want) in expected.iter().enumerate() {
        let got = e.refined_invariant(&p, g as u64).unwrap();
        if &got != want {
            bad.push(format!("g={g}: {got}"));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "g = 0..3 exact".into() } else { bad.join("; ") })
}

fn c3(e: &Engine) -> (bool, String) {
    let p = HTransversePolygon::triangle(4).unwrap();
    let rows = [[13, 94, 404], [11, 70, 264], [9, 50, 164], [7, 34, 96], [5, 22, 52], [3, 14, 24]];
    let mut bad = Vec::new();
    for (s, [x, y, z]) in rows.into_iter().enumerate() {
        let got = e.refined_descendant(&p, s as u64).unwrap();
        if got != poly(3, &[1, x, y, z, y, x, 1]) {
            bad.push(format!("s={s}: {got}"));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "s = 0..5 exact".into() } else { bad.join("; ") })
}

fn c4(e: &Engine) -> (bool, String) {
    let p = HTransversePolygon::triangle(3).unwrap();
    let mut ok = true;
    for s in 0..=4 {
        ok &= e.refined_descendant(&p, s).unwrap() == poly(1, &[1, 10 - 2 * s as i64, 1]);
    }
    let pairings: Vec<Pairing> =
        std::iter::once(Pairing::empty()).chain((1..=4).map(|i| Pairing::top(i, 8).unwrap())).collect();
    let mut columns: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    let mut marked = 0;
    for d in enumerate_floor_diagrams(&p, 0) {
        for m in enumerate_markings(&d) {
            marked += 1;
            let col = pairings.iter().map(|s| mu_s(&d, &m, s).to_string()).collect();
            *columns.entry(col).or_default() += 1;
        }
    }
    let col = |v: [&LaurentPoly; 5]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    let (one, zero) = (LaurentPoly::one(), LaurentPoly::zero());
    let (sq, qq) = (poly(1, &[1, 2, 1]), poly(1, &[1, 0, 1]));
    let expected: BTreeMap<Vec<String>, usize> = [
        (col([&sq, &sq, &qq, &qq, &qq]), 1),
        (col([&one, &one, &one, &one, &one]), 2),
        (col([&one, &one, &one, &zero, &zero]), 2),
        (col([&one, &one, &one, &one, &zero]), 2),
        (col([&one, &zero, &zero, &zero, &zero]), 2),
    ]
    .into_iter()
    .collect();
    ok &= marked == 9 && columns == expected;
    (ok, format!("{marked} marked classes, {} distinct columns", columns.len()))
}

fn c5(e: &Engine) -> (bool, String) {
    let mut cases = 0;
    let mut bad = Vec::new();
    for (a, b, n) in [(3, 0, 1), (4, 0, 1), (2, 2, 1), (3, 2, 1), (2, 3, 0)] {
        let p = abn(a, b, n);
        let iota = p.interior_points();
        for g in 0..=iota {
            cases += 1;
            let top = e.top_coefficients(&p, g, &Pairing::empty(), 1).unwrap();
            if top[0] != binom(iota, g) {
                bad.push(format!("({a},{b},{n}) g={g}: {}", top[0]));
            }
        }
    }
    (
        bad.is_empty(),
        format!("{cases} cases{}", if bad.is_empty() { String::new() } else { format!(": {}", bad.join("; ")) }),
    )
}

/// `U_i` restricted to `an + 2b <= 14`; for `n = 0` the bound leaves `a`
/// free and `a <= 10` is used.
fn c6(e: &Engine) -> (bool, String) {
    let mut cases = 0;
    let mut bad = Vec::new();
    for i in 1..=2u64 {
        for n in 0..=6u64 {
            for b in (i + 1)..=7 {
                for a in (i + 1)..=10u64 {
                    if a * n + 2 * b > 14 {
                        continue;
                    }
                    let p = abn(a, b, n);
                    for s in 0..=(a * n + b) / 2 {
                        if !in_stable_range(i, a, b, n, s) {
                            continue;
                        }
                        cases += 1;
                        let top = e.top_coefficients(&p, 0, &Pairing::consecutive(s as usize), i + 1).unwrap();
                        let formula = coeff_closed_form(i, a, b, n, s).unwrap();
                        if formula != top[i as usize] {
                            bad.push(format!("i={i} ({a},{b},{n}) s={s}"));
                        }
                        if i == 1 && top[1] != BigInt::from(((n + 2) * a + 2 * b + 2) as i64 - 2 * s as i64) {
                            bad.push(format!("coef_1 ({a},{b},{n}) s={s}"));
                        }
                    }
                }
            }
        }
    }
    (
        bad.is_empty(),
        format!("{cases} points{}", if bad.is_empty() { String::new() } else { format!(": {}", bad.join("; ")) }),
    )
}

fn c7(e: &Engine) -> (bool, String) {
    let mut bad = Vec::new();
    let mut cases = 0;
    for d in 3..=5u64 {
        let p = HTransversePolygon::triangle(d).unwrap();
        for s in 0..=(d - 1) / 2 {
            cases += 1;
            let top = e.top_coefficients(&p, 0, &Pairing::consecutive(s as usize), 2).unwrap();
            if top[1] != BigInt::from(3 * d as i64 + 1 - 2 * s as i64) {
                bad.push(format!("d={d} s={s}: {}", top[1]));
            }
        }
    }
    let p = HTransversePolygon::triangle(4).unwrap();
    for s in 0..=5i64 {
        cases += 1;
        let t = 11 - 2 * s;
        let c3 = e.refined_descendant(&p, s as u64).unwrap().coeff(0);
        let quartic = (t * t * t + 3 * t * t + 59 * t + 81) / 6;
        let y = 12;
        let generic = (t * t * t + 6 * t * t + (3 * y + 35) * t + 6 * y + 72) / 6;
        if c3 != BigInt::from(quartic) || c3 == BigInt::from(generic) {
            bad.push(format!("d=4 coef_3 s={s}: {c3}"));
        }
    }
    (
        bad.is_empty(),
        format!("{cases} values{}", if bad.is_empty() { String::new() } else { format!(": {}", bad.join("; ")) }),
    )
}

fn c8(e: &Engine) -> (bool, String) {
    let mut parts = Vec::new();
    let mut ok = true;
    for (d, max_i) in [(4u64, 3u64), (3, 1)] {
        let p = HTransversePolygon::triangle(d).unwrap();
        let s_max = p.lattice_stats().s_max;
        let values: Vec<LaurentPoly> = (0..=s_max).map(|s| e.refined_descendant(&p, s).unwrap()).collect();
        for i in 0..=max_i {
            let column: Vec<BigInt> = values.iter().map(|v| v.codegree_coeff(i).unwrap()).collect();
            let r = check_s_polynomial(&column, i as u32).unwrap();
            ok &= r.passed;
            parts.push(format!("d={d} i={i}: {}", r.derivative.first().cloned().unwrap_or_default()));
        }
    }
    (ok, parts.join(", "))
}

fn c9(e: &Engine) -> (bool, String) {
    let mut ok = true;
    let mut count = 0;
    for (d, s_hi) in [(4u64, 4u64), (3, 2)] {
        let p = HTransversePolygon::triangle(d).unwrap();
        for s in 0..=s_hi {
            count += 1;
            ok &= e.verify_recursion(&p, s).unwrap().holds;
        }
    }
    (ok, format!("{count} instances"))
}

fn c10(e: &Engine) -> (bool, String) {
    let mut ok = true;
    let mut checked = 0;
    for (d, s) in [(3u64, 1u64), (3, 2), (4, 1)] {
        let r = e.verify_pairing_independence(&HTransversePolygon::triangle(d).unwrap(), s).unwrap();
        ok &= r.holds() && r.exhaustive;
        checked += r.pairings_checked;
    }
    (ok, format!("{checked} pairings, all exhaustive"))
}

fn c11(e: &Engine) -> (bool, String) {
    let mut ok = true;
    for p in [HTransversePolygon::triangle(3).unwrap(), HTransversePolygon::triangle(4).unwrap(), abn(2, 2, 1)] {
        let r = e.verify_monotonicity(&p).unwrap();
        ok &= r.holds() && r.values.iter().all(LaurentPoly::has_nonnegative_coeffs);
    }
    (ok, "Delta_3, Delta_4, Delta_{2,2,1}".into())
}

fn c12() -> (bool, String) {
    let census = template_census(1, 2);
    let expected = [((0, 0), 1), ((0, 1), 2), ((0, 2), 4), ((1, 0), 1), ((1, 1), 3), ((1, 2), 10)];
    let got: Vec<String> =
        expected.iter().map(|&(k, _)| format!("{k:?}:{}", census.get(&k).copied().unwrap_or(0))).collect();
    let ok = expected.iter().all(|(k, v)| census.get(k).copied().unwrap_or(0) == *v);
    (ok, format!("got {}", got.join(" ")))
}

fn c13() -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (a, b, n, g, i) in [(4, 3, 1, 0, 1), (4, 3, 1, 1, 1), (3, 2, 0, 0, 1)] {
        let r = verify_bijection(a, b, n, g, i).unwrap();
        ok &= r.passed;
        parts.push(format!("({a},{b},{n},{g},{i}) {}={}", r.enumerated, r.reconstructed_classes));
    }
    // b = i lies outside the guarded region; the comparison itself is run
    let r = compare_reconstruction(4, 2, 1, 0, 2).unwrap();
    ok &= r.passed;
    parts.push(format!("(4,2,1,0,2) unguarded {}={}", r.enumerated, r.reconstructed_classes));
    let templates = enumerate_templates(2, 3);
    ok &= templates.iter().all(|t| t.codegree() + t.genus() + 1 >= t.length() as u64);
    let mut trees = 0;
    for a in 3..=8 {
        for n in 1..=3u64 {
            for t in enumerate_capping_trees(a, n, i64::MAX) {
                trees += 1;
                ok &= t.codegree() >= n as i64 * (a as i64 - 2);
            }
        }
    }
    parts.push(format!("{} templates, {trees} capping trees bounded", templates.len()));
    (ok, parts.join(", "))
}

fn c14() -> (bool, String) {
    let checks = identities::suite(12);
    let ok = checks.iter().all(|c| c.holds());
    let cases: usize = checks.iter().map(|c| c.cases).sum();
    (ok, format!("{} families, {cases} cases", checks.len()))
}

fn polynomiality(e: &Engine, i: u64, g: u64, ranges: &[(i64, i64)], degrees: &[u32]) -> (bool, String) {
    let region = GridBox::new(&["a", "b", "n"], ranges);
    let f = |p: &[i64]| {
        let poly = HTransversePolygon::abn(p[0] as u64, p[1] as u64, p[2] as u64)?;
        Ok(e.top_coefficients(&poly, g, &Pairing::empty(), i + 1)?[i as usize].clone())
    };
    let r = verify_polynomiality(f, &region, degrees).unwrap();
    let degs: Vec<String> = r.fitted_degrees.iter().map(|d| d.unwrap_or(0).to_string()).collect();
    (
        r.passed,
        format!(
            "{} fit + {} held out, degrees ({}), {} mismatches",
            r.fit_points,
            r.held_out_points,
            degs.join(","),
            r.mismatches.len()
        ),
    )
}

fn main() -> ExitCode {
    let shared = Engine::new();
    let outcomes = vec![
        run("C01", "cubic invariants", Some(BUDGET_C1), || c1(&Engine::new())),
        run("C02", "quartic invariants by genus", Some(BUDGET_C2), || c2(&Engine::new())),
        run("C03", "quartic descendant table", Some(BUDGET_C3), || c3(&shared)),
        run("C04", "cubic descendants and marked table", None, || c4(&Engine::new())),
        run("C05", "codegree-0 coefficient is binomial", None, || c5(&Engine::new())),
        run("C06", "closed form against enumeration on U_1, U_2", Some(BUDGET_C6), || c6(&Engine::new())),
        run("C07", "codegree-1 on triangles, quartic codegree-3 exception", None, || c7(&shared)),
        run("C08", "discrete derivatives in s", Some(BUDGET_C8), || c8(&shared)),
        run("C09", "chop-top recursion", None, || c9(&shared)),
        run("C10", "pairing independence", None, || c10(&shared)),
        run("C11", "monotonicity in s", None, || c11(&shared)),
        run("C12", "template census (0,0):1 (0,1):2 (0,2):4 (1,0):1 (1,1):3 (1,2):10", Some(BUDGET_C12), c12),
        run("C13", "template bijection and codegree bounds", None, c13),
        run("C14", "quantum integer identities up to 12", None, c14),
        run("P01", "polynomiality i=0 g=1", Some(BUDGET_POLY), || {
            polynomiality(&Engine::new(), 0, 1, &[(4, 12), (1, 8), (1, 6)], &[2, 1, 1])
        }),
        run("P10", "polynomiality i=1 g=0", Some(BUDGET_POLY), || {
            polynomiality(&Engine::new(), 1, 0, &[(3, 14), (2, 10), (1, 8)], &[1, 1, 1])
        }),
        run("P02", "polynomiality i=0 g=2", Some(BUDGET_POLY), || {
            polynomiality(&Engine::new(), 0, 2, &[(6, 12), (2, 5), (1, 4)], &[4, 2, 2])
        }),
    ];

    let unexpected = outcomes.iter().filter(|o| o.passed == KNOWN_FAILURES.contains(&o.id)).count();
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria pass, {unexpected} unexpected outcomes", outcomes.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
