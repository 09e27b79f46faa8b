//! Verification suites compared against golden JSON files.
//!
//! Each suite computes a list of named cases whose values are JSON; the
//! golden file stores the same list. Polynomials use the doubled-exponent map
//! of the library serialisation.

use std::collections::BTreeMap;

use anyhow::{Context, Result};
use floordiag_core::diagram::enumerate_floor_diagrams;
use floordiag_core::marking::{enumerate_markings, mu_s};
use floordiag_core::polyfit::check_s_polynomial;
use floordiag_core::templates::{compare_reconstruction, verify_bijection};
use floordiag_core::{identities, HTransversePolygon, LaurentPoly, Pairing};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::render::{self, Format};
use crate::{usage, Ctx, Outcome};

#[derive(Serialize, Deserialize)]
struct Golden {
    suite: String,
    cases: Vec<Case>,
}

#[derive(Serialize, Deserialize)]
struct Case {
    name: String,
    value: Value,
}

pub const SUITES: &[&str] = &["examples", "identities", "monotonicity", "recursion", "bijection", "s-polynomiality"];

/// Alternative names accepted on the command line.
const ALIASES: &[(&str, &str)] = &[("paper-examples", "examples"), ("theorem-1-7", "s-polynomiality")];

fn canonical(name: &str) -> Option<&'static str> {
    let name = ALIASES.iter().find(|(alias, _)| *alias == name).map_or(name, |(_, suite)| suite);
    SUITES.iter().copied().find(|s| *s == name)
}

fn golden(suite: &str) -> &'static str {
    match suite {
        "examples" => include_str!("../golden/examples.json"),
        "identities" => include_str!("../golden/identities.json"),
        "monotonicity" => include_str!("../golden/monotonicity.json"),
        "recursion" => include_str!("../golden/recursion.json"),
        "bijection" => include_str!("../golden/bijection.json"),
        "s-polynomiality" => include_str!("../golden/s_polynomiality.json"),
        _ => unreachable!("suite names are checked before lookup"),
    }
}

fn poly(p: &LaurentPoly) -> Value {
    serde_json::to_value(p).expect("polynomials serialise")
}

fn triangle(d: u64) -> HTransversePolygon {
    HTransversePolygon::triangle(d).expect("valid degree")
}

fn compute(ctx: &Ctx, suite: &str) -> Result<Vec<Case>> {
    let case = |name: String, value: Value| Case { name, value };
    let e = &ctx.engine;
    let mut out = Vec::new();
    match suite {
        "examples" => {
            for (d, g) in [(3, 0), (3, 1), (4, 0), (4, 1), (4, 2), (4, 3)] {
                let p = triangle(d);
                out.push(case(format!("G({p}; g={g})"), poly(&e.refined_invariant(&p, g)?)));
            }
            for (d, s_hi) in [(3, 4), (4, 5)] {
                let p = triangle(d);
                for s in 0..=s_hi {
                    out.push(case(format!("G({p}; 0; s={s})"), poly(&e.refined_descendant(&p, s)?)));
                }
            }
            out.push(case("marked multiplicities of the cubic".into(), cubic_table()?));
        }
        "identities" => {
            for c in identities::suite(12) {
                let value = json!({"statement": c.statement, "cases": c.cases, "failures": c.failures});
                out.push(case(c.name.to_string(), value));
            }
        }
        "monotonicity" => {
            let polygons = [triangle(3), triangle(4), HTransversePolygon::abn(2, 2, 1)?];
            for p in polygons {
                let r = e.verify_monotonicity(&p)?;
                let nonneg = r.values.iter().all(LaurentPoly::has_nonnegative_coeffs);
                let values: Vec<Value> = r.values.iter().map(poly).collect();
                let value = json!({"values": values, "failures": r.failures, "nonnegative": nonneg});
                out.push(case(p.to_string(), value));
            }
        }
        "recursion" => {
            for (d, s_hi) in [(3, 2), (4, 4)] {
                let p = triangle(d);
                for s in 0..=s_hi {
                    let r = e.verify_recursion(&p, s)?;
                    let value = json!({"chopped": r.chopped, "lhs": poly(&r.lhs), "holds": r.holds});
                    out.push(case(format!("{p} s={s}"), value));
                }
            }
        }
        "bijection" => {
            for (a, b, n, g, i) in [(4, 3, 1, 0, 1), (4, 3, 1, 1, 1), (3, 2, 0, 0, 1), (4, 2, 1, 0, 2), (5, 3, 1, 1, 2)]
            {
                let guarded = verify_bijection(a, b, n, g, i).is_ok();
                let r = compare_reconstruction(a, b, n, g, i)?;
                let value = json!({
                    "in_region": guarded,
                    "enumerated": r.enumerated,
                    "reconstructed_classes": r.reconstructed_classes,
                    "missing": r.missing.len(),
                    "extra": r.extra.len(),
                    "passed": r.passed,
                });
                out.push(case(format!("a={a} b={b} n={n} g={g} i={i}"), value));
            }
        }
        "s-polynomiality" => {
            for (d, max_i) in [(3, 1), (4, 3)] {
                let p = triangle(d);
                let s_max = p.lattice_stats().s_max;
                let values: Vec<LaurentPoly> =
                    (0..=s_max).map(|s| e.refined_descendant(&p, s)).collect::<Result<_, _>>()?;
                for i in 0..=max_i {
                    let column: Vec<BigInt> = values.iter().map(|v| v.codegree_coeff(i)).collect::<Result<_, _>>()?;
                    let r = check_s_polynomial(&column, i as u32)?;
                    let value = json!({
                        "values": r.values,
                        "derivative": r.derivative,
                        "leading_coefficient": r.leading_coefficient,
                        "passed": r.passed,
                    });
                    out.push(case(format!("{p} i={i}"), value));
                }
            }
        }
        _ => unreachable!("suite names are checked before computing"),
    }
    Ok(out)
}

/// The refined multiplicities of each marked cubic diagram under the empty
/// pairing and the top `1..4` pairs of its nine positions, grouped by column.
fn cubic_table() -> Result<Value> {
    let p = triangle(3);
    let pairings: Vec<Pairing> =
        std::iter::once(Ok(Pairing::empty())).chain((1..=4).map(|i| Pairing::top(i, 8))).collect::<Result<_, _>>()?;
    let mut columns: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    for d in enumerate_floor_diagrams(&p, 0) {
        for m in enumerate_markings(&d) {
            let col = pairings.iter().map(|s| mu_s(&d, &m, s).to_string()).collect();
            *columns.entry(col).or_default() += 1;
        }
    }
    let rows: Vec<Value> = columns.into_iter().map(|(c, n)| json!({"columns": c, "count": n})).collect();
    let labels: Vec<String> = pairings.iter().map(Pairing::to_string).collect();
    Ok(json!({"pairings": labels, "rows": rows}))
}

pub fn run(ctx: &Ctx, name: &str, emit: bool) -> Result<Outcome> {
    let suite = canonical(name)
        .ok_or_else(|| usage(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", "))))?;
    let cases = compute(ctx, suite)?;
    if emit {
        let g = Golden { suite: suite.to_string(), cases };
        print!("{}", render::pretty(&serde_json::to_value(g)?));
        return Ok(Outcome::Ok);
    }
    let expected: Golden = serde_json::from_str(golden(suite)).with_context(|| format!("golden file of {suite}"))?;
    let actual: BTreeMap<&str, &Value> = cases.iter().map(|c| (c.name.as_str(), &c.value)).collect();
    let mut results = Vec::new();
    for c in &expected.cases {
        let got = actual.get(c.name.as_str()).copied();
        results.push((c.name.clone(), got == Some(&c.value), c.value.clone(), got.cloned()));
    }
    for c in &cases {
        if !expected.cases.iter().any(|x| x.name == c.name) {
            results.push((c.name.clone(), false, Value::Null, Some(c.value.clone())));
        }
    }
    let failed = results.iter().filter(|r| !r.1).count();
    match ctx.format {
        Format::Json => {
            let v: Vec<Value> = results
                .iter()
                .map(|(n, ok, exp, got)| {
                    let mut o = json!({"case": n, "passed": ok});
                    if !ok {
                        o["expected"] = exp.clone();
                        o["actual"] = got.clone().unwrap_or(Value::Null);
                    }
                    o
                })
                .collect();
            print!("{}", render::pretty(&json!({"suite": suite, "passed": failed == 0, "cases": v})));
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|(n, ok, _, _)| vec![format!("\"{n}\""), if *ok { "pass" } else { "fail" }.into()])
                .collect();
            print!("{}", render::csv(&["case", "status"], &rows));
        }
        Format::Text => {
            for (n, ok, exp, got) in &results {
                if *ok {
                    println!("ok    {n}");
                } else {
                    println!("FAIL  {n}");
                    println!("  expected: {exp}");
                    println!("  actual:   {}", got.as_ref().map_or("missing".to_string(), Value::to_string));
                }
            }
            println!("{suite}: {} of {} cases pass", results.len() - failed, results.len());
        }
    }
    Ok(if failed == 0 { Outcome::Ok } else { Outcome::Failed })
}
