//! `coeffs` and `fit`: coefficient tables over parameter grids and their
//! polynomial fits.

use std::str::FromStr;

use anyhow::Result;
use clap::{Args, ValueEnum};
use floordiag_core::coeff::{coeff_closed_form, in_stable_range};
use floordiag_core::polyfit::{check_s_polynomial, verify_polynomiality, GridBox, PolynomialityReport};
use floordiag_core::{HTransversePolygon, Pairing};
use num_bigint::BigInt;
use serde_json::json;

use crate::render::{self, Format};
use crate::{usage, Ctx, Outcome};

/// An inclusive integer range written `lo..hi` or as a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span(pub i64, pub i64);

impl Span {
    fn values(self) -> impl Iterator<Item = i64> {
        self.0..=self.1
    }

    fn len(self) -> i64 {
        (self.1 - self.0 + 1).max(0)
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let int = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("expected an integer, got {t:?}"));
        let span = match s.split_once("..") {
            Some((lo, hi)) => Span(int(lo)?, int(hi.trim_start_matches('='))?),
            None => {
                let v = int(s)?;
                Span(v, v)
            }
        };
        if span.0 < 0 {
            return Err(format!("{s:?} has a negative bound"));
        }
        Ok(span)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Enumeration,
    ClosedForm,
    Both,
}

#[derive(Args, Debug)]
pub struct CoeffArgs {
    /// Codegree of the coefficient.
    #[arg(long)]
    pub i: u64,
    #[arg(long)]
    pub a: Span,
    #[arg(long)]
    pub b: Span,
    #[arg(long)]
    pub n: Span,
    #[arg(long, default_value = "0")]
    pub s: Span,
    /// Genus range; adds a `g` column.
    #[arg(long)]
    pub genus: Option<Span>,
    #[arg(long, value_enum, default_value_t = Source::Enumeration)]
    pub source: Source,
    /// Fit a polynomial over the varying parameters, per genus.
    #[arg(long)]
    pub fit: bool,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Codegree of the coefficient.
    #[arg(long)]
    pub i: u64,
    /// Fit `s -> coef_i G(0; s)` for this polygon instead of a grid.
    #[arg(long, conflicts_with_all = ["a", "b", "n"])]
    pub polygon: Option<HTransversePolygon>,
    /// Largest `s` for the polygon mode; defaults to `s_max`.
    #[arg(long, requires = "polygon")]
    pub s_max: Option<u64>,
    #[arg(long, required_unless_present = "polygon")]
    pub a: Option<Span>,
    #[arg(long, required_unless_present = "polygon")]
    pub b: Option<Span>,
    #[arg(long, required_unless_present = "polygon")]
    pub n: Option<Span>,
    #[arg(long, default_value = "0")]
    pub s: Span,
    #[arg(long, default_value_t = 0)]
    pub genus: u64,
    /// Degrees per varying parameter, comma separated; defaults to `i + 2g`
    /// in `a`, `i + g` in `b` and `n`, and `i` in `s`.
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value_t = Source::Enumeration)]
    pub source: Source,
}

/// One evaluated grid point.
struct Row {
    g: Option<u64>,
    point: [u64; 4],
    value: BigInt,
    source: &'static str,
}

fn enumerated(ctx: &Ctx, i: u64, g: u64, [a, b, n, s]: [u64; 4]) -> Result<BigInt> {
    let p = HTransversePolygon::abn(a, b, n)?;
    if s > 0 && g > 0 {
        return Err(usage("--s > 0 requires genus 0"));
    }
    let pairing = Pairing::consecutive(s as usize);
    let c = ctx.engine.top_coefficients(&p, g, &pairing, i + 1)?;
    Ok(c[i as usize].clone())
}

fn closed(i: u64, g: u64, [a, b, n, s]: [u64; 4]) -> Result<BigInt> {
    if g > 0 {
        return Err(usage("the closed form is a genus-0 formula"));
    }
    Ok(coeff_closed_form(i, a, b, n, s)?)
}

fn grid_points(a: Span, b: Span, n: Span, s: Span) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for a in a.values() {
        for b in b.values() {
            for n in n.values() {
                for s in s.values() {
                    out.push([a as u64, b as u64, n as u64, s as u64]);
                }
            }
        }
    }
    out
}

pub fn coeffs(ctx: &Ctx, args: &CoeffArgs) -> Result<Outcome> {
    let points = grid_points(args.a, args.b, args.n, args.s);
    let genera: Vec<u64> = match args.genus {
        Some(g) => g.values().map(|g| g as u64).collect(),
        None => vec![0],
    };
    if points.is_empty() || genera.is_empty() {
        return Err(usage("the grid is empty"));
    }
    let mut rows = Vec::new();
    let mut disagreements = 0;
    for &g in &genera {
        for &pt in &points {
            let gcol = args.genus.map(|_| g);
            match args.source {
                Source::Enumeration => {
                    rows.push(Row { g: gcol, point: pt, value: enumerated(ctx, args.i, g, pt)?, source: "enumeration" })
                }
                Source::ClosedForm => {
                    rows.push(Row { g: gcol, point: pt, value: closed(args.i, g, pt)?, source: "closed_form" })
                }
                Source::Both => {
                    let e = enumerated(ctx, args.i, g, pt)?;
                    let [a, b, n, s] = pt;
                    if g == 0 && in_stable_range(args.i, a, b, n, s) {
                        let c = closed(args.i, g, pt)?;
                        if c != e {
                            disagreements += 1;
                            eprintln!("mismatch at a={a} b={b} n={n} s={s}: closed form {c}, enumeration {e}");
                        }
                        rows.push(Row { g: gcol, point: pt, value: c, source: "closed_form" });
                    }
                    rows.push(Row { g: gcol, point: pt, value: e, source: "enumeration" });
                }
            }
        }
    }

    let mut fits = Vec::new();
    if args.fit {
        let spans = [args.a, args.b, args.n, args.s];
        for &g in &genera {
            let source = if args.source == Source::ClosedForm { Source::ClosedForm } else { Source::Enumeration };
            fits.push((g, fit_grid(ctx, args.i, g, spans, None, source)?));
        }
    }

    print!("{}", render_rows(ctx.format, args, &rows, &fits));
    if ctx.format == Format::Csv {
        for (g, r) in &fits {
            eprintln!("fit g={g}: {} ({})", r.polynomial, if r.passed { "ok" } else { "FAILED" });
        }
    }
    let fits_ok = fits.iter().all(|(_, r)| r.passed);
    Ok(if disagreements == 0 && fits_ok { Outcome::Ok } else { Outcome::Failed })
}

fn render_rows(format: Format, args: &CoeffArgs, rows: &[Row], fits: &[(u64, PolynomialityReport)]) -> String {
    let with_g = args.genus.is_some();
    let mut header = vec!["i"];
    if with_g {
        header.push("g");
    }
    header.extend(["a", "b", "n", "s", "value", "source"]);
    match format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| {
                    let [a, b, n, s] = r.point;
                    let mut o = json!({"i": args.i, "a": a, "b": b, "n": n, "s": s,
                        "value": r.value.to_string(), "source": r.source});
                    if let Some(g) = r.g {
                        o["g"] = json!(g);
                    }
                    o
                })
                .collect();
            let fits: Vec<_> = fits.iter().map(|(g, r)| json!({"genus": g, "report": r})).collect();
            render::pretty(&json!({"rows": rows, "fits": fits}))
        }
        _ => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut c = vec![args.i.to_string()];
                    if let Some(g) = r.g {
                        c.push(g.to_string());
                    }
                    c.extend(r.point.iter().map(u64::to_string));
                    c.push(r.value.to_string());
                    c.push(r.source.to_string());
                    c
                })
                .collect();
            if format == Format::Csv {
                return render::csv(&header, &cells);
            }
            let mut out = render::table(&header, &cells);
            for (g, r) in fits {
                out.push('\n');
                out.push_str(&format!("fit (genus {g}):\n{}", fit_text(r)));
            }
            out
        }
    }
}

fn fit_text(r: &PolynomialityReport) -> String {
    let mut out = format!("  polynomial: {}\n", r.polynomial);
    out.push_str(&format!("  variables: {}\n", r.region.vars.join(", ")));
    out.push_str(&format!("  expected degrees: {:?}\n", r.expected_degrees));
    let fitted: Vec<String> = r.fitted_degrees.iter().map(|d| d.map_or("-".into(), |d| d.to_string())).collect();
    out.push_str(&format!("  fitted degrees: [{}]\n", fitted.join(", ")));
    out.push_str(&format!("  points: {} fitted, {} held out\n", r.fit_points, r.held_out_points));
    for m in &r.mismatches {
        out.push_str(&format!("  mismatch at {:?}: value {}, predicted {}\n", m.point, m.value, m.predicted));
    }
    out.push_str(if r.passed { "  result: ok\n" } else { "  result: FAILED\n" });
    out
}

/// Fits over the parameters whose span has more than one value.
fn fit_grid(
    ctx: &Ctx,
    i: u64,
    g: u64,
    spans: [Span; 4],
    degrees: Option<&[u32]>,
    source: Source,
) -> Result<PolynomialityReport> {
    let names = ["a", "b", "n", "s"];
    let default_deg = [i + 2 * g, i + g, i + g, i];
    let varying: Vec<usize> = (0..4).filter(|&k| spans[k].len() > 1).collect();
    if spans.iter().any(|s| s.len() == 0) {
        return Err(usage("the grid is empty"));
    }
    if varying.is_empty() {
        return Err(usage("nothing to fit: every parameter is fixed"));
    }
    let degrees: Vec<u32> = match degrees {
        Some(d) if d.len() != varying.len() => {
            return Err(usage(format!("--degrees needs {} entries, one per varying parameter", varying.len())));
        }
        Some(d) => d.to_vec(),
        None => varying.iter().map(|&k| default_deg[k] as u32).collect(),
    };
    let vars: Vec<&str> = varying.iter().map(|&k| names[k]).collect();
    let ranges: Vec<(i64, i64)> = varying.iter().map(|&k| (spans[k].0, spans[k].1)).collect();
    let region = GridBox::new(&vars, &ranges);
    let eval = |p: &[i64]| -> floordiag_core::Result<BigInt> {
        let mut pt = [spans[0].0 as u64, spans[1].0 as u64, spans[2].0 as u64, spans[3].0 as u64];
        for (&k, &x) in varying.iter().zip(p) {
            pt[k] = x as u64;
        }
        let [a, b, n, s] = pt;
        match source {
            Source::ClosedForm => coeff_closed_form(i, a, b, n, s),
            _ => {
                let poly = HTransversePolygon::abn(a, b, n)?;
                let c = ctx.engine.top_coefficients(&poly, g, &Pairing::consecutive(s as usize), i + 1)?;
                Ok(c[i as usize].clone())
            }
        }
    };
    if g > 0 && spans[3] != Span(0, 0) {
        return Err(usage("--s > 0 requires genus 0"));
    }
    if source == Source::ClosedForm && g > 0 {
        return Err(usage("the closed form is a genus-0 formula"));
    }
    Ok(verify_polynomiality(eval, &region, &degrees)?)
}

pub fn fit(ctx: &Ctx, args: &FitArgs) -> Result<Outcome> {
    if let Some(p) = &args.polygon {
        return fit_in_s(ctx, args, p);
    }
    let spans = [args.a.expect("required"), args.b.expect("required"), args.n.expect("required"), args.s];
    if args.source == Source::Both {
        return Err(usage("fit takes a single source"));
    }
    let r = fit_grid(ctx, args.i, args.genus, spans, args.degrees.as_deref(), args.source)?;
    match ctx.format {
        Format::Json => print!("{}", render::pretty(&serde_json::to_value(&r)?)),
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                r.terms.iter().map(|(e, c)| e.iter().map(u32::to_string).chain([c.clone()]).collect()).collect();
            let mut header: Vec<&str> = r.region.vars.iter().map(String::as_str).collect();
            header.push("coefficient");
            print!("{}", render::csv(&header, &rows));
        }
        Format::Text => print!("{}", fit_text(&r)),
    }
    Ok(if r.passed { Outcome::Ok } else { Outcome::Failed })
}

fn fit_in_s(ctx: &Ctx, args: &FitArgs, p: &HTransversePolygon) -> Result<Outcome> {
    let s_max = args.s_max.unwrap_or(p.lattice_stats().s_max);
    let values: Vec<BigInt> = (0..=s_max)
        .map(|s| {
            let c = ctx.engine.top_coefficients(p, 0, &Pairing::consecutive(s as usize), args.i + 1)?;
            Ok(c[args.i as usize].clone())
        })
        .collect::<Result<_>>()?;
    let r = check_s_polynomial(&values, args.i as u32).map_err(|e| usage(e.to_string()))?;
    match ctx.format {
        Format::Json => print!("{}", render::pretty(&serde_json::to_value(&r)?)),
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                r.values.iter().enumerate().map(|(s, v)| vec![s.to_string(), v.clone()]).collect();
            print!("{}", render::csv(&["s", "value"], &rows));
        }
        Format::Text => {
            println!("values: {}", r.values.join(", "));
            println!("derivative {}: {}", r.i, r.derivative.join(", "));
            println!(
                "leading coefficient: {} (expected {})",
                r.leading_coefficient.as_deref().unwrap_or("-"),
                r.expected_leading
            );
            println!("result: {}", if r.passed { "ok" } else { "FAILED" });
        }
    }
    Ok(if r.passed { Outcome::Ok } else { Outcome::Failed })
}
