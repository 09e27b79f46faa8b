//! Output formats shared by all subcommands.

use clap::ValueEnum;
use floordiag_core::{Exponent, LaurentPoly};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Renders a polynomial result. JSON wraps the doubled-exponent map together
/// with `context`; CSV lists `exponent,coefficient` from the top down.
pub fn polynomial(p: &LaurentPoly, format: Format, context: Value) -> String {
    match format {
        Format::Text => format!("{p}\n"),
        Format::Json => {
            let mut obj = context;
            obj["value"] = serde_json::to_value(p).expect("polynomials serialise");
            obj["text"] = json!(p.to_string());
            pretty(&obj)
        }
        Format::Csv => {
            let mut out = String::from("exponent,coefficient\n");
            for (e, c) in p.terms().rev() {
                out.push_str(&format!("{},{c}\n", Exponent(e)));
            }
            out
        }
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("{}\n", header.join(","));
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
