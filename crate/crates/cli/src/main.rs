//! `floordiag`: refined invariants of h-transverse polygons from the command
//! line.
//!
//! Exit codes: 0 on success, 1 when a verification or fit fails, 2 on usage
//! errors (bad literals, empty grids, unknown suites, out-of-range requests).

mod grid;
mod render;
mod suites;

use std::fmt;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use floordiag_core::cache::{DiskCache, CACHE_ENV};
use floordiag_core::templates::{enumerate_capping_trees, enumerate_templates, template_census, CappingTreeView};
use floordiag_core::{Engine, HTransversePolygon, Pairing};
use serde_json::json;

use crate::grid::{CoeffArgs, FitArgs};
use crate::render::Format;

#[derive(Parser, Debug)]
#[command(name = "floordiag", version, about = "Refined tropical invariants via floor diagrams")]
struct Cli {
    /// Worker threads; defaults to the number of logical cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Skip the on-disk result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// G(g) of a polygon.
    Invariant {
        #[arg(long)]
        polygon: HTransversePolygon,
        #[arg(long, default_value_t = 0)]
        genus: u64,
    },
    /// G(0; s), optionally with an explicit pairing such as `pairs:3-4`.
    Descendant {
        #[arg(long)]
        polygon: HTransversePolygon,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        pairing: Option<Pairing>,
    },
    /// Codegree-i coefficients of Delta_{a,b,n} over a grid.
    Coeffs(CoeffArgs),
    /// Polynomial fit over a grid, or the s-derivative test for one polygon.
    Fit(FitArgs),
    /// Templates up to a genus and codegree.
    Templates {
        #[arg(long, default_value_t = 1)]
        max_genus: u64,
        #[arg(long, default_value_t = 2)]
        max_codegree: u64,
        /// Print counts per (genus, codegree) instead of the templates.
        #[arg(long)]
        census: bool,
    },
    /// Capping trees of Delta_{a,0,n}.
    Capping {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        max_codegree: Option<i64>,
    },
    /// Run a verification suite against its golden file.
    Verify {
        #[arg(long)]
        suite: String,
        /// Print freshly computed golden data instead of comparing.
        #[arg(long)]
        emit: bool,
    },
    /// Inspect or clear the result cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CacheAction {
    Path,
    Clear,
    Stats,
}

/// A request the CLI cannot serve as given.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// What a command reports besides its output.
pub enum Outcome {
    Ok,
    Failed,
}

pub struct Ctx {
    pub engine: Engine,
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    let engine = match (cli.no_cache, DiskCache::from_env()) {
        (false, Some(cache)) => Engine::with_disk_cache(cache),
        _ => Engine::new(),
    };
    let ctx = Ctx { engine, format: cli.format };
    match run(&ctx, cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Result<Outcome> {
    match command {
        Command::Invariant { polygon, genus } => {
            let iota = polygon.interior_points();
            if genus > iota {
                eprintln!("warning: genus {genus} exceeds the {iota} interior points of {polygon}; the invariant is 0");
            }
            let value = ctx.engine.refined_invariant(&polygon, genus)?;
            let context = json!({"polygon": polygon.to_string(), "genus": genus});
            print!("{}", render::polynomial(&value, ctx.format, context));
            Ok(Outcome::Ok)
        }
        Command::Descendant { polygon, s, pairing } => {
            let s_max = polygon.lattice_stats().s_max;
            if s > s_max {
                eprintln!("warning: s = {s} exceeds s_max = {s_max} for {polygon}; the invariant is 0");
            }
            let (value, pairing) = match pairing {
                None => (ctx.engine.refined_descendant(&polygon, s)?, Pairing::consecutive(s as usize)),
                Some(p) if p.order() as u64 != s => {
                    return Err(usage(format!("{p} has order {} but --s is {s}", p.order())));
                }
                Some(p) => (ctx.engine.descendant_with_pairing(&polygon, &p)?, p),
            };
            let context = json!({"polygon": polygon.to_string(), "s": s, "pairing": pairing.to_string()});
            print!("{}", render::polynomial(&value, ctx.format, context));
            Ok(Outcome::Ok)
        }
        Command::Coeffs(args) => grid::coeffs(ctx, &args),
        Command::Fit(args) => grid::fit(ctx, &args),
        Command::Templates { max_genus, max_codegree, census } => {
            templates(ctx.format, max_genus, max_codegree, census);
            Ok(Outcome::Ok)
        }
        Command::Capping { a, n, max_codegree } => {
            if a < 2 || n == 0 {
                return Err(usage("capping trees need a >= 2 and n >= 1"));
            }
            capping(ctx.format, a, n, max_codegree.unwrap_or(i64::MAX));
            Ok(Outcome::Ok)
        }
        Command::Verify { suite, emit } => suites::run(ctx, &suite, emit),
        Command::Cache { action } => cache(action),
    }
}

fn templates(format: Format, max_genus: u64, max_codegree: u64, census: bool) {
    if census {
        let counts = template_census(max_genus, max_codegree);
        let rows: Vec<Vec<String>> =
            counts.iter().map(|(&(g, c), n)| vec![g.to_string(), c.to_string(), n.to_string()]).collect();
        let header = ["genus", "codegree", "count"];
        match format {
            Format::Text => print!("{}", render::table(&header, &rows)),
            Format::Csv => print!("{}", render::csv(&header, &rows)),
            Format::Json => {
                let v: Vec<_> =
                    counts.iter().map(|(&(g, c), n)| json!({"genus": g, "codegree": c, "count": n})).collect();
                print!("{}", render::pretty(&json!(v)));
            }
        }
        return;
    }
    let all = enumerate_templates(max_genus, max_codegree);
    match format {
        Format::Json => {
            let v: Vec<_> = all
                .iter()
                .map(|t| {
                    let mut obj = serde_json::to_value(t).expect("templates serialise");
                    obj["genus"] = json!(t.genus());
                    obj["codegree"] = json!(t.codegree());
                    obj["length"] = json!(t.length());
                    obj
                })
                .collect();
            print!("{}", render::pretty(&json!(v)));
        }
        _ => {
            let rows: Vec<Vec<String>> = all
                .iter()
                .map(|t| vec![t.genus().to_string(), t.codegree().to_string(), t.length().to_string(), t.to_string()])
                .collect();
            let header = ["genus", "codegree", "length", "template"];
            if format == Format::Csv {
                let quoted: Vec<Vec<String>> = rows
                    .into_iter()
                    .map(|mut r| {
                        r[3] = format!("\"{}\"", r[3].replace('"', "\"\""));
                        r
                    })
                    .collect();
                print!("{}", render::csv(&header, &quoted));
            } else {
                print!("{}", render::table(&header, &rows));
            }
        }
    }
}

fn capping(format: Format, a: usize, n: u64, max_codegree: i64) {
    let trees = enumerate_capping_trees(a, n, max_codegree);
    match format {
        Format::Json => {
            let v: Vec<_> = trees.iter().map(CappingTreeView).collect();
            print!("{}", render::pretty(&serde_json::to_value(v).expect("trees serialise")));
        }
        _ => {
            let rows: Vec<Vec<String>> = trees
                .iter()
                .map(|t| {
                    let parents: Vec<String> =
                        t.parents().iter().map(|p| p.map_or("-".to_string(), |x| x.to_string())).collect();
                    let weights: Vec<String> = t.elevators().iter().map(|e| e.weight.to_string()).collect();
                    vec![t.codegree().to_string(), t.floors().to_string(), parents.join(" "), weights.join(" ")]
                })
                .collect();
            let header = ["codegree", "floors", "parents", "weights"];
            if format == Format::Csv {
                print!("{}", render::csv(&header, &rows));
            } else {
                print!("{}", render::table(&header, &rows));
            }
        }
    }
}

fn cache(action: CacheAction) -> Result<Outcome> {
    let cache = DiskCache::from_env().ok_or_else(|| usage(format!("no cache directory: set {CACHE_ENV} or HOME")))?;
    match action {
        CacheAction::Path => println!("{}", cache.dir().display()),
        CacheAction::Clear => {
            let removed = cache.clear().context("clearing the cache")?;
            println!("removed {removed} entries from {}", cache.dir().display());
        }
        CacheAction::Stats => println!("{} entries in {}", cache.len(), cache.dir().display()),
    }
    Ok(Outcome::Ok)
}
