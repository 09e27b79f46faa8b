//! Refined invariants `G_Delta(g)` and refined descendant invariants
//! `G_Delta(0; s)` as sums over floor diagrams.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::DiskCache;
use crate::diagram::{enumerate_up_to_codegree, FloorDiagram};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
pub use crate::marking::Pairing;
use crate::marking::{marked_multiplicity_sum, marked_multiplicity_top};
use crate::polygon::HTransversePolygon;

type DiagramKey = (HTransversePolygon, u64, Option<u64>);

/// Computes invariants, memoising diagram lists and results in memory and
/// optionally on disk.
#[derive(Default)]
pub struct Engine {
    disk: Option<DiskCache>,
    diagrams: Mutex<HashMap<DiagramKey, Arc<Vec<FloorDiagram>>>>,
    results: Mutex<HashMap<String, LaurentPoly>>,
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_disk_cache(cache: DiskCache) -> Self {
        Engine { disk: Some(cache), ..Self::default() }
    }

    /// Diagrams of genus `g`, optionally restricted to codegree `<= cap`.
    pub fn diagrams(&self, p: &HTransversePolygon, g: u64, cap: Option<u64>) -> Arc<Vec<FloorDiagram>> {
        let key = (p.clone(), g, cap);
        if let Some(d) = self.diagrams.lock().unwrap().get(&key) {
            return d.clone();
        }
        let list = Arc::new(enumerate_up_to_codegree(p, g, cap));
        self.diagrams.lock().unwrap().insert(key, list.clone());
        list
    }

    fn memoised(&self, key: String, compute: impl FnOnce() -> Result<LaurentPoly>) -> Result<LaurentPoly> {
        if let Some(v) = self.results.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        if let Some(v) = self.disk.as_ref().and_then(|c| c.get(&key)) {
            self.results.lock().unwrap().insert(key, v.clone());
            return Ok(v);
        }
        let v = compute()?;
        if let Some(cache) = &self.disk {
            cache.put(&key, &v)?;
        }
        self.results.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// `G_Delta(g)`: the sum over diagrams of genus `g` of the number of
    /// markings times the multiplicity. Zero when `g` exceeds the number of
    /// interior points.
    pub fn refined_invariant(&self, p: &HTransversePolygon, g: u64) -> Result<LaurentPoly> {
        self.memoised(format!("{p}|g={g}"), || {
            let ds = self.diagrams(p, g, None);
            self.sum_over(&ds, &Pairing::empty())
        })
    }

    /// `G_Delta(0; s)` with the pairing `{1,2}, ..., {2s-1,2s}`. Zero when
    /// `s` exceeds `s_max`.
    pub fn refined_descendant(&self, p: &HTransversePolygon, s: u64) -> Result<LaurentPoly> {
        if s > p.lattice_stats().s_max {
            return Ok(LaurentPoly::zero());
        }
        self.descendant_with_pairing(p, &Pairing::consecutive(s as usize))
    }

    /// `G_Delta(0; s)` computed with an explicit pairing of order `s`.
    pub fn descendant_with_pairing(&self, p: &HTransversePolygon, pairing: &Pairing) -> Result<LaurentPoly> {
        pairing.fits(p.lattice_stats().n_delta as usize)?;
        self.memoised(format!("{p}|pairing={pairing}"), || {
            let ds = self.diagrams(p, 0, None);
            self.sum_over(&ds, pairing)
        })
    }

    fn sum_over(&self, ds: &[FloorDiagram], pairing: &Pairing) -> Result<LaurentPoly> {
        let parts: Vec<LaurentPoly> =
            ds.par_iter().map(|d| marked_multiplicity_sum(d, pairing)).collect::<Result<_>>()?;
        Ok(parts.into_iter().sum())
    }

    /// The coefficients of codegree `0..count` of `G_Delta(g)` (empty
    /// pairing) or `G_Delta(0; s)` (with `pairing`), measured from the
    /// nominal degree `iota - g`. Only diagrams of codegree below `count`
    /// are enumerated.
    pub fn top_coefficients(
        &self,
        p: &HTransversePolygon,
        g: u64,
        pairing: &Pairing,
        count: u64,
    ) -> Result<Vec<BigInt>> {
        let iota = p.interior_points();
        if count == 0 {
            return Ok(Vec::new());
        }
        if g > iota {
            return Ok(vec![BigInt::from(0); count as usize]);
        }
        if pairing.order() > 0 && g > 0 {
            return Err(Error::Precondition("pairings are only defined in genus 0".into()));
        }
        pairing.fits(p.lattice_stats().n_delta as usize)?;
        let ds = self.diagrams(p, g, Some(count - 1));
        let parts: Vec<(usize, Vec<BigInt>)> = ds
            .par_iter()
            .map(|d| {
                let c = d.codegree(p) as usize;
                marked_multiplicity_top(d, pairing, count as usize - c).map(|v| (c, v))
            })
            .collect::<Result<_>>()?;
        let mut out = vec![BigInt::from(0); count as usize];
        for (c, v) in parts {
            for (j, x) in v.into_iter().enumerate() {
                out[c + j] += x;
            }
        }
        Ok(out)
    }

    /// Checks that `G_Delta(0; s)` does not depend on the pairing. Every
    /// pairing is tried when `n_delta <= 12`, otherwise 50 seeded samples.
    pub fn verify_pairing_independence(&self, p: &HTransversePolygon, s: u64) -> Result<PairingIndependenceReport> {
        let n = p.lattice_stats().n_delta as usize;
        if 2 * s as usize > n {
            return Err(Error::Precondition(format!("no pairing of order {s} in {n} points")));
        }
        let (pairings, exhaustive) = if n <= 12 {
            (Pairing::all_of_order(s as usize, n), true)
        } else {
            (sample_pairings(s as usize, n, 50, 0x5eed_f100), false)
        };
        let reference = self.refined_descendant(p, s)?;
        let mut mismatches = Vec::new();
        for pairing in &pairings {
            let v = self.descendant_with_pairing(p, pairing)?;
            if v != reference {
                mismatches.push((pairing.to_string(), v));
            }
        }
        Ok(PairingIndependenceReport {
            polygon: p.to_string(),
            s,
            pairings_checked: pairings.len(),
            exhaustive,
            reference,
            mismatches,
        })
    }

    /// Checks `G(0; s+1) = G(0; s) - 2 G_chop(0; s)` for polygons in the
    /// recursion family with `2s <= n_delta - 2`.
    pub fn verify_recursion(&self, p: &HTransversePolygon, s: u64) -> Result<RecursionReport> {
        let chopped = p.chop_top()?;
        let n = p.lattice_stats().n_delta;
        if 2 * s + 2 > n {
            return Err(Error::Precondition(format!("recursion needs 2s <= n_delta - 2 = {}", n as i64 - 2)));
        }
        let lhs = self.refined_descendant(p, s + 1)?;
        let rhs = &self.refined_descendant(p, s)? - &self.refined_descendant(&chopped, s)?.scale(&BigInt::from(2));
        Ok(RecursionReport { polygon: p.to_string(), chopped: chopped.to_string(), s, holds: lhs == rhs, lhs, rhs })
    }

    /// Checks `G(0; s) >= G(0; s+1)` coefficientwise for `0 <= s < s_max`.
    pub fn verify_monotonicity(&self, p: &HTransversePolygon) -> Result<MonotonicityReport> {
        let s_max = p.lattice_stats().s_max;
        let values: Vec<LaurentPoly> = (0..=s_max).map(|s| self.refined_descendant(p, s)).collect::<Result<_>>()?;
        let failures = (0..s_max).filter(|&s| !values[s as usize].poly_geq(&values[s as usize + 1])).collect();
        Ok(MonotonicityReport { polygon: p.to_string(), values, failures })
    }
}

fn sample_pairings(s: usize, n: usize, count: usize, seed: u64) -> Vec<Pairing> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = BTreeSet::new();
    let total = Pairing::all_of_order(s, n.min(24)).len();
    let mut attempts = 0;
    while found.len() < count && attempts < 100 * count {
        attempts += 1;
        let mut candidates: Vec<usize> = (1..n).collect();
        candidates.shuffle(&mut rng);
        let mut used = vec![false; n + 2];
        let mut pairs = Vec::new();
        for i in candidates {
            if pairs.len() == s {
                break;
            }
            if !used[i] && !used[i + 1] {
                used[i] = true;
                used[i + 1] = true;
                pairs.push((i, i + 1));
            }
        }
        if pairs.len() == s {
            found.insert(Pairing::new(&pairs).expect("disjoint by construction"));
        }
        if n <= 24 && found.len() == total {
            break;
        }
    }
    found.into_iter().collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingIndependenceReport {
    pub polygon: String,
    pub s: u64,
    pub pairings_checked: usize,
    pub exhaustive: bool,
    pub reference: LaurentPoly,
    pub mismatches: Vec<(String, LaurentPoly)>,
}

impl PairingIndependenceReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecursionReport {
    pub polygon: String,
    pub chopped: String,
    pub s: u64,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    pub polygon: String,
    pub values: Vec<LaurentPoly>,
    /// Values of `s` where `G(0; s) >= G(0; s+1)` fails.
    pub failures: Vec<u64>,
}

impl MonotonicityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn shared() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(Engine::new)
}

/// `G_Delta(g)` using a process-wide in-memory cache.
pub fn refined_invariant(p: &HTransversePolygon, g: u64) -> Result<LaurentPoly> {
    shared().refined_invariant(p, g)
}

/// `G_Delta(0; s)` using a process-wide in-memory cache. With no pairing
/// the canonical pairing `{1,2}, ..., {2s-1,2s}` is used.
pub fn refined_descendant(p: &HTransversePolygon, s: u64, pairing: Option<&Pairing>) -> Result<LaurentPoly> {
    match pairing {
        None => shared().refined_descendant(p, s),
        Some(pr) if pr.order() as u64 != s => Err(Error::InvalidPairing(format!("{pr} does not have order {s}"))),
        Some(pr) => shared().descendant_with_pairing(p, pr),
    }
}

pub fn verify_pairing_independence(p: &HTransversePolygon, s: u64) -> Result<PairingIndependenceReport> {
    shared().verify_pairing_independence(p, s)
}

pub fn verify_recursion(p: &HTransversePolygon, s: u64) -> Result<RecursionReport> {
    shared().verify_recursion(p, s)
}

pub fn verify_monotonicity(p: &HTransversePolygon) -> Result<MonotonicityReport> {
    shared().verify_monotonicity(p)
}
