//! Seeded randomized verification of the catalog.
//!
//! Each (entry, trial) pair is an independent task with its own stream
//! `Stream::new(seed).derive(label_of(id)).derive(trial)`. Tasks run in
//! parallel and are reduced in (entry, trial) order, so reports do not depend
//! on the thread count.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{catalog_list, evaluate_with, CheckParams, Evaluator, FunctionPair, InequalityCheck, Verdict};
use crate::ensembles::{draw_matrix, draw_tuple, unit_vector_from, EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};
use crate::linalg::{cartesian_parts, ComplexMatrix, C64};
use crate::radius::{OperatorTuple, OptimizerOptions};
use crate::rng::{label_of, Stream};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamGrid {
    pub p: Vec<f64>,
    /// Ordering partners for C6; the p list when absent.
    pub q: Option<Vec<f64>>,
    pub r: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl Default for ParamGrid {
    fn default() -> Self {
        Self {
            p: vec![1.0, 1.5, 2.0, 3.0],
            q: None,
            r: vec![1.0, 2.0],
            alpha: vec![0.0, 0.3, 0.5, 1.0],
            beta: vec![0.3, 0.5, 0.7],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub seed: u64,
    pub dims: Vec<usize>,
    pub trials: usize,
    /// Entry ids; `"all"` selects the whole catalog.
    pub entries: Vec<String>,
    pub tolerance: f64,
    pub restarts: usize,
    pub grid: ParamGrid,
    pub output: Option<PathBuf>,
    /// Worker threads; machine parallelism when absent.
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            dims: vec![2, 3, 4],
            trials: 10,
            entries: vec!["all".into()],
            tolerance: crate::catalog::DEFAULT_TOLERANCE,
            restarts: OptimizerOptions::default().restarts,
            grid: ParamGrid::default(),
            output: None,
            threads: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.dims.is_empty() || self.dims.iter().any(|d| !(1..=8).contains(d)) {
            return bad(format!("dims {:?} must be a nonempty subset of 1..=8", self.dims));
        }
        if self.trials < 1 {
            return bad("trials must be >= 1".into());
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad(format!("tolerance {} must be finite and > 0", self.tolerance));
        }
        if self.restarts < 1 {
            return bad("restarts must be >= 1".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be >= 1".into());
        }
        let g = &self.grid;
        let ps = g.p.iter().chain(g.q.iter().flatten());
        if let Some(p) = ps.into_iter().find(|p| !(**p >= 1.0 && p.is_finite())) {
            return bad(format!("grid exponent {p} must be finite and >= 1"));
        }
        if let Some(r) = g.r.iter().find(|r| !(**r >= 1.0 && r.is_finite())) {
            return bad(format!("grid r = {r} must be finite and >= 1"));
        }
        if let Some(a) = g.alpha.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return bad(format!("grid alpha = {a} must lie in [0, 1]"));
        }
        if let Some(b) = g.beta.iter().find(|b| !(**b > 0.0 && **b <= 1.0)) {
            return bad(format!("grid beta = {b} must lie in (0, 1]"));
        }
        self.selected()?;
        Ok(())
    }

    pub fn selected(&self) -> Result<Vec<&'static InequalityCheck>> {
        let list = catalog_list();
        if self.entries.iter().any(|e| e == "all") {
            return Ok(list.iter().collect());
        }
        let mut out = Vec::new();
        for id in &self.entries {
            let e = list.iter().find(|e| e.id == id).ok_or_else(|| Error::InvalidConfig(format!("unknown entry {id}")))?;
            if !out.iter().any(|o: &&InequalityCheck| o.id == e.id) {
                out.push(e);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntrySummary {
    pub id: String,
    pub trials: usize,
    pub checks: usize,
    pub holds: usize,
    pub inconclusive: usize,
    pub violations: usize,
    /// Smallest `slack / max(|lhs|, |rhs|, 1)` over all checks.
    pub worst_slack: Option<f64>,
    pub worst_case_digest: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub entries: Vec<EntrySummary>,
}

impl SuiteReport {
    pub fn violations(&self) -> usize {
        self.entries.iter().map(|e| e.violations).sum()
    }

    pub fn inconclusive(&self) -> usize {
        self.entries.iter().map(|e| e.inconclusive).sum()
    }

    pub fn checks(&self) -> usize {
        self.entries.iter().map(|e| e.checks).sum()
    }

    /// One row per entry: id, trials, holds, inconclusive, violations, worst_slack.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,trials,holds,inconclusive,violations,worst_slack\n");
        for e in &self.entries {
            let worst = e.worst_slack.map(|w| w.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{},{},{},{}\n", e.id, e.trials, e.holds, e.inconclusive, e.violations, worst));
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    holds: usize,
    inconclusive: usize,
    violations: usize,
    worst: Option<(f64, String)>,
}

impl Tally {
    fn record(&mut self, verdict: Verdict, slack: f64, digest: &str) {
        self.checks += 1;
        match verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
            Verdict::Violation => self.violations += 1,
        }
        if self.worst.as_ref().is_none_or(|(w, _)| slack < *w) {
            self.worst = Some((slack, digest.to_string()));
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checks += other.checks;
        self.holds += other.holds;
        self.inconclusive += other.inconclusive;
        self.violations += other.violations;
        if let Some((s, d)) = other.worst {
            if self.worst.as_ref().is_none_or(|(w, _)| s < *w) {
                self.worst = Some((s, d));
            }
        }
    }
}

fn ginibre(dim: usize, rng: &mut Stream) -> Result<ComplexMatrix> {
    draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Ginibre, dim, rng.next_u64()))
}

fn tuple(dim: usize, len: usize, rng: &mut Stream) -> Result<OperatorTuple> {
    draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, dim, len, rng.next_u64()))
}

fn short_len(rng: &mut Stream) -> usize {
    1 + (rng.next_u64() % 3) as usize
}

fn hermitian_pair(dim: usize, rng: &mut Stream) -> Result<OperatorTuple> {
    let (b, c) = cartesian_parts(&ginibre(dim, rng)?);
    OperatorTuple::pair(b, c)
}

fn gaussian_vector(dim: usize, rng: &mut Stream) -> Vec<C64> {
    (0..dim).map(|_| rng.complex_normal()).collect()
}

/// Inputs of one trial, honoring the entry's applicability.
fn draw_inputs(id: &str, dim: usize, trial: usize, rng: &mut Stream) -> Result<CheckParams> {
    let odd = trial % 2 == 1;
    let primary = match id {
        "C1" | "C2" | "C4" | "LC2" | "LC3" => OperatorTuple::single(ginibre(dim, rng)?),
        "LC4" => OperatorTuple::single(draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Psd, dim, rng.next_u64()))?),
        "C9" | "C14" => hermitian_pair(dim, rng)?,
        "C10" | "C12" | "C17" if odd => hermitian_pair(dim, rng)?,
        "C6" | "C7" | "C8" | "C10" | "C11" | "C12" | "C13" | "C15" | "C16" | "C17" | "C18" | "C25" | "C28"
        | "C30" => tuple(dim, 2, rng)?,
        "C19" => tuple(dim, 2 + (rng.next_u64() % 2) as usize, rng)?,
        "P1" if trial % 10 == 9 => {
            let len = short_len(rng);
            OperatorTuple::new(vec![ComplexMatrix::zeros(dim); len])?
        }
        "LC1" | "LC5" => OperatorTuple::single(ComplexMatrix::zeros(1)),
        _ => {
            let len = short_len(rng);
            tuple(dim, len, rng)?
        }
    };
    let n = primary.len();
    let mut params = CheckParams::new(primary);
    match id {
        "C19" => {
            let raw: Vec<f64> = (0..n).map(|_| rng.uniform() + 1e-3).collect();
            let total: f64 = raw.iter().sum();
            let mut alphas: Vec<f64> = raw.iter().map(|a| a / total).collect();
            let rest: f64 = alphas[..n - 1].iter().sum();
            alphas[n - 1] = 1.0 - rest;
            params.alphas = Some(alphas);
        }
        "C20" | "C22" => {
            params.aux_a = Some(tuple(dim, n, rng)?);
            params.aux_b = Some(tuple(dim, n, rng)?);
        }
        "C23" | "P3" => params.aux_a = Some(tuple(dim, n, rng)?),
        "P4" => params.aux_x = Some(ginibre(dim, rng)?),
        "P2" => params.lambda = rng.complex_normal(),
        "LC1" => {
            let mut draw = || (2.0 * rng.normal_pair().0).exp();
            let (mut a, mut b) = (draw(), draw());
            match trial % 7 {
                5 => a = 0.0,
                6 => b = 0.0,
                _ => {}
            }
            params.scalars = vec![a, b];
        }
        "LC2" | "LC3" => params.vectors = vec![gaussian_vector(dim, rng), gaussian_vector(dim, rng)],
        "LC4" => params.vectors = vec![unit_vector_from(dim, rng).into_inner()],
        "LC5" => {
            let d = if odd { 1 } else { dim };
            let scale = (2.0 * rng.normal_pair().0).exp();
            let x = gaussian_vector(d, rng);
            let y = gaussian_vector(d, rng).into_iter().map(|z| z * scale).collect();
            params.vectors = vec![x, y];
        }
        _ => {}
    }
    Ok(params)
}

fn uses(id: &str, param: &str) -> bool {
    let list: &[&str] = match param {
        "p" => &["C1", "C2", "C3", "C4", "LC1", "LC2", "LC3", "LC4"],
        "r" => &["C20", "C21", "C22", "C23", "C29", "C30", "LC1", "LC4"],
        "alpha" => &["C24", "C25", "C26", "C27", "C28", "C29", "C30", "LC1", "LC2"],
        "beta" => &["C20", "C21", "LC3"],
        _ => &[],
    };
    // The p list names the entries that do not use p.
    if param == "p" {
        !list.contains(&id)
    } else {
        list.contains(&id)
    }
}

/// Parameter sweep for one entry, restricted to its p-range.
fn sweep(entry: &InequalityCheck, grid: &ParamGrid, base: &CheckParams) -> Vec<CheckParams> {
    let id = entry.id;
    let ps: Vec<f64> = if uses(id, "p") {
        grid.p.iter().copied().filter(|p| entry.applicability.p.admits(*p)).collect()
    } else {
        vec![base.p]
    };
    let qs: Vec<Option<f64>> = if id == "C6" {
        grid.q.as_ref().unwrap_or(&grid.p).iter().map(|q| Some(*q)).collect()
    } else {
        vec![None]
    };
    let rs: Vec<f64> = match id {
        "LC4" => {
            let mut rs: Vec<f64> = grid.r.iter().flat_map(|r| [*r, 1.0 / r]).collect();
            rs.sort_by(f64::total_cmp);
            rs.dedup();
            rs
        }
        _ if uses(id, "r") => grid.r.clone(),
        _ => vec![base.r],
    };
    let alphas = if uses(id, "alpha") { grid.alpha.clone() } else { vec![base.alpha] };
    let betas: Vec<Option<f64>> =
        if uses(id, "beta") { grid.beta.iter().map(|b| Some(*b)).collect() } else { vec![None] };

    let mut out = Vec::new();
    for &p in &ps {
        for &q in &qs {
            if q.is_some_and(|q| q > p) {
                continue;
            }
            for &r in &rs {
                for &alpha in &alphas {
                    for &beta in &betas {
                        let mut params = base.clone();
                        params.p = p;
                        params.q = q;
                        params.r = r;
                        params.alpha = alpha;
                        params.pair = beta.map(|b| FunctionPair { beta: b });
                        out.push(params);
                    }
                }
            }
        }
    }
    out
}

fn run_task(entry: &InequalityCheck, trial: usize, config: &SuiteConfig) -> Result<Tally> {
    let root = Stream::new(config.seed).derive(label_of(entry.id)).derive(trial as u64);
    let mut rng = root.derive(0);
    let dim = config.dims[trial % config.dims.len()];
    let mut base = draw_inputs(entry.id, dim, trial, &mut rng)?;
    base.tolerance = config.tolerance;
    base.opts = OptimizerOptions { restarts: config.restarts, rng_seed: root.derive_seed(1), ..Default::default() };
    let mut ev = Evaluator::new(base.opts.clone());
    let mut tally = Tally::default();
    for params in sweep(entry, &config.grid, &base) {
        match evaluate_with(&mut ev, entry, &params) {
            Ok(report) => tally.record(report.verdict, report.relative_slack(), &report.digest),
            Err(Error::NotApplicable { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(tally)
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let entries = config.selected()?;
    let tasks: Vec<(usize, usize)> =
        (0..entries.len()).flat_map(|e| (0..config.trials).map(move |t| (e, t))).collect();
    let run = || -> Result<Vec<Tally>> {
        tasks.par_iter().map(|&(e, t)| run_task(entries[e], t, config)).collect()
    };
    let tallies = match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let mut merged: Vec<Tally> = entries.iter().map(|_| Tally::default()).collect();
    for (&(e, _), tally) in tasks.iter().zip(tallies) {
        merged[e].merge(tally);
    }
    Ok(SuiteReport {
        seed: config.seed,
        entries: entries
            .iter()
            .zip(merged)
            .map(|(entry, t)| EntrySummary {
                id: entry.id.to_string(),
                trials: config.trials,
                checks: t.checks,
                holds: t.holds,
                inconclusive: t.inconclusive,
                violations: t.violations,
                worst_slack: t.worst.as_ref().map(|w| w.0),
                worst_case_digest: t.worst.map(|w| w.1),
            })
            .collect(),
    })
}
