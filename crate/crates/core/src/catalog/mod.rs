//! Registry of the operator inequalities under test and the engine that
//! evaluates both sides of each one.
//!
//! Every entry is encoded as stated, as a list of `lhs ≤ rhs` links. A link
//! HOLDS when `rhs − lhs ≥ −tol·max(|lhs|, |rhs|, 1)`. It is a VIOLATION only
//! when the enclosures of the two sides separate by more than that band, which
//! needs certified quantities on the losing side; otherwise it is
//! INCONCLUSIVE. A failing check is polished (cross-seeded ascent), certified
//! (upper bounds for `w_p` from numerical radii) and, if still inconclusive,
//! escalated once. The report carries the worst link.

mod bound;
mod entries;
mod evaluator;
mod registry;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, UnitVector, C64};
use crate::radius::{OperatorTuple, OptimizerOptions};

pub use bound::Verdict;
pub use registry::{catalog_entry, catalog_list, Applicability, InequalityCheck, PRange, Requirement, Sensitivity, TupleLen};

pub(crate) use evaluator::Evaluator;

pub const DEFAULT_TOLERANCE: f64 = 1e-7;
/// Self-adjointness tolerance for entries that require it, relative to
/// `max(1, max |entry|)`.
pub const SELF_ADJOINT_TOL: f64 = 1e-10;
pub const CONJUGACY_TOL: f64 = 1e-12;

/// `f(t) = t^β`, `g(t) = t^{1−β}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionPair {
    pub beta: f64,
}

impl FunctionPair {
    pub fn new(beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::InvalidOptions(format!("function pair exponent {beta} must lie in (0, 1]")));
        }
        Ok(Self { beta })
    }

    pub fn f(&self, t: f64) -> f64 {
        t.powf(self.beta)
    }

    pub fn g(&self, t: f64) -> f64 {
        if self.beta == 1.0 {
            1.0
        } else {
            t.powf(1.0 - self.beta)
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckParams {
    pub p: f64,
    pub q: Option<f64>,
    pub r: f64,
    pub alpha: f64,
    pub alphas: Option<Vec<f64>>,
    pub lambda: C64,
    pub pair: Option<FunctionPair>,
    pub primary: OperatorTuple,
    pub aux_a: Option<OperatorTuple>,
    pub aux_b: Option<OperatorTuple>,
    pub aux_x: Option<ComplexMatrix>,
    /// Vectors for lemma-level checks; unit length is required only where the
    /// entry says so.
    pub vectors: Vec<Vec<C64>>,
    /// Nonnegative reals for the scalar lemma.
    pub scalars: Vec<f64>,
    pub opts: OptimizerOptions,
    pub tolerance: f64,
}

impl CheckParams {
    pub fn new(primary: OperatorTuple) -> Self {
        Self {
            p: 2.0,
            q: None,
            r: 1.0,
            alpha: 0.5,
            alphas: None,
            lambda: C64::new(1.0, 0.0),
            pair: None,
            primary,
            aux_a: None,
            aux_b: None,
            aux_x: None,
            vectors: Vec::new(),
            scalars: Vec::new(),
            opts: OptimizerOptions::default(),
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = p;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidOptions(m));
        if !(self.p >= 1.0 && self.p.is_finite()) {
            return Err(Error::InvalidExponent(self.p));
        }
        if let Some(q) = self.q {
            if !(q >= 1.0 && q.is_finite()) {
                return bad(format!("q = {q} must be finite and >= 1"));
            }
        }
        if !(self.r > 0.0 && self.r.is_finite()) {
            return bad(format!("r = {} must be finite and > 0", self.r));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return bad(format!("alpha = {} must lie in [0, 1]", self.alpha));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return bad(format!("tolerance {} must be finite and > 0", self.tolerance));
        }
        if !(self.lambda.re.is_finite() && self.lambda.im.is_finite()) {
            return bad("lambda must be finite".into());
        }
        if let Some(pair) = self.pair {
            FunctionPair::new(pair.beta)?;
        }
        self.opts.validate()
    }

    /// Exponent conjugate to `p`, checked against `q` when one is given.
    pub(crate) fn conjugate(&self, id: &str) -> Result<f64> {
        let q = self.p / (self.p - 1.0);
        if let Some(given) = self.q {
            if (1.0 / self.p + 1.0 / given - 1.0).abs() > CONJUGACY_TOL {
                return Err(not_applicable(id, format!("q = {given} is not conjugate to p = {}", self.p)));
            }
        }
        Ok(q)
    }
}

pub(crate) fn not_applicable(id: &str, constraint: impl Into<String>) -> Error {
    Error::NotApplicable { id: id.to_string(), constraint: constraint.into() }
}

/// File form of the operands of a check.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primary: Option<OperatorTuple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux_a: Option<OperatorTuple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux_b: Option<OperatorTuple>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aux_x: Option<ComplexMatrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vectors: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scalars: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<[f64; 2]>,
}

impl CheckInput {
    /// Parameters with the operands filled in; a missing primary tuple
    /// becomes the 1×1 zero (the scalar and vector lemmas ignore it).
    pub fn into_params(self) -> CheckParams {
        let primary = self.primary.unwrap_or_else(|| OperatorTuple::single(ComplexMatrix::zeros(1)));
        let mut params = CheckParams::new(primary);
        params.aux_a = self.aux_a;
        params.aux_b = self.aux_b;
        params.aux_x = self.aux_x;
        params.vectors =
            self.vectors.into_iter().map(|v| v.into_iter().map(|[re, im]| C64::new(re, im)).collect()).collect();
        params.scalars = self.scalars;
        params.alphas = self.alphas;
        if let Some([re, im]) = self.lambda {
            params.lambda = C64::new(re, im);
        }
        params
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkReport {
    pub relation: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub p: f64,
    pub q: Option<f64>,
    pub r: f64,
    pub alpha: f64,
    pub alphas: Option<Vec<f64>>,
    pub lambda: [f64; 2],
    pub beta: Option<f64>,
    pub tolerance: f64,
    pub rng_seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    /// Sides and slack of the deciding link (the worst one).
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub verdict: Verdict,
    pub links: Vec<LinkReport>,
    pub witness: Option<UnitVector>,
    /// SHA-256 of the canonical JSON of the operands and parameters.
    pub digest: String,
    pub escalated: bool,
    pub params: ParamsEcho,
}

impl CheckReport {
    /// `slack / max(|lhs|, |rhs|, 1)` of the deciding link.
    pub fn relative_slack(&self) -> f64 {
        self.slack / self.lhs.abs().max(self.rhs.abs()).max(1.0)
    }
}

fn echo(params: &CheckParams) -> ParamsEcho {
    ParamsEcho {
        p: params.p,
        q: params.q,
        r: params.r,
        alpha: params.alpha,
        alphas: params.alphas.clone(),
        lambda: [params.lambda.re, params.lambda.im],
        beta: params.pair.map(|f| f.beta),
        tolerance: params.tolerance,
        rng_seed: params.opts.rng_seed,
    }
}

fn digest(id: &str, params: &CheckParams) -> String {
    #[derive(Serialize)]
    struct Canonical<'a> {
        id: &'a str,
        params: ParamsEcho,
        primary: &'a OperatorTuple,
        aux_a: &'a Option<OperatorTuple>,
        aux_b: &'a Option<OperatorTuple>,
        aux_x: &'a Option<ComplexMatrix>,
        vectors: Vec<Vec<[f64; 2]>>,
        scalars: &'a [f64],
    }
    let canonical = Canonical {
        id,
        params: echo(params),
        primary: &params.primary,
        aux_a: &params.aux_a,
        aux_b: &params.aux_b,
        aux_x: &params.aux_x,
        vectors: params.vectors.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect()).collect(),
        scalars: &params.scalars,
    };
    let bytes = serde_json::to_vec(&canonical).expect("canonical form serializes");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn worst(links: &[bound::Link], tol: f64) -> usize {
    let key = |l: &bound::Link| (l.verdict(tol), -l.slack() / l.scale());
    (0..links.len()).fold(0, |w, i| if key(&links[i]) > key(&links[w]) { i } else { w })
}

fn overall(links: &[bound::Link], tol: f64) -> Verdict {
    links.iter().map(|l| l.verdict(tol)).max().unwrap_or(Verdict::Holds)
}

/// Evaluates one entry with a caller-owned evaluator so that radii are shared
/// across parameter sweeps of the same inputs.
pub(crate) fn evaluate_with(ev: &mut Evaluator, entry: &InequalityCheck, params: &CheckParams) -> Result<CheckReport> {
    params.validate()?;
    entry.applicability.check(entry.id, params)?;
    let tol = params.tolerance;
    ev.begin_check();
    let mut links = entries::build(entry.id, ev, params)?;
    let mut escalated = false;
    if overall(&links, tol) != Verdict::Holds {
        if ev.polish()? {
            links = entries::build(entry.id, ev, params)?;
        }
        if overall(&links, tol) != Verdict::Holds {
            ev.set_certify(true);
            links = entries::build(entry.id, ev, params)?;
        }
        if overall(&links, tol) == Verdict::Inconclusive {
            ev.escalate()?;
            escalated = true;
            links = entries::build(entry.id, ev, params)?;
        }
    }
    if links.is_empty() {
        return Err(not_applicable(entry.id, "no relation applies to these inputs"));
    }
    let w = worst(&links, tol);
    let deciding = &links[w];
    let witness = deciding.lhs.witness.clone().or_else(|| deciding.rhs.witness.clone());
    Ok(CheckReport {
        id: entry.id.to_string(),
        lhs: deciding.lhs.est,
        rhs: deciding.rhs.est,
        slack: deciding.slack(),
        verdict: overall(&links, tol),
        links: links
            .iter()
            .map(|l| LinkReport {
                relation: l.relation.clone(),
                lhs: l.lhs.est,
                rhs: l.rhs.est,
                slack: l.slack(),
                verdict: l.verdict(tol),
            })
            .collect(),
        witness,
        digest: digest(entry.id, params),
        escalated,
        params: echo(params),
    })
}

pub fn evaluate_check(id: &str, params: &CheckParams) -> Result<CheckReport> {
    let entry = catalog_entry(id)?;
    let mut ev = Evaluator::new(params.opts.clone());
    evaluate_with(&mut ev, entry, params)
}

#[cfg(test)]
mod tests;
