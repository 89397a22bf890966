//! Cached radius evaluation shared by the quantities of one or more checks.
//!
//! Every `w_p` found by ascent is remembered together with its witness. The
//! witnesses of the quantities touched by the current check are exchanged as
//! starting points, so related radii such as `w_p(λT)` and `|λ|·w_p(T)` end
//! at the same maximizer before a verdict is drawn.

use std::collections::HashMap;

use super::bound::Q;
use crate::error::Result;
use crate::linalg::{from_cartesian, ComplexMatrix, UnitVector};
use crate::radius::{
    numerical_radius, wp_ascend_from, wp_radius_seeded, OperatorTuple, OptimizerOptions, RadiusEstimate,
};

/// Deviation below which a pair is treated as Hermitian for the exact
/// `w_2(B, C) = w(B + iC)` shortcut.
const SHORTCUT_HERMITIAN: f64 = 1e-14;

type Key = Vec<u64>;

fn matrix_key(key: &mut Key, a: &ComplexMatrix) {
    key.push(a.dim() as u64);
    for z in a.as_slice() {
        key.push(z.re.to_bits());
        key.push(z.im.to_bits());
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Source {
    Exact,
    Ascent,
}

struct Node {
    tuple: OperatorTuple,
    p: f64,
    est: RadiusEstimate,
    source: Source,
    hi: Option<f64>,
}

pub(crate) struct Evaluator {
    opts: OptimizerOptions,
    certify: bool,
    w_cache: HashMap<Key, RadiusEstimate>,
    index: HashMap<Key, usize>,
    nodes: Vec<Node>,
    touched: Vec<usize>,
    hints: Vec<UnitVector>,
}

impl Evaluator {
    pub fn new(opts: OptimizerOptions) -> Self {
        Self {
            opts,
            certify: false,
            w_cache: HashMap::new(),
            index: HashMap::new(),
            nodes: Vec::new(),
            touched: Vec::new(),
            hints: Vec::new(),
        }
    }

    pub fn begin_check(&mut self) {
        self.certify = false;
        self.touched.clear();
        self.hints.clear();
    }

    pub fn set_certify(&mut self, on: bool) {
        self.certify = on;
    }

    /// Extra starting point for the polish pass of the current check.
    pub fn hint(&mut self, x: UnitVector) {
        self.hints.push(x);
    }

    fn w_estimate(&mut self, a: &ComplexMatrix) -> Result<RadiusEstimate> {
        let mut key = Key::new();
        matrix_key(&mut key, a);
        if let Some(r) = self.w_cache.get(&key) {
            return Ok(r.clone());
        }
        let r = numerical_radius(a, &self.opts)?;
        self.w_cache.insert(key, r.clone());
        Ok(r)
    }

    pub fn w(&mut self, a: &ComplexMatrix) -> Result<Q> {
        let r = self.w_estimate(a)?;
        Ok(Q::enclosed(r.value, r.value, r.upper.unwrap_or(f64::INFINITY), Some(r.witness)))
    }

    /// `w_p(T)` with cached and cross-seeded ascent.
    pub fn wp(&mut self, t: &OperatorTuple, p: f64) -> Result<Q> {
        let mut key = vec![p.to_bits(), t.len() as u64];
        for op in t.operators() {
            matrix_key(&mut key, op);
        }
        let i = match self.index.get(&key) {
            Some(&i) => i,
            None => {
                let node = self.compute(t, p)?;
                self.nodes.push(node);
                let i = self.nodes.len() - 1;
                self.index.insert(key, i);
                i
            }
        };
        if !self.touched.contains(&i) {
            self.touched.push(i);
        }
        if self.certify && self.nodes[i].hi.is_none() {
            let hi = self.certified_upper(i)?;
            self.nodes[i].hi = Some(hi);
        }
        let node = &self.nodes[i];
        let hi = match node.source {
            Source::Exact => node.est.upper.unwrap_or(f64::INFINITY),
            Source::Ascent if self.certify => node.hi.unwrap_or(f64::INFINITY),
            Source::Ascent => f64::INFINITY,
        };
        Ok(Q::enclosed(node.est.value, node.est.value, hi, Some(node.est.witness.clone())))
    }

    fn seeds_for(&self, dim: usize) -> Vec<UnitVector> {
        let mut seeds: Vec<UnitVector> = Vec::new();
        let found = self.touched.iter().map(|&i| &self.nodes[i].est.witness);
        for x in found.chain(&self.hints) {
            if x.dim() == dim && !seeds.contains(x) {
                seeds.push(x.clone());
            }
        }
        seeds
    }

    fn compute(&mut self, t: &OperatorTuple, p: f64) -> Result<Node> {
        let ops: Vec<ComplexMatrix> = t.operators().iter().filter(|op| !op.is_zero()).cloned().collect();
        let exact = |est: RadiusEstimate| Node { tuple: t.clone(), p, est, source: Source::Exact, hi: None };
        match ops.len() {
            0 => return Ok(exact(numerical_radius(&ComplexMatrix::zeros(t.dim()), &self.opts)?)),
            1 => return Ok(exact(self.w_estimate(&ops[0])?)),
            2 if p == 2.0 && ops.iter().all(|op| op.hermitian_deviation() <= SHORTCUT_HERMITIAN * op.max_abs()) => {
                // w_e(B, C) = w(B + iC) for Hermitian B, C.
                let a = from_cartesian(&ops[0].hermitian_part(), &ops[1].hermitian_part());
                let mut est = self.w_estimate(&a)?;
                est.value = crate::radius::wp_objective(t, p, &est.witness)?;
                return Ok(exact(est));
            }
            _ => {}
        }
        let seeds = self.seeds_for(t.dim());
        let est = wp_radius_seeded(t, p, &self.opts, &seeds)?;
        Ok(Node { tuple: t.clone(), p, est, source: Source::Ascent, hi: None })
    }

    /// Upper bound for an ascent-based `w_p` from certified numerical radii:
    /// `w_p(T) ≤ (Σ w^p(T_i))^{1/p}`, and for a Hermitian pair also
    /// `w_p(B, C) ≤ 2^{max(0, 1/p − 1/2)} w(B + iC)`.
    fn certified_upper(&mut self, i: usize) -> Result<f64> {
        let (tuple, p) = (self.nodes[i].tuple.clone(), self.nodes[i].p);
        let mut sum = 0.0;
        for op in tuple.operators() {
            let r = self.w_estimate(op)?;
            sum += r.upper.unwrap_or(f64::INFINITY).powf(p);
        }
        let mut hi = sum.powf(1.0 / p);
        let ops = tuple.operators();
        if ops.len() == 2 && ops.iter().all(|op| op.is_hermitian(1e-12 * op.max_abs().max(1.0))) {
            let a = from_cartesian(&ops[0].hermitian_part(), &ops[1].hermitian_part());
            let r = self.w_estimate(&a)?;
            let factor = 2f64.powf((1.0 / p - 0.5).max(0.0));
            // Rounding from the Hermitian projection.
            let slop = 1e-12 * ops.iter().map(|op| op.max_abs()).sum::<f64>();
            hi = hi.min(factor * (r.upper.unwrap_or(f64::INFINITY) + slop));
        }
        Ok(hi)
    }

    /// Re-runs every ascent-based quantity of the current check from the
    /// witnesses of the others. Returns whether any value improved.
    pub fn polish(&mut self) -> Result<bool> {
        let mut improved = false;
        for k in 0..self.touched.len() {
            let i = self.touched[k];
            if self.nodes[i].source != Source::Ascent {
                continue;
            }
            let seeds = self.seeds_for(self.nodes[i].tuple.dim());
            let node = &self.nodes[i];
            if let Some(r) = wp_ascend_from(&node.tuple, node.p, &self.opts, &seeds)? {
                if r.value > node.est.value {
                    self.nodes[i].est = r;
                    improved = true;
                }
            }
        }
        Ok(improved)
    }

    /// One retry of the current check's ascent quantities with four times the
    /// restarts, twice the iterations and a fresh random stream.
    pub fn escalate(&mut self) -> Result<()> {
        let opts = self.opts.escalated();
        for k in 0..self.touched.len() {
            let i = self.touched[k];
            if self.nodes[i].source != Source::Ascent {
                continue;
            }
            let seeds = self.seeds_for(self.nodes[i].tuple.dim());
            let node = &self.nodes[i];
            let r = wp_radius_seeded(&node.tuple, node.p, &opts, &seeds)?;
            if r.value > node.est.value {
                self.nodes[i].est = r;
            }
        }
        self.polish()?;
        Ok(())
    }
}
