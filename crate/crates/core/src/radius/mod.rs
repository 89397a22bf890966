//! Numerical radius `w(A)` and the tuple radius `w_p(T_1, ..., T_n)`.

mod numerical;
mod wp;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, UnitVector};
use crate::rng::mix64;

pub use numerical::numerical_radius;
pub use wp::{wp_gradient, wp_objective, wp_radius, wp_radius_seeded};
pub(crate) use wp::wp_ascend_from;

/// Nonempty ordered tuple of equal-dimension matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTuple {
    operators: Vec<ComplexMatrix>,
}

impl OperatorTuple {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let first = operators.first().ok_or(Error::EmptyTuple)?;
        let dim = first.dim();
        if let Some(bad) = operators.iter().find(|t| t.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
        }
        Ok(Self { operators })
    }

    pub fn single(t: ComplexMatrix) -> Self {
        Self { operators: vec![t] }
    }

    pub fn pair(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn into_operators(self) -> Vec<ComplexMatrix> {
        self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.operators[0].dim()
    }

    pub fn map(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Self {
        Self { operators: self.operators.iter().map(f).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiusEstimate {
    /// Objective value at `witness`; a lower bound on the supremum.
    pub value: f64,
    /// Certified upper bound, only for `numerical_radius`.
    pub upper: Option<f64>,
    pub witness: UnitVector,
    pub restarts_used: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerOptions {
    pub restarts: usize,
    pub max_iters: usize,
    pub gtol: f64,
    pub theta_grid: usize,
    pub rng_seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self { restarts: 32, max_iters: 500, gtol: 1e-9, theta_grid: 720, rng_seed: 0 }
    }
}

impl OptimizerOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::InvalidOptions("restarts must be >= 1".into()));
        }
        if self.theta_grid < 8 {
            return Err(Error::InvalidOptions("theta_grid must be >= 8".into()));
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidOptions("max_iters must be >= 1".into()));
        }
        if !(self.gtol > 0.0 && self.gtol.is_finite()) {
            return Err(Error::InvalidOptions("gtol must be finite and > 0".into()));
        }
        Ok(())
    }

    /// Budget for a second attempt: four times the restarts, twice the
    /// iterations, and a fresh random stream.
    pub fn escalated(&self) -> Self {
        Self {
            restarts: self.restarts * 4,
            max_iters: self.max_iters * 2,
            rng_seed: mix64(self.rng_seed ^ 0xE5CA_1A7E),
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_validation() {
        assert_eq!(OperatorTuple::new(vec![]), Err(Error::EmptyTuple));
        let r = OperatorTuple::new(vec![ComplexMatrix::identity(2), ComplexMatrix::identity(3)]);
        assert_eq!(r, Err(Error::DimensionMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn options_validation() {
        assert!(OptimizerOptions::default().validate().is_ok());
        let bad = OptimizerOptions { restarts: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = OptimizerOptions { theta_grid: 7, ..Default::default() };
        assert!(bad.validate().is_err());
        let e = OptimizerOptions::default().escalated();
        assert_eq!((e.restarts, e.max_iters), (128, 1000));
    }
}
