//! Numerical radius, Euclidean operator radius and the tuple radius `w_p`
//! of complex matrices, with a catalog of operator inequalities checked by
//! seeded randomized testing.

pub mod ensembles;
pub mod error;
pub mod json;
pub mod catalog;
pub mod linalg;
pub mod radius;
pub mod rng;
pub mod suite;

pub use catalog::{
    catalog_list, evaluate_check, CheckInput, CheckParams, CheckReport, FunctionPair, InequalityCheck, Verdict,
};
pub use ensembles::{EnsembleKind, EnsembleSpec};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianEig, UnitVector, C64};
pub use radius::{numerical_radius, wp_gradient, wp_radius, OperatorTuple, OptimizerOptions, RadiusEstimate};
pub use suite::{run_suite, ParamGrid, SuiteConfig, SuiteReport};
