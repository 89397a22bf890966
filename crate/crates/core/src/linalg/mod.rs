//! Dense complex linear algebra at desk scale: matrices, Hermitian
//! eigendecomposition and the spectral functions built on it.

mod eig;
mod functions;
mod matrix;

pub use eig::{hermitian_eig, hermitian_eigenvalues, HermitianEig, DEFAULT_TOL, HERMITIAN_TOL, MAX_SWEEPS};
pub(crate) use eig::{extreme_eigenvalues_scratch, max_eigenvalue_scratch};
pub use functions::{
    abs_operator, cartesian_parts, from_cartesian, matrix_power, operator_norm, psd_power, PSD_CLAMP,
    PSD_REJECT,
};
pub use matrix::{inner, norm, ComplexMatrix, UnitVector, C64, I};
