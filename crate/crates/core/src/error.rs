use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (max |H - H*| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("operator tuple must be nonempty")]
    EmptyTuple,

    #[error("invalid exponent p = {0}; w_p requires p >= 1")]
    InvalidExponent(f64),

    #[error("objective is not differentiable at this point (p = 1 and |<T_{index} x, x>| = {modulus:e})")]
    NonsmoothPoint { index: usize, modulus: f64 },

    #[error("invalid optimizer options: {0}")]
    InvalidOptions(String),

    #[error("invalid ensemble spec: {0}")]
    InvalidSpec(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("check {id} not applicable: {constraint}")]
    NotApplicable { id: String, constraint: String },

    #[error("invalid suite config: {0}")]
    InvalidConfig(String),
}
