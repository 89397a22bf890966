//! Fixed inputs for the benchmarks.

use opradius_core::ensembles::{draw_matrix, draw_tuple};
use opradius_core::{ComplexMatrix, EnsembleKind, EnsembleSpec, OperatorTuple};

pub const DIMS: [usize; 3] = [2, 4, 8];

pub fn ginibre(dim: usize) -> ComplexMatrix {
    draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Ginibre, dim, 17)).expect("valid spec")
}

pub fn hermitian(dim: usize) -> ComplexMatrix {
    draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Hermitian, dim, 17)).expect("valid spec")
}

pub fn pair(dim: usize) -> OperatorTuple {
    draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, dim, 2, 17)).expect("valid spec")
}
