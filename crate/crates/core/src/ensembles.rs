//! Seeded matrix, tuple and unit-vector generators.
//!
//! Every draw is a pure function of its spec. Matrix entries are taken from
//! `Stream::new(seed)` in row-major order, one complex normal per entry;
//! tuple element `i` uses the seed `Stream::new(seed).derive_seed(i)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inner, ComplexMatrix, UnitVector, C64};
use crate::radius::OperatorTuple;
use crate::rng::Stream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    Ginibre,
    Hermitian,
    Psd,
    Unitary,
    NilpotentJordan,
    Diagonal,
    Tuple,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dim: usize,
    #[serde(default = "one")]
    pub length: usize,
    pub seed: u64,
    #[serde(default = "unit_scale")]
    pub scale: f64,
    /// Element kind for `kind = tuple`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<EnsembleKind>,
}

fn one() -> usize {
    1
}

fn unit_scale() -> f64 {
    1.0
}

impl EnsembleSpec {
    pub fn matrix(kind: EnsembleKind, dim: usize, seed: u64) -> Self {
        Self { kind, dim, length: 1, seed, scale: 1.0, element: None }
    }

    pub fn tuple(element: EnsembleKind, dim: usize, length: usize, seed: u64) -> Self {
        Self { kind: EnsembleKind::Tuple, dim, length, seed, scale: 1.0, element: Some(element) }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidSpec("dim must be >= 1".into()));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(Error::InvalidSpec(format!("scale {} must be finite and > 0", self.scale)));
        }
        if self.kind == EnsembleKind::Tuple {
            if self.length == 0 {
                return Err(Error::InvalidSpec("tuple length must be >= 1".into()));
            }
            match self.element {
                None => return Err(Error::InvalidSpec("tuple spec needs an element kind".into())),
                Some(EnsembleKind::Tuple) => {
                    return Err(Error::InvalidSpec("tuple elements cannot be tuples".into()))
                }
                Some(_) => {}
            }
        }
        Ok(())
    }
}

fn ginibre(n: usize, rng: &mut Stream) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| rng.complex_normal())
}

/// Modified Gram–Schmidt on the columns of `g`.
fn orthonormalize_columns(g: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| (0..n).map(|i| g.get(i, j)).collect()).collect();
    for j in 0..n {
        for k in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let q = &done[k];
            let proj = inner(&rest[0], q);
            for (v, qi) in rest[0].iter_mut().zip(q) {
                *v -= proj * qi;
            }
        }
        let nrm = crate::linalg::norm(&cols[j]);
        if nrm < 1e-12 {
            return Err(Error::InvalidSpec("Ginibre draw is numerically singular".into()));
        }
        cols[j].iter_mut().for_each(|v| *v /= nrm);
    }
    Ok(ComplexMatrix::from_fn(n, |i, j| cols[j][i]))
}

fn draw_kind(kind: EnsembleKind, n: usize, seed: u64, scale: f64) -> Result<ComplexMatrix> {
    let mut rng = Stream::new(seed);
    let m = match kind {
        EnsembleKind::Ginibre => ginibre(n, &mut rng),
        EnsembleKind::Hermitian => ginibre(n, &mut rng).hermitian_part(),
        EnsembleKind::Psd => {
            let g = ginibre(n, &mut rng);
            (&g.adjoint() * &g).hermitian_part()
        }
        EnsembleKind::Unitary => return orthonormalize_columns(&ginibre(n, &mut rng)),
        EnsembleKind::NilpotentJordan => {
            ComplexMatrix::from_fn(n, |i, j| if j == i + 1 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
        }
        EnsembleKind::Diagonal => {
            let d: Vec<C64> = (0..n).map(|_| rng.complex_normal()).collect();
            ComplexMatrix::from_fn(n, |i, j| if i == j { d[i] } else { C64::new(0.0, 0.0) })
        }
        EnsembleKind::Tuple => return Err(Error::InvalidSpec("use draw_tuple for tuple specs".into())),
    };
    Ok(if scale == 1.0 { m } else { m.scale_real(scale) })
}

/// Unitary draws ignore `scale`, so they stay isometries.
pub fn draw_matrix(spec: &EnsembleSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    draw_kind(spec.kind, spec.dim, spec.seed, spec.scale)
}

pub fn draw_tuple(spec: &EnsembleSpec) -> Result<OperatorTuple> {
    spec.validate()?;
    let element = match (spec.kind, spec.element) {
        (EnsembleKind::Tuple, Some(e)) => e,
        _ => return Err(Error::InvalidSpec("draw_tuple needs kind = tuple".into())),
    };
    let root = Stream::new(spec.seed);
    let ops = (0..spec.length)
        .map(|i| draw_kind(element, spec.dim, root.derive_seed(i as u64), spec.scale))
        .collect::<Result<Vec<_>>>()?;
    OperatorTuple::new(ops)
}

pub fn draw_unit_vector(dim: usize, seed: u64) -> UnitVector {
    unit_vector_from(dim, &mut Stream::new(seed))
}

/// Unit vector drawn from an existing stream.
pub fn unit_vector_from(dim: usize, rng: &mut Stream) -> UnitVector {
    assert!(dim >= 1, "unit vectors need dim >= 1");
    loop {
        let v: Vec<C64> = (0..dim).map(|_| rng.complex_normal()).collect();
        if let Ok(u) = UnitVector::normalize(v) {
            return u;
        }
    }
}
