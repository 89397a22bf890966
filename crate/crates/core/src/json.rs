//! Wire formats shared by the library and the CLI.
//!
//! ```text
//! matrix  {"dim": n, "entries": [[[re, im], ...], ...]}   row-major
//! tuple   {"dim": n, "operators": [<matrix>, ...]}
//! vector  [[re, im], ...]
//! ```

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{ComplexMatrix, UnitVector, C64};
use crate::radius::OperatorTuple;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries = self.rows().into_iter().map(|r| r.into_iter().map(|z| [z.re, z.im]).collect()).collect();
        MatrixJson { dim: self.dim(), entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = MatrixJson::deserialize(d)?;
        if m.entries.len() != m.dim {
            return Err(D::Error::custom(format!("dim {} but {} rows", m.dim, m.entries.len())));
        }
        let rows: Vec<Vec<C64>> =
            m.entries.iter().map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
        ComplexMatrix::from_rows(&rows).map_err(D::Error::custom)
    }
}

#[derive(Serialize)]
struct TupleJsonRef<'a> {
    dim: usize,
    operators: &'a [ComplexMatrix],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TupleJson {
    dim: usize,
    operators: Vec<ComplexMatrix>,
}

impl Serialize for OperatorTuple {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TupleJsonRef { dim: self.dim(), operators: self.operators() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for OperatorTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = TupleJson::deserialize(d)?;
        let tuple = OperatorTuple::new(t.operators).map_err(D::Error::custom)?;
        if tuple.dim() != t.dim {
            return Err(D::Error::custom(format!("dim {} but operators are {}x{}", t.dim, tuple.dim(), tuple.dim())));
        }
        Ok(tuple)
    }
}

impl Serialize for UnitVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<[f64; 2]> = self.as_slice().iter().map(|z| [z.re, z.im]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<[f64; 2]>::deserialize(d)?;
        UnitVector::new(v.into_iter().map(|[re, im]| C64::new(re, im)).collect()).map_err(D::Error::custom)
    }
}
