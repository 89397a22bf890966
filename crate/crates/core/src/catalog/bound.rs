//! Estimated quantities with an enclosure `[lo, hi]`.
//!
//! Operator norms and spectral quantities are exact (`lo = est = hi`). A
//! numerical radius carries its certified upper bound. An ascent-based `w_p`
//! has `lo = est` and, unless certified separately, `hi = ∞`.

use serde::{Deserialize, Serialize};

use crate::linalg::UnitVector;

#[derive(Clone, Debug)]
pub(crate) struct Q {
    pub est: f64,
    pub lo: f64,
    pub hi: f64,
    pub witness: Option<UnitVector>,
}

impl Q {
    pub fn exact(v: f64) -> Self {
        Self { est: v, lo: v, hi: v, witness: None }
    }

    pub fn enclosed(est: f64, lo: f64, hi: f64, witness: Option<UnitVector>) -> Self {
        Self { est, lo: lo.min(est), hi: hi.max(est), witness }
    }

    /// Multiplication by a constant `c ≥ 0`.
    pub fn scale(self, c: f64) -> Self {
        debug_assert!(c >= 0.0);
        Self { est: self.est * c, lo: self.lo * c, hi: self.hi * c, ..self }
    }

    /// `self^e` for a nonnegative quantity and `e > 0`.
    pub fn powf(self, e: f64) -> Self {
        debug_assert!(e > 0.0);
        let f = |v: f64| v.max(0.0).powf(e);
        Self { est: f(self.est), lo: f(self.lo), hi: f(self.hi), ..self }
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    pub fn add(self, other: Self) -> Self {
        Self {
            est: self.est + other.est,
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
            witness: self.witness.or(other.witness),
        }
    }

    pub fn max(self, other: Self) -> Self {
        let witness = if other.est > self.est { other.witness } else { self.witness.or(other.witness) };
        Self { est: self.est.max(other.est), lo: self.lo.max(other.lo), hi: self.hi.max(other.hi), witness }
    }

    pub fn sum(items: impl IntoIterator<Item = Self>) -> Self {
        items.into_iter().fold(Q::exact(0.0), Q::add)
    }

    pub fn max_of(items: impl IntoIterator<Item = Self>) -> Self {
        items.into_iter().fold(Q::exact(0.0), Q::max)
    }

    /// `(Σ v_i^p)^{1/p}`.
    pub fn lp(items: impl IntoIterator<Item = Self>, p: f64) -> Self {
        Q::sum(items.into_iter().map(|q| q.powf(p))).powf(1.0 / p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    Inconclusive,
    Violation,
}

/// One `lhs ≤ rhs` relation of an entry.
#[derive(Clone, Debug)]
pub(crate) struct Link {
    pub relation: String,
    pub lhs: Q,
    pub rhs: Q,
}

pub(crate) fn le(relation: impl Into<String>, lhs: Q, rhs: Q) -> Link {
    Link { relation: relation.into(), lhs, rhs }
}

impl Link {
    pub fn scale(&self) -> f64 {
        self.lhs.est.abs().max(self.rhs.est.abs()).max(1.0)
    }

    pub fn slack(&self) -> f64 {
        self.rhs.est - self.lhs.est
    }

    /// HOLDS within the relative tolerance; VIOLATION only when the enclosures
    /// separate, so an estimate-only quantity on the larger side can never
    /// produce one.
    pub fn verdict(&self, tol: f64) -> Verdict {
        let band = tol * self.scale();
        if self.slack() >= -band {
            Verdict::Holds
        } else if self.lhs.lo - self.rhs.hi > band {
            Verdict::Violation
        } else {
            Verdict::Inconclusive
        }
    }
}
