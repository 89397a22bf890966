//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation zeroes one off-diagonal pair `(p, q)` with the unitary
//! `[[c, s e^{iφ}], [-s e^{-iφ}, c]]`, where `φ = arg a_pq`. Sweeps visit the
//! pairs in row-major order and stop once the off-diagonal Frobenius mass
//! drops below `tol * ‖H‖_F`.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Entrywise tolerance for the Hermitian precondition, relative to `max(1, max|h_ij|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        let n = self.eigenvalues.len();
        (0..n).map(|i| self.eigenvectors.get(i, k)).collect()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// `V diag(f(λ)) V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| v.get(i, k) * v.get(j, k).conj() * fl[k]).sum()
        });
        // Force exact Hermitian symmetry; the formula above is symmetric only up to rounding.
        out = out.hermitian_part();
        out
    }
}

fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    let deviation = h.hermitian_deviation();
    if deviation > HERMITIAN_TOL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

pub fn hermitian_eig(h: &ComplexMatrix, tol: f64) -> Result<HermitianEig> {
    check_hermitian(h)?;
    let n = h.dim();
    let mut a = h.hermitian_part().as_slice().to_vec();
    let mut v = ComplexMatrix::identity(n).as_slice().to_vec();
    jacobi_in_place(&mut a, n, Some(&mut v), tol)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let eigenvalues = order.iter().map(|&k| a[k * n + k].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[i * n + order[j]]);
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    let n = h.dim();
    let mut a = h.hermitian_part().as_slice().to_vec();
    jacobi_in_place(&mut a, n, None, DEFAULT_TOL)?;
    let mut ev: Vec<f64> = (0..n).map(|k| a[k * n + k].re).collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

/// Largest eigenvalue of the Hermitian matrix held row-major in `a`.
///
/// `a` is used as scratch and is destroyed. The caller guarantees Hermitian
/// symmetry; no precondition check is made on this hot path.
pub(crate) fn max_eigenvalue_scratch(a: &mut [C64], n: usize) -> Result<f64> {
    match n {
        1 => Ok(a[0].re),
        2 => {
            let (p, q) = (a[0].re, a[3].re);
            let half = 0.5 * (p - q);
            Ok(0.5 * (p + q) + half.hypot(a[1].norm()))
        }
        _ => {
            jacobi_in_place(a, n, None, DEFAULT_TOL)?;
            Ok((0..n).map(|k| a[k * n + k].re).fold(f64::NEG_INFINITY, f64::max))
        }
    }
}

/// Smallest and largest eigenvalue, with the same scratch contract as
/// [`max_eigenvalue_scratch`].
pub(crate) fn extreme_eigenvalues_scratch(a: &mut [C64], n: usize) -> Result<(f64, f64)> {
    match n {
        1 => Ok((a[0].re, a[0].re)),
        2 => {
            let (p, q) = (a[0].re, a[3].re);
            let mid = 0.5 * (p + q);
            let rad = (0.5 * (p - q)).hypot(a[1].norm());
            Ok((mid - rad, mid + rad))
        }
        _ => {
            jacobi_in_place(a, n, None, DEFAULT_TOL)?;
            Ok((0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), k| {
                let l = a[k * n + k].re;
                (lo.min(l), hi.max(l))
            }))
        }
    }
}

fn off_diagonal_mass(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[i * n + j].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

pub(crate) fn jacobi_in_place(
    a: &mut [C64],
    n: usize,
    mut v: Option<&mut [C64]>,
    tol: f64,
) -> Result<()> {
    let fro = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let thresh = tol * fro;
    let zero = C64::new(0.0, 0.0);

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(a, n) <= thresh {
            return Ok(());
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + tau.hypot(1.0))
                } else {
                    -1.0 / (-tau + tau.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                let sp = phase * s;
                let spc = sp.conj();

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - spc * akq;
                    a[k * n + q] = sp * akp + akq * c;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - sp * aqk;
                    a[q * n + k] = spc * apk + aqk * c;
                }
                a[p * n + q] = zero;
                a[q * n + p] = zero;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;

                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * c - spc * vkq;
                        v[k * n + q] = sp * vkp + vkq * c;
                    }
                }
            }
        }
    }
    let off = off_diagonal_mass(a, n);
    if off <= thresh {
        Ok(())
    } else {
        Err(Error::NoConvergence { sweeps: MAX_SWEEPS, off })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{draw_matrix, EnsembleKind, EnsembleSpec};

    fn assert_eig_invariants(h: &ComplexMatrix, eig: &HermitianEig) {
        let n = h.dim();
        let rec = eig.reconstruct_with(|l| l);
        assert!(rec.frobenius_distance(&h.hermitian_part()) <= 1e-10, "reconstruction");
        let v = &eig.eigenvectors;
        let vv = &v.adjoint() * v;
        assert!(vv.frobenius_distance(&ComplexMatrix::identity(n)) <= 1e-10, "orthonormality");
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]), "ascending");
    }

    #[test]
    fn diagonal_input() {
        let h = ComplexMatrix::diag_real(&[1.0, 2.0]);
        let eig = hermitian_eig(&h, DEFAULT_TOL).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0]);
        assert_eq!(eig.eigenvectors, ComplexMatrix::identity(2));
    }

    #[test]
    fn swap_matrix() {
        let h = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let eig = hermitian_eig(&h, DEFAULT_TOL).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-15);
        assert_eig_invariants(&h, &eig);
    }

    #[test]
    fn random_hermitian_seed_7_reconstructs() {
        let h = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Hermitian, 5, 7)).unwrap();
        let eig = hermitian_eig(&h, DEFAULT_TOL).unwrap();
        assert_eig_invariants(&h, &eig);
        let again = hermitian_eig(&h, DEFAULT_TOL).unwrap();
        assert_eq!(eig.eigenvalues, again.eigenvalues);
        assert_eq!(eig.eigenvectors, again.eigenvectors);
    }

    #[test]
    fn complex_phases_and_degenerate_spectrum() {
        for seed in 0..40 {
            let n = 1 + (seed as usize % 8);
            let h = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Hermitian, n, seed)).unwrap();
            let eig = hermitian_eig(&h, DEFAULT_TOL).unwrap();
            assert_eig_invariants(&h, &eig);
            let fast = max_eigenvalue_scratch(&mut h.as_slice().to_vec(), n).unwrap();
            assert!((fast - eig.max_eigenvalue()).abs() < 1e-12 * (1.0 + fast.abs()));
            let (lo, hi) = extreme_eigenvalues_scratch(&mut h.as_slice().to_vec(), n).unwrap();
            assert!((lo - eig.eigenvalues[0]).abs() < 1e-12 * (1.0 + lo.abs()));
            assert!((hi - fast).abs() < 1e-12 * (1.0 + hi.abs()));
        }
        let h = ComplexMatrix::identity(4).scale_real(3.0);
        let eig = hermitian_eig(&h, DEFAULT_TOL).unwrap();
        assert_eq!(eig.eigenvalues, vec![3.0; 4]);
        let z = ComplexMatrix::zeros(3);
        assert_eq!(hermitian_eig(&z, DEFAULT_TOL).unwrap().eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(hermitian_eig(&a, DEFAULT_TOL), Err(Error::NotHermitian { .. })));
    }
}
