use super::eig::{hermitian_eig, hermitian_eigenvalues, DEFAULT_TOL};
use super::matrix::{ComplexMatrix, I};
#[cfg(test)]
use super::matrix::C64;
use crate::error::{Error, Result};

/// Eigenvalues at or above `-PSD_CLAMP * max(1, |λ|max)` are treated as zero.
pub const PSD_CLAMP: f64 = 1e-10;
/// Eigenvalues below `-PSD_REJECT * max(1, |λ|max)` make the input non-PSD.
pub const PSD_REJECT: f64 = 1e-8;

/// Largest singular value, `sqrt(λmax(T* T))`.
pub fn operator_norm(t: &ComplexMatrix) -> Result<f64> {
    let gram = (&t.adjoint() * t).hermitian_part();
    let ev = hermitian_eigenvalues(&gram)?;
    Ok(ev.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// `|T| = (T* T)^{1/2}`.
pub fn abs_operator(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    let gram = (&t.adjoint() * t).hermitian_part();
    psd_power(&gram, 0.5)
}

/// `H^beta` for positive semidefinite `H` through the spectral decomposition.
///
/// `0^0` is taken to be 1, so `psd_power(H, 0)` is the identity.
pub fn psd_power(h: &ComplexMatrix, beta: f64) -> Result<ComplexMatrix> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::InvalidMatrix(format!("power exponent {beta} must be finite and >= 0")));
    }
    let eig = hermitian_eig(h, DEFAULT_TOL)?;
    let scale = eig
        .eigenvalues
        .iter()
        .fold(1.0f64, |m, l| m.max(l.abs()));
    if let Some(&min) = eig.eigenvalues.first() {
        if min < -PSD_REJECT * scale {
            return Err(Error::NotPsd { eigenvalue: min });
        }
    }
    if beta == 1.0 {
        return Ok(h.hermitian_part());
    }
    Ok(eig.reconstruct_with(|l| {
        let l = if l < 0.0 { 0.0 } else { l };
        if beta == 0.0 {
            1.0
        } else {
            l.powf(beta)
        }
    }))
}

/// Cartesian decomposition `A = B + iC` with `B = (A + A*)/2`, `C = (A - A*)/(2i)`.
pub fn cartesian_parts(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let b = ComplexMatrix::from_fn(n, |i, j| (a.get(i, j) + a.get(j, i).conj()) * 0.5);
    let c = ComplexMatrix::from_fn(n, |i, j| (a.get(i, j) - a.get(j, i).conj()) / (I * 2.0));
    (b, c)
}

/// `B + iC`, the inverse of [`cartesian_parts`].
pub fn from_cartesian(b: &ComplexMatrix, c: &ComplexMatrix) -> ComplexMatrix {
    b + &c.scale(I)
}

/// `A^k` for small nonnegative integer `k`.
pub fn matrix_power(a: &ComplexMatrix, k: u32) -> ComplexMatrix {
    (0..k).fold(ComplexMatrix::identity(a.dim()), |acc, _| &acc * a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{draw_matrix, draw_unit_vector, EnsembleKind, EnsembleSpec};
    use crate::linalg::matrix::norm;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn ginibre(n: usize, seed: u64) -> ComplexMatrix {
        draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Ginibre, n, seed)).unwrap()
    }

    #[test]
    fn operator_norm_examples() {
        let t = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap();
        assert!((operator_norm(&t).unwrap() - 2.0).abs() < 1e-14);
        for n in 1..6 {
            assert!((operator_norm(&ComplexMatrix::identity(n)).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    /// Sphere sampling gives lower bounds on ‖T‖ that approach it from below.
    #[test]
    fn operator_norm_vs_sphere_sampling_seed_3() {
        let t = ginibre(4, 3);
        let nrm = operator_norm(&t).unwrap();
        let mut best: f64 = 0.0;
        for k in 0..100_000u64 {
            let x = draw_unit_vector(4, 1_000_000 + k);
            best = best.max(norm(&t.mul_vec(x.as_slice())));
        }
        assert!(best <= nrm + 1e-12, "sampled {best} above norm {nrm}");
        // A sampled lower bound on a 4-dim complex sphere is within ~1% of the top.
        assert!(nrm - best < 0.02 * nrm, "sampled {best}, norm {nrm}");
    }

    #[test]
    fn abs_operator_examples() {
        let t = ComplexMatrix::diag_real(&[-2.0, 3.0]);
        let a = abs_operator(&t).unwrap();
        assert!(a.frobenius_distance(&ComplexMatrix::diag_real(&[2.0, 3.0])) < 1e-14);

        let j = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let a = abs_operator(&j).unwrap();
        assert!(a.frobenius_distance(&ComplexMatrix::diag_real(&[0.0, 1.0])) < 1e-14);

        let u = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Unitary, 4, 21)).unwrap();
        let a = abs_operator(&u).unwrap();
        assert!(a.frobenius_distance(&ComplexMatrix::identity(4)) < 1e-10);
    }

    #[test]
    fn abs_operator_squares_to_gram() {
        for seed in 0..20 {
            let t = ginibre(1 + seed as usize % 6, seed);
            let a = abs_operator(&t).unwrap();
            let ev = hermitian_eigenvalues(&a).unwrap();
            assert!(ev[0] >= -1e-10);
            let gram = &t.adjoint() * &t;
            assert!((&a * &a).frobenius_distance(&gram) <= 1e-9);
        }
    }

    #[test]
    fn psd_power_examples() {
        let h = ComplexMatrix::diag_real(&[4.0, 9.0]);
        let r = psd_power(&h, 0.5).unwrap();
        assert!(r.frobenius_distance(&ComplexMatrix::diag_real(&[2.0, 3.0])) < 1e-14);

        let h = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Psd, 5, 11)).unwrap();
        let r = psd_power(&h, 0.5).unwrap();
        assert!((&r * &r).frobenius_distance(&h) <= 1e-9);
        assert!(psd_power(&h, 1.0).unwrap().frobenius_distance(&h) <= 1e-12);
        let id = psd_power(&h, 0.0).unwrap();
        assert!(id.frobenius_distance(&ComplexMatrix::identity(5)) < 1e-12);
    }

    #[test]
    fn psd_power_rejects_indefinite_and_clamps_rounding() {
        let h = ComplexMatrix::diag_real(&[1.0, -0.5]);
        assert!(matches!(psd_power(&h, 0.5), Err(Error::NotPsd { .. })));
        let h = ComplexMatrix::diag_real(&[1.0, -1e-12]);
        let r = psd_power(&h, 0.5).unwrap();
        assert_eq!(r.get(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn cartesian_examples() {
        let h = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Hermitian, 3, 2)).unwrap();
        let (b, cc) = cartesian_parts(&h);
        assert!(b.frobenius_distance(&h) < 1e-15);
        assert!(cc.frobenius_norm() < 1e-15);

        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let (b, cc) = cartesian_parts(&a);
        let eb = ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[0.5, 0.0]]).unwrap();
        let ec = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, -0.5)], vec![c(0.0, 0.5), c(0.0, 0.0)]])
            .unwrap();
        assert_eq!(b, eb);
        assert_eq!(cc, ec);
    }

    #[test]
    fn cartesian_identity_seed_5() {
        let a = ginibre(4, 5);
        let (b, cc) = cartesian_parts(&a);
        assert!(b.is_hermitian(1e-12) && cc.is_hermitian(1e-12));
        assert!(from_cartesian(&b, &cc).max_abs_diff(&a) < 1e-15);
        let lhs = &(&a.adjoint() * &a) + &(&a * &a.adjoint());
        let rhs = (&(&b * &b) + &(&cc * &cc)).scale_real(2.0);
        assert!(operator_norm(&(&lhs - &rhs)).unwrap() <= 1e-10);
    }

    #[test]
    fn scalar_case() {
        let a = ComplexMatrix::new(1, vec![c(3.0, -4.0)]).unwrap();
        assert!((operator_norm(&a).unwrap() - 5.0).abs() < 1e-14);
        assert!((abs_operator(&a).unwrap().get(0, 0) - c(5.0, 0.0)).norm() < 1e-14);
        assert_eq!(matrix_power(&a, 2).get(0, 0), c(3.0, -4.0) * c(3.0, -4.0));
    }
}
