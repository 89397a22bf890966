//! `w(A) = max_θ λmax(H(θ))` with `H(θ) = Re(e^{iθ} A) = cos θ·B − sin θ·C`.
//!
//! The grid uses `λmax(H(θ + π)) = −λmin(H(θ))`, so an even grid needs only
//! half as many eigenvalue solves. Every grid cell that is a local maximum
//! and lies within `‖A‖·h` of the best grid value is refined by golden-section
//! search on its two neighbouring cells.

use std::f64::consts::{PI, TAU};

use super::{OptimizerOptions, RadiusEstimate};
use crate::error::Result;
use crate::linalg::{
    extreme_eigenvalues_scratch, hermitian_eig, max_eigenvalue_scratch, operator_norm, ComplexMatrix,
    UnitVector, C64, DEFAULT_TOL,
};

const GOLDEN_WIDTH: f64 = 1e-10;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

struct Pencil {
    n: usize,
    b: Vec<C64>,
    c: Vec<C64>,
    scratch: Vec<C64>,
}

impl Pencil {
    fn new(a: &ComplexMatrix) -> Self {
        let n = a.dim();
        let mut b = vec![C64::new(0.0, 0.0); n * n];
        let mut c = b.clone();
        for i in 0..n {
            for j in 0..n {
                let aij = a.get(i, j);
                let aji = a.get(j, i).conj();
                b[i * n + j] = (aij + aji) * 0.5;
                // (A − A*)/(2i)
                let d = (aij - aji) * 0.5;
                c[i * n + j] = C64::new(d.im, -d.re);
            }
        }
        Self { n, b, c, scratch: vec![C64::new(0.0, 0.0); n * n] }
    }

    fn load(&mut self, theta: f64) {
        let (s, co) = theta.sin_cos();
        for ((h, b), c) in self.scratch.iter_mut().zip(&self.b).zip(&self.c) {
            *h = b * co - c * s;
        }
    }

    fn matrix(&self, theta: f64) -> ComplexMatrix {
        let (s, co) = theta.sin_cos();
        let data = self.b.iter().zip(&self.c).map(|(b, c)| b * co - c * s).collect();
        ComplexMatrix::new(self.n, data).expect("finite pencil").hermitian_part()
    }

    fn lambda_max(&mut self, theta: f64) -> Result<f64> {
        self.load(theta);
        max_eigenvalue_scratch(&mut self.scratch, self.n)
    }

    fn extremes(&mut self, theta: f64) -> Result<(f64, f64)> {
        self.load(theta);
        extreme_eigenvalues_scratch(&mut self.scratch, self.n)
    }
}

fn golden_max(pencil: &mut Pencil, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = pencil.lambda_max(x1)?;
    let mut f2 = pencil.lambda_max(x2)?;
    while hi - lo > GOLDEN_WIDTH {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = pencil.lambda_max(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = pencil.lambda_max(x1)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

pub fn numerical_radius(a: &ComplexMatrix, opts: &OptimizerOptions) -> Result<RadiusEstimate> {
    opts.validate()?;
    let n = a.dim();
    if a.is_zero() {
        return Ok(RadiusEstimate {
            value: 0.0,
            upper: Some(0.0),
            witness: UnitVector::basis(n, 0),
            restarts_used: 0,
            converged: true,
        });
    }
    let norm_a = operator_norm(a)?;
    let grid = opts.theta_grid;
    let h = TAU / grid as f64;
    let mut pencil = Pencil::new(a);

    let mut f = vec![0.0; grid];
    if grid.is_multiple_of(2) {
        let half = grid / 2;
        for k in 0..half {
            let (lo, hi) = pencil.extremes(k as f64 * h)?;
            f[k] = hi;
            f[k + half] = -lo;
        }
    } else {
        for (k, fk) in f.iter_mut().enumerate() {
            *fk = pencil.lambda_max(k as f64 * h)?;
        }
    }

    let (mut best_theta, mut best) = f
        .iter()
        .enumerate()
        .fold((0.0, f64::NEG_INFINITY), |acc, (k, &v)| if v > acc.1 { (k as f64 * h, v) } else { acc });
    let grid_best = best;
    let threshold = grid_best - norm_a * h;
    let mut refined = 0;
    for k in 0..grid {
        let prev = f[(k + grid - 1) % grid];
        let next = f[(k + 1) % grid];
        if f[k] < threshold || f[k] < prev || f[k] < next {
            continue;
        }
        let theta = k as f64 * h;
        let (t, v) = golden_max(&mut pencil, theta - h, theta + h)?;
        refined += 1;
        if v > best {
            best = v;
            best_theta = t;
        }
    }

    let eig = hermitian_eig(&pencil.matrix(best_theta), DEFAULT_TOL)?;
    let x = UnitVector::normalize(eig.eigenvector(n - 1))?.gauge_fixed();
    let value = a.quadratic_form(x.as_slice()).norm();
    // The true maximizer lies within h/2 of a grid point and λmax is
    // ‖A‖-Lipschitz in θ, so w(A) ≤ grid_best + ‖A‖·π/grid.
    let upper = value.max(best).max(grid_best) + norm_a * PI / grid as f64;
    Ok(RadiusEstimate { value, upper: Some(upper), witness: x, restarts_used: refined, converged: true })
}
