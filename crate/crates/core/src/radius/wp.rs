//! `w_p(T) = sup_{‖x‖=1} (Σ_i |⟨T_i x, x⟩|^p)^{1/p}` by multi-start projected
//! gradient ascent on the unit sphere.
//!
//! Writing `T_i = B_i + i C_i` with Hermitian parts, `z_i = a_i + i b_i` where
//! `a_i = ⟨B_i x, x⟩` and `b_i = ⟨C_i x, x⟩` are real. The ascent works on
//! `F(x) = Σ |z_i|^p` with the tuple scaled by `1 / max_i ‖T_i‖_F`.
//!
//! Each start takes Armijo-backtracked steps `x ← (x + t g_t)/‖x + t g_t‖`.
//! The first trial step is 1; later ones use the Barzilai–Borwein length
//! `‖s‖² / |Re⟨s, y⟩|` from the previous step `s` and gradient change `y`.
//! All starts run a short screening budget, then only the best few continue
//! to `max_iters`.

use super::{OperatorTuple, OptimizerOptions, RadiusEstimate};
use crate::ensembles::unit_vector_from;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, inner, norm, ComplexMatrix, UnitVector, C64, DEFAULT_TOL};
use crate::rng::Stream;

const ARMIJO: f64 = 1e-4;
const SHRINK: f64 = 0.5;
const MAX_BACKTRACKS: usize = 40;
const STEP_MIN: f64 = 1e-10;
const STEP_MAX: f64 = 1e10;
/// Terms with `|z_i|` at or below this contribute nothing to the gradient.
const GRAD_FLOOR: f64 = 1e-14;
const NONSMOOTH_FLOOR: f64 = 1e-12;
/// Relative size of rounding noise in evaluations of `F`.
const NOISE: f64 = 1e-13;
const SCREEN_ITERS: usize = 25;
const SURVIVORS: usize = 4;

fn check_exponent(p: f64) -> Result<()> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidExponent(p));
    }
    Ok(())
}

fn check_vector(t: &OperatorTuple, x: &UnitVector) -> Result<()> {
    if x.dim() != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), found: x.dim() });
    }
    Ok(())
}

/// `(Σ_i |⟨T_i x, x⟩|^p)^{1/p}`.
pub fn wp_objective(t: &OperatorTuple, p: f64, x: &UnitVector) -> Result<f64> {
    check_exponent(p)?;
    check_vector(t, x)?;
    let s: f64 = t.operators().iter().map(|op| op.quadratic_form(x.as_slice()).norm().powf(p)).sum();
    Ok(s.powf(1.0 / p))
}

/// Tangent gradient of `F(x) = Σ|⟨T_i x, x⟩|^p` at `x`.
///
/// Returns `g − ⟨g, x⟩x` for `g = Σ p|z_i|^{p−2}(conj(z_i) T_i x + z_i T_i* x)/2`;
/// the derivative of `F` along a tangent direction `d` is `2 Re⟨d, g⟩`.
pub fn wp_gradient(t: &OperatorTuple, p: f64, x: &UnitVector) -> Result<Vec<C64>> {
    check_exponent(p)?;
    check_vector(t, x)?;
    let x = x.as_slice();
    let n = x.len();
    let mut g = vec![C64::new(0.0, 0.0); n];
    let mut tx = vec![C64::new(0.0, 0.0); n];
    let mut tsx = vec![C64::new(0.0, 0.0); n];
    for (i, op) in t.operators().iter().enumerate() {
        op.mul_vec_into(x, &mut tx);
        let z = inner(&tx, x);
        let m = z.norm();
        if p == 1.0 && m <= NONSMOOTH_FLOOR {
            return Err(Error::NonsmoothPoint { index: i, modulus: m });
        }
        if m <= GRAD_FLOOR {
            continue;
        }
        op.adjoint_mul_vec_into(x, &mut tsx);
        let w = 0.5 * p * m.powf(p - 2.0);
        for k in 0..n {
            g[k] += (z.conj() * tx[k] + z * tsx[k]) * w;
        }
    }
    let gx = inner(&g, x);
    Ok(g.iter().zip(x).map(|(gk, xk)| gk - gx * xk).collect())
}

/// Hermitian parts of the scaled tuple, flattened row-major.
struct Problem {
    n: usize,
    p: f64,
    parts: Vec<(Vec<C64>, Vec<C64>)>,
    u: Vec<C64>,
    v: Vec<C64>,
}

#[inline]
fn herm_apply(h: &[C64], x: &[C64], out: &mut [C64]) -> f64 {
    let n = x.len();
    let mut q = 0.0;
    for (i, o) in out.iter_mut().enumerate() {
        let row = &h[i * n..(i + 1) * n];
        let mut acc = C64::new(0.0, 0.0);
        for (a, b) in row.iter().zip(x) {
            acc += a * b;
        }
        *o = acc;
        q += acc.re * x[i].re + acc.im * x[i].im;
    }
    q
}

impl Problem {
    fn new(t: &OperatorTuple, p: f64) -> Option<Self> {
        let scale = t.operators().iter().map(ComplexMatrix::frobenius_norm).fold(0.0, f64::max);
        if scale == 0.0 {
            return None;
        }
        let n = t.dim();
        let parts = t
            .operators()
            .iter()
            .filter(|op| !op.is_zero())
            .map(|op| {
                let mut b = vec![C64::new(0.0, 0.0); n * n];
                let mut c = b.clone();
                for i in 0..n {
                    for j in 0..n {
                        let aij = op.get(i, j) / scale;
                        let aji = op.get(j, i).conj() / scale;
                        b[i * n + j] = (aij + aji) * 0.5;
                        let d = (aij - aji) * 0.5;
                        c[i * n + j] = C64::new(d.im, -d.re);
                    }
                }
                (b, c)
            })
            .collect();
        let zero = vec![C64::new(0.0, 0.0); n];
        Some(Self { n, p, parts, u: zero.clone(), v: zero })
    }

    fn value(&mut self, x: &[C64]) -> f64 {
        let mut f = 0.0;
        for (b, c) in &self.parts {
            let a = herm_apply(b, x, &mut self.u);
            let bb = herm_apply(c, x, &mut self.v);
            f += a.hypot(bb).powf(self.p);
        }
        f
    }

    /// Objective and the tangent gradient written into `gt`.
    fn value_and_tangent(&mut self, x: &[C64], gt: &mut [C64]) -> f64 {
        gt.iter_mut().for_each(|g| *g = C64::new(0.0, 0.0));
        let mut f = 0.0;
        for (b, c) in &self.parts {
            let a = herm_apply(b, x, &mut self.u);
            let bb = herm_apply(c, x, &mut self.v);
            let m = a.hypot(bb);
            f += m.powf(self.p);
            if m <= GRAD_FLOOR {
                continue;
            }
            let w = self.p * m.powf(self.p - 2.0);
            let (wa, wb) = (w * a, w * bb);
            for k in 0..self.n {
                gt[k] += self.u[k] * wa + self.v[k] * wb;
            }
        }
        let gx = inner(gt, x);
        for (g, xk) in gt.iter_mut().zip(x) {
            *g -= gx * xk;
        }
        f
    }
}

fn retract(x: &[C64], d: &[C64], step: f64, out: &mut [C64]) {
    for ((o, a), b) in out.iter_mut().zip(x).zip(d) {
        *o = a + b * step;
    }
    let nrm = norm(out);
    out.iter_mut().for_each(|z| *z /= nrm);
}

struct Ascent {
    x: Vec<C64>,
    f: f64,
    gt: Vec<C64>,
    prev: Option<(Vec<C64>, Vec<C64>)>,
    iters: usize,
    converged: bool,
    done: bool,
}

impl Ascent {
    fn start(problem: &mut Problem, x: Vec<C64>) -> Self {
        let mut gt = vec![C64::new(0.0, 0.0); x.len()];
        let f = problem.value_and_tangent(&x, &mut gt);
        Self { x, f, gt, prev: None, iters: 0, converged: false, done: false }
    }

    fn run(&mut self, problem: &mut Problem, until: usize, gtol: f64) {
        let n = self.x.len();
        let mut trial = vec![C64::new(0.0, 0.0); n];
        let mut gt_new = vec![C64::new(0.0, 0.0); n];
        while !self.done && self.iters < until {
            let gnorm = norm(&self.gt);
            if gnorm < gtol {
                self.converged = true;
                self.done = true;
                return;
            }
            let mut step = match &self.prev {
                None => 1.0,
                Some((s, y)) => {
                    let sy = inner(s, y).re.abs();
                    let ss = inner(s, s).re;
                    if sy > 0.0 {
                        (ss / sy).clamp(STEP_MIN, STEP_MAX)
                    } else {
                        1.0
                    }
                }
            };
            let slope = 2.0 * gnorm * gnorm;
            let noise = NOISE * self.f.abs();
            let first = step;
            let mut accepted = false;
            for _ in 0..MAX_BACKTRACKS {
                retract(&self.x, &self.gt, step, &mut trial);
                let ft = problem.value(&trial);
                if ft >= self.f + ARMIJO * step * slope {
                    accepted = true;
                    break;
                }
                if step * slope <= noise {
                    break;
                }
                step *= SHRINK;
            }
            if !accepted {
                // The predicted gain is below the rounding level of F, so
                // function values cannot steer any more. Take the full trial
                // step as long as F does not drop beyond that level.
                retract(&self.x, &self.gt, first, &mut trial);
                if problem.value(&trial) < self.f - noise {
                    self.iters += 1;
                    self.done = true;
                    return;
                }
            }
            self.iters += 1;
            let f_new = problem.value_and_tangent(&trial, &mut gt_new);
            let s: Vec<C64> = trial.iter().zip(&self.x).map(|(a, b)| a - b).collect();
            let y: Vec<C64> = gt_new.iter().zip(&self.gt).map(|(a, b)| a - b).collect();
            self.prev = Some((s, y));
            std::mem::swap(&mut self.x, &mut trial);
            std::mem::swap(&mut self.gt, &mut gt_new);
            self.f = f_new;
        }
        if norm(&self.gt) < gtol {
            self.converged = true;
            self.done = true;
        }
    }
}

fn top_abs_eigenvector(h: &ComplexMatrix) -> Result<Option<Vec<C64>>> {
    if h.is_zero() {
        return Ok(None);
    }
    let eig = hermitian_eig(h, DEFAULT_TOL)?;
    let n = eig.eigenvalues.len();
    let k = if eig.eigenvalues[0].abs() > eig.eigenvalues[n - 1].abs() { 0 } else { n - 1 };
    Ok(Some(eig.eigenvector(k)))
}

fn informed_starts(t: &OperatorTuple) -> Result<Vec<Vec<C64>>> {
    let n = t.dim();
    let mut starts = Vec::new();
    let mut gram = ComplexMatrix::zeros(n);
    for op in t.operators() {
        let (b, c) = crate::linalg::cartesian_parts(op);
        starts.extend(top_abs_eigenvector(&b.hermitian_part())?);
        starts.extend(top_abs_eigenvector(&c.hermitian_part())?);
        gram = &gram + &(&op.adjoint() * op);
    }
    let gram = gram.hermitian_part();
    if !gram.is_zero() {
        let eig = hermitian_eig(&gram, DEFAULT_TOL)?;
        starts.push(eig.eigenvector(n - 1));
    }
    Ok(starts)
}

pub fn wp_radius(t: &OperatorTuple, p: f64, opts: &OptimizerOptions) -> Result<RadiusEstimate> {
    wp_radius_seeded(t, p, opts, &[])
}

/// [`wp_radius`] with extra caller-supplied starting points, tried after the
/// informed starts and before the random ones.
pub fn wp_radius_seeded(
    t: &OperatorTuple,
    p: f64,
    opts: &OptimizerOptions,
    seeds: &[UnitVector],
) -> Result<RadiusEstimate> {
    check_exponent(p)?;
    opts.validate()?;
    let n = t.dim();
    for s in seeds {
        check_vector(t, s)?;
    }
    let Some(mut problem) = Problem::new(t, p) else {
        return Ok(RadiusEstimate {
            value: 0.0,
            upper: None,
            witness: UnitVector::basis(n, 0),
            restarts_used: 0,
            converged: true,
        });
    };

    let mut starts = informed_starts(t)?;
    starts.extend(seeds.iter().map(|s| s.as_slice().to_vec()));
    let root = Stream::new(opts.rng_seed);
    starts.extend((0..opts.restarts).map(|r| unit_vector_from(n, &mut root.derive(r as u64)).into_inner()));
    best_of(t, p, &mut problem, starts, opts)
}

/// Full-budget ascent from the given points only; used to polish an estimate
/// with witnesses found elsewhere.
pub(crate) fn wp_ascend_from(
    t: &OperatorTuple,
    p: f64,
    opts: &OptimizerOptions,
    seeds: &[UnitVector],
) -> Result<Option<RadiusEstimate>> {
    check_exponent(p)?;
    for s in seeds {
        check_vector(t, s)?;
    }
    let Some(mut problem) = Problem::new(t, p) else {
        return Ok(None);
    };
    if seeds.is_empty() {
        return Ok(None);
    }
    let mut runs: Vec<Ascent> =
        seeds.iter().map(|s| Ascent::start(&mut problem, s.as_slice().to_vec())).collect();
    for run in runs.iter_mut() {
        run.run(&mut problem, opts.max_iters, opts.gtol);
    }
    finish(t, p, runs).map(Some)
}

fn best_of(
    t: &OperatorTuple,
    p: f64,
    problem: &mut Problem,
    starts: Vec<Vec<C64>>,
    opts: &OptimizerOptions,
) -> Result<RadiusEstimate> {
    let mut runs: Vec<Ascent> = starts.into_iter().map(|x| Ascent::start(problem, x)).collect();
    let screen = SCREEN_ITERS.min(opts.max_iters);
    for run in runs.iter_mut() {
        run.run(problem, screen, opts.gtol);
    }
    let mut order: Vec<usize> = (0..runs.len()).filter(|&i| !runs[i].done).collect();
    order.sort_by(|&i, &j| runs[j].f.total_cmp(&runs[i].f).then(i.cmp(&j)));
    for &i in order.iter().take(SURVIVORS) {
        runs[i].run(problem, opts.max_iters, opts.gtol);
    }
    finish(t, p, runs)
}

fn finish(t: &OperatorTuple, p: f64, runs: Vec<Ascent>) -> Result<RadiusEstimate> {
    let best = (0..runs.len()).fold(0, |b, i| if runs[i].f > runs[b].f { i } else { b });
    let witness = UnitVector::normalize(runs[best].x.clone())?.gauge_fixed();
    let value = wp_objective(t, p, &witness)?;
    Ok(RadiusEstimate {
        value,
        upper: None,
        witness,
        restarts_used: runs.len(),
        converged: runs[best].converged,
    })
}
