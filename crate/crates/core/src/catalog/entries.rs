//! Both sides of every entry, as `lhs ≤ rhs` links.

use super::bound::{le, Link, Q};
use super::evaluator::Evaluator;
use super::registry::is_self_adjoint;
use super::{not_applicable, CheckParams};
use crate::error::Result;
use crate::linalg::{from_cartesian, hermitian_eigenvalues, inner, norm, psd_power, ComplexMatrix, C64};
use crate::radius::OperatorTuple;

fn two(e: f64) -> f64 {
    2f64.powf(e)
}

/// `‖H‖` for Hermitian `H`, as the largest eigenvalue modulus.
fn hnorm(h: &ComplexMatrix) -> Result<Q> {
    let ev = hermitian_eigenvalues(&h.hermitian_part())?;
    Ok(Q::exact(ev.iter().fold(0.0f64, |m, l| m.max(l.abs()))))
}

fn opnorm(a: &ComplexMatrix) -> Result<Q> {
    Ok(Q::exact(crate::linalg::operator_norm(a)?))
}

/// `|T|^s = (T*T)^{s/2}`.
fn abs_pow(t: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
    psd_power(&(&t.adjoint() * t).hermitian_part(), s / 2.0)
}

/// `|T*|^s = (TT*)^{s/2}`.
fn abs_adj_pow(t: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
    psd_power(&(t * &t.adjoint()).hermitian_part(), s / 2.0)
}

fn psd_pow(h: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
    psd_power(&h.hermitian_part(), s)
}

fn sum(dim: usize, items: impl IntoIterator<Item = Result<ComplexMatrix>>) -> Result<ComplexMatrix> {
    items.into_iter().try_fold(ComplexMatrix::zeros(dim), |acc, m| Ok(&acc + &m?))
}

fn pair(params: &CheckParams) -> (&ComplexMatrix, &ComplexMatrix) {
    let ops = params.primary.operators();
    (&ops[0], &ops[1])
}

fn tuple2(a: ComplexMatrix, b: ComplexMatrix) -> OperatorTuple {
    OperatorTuple::pair(a, b).expect("equal dimensions")
}

fn half_sum_diff(b: &ComplexMatrix, c: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    ((b + c).scale_real(0.5), (b - c).scale_real(0.5))
}

fn quad(h: &ComplexMatrix, x: &[C64]) -> f64 {
    h.quadratic_form(x).re
}

/// Auxiliary tuple or identities matching the primary tuple.
fn aux_or_identity(id: &str, aux: &Option<OperatorTuple>, name: &str, t: &OperatorTuple) -> Result<OperatorTuple> {
    match aux {
        None => OperatorTuple::new(vec![ComplexMatrix::identity(t.dim()); t.len()]),
        Some(a) if a.len() == t.len() && a.dim() == t.dim() => Ok(a.clone()),
        Some(_) => Err(not_applicable(id, format!("{name} must have {} operators of dimension {}", t.len(), t.dim()))),
    }
}

fn need_r_at_least_one(id: &str, r: f64) -> Result<()> {
    if r < 1.0 {
        return Err(not_applicable(id, format!("requires r >= 1 (got r = {r})")));
    }
    Ok(())
}

fn beta(params: &CheckParams) -> f64 {
    params.pair.map_or(0.5, |f| f.beta)
}

pub(crate) fn build(id: &str, ev: &mut Evaluator, params: &CheckParams) -> Result<Vec<Link>> {
    let p = params.p;
    let t = &params.primary;
    let dim = t.dim();
    let mut links = Vec::new();
    match id {
        "C1" => {
            let a = &t.operators()[0];
            let n = opnorm(a)?;
            let w = ev.w(a)?;
            links.push(le("‖A‖/2 ≤ w(A)", n.clone().scale(0.5), w.clone()));
            links.push(le("w(A) ≤ ‖A‖", w, n));
        }
        "C2" => {
            let a = &t.operators()[0];
            links.push(le("w(A²) ≤ w(A)²", ev.w(&(a * a))?, ev.w(a)?.powf(2.0)));
        }
        "C3" => {
            let s = hnorm(&sum(dim, t.operators().iter().map(|op| Ok(op * &op.adjoint())))?)?.sqrt();
            let we = ev.wp(t, 2.0)?;
            let c = 1.0 / (2.0 * (t.len() as f64).sqrt());
            links.push(le("‖ΣTT*‖^{1/2}/(2√n) ≤ w_e", s.clone().scale(c), we.clone()));
            links.push(le("w_e ≤ ‖ΣTT*‖^{1/2}", we, s));
        }
        "C4" => {
            let a = &t.operators()[0];
            let ad = a.adjoint();
            let m = hnorm(&(&(&ad * a) + &(a * &ad)))?;
            let w2 = ev.w(a)?.powf(2.0);
            links.push(le("‖A*A+AA*‖/16 ≤ w²(A)", m.clone().scale(1.0 / 16.0), w2.clone()));
            links.push(le("w²(A) ≤ ‖A*A+AA*‖/2", w2, m.scale(0.5)));
        }
        "C5" => {
            let ws = t.operators().iter().map(|op| ev.w(op)).collect::<Result<Vec<_>>>()?;
            let wp = ev.wp(t, p)?;
            let mid = Q::lp(ws.iter().cloned(), p);
            links.push(le("w_p(T) ≤ (Σw^p(T_i))^{1/p}", wp, mid.clone()));
            links.push(le("(Σw^p(T_i))^{1/p} ≤ Σw(T_i)", mid, Q::sum(ws)));
        }
        "C6" => {
            let q = params.q.unwrap_or(2.0);
            let (hi, lo) = (p.max(q), p.min(q));
            let w_hi = ev.wp(t, hi)?;
            let w_lo = ev.wp(t, lo)?;
            links.push(le("w_p ≤ w_q", w_hi.clone(), w_lo.clone()));
            links.push(le("w_q ≤ 2^{1/q−1/p} w_p", w_lo, w_hi.scale(two(1.0 / lo - 1.0 / hi))));
        }
        "C7" => {
            let (b, c) = pair(params);
            let m = hnorm(&(&(&b.adjoint() * b) + &(&c.adjoint() * c)))?;
            links.push(le("2^{1/p−2}‖B*B+C*C‖^{1/2} ≤ w_p(B,C)", m.sqrt().scale(two(1.0 / p - 2.0)), ev.wp(t, p)?));
        }
        "C8" => {
            let (b, c) = pair(params);
            let m = ev.w(&(b + c))?.max(ev.w(&(b - c))?);
            links.push(le("2^{1/p−1}max w(B±C) ≤ w_p(B,C)", m.scale(two(1.0 / p - 1.0)), ev.wp(t, p)?));
        }
        "C9" => {
            let (b, c) = pair(params);
            let m = opnorm(&(b + c))?.max(opnorm(&(b - c))?);
            links.push(le("2^{1/p−1}max‖B±C‖ ≤ w_p(B,C)", m.scale(two(1.0 / p - 1.0)), ev.wp(t, p)?));
            let a = from_cartesian(b, c);
            let ad = a.adjoint();
            let one_minus_i = C64::new(1.0, -1.0);
            let one_plus_i = C64::new(1.0, 1.0);
            let m1 = opnorm(&(&a.scale(one_minus_i) + &ad.scale(one_plus_i)))?;
            let m2 = opnorm(&(&a.scale(one_plus_i) + &ad.scale(one_minus_i)))?;
            links.push(le(
                "2^{1/p−2}max‖(1∓i)A+(1±i)A*‖ ≤ w(A)",
                m1.max(m2).scale(two(1.0 / p - 2.0)),
                ev.w(&a)?,
            ));
        }
        "C10" => {
            let (b, c) = pair(params);
            let m = ev.w(b)?.max(ev.w(c)?);
            links.push(le("2^{1/p−1}max(w(B),w(C)) ≤ w_p(B,C)", m.scale(two(1.0 / p - 1.0)), ev.wp(t, p)?));
            if p >= 2.0 && is_self_adjoint(b) && is_self_adjoint(c) {
                let a = from_cartesian(b, c);
                let ad = a.adjoint();
                let m = opnorm(&(&a + &ad))?.max(opnorm(&(&a - &ad))?);
                links.push(le("2^{1/p−2}max‖A±A*‖ ≤ w(A)", m.scale(two(1.0 / p - 2.0)), ev.w(&a)?));
            }
        }
        "C11" => {
            let (b, c) = pair(params);
            let (s, d) = (b + c, b - c);
            let w_bc = ev.wp(t, p)?;
            let w_sd = ev.wp(&tuple2(s.clone(), d.clone()), p)?;
            let sum_sd = Q::lp([ev.w(&s)?, ev.w(&d)?], p);
            let (lo_c, hi_c) = (two(1.0 / p - 1.0), two(-1.0 / p));
            if p >= 2.0 {
                links.push(le("2^{1/p−1}w_p(B+C,B−C) ≤ w_p(B,C)", w_sd.clone().scale(lo_c), w_bc.clone()));
                links.push(le("w_p(B,C) ≤ 2^{−1/p}w_p(B+C,B−C)", w_bc.clone(), w_sd.clone().scale(hi_c)));
                links.push(le("2^{1/p−1}(Σw^p(B±C))^{1/p} ≤ w_p(B,C)", sum_sd.clone().scale(lo_c), w_bc.clone()));
                links.push(le("w_p(B,C) ≤ 2^{−1/p}(Σw^p(B±C))^{1/p}", w_bc.clone(), sum_sd.clone().scale(hi_c)));
            }
            if p <= 2.0 {
                links.push(le("w_p(B,C) ≤ 2^{1/p−1}w_p(B+C,B−C) [reversed]", w_bc.clone(), w_sd.clone().scale(lo_c)));
                links.push(le("2^{−1/p}w_p(B+C,B−C) ≤ w_p(B,C) [reversed]", w_sd.scale(hi_c), w_bc.clone()));
                links.push(le("w_p(B,C) ≤ 2^{1/p−1}(Σw^p(B±C))^{1/p} [reversed]", w_bc.clone(), sum_sd.clone().scale(lo_c)));
                links.push(le("2^{−1/p}(Σw^p(B±C))^{1/p} ≤ w_p(B,C) [reversed]", sum_sd.scale(hi_c), w_bc));
            }
        }
        "C12" => {
            let (b, c) = pair(params);
            let wp = ev.wp(t, p)?;
            let (lo_c, hi_c) = (two(2.0 / p - 2.0), two(1.0 - 2.0 / p));
            let m = ev.w(&(b + c))?.max(ev.w(&(b - c))?);
            let u = Q::lp([ev.w(b)?, ev.w(c)?], p);
            links.push(le("2^{2/p−2}max w(B±C) ≤ w_p(B,C)", m.scale(lo_c), wp.clone()));
            links.push(le("w_p(B,C) ≤ 2^{1−2/p}(w^p(B)+w^p(C))^{1/p}", wp.clone(), u.scale(hi_c)));
            if is_self_adjoint(b) && is_self_adjoint(c) {
                let m = opnorm(&(b + c))?.max(opnorm(&(b - c))?);
                let u = Q::lp([opnorm(b)?, opnorm(c)?], p);
                links.push(le("2^{2/p−2}max‖B±C‖ ≤ w_p(B,C)", m.scale(lo_c), wp.clone()));
                links.push(le("w_p(B,C) ≤ 2^{1−2/p}(‖B‖^p+‖C‖^p)^{1/p}", wp, u.scale(hi_c)));
            }
        }
        "C13" => {
            let (b, c) = pair(params);
            let m = ev.w(&(&(b * b) + &(c * c)))?.sqrt();
            links.push(le("2^{1/p−1}w^{1/2}(B²+C²) ≤ w_p(B,C)", m.scale(two(1.0 / p - 1.0)), ev.wp(t, p)?));
        }
        "C14" => {
            let (b, c) = pair(params);
            let m = hnorm(&(&(b * b) + &(c * c)))?.sqrt();
            links.push(le("2^{1/p−1}‖B²+C²‖^{1/2} ≤ w_p(B,C)", m.scale(two(1.0 / p - 1.0)), ev.wp(t, p)?));
            let a = from_cartesian(b, c);
            let ad = a.adjoint();
            let m = hnorm(&(&(&ad * &a) + &(&a * &ad)))?.sqrt();
            links.push(le("2^{1/p−3/2}‖A*A+AA*‖^{1/2} ≤ w(A)", m.scale(two(1.0 / p - 1.5)), ev.w(&a)?));
        }
        "C15" => {
            let (b, c) = pair(params);
            let m = ev.w(&(&(b * b) + &(c * c)))?.sqrt();
            links.push(le("2^{2/p−3/2}w^{1/2}(B²+C²) ≤ w_p(B,C)", m.scale(two(2.0 / p - 1.5)), ev.wp(t, p)?));
        }
        "C16" => {
            let q = params.conjugate(id)?;
            let (b, c) = pair(params);
            let (x, y) = half_sum_diff(b, c);
            let wp = ev.wp(t, p)?;
            let wq = ev.wp(&tuple2(x, y), q)?;
            if p >= 2.0 {
                links.push(le("w_p(B,C) ≤ w_q((B+C)/2,(B−C)/2)", wp.clone(), wq.clone()));
            }
            if p <= 2.0 {
                links.push(le("w_q((B+C)/2,(B−C)/2) ≤ w_p(B,C) [reversed]", wq, wp));
            }
        }
        "C17" => {
            let q = params.conjugate(id)?;
            let (b, c) = pair(params);
            let (x, y) = half_sum_diff(b, c);
            let wp = ev.wp(t, p)?;
            let s = Q::lp([ev.w(&x)?, ev.w(&y)?], q);
            let sa = (is_self_adjoint(b) && is_self_adjoint(c))
                .then(|| Ok::<_, crate::error::Error>(Q::lp([opnorm(&(b + c))?, opnorm(&(b - c))?], q).scale(0.5)))
                .transpose()?;
            if p >= 2.0 {
                links.push(le("w_p(B,C) ≤ (w^q((B+C)/2)+w^q((B−C)/2))^{1/q}", wp.clone(), s.clone()));
                if let Some(sa) = &sa {
                    links.push(le("w_p(B,C) ≤ ½(‖B+C‖^q+‖B−C‖^q)^{1/q}", wp.clone(), sa.clone()));
                }
            }
            if p <= 2.0 {
                links.push(le("(w^q((B+C)/2)+w^q((B−C)/2))^{1/q} ≤ w_p(B,C) [reversed]", s, wp.clone()));
                if let Some(sa) = sa {
                    links.push(le("½(‖B+C‖^q+‖B−C‖^q)^{1/q} ≤ w_p(B,C) [reversed]", sa, wp));
                }
            }
        }
        "C18" => {
            let q = params.conjugate(id)?;
            let (b, c) = pair(params);
            let (x, y) = half_sum_diff(b, c);
            let h = tuple2(x, y);
            let wq = ev.wp(&h, q)?;
            let wp = ev.wp(&h, p)?.scale(two(1.0 / p));
            if p <= 2.0 {
                links.push(le("w_q(H) ≤ 2^{1/p}w_p(H)", wq.clone(), wp.clone()));
            }
            if p >= 2.0 {
                links.push(le("2^{1/p}w_p(H) ≤ w_q(H) [reversed]", wp, wq));
            }
        }
        "C19" => {
            let n = t.len();
            let alphas = match &params.alphas {
                None => vec![1.0 / n as f64; n],
                Some(a) => {
                    let total: f64 = a.iter().sum();
                    if a.len() != n || a.iter().any(|x| !(*x >= 0.0)) || (total - 1.0).abs() > 1e-12 {
                        return Err(not_applicable(id, format!("requires {n} nonnegative weights summing to 1")));
                    }
                    a.clone()
                }
            };
            let wp = ev.wp(t, p)?;
            let coef: Vec<f64> = alphas.iter().map(|a| a.powf(1.0 - 1.0 / p)).collect();
            for mask in 0..(1usize << (n - 1)) {
                let m = sum(
                    dim,
                    t.operators().iter().enumerate().map(|(i, op)| {
                        let sign = if i > 0 && mask >> (i - 1) & 1 == 1 { -1.0 } else { 1.0 };
                        Ok(op.scale_real(sign * coef[i]))
                    }),
                )?;
                let signs: String =
                    (1..n).map(|i| if mask >> (i - 1) & 1 == 1 { '-' } else { '+' }).collect();
                links.push(le(format!("w(Σ±α_i^{{1−1/p}}T_i) ≤ w_p(T) [+{signs}]"), ev.w(&m)?, wp.clone()));
            }
        }
        "C20" | "C22" => {
            need_r_at_least_one(id, params.r)?;
            let a = aux_or_identity(id, &params.aux_a, "aux_a", t)?;
            let b = aux_or_identity(id, &params.aux_b, "aux_b", t)?;
            let rp = params.r * p;
            let be = if id == "C22" { 0.5 } else { beta(params) };
            let ops = t.operators();
            let prod = OperatorTuple::new(
                (0..t.len()).map(|i| &(&a.operators()[i].adjoint() * &ops[i]) * &b.operators()[i]).collect(),
            )?;
            let rhs = sum(
                dim,
                (0..t.len()).flat_map(|i| {
                    let (ai, bi, ti) = (&a.operators()[i], &b.operators()[i], &ops[i]);
                    [
                        abs_pow(ti, 2.0 * be).and_then(|f2| psd_pow(&f2.congruence(bi), rp)),
                        abs_adj_pow(ti, 2.0 * (1.0 - be)).and_then(|g2| psd_pow(&g2.congruence(ai), rp)),
                    ]
                }),
            )?;
            links.push(le("w_p^{rp}(A*TB) ≤ ½‖Σ(...)‖", ev.wp(&prod, p)?.powf(rp), hnorm(&rhs)?.scale(0.5)));
        }
        "C21" => {
            need_r_at_least_one(id, params.r)?;
            let rp = params.r * p;
            let be = beta(params);
            let rhs = sum(
                dim,
                t.operators()
                    .iter()
                    .flat_map(|ti| [abs_pow(ti, 2.0 * be * rp), abs_adj_pow(ti, 2.0 * (1.0 - be) * rp)]),
            )?;
            links.push(le("w_p^{rp}(T) ≤ ½‖Σ(f^{2rp}(|T|)+g^{2rp}(|T*|))‖", ev.wp(t, p)?.powf(rp), hnorm(&rhs)?.scale(0.5)));
        }
        "C23" => {
            need_r_at_least_one(id, params.r)?;
            let a = aux_or_identity(id, &params.aux_a, "aux_a", t)?;
            let rp = params.r * p;
            let ops = t.operators();
            let prod = OperatorTuple::new((0..t.len()).map(|i| &a.operators()[i].adjoint() * &ops[i]).collect())?;
            let rhs = sum(
                dim,
                (0..t.len()).flat_map(|i| [abs_pow(&ops[i], 2.0 * rp), abs_pow(&a.operators()[i], 2.0 * rp)]),
            )?;
            links.push(le("w_p^{rp}(A*B) ≤ ½‖Σ(|B|^{2rp}+|A|^{2rp})‖", ev.wp(&prod, p)?.powf(rp), hnorm(&rhs)?.scale(0.5)));
        }
        "C24" | "C25" => {
            let al = params.alpha;
            let wpp = ev.wp(t, p)?.powf(p);
            let ops = t.operators();
            let s = sum(dim, ops.iter().flat_map(|ti| [abs_pow(ti, 2.0 * al * p), abs_adj_pow(ti, 2.0 * (1.0 - al) * p)]))?;
            let h = sum(dim, ops.iter().flat_map(|ti| [abs_pow(ti, p), abs_adj_pow(ti, p)]))?;
            links.push(le("w_p^p ≤ ½‖Σ(|T|^{2αp}+|T*|^{2(1−α)p})‖", wpp.clone(), hnorm(&s)?.scale(0.5)));
            links.push(le("w_p^p ≤ ½‖Σ(|T|^p+|T*|^p)‖", wpp, hnorm(&h)?.scale(0.5)));
        }
        "C26" => {
            let al = params.alpha;
            let s = sum(
                dim,
                t.operators().iter().map(|ti| {
                    let inner = &abs_pow(ti, 2.0 * al)? + &abs_adj_pow(ti, 2.0 * (1.0 - al))?;
                    psd_pow(&inner, p)
                }),
            )?;
            links.push(le(
                "w_p ≤ ½‖Σ(|T|^{2α}+|T*|^{2(1−α)})^p‖^{1/p}",
                ev.wp(t, p)?,
                hnorm(&s)?.powf(1.0 / p).scale(0.5),
            ));
        }
        "C27" => {
            let al = params.alpha;
            let s = sum(
                dim,
                t.operators()
                    .iter()
                    .flat_map(|ti| [abs_pow(ti, p).map(|m| m.scale_real(al)), abs_adj_pow(ti, p).map(|m| m.scale_real(1.0 - al))]),
            )?;
            links.push(le("w_p ≤ ‖Σ(α|T|^p+(1−α)|T*|^p)‖^{1/p}", ev.wp(t, p)?, hnorm(&s)?.powf(1.0 / p)));
        }
        "C28" => {
            if p < 2.0 && t.len() != 2 {
                return Err(not_applicable(id, "requires p >= 2 or an operator pair"));
            }
            let al = params.alpha;
            let wpp = ev.wp(t, p)?.powf(p);
            let ops = t.operators();
            let h = sum(dim, ops.iter().flat_map(|ti| [abs_pow(ti, p), abs_adj_pow(ti, p)]))?;
            if p >= 2.0 {
                links.push(le("w_p^p ≤ ½‖Σ(|T|^p+|T*|^p)‖", wpp.clone(), hnorm(&h)?.scale(0.5)));
            }
            if t.len() == 2 {
                let s = sum(
                    dim,
                    ops.iter().flat_map(|ti| {
                        [abs_pow(ti, p).map(|m| m.scale_real(al)), abs_adj_pow(ti, p).map(|m| m.scale_real(1.0 - al))]
                    }),
                )?;
                links.push(le("w_p^p(B,C) ≤ ‖α|B|^p+(1−α)|B*|^p+α|C|^p+(1−α)|C*|^p‖", wpp.clone(), hnorm(&s)?));
                links.push(le("w_p^p(B,C) ≤ ½‖|B|^p+|B*|^p+|C|^p+|C*|^p‖", wpp, hnorm(&h)?.scale(0.5)));
            }
        }
        "C29" | "C30" => {
            need_r_at_least_one(id, params.r)?;
            let r = params.r;
            let wp = ev.wp(t, p)?;
            let weighted = |al: f64| -> Result<Q> {
                let terms = t
                    .operators()
                    .iter()
                    .map(|ti| {
                        let m = &abs_pow(ti, 2.0 * r)?.scale_real(al) + &abs_adj_pow(ti, 2.0 * r)?.scale_real(1.0 - al);
                        Ok(hnorm(&m)?.powf(p / (2.0 * r)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Q::sum(terms).powf(1.0 / p))
            };
            if id == "C29" {
                links.push(le("w_p ≤ (Σ‖α|T|^{2r}+(1−α)|T*|^{2r}‖^{p/2r})^{1/p}", wp, weighted(params.alpha)?));
            } else {
                let unweighted = t
                    .operators()
                    .iter()
                    .map(|ti| Ok(hnorm(&(&abs_pow(ti, 2.0 * r)? + &abs_adj_pow(ti, 2.0 * r)?))?.powf(p / (2.0 * r))))
                    .collect::<Result<Vec<_>>>()?;
                let half = Q::sum(unweighted.clone()).scale(two(-p / (2.0 * r))).powf(1.0 / p);
                links.push(le("w_p ≤ (2^{−p/2r}Σ‖|T|^{2r}+|T*|^{2r}‖^{p/2r})^{1/p}", wp.clone(), half.clone()));
                if t.len() == 2 {
                    links.push(le("w_p(B,C) ≤ (Σ‖α|·|^{2r}+(1−α)|·*|^{2r}‖^{p/2r})^{1/p}", wp.clone(), weighted(params.alpha)?));
                    let pair_form = Q::sum(unweighted).powf(1.0 / p).scale(two(-1.0 / (2.0 * r)));
                    links.push(le("w_p(B,C) ≤ 2^{−1/2r}(Σ‖|·|^{2r}+|·*|^{2r}‖^{p/2r})^{1/p}", wp, pair_form));
                }
            }
        }
        "LC1" => {
            need_r_at_least_one(id, params.r)?;
            let (a, b) = (params.scalars[0], params.scalars[1]);
            let (al, r) = (params.alpha, params.r);
            let geo = a.powf(al) * b.powf(1.0 - al);
            let ari = al * a + (1.0 - al) * b;
            let pow = (al * a.powf(r) + (1.0 - al) * b.powf(r)).powf(1.0 / r);
            links.push(le("a^α b^{1−α} ≤ αa+(1−α)b", Q::exact(geo), Q::exact(ari)));
            links.push(le("αa+(1−α)b ≤ [αa^r+(1−α)b^r]^{1/r}", Q::exact(ari), Q::exact(pow)));
        }
        "LC2" => {
            let a = &t.operators()[0];
            let (x, y) = (&params.vectors[0], &params.vectors[1]);
            let lhs = inner(&a.mul_vec(x), y).norm_sqr();
            let al = params.alpha;
            let rhs = quad(&abs_pow(a, 2.0 * al)?, x) * quad(&abs_adj_pow(a, 2.0 * (1.0 - al))?, y);
            links.push(le("|⟨Ax,y⟩|² ≤ ⟨|A|^{2α}x,x⟩⟨|A*|^{2(1−α)}y,y⟩", Q::exact(lhs), Q::exact(rhs)));
        }
        "LC3" => {
            let a = &t.operators()[0];
            let (x, y) = (&params.vectors[0], &params.vectors[1]);
            let be = beta(params);
            let lhs = inner(&a.mul_vec(x), y).norm();
            let rhs = norm(&abs_pow(a, be)?.mul_vec(x)) * norm(&abs_adj_pow(a, 1.0 - be)?.mul_vec(y));
            links.push(le("|⟨Ax,y⟩| ≤ ‖f(|A|)x‖‖g(|A*|)y‖", Q::exact(lhs), Q::exact(rhs)));
        }
        "LC4" => {
            let a = t.operators()[0].hermitian_part();
            let x = &params.vectors[0];
            if (norm(x) - 1.0).abs() > 1e-10 {
                return Err(not_applicable(id, "requires a unit vector x"));
            }
            let r = params.r;
            let base = quad(&a, x).max(0.0).powf(r);
            let powered = quad(&psd_power(&a, r)?, x);
            if r >= 1.0 {
                links.push(le("⟨Ax,x⟩^r ≤ ⟨A^r x,x⟩", Q::exact(base), Q::exact(powered)));
            }
            if r <= 1.0 {
                links.push(le("⟨A^r x,x⟩ ≤ ⟨Ax,x⟩^r", Q::exact(powered), Q::exact(base)));
            }
        }
        "LC5" => {
            let q = params.conjugate(id)?;
            let (x, y) = (&params.vectors[0], &params.vectors[1]);
            let a = norm(x);
            let b = norm(y);
            let s = norm(&x.iter().zip(y).map(|(u, v)| u + v).collect::<Vec<_>>());
            let d = norm(&x.iter().zip(y).map(|(u, v)| u - v).collect::<Vec<_>>());
            let ap = a.powf(p) + b.powf(p);
            let aq = a.powf(q) + b.powf(q);
            let sp = s.powf(p) + d.powf(p);
            let sq = s.powf(q) + d.powf(q);
            let rel = [
                ("(a) 2(‖x‖^p+‖y‖^p)^{q−1} ≤ ‖x+y‖^q+‖x−y‖^q", 2.0 * ap.powf(q - 1.0), sq),
                ("(b) 2(‖x‖^p+‖y‖^p) ≤ ‖x+y‖^p+‖x−y‖^p", 2.0 * ap, sp),
                ("(b) ‖x+y‖^p+‖x−y‖^p ≤ 2^{p−1}(‖x‖^p+‖y‖^p)", sp, two(p - 1.0) * ap),
                ("(c) ‖x+y‖^p+‖x−y‖^p ≤ 2(‖x‖^q+‖y‖^q)^{p−1}", sp, 2.0 * aq.powf(p - 1.0)),
            ];
            for (label, l, r) in rel {
                if p >= 2.0 {
                    links.push(le(label, Q::exact(l), Q::exact(r)));
                }
                if p <= 2.0 {
                    links.push(le(format!("{label} [reversed]"), Q::exact(r), Q::exact(l)));
                }
            }
        }
        "P1" => {
            let norms = t.operators().iter().map(opnorm).collect::<Result<Vec<_>>>()?;
            let wp = ev.wp(t, p)?;
            links.push(le("½max‖T_i‖ ≤ w_p(T)", Q::max_of(norms.iter().cloned()).scale(0.5), wp.clone()));
            links.push(le("w_p(T) ≤ Σ‖T_i‖", wp, Q::sum(norms)));
        }
        "P2" => {
            let lam = params.lambda;
            let scaled = t.map(|op| op.scale(lam));
            let lhs = ev.wp(&scaled, p)?;
            let rhs = ev.wp(t, p)?.scale(lam.norm());
            links.push(le("w_p(λT) ≤ |λ|w_p(T)", lhs.clone(), rhs.clone()));
            links.push(le("|λ|w_p(T) ≤ w_p(λT)", rhs, lhs));
        }
        "P3" => {
            let other = params.aux_a.as_ref().expect("checked by applicability");
            let total = OperatorTuple::new(t.operators().iter().zip(other.operators()).map(|(u, v)| u + v).collect())?;
            let lhs = ev.wp(&total, p)?;
            let rhs = ev.wp(t, p)?.add(ev.wp(other, p)?);
            links.push(le("w_p(T+T') ≤ w_p(T)+w_p(T')", lhs, rhs));
        }
        "P4" => {
            let x = params.aux_x.as_ref().expect("checked by applicability");
            let conj = t.map(|op| op.congruence(x));
            let lhs = ev.wp(&conj, p)?;
            if let Some(y) = &lhs.witness {
                if let Ok(u) = crate::linalg::UnitVector::normalize(x.mul_vec(y.as_slice())) {
                    ev.hint(u);
                }
            }
            let rhs = ev.wp(t, p)?.scale(opnorm(x)?.est.powi(2));
            links.push(le("w_p(X*TX) ≤ ‖X‖²w_p(T)", lhs, rhs));
        }
        _ => return Err(crate::error::Error::UnknownCheck(id.to_string())),
    }
    Ok(links)
}
