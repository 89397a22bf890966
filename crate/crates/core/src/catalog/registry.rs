use std::fmt;

use serde::Serialize;

use super::{not_applicable, CheckParams, SELF_ADJOINT_TOL};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix, PSD_REJECT};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PRange {
    /// The entry has no `p`; any admissible `p ≥ 1` is accepted.
    Unused,
    AtLeast(f64),
    Above(f64),
}

impl PRange {
    pub fn admits(&self, p: f64) -> bool {
        match *self {
            PRange::Unused => true,
            PRange::AtLeast(a) => p >= a,
            PRange::Above(a) => p > a,
        }
    }
}

impl fmt::Display for PRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PRange::Unused => write!(f, "p unused (any p >= 1)"),
            PRange::AtLeast(a) => write!(f, "p >= {a}"),
            PRange::Above(a) => write!(f, "p > {a}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleLen {
    /// Operands come from vectors or scalars instead.
    Unused,
    Single,
    Pair,
    Any,
    AtMost(usize),
}

impl TupleLen {
    fn admits(&self, n: usize) -> bool {
        match *self {
            TupleLen::Unused | TupleLen::Any => true,
            TupleLen::Single => n == 1,
            TupleLen::Pair => n == 2,
            TupleLen::AtMost(k) => n <= k,
        }
    }
}

impl fmt::Display for TupleLen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TupleLen::Unused => write!(f, "no operator tuple"),
            TupleLen::Single => write!(f, "one operator"),
            TupleLen::Pair => write!(f, "operator pair"),
            TupleLen::Any => write!(f, "tuple of any length"),
            TupleLen::AtMost(k) => write!(f, "tuple of length <= {k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    SelfAdjoint,
    Psd,
    AuxA,
    AuxX,
    Vectors(usize),
    Scalars(usize),
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Requirement::SelfAdjoint => write!(f, "self-adjoint operators"),
            Requirement::Psd => write!(f, "positive semidefinite operator"),
            Requirement::AuxA => write!(f, "second tuple aux_a of the same shape"),
            Requirement::AuxX => write!(f, "matrix aux_x"),
            Requirement::Vectors(k) => write!(f, "{k} vectors of equal dimension"),
            Requirement::Scalars(k) => write!(f, "{k} nonnegative scalars"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Applicability {
    pub p: PRange,
    pub tuple: TupleLen,
    pub requires: &'static [Requirement],
}

impl fmt::Display for Applicability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {}", self.p, self.tuple)?;
        for r in self.requires {
            write!(f, "; {r}")?;
        }
        Ok(())
    }
}

pub(crate) fn is_self_adjoint(a: &ComplexMatrix) -> bool {
    a.hermitian_deviation() <= SELF_ADJOINT_TOL * a.max_abs().max(1.0)
}

impl Applicability {
    pub fn check(&self, id: &str, params: &CheckParams) -> Result<()> {
        let fail = |c: String| Err(not_applicable(id, c));
        if !self.p.admits(params.p) {
            return fail(format!("requires {} (got p = {})", self.p, params.p));
        }
        let t = &params.primary;
        if !self.tuple.admits(t.len()) {
            return fail(format!("requires {} (got {} operators)", self.tuple, t.len()));
        }
        for req in self.requires {
            match *req {
                Requirement::SelfAdjoint => {
                    if let Some(i) = t.operators().iter().position(|op| !is_self_adjoint(op)) {
                        return fail(format!("requires self-adjoint operators (operator {i} is not)"));
                    }
                }
                Requirement::Psd => {
                    for op in t.operators() {
                        if !is_self_adjoint(op) {
                            return fail("requires a positive semidefinite operator (not self-adjoint)".into());
                        }
                        let ev = hermitian_eigenvalues(&op.hermitian_part())?;
                        let scale = ev.iter().fold(1.0f64, |m, l| m.max(l.abs()));
                        if ev[0] < -PSD_REJECT * scale {
                            return fail(format!("requires a positive semidefinite operator (eigenvalue {})", ev[0]));
                        }
                    }
                }
                Requirement::AuxA => match &params.aux_a {
                    Some(a) if a.len() == t.len() && a.dim() == t.dim() => {}
                    _ => return fail(format!("requires aux_a with {} operators of dimension {}", t.len(), t.dim())),
                },
                Requirement::AuxX => match &params.aux_x {
                    Some(x) if x.dim() == t.dim() => {}
                    _ => return fail(format!("requires aux_x of dimension {}", t.dim())),
                },
                Requirement::Vectors(k) => {
                    let v = &params.vectors;
                    if v.len() < k || v[..k].iter().any(|x| x.is_empty() || x.len() != v[0].len()) {
                        return fail(format!("requires {req}"));
                    }
                    if self.tuple != TupleLen::Unused && v[0].len() != t.dim() {
                        return fail(format!("requires vectors of dimension {}", t.dim()));
                    }
                    if v[..k].iter().flatten().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
                        return fail("requires finite vectors".into());
                    }
                }
                Requirement::Scalars(k) => {
                    if params.scalars.len() < k || params.scalars[..k].iter().any(|s| !(*s >= 0.0 && s.is_finite())) {
                        return fail(format!("requires {req}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Which sides depend on a quantity that is only estimated from below.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sensitivity {
    /// Norms, eigenvalues, numerical radii with enclosures, or scalars only.
    Certified,
    /// `w_p` appears on the smaller side only, so a found witness certifies a failure.
    EstimateOnSmallerSide,
    /// `w_p` appears on the larger side; failures are at most INCONCLUSIVE.
    LowerBoundSensitive,
    /// Links of both kinds.
    Mixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub applicability: Applicability,
    pub sensitivity: Sensitivity,
    pub citation: &'static str,
    pub notes: &'static str,
}

use PRange::{Above, AtLeast, Unused as NoP};
use Requirement::*;
use Sensitivity::*;
use TupleLen::{Any, AtMost, Pair, Single, Unused as NoTuple};

const fn app(p: PRange, tuple: TupleLen, requires: &'static [Requirement]) -> Applicability {
    Applicability { p, tuple, requires }
}

const fn entry(
    id: &'static str,
    description: &'static str,
    applicability: Applicability,
    sensitivity: Sensitivity,
    citation: &'static str,
    notes: &'static str,
) -> InequalityCheck {
    InequalityCheck { id, description, applicability, sensitivity, citation, notes }
}

static CATALOG: [InequalityCheck; 39] = [
    entry("C1", "½‖A‖ ≤ w(A) ≤ ‖A‖", app(NoP, Single, &[]), Certified,
        "introduction: w is a norm equivalent to the operator norm", ""),
    entry("C2", "w(A²) ≤ w(A)²", app(NoP, Single, &[]), Certified,
        "introduction: power inequality", ""),
    entry("C3", "(1/(2√n))‖Σ T_iT_i*‖^{1/2} ≤ w_e(T) ≤ ‖Σ T_iT_i*‖^{1/2}", app(NoP, Any, &[]), Mixed,
        "introduction: two-sided bound for the Euclidean operator radius", ""),
    entry("C4", "(1/16)‖A*A+AA*‖ ≤ w²(A) ≤ ½‖A*A+AA*‖", app(NoP, Single, &[]), Certified,
        "introduction: consequence of the Euclidean radius bound for the Cartesian pair", ""),
    entry("C5", "w_p(T) ≤ (Σ w^p(T_i))^{1/p} ≤ Σ w(T_i)", app(AtLeast(1.0), Any, &[]), EstimateOnSmallerSide,
        "tuple section: double inequality from the definition", ""),
    entry("C6", "w_p(B,C) ≤ w_q(B,C) ≤ 2^{1/q−1/p} w_p(B,C) for p ≥ q ≥ 1 (q defaults to 2)",
        app(AtLeast(1.0), Pair, &[]), Mixed,
        "ordering proposition: monotonicity of w_p in p and its Euclidean specializations",
        "p and q are ordered internally, so q > p checks the same chain with the roles swapped"),
    entry("C7", "2^{1/p−2}‖B*B+C*C‖^{1/2} ≤ w_p(B,C)", app(AtLeast(2.0), Pair, &[]), LowerBoundSensitive,
        "corollary of the ordering proposition: lower bound through B*B + C*C", ""),
    entry("C8", "2^{1/p−1} max(w(B+C), w(B−C)) ≤ w_p(B,C)", app(AtLeast(1.0), Pair, &[]), LowerBoundSensitive,
        "lower bound through w(B ± C), sharp at B = C", ""),
    entry("C9", "2^{1/p−1} max‖B±C‖ ≤ w_p(B,C) and 2^{1/p−2} max(‖(1−i)A+(1+i)A*‖, ‖(1+i)A+(1−i)A*‖) ≤ w(A), A = B+iC",
        app(AtLeast(2.0), Pair, &[SelfAdjoint]), LowerBoundSensitive,
        "corollary: Cartesian form of the w(B ± C) lower bound", ""),
    entry("C10", "2^{1/p−1} max(w(B), w(C)) ≤ w_p(B,C); for self-adjoint B, C and p ≥ 2 also 2^{1/p−2} max(‖A+A*‖, ‖A−A*‖) ≤ w(A)",
        app(AtLeast(1.0), Pair, &[]), LowerBoundSensitive,
        "corollary: lower bound through w(B), w(C) and its Cartesian form",
        "the Cartesian link is evaluated only for self-adjoint pairs with p >= 2"),
    entry("C11", "2^{1/p−1} w_p(B+C,B−C) ≤ w_p(B,C) ≤ 2^{−1/p} w_p(B+C,B−C) and the same chain with (w^p(B+C)+w^p(B−C))^{1/p}; p ≥ 2, reversed for 1 < p ≤ 2",
        app(Above(1.0), Pair, &[]), Mixed,
        "Clarkson-based two-sided bounds for w_p(B, C)",
        "reversed-regime; erratum: the lower bound of the w^p(B±C) chain fails in both regimes \
         (B = I/2, C = diag(1,−1)/2, p = 2 gives 1 ≤ 1/√2)"),
    entry("C12", "2^{2/p−2} max(w(B+C), w(B−C)) ≤ w_p(B,C) ≤ 2^{1−2/p}(w^p(B)+w^p(C))^{1/p}; self-adjoint variant with norms",
        app(AtLeast(1.0), Pair, &[]), Mixed,
        "remark after the Clarkson bounds: weaker two-sided form",
        "the self-adjoint variant is evaluated when B and C are self-adjoint; erratum: the upper bounds fail for \
         1 <= p < 2 (B = C = I gives 2^{1/p} <= 2^{1−1/p})"),
    entry("C13", "2^{1/p−1} w^{1/2}(B²+C²) ≤ w_p(B,C)", app(AtLeast(1.0), Pair, &[]), LowerBoundSensitive,
        "theorem: lower bound through w(B² + C²)", ""),
    entry("C14", "2^{1/p−1}‖B²+C²‖^{1/2} ≤ w_p(B,C) and 2^{1/p−3/2}‖A*A+AA*‖^{1/2} ≤ w(A), A = B+iC",
        app(AtLeast(2.0), Pair, &[SelfAdjoint]), LowerBoundSensitive,
        "corollary: Cartesian form of the w(B² + C²) lower bound", ""),
    entry("C15", "2^{2/p−3/2} w^{1/2}(B²+C²) ≤ w_p(B,C)", app(AtLeast(2.0), Pair, &[]), LowerBoundSensitive,
        "corollary: the w(B² + C²) bound applied to B + C and B − C", ""),
    entry("C16", "w_p(B,C) ≤ w_q((B+C)/2, (B−C)/2) for p ≥ 2, 1/p + 1/q = 1; reversed for 1 < p ≤ 2",
        app(Above(1.0), Pair, &[]), Mixed,
        "proposition: conjugate-exponent comparison of w_p and w_q",
        "reversed-regime; erratum: the p >= 2 direction fails (B = C = I, p = 2 gives √2 <= 1)"),
    entry("C17", "w_p(B,C) ≤ (w^q((B+C)/2)+w^q((B−C)/2))^{1/q}, and ≤ ½(‖B+C‖^q+‖B−C‖^q)^{1/q} for self-adjoint B, C; p ≥ 2, both reversed for 1 < p ≤ 2",
        app(Above(1.0), Pair, &[]), Mixed,
        "corollary: conjugate-exponent bound through w(B ± C)",
        "reversed-regime, both displays reversed; the self-adjoint link is evaluated for self-adjoint pairs; \
         erratum: the p >= 2 direction fails (B = C = I, p = 2 gives √2 <= 1)"),
    entry("C18", "w_q((B+C)/2,(B−C)/2) ≤ 2^{1/p} w_p((B+C)/2,(B−C)/2) for 1 < p ≤ 2, 1/p + 1/q = 1; reversed for p ≥ 2",
        app(Above(1.0), Pair, &[]), Mixed,
        "corollary: conjugate-exponent comparison on the half sum and half difference",
        "reversed-regime; erratum: the p >= 2 direction fails (B = C = I gives 1 >= 2^{1/p})"),
    entry("C19", "w(α_1^{1−1/p}T_1 ± … ± α_n^{1−1/p}T_n) ≤ w_p(T) for all 2^{n−1} sign patterns, α_i ≥ 0, Σα_i = 1",
        app(Above(1.0), AtMost(6), &[]), LowerBoundSensitive,
        "Hölder lower bound for w_p of an n-tuple", "weights default to 1/n"),
    entry("C20", "w_p^{rp}(A_1*T_1B_1, …) ≤ ½‖Σ([B_i* f²(|T_i|) B_i]^{rp} + [A_i* g²(|T_i*|) A_i]^{rp})‖, f = t^β, g = t^{1−β}",
        app(AtLeast(1.0), Any, &[]), EstimateOnSmallerSide,
        "main theorem: upper bound for w_p of A*TB through a function pair",
        "aux_a, aux_b default to identities and β to ½; erratum: fails for r > 1 and n >= 2 \
         (T_1 = T_2 = I, A = B = I gives 2^r <= 2)"),
    entry("C21", "w_p^{rp}(T) ≤ ½‖Σ(f^{2rp}(|T_i|) + g^{2rp}(|T_i*|))‖", app(AtLeast(1.0), Any, &[]), EstimateOnSmallerSide,
        "main theorem with A = B = I", "β defaults to ½; erratum: fails for r > 1 and n >= 2 as the main theorem"),
    entry("C22", "w_p^{rp}(A_1*T_1B_1, …) ≤ ½‖Σ((B_i*|T_i|B_i)^{rp} + (A_i*|T_i*|A_i)^{rp})‖",
        app(AtLeast(1.0), Any, &[]), EstimateOnSmallerSide,
        "main theorem with f = g = √t", "aux_a, aux_b default to identities; erratum: fails for r > 1 and n >= 2"),
    entry("C23", "w_p^{rp}(A_1*B_1, …) ≤ ½‖Σ(|B_i|^{2rp} + |A_i|^{2rp})‖", app(AtLeast(1.0), Any, &[]), EstimateOnSmallerSide,
        "main theorem with T_i = I",
        "the primary tuple supplies B_i and aux_a supplies A_i (identities by default); erratum: fails for r > 1 and n >= 2"),
    entry("C24", "w_p^p(T) ≤ ½‖Σ(|T_i|^{2αp} + |T_i*|^{2(1−α)p})‖, and the α = ½ case",
        app(AtLeast(1.0), Any, &[]), EstimateOnSmallerSide, "main theorem with r = 1 and f = t^α", ""),
    entry("C25", "w_p^p(B,C) ≤ ½‖|B|^{2αp}+|B*|^{2(1−α)p}+|C|^{2αp}+|C*|^{2(1−α)p}‖, and the α = ½ case",
        app(AtLeast(1.0), Pair, &[]), EstimateOnSmallerSide, "two-operator form of the r = 1 bound", ""),
    entry("C26", "w_p(T) ≤ ½‖Σ(|T_i|^{2α} + |T_i*|^{2(1−α)})^p‖^{1/p}", app(AtLeast(1.0), Any, &[]), EstimateOnSmallerSide,
        "proposition: bound through the arithmetic-geometric mean", ""),
    entry("C27", "w_p(T) ≤ ‖Σ(α|T_i|^p + (1−α)|T_i*|^p)‖^{1/p}", app(AtLeast(2.0), Any, &[]), EstimateOnSmallerSide,
        "proposition: convex-combination bound for p >= 2", ""),
    entry("C28", "w_p^p(T) ≤ ½‖Σ(|T_i|^p+|T_i*|^p)‖ (p ≥ 2), and for pairs w_p^p(B,C) ≤ ‖α|B|^p+(1−α)|B*|^p+α|C|^p+(1−α)|C*|^p‖ with its α = ½ case",
        app(AtLeast(1.0), Any, &[]), EstimateOnSmallerSide,
        "remark: special cases of the convex-combination bound",
        "part (1) inherits p >= 2; part (2) is evaluated for pairs at every p >= 1 as stated; \
         erratum: part (2) with α ≠ ½ can fail for p < 2 (B = x e_1*, C = x e_2*, x = (1,1)/√2, α = 1, p = 1)"),
    entry("C29", "w_p(T) ≤ (Σ‖α|T_i|^{2r} + (1−α)|T_i*|^{2r}‖^{p/(2r)})^{1/p}", app(AtLeast(1.0), Any, &[]), EstimateOnSmallerSide,
        "proposition: bound through McCarthy and power means", ""),
    entry("C30", "α = ½ case of C29, and its pair forms with the 2^{−1/(2r)} factor", app(AtLeast(1.0), Any, &[]), EstimateOnSmallerSide,
        "remark: special cases of the power-mean bound", "pair forms are evaluated when the tuple is a pair"),
    entry("LC1", "a^α b^{1−α} ≤ αa + (1−α)b ≤ [αa^r + (1−α)b^r]^{1/r}, r ≥ 1",
        app(NoP, NoTuple, &[Scalars(2)]), Certified, "lemma: weighted AM-GM and power means", ""),
    entry("LC2", "|⟨Ax,y⟩|² ≤ ⟨|A|^{2α}x,x⟩⟨|A*|^{2(1−α)}y,y⟩", app(NoP, Single, &[Vectors(2)]), Certified,
        "lemma: mixed Schwarz inequality", ""),
    entry("LC3", "|⟨Ax,y⟩| ≤ ‖f(|A|)x‖·‖g(|A*|)y‖, f = t^β, g = t^{1−β}", app(NoP, Single, &[Vectors(2)]), Certified,
        "lemma: Schwarz inequality for a function pair", "β defaults to ½"),
    entry("LC4", "⟨Ax,x⟩^r ≤ ⟨A^r x,x⟩ for r ≥ 1 and the reverse for 0 < r ≤ 1, A ≥ 0, ‖x‖ = 1",
        app(NoP, Single, &[Psd, Vectors(1)]), Certified, "lemma: McCarthy inequality", ""),
    entry("LC5", "Clarkson: 2(‖x‖^p+‖y‖^p)^{q−1} ≤ ‖x+y‖^q+‖x−y‖^q; 2(‖x‖^p+‖y‖^p) ≤ ‖x+y‖^p+‖x−y‖^p ≤ 2^{p−1}(‖x‖^p+‖y‖^p); ‖x+y‖^p+‖x−y‖^p ≤ 2(‖x‖^q+‖y‖^q)^{p−1}; p ≥ 2, reversed for 1 < p ≤ 2",
        app(Above(1.0), NoTuple, &[Vectors(2)]), Certified, "lemma: Clarkson inequalities",
        "vectors of dimension 1 are complex scalars; reversed-regime"),
    entry("P1", "½ max‖T_i‖ ≤ w_p(T) ≤ Σ‖T_i‖, so w_p(T) = 0 exactly when T = 0", app(AtLeast(1.0), Any, &[]), Mixed,
        "introduction: w_p is a norm (definiteness)", "definiteness is checked through norm equivalence"),
    entry("P2", "w_p(λT) = |λ| w_p(T)", app(AtLeast(1.0), Any, &[]), Mixed,
        "introduction: w_p is a norm (homogeneity)", "two links, one per direction"),
    entry("P3", "w_p(T + T') ≤ w_p(T) + w_p(T')", app(AtLeast(1.0), Any, &[AuxA]), Mixed,
        "introduction: w_p is a norm (triangle inequality)", "T' is aux_a"),
    entry("P4", "w_p(X*T_1X, …, X*T_nX) ≤ ‖X‖² w_p(T)", app(AtLeast(1.0), Any, &[AuxX]), Mixed,
        "introduction: w_p is a norm (congruence bound)", ""),
];

pub fn catalog_list() -> &'static [InequalityCheck] {
    &CATALOG
}

pub fn catalog_entry(id: &str) -> Result<&'static InequalityCheck> {
    CATALOG.iter().find(|e| e.id == id).ok_or_else(|| Error::UnknownCheck(id.to_string()))
}
