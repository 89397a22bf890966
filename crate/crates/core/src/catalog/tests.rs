use super::*;
use crate::ensembles::{draw_matrix, draw_tuple, draw_unit_vector, EnsembleKind, EnsembleSpec};
use crate::linalg::cartesian_parts;

const IDS: [&str; 39] = [
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13", "C14", "C15", "C16", "C17",
    "C18", "C19", "C20", "C21", "C22", "C23", "C24", "C25", "C26", "C27", "C28", "C29", "C30", "LC1", "LC2",
    "LC3", "LC4", "LC5", "P1", "P2", "P3", "P4",
];

fn jordan() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap()
}

fn pair_params(b: ComplexMatrix, c: ComplexMatrix, p: f64) -> CheckParams {
    CheckParams::new(OperatorTuple::pair(b, c).unwrap()).with_p(p)
}

fn link<'a>(report: &'a CheckReport, needle: &str) -> &'a LinkReport {
    report.links.iter().find(|l| l.relation.contains(needle)).unwrap_or_else(|| panic!("no link {needle}"))
}

#[test]
fn registry_contents() {
    let list = catalog_list();
    assert_eq!(list.len(), 39);
    assert_eq!(list.iter().map(|e| e.id).collect::<Vec<_>>(), IDS);
    for e in list {
        assert!(e.applicability.to_string().contains("p "), "{}", e.id);
        assert!(!e.citation.is_empty() && !e.description.is_empty());
    }
    assert!(catalog_entry("C20").unwrap().citation.contains("main theorem"));
    assert_eq!(catalog_entry("NOPE").unwrap_err(), Error::UnknownCheck("NOPE".into()));
}

#[test]
fn function_pair() {
    for beta in [0.3, 0.5, 1.0] {
        let f = FunctionPair::new(beta).unwrap();
        for t in [0.0, 0.5, 1.0, 4.0] {
            assert!((f.f(t) * f.g(t) - t).abs() < 1e-15);
        }
    }
    assert!(FunctionPair::new(0.0).is_err() && FunctionPair::new(1.5).is_err());
}

#[test]
fn c1_scalar_chain() {
    let params = CheckParams::new(OperatorTuple::single(ComplexMatrix::identity(1)));
    let r = evaluate_check("C1", &params).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert_eq!((r.links[0].lhs, r.links[0].rhs, r.links[1].rhs), (0.5, 1.0, 1.0));
}

#[test]
fn c3_single_identity() {
    let params = CheckParams::new(OperatorTuple::single(ComplexMatrix::identity(2)));
    let r = evaluate_check("C3", &params).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert!((r.links[0].lhs - 0.5).abs() < 1e-12);
    assert!((r.links[0].rhs - 1.0).abs() < 1e-12 && (r.links[1].rhs - 1.0).abs() < 1e-12);
}

#[test]
fn c8_sharp_at_equal_jordan_pair() {
    let r = evaluate_check("C8", &pair_params(jordan(), jordan(), 2.0)).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    let h = 0.5f64.sqrt();
    assert!((r.lhs - h).abs() < 1e-6 && (r.rhs - h).abs() < 1e-6 && r.slack.abs() < 1e-6);
}

#[test]
fn c8_equality_for_random_equal_pairs() {
    for seed in 0..10 {
        let b = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Ginibre, 2 + seed as usize % 4, seed)).unwrap();
        for p in [1.0, 1.5, 3.0] {
            let r = evaluate_check("C8", &pair_params(b.clone(), b.clone(), p)).unwrap();
            assert!(r.slack.abs() <= 1e-6, "seed {seed} p {p}: {}", r.slack);
        }
    }
}

#[test]
fn c6_collapses_at_equal_exponents() {
    let t = draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, 3, 2, 5)).unwrap();
    for p in [1.0, 1.5, 3.0] {
        let mut params = CheckParams::new(t.clone()).with_p(p);
        params.q = Some(p);
        let r = evaluate_check("C6", &params).unwrap();
        assert!(r.links.iter().all(|l| l.slack.abs() <= 1e-9), "{:?}", r.links);
    }
}

#[test]
fn lc4_spec_example() {
    let mut params = CheckParams::new(OperatorTuple::single(ComplexMatrix::diag_real(&[0.25, 4.0])));
    let h = 0.5f64.sqrt();
    params.vectors = vec![vec![C64::new(h, 0.0), C64::new(h, 0.0)]];
    params.r = 2.0;
    let r = evaluate_check("LC4", &params).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert!((r.lhs - 4.515625).abs() < 1e-12 && (r.rhs - 8.03125).abs() < 1e-12);
}

#[test]
fn applicability_failures_name_the_constraint() {
    let t = draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, 2, 2, 1)).unwrap();
    let err = evaluate_check("C7", &CheckParams::new(t.clone()).with_p(1.5)).unwrap_err();
    assert!(matches!(&err, Error::NotApplicable { constraint, .. } if constraint.contains("p >= 2")));
    let err = evaluate_check("C9", &CheckParams::new(t.clone()).with_p(2.0)).unwrap_err();
    assert!(matches!(&err, Error::NotApplicable { constraint, .. } if constraint.contains("self-adjoint")));
    let err = evaluate_check("C1", &CheckParams::new(t.clone())).unwrap_err();
    assert!(matches!(err, Error::NotApplicable { .. }));
    let mut params = CheckParams::new(t.clone()).with_p(3.0);
    params.q = Some(2.0);
    assert!(matches!(evaluate_check("C16", &params), Err(Error::NotApplicable { .. })));
    let mut params = CheckParams::new(t);
    params.alphas = Some(vec![0.5, 0.6]);
    assert!(matches!(evaluate_check("C19", &params), Err(Error::NotApplicable { .. })));
    assert_eq!(evaluate_check("XYZ", &params).unwrap_err(), Error::UnknownCheck("XYZ".into()));
}

#[test]
fn reports_are_deterministic_and_digested() {
    let t = draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, 3, 2, 17)).unwrap();
    let params = CheckParams::new(t).with_p(1.5);
    let a = evaluate_check("C13", &params).unwrap();
    let b = evaluate_check("C13", &params).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.digest.len(), 64);
    let other = evaluate_check("C13", &params.clone().with_p(2.0)).unwrap();
    assert_ne!(a.digest, other.digest);
    let json = serde_json::to_value(&a).unwrap();
    assert_eq!(json["verdict"], "HOLDS");
    assert!(json["witness"].is_array());
}

#[test]
fn scale_covariance_of_degree_one_entries() {
    let t = draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, 3, 2, 23)).unwrap();
    let s = 3.7;
    for id in ["C8", "C10", "C13", "C26"] {
        let base = evaluate_check(id, &CheckParams::new(t.clone()).with_p(1.5)).unwrap();
        let scaled = evaluate_check(id, &CheckParams::new(t.map(|op| op.scale_real(s))).with_p(1.5)).unwrap();
        for (l, m) in base.links.iter().zip(&scaled.links) {
            assert!((m.lhs - s * l.lhs).abs() <= 1e-8 * m.lhs.abs().max(1.0), "{id}");
            assert!((m.rhs - s * l.rhs).abs() <= 1e-8 * m.rhs.abs().max(1.0), "{id}");
        }
        assert_eq!(base.verdict, scaled.verdict);
    }
}

#[test]
fn cartesian_identity() {
    for seed in 0..20 {
        let a = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Ginibre, 2 + seed as usize % 4, seed)).unwrap();
        let (b, c) = cartesian_parts(&a);
        let r = evaluate_check("C14", &pair_params(b, c, 2.0)).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
    }
}

#[test]
fn random_instances_of_sound_entries_hold() {
    for seed in 0..6 {
        let dim = 2 + seed as usize % 3;
        let t = draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, dim, 2, seed)).unwrap();
        let (b, c) = cartesian_parts(&t.operators()[0]);
        let herm = OperatorTuple::pair(b, c).unwrap();
        let single = OperatorTuple::single(t.operators()[0].clone());
        let cases: Vec<(&str, OperatorTuple, f64)> = vec![
            ("C1", single.clone(), 1.0),
            ("C2", single.clone(), 1.0),
            ("C3", t.clone(), 1.0),
            ("C4", single, 1.0),
            ("C5", t.clone(), 1.5),
            ("C6", t.clone(), 3.0),
            ("C7", t.clone(), 3.0),
            ("C9", herm.clone(), 3.0),
            ("C10", herm, 2.0),
            ("C15", t.clone(), 2.0),
            ("C19", t.clone(), 1.5),
            ("C24", t.clone(), 1.5),
            ("C25", t.clone(), 2.0),
            ("C27", t.clone(), 3.0),
            ("C29", t.clone(), 1.0),
            ("C30", t.clone(), 2.0),
            ("P1", t.clone(), 1.5),
            ("P2", t.clone(), 3.0),
        ];
        for (id, tuple, p) in cases {
            let mut params = CheckParams::new(tuple).with_p(p);
            params.lambda = C64::new(0.4, -2.0);
            params.alpha = 0.3;
            params.r = 2.0;
            let r = evaluate_check(id, &params).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "{id} seed {seed}: {:?}", r.links);
        }
    }
}

#[test]
fn p3_p4_with_auxiliary_operands() {
    for seed in 0..5 {
        let t = draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, 3, 2, seed)).unwrap();
        let mut params = CheckParams::new(t.clone()).with_p(1.5);
        params.aux_a = Some(draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, 3, 2, seed + 50)).unwrap());
        params.aux_x = Some(draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Ginibre, 3, seed + 90)).unwrap());
        assert_eq!(evaluate_check("P3", &params).unwrap().verdict, Verdict::Holds);
        assert_eq!(evaluate_check("P4", &params).unwrap().verdict, Verdict::Holds);
    }
    let zero = OperatorTuple::pair(ComplexMatrix::zeros(2), ComplexMatrix::zeros(2)).unwrap();
    let r = evaluate_check("P1", &CheckParams::new(zero)).unwrap();
    assert!(r.links.iter().all(|l| l.lhs == 0.0 && l.rhs == 0.0));
}

#[test]
fn lemma_vectors() {
    let a = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Ginibre, 3, 4)).unwrap();
    let mut params = CheckParams::new(OperatorTuple::single(a));
    params.vectors = vec![draw_unit_vector(3, 1).into_inner(), draw_unit_vector(3, 2).into_inner()];
    params.alpha = 0.3;
    params.pair = Some(FunctionPair::new(0.7).unwrap());
    assert_eq!(evaluate_check("LC2", &params).unwrap().verdict, Verdict::Holds);
    assert_eq!(evaluate_check("LC3", &params).unwrap().verdict, Verdict::Holds);
    params.p = 1.5;
    assert_eq!(evaluate_check("LC5", &params).unwrap().verdict, Verdict::Holds);
    params.scalars = vec![0.0, 3.0];
    params.r = 2.0;
    assert_eq!(evaluate_check("LC1", &params).unwrap().verdict, Verdict::Holds);
}

// Counterexamples to statements that fail as printed. Each one is a VIOLATION
// backed by certified quantities.

fn violated(id: &str, params: &CheckParams, needle: &str) {
    let r = evaluate_check(id, params).unwrap();
    assert_eq!(r.verdict, Verdict::Violation, "{id}: {:?}", r.links);
    assert_eq!(link(&r, needle).verdict, Verdict::Violation, "{id}: {:?}", r.links);
}

#[test]
fn erratum_c11_sum_of_radii_lower_bound() {
    let b = ComplexMatrix::identity(2).scale_real(0.5);
    let c = ComplexMatrix::diag_real(&[0.5, -0.5]);
    violated("C11", &pair_params(b.clone(), c.clone(), 2.0), "2^{1/p−1}(Σw^p(B±C))^{1/p} ≤ w_p(B,C)");
    violated("C11", &pair_params(b, c, 1.5), "2^{−1/p}(Σw^p(B±C))^{1/p} ≤ w_p(B,C) [reversed]");
}

#[test]
fn erratum_c12_upper_bound_below_two() {
    let i = ComplexMatrix::identity(2);
    violated("C12", &pair_params(i.clone(), i, 1.5), "w_p(B,C) ≤ 2^{1−2/p}(w^p(B)+w^p(C))^{1/p}");
}

#[test]
fn errata_conjugate_exponent_entries() {
    let i = ComplexMatrix::identity(2);
    let z = ComplexMatrix::zeros(2);
    violated("C16", &pair_params(i.clone(), i.clone(), 3.0), "w_p(B,C) ≤ w_q");
    violated("C17", &pair_params(i.clone(), i.clone(), 2.0), "½(‖B+C‖^q+‖B−C‖^q)^{1/q}");
    // (B+C)/2 = I and (B−C)/2 = 0.
    let r = evaluate_check("C18", &pair_params(i.clone(), i.clone(), 3.0)).unwrap();
    assert_eq!(r.verdict, Verdict::Violation);
    // The reversed regimes hold on the same inputs.
    for id in ["C16", "C17", "C18"] {
        assert_eq!(evaluate_check(id, &pair_params(i.clone(), z.clone(), 1.5)).unwrap().verdict, Verdict::Holds);
        assert_eq!(evaluate_check(id, &pair_params(i.clone(), i.clone(), 1.5)).unwrap().verdict, Verdict::Holds);
    }
}

#[test]
fn erratum_main_theorem_for_r_above_one() {
    let i = ComplexMatrix::identity(2);
    let t = OperatorTuple::pair(i.clone(), i.clone()).unwrap();
    for id in ["C20", "C21", "C22", "C23"] {
        let mut params = CheckParams::new(t.clone()).with_p(1.0);
        params.r = 2.0;
        let r = evaluate_check(id, &params).unwrap();
        assert_eq!(r.verdict, Verdict::Violation, "{id}");
        assert!((r.lhs - 4.0).abs() < 1e-9 && (r.rhs - 2.0).abs() < 1e-9, "{id}: {} {}", r.lhs, r.rhs);
        params.r = 1.0;
        assert_eq!(evaluate_check(id, &params).unwrap().verdict, Verdict::Holds, "{id}");
    }
    // A single operator is unaffected.
    let mut params = CheckParams::new(OperatorTuple::single(i)).with_p(1.0);
    params.r = 2.0;
    assert_eq!(evaluate_check("C21", &params).unwrap().verdict, Verdict::Holds);
}

#[test]
fn erratum_c28_pair_form_below_two() {
    let h = 0.5f64.sqrt();
    let b = ComplexMatrix::from_real_rows(&[&[h, 0.0], &[h, 0.0]]).unwrap();
    let c = ComplexMatrix::from_real_rows(&[&[0.0, h], &[0.0, h]]).unwrap();
    let mut params = pair_params(b, c, 1.0);
    params.alpha = 1.0;
    violated("C28", &params, "‖α|B|^p+(1−α)|B*|^p+α|C|^p+(1−α)|C*|^p‖");
    params.p = 2.0;
    assert_eq!(evaluate_check("C28", &params).unwrap().verdict, Verdict::Holds);
}
