//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line
//! and then asserts it.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use opradius_core::ensembles::{draw_matrix, draw_tuple, unit_vector_from};
use opradius_core::linalg::{cartesian_parts, inner, operator_norm};
use opradius_core::rng::{label_of, Stream};
use opradius_core::{
    evaluate_check, numerical_radius, run_suite, wp_gradient, wp_radius, CheckParams, ComplexMatrix, EnsembleKind,
    EnsembleSpec, OperatorTuple, OptimizerOptions, SuiteConfig, SuiteReport, UnitVector, Verdict, C64,
};
use serde_json::Value;
use tempfile::TempDir;

fn verdict_line(n: u32, pass: bool, detail: &str) {
    println!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

fn seed_for(tag: &str, k: u64) -> u64 {
    Stream::new(2024).derive(label_of(tag)).derive_seed(k)
}

fn dim_for(k: u64) -> usize {
    2 + (k % 4) as usize
}

fn opradius(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_opradius")).args(args).output().expect("spawn opradius")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn criterion_1_catalog_soundness() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("suite.json");
    let start = Instant::now();
    let run = opradius(&[
        "suite", "--seed", "42", "--dims", "2,3,4,5", "--trials", "1000", "--entries", "all", "--out", path(&out),
    ]);
    let elapsed = start.elapsed();
    let code = run.status.code().unwrap();
    assert!(code == 0 || code == 5, "suite exited {code}: {}", String::from_utf8_lossy(&run.stderr));
    let report: SuiteReport = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let checks = report.checks();
    let rate = report.inconclusive() as f64 / checks as f64;
    println!();
    for e in report.entries.iter().filter(|e| e.inconclusive + e.violations > 0) {
        println!(
            "  {}: {} checks, {} inconclusive, {} violations, worst relative slack {:?}",
            e.id, e.checks, e.inconclusive, e.violations, e.worst_slack
        );
    }
    let pass = elapsed < Duration::from_secs(600) && report.violations() == 0 && rate < 0.005;
    verdict_line(
        1,
        pass,
        &format!(
            "{checks} checks in {:.1}s, {} violations, inconclusive rate {:.3}%",
            elapsed.as_secs_f64(),
            report.violations(),
            100.0 * rate
        ),
    );
}

#[test]
fn criterion_2_sharpness_and_equality_anchors() {
    let opts = OptimizerOptions::default();
    let mut worst = [0.0f64; 4];

    for k in 0..200u64 {
        let b = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Ginibre, dim_for(k), seed_for("c8", k))).unwrap();
        let p = [1.0, 1.5, 2.0, 3.0][(k % 4) as usize];
        let mut params = CheckParams::new(OperatorTuple::pair(b.clone(), b).unwrap()).with_p(p);
        params.opts = opts.clone().with_seed(k);
        let r = evaluate_check("C8", &params).unwrap();
        worst[0] = worst[0].max(r.slack.abs());
    }

    for k in 0..200u64 {
        let a = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Ginibre, dim_for(k), seed_for("we", k))).unwrap();
        let (b, c) = cartesian_parts(&a);
        let we = wp_radius(&OperatorTuple::pair(b, c).unwrap(), 2.0, &opts.clone().with_seed(k)).unwrap().value;
        let w = numerical_radius(&a, &opts).unwrap().value;
        worst[1] = worst[1].max((we - w).abs());
    }

    for k in 0..200u64 {
        let t = draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, dim_for(k), 2, seed_for("c6", k))).unwrap();
        let p = [1.0, 1.5, 2.0, 3.0][(k % 4) as usize];
        let mut params = CheckParams::new(t).with_p(p);
        params.q = Some(p);
        params.opts = opts.clone().with_seed(k);
        let r = evaluate_check("C6", &params).unwrap();
        worst[2] = worst[2].max(r.links.iter().map(|l| l.slack.abs()).fold(0.0, f64::max));
    }

    for k in 0..200u64 {
        let h = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Hermitian, dim_for(k), seed_for("herm", k))).unwrap();
        let w = numerical_radius(&h, &opts).unwrap().value;
        worst[3] = worst[3].max((w - operator_norm(&h).unwrap()).abs());
    }

    let pass = worst[0] <= 1e-6 && worst[1] <= 1e-6 && worst[2] <= 1e-6 && worst[3] <= 1e-8;
    verdict_line(
        2,
        pass,
        &format!(
            "max deviations: C8 at B = C {:.1e}, w_e vs w {:.1e}, C6 at p = q {:.1e}, w vs norm (Hermitian) {:.1e}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    );
}

/// Largest `|⟨Ax, x⟩|` over `samples` uniform points of the unit sphere.
fn sphere_oracle(a: &ComplexMatrix, samples: usize, seed: u64) -> f64 {
    let mut rng = Stream::new(seed);
    (0..samples)
        .map(|_| a.quadratic_form(unit_vector_from(a.dim(), &mut rng).as_slice()).norm())
        .fold(0.0, f64::max)
}

#[test]
fn criterion_3_oracle_agreement() {
    let opts = OptimizerOptions::default();
    let j2 = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
    let est = numerical_radius(&j2, &opts).unwrap();
    let oracle = sphere_oracle(&j2, 1_000_000, 7);
    let upper = est.upper.unwrap();
    let jordan_ok = (est.value - 0.5).abs() <= 1e-6 && oracle <= upper && est.value >= oracle && est.value - oracle <= 1e-3;

    let mut bracketed = 0;
    let mut worst_gap = 0.0f64;
    for k in 0..100u64 {
        let a = draw_matrix(&EnsembleSpec::matrix(EnsembleKind::Ginibre, dim_for(k), seed_for("oracle", k))).unwrap();
        let e = numerical_radius(&a, &opts).unwrap();
        let o = sphere_oracle(&a, 100_000, k);
        if e.value >= o && o <= e.upper.unwrap() {
            bracketed += 1;
        }
        worst_gap = worst_gap.max(e.upper.unwrap() - e.value);
    }
    verdict_line(
        3,
        jordan_ok && bracketed == 100,
        &format!(
            "w(J2) = {:.12} (upper {upper:.6}, sphere oracle {oracle:.6}); {bracketed}/100 enclosures bracket the oracle, widest {worst_gap:.1e}",
            est.value
        ),
    );
}

fn objective_sum(t: &OperatorTuple, p: f64, x: &[C64]) -> f64 {
    t.operators().iter().map(|op| op.quadratic_form(x).norm().powf(p)).sum()
}

#[test]
fn criterion_4_gradient_matches_finite_differences() {
    let h = 1e-6;
    let mut worst = 0.0f64;
    for k in 0..500u64 {
        let p = [1.5, 2.0, 3.0][(k % 3) as usize];
        let n = dim_for(k);
        let t = draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, n, 1 + (k % 3) as usize, seed_for("grad", k)))
            .unwrap();
        let mut rng = Stream::new(seed_for("grad-x", k));
        let x = unit_vector_from(n, &mut rng);
        let g = wp_gradient(&t, p, &x).unwrap();
        let d = UnitVector::normalize(g.clone()).unwrap();
        let along = |s: f64| {
            let y: Vec<C64> = x.as_slice().iter().zip(d.as_slice()).map(|(a, b)| a + b * s).collect();
            objective_sum(&t, p, UnitVector::normalize(y).unwrap().as_slice())
        };
        let fd = (along(h) - along(-h)) / (2.0 * h);
        let analytic = 2.0 * inner(d.as_slice(), &g).re;
        worst = worst.max((fd - analytic).abs() / analytic.abs());
    }
    verdict_line(4, worst <= 1e-5, &format!("500 triples, worst relative error {worst:.2e}"));
}

fn suite(entries: &[&str], trials: usize, tolerance: f64, seed: u64) -> SuiteReport {
    let cfg = SuiteConfig {
        seed,
        dims: vec![2, 3, 4, 5],
        trials,
        entries: entries.iter().map(|s| s.to_string()).collect(),
        tolerance,
        ..SuiteConfig::default()
    };
    run_suite(&cfg).unwrap()
}

fn breakdown(report: &SuiteReport) -> String {
    report
        .entries
        .iter()
        .map(|e| format!("{} {}/{}", e.id, e.holds, e.checks))
        .collect::<Vec<_>>()
        .join(", ")
}

#[test]
fn criterion_5_lemma_suite() {
    let report = suite(&["LC1", "LC2", "LC3", "LC4", "LC5"], 10_000, 1e-10, 5);
    let pass = report.entries.iter().all(|e| e.trials == 10_000 && e.holds == e.checks);
    verdict_line(5, pass, &format!("holds/checks: {}", breakdown(&report)));
}

#[test]
fn criterion_6_norm_axioms() {
    let report = suite(&["P1", "P2", "P3", "P4"], 500, 1e-6, 6);
    let axioms_ok = report.entries.iter().all(|e| e.trials == 500 && e.holds == e.checks);

    // Minkowski on the moduli vectors that define w_p.
    let mut minkowski_fail = 0;
    for k in 0..500u64 {
        let n = dim_for(k);
        let len = 1 + (k % 4) as usize;
        let p = [1.0, 1.5, 2.0, 3.0][(k % 4) as usize];
        let s = draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, n, len, seed_for("mink-s", k))).unwrap();
        let t = draw_tuple(&EnsembleSpec::tuple(EnsembleKind::Ginibre, n, len, seed_for("mink-t", k))).unwrap();
        let x = unit_vector_from(n, &mut Stream::new(seed_for("mink-x", k)));
        let moduli = |t: &OperatorTuple| -> Vec<C64> {
            t.operators().iter().map(|op| op.quadratic_form(x.as_slice())).collect()
        };
        let lp = |v: &[C64]| v.iter().map(|z| z.norm().powf(p)).sum::<f64>().powf(1.0 / p);
        let (a, b) = (moduli(&s), moduli(&t));
        let sum: Vec<C64> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
        if lp(&sum) > (lp(&a) + lp(&b)) * (1.0 + 1e-6) {
            minkowski_fail += 1;
        }
    }
    verdict_line(
        6,
        axioms_ok && minkowski_fail == 0,
        &format!("holds/checks: {}; Minkowski failures {minkowski_fail}/500", breakdown(&report)),
    );
}

#[test]
fn criterion_7_determinism() {
    let dir = TempDir::new().unwrap();
    let m = dir.path().join("m.json");
    let t = dir.path().join("t.json");
    std::fs::write(&m, r#"{"dim":2,"entries":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#).unwrap();
    std::fs::write(
        &t,
        r#"{"dim":2,"operators":[{"dim":2,"entries":[[[1,1],[2,0]],[[0,-1],[0.5,0]]]},
                                 {"dim":2,"entries":[[[0,0],[1,0]],[[3,0],[0,2]]]}]}"#,
    )
    .unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let suite_args = |out: &Path| {
        vec![
            "suite".to_string(),
            "--seed".into(),
            "9".into(),
            "--dims".into(),
            "2,3".into(),
            "--trials".into(),
            "3".into(),
            "--out".into(),
            path(out).into(),
            "--csv".into(),
        ]
    };
    let commands: Vec<Vec<String>> = vec![
        vec!["compute", "--radius", "w", "--input", path(&m)].into_iter().map(String::from).collect(),
        vec!["compute", "--radius", "wp", "--p", "1.5", "--input", path(&t)].into_iter().map(String::from).collect(),
        vec!["compute", "--radius", "we", "--input", path(&t), "--seed", "3"].into_iter().map(String::from).collect(),
        vec!["verify", "--check", "C7", "--p", "3", "--input", path(&t)].into_iter().map(String::from).collect(),
        vec!["verify", "--check", "C20", "--p", "1.5", "--r", "2", "--beta", "0.3", "--input", path(&t)]
            .into_iter()
            .map(String::from)
            .collect(),
        vec!["catalog".to_string()],
        vec!["catalog".into(), "--json".into()],
    ];
    let mut mismatches = Vec::new();
    for args in &commands {
        let x = Command::new(env!("CARGO_BIN_EXE_opradius")).args(args).output().unwrap();
        let y = Command::new(env!("CARGO_BIN_EXE_opradius")).args(args).output().unwrap();
        if x.stdout != y.stdout || x.status.code() != y.status.code() || x.stdout.is_empty() {
            mismatches.push(args.join(" "));
        }
    }
    let one = Command::new(env!("CARGO_BIN_EXE_opradius")).args(suite_args(&a)).output().unwrap();
    let two = Command::new(env!("CARGO_BIN_EXE_opradius"))
        .args(suite_args(&b))
        .env("OPRADIUS_THREADS", "1")
        .output()
        .unwrap();
    let read = |p: &Path| std::fs::read(p).unwrap();
    if one.status.code() != two.status.code()
        || read(&a) != read(&b)
        || read(&a.with_extension("csv")) != read(&b.with_extension("csv"))
    {
        mismatches.push("suite report files".into());
    }
    let parsed: Value = serde_json::from_slice(&read(&a)).unwrap();
    assert_eq!(parsed["entries"].as_array().unwrap().len(), 39);
    verdict_line(
        7,
        mismatches.is_empty(),
        &format!("{} commands run twice plus a suite at two thread counts; mismatches {mismatches:?}", commands.len()),
    );
}

#[test]
fn verdict_enum_round_trips() {
    assert_eq!(serde_json::to_string(&Verdict::Inconclusive).unwrap(), "\"INCONCLUSIVE\"");
}
