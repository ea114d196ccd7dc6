//! Acceptance battery: each test covers one exit criterion and prints a
//! single pass/fail line for it.

use std::process::Command;

use lightlike_core::dualmetric::{
    chart_nondeg, check_4_18, classify_acm, prop_suite, relation_suite, thm51_chart, thm51_lie,
};
use lightlike_core::hypersurface::{chart_point_data, chart_point_full, lie_point_data};
use lightlike_core::report::CheckSet;
use lightlike_core::rtl::{
    holomorphy_residual, kaehler_suite, ricci_suite, rtl_detect, rtl_suite, uniqueness_suite,
};
use lightlike_core::scenarios::{
    by_name, control_a, control_c, example_61, example_62, sample_points, SceneData,
};
use lightlike_core::{Field, Rational};

const TOL: f64 = 1e-9;

fn verdict(name: &str, ok: bool) -> bool {
    println!("acceptance {name}: {}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn chart_of(sc: &lightlike_core::scenarios::Scene) -> lightlike_core::hypersurface::ChartScene {
    match &sc.data {
        SceneData::Chart(c) => c.clone(),
        _ => unreachable!("expected chart scene"),
    }
}

fn lie_of(sc: &lightlike_core::scenarios::Scene) -> lightlike_core::hypersurface::LieScene {
    match &sc.data {
        SceneData::Lie(l) => l.clone(),
        _ => unreachable!("expected lie scene"),
    }
}

fn all_pass(cs: &CheckSet, tol: f64) -> bool {
    cs.iter().all(|(_, r)| r.passes(tol))
}

/// 1: the matrix-algebra scene evaluates exactly: frame axioms with zero
/// residual, the expected radical, transversal, gauge scalar, and screen,
/// and positive radical transversal detection.
#[test]
fn criterion_01_exact_scene() {
    let sc = example_62();
    let ls = lie_of(&sc);
    let pd = lie_point_data(&ls, 0.0).unwrap();
    let mut cs = CheckSet::new();
    lightlike_core::rtl::frame_suite(&ls.amb, &pd, &mut cs);
    let frame_zero = cs.get("eq_2_2").unwrap().passes(0.0);
    let r = |n: i64| Rational::from_int(n);
    let half = Rational::from_int(1) / Rational::from_int(2);
    let xi_ok = pd.fd.xi == vec![r(1), r(0), r(0), r(-1)];
    let n_ok = pd.fd.n == vec![-half.clone(), r(0), r(0), -half];
    let b_ok = pd.fd.b == r(-2);
    let screen_ok = pd.fd.w
        == vec![
            vec![r(0), r(1), r(0), r(0)],
            vec![r(0), r(0), r(1), r(0)],
        ];
    let holo_ok = holomorphy_residual(&ls.amb, &pd).passes(0.0);
    let (detected, _) = rtl_detect(&ls.amb, &pd, TOL);
    let ok = frame_zero && xi_ok && n_ok && b_ok && screen_ok && holo_ok && detected;
    assert!(verdict("01 exact matrix scene", ok));
}

/// 2: the detection/holomorphy biconditional holds on the exact scene and
/// on 100 seeded quadric points, and the forced-screen control fails both
/// sides.
#[test]
fn criterion_02_biconditional() {
    let mut ok = true;
    // Exact scene.
    let sc = example_62();
    let ls = lie_of(&sc);
    let pd = lie_point_data(&ls, 0.0).unwrap();
    let mut cs = CheckSet::new();
    rtl_suite(&ls.amb, &pd, true, TOL, &mut cs);
    ok &= all_pass(&cs, 0.0);
    // Quadric scene, 100 seeded points.
    let sc = example_61(1);
    let ch = chart_of(&sc);
    for x in sample_points(&ch, 100, 42).unwrap() {
        let pd = chart_point_data::<f64>(&ch, &x, TOL, TOL).unwrap();
        let mut cs = CheckSet::new();
        rtl_suite(&ch.view, &pd, true, TOL, &mut cs);
        ok &= all_pass(&cs, TOL);
    }
    // Control: both sides fail.
    let ca = control_a();
    let ls = lie_of(&ca);
    let pd = lie_point_data(&ls, 0.0).unwrap();
    let (is_rtl, _) = rtl_detect(&ls.amb, &pd, TOL);
    let holo = holomorphy_residual(&ls.amb, &pd);
    ok &= !is_rtl && !holo.passes(TOL);
    assert!(verdict("02 detection-holomorphy biconditional", ok));
}

/// 3: the full identity suite on the quadric scene, 100 points, seed 42,
/// every residual within 1e-9.
#[test]
fn criterion_03_identity_suite() {
    let sc = example_61(1);
    let ch = chart_of(&sc);
    let mut cs = CheckSet::new();
    for x in sample_points(&ch, 100, 42).unwrap() {
        let pd = chart_point_data::<f64>(&ch, &x, TOL, TOL).unwrap();
        kaehler_suite(&ch.view, &pd, TOL, &mut cs).unwrap();
    }
    let ids = [
        "eq_4_1", "eq_4_2", "eq_4_3", "eq_4_4", "eq_4_7", "eq_4_8", "eq_4_9", "eq_4_10",
        "eq_4_11", "eq_4_12",
    ];
    let ok = ids.iter().all(|id| cs.get(id).unwrap().passes(TOL));
    assert!(verdict("03 identity suite", ok));
}

/// 4: ten independently constructed holomorphic second screens per scene
/// reduce to the canonical one: zero shift, unchanged transversal,
/// semi-orthogonal mixing matrix.
#[test]
fn criterion_04_screen_uniqueness() {
    let mut ok = true;
    let sc = example_62();
    let ls = lie_of(&sc);
    let pd = lie_point_data(&ls, 0.0).unwrap();
    let mut cs = CheckSet::new();
    uniqueness_suite(&ls.amb, &pd, 10, TOL, &mut cs).unwrap();
    ok &= all_pass(&cs, 0.0);
    let sc = example_61(1);
    let ch = chart_of(&sc);
    for x in sample_points(&ch, 10, 42).unwrap() {
        let pd = chart_point_data::<f64>(&ch, &x, TOL, TOL).unwrap();
        let mut cs = CheckSet::new();
        uniqueness_suite(&ch.view, &pd, 10, TOL, &mut cs).unwrap();
        ok &= all_pass(&cs, TOL);
    }
    assert!(verdict("04 screen uniqueness", ok));
}

/// 5: Ricci symmetry within 1e-8 and closed tau within 1e-9 over 100
/// quadric points.
#[test]
fn criterion_05_ricci() {
    let sc = example_61(1);
    let ch = chart_of(&sc);
    let mut cs = CheckSet::new();
    for x in sample_points(&ch, 100, 42).unwrap() {
        let pd = chart_point_full(&ch, &x, TOL, TOL).unwrap();
        ricci_suite(&pd, 1e-8, TOL, &mut cs);
    }
    let ok = cs.get("prop_4_1_ric").unwrap().passes(1e-8)
        && cs.get("prop_4_1_dtau").unwrap().passes(TOL)
        && cs.get("prop_4_1").unwrap().passes(0.0);
    assert!(verdict("05 ricci symmetry", ok));
}

/// 6: correspondence round trip on the quadric scene: forward frame
/// residuals, a time-like unit normal in normal section, and mutual
/// orthogonality of the three bundles.
#[test]
fn criterion_06_round_trip() {
    let sc = example_61(1);
    let ch = chart_of(&sc);
    let mut ok = true;
    let mut cs = CheckSet::new();
    for x in sample_points(&ch, 100, 42).unwrap() {
        let pd = chart_point_data::<f64>(&ch, &x, TOL, TOL).unwrap();
        let (eps, r418) = check_4_18(&ch, &x).unwrap();
        ok &= eps == -1 && r418.passes(TOL);
        let nd = chart_nondeg(&ch, &x, &pd, TOL).unwrap();
        thm51_chart(&ch, &pd, &nd, &mut cs);
        ok &= pd.fd.frame_residual(&ch.view.metric.gram) <= TOL;
    }
    ok &= ["thm_5_1_forward", "thm_5_1_backward", "eq_4_19"]
        .iter()
        .all(|id| cs.get(id).unwrap().passes(TOL));
    assert!(verdict("06 correspondence round trip", ok));
}

/// 7: relation suite between the induced objects of both structures, all
/// residuals within 1e-9 (same shape operator, same induced connection).
#[test]
fn criterion_07_relations() {
    let sc = example_61(1);
    let ch = chart_of(&sc);
    let mut cs = CheckSet::new();
    for x in sample_points(&ch, 100, 42).unwrap() {
        let pd = chart_point_data::<f64>(&ch, &x, TOL, TOL).unwrap();
        let nd = chart_nondeg(&ch, &x, &pd, TOL).unwrap();
        relation_suite(&ch, &pd, &nd, &mut cs).unwrap();
    }
    let ok = all_pass(&cs, TOL);
    assert!(verdict("07 relation suite", ok));
}

/// 8: the quadric scene classifies as F5, the flat control as F0, and the
/// classification equivalences hold on both.
#[test]
fn criterion_08_classification() {
    let mut ok = true;
    for (name, expected, pts) in [("example_61", "F5", 50), ("control_d", "F0", 20)] {
        let sc = by_name(name, 1).unwrap();
        let ch = chart_of(&sc);
        let mut cs = CheckSet::new();
        for x in sample_points(&ch, pts, 42).unwrap() {
            let pd = chart_point_data::<f64>(&ch, &x, TOL, TOL).unwrap();
            let nd = chart_nondeg(&ch, &x, &pd, TOL).unwrap();
            let cls = classify_acm(&ch, &pd, &nd, TOL).unwrap();
            ok &= cls.name == expected;
            prop_suite(&pd, &nd, &cls, TOL, &mut cs);
        }
        for id in ["prop_5_1", "prop_5_2", "prop_5_3", "prop_5_4"] {
            ok &= cs.get(id).unwrap().passes(0.0);
        }
    }
    assert!(verdict("08 shape operator classification", ok));
}

/// 9: on the Hermitian control the gauge scalar vanishes identically (in
/// exact f64 arithmetic) and detection is negative everywhere.
#[test]
fn criterion_09_hermitian_control() {
    let sc = control_c();
    let ch = chart_of(&sc);
    let mut ok = true;
    for x in sample_points(&ch, 100, 42).unwrap() {
        let pd = chart_point_data::<f64>(&ch, &x, TOL, TOL).unwrap();
        ok &= pd.fd.b == 0.0;
        let (is_rtl, _) = rtl_detect(&ch.view, &pd, TOL);
        ok &= !is_rtl;
    }
    assert!(verdict("09 hermitian control", ok));
}

/// 10: two runs of the binary on an identical manifest produce
/// byte-identical reports.
#[test]
fn criterion_10_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    std::fs::write(
        &manifest,
        r#"{"scene": "example_61", "n": 1, "sampler": {"points": 25, "seed": 42}}"#,
    )
    .unwrap();
    let mut reports = Vec::new();
    for name in ["a.json", "b.json"] {
        let path = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_verify"))
            .arg(&manifest)
            .arg("--report")
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
        reports.push(std::fs::read(&path).unwrap());
    }
    let ok = reports[0] == reports[1];
    assert!(verdict("10 determinism", ok));
}

/// Exact correspondence direction on the matrix scene, exercised as part
/// of criterion 6's theorem from the other metric's viewpoint.
#[test]
fn criterion_06b_exact_backward() {
    let sc = example_62();
    let ls = lie_of(&sc);
    let pd = lie_point_data(&ls, 0.0).unwrap();
    let mut cs = CheckSet::new();
    thm51_lie(&ls, &pd, sc.epsilon.unwrap(), &mut cs).unwrap();
    let ok = all_pass(&cs, 0.0);
    assert!(verdict("06b exact backward correspondence", ok));
}
