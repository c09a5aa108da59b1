use num_complex::Complex64;

use kummer_core::algebra::parse::parse_rational_function as parse;
use kummer_core::jet::jet_invert;
use kummer_numeric::{
    check_cone_plane, check_groupoid_closure, check_projective_relation, integrate_companion, integrate_foliation,
    sympow_initial, Dopri5, NumericPath, VerifierConfig,
};
use rand::{Rng, SeedableRng};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn foliation_inverts_the_projective_quotient() {
    // τ(λ) = ψ₁/ψ₂ from the companion system; its inverse λ(τ) must be the
    // foliation solution through the inverted 2-jet.
    let r = parse("l").unwrap();
    let cfg = VerifierConfig::default();
    let lambda_end = 0.6;
    let proj = check_projective_relation(&r, &NumericPath::segment(0.0, lambda_end), &cfg).unwrap();
    let first = &proj.tau.samples[0];
    let tau_jet = kummer_core::jet::Jet::new(first.lambda, first.values[0], first.values[1..].to_vec()).unwrap();
    let inv = jet_invert(&tau_jet).unwrap();
    let tau0 = *inv.source();
    let tau_end = proj.tau.last().values[0];

    let path = NumericPath::new(vec![tau0, tau_end]).unwrap();
    let sol = integrate_foliation(&r, [*inv.target(), inv.derivative(1), inv.derivative(2)], &path, &cfg).unwrap();
    assert!((sol.last().values[0] - c(lambda_end)).norm() < 1e-8, "{}", sol.last().values[0]);
    assert!(sol.max_residual() < 1e-8);
}

#[test]
fn halving_tolerance_does_not_increase_residuals() {
    let r = parse("l").unwrap();
    let path = NumericPath::segment(0.0, 1.0);
    let mut last = f64::INFINITY;
    for tol in [1e-6, 1e-8, 1e-10] {
        let cfg = VerifierConfig::default().with_tolerance(tol);
        let m = check_projective_relation(&r, &path, &cfg).unwrap().max_residual;
        assert!(m <= last * 1.5, "tol {tol}: {m} vs {last}");
        last = m;
    }
}

#[test]
fn wronskian_drift_on_random_potentials() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..10 {
        let a: i64 = rng.gen_range(-3..=3);
        let b: i64 = rng.gen_range(1..=4);
        let r = parse(&format!("{a}*l^2 + {b}/(l-3)")).unwrap();
        let init = [[c(1.0), c(rng.gen_range(-1.0..1.0))], [c(rng.gen_range(-1.0..1.0)), c(2.0)]];
        let path = NumericPath::new(vec![c(0.0), Complex64::new(0.5, 0.5), c(1.0)]).unwrap();
        let sol = integrate_companion(&r, init, &path, &VerifierConfig::default()).unwrap();
        assert!(sol.wronskian_drift < 1e-8, "{r}: {}", sol.wronskian_drift);
    }
}

#[test]
fn closure_on_random_near_identity_jets() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let r = parse("l").unwrap();
    for _ in 0..5 {
        let mut d = || c(rng.gen_range(-0.05..0.05));
        let mid = d();
        let inner = kummer_core::jet::Jet::new(c(0.0), mid, vec![c(1.0) + d(), d()]).unwrap();
        let outer = kummer_core::jet::Jet::new(mid, mid + d(), vec![c(1.0) + d(), d()]).unwrap();
        let chk = check_groupoid_closure(&r, &inner, &outer, &NumericPath::segment(0.0, 1.0), &VerifierConfig::default()).unwrap();
        assert!(chk.composite_residual < 1e-6 && chk.inverse_residual < 1e-6, "{chk:?}");
    }
}

#[test]
fn random_plane_residual_is_truncation_sized() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    let r = parse("l").unwrap();
    let x0 = c(0.25);
    let mut v = || [c(rng.gen_range(-1.0..1.0)), c(rng.gen_range(-1.0..1.0)), c(rng.gen_range(-1.0..1.0))];
    let plane = [sympow_initial(&r, x0, v()), sympow_initial(&r, x0, v())];
    let chk = check_cone_plane(&r, x0, plane, 12).unwrap();
    assert!(!chk.witnesses.is_empty());
    for w in &chk.witnesses {
        assert!(w.sqrt_residual < 1e-6, "{w:?}");
    }
}

#[test]
fn csv_export_has_one_row_per_sample() {
    let r = parse("l").unwrap();
    let chk = check_projective_relation(&r, &NumericPath::segment(0.0, 1.0), &VerifierConfig::default()).unwrap();
    let text = chk.tau.to_csv_string().unwrap();
    assert_eq!(text.lines().count(), chk.tau.samples.len() + 1);
    assert!(text.starts_with("s,re_lambda,im_lambda,re_d0,im_d0"));
}

#[test]
fn integrator_is_usable_directly() {
    let steps = Dopri5::new(1e-10, 1e-10)
        .integrate(c(0.0), c(1.0), &[c(0.0)], |z, _, out| {
            out[0] = z * z;
            Ok(())
        })
        .unwrap();
    assert!((steps.last().unwrap().y[0] - c(1.0 / 3.0)).norm() < 1e-12);
}
