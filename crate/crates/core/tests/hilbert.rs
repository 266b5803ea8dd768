use num_complex::Complex64;

use ncplane::group::AlgebraElement;
use ncplane::hilbert::{
    apply_U, apply_V, apply_W, apply_momentum, apply_position, commutator_check, gaussian, quantize_apply,
    weyl_check, Axis, CommutatorKind, GridSpec, RepError, Wavefunction, WeylParams,
};
use ncplane::symplectic::rational;

fn spec(theta: f64) -> GridSpec {
    GridSpec::new(256, 20.0, theta, 1.0).unwrap()
}

fn expectation(psi: &Wavefunction, image: &Wavefunction) -> Complex64 {
    psi.inner(image) / psi.norm_sqr()
}

#[test]
fn gaussian_moments() {
    let psi = gaussian(spec(0.1), [1.0, -2.5], [0.4, -0.3], 1.0).unwrap();
    assert!((psi.norm() - 1.0).abs() < 1e-12);
    assert!((psi.position_moment(Axis::Q1) - 1.0).abs() < 1e-10);
    assert!((psi.position_moment(Axis::Q2) + 2.5).abs() < 1e-10);
    let p1 = expectation(&psi, &apply_momentum(Axis::Q1, &psi));
    let p2 = expectation(&psi, &apply_momentum(Axis::Q2, &psi));
    assert!((p1 - Complex64::new(0.4, 0.0)).norm() < 1e-8);
    assert!((p2 - Complex64::new(-0.3, 0.0)).norm() < 1e-8);
    assert!(matches!(gaussian(spec(0.1), [15.0, 0.0], [0.0, 0.0], 1.0), Err(RepError::TailOverflow { .. })));
}

#[test]
fn translation_and_composition() {
    let psi = gaussian(spec(0.1), [0.0, 0.0], [0.0, 0.0], 1.0).unwrap();
    let moved = apply_U([1.5, -0.75], &psi);
    let target = gaussian(spec(0.1), [1.5, -0.75], [0.0, 0.0], 1.0).unwrap();
    assert!(moved.sub(&target).norm() < 1e-8);
    let composed = apply_U([0.3, 0.2], &apply_U([-0.8, 0.9], &psi));
    let direct = apply_U([-0.5, 1.1], &psi);
    assert!(composed.sub(&direct).max_abs() < 1e-10);
    assert_eq!(apply_U([0.0, 0.0], &psi).amplitudes(), psi.amplitudes());
}

#[test]
fn unitarity() {
    let psi = gaussian(spec(0.4), [0.5, 0.5], [0.2, -0.1], 1.0).unwrap();
    for image in [apply_U([0.7, -0.2], &psi), apply_V([-0.9, 0.3], &psi), apply_W(2.0, -3.0, &psi)] {
        assert!((image.norm() - psi.norm()).abs() < 1e-12);
    }
}

#[test]
fn v_at_zero_theta_is_pure_phase() {
    let psi = gaussian(spec(0.0), [0.0, 0.0], [0.0, 0.0], 1.0).unwrap();
    let v = apply_V([0.5, -1.0], &psi);
    let expected = psi.multiply_by(|x, y| Complex64::from_polar(1.0, 0.5 * x - y));
    assert_eq!(v.amplitudes(), expected.amplitudes());
}

#[test]
fn v_composition_carries_theta_phase() {
    // V(b)V(b') = V(b')V(b)·e^{iθ(b1 b'2 − b2 b'1)}
    let theta = 0.35;
    let psi = gaussian(spec(theta), [0.0, 0.0], [0.0, 0.0], 1.0).unwrap();
    let (b, b2) = ([0.6, -0.3], [0.2, 0.8]);
    let lhs = apply_V(b, &apply_V(b2, &psi));
    let rhs = apply_V(b2, &apply_V(b, &psi));
    let phase = Complex64::from_polar(1.0, theta * (b[0] * b2[1] - b[1] * b2[0]));
    assert!(lhs.sub(&rhs.scale(phase)).norm() < 1e-8);
}

#[test]
fn weyl_report_examples() {
    let psi = gaussian(spec(0.2), [0.0, 0.0], [0.0, 0.0], 1.0).unwrap();
    let params = WeylParams {
        a: [0.5, 0.0],
        a_prime: [0.0, 1.0],
        b: [1.0, 0.0],
        b_prime: [0.0, 1.0],
        c: 0.0,
        d: 0.0,
    };
    let reports = weyl_check(params, &psi, 1e-8).unwrap();
    let by_name = |n: &str| reports.iter().find(|r| r.name == n).unwrap();
    assert!(by_name("weyl_UU").relative_l2_error < 1e-10);
    assert!((by_name("weyl_UU").measured() - 1.0).norm() < 1e-10);
    assert!((by_name("weyl_VV").measured() - Complex64::from_polar(1.0, 0.2)).norm() < 1e-8);
    assert!((by_name("weyl_VU").measured() - Complex64::from_polar(1.0, 0.5)).norm() < 1e-8);
    // ħ = 1, so both conventions coincide here.
    assert!((by_name("weyl_VU").params["hbar_convention_phase"] - 0.5).abs() < 1e-12);
    assert!(reports.iter().all(|r| r.pass && r.error >= 0.0));
}

#[test]
fn position_expectation_and_flat_limit() {
    let psi = gaussian(spec(0.1), [1.25, 0.0], [0.0, 0.0], 1.0).unwrap();
    let q1 = expectation(&psi, &apply_position(Axis::Q1, &psi));
    assert!((q1 - Complex64::new(1.25, 0.0)).norm() < 1e-8);
    let flat = psi.reparameterize(0.0, 1.0).unwrap();
    let direct = flat.multiply_by(|x, _| Complex64::new(x, 0.0));
    assert_eq!(apply_position(Axis::Q1, &flat).amplitudes(), direct.amplitudes());
}

#[test]
fn commutators_with_other_hbar() {
    let s = GridSpec::new(256, 20.0, 0.2, 0.5).unwrap();
    let psi = gaussian(s, [0.0, 0.0], [0.0, 0.0], 1.0).unwrap();
    let r = commutator_check(CommutatorKind::PositionMomentum(Axis::Q2, Axis::Q2), &psi, 1e-6).unwrap();
    assert!((r.measured() - Complex64::new(0.0, 0.5)).norm() < 1e-8);
    let r = commutator_check(CommutatorKind::PositionMomentum(Axis::Q1, Axis::Q2), &psi, 1e-6).unwrap();
    assert!(r.pass && r.measured().norm() < 1e-8);
}

#[test]
fn quantize_examples() {
    let psi = gaussian(spec(0.1), [0.0, 0.0], [0.6, 0.0], 1.0).unwrap();
    let e = |v: [i64; 6]| AlgebraElement::from_array(v.map(|x| rational(x, 1)));
    assert!(quantize_apply(&e([0, 0, 0, 0, 1, 0]), &psi).sub(&psi).max_abs() < 1e-15);
    let m = expectation(&psi, &quantize_apply(&e([1, 0, 0, 0, 0, 0]), &psi));
    assert!((m - Complex64::new(0.6, 0.0)).norm() < 1e-8);
    // Linearity.
    let (e1, e2) = (e([1, -2, 3, 0, 1, 2]), e([0, 1, -1, 2, 0, -1]));
    let sum = quantize_apply(&(&e1 + &e2), &psi);
    let parts = quantize_apply(&e1, &psi).add(&quantize_apply(&e2, &psi));
    assert!(sum.sub(&parts).max_abs() < 1e-12);
}

#[test]
fn wfn_json_file_round_trip() {
    let psi = gaussian(GridSpec::new(32, 10.0, 0.3, 2.0).unwrap(), [0.5, 0.0], [0.0, 1.0], 1.0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("psi.json");
    std::fs::write(&path, psi.to_json_string()).unwrap();
    let back = Wavefunction::from_json_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back.amplitudes(), psi.amplitudes());
    assert_eq!(back.spec(), psi.spec());
    let extra = r#"{"format":"wfn-json/1","n":16,"l":4.0,"theta":0.0,"hbar":1.0,"re":[],"im":[],"x":1}"#;
    assert!(matches!(Wavefunction::from_json_str(extra), Err(RepError::Format(_))));
}
