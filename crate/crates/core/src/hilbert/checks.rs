//! Numerical verification of the commutation and Weyl relations.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::grid::Axis;
use super::operators::{apply_U, apply_V, apply_W, apply_momentum, apply_position, quantize_apply};
use super::wavefunction::Wavefunction;
use super::RepError;
use crate::group::{extract_cocycle, AlgebraElement, Cocycle};
use crate::symplectic::{rational_to_f64, Rational};

/// Below this norm a global phase cannot be measured.
pub const MIN_NORM: f64 = 1e-12;

/// Outcome of one operator identity.
///
/// `error` is the larger of the relative L² error against the predicted
/// right-hand side and `|measured - expected|`; `pass ⇔ error ≤ tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OperatorReport {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    /// Measured constant (phase or commutator eigenvalue), `[re, im]`.
    pub measured: [f64; 2],
    pub expected: [f64; 2],
    pub max_pointwise_error: f64,
    pub relative_l2_error: f64,
    /// Residual after aligning with the measured rather than predicted phase.
    pub aligned_residual: Option<f64>,
    pub error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl OperatorReport {
    pub fn measured(&self) -> Complex64 {
        Complex64::new(self.measured[0], self.measured[1])
    }

    pub fn expected(&self) -> Complex64 {
        Complex64::new(self.expected[0], self.expected[1])
    }

    pub fn phase_error(&self) -> f64 {
        (self.measured() - self.expected()).norm()
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Compares `lhs` with `expected · reference` and measures the constant
/// `⟨reference, lhs⟩ / ‖reference‖²`.
fn compare(
    name: String,
    params: BTreeMap<String, f64>,
    lhs: &Wavefunction,
    reference: &Wavefunction,
    expected: Complex64,
    norm_scale: f64,
    tolerance: f64,
) -> OperatorReport {
    let measured = reference.inner(lhs) / reference.norm_sqr();
    let diff = lhs.sub(&reference.scale(expected));
    let denom = if expected.norm() > 0.0 {
        expected.norm() * norm_scale
    } else {
        norm_scale
    };
    let relative_l2_error = diff.norm() / denom;
    let aligned_residual = (expected.norm() > 0.0).then(|| lhs.sub(&reference.scale(measured)).norm() / denom);
    let error = relative_l2_error.max((measured - expected).norm());
    OperatorReport {
        name,
        params,
        measured: pair(measured),
        expected: pair(expected),
        max_pointwise_error: diff.max_abs(),
        relative_l2_error,
        aligned_residual,
        error,
        tolerance,
        pass: error <= tolerance,
    }
}

fn require_norm(psi: &Wavefunction) -> Result<f64, RepError> {
    let norm = psi.norm();
    if norm.is_nan() || norm < MIN_NORM {
        return Err(RepError::PhaseUndefined { norm });
    }
    Ok(norm)
}

/// Which canonical commutator to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutatorKind {
    /// `[q̂'^1, q̂'^2]`, predicted `iθ`.
    PositionPosition,
    /// `[p̂'_1, p̂'_2]`, predicted `0`.
    MomentumMomentum,
    /// `[q̂'^i, p̂'_j]`, predicted `iħ δ_ij`.
    PositionMomentum(Axis, Axis),
}

impl CommutatorKind {
    pub fn label(&self) -> String {
        match self {
            CommutatorKind::PositionPosition => "qq".into(),
            CommutatorKind::MomentumMomentum => "pp".into(),
            CommutatorKind::PositionMomentum(i, j) => format!("q{i}p{j}"),
        }
    }
}

/// Applies both orderings of the chosen pair and compares the difference
/// with the predicted constant multiple of `ψ`.
pub fn commutator_check(kind: CommutatorKind, psi: &Wavefunction, tolerance: f64) -> Result<OperatorReport, RepError> {
    let norm = require_norm(psi)?;
    let spec = *psi.spec();
    let (ab, ba, expected) = match kind {
        CommutatorKind::PositionPosition => (
            apply_position(Axis::Q1, &apply_position(Axis::Q2, psi)),
            apply_position(Axis::Q2, &apply_position(Axis::Q1, psi)),
            Complex64::new(0.0, spec.theta),
        ),
        CommutatorKind::MomentumMomentum => (
            apply_momentum(Axis::Q1, &apply_momentum(Axis::Q2, psi)),
            apply_momentum(Axis::Q2, &apply_momentum(Axis::Q1, psi)),
            Complex64::new(0.0, 0.0),
        ),
        CommutatorKind::PositionMomentum(i, j) => (
            apply_position(i, &apply_momentum(j, psi)),
            apply_momentum(j, &apply_position(i, psi)),
            Complex64::new(0.0, if i == j { spec.hbar } else { 0.0 }),
        ),
    };
    let mut params = BTreeMap::new();
    params.insert("theta".into(), spec.theta);
    params.insert("hbar".into(), spec.hbar);
    Ok(compare(
        format!("commutator_{}", kind.label()),
        params,
        &ab.sub(&ba),
        psi,
        expected,
        norm,
        tolerance,
    ))
}

/// Group parameters for the Weyl relations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeylParams {
    pub a: [f64; 2],
    pub a_prime: [f64; 2],
    pub b: [f64; 2],
    pub b_prime: [f64; 2],
    pub c: f64,
    pub d: f64,
}

impl WeylParams {
    fn to_map(self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        for (name, v) in [("a", self.a), ("a_prime", self.a_prime), ("b", self.b), ("b_prime", self.b_prime)] {
            m.insert(format!("{name}1"), v[0]);
            m.insert(format!("{name}2"), v[1]);
        }
        m.insert("c".into(), self.c);
        m.insert("d".into(), self.d);
        m
    }
}

fn exact(x: f64) -> Rational {
    Rational::from_float(x).expect("finite parameter")
}

fn algebra(a: [f64; 2], b: [f64; 2], c: f64, d: f64) -> AlgebraElement {
    AlgebraElement::new(a.map(exact), b.map(exact), exact(c), exact(d))
}

/// Phase `e^{i(z1 + θ z2)}` relating `X(e1)Y(e2)` to `Y(e2)X(e1)`, with the
/// group parameters identified with algebra parameters at unit flow time.
fn predicted_phase(cocycle: &Cocycle, theta: f64, hbar_weight: f64) -> Complex64 {
    let z1 = rational_to_f64(&cocycle.z1);
    let z2 = rational_to_f64(&cocycle.z2);
    Complex64::from_polar(1.0, hbar_weight * z1 + theta * z2)
}

/// The five Weyl relations: UU, VV, VU, UW and VW orderings.
///
/// For each relation `X Y = Y X · phase`, the measured phase is
/// `⟨YXψ, XYψ⟩ / ‖ψ‖²` and the prediction comes from [`extract_cocycle`].
/// The literal-convention prediction (with `ħ` on the position/momentum
/// cocycle) is recorded as `hbar_convention_phase` in `params`.
pub fn weyl_check(p: WeylParams, psi: &Wavefunction, tolerance: f64) -> Result<Vec<OperatorReport>, RepError> {
    let norm = require_norm(psi)?;
    let spec = *psi.spec();
    let zero = [0.0, 0.0];
    let u = |a: [f64; 2]| move |w: &Wavefunction| apply_U(a, w);
    let v = |b: [f64; 2]| move |w: &Wavefunction| apply_V(b, w);
    let w = |w: &Wavefunction| apply_W(p.c, p.d, w);

    type Op<'a> = Box<dyn Fn(&Wavefunction) -> Wavefunction + 'a>;
    let relations: Vec<(&str, Op, AlgebraElement, Op, AlgebraElement)> = vec![
        ("weyl_UU", Box::new(u(p.a)), algebra(p.a, zero, 0.0, 0.0), Box::new(u(p.a_prime)), algebra(p.a_prime, zero, 0.0, 0.0)),
        ("weyl_VV", Box::new(v(p.b)), algebra(zero, p.b, 0.0, 0.0), Box::new(v(p.b_prime)), algebra(zero, p.b_prime, 0.0, 0.0)),
        ("weyl_VU", Box::new(v(p.b)), algebra(zero, p.b, 0.0, 0.0), Box::new(u(p.a)), algebra(p.a, zero, 0.0, 0.0)),
        ("weyl_UW", Box::new(u(p.a)), algebra(p.a, zero, 0.0, 0.0), Box::new(w), algebra(zero, zero, p.c, p.d)),
        ("weyl_VW", Box::new(v(p.b)), algebra(zero, p.b, 0.0, 0.0), Box::new(w), algebra(zero, zero, p.c, p.d)),
    ];

    let mut reports = Vec::with_capacity(relations.len());
    for (name, x, ex, y, ey) in relations {
        let xy = x(&y(psi));
        let yx = y(&x(psi));
        let cocycle = extract_cocycle(&ex, &ey).expect("linear moment maps bracket to constants");
        let expected = predicted_phase(&cocycle, spec.theta, 1.0);
        let hbar_phase = predicted_phase(&cocycle, spec.theta, spec.hbar);
        let mut params = p.to_map();
        params.insert("theta".into(), spec.theta);
        params.insert("hbar".into(), spec.hbar);
        params.insert("hbar_convention_phase".into(), hbar_phase.arg());
        let mut report = compare(name.to_string(), params, &xy, &yx, expected, norm, tolerance);
        // The reference here is YXψ, whose norm equals ‖ψ‖ for unitary X, Y;
        // normalize the measured phase by ‖ψ‖² as documented.
        let measured = yx.inner(&xy) / (norm * norm);
        report.measured = pair(measured);
        report.error = report.relative_l2_error.max((measured - expected).norm());
        report.pass = report.error <= tolerance;
        reports.push(report);
    }
    Ok(reports)
}

/// `‖Xψ‖` against `‖ψ‖` for a unitary `X`.
pub fn unitarity_check(
    name: &str,
    params: BTreeMap<String, f64>,
    image: &Wavefunction,
    psi: &Wavefunction,
    tolerance: f64,
) -> Result<OperatorReport, RepError> {
    let norm = require_norm(psi)?;
    let ratio = image.norm() / norm;
    let error = (ratio - 1.0).abs();
    Ok(OperatorReport {
        name: name.to_string(),
        params,
        measured: [ratio, 0.0],
        expected: [1.0, 0.0],
        max_pointwise_error: 0.0,
        relative_l2_error: error,
        aligned_residual: None,
        error,
        tolerance,
        pass: error <= tolerance,
    })
}

/// `[Q(e1), Q(e2)] ψ` against `i(ħ z1 + θ z2) ψ`.
pub fn quantized_commutator_check(
    e1: &AlgebraElement,
    e2: &AlgebraElement,
    psi: &Wavefunction,
    tolerance: f64,
) -> Result<OperatorReport, RepError> {
    let norm = require_norm(psi)?;
    let spec = *psi.spec();
    let lhs = quantize_apply(e1, &quantize_apply(e2, psi)).sub(&quantize_apply(e2, &quantize_apply(e1, psi)));
    let z = extract_cocycle(e1, e2).expect("linear moment maps bracket to constants");
    let expected = Complex64::new(
        0.0,
        spec.hbar * rational_to_f64(&z.z1) + spec.theta * rational_to_f64(&z.z2),
    );
    let mut params = BTreeMap::new();
    for (k, (x, y)) in e1.to_f64().iter().zip(e2.to_f64()).enumerate() {
        params.insert(format!("e1_{k}"), *x);
        params.insert(format!("e2_{k}"), y);
    }
    params.insert("theta".into(), spec.theta);
    params.insert("hbar".into(), spec.hbar);
    Ok(compare(
        "quantized_commutator".into(),
        params,
        &lhs,
        psi,
        expected,
        norm,
        tolerance,
    ))
}

#[cfg(test)]
mod tests {
    use super::super::grid::GridSpec;
    use super::super::wavefunction::gaussian;
    use super::*;
    use crate::symplectic::rational;

    fn psi(theta: f64) -> Wavefunction {
        gaussian(GridSpec::new(256, 20.0, theta, 1.0).unwrap(), [0.0, 0.0], [0.0, 0.0], 1.0).unwrap()
    }

    #[test]
    fn commutators_at_desk_scale() {
        let p = psi(0.1);
        let qq = commutator_check(CommutatorKind::PositionPosition, &p, 1e-6).unwrap();
        assert!(qq.pass, "{qq:?}");
        assert!((qq.measured() - Complex64::new(0.0, 0.1)).norm() < 1e-8);
        let pp = commutator_check(CommutatorKind::MomentumMomentum, &p, 1e-10).unwrap();
        assert!(pp.pass, "{pp:?}");
        for i in Axis::BOTH {
            for j in Axis::BOTH {
                let r = commutator_check(CommutatorKind::PositionMomentum(i, j), &p, 1e-6).unwrap();
                assert!(r.pass, "{r:?}");
            }
        }
        let flat = commutator_check(CommutatorKind::PositionPosition, &psi(0.0), 1e-10).unwrap();
        assert!(flat.pass && flat.relative_l2_error < 1e-15, "{flat:?}");
    }

    #[test]
    fn weyl_relations() {
        let p = psi(0.2);
        let params = WeylParams {
            a: [0.5, 0.0],
            a_prime: [0.0, 1.0],
            b: [1.0, 0.0],
            b_prime: [0.0, 1.0],
            c: 0.3,
            d: -0.7,
        };
        let reports = weyl_check(params, &p, 1e-8).unwrap();
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(r.pass, "{r:?}");
        }
        let vv = &reports[1];
        assert!((vv.measured() - Complex64::from_polar(1.0, 0.2)).norm() < 1e-8);
        let vu = &reports[2];
        assert!((vu.measured() - Complex64::from_polar(1.0, 0.5)).norm() < 1e-8);
        assert!(reports[0].relative_l2_error < 1e-10);
    }

    #[test]
    fn wrong_prediction_fails() {
        // Reuse the machinery with a deliberately wrong expected constant.
        let p = psi(0.1);
        let r = compare("x".into(), BTreeMap::new(), &p, &p, Complex64::new(0.0, 1.0), 1.0, 1e-6);
        assert!(!r.pass);
    }

    #[test]
    fn phase_undefined_on_null_state() {
        let p = psi(0.1).scale(Complex64::new(0.0, 0.0));
        let params = WeylParams {
            a: [0.0; 2],
            a_prime: [0.0; 2],
            b: [0.0; 2],
            b_prime: [0.0; 2],
            c: 0.0,
            d: 0.0,
        };
        assert!(matches!(weyl_check(params, &p, 1e-8), Err(RepError::PhaseUndefined { .. })));
    }

    #[test]
    fn quantized_pair() {
        let p = psi(0.1);
        let e1 = AlgebraElement::from_array([rational(1, 2), rational(0, 1), rational(1, 1), rational(-1, 4), rational(0, 1), rational(0, 1)]);
        let e2 = AlgebraElement::from_array([rational(0, 1), rational(1, 1), rational(1, 3), rational(1, 1), rational(2, 1), rational(0, 1)]);
        let r = quantized_commutator_check(&e1, &e2, &p, 1e-6).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
