//! The representation of the deformed Heisenberg group on sampled
//! wavefunctions and the generators it induces.
//!
//! ```text
//! U(a) ψ(q) = ψ(q - a)
//! V(b) ψ(q) = e^{i b·q} ψ(q - s(b)),   s(b)^i = ½ θ ε^{ij} b_j
//! W(c, d) ψ = e^{-i(c ħ + d θ)} ψ
//! q̂'^i ψ    = q^i ψ + (i/2) θ ε^{ij} ∂_j ψ
//! p̂'_i ψ    = -i ħ ∂_i ψ
//! ```
//!
//! With these, `[q̂'^1, q̂'^2] = iθ`, `[q̂'^i, p̂'_j] = iħ δ^i_j` and
//! `[p̂'_1, p̂'_2] = 0`.

use num_complex::Complex64;

use super::grid::Axis;
use super::wavefunction::Wavefunction;
use crate::group::AlgebraElement;
use crate::symplectic::observable::epsilon;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Position shift `s(b)^i = ½ θ ε^{ij} b_j` carried by `V(b)`.
pub fn theta_shift(theta: f64, b: [f64; 2]) -> [f64; 2] {
    std::array::from_fn(|i| {
        (0..2)
            .map(|j| 0.5 * theta * epsilon(i, j) as f64 * b[j])
            .sum()
    })
}

#[allow(non_snake_case)]
pub fn apply_U(a: [f64; 2], psi: &Wavefunction) -> Wavefunction {
    psi.translate(a)
}

#[allow(non_snake_case)]
pub fn apply_V(b: [f64; 2], psi: &Wavefunction) -> Wavefunction {
    let s = theta_shift(psi.spec().theta, b);
    psi.translate(s).multiply_by(|x, y| Complex64::from_polar(1.0, b[0] * x + b[1] * y))
}

#[allow(non_snake_case)]
pub fn apply_W(c: f64, d: f64, psi: &Wavefunction) -> Wavefunction {
    let spec = psi.spec();
    psi.scale(Complex64::from_polar(1.0, -(c * spec.hbar + d * spec.theta)))
}

/// `q̂'^i ψ` given precomputed derivatives `[∂₁ψ, ∂₂ψ]`.
fn position_from_parts(axis: Axis, psi: &Wavefunction, grads: &[Wavefunction; 2]) -> Wavefunction {
    let theta = psi.spec().theta;
    let i = axis.index();
    let mult = psi.multiply_by(|x, y| real(if i == 0 { x } else { y }));
    if theta == 0.0 {
        return mult;
    }
    let j = axis.other().index();
    let coeff = I * (0.5 * theta * epsilon(i, j) as f64);
    mult.add(&grads[j].scale(coeff))
}

pub fn apply_position(axis: Axis, psi: &Wavefunction) -> Wavefunction {
    let theta = psi.spec().theta;
    let i = axis.index();
    let mult = psi.multiply_by(|x, y| real(if i == 0 { x } else { y }));
    if theta == 0.0 {
        return mult;
    }
    let other = axis.other();
    let coeff = I * (0.5 * theta * epsilon(i, other.index()) as f64);
    mult.add(&psi.derivative(other).scale(coeff))
}

pub fn apply_momentum(axis: Axis, psi: &Wavefunction) -> Wavefunction {
    psi.derivative(axis).scale(-I * psi.spec().hbar)
}

/// `A^i p̂'_i + B_i q̂'^i + (C ħ + D θ)` applied to `ψ`.
pub fn quantize_apply(e: &AlgebraElement, psi: &Wavefunction) -> Wavefunction {
    let [a1, a2, b1, b2, c, d] = e.to_f64();
    let spec = *psi.spec();
    let grads = [psi.derivative(Axis::Q1), psi.derivative(Axis::Q2)];
    let momentum = |axis: Axis| grads[axis.index()].scale(-I * spec.hbar);
    let p1 = momentum(Axis::Q1);
    let p2 = momentum(Axis::Q2);
    let q1 = position_from_parts(Axis::Q1, psi, &grads);
    let q2 = position_from_parts(Axis::Q2, psi, &grads);
    Wavefunction::linear_combination(&[
        (real(a1), &p1),
        (real(a2), &p2),
        (real(b1), &q1),
        (real(b2), &q2),
        (real(c * spec.hbar + d * spec.theta), psi),
    ])
    .expect("nonempty")
}
