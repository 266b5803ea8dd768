//! Observables on the phase space `T*R^2` and their formal coefficients.
//!
//! An [`Observable`] is a polynomial in the coordinates `(q1, q2, p1, p2)`
//! whose coefficients are [`Scalar`]s, i.e. rational polynomials in the
//! formal parameters `theta` and `hbar`. Both are stored flat as a single
//! sparse polynomial in six variables; the coordinate/parameter split is a
//! view provided by [`Observable::coefficient`] and friends.

use super::poly::{Poly, Rational};

/// Rational polynomial in `(theta, hbar)`.
pub type Scalar = Poly<2>;

/// Polynomial in `(q1, q2, p1, p2)` with [`Scalar`] coefficients.
pub type Observable = Poly<6>;

pub const Q1: usize = 0;
pub const Q2: usize = 1;
pub const P1: usize = 2;
pub const P2: usize = 3;
pub const THETA: usize = 4;
pub const HBAR: usize = 5;

/// Indices of the position coordinates, in order.
pub const POSITIONS: [usize; 2] = [Q1, Q2];
/// Indices of the momentum coordinates, in order.
pub const MOMENTA: [usize; 2] = [P1, P2];

/// Levi-Civita symbol in two dimensions, `eps[0][1] = +1`.
pub const fn epsilon(i: usize, j: usize) -> i64 {
    match (i, j) {
        (0, 1) => 1,
        (1, 0) => -1,
        _ => 0,
    }
}

impl Poly<2> {
    pub fn theta() -> Self {
        Poly::var(0)
    }

    pub fn hbar() -> Self {
        Poly::var(1)
    }

    /// Embeds the scalar as a coordinate-free observable.
    pub fn to_observable(&self) -> Observable {
        let mut out = Observable::zero();
        for (e, c) in self.terms() {
            out.add_term([0, 0, 0, 0, e[0], e[1]], c.clone());
        }
        out
    }

    /// Evaluates at numeric `theta`, `hbar`.
    pub fn evaluate_at(&self, theta: f64, hbar: f64) -> f64 {
        self.evaluate(&[theta, hbar])
    }

    /// Coefficient of `theta^k` (with no `hbar`).
    pub fn theta_coefficient(&self, k: u32) -> Rational {
        self.coefficient(&[k, 0])
    }
}

impl Poly<6> {
    pub fn q1() -> Self {
        Poly::var(Q1)
    }

    pub fn q2() -> Self {
        Poly::var(Q2)
    }

    pub fn p1() -> Self {
        Poly::var(P1)
    }

    pub fn p2() -> Self {
        Poly::var(P2)
    }

    pub fn theta_param() -> Self {
        Poly::var(THETA)
    }

    pub fn hbar_param() -> Self {
        Poly::var(HBAR)
    }

    /// Phase-space coordinate `x^a`, `a` in `0..4`.
    pub fn coordinate(a: usize) -> Self {
        assert!(a < 4, "coordinate index {a} out of range");
        Poly::var(a)
    }

    /// The [`Scalar`] coefficient of the coordinate monomial `q1^e0 q2^e1 p1^e2 p2^e3`.
    pub fn coordinate_coefficient(&self, exponents: &[u32; 4]) -> Scalar {
        let mut out = Scalar::zero();
        for (e, c) in self.terms() {
            if e[..4] == exponents[..] {
                out.add_term([e[4], e[5]], c.clone());
            }
        }
        out
    }

    /// Distinct coordinate monomials carrying a nonzero coefficient.
    pub fn coordinate_monomials(&self) -> Vec<[u32; 4]> {
        let mut v: Vec<[u32; 4]> = self.terms().map(|(e, _)| [e[0], e[1], e[2], e[3]]).collect();
        v.dedup();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Degree in the coordinates only (formal parameters excluded).
    pub fn coordinate_degree(&self) -> Option<u32> {
        self.terms().map(|(e, _)| e[..4].iter().sum()).max()
    }

    /// Returns the observable as a [`Scalar`] if it has no coordinate dependence.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let mut out = Scalar::zero();
        for (e, c) in self.terms() {
            if e[..4].iter().any(|&k| k != 0) {
                return None;
            }
            out.add_term([e[4], e[5]], c.clone());
        }
        Some(out)
    }

    /// Substitutes a rational value for `theta`.
    pub fn with_theta(&self, value: &Rational) -> Self {
        self.substitute(THETA, value)
    }

    /// Numeric value at a phase-space point after substituting `theta`, `hbar`.
    pub fn evaluate_at(&self, x: &super::PhasePoint, theta: f64, hbar: f64) -> f64 {
        let [q1, q2, p1, p2] = x.to_array();
        self.evaluate(&[q1, q2, p1, p2, theta, hbar])
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly::rational;
    use super::*;

    #[test]
    fn scalar_embedding_round_trips() {
        let s = &Scalar::theta() * &Scalar::hbar() + Scalar::from(2);
        assert_eq!(s.to_observable().as_scalar(), Some(s));
        assert_eq!(Observable::q1().as_scalar(), None);
    }

    #[test]
    fn coordinate_coefficient_groups_parameters() {
        // (2 + theta) q1 p2 + hbar
        let f = &(&Observable::from(2) + &Observable::theta_param())
            * &(&Observable::q1() * &Observable::p2())
            + Observable::hbar_param();
        let c = f.coordinate_coefficient(&[1, 0, 0, 1]);
        assert_eq!(c, &Scalar::from(2) + &Scalar::theta());
        assert_eq!(f.coordinate_coefficient(&[0, 0, 0, 0]), Scalar::hbar());
        assert_eq!(f.coordinate_monomials(), vec![[0, 0, 0, 0], [1, 0, 0, 1]]);
        assert_eq!(f.coordinate_degree(), Some(2));
    }

    #[test]
    fn theta_product_evaluates() {
        // f = theta*hbar at theta = 2, hbar = 3 gives 6.
        let f = &Observable::theta_param() * &Observable::hbar_param();
        let x = super::super::PhasePoint::new(0.3, -1.0, 2.0, 5.0);
        assert_eq!(f.evaluate_at(&x, 2.0, 3.0), 6.0);
        assert_eq!(f.with_theta(&rational(1, 2)), Observable::hbar_param().scale(&rational(1, 2)));
    }
}
