//! The centrally extended translation algebra of the plane and the deformed
//! Heisenberg group it exponentiates to.
//!
//! An [`AlgebraElement`] `(A, B, C, D)` generates position translations
//! (`A`), momentum translations (`B`) and two central directions. Its
//! moment map is
//!
//! ```text
//! P^e = A^i p_i + B_i (q^i - ½ θ ε^{ij} p_j) + C + D θ
//! ```
//!
//! written on commuting coordinates (the Bopp-shifted frame), so brackets of
//! moment maps are taken with the undeformed bracket. The cocycles are read
//! off the bracket engine rather than written down by hand.

use std::ops::{Add, Neg};

use num_traits::{Num, Zero};
use thiserror::Error;

use crate::symplectic::observable::epsilon;
use crate::symplectic::{self, bopp_shift, rational_to_f64, Observable, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("moment-map bracket is not a constant of the form z1 + z2*theta: {bracket}")]
    NonConstantBracket { bracket: String },
}

/// `(A¹, A², B₁, B₂, C, D)` with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    pub a: [Rational; 2],
    pub b: [Rational; 2],
    pub c: Rational,
    pub d: Rational,
}

/// `(a¹, a², b₁, b₂, c, d)` over any numeric field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupElement<T> {
    pub a: [T; 2],
    pub b: [T; 2],
    pub c: T,
    pub d: T,
}

/// The two central obstructions: `z1` in the position/momentum sector and
/// `z2`, the coefficient of `theta` in the momentum/momentum sector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Cocycle {
    pub z1: Rational,
    pub z2: Rational,
}

/// Which Lie bracket the homomorphism defect is measured against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketMode {
    /// Central charges included: the defect vanishes identically.
    Extended,
    /// Abelian translation bracket: the defect is the obstruction `z1 + z2 θ`.
    Abelian,
}

impl AlgebraElement {
    pub fn new(a: [Rational; 2], b: [Rational; 2], c: Rational, d: Rational) -> Self {
        Self { a, b, c, d }
    }

    /// Reads `[A1, A2, B1, B2, C, D]`.
    pub fn from_array(v: [Rational; 6]) -> Self {
        let [a1, a2, b1, b2, c, d] = v;
        Self::new([a1, a2], [b1, b2], c, d)
    }

    pub fn to_array(&self) -> [Rational; 6] {
        [
            self.a[0].clone(),
            self.a[1].clone(),
            self.b[0].clone(),
            self.b[1].clone(),
            self.c.clone(),
            self.d.clone(),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> [f64; 6] {
        self.to_array().map(|r| rational_to_f64(&r))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_array(self.to_array().map(|r| r * k))
    }
}

impl Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let (x, y) = (self.to_array(), rhs.to_array());
        AlgebraElement::from_array(std::array::from_fn(|i| &x[i] + &y[i]))
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::from_array(self.to_array().map(|r| -r))
    }
}

impl Cocycle {
    pub fn is_zero(&self) -> bool {
        self.z1.is_zero() && self.z2.is_zero()
    }

    /// `z1 + z2 θ` as an observable.
    pub fn to_observable(&self) -> Observable {
        Observable::constant(self.z1.clone()) + Observable::theta_param().scale(&self.z2)
    }
}

/// Translation part `A^i p_i + B_i q^i`, no central terms.
fn translation_generator(e: &AlgebraElement) -> Observable {
    let mut f = Observable::zero();
    for i in 0..2 {
        f += Observable::coordinate(2 + i).scale(&e.a[i]);
        f += Observable::coordinate(i).scale(&e.b[i]);
    }
    f
}

fn central_part(e: &AlgebraElement) -> Observable {
    Observable::constant(e.c.clone()) + Observable::theta_param().scale(&e.d)
}

/// `P^e` on commuting coordinates (Bopp-shifted positions).
pub fn moment_map(e: &AlgebraElement) -> Observable {
    bopp_shift(&translation_generator(e)) + central_part(e)
}

/// `P^e` on the noncommuting coordinates, for use with the deformed bracket.
/// Its Bopp shift is [`moment_map`].
pub fn moment_map_noncommutative(e: &AlgebraElement) -> Observable {
    translation_generator(e) + central_part(e)
}

/// Splits a constant `z1 + z2 θ` bracket into its cocycle components.
fn split_constant(bracket: &Observable) -> Result<Cocycle, GroupError> {
    let err = || GroupError::NonConstantBracket {
        bracket: bracket.to_string(),
    };
    let scalar = bracket.as_scalar().ok_or_else(err)?;
    let mut cocycle = Cocycle::default();
    for (e, c) in scalar.terms() {
        match e {
            [0, 0] => cocycle.z1 = c.clone(),
            [1, 0] => cocycle.z2 = c.clone(),
            _ => return Err(err()),
        }
    }
    Ok(cocycle)
}

/// `{P^{e1}, P^{e2}}` split into `(z1, z2)`.
pub fn extract_cocycle(e1: &AlgebraElement, e2: &AlgebraElement) -> Result<Cocycle, GroupError> {
    split_constant(&symplectic::standard_bracket(&moment_map(e1), &moment_map(e2)))
}

/// The same cocycle computed with the deformed bracket on unshifted generators.
pub fn extract_cocycle_noncommutative(e1: &AlgebraElement, e2: &AlgebraElement) -> Result<Cocycle, GroupError> {
    split_constant(&symplectic::poisson_bracket(
        &moment_map_noncommutative(e1),
        &moment_map_noncommutative(e2),
    ))
}

/// `[e1, e2] = (0, 0, z1, z2)`.
pub fn algebra_bracket(e1: &AlgebraElement, e2: &AlgebraElement) -> AlgebraElement {
    let z = extract_cocycle(e1, e2).expect("linear moment maps bracket to constants");
    AlgebraElement::new(Default::default(), Default::default(), z.z1, z.z2)
}

/// `{P^{e1}, P^{e2}} - P^{[e1, e2]}`.
pub fn homomorphism_defect(e1: &AlgebraElement, e2: &AlgebraElement, mode: BracketMode) -> Observable {
    let lhs = symplectic::standard_bracket(&moment_map(e1), &moment_map(e2));
    let rhs = match mode {
        BracketMode::Extended => moment_map(&algebra_bracket(e1, e2)),
        BracketMode::Abelian => Observable::zero(),
    };
    &lhs - &rhs
}

/// Obstructions as written with an unrestricted double sum over `i, j`:
/// `z1 = B_i A'^i - B'_i A^i` and the `theta` coefficient of
/// `θ^{ij}(B_i B'_j - B'_i B_j)`. The second is twice the bracket value.
pub fn literal_obstructions(e1: &AlgebraElement, e2: &AlgebraElement) -> Cocycle {
    let mut z1 = Rational::zero();
    let mut z2 = Rational::zero();
    for i in 0..2 {
        z1 += &e1.b[i] * &e2.a[i] - &e2.b[i] * &e1.a[i];
        for j in 0..2 {
            let eps = epsilon(i, j);
            if eps != 0 {
                let term = &e1.b[i] * &e2.b[j] - &e2.b[i] * &e1.b[j];
                z2 += term * Rational::from_integer(eps.into());
            }
        }
    }
    Cocycle { z1, z2 }
}

impl<T> GroupElement<T>
where
    T: Num + Clone + Neg<Output = T>,
{
    pub fn new(a: [T; 2], b: [T; 2], c: T, d: T) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new([T::zero(), T::zero()], [T::zero(), T::zero()], T::zero(), T::zero())
    }

    fn half() -> T {
        T::one() / (T::one() + T::one())
    }

    /// Group law with cocycle terms `½(b·a' - b'·a)` and `½(b₁b'₂ - b₂b'₁)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let dot = |x: &[T; 2], y: &[T; 2]| x[0].clone() * y[0].clone() + x[1].clone() * y[1].clone();
        let c_cocycle = dot(&self.b, &other.a) - dot(&other.b, &self.a);
        let d_cocycle = self.b[0].clone() * other.b[1].clone() - self.b[1].clone() * other.b[0].clone();
        Self {
            a: [self.a[0].clone() + other.a[0].clone(), self.a[1].clone() + other.a[1].clone()],
            b: [self.b[0].clone() + other.b[0].clone(), self.b[1].clone() + other.b[1].clone()],
            c: self.c.clone() + other.c.clone() + Self::half() * c_cocycle,
            d: self.d.clone() + other.d.clone() + Self::half() * d_cocycle,
        }
    }

    pub fn inverse(&self) -> Self {
        Self::new(
            [-self.a[0].clone(), -self.a[1].clone()],
            [-self.b[0].clone(), -self.b[1].clone()],
            -self.c.clone(),
            -self.d.clone(),
        )
    }

    /// `g1 g2 g1⁻¹ g2⁻¹`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.multiply(other).multiply(&self.inverse()).multiply(&other.inverse())
    }
}

impl GroupElement<Rational> {
    /// Exponential of an algebra element. The group law is the
    /// Baker–Campbell–Hausdorff product truncated at the (central) second
    /// order, so coordinates carry over unchanged.
    pub fn exp(e: &AlgebraElement) -> Self {
        Self::new(e.a.clone(), e.b.clone(), e.c.clone(), e.d.clone())
    }

    pub fn to_f64(&self) -> GroupElement<f64> {
        let f = rational_to_f64;
        GroupElement::new(
            [f(&self.a[0]), f(&self.a[1])],
            [f(&self.b[0]), f(&self.b[1])],
            f(&self.c),
            f(&self.d),
        )
    }
}

pub fn group_multiply<T: Num + Clone + Neg<Output = T>>(g1: &GroupElement<T>, g2: &GroupElement<T>) -> GroupElement<T> {
    g1.multiply(g2)
}

pub fn group_commutator<T: Num + Clone + Neg<Output = T>>(
    g1: &GroupElement<T>,
    g2: &GroupElement<T>,
) -> GroupElement<T> {
    g1.commutator(g2)
}
