//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A [`Poly<N>`] maps exponent vectors `[u32; N]` to nonzero [`Rational`]
//! coefficients. Zero coefficients are never stored, so structural equality
//! of the term maps is polynomial equality.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // `to_f64` on BigRational is correctly rounded for the heights we use.
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<[u32; N], Rational>,
}

impl<const N: usize> Default for Poly<N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(exponents: [u32; N], coefficient: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponents, coefficient);
        }
        Self { terms }
    }

    /// The degree-one monomial in variable `index`.
    pub fn var(index: usize) -> Self {
        assert!(index < N, "variable index {index} out of range");
        let mut e = [0; N];
        e[index] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32; N]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    /// Returns the constant term if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; N]).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Adds `coefficient * x^exponents`, dropping the term if it cancels.
    pub fn add_term(&mut self, exponents: [u32; N], coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c * factor))
                .collect(),
        }
    }

    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e[index];
            if k == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[index] = k - 1;
            out.add_term(e2, c * Rational::from_integer(BigInt::from(k)));
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i` everywhere. This is the unique
    /// ring homomorphism fixing the rationals with the given images.
    pub fn compose(&self, images: &[Poly<N>; N]) -> Self {
        // Power tables are filled lazily; most variables appear at low degree.
        let mut powers: Vec<Vec<Poly<N>>> = vec![vec![Self::one()]; N];
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out += term;
        }
        out
    }

    /// Sets variable `index` to the rational `value`.
    pub fn substitute(&self, index: usize, value: &Rational) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e[index];
            let mut e2 = *e;
            e2[index] = 0;
            let factor = if k == 0 {
                Rational::one()
            } else {
                num_traits::pow(value.clone(), k as usize)
            };
            out.add_term(e2, c * factor);
        }
        out
    }

    pub fn evaluate(&self, point: &[f64; N]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = rational_to_f64(c);
                for (x, &k) in point.iter().zip(e.iter()) {
                    if k > 0 {
                        v *= x.powi(k as i32);
                    }
                }
                v
            })
            .sum()
    }

    /// Largest absolute numerator or denominator, in bits; used to keep
    /// random test inputs bounded.
    pub fn max_height_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl<const N: usize> Add<&Poly<N>> for &Poly<N> {
    type Output = Poly<N>;
    fn add(self, rhs: &Poly<N>) -> Poly<N> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<const N: usize> Add for Poly<N> {
    type Output = Poly<N>;
    fn add(mut self, rhs: Poly<N>) -> Poly<N> {
        self += rhs;
        self
    }
}

impl<const N: usize> AddAssign<&Poly<N>> for Poly<N> {
    fn add_assign(&mut self, rhs: &Poly<N>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<const N: usize> AddAssign for Poly<N> {
    fn add_assign(&mut self, rhs: Poly<N>) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl<const N: usize> Sub<&Poly<N>> for &Poly<N> {
    type Output = Poly<N>;
    fn sub(self, rhs: &Poly<N>) -> Poly<N> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<const N: usize> Sub for Poly<N> {
    type Output = Poly<N>;
    fn sub(mut self, rhs: Poly<N>) -> Poly<N> {
        self -= &rhs;
        self
    }
}

impl<const N: usize> SubAssign<&Poly<N>> for Poly<N> {
    fn sub_assign(&mut self, rhs: &Poly<N>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<const N: usize> Neg for &Poly<N> {
    type Output = Poly<N>;
    fn neg(self) -> Poly<N> {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<const N: usize> Neg for Poly<N> {
    type Output = Poly<N>;
    fn neg(self) -> Poly<N> {
        -&self
    }
}

impl<const N: usize> Mul<&Poly<N>> for &Poly<N> {
    type Output = Poly<N>;
    fn mul(self, rhs: &Poly<N>) -> Poly<N> {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = *e1;
                for (a, b) in e.iter_mut().zip(e2.iter()) {
                    *a += *b;
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl<const N: usize> Mul for Poly<N> {
    type Output = Poly<N>;
    fn mul(self, rhs: Poly<N>) -> Poly<N> {
        &self * &rhs
    }
}

impl<const N: usize> Mul<&Rational> for &Poly<N> {
    type Output = Poly<N>;
    fn mul(self, rhs: &Rational) -> Poly<N> {
        self.scale(rhs)
    }
}

impl<const N: usize> From<Rational> for Poly<N> {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl<const N: usize> From<i64> for Poly<N> {
    fn from(c: i64) -> Self {
        Poly::constant(Rational::from_integer(BigInt::from(c)))
    }
}
