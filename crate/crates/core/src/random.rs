//! Seeded generators for suite and property inputs.
//!
//! All rationals have numerator and denominator bounded by
//! [`MAX_HEIGHT`] in absolute value.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{AlgebraElement, GroupElement};
use crate::symplectic::{rational, Observable, Rational};

pub const MAX_HEIGHT: i64 = 16;

pub type SuiteRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for a named sub-suite, so adding checks to one suite
/// does not perturb the inputs of another.
pub fn stream(seed: u64, name: &str) -> SuiteRng {
    let mut rng = seeded(seed);
    rng.set_stream(name.bytes().fold(0xcbf2_9ce4_8422_2325_u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3)));
    rng
}

pub fn rational_in<R: Rng>(rng: &mut R) -> Rational {
    rational(rng.random_range(-MAX_HEIGHT..=MAX_HEIGHT), rng.random_range(1..=MAX_HEIGHT))
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    let mut num = 0;
    while num == 0 {
        num = rng.random_range(-MAX_HEIGHT..=MAX_HEIGHT);
    }
    rational(num, rng.random_range(1..=MAX_HEIGHT))
}

/// A random observable with at most `max_terms` terms, coordinate degree at
/// most `max_degree` and `θ`, `ħ` exponents at most one.
pub fn observable<R: Rng>(rng: &mut R, max_degree: u32, max_terms: usize) -> Observable {
    let count = rng.random_range(1..=max_terms.max(1));
    let mut f = Observable::zero();
    for _ in 0..count {
        let degree = rng.random_range(0..=max_degree);
        let mut exps = [0u32; 6];
        for _ in 0..degree {
            exps[rng.random_range(0..4)] += 1;
        }
        exps[4] = rng.random_range(0..=1);
        exps[5] = rng.random_range(0..=1);
        f.add_term(exps, nonzero_rational(rng));
    }
    f
}

/// Algebra element with all six components drawn from [`rational_in`].
pub fn algebra_element<R: Rng>(rng: &mut R) -> AlgebraElement {
    AlgebraElement::from_array(std::array::from_fn(|_| rational_in(rng)))
}

pub fn group_element<R: Rng>(rng: &mut R) -> GroupElement<Rational> {
    GroupElement::exp(&algebra_element(rng))
}

/// Algebra element whose translation parts have `|A|, |B| ≤ radius` and
/// central parts in `[-1, 1]`, rounded to multiples of 1/64 so they are
/// exact in binary.
pub fn bounded_algebra_element<R: Rng>(rng: &mut R, radius: f64) -> AlgebraElement {
    let a = vector_in_disc(rng, radius);
    let b = vector_in_disc(rng, radius);
    let c = dyadic(rng.random_range(-1.0..=1.0));
    let d = dyadic(rng.random_range(-1.0..=1.0));
    let r = |x: f64| Rational::from_float(x).expect("finite");
    AlgebraElement::new(a.map(r), b.map(r), r(c), r(d))
}

fn dyadic(x: f64) -> f64 {
    (x * 64.0).trunc() / 64.0
}

/// Uniform point in the disc of the given radius, on the 1/64 lattice.
pub fn vector_in_disc<R: Rng>(rng: &mut R, radius: f64) -> [f64; 2] {
    loop {
        let v = [rng.random_range(-radius..=radius), rng.random_range(-radius..=radius)].map(dyadic);
        if v[0].hypot(v[1]) <= radius {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let draw = |seed| {
            let mut rng = seeded(seed);
            (0..20).map(|_| observable(&mut rng, 3, 4)).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(observable(&mut stream(7, "x"), 3, 4), observable(&mut stream(7, "y"), 3, 4));
    }

    #[test]
    fn bounds() {
        let mut rng = seeded(1);
        for _ in 0..200 {
            let r = rational_in(&mut rng);
            assert!(r.numer().magnitude() <= &16u32.into() && r.denom() <= &16.into());
            let f = observable(&mut rng, 4, 5);
            assert!(f.coordinate_degree().unwrap_or(0) <= 4);
            let e = bounded_algebra_element(&mut rng, 1.0).to_f64();
            assert!(e[0].hypot(e[1]) <= 1.0 && e[2].hypot(e[3]) <= 1.0);
        }
    }
}
