//! The θ-deformed symplectic form, its Poisson bivector, Hamiltonian vector
//! fields and the contraction back to observables.
//!
//! Conventions (coordinate order `q1, q2, p1, p2`):
//!
//! * `form[a][b] = Ω(∂_a, ∂_b)`, with `Ω(∂_{q_i}, ∂_{p_j}) = δ_ij`.
//! * The Hamiltonian vector field of `f` is the unique `ξ` with `ξ ⌟ Ω = df`.
//! * `{g, f} = ξ_f(g)`, i.e. `ξ_f^a = Π^{ab} ∂_b f` and `Πᵀ · Ω = 1`.
//!
//! With the momentum block `Ω(∂_{p1}, ∂_{p2}) = -θ` these conventions give
//! `{q1, q2} = θ`, `{q_i, p_j} = δ_ij`, `{p1, p2} = 0`.

use num_traits::{One, Zero};

use super::observable::{epsilon, Observable, Scalar, MOMENTA, POSITIONS, THETA};
use super::poly::{rational, Rational};
use super::SymplecticError;

/// Constant-coefficient symplectic structure on `T*R^2`, exact in `theta`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticStructure {
    form: [[Scalar; 4]; 4],
    bivector: [[Scalar; 4]; 4],
}

/// A vector field `Σ ξ^a ∂_a` with polynomial components.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VectorField {
    pub components: [Observable; 4],
}

impl SymplecticStructure {
    /// The θ-deformed structure with a formal `theta`.
    pub fn modified() -> Self {
        let mut form: [[Scalar; 4]; 4] = Default::default();
        for (&q, &p) in POSITIONS.iter().zip(MOMENTA.iter()) {
            form[q][p] = Scalar::one();
            form[p][q] = -Scalar::one();
        }
        // ½ θ^{ij} dp_i ∧ dp_j with the sign that yields {q1, q2} = +θ.
        for i in 0..2 {
            for j in 0..2 {
                let eps = epsilon(i, j);
                if eps != 0 {
                    form[MOMENTA[i]][MOMENTA[j]] = Scalar::theta().scale(&rational(-eps, 1));
                }
            }
        }
        Self::from_form(form).expect("deformed form has unit determinant")
    }

    /// The undeformed structure `dq^i ∧ dp_i`.
    pub fn standard() -> Self {
        let modified = Self::modified();
        let zero = Rational::zero();
        let form = modified.form.map(|row| row.map(|s| s.substitute(0, &zero)));
        Self::from_form(form).expect("standard form is nondegenerate")
    }

    /// Builds the structure from an antisymmetric form matrix, inverting it exactly.
    pub fn from_form(form: [[Scalar; 4]; 4]) -> Result<Self, SymplecticError> {
        for (a, row) in form.iter().enumerate() {
            for (b, entry) in row.iter().enumerate() {
                if *entry != -&form[b][a] {
                    return Err(SymplecticError::NotAntisymmetric { row: a, col: b });
                }
            }
        }
        let inverse = exact_inverse(&form)?;
        // Πᵀ Ω = 1  ⇔  Π = (Ω⁻¹)ᵀ
        let bivector = std::array::from_fn(|a| std::array::from_fn(|b| inverse[b][a].clone()));
        Ok(Self { form, bivector })
    }

    pub fn form(&self) -> &[[Scalar; 4]; 4] {
        &self.form
    }

    pub fn bivector(&self) -> &[[Scalar; 4]; 4] {
        &self.bivector
    }

    /// `{f, g} = Π^{ab} ∂_a f ∂_b g`.
    pub fn bracket(&self, f: &Observable, g: &Observable) -> Observable {
        let df: [Observable; 4] = std::array::from_fn(|a| f.derivative(a));
        let dg: [Observable; 4] = std::array::from_fn(|b| g.derivative(b));
        let mut out = Observable::zero();
        for (a, dfa) in df.iter().enumerate() {
            if dfa.is_zero() {
                continue;
            }
            for (b, dgb) in dg.iter().enumerate() {
                if self.bivector[a][b].is_zero() || dgb.is_zero() {
                    continue;
                }
                let coeff = self.bivector[a][b].to_observable();
                out += &(&coeff * &df[a]) * &dg[b];
            }
        }
        out
    }

    pub fn hamiltonian_vector_field(&self, f: &Observable) -> VectorField {
        let df: [Observable; 4] = std::array::from_fn(|b| f.derivative(b));
        let components = std::array::from_fn(|a| {
            let mut c = Observable::zero();
            for (b, dfb) in df.iter().enumerate() {
                if !self.bivector[a][b].is_zero() && !dfb.is_zero() {
                    c += &self.bivector[a][b].to_observable() * dfb;
                }
            }
            c
        });
        VectorField { components }
    }

    /// The one-form `ξ ⌟ Ω`, as its four components.
    pub fn interior_product(&self, xi: &VectorField) -> [Observable; 4] {
        std::array::from_fn(|b| {
            let mut c = Observable::zero();
            for a in 0..4 {
                if !self.form[a][b].is_zero() && !xi.components[a].is_zero() {
                    c += &xi.components[a] * &self.form[a][b].to_observable();
                }
            }
            c
        })
    }

    /// Recovers `f` with `df = ξ ⌟ Ω` and zero constant term.
    pub fn contract_to_observable(&self, xi: &VectorField) -> Result<Observable, SymplecticError> {
        let alpha = self.interior_product(xi);
        for a in 0..4 {
            for b in (a + 1)..4 {
                if alpha[b].derivative(a) != alpha[a].derivative(b) {
                    return Err(SymplecticError::NonExactForm { first: a, second: b });
                }
            }
        }
        // Radial homotopy: f(x) = ∫₀¹ α_b(t x) x^b dt. A coordinate monomial of
        // degree d in α_b contributes x^b · m / (d + 1).
        let mut f = Observable::zero();
        for (b, alpha_b) in alpha.iter().enumerate() {
            for (e, c) in alpha_b.terms() {
                let d: u32 = e[..4].iter().sum();
                let mut e2 = *e;
                e2[b] += 1;
                f.add_term(e2, c / Rational::from_integer((d + 1).into()));
            }
        }
        Ok(f)
    }

    /// `{f,{g,h}} + {g,{h,f}} + {h,{f,g}}`.
    pub fn jacobi_residual(&self, f: &Observable, g: &Observable, h: &Observable) -> Observable {
        let t1 = self.bracket(f, &self.bracket(g, h));
        let t2 = self.bracket(g, &self.bracket(h, f));
        let t3 = self.bracket(h, &self.bracket(f, g));
        &(&t1 + &t2) + &t3
    }
}

impl VectorField {
    pub fn new(components: [Observable; 4]) -> Self {
        Self { components }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Observable::is_zero)
    }

    /// Directional derivative `ξ(g)`.
    pub fn apply(&self, g: &Observable) -> Observable {
        let mut out = Observable::zero();
        for (a, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                out += c * &g.derivative(a);
            }
        }
        out
    }
}

impl std::ops::Add<&VectorField> for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            components: std::array::from_fn(|a| &self.components[a] + &rhs.components[a]),
        }
    }
}

/// Substitutes `q^i → q^i − ½ θ ε^{ij} p_j`, leaving momenta and parameters fixed.
pub fn bopp_shift(f: &Observable) -> Observable {
    f.compose(&bopp_images())
}

fn bopp_images() -> [Observable; 6] {
    let half_theta = Observable::theta_param().scale(&rational(1, 2));
    let shifted = |i: usize| {
        let mut q = Observable::coordinate(POSITIONS[i]);
        for (j, &p) in MOMENTA.iter().enumerate() {
            let eps = epsilon(i, j);
            if eps != 0 {
                q -= &(&half_theta * &Observable::coordinate(p)).scale(&rational(eps, 1));
            }
        }
        q
    };
    [
        shifted(0),
        shifted(1),
        Observable::p1(),
        Observable::p2(),
        Observable::var(THETA),
        Observable::hbar_param(),
    ]
}

fn det3(m: [[&Scalar; 3]; 3]) -> Scalar {
    let minor = |a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar| &(a * d) - &(b * c);
    let t0 = m[0][0] * &minor(m[1][1], m[1][2], m[2][1], m[2][2]);
    let t1 = m[0][1] * &minor(m[1][0], m[1][2], m[2][0], m[2][2]);
    let t2 = m[0][2] * &minor(m[1][0], m[1][1], m[2][0], m[2][1]);
    &(&t0 - &t1) + &t2
}

fn cofactor(m: &[[Scalar; 4]; 4], row: usize, col: usize) -> Scalar {
    let rows: Vec<usize> = (0..4).filter(|&r| r != row).collect();
    let cols: Vec<usize> = (0..4).filter(|&c| c != col).collect();
    let sub: [[&Scalar; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| &m[rows[i]][cols[j]]));
    let d = det3(sub);
    if (row + col).is_multiple_of(2) {
        d
    } else {
        -d
    }
}

/// Adjugate inverse over the polynomial ring; requires a nonzero rational determinant.
fn exact_inverse(m: &[[Scalar; 4]; 4]) -> Result<[[Scalar; 4]; 4], SymplecticError> {
    let mut det = Scalar::zero();
    for col in 0..4 {
        det += &m[0][col] * &cofactor(m, 0, col);
    }
    let det = match det.as_constant() {
        Some(d) if !d.is_zero() => d,
        _ => return Err(SymplecticError::Degenerate),
    };
    let inv_det = Rational::one() / det;
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| cofactor(m, j, i).scale(&inv_det))
    }))
}

#[cfg(test)]
mod tests {
    use super::super::observable::{P1, P2, Q1, Q2};
    use super::*;

    fn theta() -> Observable {
        Observable::theta_param()
    }

    fn half() -> Rational {
        rational(1, 2)
    }

    #[test]
    fn form_entries() {
        let s = SymplecticStructure::modified();
        assert_eq!(s.form()[Q1][P1], Scalar::one());
        assert_eq!(s.form()[P1][Q1], -Scalar::one());
        assert_eq!(s.form()[P1][P2], -Scalar::theta());
        assert!(s.form()[Q1][Q2].is_zero());
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn bivector_matches_hand_inverse() {
        // Hand inverse of [[0, I], [-I, -Θ]] transposed: [[Θ, I], [-I, 0]].
        let s = SymplecticStructure::modified();
        let pi = s.bivector();
        assert_eq!(pi[Q1][Q2], Scalar::theta());
        assert_eq!(pi[Q2][Q1], -Scalar::theta());
        assert_eq!(pi[Q1][P1], Scalar::one());
        assert_eq!(pi[P1][Q1], -Scalar::one());
        assert!(pi[P1][P2].is_zero());
        assert!(pi[Q1][P2].is_zero());
        // Πᵀ Ω = 1
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = Scalar::zero();
                for c in 0..4 {
                    acc += &pi[c][a] * &s.form()[c][b];
                }
                let expected = if a == b { Scalar::one() } else { Scalar::zero() };
                assert_eq!(acc, expected, "entry ({a},{b})");
            }
        }
    }

    #[test]
    fn standard_limit() {
        let s = SymplecticStructure::standard();
        assert!(s.form()[P1][P2].is_zero());
        assert!(s.bivector()[Q1][Q2].is_zero());
        assert_eq!(s.bracket(&Observable::q2(), &Observable::p2()), Observable::one());
    }

    #[test]
    fn coordinate_brackets() {
        let s = SymplecticStructure::modified();
        let x: [Observable; 4] = std::array::from_fn(Observable::coordinate);
        assert_eq!(s.bracket(&x[Q1], &x[Q2]), theta());
        assert_eq!(s.bracket(&x[Q2], &x[Q1]), -theta());
        assert!(s.bracket(&x[P1], &x[P2]).is_zero());
        assert_eq!(s.bracket(&x[Q1], &x[P1]), Observable::one());
        assert!(s.bracket(&x[Q1], &x[P2]).is_zero());
    }

    #[test]
    fn bracket_of_mixed_products() {
        // {q1 p2, q2 p1} = q2 p2 - q1 p1 + θ p1 p2, expanded by hand.
        let s = SymplecticStructure::modified();
        let f = &Observable::q1() * &Observable::p2();
        let g = &Observable::q2() * &Observable::p1();
        let expected = &(&(&Observable::q2() * &Observable::p2()) - &(&Observable::q1() * &Observable::p1()))
            + &(&theta() * &(&Observable::p1() * &Observable::p2()));
        assert_eq!(s.bracket(&f, &g), expected);
    }

    #[test]
    fn vector_field_of_position() {
        // ξ ⌟ Ω = dq1 solved by hand: ξ = -θ ∂_{q2} - ∂_{p1}.
        let s = SymplecticStructure::modified();
        let xi = s.hamiltonian_vector_field(&Observable::q1());
        assert!(xi.components[Q1].is_zero());
        assert_eq!(xi.components[Q2], -theta());
        assert_eq!(xi.components[P1], -Observable::one());
        assert!(xi.components[P2].is_zero());
        assert!(s.hamiltonian_vector_field(&Observable::one()).is_zero());
    }

    #[test]
    fn translation_field_generator() {
        // ξ = A^i ∂_{q^i} - B_i ∂_{p_i} contracts to A^i p_i + B_i (q^i + θ ε^{ij} p_j).
        let s = SymplecticStructure::modified();
        let (a1, a2, b1, b2) = (rational(2, 1), rational(-1, 3), rational(5, 7), rational(1, 2));
        let xi = VectorField::new([
            Observable::from(a1.clone()),
            Observable::from(a2.clone()),
            Observable::from(-b1.clone()),
            Observable::from(-b2.clone()),
        ]);
        let f = s.contract_to_observable(&xi).unwrap();
        let expected = Observable::p1().scale(&a1)
            + Observable::p2().scale(&a2)
            + (&Observable::q1() + &(&theta() * &Observable::p2())).scale(&b1)
            + (&Observable::q2() - &(&theta() * &Observable::p1())).scale(&b2);
        assert_eq!(f, expected);
        assert_eq!(s.hamiltonian_vector_field(&f), xi);
    }

    #[test]
    fn contraction_of_zero_field() {
        let s = SymplecticStructure::modified();
        assert!(s.contract_to_observable(&VectorField::zero()).unwrap().is_zero());
    }

    #[test]
    fn dilation_is_not_hamiltonian_when_deformed() {
        // ξ = q1 ∂_{q1} - p1 ∂_{p1}: ξ ⌟ Ω = p1 dq1 + q1 dp1 + θ p1 dp2, not closed.
        let xi = VectorField::new([Observable::q1(), Observable::zero(), -Observable::p1(), Observable::zero()]);
        let s = SymplecticStructure::modified();
        assert!(matches!(
            s.contract_to_observable(&xi),
            Err(SymplecticError::NonExactForm { first: 2, second: 3 })
        ));
        // At θ = 0 it is generated by q1 p1.
        let f = SymplecticStructure::standard().contract_to_observable(&xi).unwrap();
        assert_eq!(f, &Observable::q1() * &Observable::p1());
    }

    #[test]
    fn bopp_examples() {
        let q1s = bopp_shift(&Observable::q1());
        assert_eq!(q1s, &Observable::q1() - &(&theta() * &Observable::p2()).scale(&half()));
        assert_eq!(bopp_shift(&Observable::p1()), Observable::p1());
        // (q1 - ½θp2)(q2 + ½θp1) multiplied out by hand.
        let q1q2 = &Observable::q1() * &Observable::q2();
        let expected = &q1q2 + &(&theta() * &(&Observable::q1() * &Observable::p1())).scale(&half())
            - (&theta() * &(&Observable::q2() * &Observable::p2())).scale(&half())
            - (&(&theta() * &theta()) * &(&Observable::p1() * &Observable::p2())).scale(&rational(1, 4));
        assert_eq!(bopp_shift(&q1q2), expected);
    }

    #[test]
    fn jacobi_examples() {
        let s = SymplecticStructure::modified();
        let (q1, q2, p1, p2) = (Observable::q1(), Observable::q2(), Observable::p1(), Observable::p2());
        assert!(s.jacobi_residual(&q1, &q2, &p1).is_zero());
        assert!(s.jacobi_residual(&(&q1 * &p1), &(&q2 * &p2), &(&p1 * &p2)).is_zero());
        assert!(s.jacobi_residual(&(&q1 * &q2), &p2, &Observable::one()).is_zero());
    }

    #[test]
    fn rejects_degenerate_and_non_antisymmetric() {
        let zero: [[Scalar; 4]; 4] = Default::default();
        assert_eq!(SymplecticStructure::from_form(zero), Err(SymplecticError::Degenerate));
        let mut bad: [[Scalar; 4]; 4] = Default::default();
        bad[0][2] = Scalar::one();
        assert!(matches!(
            SymplecticStructure::from_form(bad),
            Err(SymplecticError::NotAntisymmetric { .. })
        ));
    }
}
