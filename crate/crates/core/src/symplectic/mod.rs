//! Exact phase-space algebra on `T*R^2` with the θ-deformed symplectic form.

use std::sync::LazyLock;

use thiserror::Error;

pub mod dynamics;
pub mod observable;
pub mod poly;
pub mod structure;

pub use dynamics::{evolve, Trajectory};
pub use observable::{Observable, Scalar};
pub use poly::{rational, rational_to_f64, Poly, Rational};
pub use structure::{bopp_shift, SymplecticStructure, VectorField};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymplecticError {
    #[error("one-form is not closed: d/dx{first} and d/dx{second} components disagree, field is not Hamiltonian")]
    NonExactForm { first: usize, second: usize },
    #[error("symplectic matrix is degenerate")]
    Degenerate,
    #[error("symplectic matrix is not antisymmetric at ({row}, {col})")]
    NotAntisymmetric { row: usize, col: usize },
    #[error("state left the finite range at t = {time}")]
    NonFiniteState { time: f64 },
    #[error("invalid integration window: t_end = {t_end}, dt = {dt} (need dt > 0 and t_end >= dt)")]
    InvalidStep { t_end: f64, dt: f64 },
}

/// A point `(q1, q2, p1, p2)` of phase space.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct PhasePoint {
    pub q1: f64,
    pub q2: f64,
    pub p1: f64,
    pub p2: f64,
}

impl PhasePoint {
    pub fn new(q1: f64, q2: f64, p1: f64, p2: f64) -> Self {
        Self { q1, q2, p1, p2 }
    }

    pub fn from_array(x: [f64; 4]) -> Self {
        Self::new(x[0], x[1], x[2], x[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q1, self.q2, self.p1, self.p2]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

static MODIFIED: LazyLock<SymplecticStructure> = LazyLock::new(SymplecticStructure::modified);
static STANDARD: LazyLock<SymplecticStructure> = LazyLock::new(SymplecticStructure::standard);

/// The θ-deformed structure.
pub fn build_symplectic() -> SymplecticStructure {
    MODIFIED.clone()
}

/// Shared θ-deformed structure.
pub fn modified() -> &'static SymplecticStructure {
    &MODIFIED
}

/// Shared undeformed structure.
pub fn standard() -> &'static SymplecticStructure {
    &STANDARD
}

pub fn hamiltonian_vector_field(f: &Observable) -> VectorField {
    MODIFIED.hamiltonian_vector_field(f)
}

pub fn contract_to_observable(xi: &VectorField) -> Result<Observable, SymplecticError> {
    MODIFIED.contract_to_observable(xi)
}

/// Deformed bracket, `{q1, q2} = θ`.
pub fn poisson_bracket(f: &Observable, g: &Observable) -> Observable {
    MODIFIED.bracket(f, g)
}

/// Undeformed bracket on commuting coordinates.
pub fn standard_bracket(f: &Observable, g: &Observable) -> Observable {
    STANDARD.bracket(f, g)
}

pub fn jacobi_residual(f: &Observable, g: &Observable, h: &Observable) -> Observable {
    MODIFIED.jacobi_residual(f, g, h)
}

pub fn evaluate(f: &Observable, x: &PhasePoint, theta: f64, hbar: f64) -> f64 {
    f.evaluate_at(x, theta, hbar)
}
