//! Numerical representation on `L²(R²)`, sampled on a periodic grid.

use thiserror::Error;

pub mod checks;
pub mod grid;
pub mod operators;
pub mod wavefunction;

pub use checks::{
    commutator_check, quantized_commutator_check, unitarity_check, weyl_check, CommutatorKind, OperatorReport,
    WeylParams,
};
pub use grid::{Axis, Grid, GridSpec};
pub use operators::{apply_U, apply_V, apply_W, apply_momentum, apply_position, quantize_apply, theta_shift};
pub use wavefunction::{gaussian, Wavefunction, WfnJson, WFN_FORMAT};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("wavepacket reaches {reach} but the box half-length is {l}; enlarge the box or narrow the packet")]
    TailOverflow { reach: f64, l: f64 },
    #[error("state norm {norm} is too small for a phase to be defined")]
    PhaseUndefined { norm: f64 },
    #[error("wavefunction format: {0}")]
    Format(String),
}
