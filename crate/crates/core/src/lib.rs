//! Canonical group quantization of the plane with a θ-deformed symplectic
//! structure.

pub mod symplectic;
pub mod parser;
pub mod group;
pub mod hilbert;
pub mod random;
pub mod suite;
pub mod cli;
