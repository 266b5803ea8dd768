use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use super::RepError;

/// Axis of the configuration plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    Q1,
    Q2,
}

impl Axis {
    pub const BOTH: [Axis; 2] = [Axis::Q1, Axis::Q2];

    pub fn index(self) -> usize {
        match self {
            Axis::Q1 => 0,
            Axis::Q2 => 1,
        }
    }

    pub fn other(self) -> Axis {
        match self {
            Axis::Q1 => Axis::Q2,
            Axis::Q2 => Axis::Q1,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Q1 => "1",
            Axis::Q2 => "2",
        })
    }
}

/// Periodic `n × n` lattice on `[-l, l)²` together with the numeric
/// `theta` and `hbar` of the representation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub l: f64,
    pub theta: f64,
    pub hbar: f64,
}

impl GridSpec {
    pub const MIN_N: usize = 16;

    pub fn new(n: usize, l: f64, theta: f64, hbar: f64) -> Result<Self, RepError> {
        let spec = Self { n, l, theta, hbar };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), RepError> {
        if self.n < Self::MIN_N || !self.n.is_power_of_two() {
            return Err(RepError::InvalidGrid(format!(
                "n = {} must be a power of two >= {}",
                self.n,
                Self::MIN_N
            )));
        }
        if !self.l.is_finite() || self.l <= 0.0 {
            return Err(RepError::InvalidGrid(format!("box half-length l = {} must be positive", self.l)));
        }
        if !self.hbar.is_finite() || self.hbar <= 0.0 {
            return Err(RepError::InvalidGrid(format!("hbar = {} must be positive", self.hbar)));
        }
        if !self.theta.is_finite() {
            return Err(RepError::InvalidGrid(format!("theta = {} must be finite", self.theta)));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.l / self.n as f64
    }

    /// Lattice coordinate `-l + Δ·index`.
    pub fn coordinate(&self, index: usize) -> f64 {
        -self.l + self.spacing() * index as f64
    }

    /// Wavenumber of FFT bin `index`, in `(π/l)·{-n/2, …, n/2 - 1}`.
    pub fn wavenumber(&self, index: usize) -> f64 {
        let n = self.n as i64;
        let i = index as i64;
        let m = if i < n / 2 { i } else { i - n };
        PI / self.l * m as f64
    }

    pub fn with_parameters(&self, theta: f64, hbar: f64) -> Self {
        Self { theta, hbar, ..*self }
    }
}

/// A validated [`GridSpec`] with cached FFT plans and lattices.
pub struct Grid {
    spec: GridSpec,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    coords: Vec<f64>,
    wavenumbers: Vec<f64>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("spec", &self.spec).finish_non_exhaustive()
    }
}

impl Grid {
    pub fn new(spec: GridSpec) -> Result<Arc<Self>, RepError> {
        spec.validate()?;
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(spec.n);
        let inverse = planner.plan_fft_inverse(spec.n);
        let coords = (0..spec.n).map(|i| spec.coordinate(i)).collect();
        let wavenumbers = (0..spec.n).map(|i| spec.wavenumber(i)).collect();
        Ok(Arc::new(Self {
            spec,
            forward,
            inverse,
            coords,
            wavenumbers,
        }))
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    /// Applies the Fourier multiplier `m(k)` along one axis of row-major
    /// data indexed `[i1 * n + i2]`.
    pub(crate) fn fourier_multiply<F>(&self, data: &[Complex64], axis: Axis, multiplier: F) -> Vec<Complex64>
    where
        F: Fn(usize, f64) -> Complex64,
    {
        let n = self.spec.n;
        let scale = 1.0 / n as f64;
        let weights: Vec<Complex64> = self
            .wavenumbers
            .iter()
            .enumerate()
            .map(|(j, &k)| multiplier(j, k) * scale)
            .collect();
        let mut buf = match axis {
            Axis::Q2 => data.to_vec(),
            Axis::Q1 => transpose(data, n),
        };
        self.forward.process(&mut buf);
        for row in buf.chunks_exact_mut(n) {
            for (v, w) in row.iter_mut().zip(&weights) {
                *v *= w;
            }
        }
        self.inverse.process(&mut buf);
        match axis {
            Axis::Q2 => buf,
            Axis::Q1 => transpose(&buf, n),
        }
    }
}

fn transpose(data: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = data[i * n + j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(GridSpec::new(256, 20.0, 0.1, 1.0).is_ok());
        for (n, l, hbar) in [(8, 1.0, 1.0), (100, 1.0, 1.0), (64, 0.0, 1.0), (64, 1.0, 0.0), (64, -1.0, 1.0)] {
            assert!(GridSpec::new(n, l, 0.0, hbar).is_err(), "{n} {l} {hbar}");
        }
        assert!(GridSpec::new(64, 1.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn lattices() {
        let s = GridSpec::new(16, 4.0, 0.0, 1.0).unwrap();
        assert_eq!(s.spacing(), 0.5);
        assert_eq!(s.coordinate(0), -4.0);
        assert_eq!(s.coordinate(15), 3.5);
        assert_eq!(s.wavenumber(0), 0.0);
        assert_eq!(s.wavenumber(7), 7.0 * PI / 4.0);
        assert_eq!(s.wavenumber(8), -8.0 * PI / 4.0);
        assert_eq!(s.wavenumber(15), -PI / 4.0);
    }

    #[test]
    fn identity_multiplier_round_trips() {
        let g = Grid::new(GridSpec::new(16, 3.0, 0.0, 1.0).unwrap()).unwrap();
        let data: Vec<Complex64> = (0..256).map(|i| Complex64::new(i as f64, -(i as f64) / 3.0)).collect();
        for axis in Axis::BOTH {
            let out = g.fourier_multiply(&data, axis, |_, _| Complex64::new(1.0, 0.0));
            for (a, b) in out.iter().zip(&data) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }
}
