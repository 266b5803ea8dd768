use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{Axis, Grid, GridSpec};
use super::RepError;

/// Sampled `ψ(q1, q2)` on a periodic grid, stored row-major as `[i1 * n + i2]`.
#[derive(Clone, Debug)]
pub struct Wavefunction {
    grid: Arc<Grid>,
    amps: Vec<Complex64>,
}

impl Wavefunction {
    pub fn from_amplitudes(grid: Arc<Grid>, amps: Vec<Complex64>) -> Result<Self, RepError> {
        let n = grid.n();
        if amps.len() != n * n {
            return Err(RepError::Format(format!(
                "expected {} amplitudes, got {}",
                n * n,
                amps.len()
            )));
        }
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(RepError::Format("non-finite amplitude".into()));
        }
        Ok(Self { grid, amps })
    }

    /// Samples `f(q1, q2)` on the lattice.
    pub fn from_fn<F: Fn(f64, f64) -> Complex64>(grid: Arc<Grid>, f: F) -> Self {
        let n = grid.n();
        let mut amps = Vec::with_capacity(n * n);
        for &x in grid.coords() {
            for &y in grid.coords() {
                amps.push(f(x, y));
            }
        }
        Self { grid, amps }
    }

    pub(crate) fn with_amps(&self, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), self.amps.len());
        Self {
            grid: Arc::clone(&self.grid),
            amps,
        }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn spec(&self) -> &GridSpec {
        self.grid.spec()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Same amplitudes, different numeric `theta` and `hbar`.
    pub fn reparameterize(&self, theta: f64, hbar: f64) -> Result<Self, RepError> {
        let grid = Grid::new(self.spec().with_parameters(theta, hbar))?;
        Ok(Self {
            grid,
            amps: self.amps.clone(),
        })
    }

    fn cell(&self) -> f64 {
        let d = self.spec().spacing();
        d * d
    }

    /// `⟨self, other⟩ = Δ² Σ conj(self)·other`.
    pub fn inner(&self, other: &Wavefunction) -> Complex64 {
        let s: Complex64 = self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum();
        s * self.cell()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.cell()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.amps.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        self.with_amps(self.amps.iter().map(|z| z * k).collect())
    }

    pub fn add(&self, other: &Wavefunction) -> Self {
        self.with_amps(self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Wavefunction) -> Self {
        self.with_amps(self.amps.iter().zip(&other.amps).map(|(a, b)| a - b).collect())
    }

    /// `Σ_k c_k ψ_k`; all terms must share the grid.
    pub fn linear_combination(terms: &[(Complex64, &Wavefunction)]) -> Option<Self> {
        let (_, first) = terms.first()?;
        let mut amps = vec![Complex64::new(0.0, 0.0); first.amps.len()];
        for (c, psi) in terms {
            for (acc, z) in amps.iter_mut().zip(&psi.amps) {
                *acc += c * z;
            }
        }
        Some(first.with_amps(amps))
    }

    /// Multiplies pointwise by `f(q1, q2)`.
    pub fn multiply_by<F: Fn(f64, f64) -> Complex64>(&self, f: F) -> Self {
        let n = self.grid.n();
        let coords = self.grid.coords();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(idx, z)| z * f(coords[idx / n], coords[idx % n]))
            .collect();
        self.with_amps(amps)
    }

    /// Spectral derivative along `axis`. The Nyquist bin is dropped so real
    /// data stays real.
    pub fn derivative(&self, axis: Axis) -> Self {
        let n = self.grid.n();
        let amps = self.grid.fourier_multiply(&self.amps, axis, |j, k| {
            if j == n / 2 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, k)
            }
        });
        self.with_amps(amps)
    }

    /// `ψ(q - shift)` by Fourier phase multiplication; exact for band-limited data.
    pub fn translate(&self, shift: [f64; 2]) -> Self {
        let mut amps = self.amps.clone();
        for axis in Axis::BOTH {
            let s = shift[axis.index()];
            if s != 0.0 {
                amps = self.grid.fourier_multiply(&amps, axis, |_, k| Complex64::from_polar(1.0, -k * s));
            }
        }
        self.with_amps(amps)
    }

    /// `Δ² Σ q_axis |ψ|²`.
    pub fn position_moment(&self, axis: Axis) -> f64 {
        let n = self.grid.n();
        let coords = self.grid.coords();
        let s: f64 = self
            .amps
            .iter()
            .enumerate()
            .map(|(idx, z)| {
                let q = if axis == Axis::Q1 { coords[idx / n] } else { coords[idx % n] };
                q * z.norm_sqr()
            })
            .sum();
        s * self.cell()
    }

    pub fn to_wfn_json(&self) -> WfnJson {
        let s = self.spec();
        WfnJson {
            format: WFN_FORMAT.to_string(),
            n: s.n,
            l: s.l,
            theta: s.theta,
            hbar: s.hbar,
            re: self.amps.iter().map(|z| z.re).collect(),
            im: self.amps.iter().map(|z| z.im).collect(),
        }
    }

    pub fn from_wfn_json(doc: &WfnJson) -> Result<Self, RepError> {
        if doc.format != WFN_FORMAT {
            return Err(RepError::Format(format!(
                "unsupported format '{}', expected '{WFN_FORMAT}'",
                doc.format
            )));
        }
        let spec = GridSpec::new(doc.n, doc.l, doc.theta, doc.hbar)?;
        let expected = spec.n * spec.n;
        if doc.re.len() != expected || doc.im.len() != expected {
            return Err(RepError::Format(format!(
                "array lengths re = {}, im = {} do not match n² = {expected}",
                doc.re.len(),
                doc.im.len()
            )));
        }
        let amps = doc.re.iter().zip(&doc.im).map(|(&re, &im)| Complex64::new(re, im)).collect();
        Self::from_amplitudes(Grid::new(spec)?, amps)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_wfn_json()).expect("wavefunction serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, RepError> {
        let doc: WfnJson = serde_json::from_str(s).map_err(|e| RepError::Format(e.to_string()))?;
        Self::from_wfn_json(&doc)
    }
}

pub const WFN_FORMAT: &str = "wfn-json/1";

/// On-disk wavefunction document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WfnJson {
    pub format: String,
    pub n: usize,
    pub l: f64,
    pub theta: f64,
    pub hbar: f64,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

/// Normalized `exp(-|q - q0|² / (4σ²) + i k0·q)`.
pub fn gaussian(spec: GridSpec, q0: [f64; 2], k0: [f64; 2], sigma: f64) -> Result<Wavefunction, RepError> {
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(RepError::InvalidGrid(format!("sigma = {sigma} must be positive")));
    }
    let reach = q0[0].hypot(q0[1]) + 6.0 * sigma;
    if reach.is_nan() || reach >= spec.l {
        return Err(RepError::TailOverflow { reach, l: spec.l });
    }
    let grid = Grid::new(spec)?;
    let w = 1.0 / (4.0 * sigma * sigma);
    let psi = Wavefunction::from_fn(grid, |x, y| {
        let r2 = (x - q0[0]).powi(2) + (y - q0[1]).powi(2);
        Complex64::from_polar((-r2 * w).exp(), k0[0] * x + k0[1] * y)
    });
    let norm = psi.norm();
    Ok(psi.scale(Complex64::new(1.0 / norm, 0.0)))
}
