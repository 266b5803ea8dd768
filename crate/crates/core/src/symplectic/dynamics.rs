//! Classical flow `ẋ^a = Π^{ab}(θ) ∂_b H` integrated with fixed-step RK4.

use super::observable::{Observable, HBAR, THETA};
use super::poly::rational_to_f64;
use super::structure::SymplecticStructure;
use super::{PhasePoint, SymplecticError};

/// Above this magnitude a state component counts as blown up.
const STATE_BOUND: f64 = 1e150;

/// Polynomial in the four coordinates with `theta`/`hbar` already substituted.
#[derive(Clone, Debug)]
struct NumericPoly {
    terms: Vec<(f64, [u32; 4])>,
}

impl NumericPoly {
    fn compile(f: &Observable, theta: f64, hbar: f64) -> Self {
        let mut terms: Vec<(f64, [u32; 4])> = Vec::new();
        for (e, c) in f.terms() {
            let v = rational_to_f64(c) * theta.powi(e[THETA] as i32) * hbar.powi(e[HBAR] as i32);
            let key = [e[0], e[1], e[2], e[3]];
            match terms.iter_mut().find(|(_, k)| *k == key) {
                Some(t) => t.0 += v,
                None => terms.push((v, key)),
            }
        }
        Self { terms }
    }

    fn eval(&self, x: &[f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| {
                let mut v = *c;
                for (xi, &k) in x.iter().zip(e) {
                    if k > 0 {
                        v *= xi.powi(k as i32);
                    }
                }
                v
            })
            .sum()
    }
}

/// Sampled trajectory, one entry per step including both endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<PhasePoint>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn last(&self) -> Option<&PhasePoint> {
        self.points.last()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &PhasePoint)> {
        self.times.iter().copied().zip(self.points.iter())
    }
}

/// Integrates the deformed Hamiltonian flow of `h` from `x0` up to time `t_end`.
///
/// The step count is `ceil(t_end / dt)` (to within rounding); the final step
/// is shortened so the trajectory ends exactly at `t_end`.
pub fn evolve(
    h: &Observable,
    x0: PhasePoint,
    theta: f64,
    hbar: f64,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory, SymplecticError> {
    if !dt.is_finite() || dt <= 0.0 || !t_end.is_finite() || t_end < dt {
        return Err(SymplecticError::InvalidStep { t_end, dt });
    }
    if !x0.is_finite() || !theta.is_finite() || !hbar.is_finite() {
        return Err(SymplecticError::NonFiniteState { time: 0.0 });
    }
    let xi = SymplecticStructure::modified().hamiltonian_vector_field(h);
    let field: [NumericPoly; 4] = std::array::from_fn(|a| NumericPoly::compile(&xi.components[a], theta, hbar));
    let velocity = |x: &[f64; 4]| -> [f64; 4] { std::array::from_fn(|a| field[a].eval(x)) };

    let ratio = t_end / dt;
    let mut steps = ratio.ceil() as usize;
    // Absorb a rounding-level overshoot such as 10.0 / 1e-3 = 10000.000000000002.
    if steps > 1 && (ratio - (steps - 1) as f64) < 1e-9 {
        steps -= 1;
    }

    let mut times = Vec::with_capacity(steps + 1);
    let mut points = Vec::with_capacity(steps + 1);
    let mut x = x0.to_array();
    times.push(0.0);
    points.push(x0);
    for k in 0..steps {
        let t = k as f64 * dt;
        let h_step = if k + 1 == steps { t_end - t } else { dt };
        x = rk4_step(&velocity, &x, h_step);
        let t_next = if k + 1 == steps { t_end } else { (k + 1) as f64 * dt };
        if x.iter().any(|v| !v.is_finite() || v.abs() > STATE_BOUND) {
            return Err(SymplecticError::NonFiniteState { time: t_next });
        }
        times.push(t_next);
        points.push(PhasePoint::from_array(x));
    }
    Ok(Trajectory { times, points })
}

fn rk4_step<F: Fn(&[f64; 4]) -> [f64; 4]>(f: &F, x: &[f64; 4], h: f64) -> [f64; 4] {
    let offset = |k: &[f64; 4], s: f64| -> [f64; 4] { std::array::from_fn(|i| x[i] + s * k[i]) };
    let k1 = f(x);
    let k2 = f(&offset(&k1, 0.5 * h));
    let k3 = f(&offset(&k2, 0.5 * h));
    let k4 = f(&offset(&k3, h));
    std::array::from_fn(|i| x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}
