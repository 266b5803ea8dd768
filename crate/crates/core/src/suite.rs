//! The full verification suite behind `verify-all` and `rep-check`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::group::{
    extract_cocycle, extract_cocycle_noncommutative, homomorphism_defect, literal_obstructions, AlgebraElement,
    BracketMode, Cocycle, GroupElement,
};
use crate::hilbert::{
    apply_U, apply_V, apply_W, commutator_check, gaussian, quantized_commutator_check, unitarity_check, weyl_check,
    Axis, CommutatorKind, GridSpec, OperatorReport, RepError, WeylParams, Wavefunction,
};
use crate::parser::format;
use crate::random::{self, SuiteRng};
use crate::symplectic::{self, bopp_shift, rational, Observable, Rational};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Sizes of the randomized exact checks.
pub const BRACKET_CASES: usize = 200;
pub const BOPP_CASES: usize = 100;
pub const GROUP_CASES: usize = 200;
pub const ASSOCIATIVITY_CASES: usize = 500;
pub const QUANTIZE_CASES: usize = 50;
pub const RANDOM_STATES: usize = 8;

/// Noise floor below which a grid-convergence increase is not significant.
pub const CONVERGENCE_FLOOR: f64 = 1e-12;

/// Default numeric tolerances.
pub mod tolerance {
    pub const UNITARITY: f64 = 1e-12;
    pub const TRANSLATION: f64 = 1e-8;
    pub const COMPOSITION: f64 = 1e-10;
    pub const PHASE: f64 = 1e-8;
    pub const UU_RESIDUAL: f64 = 1e-10;
    pub const SCALAR_COMMUTE: f64 = 1e-14;
    pub const COMMUTATOR: f64 = 1e-6;
    pub const MOMENTUM_COMMUTATOR: f64 = 1e-10;
    pub const QUANTIZED: f64 = 1e-6;
    pub const FLAT: f64 = 1e-10;
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub theta: f64,
    pub hbar: f64,
    pub grid_n: usize,
    pub box_l: f64,
    pub seed: u64,
    /// Replaces every numeric tolerance when set.
    pub tol: Option<f64>,
    pub parallel: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            theta: 0.1,
            hbar: 1.0,
            grid_n: 256,
            box_l: 20.0,
            seed: 0,
            tol: None,
            parallel: false,
        }
    }
}

impl SuiteConfig {
    pub fn grid(&self) -> Result<GridSpec, RepError> {
        GridSpec::new(self.grid_n, self.box_l, self.theta, self.hbar)
    }

    pub fn validate(&self) -> Result<(), RepError> {
        self.grid()?;
        if let Some(t) = self.tol {
            if !t.is_finite() || t <= 0.0 {
                return Err(RepError::InvalidGrid(format!("tolerance {t} must be positive and finite")));
            }
        }
        Ok(())
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

/// A reported number or symbolic value.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Number(f64),
    Text(String),
}

impl Quantity {
    /// Text form; numbers use the same shortest round-trip form as JSON.
    pub fn render(&self) -> String {
        match self {
            Quantity::Number(x) => render_number(*x),
            Quantity::Text(s) => s.clone(),
        }
    }
}

pub fn render_number(x: f64) -> String {
    serde_json::to_string(&x).unwrap_or_else(|_| "null".into())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub measured: Quantity,
    pub expected: Quantity,
    pub error: f64,
    pub tol: f64,
    pub pass: bool,
}

impl CheckEntry {
    fn numeric(name: impl Into<String>, measured: f64, expected: f64, error: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            params: BTreeMap::new(),
            measured: Quantity::Number(measured),
            expected: Quantity::Number(expected),
            error,
            tol,
            pass: error <= tol,
        }
    }

    /// An exact identity over `cases` inputs; `error` counts the failures.
    fn exact(name: impl Into<String>, cases: usize, failures: usize) -> Self {
        let mut e = Self::numeric(name, failures as f64, 0.0, failures as f64, 0.0);
        e.params.insert("cases".into(), json!(cases));
        e
    }

    fn symbolic(name: impl Into<String>, measured: String, expected: String) -> Self {
        let pass = measured == expected;
        Self {
            name: name.into(),
            params: BTreeMap::new(),
            measured: Quantity::Text(measured),
            expected: Quantity::Text(expected),
            error: if pass { 0.0 } else { 1.0 },
            tol: 0.0,
            pass,
        }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    /// Flattens an operator report. Phases are reported by their argument
    /// and commutator constants by their imaginary part; the remaining
    /// component goes into `params`.
    pub fn from_operator(r: &OperatorReport) -> Self {
        let m = r.measured();
        let e = r.expected();
        let (measured, expected, extra) = if (e.norm() - 1.0).abs() < 1e-12 && r.name.starts_with("weyl") {
            (m.arg(), e.arg(), ("measured_modulus", m.norm()))
        } else if r.name.starts_with("unitarity") {
            (m.re, e.re, ("measured_im", m.im))
        } else {
            (m.im, e.im, ("measured_re", m.re))
        };
        let mut params: BTreeMap<String, Value> = r.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        params.insert(extra.0.into(), json!(extra.1));
        params.insert("relative_l2_error".into(), json!(r.relative_l2_error));
        params.insert("max_pointwise_error".into(), json!(r.max_pointwise_error));
        if let Some(a) = r.aligned_residual {
            params.insert("aligned_residual".into(), json!(a));
        }
        Self {
            name: r.name.clone(),
            params,
            measured: Quantity::Number(measured),
            expected: Quantity::Number(expected),
            error: r.error,
            tol: r.tolerance,
            pass: r.pass,
        }
    }

    fn prefixed(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}{}", self.name);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub version: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckEntry>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(config: SuiteConfig, checks: Vec<CheckEntry>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            version: VERSION.to_string(),
            config,
            checks,
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ncplane {} verification\n", self.version);
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} measured={} expected={} error={} tol={}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.measured.render(),
                c.expected.render(),
                render_number(c.error),
                render_number(c.tol),
            ));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "overall: {} ({} checks, {} failed)\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed
        ));
        out
    }
}

/// Runs all three suites.
pub fn verify_all(config: &SuiteConfig) -> Result<SuiteReport, RepError> {
    config.validate()?;
    let (algebra, group, rep) = if config.parallel {
        std::thread::scope(|s| {
            let a = s.spawn(|| algebra_suite(config));
            let g = s.spawn(|| group_suite(config));
            let r = representation_suite(config);
            (a.join().expect("algebra suite"), g.join().expect("group suite"), r)
        })
    } else {
        (algebra_suite(config), group_suite(config), representation_suite(config))
    };
    let mut checks = algebra;
    checks.extend(group);
    checks.extend(rep?);
    Ok(SuiteReport::new(*config, checks))
}

fn count_failures<T>(rng: &mut SuiteRng, cases: usize, mut draw: impl FnMut(&mut SuiteRng) -> T, ok: impl Fn(&T) -> bool) -> usize {
    (0..cases).filter(|_| !ok(&draw(rng))).count()
}

/// Observable pairs and triples of coordinate degree ≤ 3.
fn random_obs(rng: &mut SuiteRng) -> Observable {
    random::observable(rng, 3, 3)
}

/// `f` without its coordinate-constant terms.
fn drop_coordinate_constants(f: &Observable) -> Observable {
    let mut out = Observable::zero();
    for (e, c) in f.terms() {
        if e[..4].iter().any(|&k| k > 0) {
            out.add_term(*e, c.clone());
        }
    }
    out
}

/// Exact bracket identities.
pub fn algebra_suite(config: &SuiteConfig) -> Vec<CheckEntry> {
    let seed = config.seed;
    let mut checks = Vec::new();
    let bracket = symplectic::poisson_bracket;

    let mut rng = random::stream(seed, "antisymmetry");
    let fails = count_failures(&mut rng, BRACKET_CASES, |r| (random_obs(r), random_obs(r)), |(f, g)| {
        (bracket(f, g) + bracket(g, f)).is_zero()
    });
    checks.push(CheckEntry::exact("algebra.antisymmetry", BRACKET_CASES, fails));

    let mut rng = random::stream(seed, "leibniz");
    let fails = count_failures(
        &mut rng,
        BRACKET_CASES,
        |r| (random_obs(r), random_obs(r), random_obs(r)),
        |(f, g, h)| bracket(f, &(g * h)) == &bracket(f, g) * h + g * &bracket(f, h),
    );
    checks.push(CheckEntry::exact("algebra.leibniz", BRACKET_CASES, fails));

    let mut rng = random::stream(seed, "jacobi");
    let fails = count_failures(
        &mut rng,
        BRACKET_CASES,
        |r| (random_obs(r), random_obs(r), random_obs(r)),
        |(f, g, h)| symplectic::jacobi_residual(f, g, h).is_zero(),
    );
    checks.push(CheckEntry::exact("algebra.jacobi", BRACKET_CASES, fails));

    let mut rng = random::stream(seed, "exactness");
    let fails = count_failures(&mut rng, BRACKET_CASES, random_obs, |f| {
        let xi = symplectic::hamiltonian_vector_field(f);
        symplectic::contract_to_observable(&xi).is_ok_and(|g| g == drop_coordinate_constants(f))
    });
    checks.push(CheckEntry::exact("algebra.exactness_round_trip", BRACKET_CASES, fails));

    let mut rng = random::stream(seed, "bopp");
    let fails = count_failures(&mut rng, BOPP_CASES, |r| (random_obs(r), random_obs(r)), |(f, g)| {
        symplectic::standard_bracket(&bopp_shift(f), &bopp_shift(g)) == bopp_shift(&bracket(f, g))
    });
    checks.push(CheckEntry::exact("algebra.bopp_equivalence", BOPP_CASES, fails));

    let mut rng = random::stream(seed, "limit");
    let zero = Rational::zero();
    let fails = count_failures(&mut rng, BOPP_CASES, |r| (random_obs(r), random_obs(r)), |(f, g)| {
        bracket(f, g).with_theta(&zero) == symplectic::standard_bracket(&f.with_theta(&zero), &g.with_theta(&zero))
    });
    checks.push(CheckEntry::exact("algebra.theta_zero_limit", BOPP_CASES, fails));

    checks.extend(coordinate_brackets());
    checks
}

/// The deformed coordinate brackets by both routes: the deformed bracket
/// on the coordinates, and the standard bracket on Bopp-shifted ones.
fn coordinate_brackets() -> Vec<CheckEntry> {
    let q = |i: usize| Observable::coordinate(i);
    let p = |i: usize| Observable::coordinate(2 + i);
    let theta = "theta".to_string();
    let mut pairs: Vec<(String, Observable, Observable, String)> = vec![
        ("q1_q2".into(), q(0), q(1), theta.clone()),
        ("q2_q1".into(), q(1), q(0), "-theta".into()),
        ("p1_p2".into(), p(0), p(1), "0".into()),
    ];
    for i in 0..2 {
        for j in 0..2 {
            let expected = if i == j { "1" } else { "0" };
            pairs.push((format!("q{}_p{}", i + 1, j + 1), q(i), p(j), expected.into()));
        }
    }
    let mut out = Vec::new();
    for (label, f, g, expected) in pairs {
        let deformed = format(&symplectic::poisson_bracket(&f, &g));
        out.push(CheckEntry::symbolic(format!("algebra.coordinates.deformed.{label}"), deformed, expected.clone()));
        let shifted = format(&symplectic::standard_bracket(&bopp_shift(&f), &bopp_shift(&g)));
        out.push(CheckEntry::symbolic(format!("algebra.coordinates.bopp.{label}"), shifted, expected));
    }
    out
}

/// Exact group and cocycle identities.
pub fn group_suite(config: &SuiteConfig) -> Vec<CheckEntry> {
    let seed = config.seed;
    let mut checks = Vec::new();
    let elem = random::algebra_element::<SuiteRng>;
    let cocycle = |e1: &AlgebraElement, e2: &AlgebraElement| extract_cocycle(e1, e2).expect("constant bracket");

    let mut rng = random::stream(seed, "associativity");
    let fails = count_failures(
        &mut rng,
        ASSOCIATIVITY_CASES,
        |r| (random::group_element(r), random::group_element(r), random::group_element(r)),
        |(g1, g2, g3)| g1.multiply(g2).multiply(g3) == g1.multiply(&g2.multiply(g3)),
    );
    checks.push(CheckEntry::exact("group.associativity", ASSOCIATIVITY_CASES, fails));

    let mut rng = random::stream(seed, "inverse");
    let fails = count_failures(&mut rng, GROUP_CASES, random::group_element, |g| {
        g.multiply(&g.inverse()) == GroupElement::identity() && g.inverse().multiply(g) == GroupElement::identity()
    });
    checks.push(CheckEntry::exact("group.inverse", GROUP_CASES, fails));

    let mut rng = random::stream(seed, "cocycle_antisymmetry");
    let fails = count_failures(&mut rng, GROUP_CASES, |r| (elem(r), elem(r)), |(e1, e2)| {
        let a = cocycle(e1, e2);
        let b = cocycle(e2, e1);
        a.z1 == -b.z1 && a.z2 == -b.z2
    });
    checks.push(CheckEntry::exact("group.cocycle_antisymmetry", GROUP_CASES, fails));

    let mut rng = random::stream(seed, "cocycle_bilinearity");
    let fails = count_failures(
        &mut rng,
        GROUP_CASES,
        |r| (elem(r), elem(r), elem(r), random::rational_in(r)),
        |(e1, e2, e3, k)| {
            let sum = cocycle(&(e1 + e2), e3);
            let split = add(&cocycle(e1, e3), &cocycle(e2, e3));
            let scaled = cocycle(&e1.scale(k), e3);
            let base = cocycle(e1, e3);
            sum == split && scaled.z1 == &base.z1 * k && scaled.z2 == &base.z2 * k
        },
    );
    checks.push(CheckEntry::exact("group.cocycle_bilinearity", GROUP_CASES, fails));

    let mut rng = random::stream(seed, "defect");
    let fails = count_failures(&mut rng, GROUP_CASES, |r| (elem(r), elem(r)), |(e1, e2)| {
        homomorphism_defect(e1, e2, BracketMode::Extended).is_zero()
    });
    checks.push(CheckEntry::exact("group.defect_extended_zero", GROUP_CASES, fails));

    let mut rng = random::stream(seed, "abelian_defect");
    let fails = count_failures(&mut rng, GROUP_CASES, |r| (elem(r), elem(r)), |(e1, e2)| {
        homomorphism_defect(e1, e2, BracketMode::Abelian) == cocycle(e1, e2).to_observable()
    });
    checks.push(CheckEntry::exact("group.defect_abelian_equals_cocycle", GROUP_CASES, fails));

    let mut rng = random::stream(seed, "commutator");
    let fails = count_failures(&mut rng, GROUP_CASES, |r| (elem(r), elem(r)), |(e1, e2)| {
        let z = cocycle(e1, e2);
        let k = GroupElement::exp(e1).commutator(&GroupElement::exp(e2));
        let zero = [Rational::zero(), Rational::zero()];
        k == GroupElement::new(zero.clone(), zero, z.z1, z.z2)
    });
    checks.push(CheckEntry::exact("group.commutator_matches_cocycle", GROUP_CASES, fails));

    let mut rng = random::stream(seed, "two_routes");
    let fails = count_failures(&mut rng, GROUP_CASES, |r| (elem(r), elem(r)), |(e1, e2)| {
        extract_cocycle_noncommutative(e1, e2).is_ok_and(|z| z == cocycle(e1, e2))
    });
    checks.push(CheckEntry::exact("group.cocycle_two_routes", GROUP_CASES, fails));

    let mut rng = random::stream(seed, "literal");
    let two = rational(2, 1);
    let fails = count_failures(&mut rng, GROUP_CASES, |r| (elem(r), elem(r)), |(e1, e2)| {
        let lit = literal_obstructions(e1, e2);
        let z = cocycle(e1, e2);
        lit.z1 == z.z1 && lit.z2 == &z.z2 * &two
    });
    checks.push(CheckEntry::exact("group.literal_double_sum_is_twice_z2", GROUP_CASES, fails));

    let pure_b = |b1: i64, b2: i64| {
        AlgebraElement::new(Default::default(), [rational(b1, 1), rational(b2, 1)], Rational::zero(), Rational::zero())
    };
    let pure_a = AlgebraElement::new([Rational::one(), Rational::zero()], Default::default(), Rational::zero(), Rational::zero());
    let z = cocycle(&pure_a, &pure_b(1, 0));
    checks.push(CheckEntry::symbolic(
        "group.cocycle.pure_a_pure_b",
        format!("z1={}, z2={}", z.z1, z.z2),
        "z1=-1, z2=0".into(),
    ));
    let z = cocycle(&pure_b(1, 0), &pure_b(0, 1));
    let lit = literal_obstructions(&pure_b(1, 0), &pure_b(0, 1));
    checks.push(
        CheckEntry::symbolic("group.cocycle.pure_b_pair", format!("z1={}, z2={}", z.z1, z.z2), "z1=0, z2=1".into())
            .with("literal_z2", lit.z2.to_string()),
    );
    checks
}

fn add(a: &Cocycle, b: &Cocycle) -> Cocycle {
    Cocycle {
        z1: &a.z1 + &b.z1,
        z2: &a.z2 + &b.z2,
    }
}

/// Grid checks at the configured parameters, followed by the same checks
/// at `θ = 0` and the grid-convergence comparison.
pub fn representation_suite(config: &SuiteConfig) -> Result<Vec<CheckEntry>, RepError> {
    let spec = config.grid()?;
    let base = gaussian(spec, [0.0, 0.0], [0.0, 0.0], 1.0)?;
    let mut checks = representation_checks(config, &base, "rep.")?;

    if config.theta != 0.0 {
        let flat = base.reparameterize(0.0, config.hbar)?;
        let flat_config = SuiteConfig { theta: 0.0, ..*config };
        checks.extend(representation_checks(&flat_config, &flat, "rep.theta0.")?);
    }
    checks.extend(convergence_checks(config)?);
    Ok(checks)
}

/// Representation checks on a caller-supplied state.
pub fn representation_checks(config: &SuiteConfig, psi: &Wavefunction, prefix: &str) -> Result<Vec<CheckEntry>, RepError> {
    let spec = *psi.spec();
    let flat = spec.theta == 0.0;
    let tol = |default: f64| config.tol(if flat { default.min(tolerance::FLAT) } else { default });
    let mut rng = random::stream(config.seed, "representation");
    let mut out = Vec::new();
    let mut push = |e: CheckEntry| out.push(e.prefixed(prefix));

    // Unitarity on random Gaussians with random parameters.
    for k in 0..RANDOM_STATES {
        let q0 = random::vector_in_disc(&mut rng, 2.0);
        let k0 = random::vector_in_disc(&mut rng, 1.0);
        let state = gaussian(spec, q0, k0, 1.0)?;
        let a = random::vector_in_disc(&mut rng, 1.0);
        let b = random::vector_in_disc(&mut rng, 1.0);
        let c = random::vector_in_disc(&mut rng, 1.0);
        let mut params = BTreeMap::from([("state".to_string(), k as f64)]);
        params.extend([("a1", a[0]), ("a2", a[1]), ("b1", b[0]), ("b2", b[1]), ("c", c[0]), ("d", c[1])].map(|(k, v)| (k.to_string(), v)));
        for (name, image) in [
            ("unitarity_U", apply_U(a, &state)),
            ("unitarity_V", apply_V(b, &state)),
            ("unitarity_W", apply_W(c[0], c[1], &state)),
        ] {
            push(CheckEntry::from_operator(&unitarity_check(name, params.clone(), &image, &state, tol(tolerance::UNITARITY))?));
        }
    }

    // U(a) moves a Gaussian rigidly.
    let a = [0.75, -0.5];
    let origin = gaussian(spec, [0.0, 0.0], [0.0, 0.0], 1.0)?;
    let target = gaussian(spec, a, [0.0, 0.0], 1.0)?;
    let rel = apply_U(a, &origin).sub(&target).norm() / origin.norm();
    push(CheckEntry::numeric("U_translates_gaussian", rel, 0.0, rel, tol(tolerance::TRANSLATION)).with("a1", a[0]).with("a2", a[1]));

    // U(a)U(a') = U(a + a').
    for _ in 0..4 {
        let a = random::vector_in_disc(&mut rng, 1.0);
        let a2 = random::vector_in_disc(&mut rng, 1.0);
        let lhs = apply_U(a, &apply_U(a2, psi));
        let rhs = apply_U([a[0] + a2[0], a[1] + a2[1]], psi);
        let err = lhs.sub(&rhs).max_abs();
        push(
            CheckEntry::numeric("U_composition", err, 0.0, err, tol(tolerance::COMPOSITION))
                .with("a1", a[0])
                .with("a2", a[1])
                .with("a_prime1", a2[0])
                .with("a_prime2", a2[1]),
        );
    }

    // W commutes with U and V as a scalar.
    let w_u = apply_W(0.3, -0.7, &apply_U(a, psi)).sub(&apply_U(a, &apply_W(0.3, -0.7, psi))).max_abs();
    push(CheckEntry::numeric("W_commutes_U", w_u, 0.0, w_u, tol(tolerance::SCALAR_COMMUTE)));
    let b = [1.0, -0.5];
    let w_v = apply_W(0.3, -0.7, &apply_V(b, psi)).sub(&apply_V(b, &apply_W(0.3, -0.7, psi))).max_abs();
    push(CheckEntry::numeric("W_commutes_V", w_v, 0.0, w_v, tol(tolerance::SCALAR_COMMUTE)));

    // Weyl relations: the fixed examples, then random parameters.
    let mut weyl_sets = vec![WeylParams {
        a: [0.5, 0.0],
        a_prime: [0.0, 1.0],
        b: [1.0, 0.0],
        b_prime: [0.0, 1.0],
        c: 0.3,
        d: -0.7,
    }];
    for _ in 0..4 {
        let c = random::vector_in_disc(&mut rng, 1.0);
        weyl_sets.push(WeylParams {
            a: random::vector_in_disc(&mut rng, 1.0),
            a_prime: random::vector_in_disc(&mut rng, 1.0),
            b: random::vector_in_disc(&mut rng, 1.0),
            b_prime: random::vector_in_disc(&mut rng, 1.0),
            c: c[0],
            d: c[1],
        });
    }
    for params in weyl_sets {
        for r in weyl_check(params, psi, tol(tolerance::PHASE))? {
            let mut entry = CheckEntry::from_operator(&r);
            if r.name == "weyl_UU" {
                let residual = r.relative_l2_error.max(r.phase_error());
                entry.error = residual;
                entry.tol = tol(tolerance::UU_RESIDUAL);
                entry.pass = residual <= entry.tol;
            }
            push(entry);
        }
    }

    // Canonical commutators.
    let kinds = [
        (CommutatorKind::PositionPosition, tolerance::COMMUTATOR),
        (CommutatorKind::MomentumMomentum, tolerance::MOMENTUM_COMMUTATOR),
    ]
    .into_iter()
    .chain(Axis::BOTH.into_iter().flat_map(|i| {
        Axis::BOTH
            .into_iter()
            .map(move |j| (CommutatorKind::PositionMomentum(i, j), tolerance::COMMUTATOR))
    }));
    for (kind, default) in kinds {
        push(CheckEntry::from_operator(&commutator_check(kind, psi, tol(default))?));
    }

    // Quantized generators reproduce the cocycle.
    let mut qrng = random::stream(config.seed, "quantize");
    for _ in 0..QUANTIZE_CASES {
        let e1 = random::bounded_algebra_element(&mut qrng, 1.0);
        let e2 = random::bounded_algebra_element(&mut qrng, 1.0);
        push(CheckEntry::from_operator(&quantized_commutator_check(&e1, &e2, psi, tol(tolerance::QUANTIZED))?));
    }
    Ok(out)
}

/// Commutator errors at `N = 128` and `N = 256` on the configured box.
fn convergence_checks(config: &SuiteConfig) -> Result<Vec<CheckEntry>, RepError> {
    let states = [128, 256].map(|n| {
        GridSpec::new(n, config.box_l, config.theta, config.hbar).and_then(|s| gaussian(s, [0.0, 0.0], [0.0, 0.0], 1.0))
    });
    let [coarse, fine] = states;
    let (coarse, fine) = (coarse?, fine?);
    let kinds = [
        CommutatorKind::PositionPosition,
        CommutatorKind::MomentumMomentum,
        CommutatorKind::PositionMomentum(Axis::Q1, Axis::Q1),
        CommutatorKind::PositionMomentum(Axis::Q2, Axis::Q2),
    ];
    let mut out = Vec::new();
    for kind in kinds {
        let e128 = commutator_check(kind, &coarse, f64::INFINITY)?.error;
        let e256 = commutator_check(kind, &fine, f64::INFINITY)?.error;
        let increase = (e256 - e128).max(0.0);
        out.push(
            CheckEntry::numeric(
                format!("rep.convergence.commutator_{}", kind.label()),
                e256,
                e128,
                increase,
                config.tol(CONVERGENCE_FLOOR),
            )
            .with("error_n128", e128)
            .with("error_n256", e256),
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_brackets_pass() {
        for c in coordinate_brackets() {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn group_suite_passes() {
        let checks = group_suite(&SuiteConfig::default());
        for c in &checks {
            assert!(c.pass, "{c:?}");
        }
        let pure_b = checks.iter().find(|c| c.name == "group.cocycle.pure_b_pair").unwrap();
        assert_eq!(pure_b.params["literal_z2"], json!("2"));
    }

    #[test]
    fn text_and_json_agree_on_numbers() {
        let entry = CheckEntry::numeric("x", 0.1 + 0.2, 0.3, 5.551115123125783e-17, 1e-6);
        let report = SuiteReport::new(SuiteConfig::default(), vec![entry]);
        let text = report.to_text();
        assert!(text.contains("measured=0.30000000000000004"));
        assert!(report.to_json().contains("0.30000000000000004"));
        assert!(report.pass);
    }
}
