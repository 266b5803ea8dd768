//! C ABI over `ncplane`.
//!
//! Every fallible function returns an [`NcStatus`]. After a failure,
//! [`nc_last_error`] on the same thread describes it.
//! Handles returned through out-pointers are owned by the caller and must
//! be released with the matching `*_free` function. Strings returned by
//! the library are released with [`nc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ncplane::group::{extract_cocycle, AlgebraElement, GroupElement};
use ncplane::hilbert::{self, Axis, CommutatorKind, GridSpec, Wavefunction};
use ncplane::parser;
use ncplane::suite::{self, SuiteConfig};
use ncplane::symplectic::{self, Observable, PhasePoint, Rational};
use num_traits::ToPrimitive;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Numeric = 5,
    Overflow = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Exact rational `num / den` with `den > 0`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NcRational {
    pub num: i64,
    pub den: i64,
}

/// Canonical commutator selector for [`nc_commutator_error`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NcCommutator {
    Q1Q2 = 0,
    P1P2 = 1,
    Q1P1 = 2,
    Q1P2 = 3,
    Q2P1 = 4,
    Q2P2 = 5,
}

/// Opaque polynomial observable.
pub struct NcObservable(Observable);

/// Opaque sampled wavefunction.
pub struct NcWavefunction(Wavefunction);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure {
    status: NcStatus,
    message: String,
}

impl Failure {
    fn new(status: NcStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn null(what: &str) -> Self {
        Self::new(NcStatus::NullPointer, format!("{what} is null"))
    }
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            NcStatus::Ok
        }
        Ok(Err(failure)) => {
            set_error(&failure.message);
            failure.status
        }
        Err(_) => {
            set_error("internal panic");
            NcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(what))
}

unsafe fn array<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn string<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(NcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

fn to_rational(r: NcRational) -> Result<Rational, Failure> {
    if r.den == 0 {
        return Err(Failure::new(NcStatus::InvalidArgument, "zero denominator"));
    }
    Ok(Rational::new(r.num.into(), r.den.into()))
}

fn from_rational(r: &Rational) -> Result<NcRational, Failure> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(num), Some(den)) => Ok(NcRational { num, den }),
        _ => Err(Failure::new(NcStatus::Overflow, format!("{r} does not fit in 64 bits"))),
    }
}

unsafe fn element(p: *const NcRational, what: &str) -> Result<AlgebraElement, Failure> {
    let v = array(p, 6, what)?;
    let mut out: [Rational; 6] = Default::default();
    for (slot, r) in out.iter_mut().zip(v) {
        *slot = to_rational(*r)?;
    }
    Ok(AlgebraElement::from_array(out))
}

unsafe fn write_group(out: *mut NcRational, g: &GroupElement<Rational>) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::null("out"));
    }
    let values = [&g.a[0], &g.a[1], &g.b[0], &g.b[1], &g.c, &g.d];
    for (k, v) in values.iter().enumerate() {
        out.add(k).write(from_rational(v)?);
    }
    Ok(())
}

fn numeric<E: std::fmt::Display>(e: E) -> Failure {
    Failure::new(NcStatus::Numeric, e.to_string())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn axis(index: u32) -> Result<Axis, Failure> {
    match index {
        1 => Ok(Axis::Q1),
        2 => Ok(Axis::Q2),
        _ => Err(Failure::new(NcStatus::InvalidArgument, format!("axis {index} is not 1 or 2"))),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn nc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Description of the last call's failure on this thread; empty after a
/// successful call. The pointer stays valid until the next call into the
/// library.
#[no_mangle]
pub extern "C" fn nc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn nc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `src`. On a parse error, `error_offset` (if non-null) receives the
/// byte offset of the offending token.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_observable_parse(
    src: *const c_char,
    out: *mut *mut NcObservable,
    error_offset: *mut usize,
) -> NcStatus {
    guard(|| {
        let text = string(src, "src")?;
        match parser::parse(text) {
            Ok(f) => write(out, boxed(NcObservable(f)), "out"),
            Err(e) => {
                if !error_offset.is_null() {
                    error_offset.write(e.offset);
                }
                Err(Failure::new(NcStatus::Parse, e.to_string()))
            }
        }
    })
}

/// # Safety
/// `f` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nc_observable_free(f: *mut NcObservable) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Canonical text of `f`; release with [`nc_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_observable_format(f: *const NcObservable, out: *mut *mut c_char) -> NcStatus {
    guard(|| {
        let f = deref(f, "f")?;
        write(out, owned_string(parser::format(&f.0)), "out")
    })
}

/// Evaluates `f` at `point = {q1, q2, p1, p2}`.
///
/// # Safety
/// `point` must hold four doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_observable_evaluate(
    f: *const NcObservable,
    point: *const f64,
    theta: f64,
    hbar: f64,
    out: *mut f64,
) -> NcStatus {
    guard(|| {
        let f = deref(f, "f")?;
        let p = array(point, 4, "point")?;
        let x = PhasePoint::new(p[0], p[1], p[2], p[3]);
        write(out, symplectic::evaluate(&f.0, &x, theta, hbar), "out")
    })
}

unsafe fn binary(
    f: *const NcObservable,
    g: *const NcObservable,
    out: *mut *mut NcObservable,
    op: fn(&Observable, &Observable) -> Observable,
) -> NcStatus {
    guard(|| {
        let f = deref(f, "f")?;
        let g = deref(g, "g")?;
        write(out, boxed(NcObservable(op(&f.0, &g.0))), "out")
    })
}

/// Deformed bracket `{f, g}` with `{q1, q2} = θ`.
///
/// # Safety
/// `f`, `g` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_poisson_bracket(
    f: *const NcObservable,
    g: *const NcObservable,
    out: *mut *mut NcObservable,
) -> NcStatus {
    binary(f, g, out, symplectic::poisson_bracket)
}

/// Undeformed bracket `{f, g}`.
///
/// # Safety
/// As [`nc_poisson_bracket`].
#[no_mangle]
pub unsafe extern "C" fn nc_standard_bracket(
    f: *const NcObservable,
    g: *const NcObservable,
    out: *mut *mut NcObservable,
) -> NcStatus {
    binary(f, g, out, symplectic::standard_bracket)
}

/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_bopp_shift(f: *const NcObservable, out: *mut *mut NcObservable) -> NcStatus {
    guard(|| {
        let f = deref(f, "f")?;
        write(out, boxed(NcObservable(symplectic::bopp_shift(&f.0))), "out")
    })
}

/// Components of the Hamiltonian vector field along `q1, q2, p1, p2`,
/// written to `out[0..4]`.
///
/// # Safety
/// `f` must be a live handle; `out` must have room for four handles.
#[no_mangle]
pub unsafe extern "C" fn nc_hamiltonian_vector_field(f: *const NcObservable, out: *mut *mut NcObservable) -> NcStatus {
    guard(|| {
        let f = deref(f, "f")?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let xi = symplectic::hamiltonian_vector_field(&f.0);
        for (k, c) in xi.components.into_iter().enumerate() {
            out.add(k).write(boxed(NcObservable(c)));
        }
        Ok(())
    })
}

/// Cocycle `(z1, z2)` of two algebra elements `{A1, A2, B1, B2, C, D}`.
///
/// # Safety
/// `e1`, `e2` must hold six rationals; `z1`, `z2` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_cocycle(
    e1: *const NcRational,
    e2: *const NcRational,
    z1: *mut NcRational,
    z2: *mut NcRational,
) -> NcStatus {
    guard(|| {
        let e1 = element(e1, "e1")?;
        let e2 = element(e2, "e2")?;
        let z = extract_cocycle(&e1, &e2).map_err(numeric)?;
        write(z1, from_rational(&z.z1)?, "z1")?;
        write(z2, from_rational(&z.z2)?, "z2")
    })
}

/// Group product of `{a1, a2, b1, b2, c, d}` coordinates.
///
/// # Safety
/// `g1`, `g2` must hold six rationals; `out` must have room for six.
#[no_mangle]
pub unsafe extern "C" fn nc_group_multiply(
    g1: *const NcRational,
    g2: *const NcRational,
    out: *mut NcRational,
) -> NcStatus {
    guard(|| {
        let g1 = GroupElement::exp(&element(g1, "g1")?);
        let g2 = GroupElement::exp(&element(g2, "g2")?);
        write_group(out, &g1.multiply(&g2))
    })
}

/// Group commutator `g1 g2 g1⁻¹ g2⁻¹`.
///
/// # Safety
/// As [`nc_group_multiply`].
#[no_mangle]
pub unsafe extern "C" fn nc_group_commutator(
    g1: *const NcRational,
    g2: *const NcRational,
    out: *mut NcRational,
) -> NcStatus {
    guard(|| {
        let g1 = GroupElement::exp(&element(g1, "g1")?);
        let g2 = GroupElement::exp(&element(g2, "g2")?);
        write_group(out, &g1.commutator(&g2))
    })
}

/// Normalized Gaussian on an `n × n` grid over `[-l, l)²`.
///
/// # Safety
/// `q0`, `k0` must hold two doubles each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_wavefunction_gaussian(
    n: usize,
    l: f64,
    theta: f64,
    hbar: f64,
    q0: *const f64,
    k0: *const f64,
    sigma: f64,
    out: *mut *mut NcWavefunction,
) -> NcStatus {
    guard(|| {
        let q0 = array(q0, 2, "q0")?;
        let k0 = array(k0, 2, "k0")?;
        let spec = GridSpec::new(n, l, theta, hbar).map_err(numeric)?;
        let psi = hilbert::gaussian(spec, [q0[0], q0[1]], [k0[0], k0[1]], sigma).map_err(numeric)?;
        write(out, boxed(NcWavefunction(psi)), "out")
    })
}

/// # Safety
/// `w` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nc_wavefunction_free(w: *mut NcWavefunction) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Number of amplitudes (`n²`), or 0 for a null handle.
///
/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nc_wavefunction_len(w: *const NcWavefunction) -> usize {
    w.as_ref().map_or(0, |w| w.0.amplitudes().len())
}

/// Copies amplitudes, row-major `[i1 * n + i2]`, into `re` and `im`.
///
/// # Safety
/// `re` and `im` must each have room for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nc_wavefunction_amplitudes(
    w: *const NcWavefunction,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> NcStatus {
    guard(|| {
        let w = deref(w, "w")?;
        let amps = w.0.amplitudes();
        if len < amps.len() {
            return Err(Failure::new(
                NcStatus::BufferTooSmall,
                format!("need {} entries, buffer holds {len}", amps.len()),
            ));
        }
        if re.is_null() || im.is_null() {
            return Err(Failure::null("re/im"));
        }
        for (k, z) in amps.iter().enumerate() {
            re.add(k).write(z.re);
            im.add(k).write(z.im);
        }
        Ok(())
    })
}

/// `⟨a, b⟩` on the shared grid.
///
/// # Safety
/// `a`, `b` must be live handles; `re`, `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nc_wavefunction_inner(
    a: *const NcWavefunction,
    b: *const NcWavefunction,
    re: *mut f64,
    im: *mut f64,
) -> NcStatus {
    guard(|| {
        let a = deref(a, "a")?;
        let b = deref(b, "b")?;
        if a.0.spec() != b.0.spec() {
            return Err(Failure::new(NcStatus::InvalidArgument, "wavefunctions live on different grids"));
        }
        let z = a.0.inner(&b.0);
        write(re, z.re, "re")?;
        write(im, z.im, "im")
    })
}

unsafe fn unary(
    w: *const NcWavefunction,
    out: *mut *mut NcWavefunction,
    op: impl FnOnce(&Wavefunction) -> Result<Wavefunction, Failure>,
) -> NcStatus {
    guard(|| {
        let w = deref(w, "w")?;
        let image = op(&w.0)?;
        write(out, boxed(NcWavefunction(image)), "out")
    })
}

/// `U(a)ψ = ψ(q - a)`.
///
/// # Safety
/// `w` must be a live handle, `a` must hold two doubles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_apply_u(w: *const NcWavefunction, a: *const f64, out: *mut *mut NcWavefunction) -> NcStatus {
    unary(w, out, |psi| {
        let a = array(a, 2, "a")?;
        Ok(hilbert::apply_U([a[0], a[1]], psi))
    })
}

/// `V(b)ψ = e^{ib·q} ψ(q - s(b))`.
///
/// # Safety
/// As [`nc_apply_u`].
#[no_mangle]
pub unsafe extern "C" fn nc_apply_v(w: *const NcWavefunction, b: *const f64, out: *mut *mut NcWavefunction) -> NcStatus {
    unary(w, out, |psi| {
        let b = array(b, 2, "b")?;
        Ok(hilbert::apply_V([b[0], b[1]], psi))
    })
}

/// `W(c, d)ψ = e^{-i(cħ + dθ)} ψ`.
///
/// # Safety
/// `w` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_apply_w(w: *const NcWavefunction, c: f64, d: f64, out: *mut *mut NcWavefunction) -> NcStatus {
    unary(w, out, |psi| Ok(hilbert::apply_W(c, d, psi)))
}

/// Noncommutative position operator along axis 1 or 2.
///
/// # Safety
/// `w` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_apply_position(w: *const NcWavefunction, axis_index: u32, out: *mut *mut NcWavefunction) -> NcStatus {
    unary(w, out, |psi| Ok(hilbert::apply_position(axis(axis_index)?, psi)))
}

/// Momentum operator `-iħ∂` along axis 1 or 2.
///
/// # Safety
/// `w` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_apply_momentum(w: *const NcWavefunction, axis_index: u32, out: *mut *mut NcWavefunction) -> NcStatus {
    unary(w, out, |psi| Ok(hilbert::apply_momentum(axis(axis_index)?, psi)))
}

/// Error of a canonical commutator on `w` against its predicted constant.
///
/// # Safety
/// `w` must be a live handle, `error` writable.
#[no_mangle]
pub unsafe extern "C" fn nc_commutator_error(w: *const NcWavefunction, kind: NcCommutator, error: *mut f64) -> NcStatus {
    guard(|| {
        let w = deref(w, "w")?;
        let kind = match kind {
            NcCommutator::Q1Q2 => CommutatorKind::PositionPosition,
            NcCommutator::P1P2 => CommutatorKind::MomentumMomentum,
            NcCommutator::Q1P1 => CommutatorKind::PositionMomentum(Axis::Q1, Axis::Q1),
            NcCommutator::Q1P2 => CommutatorKind::PositionMomentum(Axis::Q1, Axis::Q2),
            NcCommutator::Q2P1 => CommutatorKind::PositionMomentum(Axis::Q2, Axis::Q1),
            NcCommutator::Q2P2 => CommutatorKind::PositionMomentum(Axis::Q2, Axis::Q2),
        };
        let report = hilbert::commutator_check(kind, &w.0, f64::INFINITY).map_err(numeric)?;
        write(error, report.error, "error")
    })
}

/// Runs the full verification suite. `passed` receives the overall result;
/// if `report_json` is non-null it receives the JSON report, to be released
/// with [`nc_string_free`]. A failing check is not an error status.
///
/// # Safety
/// `passed` must be writable; `report_json` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn nc_verify_all(
    theta: f64,
    hbar: f64,
    grid_n: usize,
    box_l: f64,
    seed: u64,
    passed: *mut bool,
    report_json: *mut *mut c_char,
) -> NcStatus {
    guard(|| {
        let config = SuiteConfig {
            theta,
            hbar,
            grid_n,
            box_l,
            seed,
            ..SuiteConfig::default()
        };
        let report = suite::verify_all(&config).map_err(numeric)?;
        write(passed, report.pass, "passed")?;
        if !report_json.is_null() {
            report_json.write(owned_string(report.to_json()));
        }
        Ok(())
    })
}
