//! C ABI for `bohr-core`.
//!
//! Every fallible function returns a [`BohrStatus`] and writes its result
//! through an out-pointer. On failure a description is kept per thread and can
//! be read with [`bohr_last_error_message`]. Handles are created by `*_new`
//! functions and released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bohr_core::extremal::{
    boundary_points, mobius_extremal, mobius_extremal_coefficients, ExtremalParams,
};
use bohr_core::functionals::{refined_functional, LambdaWeight};
use bohr_core::radii::{self, CatalogCase, CatalogParams, Method, RadiusResult};
use bohr_core::series::{majorant, CoefficientStream};
use bohr_core::specfun::{self, HypergeomParams};
use bohr_core::weights::WeightFamily;
use bohr_core::BohrError;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrStatus {
    Ok = 0,
    /// Argument outside the domain of the operation.
    Domain = 1,
    /// Invalid parameter combination.
    Parameter = 2,
    /// Radius at or beyond the convergence boundary.
    Divergence = 3,
    /// Accuracy not reached within the term cap.
    Truncated = 4,
    /// Möbius map with a zero constant denominator.
    Singular = 5,
    /// No sign change of the gap function.
    NoRoot = 6,
    /// A theorem hypothesis does not hold.
    Hypothesis = 7,
    Unsupported = 8,
    UnknownCase = 9,
    NullPointer = 10,
    /// A Rust panic was caught at the boundary.
    Panic = 11,
}

impl From<&BohrError> for BohrStatus {
    fn from(e: &BohrError) -> Self {
        match e {
            BohrError::Domain { .. } => BohrStatus::Domain,
            BohrError::Parameter(_) => BohrStatus::Parameter,
            BohrError::Divergence { .. } => BohrStatus::Divergence,
            BohrError::Truncated { .. } => BohrStatus::Truncated,
            BohrError::Singular => BohrStatus::Singular,
            BohrError::NoRoot { .. } => BohrStatus::NoRoot,
            BohrError::Hypothesis(_) => BohrStatus::Hypothesis,
            BohrError::Unsupported(_) => BohrStatus::Unsupported,
            BohrError::UnknownCase(_) => BohrStatus::UnknownCase,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(BohrStatus);

impl From<BohrError> for Failure {
    fn from(e: BohrError) -> Self {
        set_last_error(&e.to_string());
        Failure((&e).into())
    }
}

fn null_pointer(what: &str) -> Failure {
    set_last_error(&format!("{what} is null"));
    Failure(BohrStatus::NullPointer)
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BohrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            BohrStatus::Ok
        }
        Ok(Err(Failure(status))) => status,
        Err(_) => {
            set_last_error("panic inside bohr-core");
            BohrStatus::Panic
        }
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null_pointer("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null_pointer(what))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn bohr_status_message(status: BohrStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        BohrStatus::Ok => b"ok\0",
        BohrStatus::Domain => b"argument outside the domain\0",
        BohrStatus::Parameter => b"invalid parameter\0",
        BohrStatus::Divergence => b"series diverges at this radius\0",
        BohrStatus::Truncated => b"series truncated before reaching the tolerance\0",
        BohrStatus::Singular => b"singular Mobius map\0",
        BohrStatus::NoRoot => b"no root found\0",
        BohrStatus::Hypothesis => b"hypothesis violated\0",
        BohrStatus::Unsupported => b"unsupported input\0",
        BohrStatus::UnknownCase => b"unknown catalog case\0",
        BohrStatus::NullPointer => b"null pointer\0",
        BohrStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Message for the last failed call on this thread; empty after a success.
///
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn bohr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Built-in weight families.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrWeightKind {
    Power = 0,
    Even = 1,
    OddWithUnitHead = 2,
    /// Uses `start`.
    ShiftedLinear = 3,
    /// Uses `alpha` and `start`.
    PowerAlpha = 4,
    /// Uses `a`, `b`, `c`.
    HypergeomCoeff = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BohrWeightSpec {
    pub kind: BohrWeightKind,
    pub alpha: f64,
    pub start: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Opaque weight family.
pub struct BohrWeightFamily(WeightFamily);

/// Opaque coefficient stream.
pub struct BohrStream(CoefficientStream);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BohrTailSum {
    pub value: f64,
    pub truncation_order: usize,
    pub bound_on_remainder: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrMethod {
    ClosedForm = 0,
    Bisection = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BohrRadiusResult {
    pub value: f64,
    pub method: BohrMethod,
    pub residual: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub iterations: usize,
}

impl From<RadiusResult> for BohrRadiusResult {
    fn from(r: RadiusResult) -> Self {
        Self {
            value: r.value,
            method: match r.method {
                Method::ClosedForm => BohrMethod::ClosedForm,
                Method::Bisection => BohrMethod::Bisection,
            },
            residual: r.residual,
            bracket_lo: r.bracket.0,
            bracket_hi: r.bracket.1,
            iterations: r.iterations,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BohrCatalogCase {
    TheoremB = 0,
    App1 = 1,
    App2 = 2,
    App3 = 3,
    App4 = 4,
    App5Alpha1 = 5,
    App5Alpha2Printed = 6,
    Cor41 = 7,
    Cor42 = 8,
    Remark31 = 9,
    QuasiSubordination = 10,
}

impl From<BohrCatalogCase> for CatalogCase {
    fn from(c: BohrCatalogCase) -> Self {
        match c {
            BohrCatalogCase::TheoremB => CatalogCase::TheoremB,
            BohrCatalogCase::App1 => CatalogCase::App1,
            BohrCatalogCase::App2 => CatalogCase::App2,
            BohrCatalogCase::App3 => CatalogCase::App3,
            BohrCatalogCase::App4 => CatalogCase::App4,
            BohrCatalogCase::App5Alpha1 => CatalogCase::App5Alpha1,
            BohrCatalogCase::App5Alpha2Printed => CatalogCase::App5Alpha2Printed,
            BohrCatalogCase::Cor41 => CatalogCase::Cor41,
            BohrCatalogCase::Cor42 => CatalogCase::Cor42,
            BohrCatalogCase::Remark31 => CatalogCase::Remark31,
            BohrCatalogCase::QuasiSubordination => CatalogCase::QuasiSubordination,
        }
    }
}

/// Parameters for [`bohr_closed_form_radius`]; each case reads what it needs.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct BohrCatalogParams {
    pub gamma: f64,
    pub p: f64,
    pub k: f64,
    pub big_k: f64,
    pub y: f64,
}

/// # Safety
/// `spec` must point to a valid `BohrWeightSpec`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_weight_family_new(
    spec: *const BohrWeightSpec,
    out: *mut *mut BohrWeightFamily,
) -> BohrStatus {
    guard(|| {
        let s = deref(spec, "spec")?;
        let family = match s.kind {
            BohrWeightKind::Power => WeightFamily::Power,
            BohrWeightKind::Even => WeightFamily::Even,
            BohrWeightKind::OddWithUnitHead => WeightFamily::OddWithUnitHead,
            BohrWeightKind::ShiftedLinear => WeightFamily::shifted_linear(s.start),
            BohrWeightKind::PowerAlpha => WeightFamily::power_alpha(s.alpha, s.start)?,
            BohrWeightKind::HypergeomCoeff => WeightFamily::hypergeom(s.a, s.b, s.c)?,
        };
        write_out(out, Box::into_raw(Box::new(BohrWeightFamily(family))))
    })
}

/// # Safety
/// `family` must come from `bohr_weight_family_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bohr_weight_family_free(family: *mut BohrWeightFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// `φ_n(r)`.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_weight_at(
    family: *const BohrWeightFamily,
    n: usize,
    r: f64,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        let f = deref(family, "family")?;
        write_out(out, f.0.weight_at(n, r)?)
    })
}

/// `Φ_n(r)` to within `tol`.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_tail_sum(
    family: *const BohrWeightFamily,
    n: usize,
    r: f64,
    tol: f64,
    out: *mut BohrTailSum,
) -> BohrStatus {
    guard(|| {
        let f = deref(family, "family")?;
        let t = f.0.tail_sum(n, r, tol)?;
        write_out(
            out,
            BohrTailSum {
                value: t.value,
                truncation_order: t.truncation_order,
                bound_on_remainder: t.bound_on_remainder,
            },
        )
    })
}

/// `scale Φ_1(r) - (1 + γ) φ_0(r)`.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_condition_gap(
    family: *const BohrWeightFamily,
    p: f64,
    gamma: f64,
    scale: f64,
    r: f64,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        let f = deref(family, "family")?;
        write_out(out, f.0.condition_gap(p, gamma, scale, r)?)
    })
}

/// Minimal root of `lhs_scale Φ_1(r) = rhs_scale φ_0(r)`.
///
/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_solve_radius(
    family: *const BohrWeightFamily,
    lhs_scale: f64,
    rhs_scale: f64,
    tol: f64,
    out: *mut BohrRadiusResult,
) -> BohrStatus {
    guard(|| {
        let f = deref(family, "family")?;
        write_out(
            out,
            radii::solve_radius(&f.0, lhs_scale, rhs_scale, tol)?.into(),
        )
    })
}

/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_analytic_radius(
    family: *const BohrWeightFamily,
    p: f64,
    gamma: f64,
    tol: f64,
    out: *mut BohrRadiusResult,
) -> BohrStatus {
    guard(|| {
        let f = deref(family, "family")?;
        write_out(out, radii::analytic_radius(&f.0, p, gamma, tol)?.into())
    })
}

/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_harmonic_radius(
    family: *const BohrWeightFamily,
    p: f64,
    gamma: f64,
    k: f64,
    tol: f64,
    out: *mut BohrRadiusResult,
) -> BohrStatus {
    guard(|| {
        let f = deref(family, "family")?;
        write_out(out, radii::harmonic_radius(&f.0, p, gamma, k, tol)?.into())
    })
}

/// # Safety
/// `family` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_subordination_radius(
    family: *const BohrWeightFamily,
    k: f64,
    tol: f64,
    out: *mut BohrRadiusResult,
) -> BohrStatus {
    guard(|| {
        let f = deref(family, "family")?;
        write_out(out, radii::subordination_radius(&f.0, k, tol)?.into())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_hypergeom_radius(
    a: f64,
    b: f64,
    c: f64,
    p: f64,
    gamma: f64,
    tol: f64,
    out: *mut BohrRadiusResult,
) -> BohrStatus {
    guard(|| write_out(out, radii::hypergeom_radius(a, b, c, p, gamma, tol)?.into()))
}

/// # Safety
/// `params` must point to valid parameters; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_closed_form_radius(
    case_id: BohrCatalogCase,
    params: *const BohrCatalogParams,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        let p = deref(params, "params")?;
        let params = CatalogParams {
            gamma: p.gamma,
            p: p.p,
            k: p.k,
            big_k: p.big_k,
            y: p.y,
        };
        write_out(out, radii::closed_form_radius(case_id.into(), &params)?)
    })
}

/// Rising factorial `(x)_n`.
#[no_mangle]
pub extern "C" fn bohr_pochhammer(x: f64, n: usize) -> f64 {
    specfun::pochhammer(x, n)
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_gauss_2f1(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        let params = HypergeomParams::new(a, b, c)?;
        write_out(out, specfun::gauss_2f1(&params, z)?)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_lerch_phi(z: f64, s: f64, a: f64, out: *mut f64) -> BohrStatus {
    guard(|| write_out(out, specfun::lerch_phi(z, s, a)?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_polylog(s: f64, z: f64, out: *mut f64) -> BohrStatus {
    guard(|| write_out(out, specfun::polylog(s, z)?))
}

/// Finite stream with moduli of `coefficients[0..len]`.
///
/// # Safety
/// `coefficients` must point to `len` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_stream_from_coefficients(
    coefficients: *const f64,
    len: usize,
    out: *mut *mut BohrStream,
) -> BohrStatus {
    guard(|| {
        let values = if len == 0 {
            Vec::new()
        } else if coefficients.is_null() {
            return Err(null_pointer("coefficients"));
        } else {
            std::slice::from_raw_parts(coefficients, len).to_vec()
        };
        let stream = if values.is_empty() {
            CoefficientStream::zeros()
        } else {
            CoefficientStream::from_coefficients(values)
        };
        write_out(out, Box::into_raw(Box::new(BohrStream(stream))))
    })
}

/// Stream of the extremal Möbius map `h_a` on Ω_γ.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_stream_mobius_extremal(
    a: f64,
    gamma: f64,
    out: *mut *mut BohrStream,
) -> BohrStatus {
    guard(|| {
        let params = ExtremalParams::analytic(a, gamma)?;
        write_out(
            out,
            Box::into_raw(Box::new(BohrStream(mobius_extremal(&params)))),
        )
    })
}

/// # Safety
/// `stream` must come from a `bohr_stream_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bohr_stream_free(stream: *mut BohrStream) {
    if !stream.is_null() {
        drop(Box::from_raw(stream));
    }
}

/// `|a_n|`.
///
/// # Safety
/// `stream` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_stream_coefficient(
    stream: *const BohrStream,
    n: usize,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        let s = deref(stream, "stream")?;
        write_out(out, s.0.coefficient(n))
    })
}

/// `Σ |a_n| r^n` to within `tol`.
///
/// # Safety
/// `stream` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_majorant(
    stream: *const BohrStream,
    r: f64,
    tol: f64,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        let s = deref(stream, "stream")?;
        write_out(out, majorant(&s.0, r, tol)?)
    })
}

/// Refined functional with the constant weight `Λ ≡ lambda`.
///
/// # Safety
/// `stream` and `family` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_refined_functional(
    stream: *const BohrStream,
    family: *const BohrWeightFamily,
    p: f64,
    gamma: f64,
    lambda: f64,
    r: f64,
    tol: f64,
    out: *mut f64,
) -> BohrStatus {
    guard(|| {
        let s = deref(stream, "stream")?;
        let f = deref(family, "family")?;
        let lambda = LambdaWeight::constant(lambda)?;
        write_out(
            out,
            refined_functional(&s.0, &f.0, p, gamma, &lambda, r, tol)?,
        )
    })
}

/// Writes `|a_0|, ..., |a_{len-1}|` of `h_a` into `out`.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bohr_mobius_extremal_coefficients(
    a: f64,
    gamma: f64,
    out: *mut f64,
    len: usize,
) -> BohrStatus {
    guard(|| {
        let params = ExtremalParams::analytic(a, gamma)?;
        if len == 0 {
            return Ok(());
        }
        if out.is_null() {
            return Err(null_pointer("output buffer"));
        }
        let values = mobius_extremal_coefficients(&params, len - 1);
        ptr::copy_nonoverlapping(values.as_ptr(), out, len);
        Ok(())
    })
}

/// Writes `count` points of `∂Ω_γ` into `xs` and `ys`.
///
/// # Safety
/// `xs` and `ys` must each point to `count` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn bohr_boundary_points(
    gamma: f64,
    count: usize,
    xs: *mut f64,
    ys: *mut f64,
) -> BohrStatus {
    guard(|| {
        let points = boundary_points(gamma, count)?;
        if xs.is_null() || ys.is_null() {
            return Err(null_pointer("output buffer"));
        }
        for (i, (x, y)) in points.into_iter().enumerate() {
            xs.add(i).write(x);
            ys.add(i).write(y);
        }
        Ok(())
    })
}
