//! C interface to `semiarith`.
//!
//! Every fallible function returns an [`SaStatus`] and writes results through
//! out-pointers. On failure a message is kept per thread and can be read with
//! [`sa_last_error_message`]. Handles returned through out-pointers are owned
//! by the caller and must be released with the matching `*_free` function;
//! strings with [`sa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use semiarith::bounds::{degree_bound, systole_bound_pipeline, yamada_radius, BoundsInput};
use semiarith::family::{build_gamma, FamilyRecord};
use semiarith::field::{house, mahler_measure, IntPolynomial};
use semiarith::hyperbolic::{karcher_mean_detailed, solve_trirectangle, HPoint, MassDistribution};
use semiarith::Error;

/// Status codes. The nonzero values below `SA_NULL_POINTER` match the exit
/// codes of the command-line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaStatus {
    SaOk = 0,
    SaVerificationFailed = 1,
    SaInvalidInput = 2,
    SaDegenerateTraces = 3,
    SaIterationCap = 4,
    SaNullPointer = 5,
    SaBufferTooSmall = 6,
    SaPanic = 7,
}

/// Verified data of one family member.
pub struct SaFamilyRecord(FamilyRecord);

/// A weighted point set in the upper half-plane.
pub struct SaPoints(MassDistribution);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SaStatus {
    match e.exit_code() {
        1 => SaStatus::SaVerificationFailed,
        3 => SaStatus::SaDegenerateTraces,
        4 => SaStatus::SaIterationCap,
        _ => SaStatus::SaInvalidInput,
    }
}

fn fail(status: SaStatus, msg: impl Into<String>) -> SaStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), SaStatus>) -> SaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SaStatus::SaOk,
        Ok(Err(s)) => s,
        Err(_) => fail(SaStatus::SaPanic, "internal panic"),
    }
}

trait IntoStatus<T> {
    fn status(self) -> Result<T, SaStatus>;
}

impl<T> IntoStatus<T> for semiarith::Result<T> {
    fn status(self) -> Result<T, SaStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

fn nonnull<T>(p: *const T, name: &str) -> Result<(), SaStatus> {
    if p.is_null() {
        Err(fail(SaStatus::SaNullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[unsafe(no_mangle)]
pub extern "C" fn sa_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[unsafe(no_mangle)]
pub extern "C" fn sa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Builds and verifies the family member `n` (1..=30).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_family_build(n: u32, out: *mut *mut SaFamilyRecord) -> SaStatus {
    guard(|| {
        nonnull(out, "out")?;
        let rec = build_gamma(n).status()?;
        unsafe { *out = Box::into_raw(Box::new(SaFamilyRecord(rec))) };
        Ok(())
    })
}

/// # Safety
/// `rec` must be null or a handle from [`sa_family_build`] not yet freed.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_family_free(rec: *mut SaFamilyRecord) {
    if !rec.is_null() {
        drop(unsafe { Box::from_raw(rec) });
    }
}

/// Numeric fields of a family record. Any out-pointer may be null.
///
/// # Safety
/// `rec` must be a live handle; non-null out-pointers must be writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_family_values(
    rec: *const SaFamilyRecord,
    tau: *mut f64,
    omega: *mut f64,
    stretch_lb: *mut f64,
    coarea: *mut f64,
    arithmetic_dimension: *mut u32,
) -> SaStatus {
    guard(|| {
        nonnull(rec, "rec")?;
        let r = unsafe { &(*rec).0 };
        unsafe {
            if !tau.is_null() {
                *tau = r.tau_value;
            }
            if !omega.is_null() {
                *omega = r.omega;
            }
            if !stretch_lb.is_null() {
                *stretch_lb = r.stretch_lb;
            }
            if !coarea.is_null() {
                *coarea = r.coarea;
            }
            if !arithmetic_dimension.is_null() {
                *arithmetic_dimension = r.arithmetic_dimension as u32;
            }
        }
        Ok(())
    })
}

/// Coefficients of the minimal polynomial of `tau`, leading term first.
/// Writes the number of coefficients to `len`; fails with
/// `SaBufferTooSmall` if `capacity` is too small and with `SaInvalidInput`
/// if a coefficient does not fit in 64 bits.
///
/// # Safety
/// `rec` must be a live handle, `coeffs` writable for `capacity` values.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_family_tau_min_poly(
    rec: *const SaFamilyRecord,
    coeffs: *mut i64,
    capacity: usize,
    len: *mut usize,
) -> SaStatus {
    guard(|| {
        nonnull(rec, "rec")?;
        nonnull(len, "len")?;
        let p = unsafe { &(*rec).0.tau_min_poly };
        let c: Vec<i64> = p
            .coeffs_descending()
            .iter()
            .map(|c| {
                i64::try_from(c).map_err(|_| fail(SaStatus::SaInvalidInput, format!("coefficient {c} exceeds 64 bits")))
            })
            .collect::<Result<_, _>>()?;
        unsafe { *len = c.len() };
        if capacity < c.len() {
            return Err(fail(
                SaStatus::SaBufferTooSmall,
                format!("need {} coefficients", c.len()),
            ));
        }
        nonnull(coeffs, "coeffs")?;
        unsafe { ptr::copy_nonoverlapping(c.as_ptr(), coeffs, c.len()) };
        Ok(())
    })
}

/// The record as JSON; free the result with [`sa_string_free`].
///
/// # Safety
/// `rec` must be a live handle and `out` writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_family_to_json(rec: *const SaFamilyRecord, out: *mut *mut c_char) -> SaStatus {
    guard(|| {
        nonnull(rec, "rec")?;
        nonnull(out, "out")?;
        let text =
            serde_json::to_string(unsafe { &(*rec).0 }).map_err(|e| fail(SaStatus::SaInvalidInput, e.to_string()))?;
        unsafe { *out = into_c_string(text) };
        Ok(())
    })
}

unsafe fn read_str<'a>(s: *const c_char, name: &str) -> Result<&'a str, SaStatus> {
    nonnull(s, name)?;
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| fail(SaStatus::SaInvalidInput, format!("{name} is not UTF-8")))
}

/// Invariants of a trace file given as JSON text, returned as a JSON report.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_invariants_json(json: *const c_char, depth: usize, out: *mut *mut c_char) -> SaStatus {
    guard(|| {
        let text = unsafe { read_str(json, "json") }?;
        nonnull(out, "out")?;
        let report = semiarith::cli::invariants(text, depth, &"<ffi>".into()).status()?;
        unsafe { *out = into_c_string(report.to_json()) };
        Ok(())
    })
}

/// Creates a point set from `n` coordinates; `weights` may be null for
/// uniform weights.
///
/// # Safety
/// `xs`, `ys` and a non-null `weights` must be readable for `n` values.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_points_new(
    xs: *const f64,
    ys: *const f64,
    weights: *const f64,
    n: usize,
    out: *mut *mut SaPoints,
) -> SaStatus {
    guard(|| {
        nonnull(xs, "xs")?;
        nonnull(ys, "ys")?;
        nonnull(out, "out")?;
        let (xs, ys) = unsafe { (std::slice::from_raw_parts(xs, n), std::slice::from_raw_parts(ys, n)) };
        let pts = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| HPoint::new(x, y))
            .collect::<semiarith::Result<Vec<_>>>()
            .status()?;
        let w = if weights.is_null() {
            vec![1.0; n]
        } else {
            unsafe { std::slice::from_raw_parts(weights, n) }.to_vec()
        };
        let m = MassDistribution::new(pts, w).status()?;
        unsafe { *out = Box::into_raw(Box::new(SaPoints(m))) };
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from [`sa_points_new`] not yet freed.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_points_free(p: *mut SaPoints) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Center of mass to gradient norm below `tol`. `gradient_norm` may be null.
///
/// # Safety
/// `points` must be a live handle; out-pointers writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_karcher_mean(
    points: *const SaPoints,
    tol: f64,
    x: *mut f64,
    y: *mut f64,
    gradient_norm: *mut f64,
) -> SaStatus {
    guard(|| {
        nonnull(points, "points")?;
        nonnull(x, "x")?;
        nonnull(y, "y")?;
        let r = karcher_mean_detailed(unsafe { &(*points).0 }, tol).status()?;
        unsafe {
            *x = r.mean.x;
            *y = r.mean.y;
            if !gradient_norm.is_null() {
                *gradient_norm = r.gradient_norm;
            }
        }
        Ok(())
    })
}

unsafe fn read_poly(coeffs: *const i64, len: usize) -> Result<IntPolynomial, SaStatus> {
    nonnull(coeffs, "coeffs")?;
    IntPolynomial::from_descending(unsafe { std::slice::from_raw_parts(coeffs, len) }).status()
}

/// House of a monic polynomial given leading coefficient first.
///
/// # Safety
/// `coeffs` must be readable for `len` values and `out` writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_house(coeffs: *const i64, len: usize, tol: f64, out: *mut f64) -> SaStatus {
    guard(|| {
        nonnull(out, "out")?;
        let p = unsafe { read_poly(coeffs, len) }?;
        unsafe { *out = house(&p, tol).status()? };
        Ok(())
    })
}

/// Mahler measure of a monic polynomial to relative tolerance `tol`.
///
/// # Safety
/// `coeffs` must be readable for `len` values and `out` writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_mahler_measure(coeffs: *const i64, len: usize, tol: f64, out: *mut f64) -> SaStatus {
    guard(|| {
        nonnull(out, "out")?;
        let p = unsafe { read_poly(coeffs, len) }?;
        unsafe { *out = mahler_measure(&p, tol).status()? };
        Ok(())
    })
}

/// Side `y` and diagonal `z` of the trirectangle with side `x` and acute angle `phi`.
///
/// # Safety
/// `y` and `z` must be writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_trirectangle(x: f64, phi: f64, y: *mut f64, z: *mut f64) -> SaStatus {
    guard(|| {
        nonnull(y, "y")?;
        nonnull(z, "z")?;
        let t = solve_trirectangle(x, phi).status()?;
        unsafe {
            *y = t.y;
            *z = t.z;
        }
        Ok(())
    })
}

/// Degree bound for the trace field. `margulis_eps` is ignored when
/// `cocompact` is false.
///
/// # Safety
/// `out` must be writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_degree_bound(
    mu: f64,
    r: u32,
    stretch: f64,
    margulis_eps: f64,
    cocompact: bool,
    out: *mut f64,
) -> SaStatus {
    guard(|| {
        nonnull(out, "out")?;
        let input = BoundsInput {
            mu,
            r,
            stretch,
            margulis_eps: cocompact.then_some(margulis_eps),
            dobrowolski_u: None,
        };
        unsafe { *out = degree_bound(&input, cocompact).status()? };
        Ok(())
    })
}

/// Yamada radius `arccosh(mu / 2 pi + 1)`.
///
/// # Safety
/// `out` must be writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_yamada_radius(mu: f64, out: *mut f64) -> SaStatus {
    guard(|| {
        nonnull(out, "out")?;
        unsafe { *out = yamada_radius(mu).status()? };
        Ok(())
    })
}

/// `log M(p) / (r L)` for a polynomial given leading coefficient first.
///
/// # Safety
/// `coeffs` must be readable for `len` values and `out` writable.
#[unsafe(no_mangle)]
pub unsafe extern "C" fn sa_systole_bound_pipeline(
    coeffs: *const i64,
    len: usize,
    r: u32,
    stretch: f64,
    out: *mut f64,
) -> SaStatus {
    guard(|| {
        nonnull(out, "out")?;
        let p = unsafe { read_poly(coeffs, len) }?;
        unsafe { *out = systole_bound_pipeline(&p, r, stretch).status()? };
        Ok(())
    })
}
