//! C ABI over `baseb`.
//!
//! Every entry point returns a [`BasebStatus`] and writes its result through
//! an out-pointer. Arbitrary-precision results come back as opaque handles
//! that the caller releases with the matching `*_free` function. Strings
//! returned by the library are released with [`baseb_string_free`].
//!
//! After a non-OK status, [`baseb_last_error`] describes the failure on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use baseb::fibonacci::fib_b_genfun;
use baseb::{Base, Error, Identity, SweepConfig, SweepReport};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Result code of every `baseb_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasebStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidBase = 2,
    InvalidArgument = 3,
    Domain = 4,
    Numeric = 5,
    Precondition = 6,
    Internal = 7,
    Panic = 8,
}

/// Arbitrary-precision natural number.
pub struct BasebNat(BigUint);

/// Truncated power series with natural-number coefficients.
pub struct BasebSeries(Vec<BigUint>);

/// Outcome of an identity sweep.
pub struct BasebReport {
    report: SweepReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> BasebStatus {
    match e {
        Error::InvalidBase(_) => BasebStatus::InvalidBase,
        Error::InvalidDigit { .. } | Error::InvalidOrder(_) | Error::Shape(_) => {
            BasebStatus::InvalidArgument
        }
        Error::Precondition(_) => BasebStatus::Precondition,
        Error::Domain(_) => BasebStatus::Domain,
        Error::Numeric(_) => BasebStatus::Numeric,
        Error::Internal(_) => BasebStatus::Internal,
    }
}

/// Runs `f`, recording the error message and converting panics.
fn guard<F>(f: F) -> BasebStatus
where
    F: FnOnce() -> Result<(), (BasebStatus, String)>,
{
    // handles are not touched again after a panic, so observing them in a
    // broken state is not a concern
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            BasebStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside baseb");
            BasebStatus::Panic
        }
    }
}

type FfiResult<T> = Result<T, (BasebStatus, String)>;

fn lib<T>(r: baseb::Result<T>) -> FfiResult<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn base(b: u64) -> FfiResult<Base> {
    lib(Base::new(b))
}

fn null(what: &str) -> (BasebStatus, String) {
    (BasebStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, v: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

fn nat_handle(v: BigUint) -> *mut BasebNat {
    Box::into_raw(Box::new(BasebNat(v)))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the most recent failed call on this thread; empty after a
/// successful call. Owned by the library and valid until the next call.
#[no_mangle]
pub extern "C" fn baseb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn baseb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a decimal string into a new natural.
///
/// # Safety
/// `text` must be null or a NUL-terminated string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_nat_from_string(
    text: *const c_char,
    out: *mut *mut BasebNat,
) -> BasebStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| {
            (
                BasebStatus::InvalidArgument,
                "text is not UTF-8".to_string(),
            )
        })?;
        let v: BigUint = s.parse().map_err(|_| {
            (
                BasebStatus::InvalidArgument,
                format!("'{s}' is not a decimal natural number"),
            )
        })?;
        write(out, nat_handle(v))
    })
}

/// New natural holding `value`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_nat_from_u64(value: u64, out: *mut *mut BasebNat) -> BasebStatus {
    guard(|| write(out, nat_handle(BigUint::from(value))))
}

/// Decimal rendering; release with `baseb_string_free`.
///
/// # Safety
/// `nat` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_nat_to_string(
    nat: *const BasebNat,
    out: *mut *mut c_char,
) -> BasebStatus {
    guard(|| {
        let nat = nat.as_ref().ok_or_else(|| null("nat"))?;
        write(out, c_string(nat.0.to_string()))
    })
}

/// Fails with `Numeric` if the value does not fit in 64 bits.
///
/// # Safety
/// `nat` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_nat_to_u64(nat: *const BasebNat, out: *mut u64) -> BasebStatus {
    guard(|| {
        let nat = nat.as_ref().ok_or_else(|| null("nat"))?;
        let v = nat.0.to_u64().ok_or_else(|| {
            (
                BasebStatus::Numeric,
                format!("{} does not fit in 64 bits", nat.0),
            )
        })?;
        write(out, v)
    })
}

/// # Safety
/// `nat` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn baseb_nat_free(nat: *mut BasebNat) {
    if !nat.is_null() {
        drop(Box::from_raw(nat));
    }
}

/// `C(n, k)_b`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_binom_b(
    n: u64,
    k: u64,
    b: u64,
    out: *mut *mut BasebNat,
) -> BasebStatus {
    guard(|| write(out, nat_handle(baseb::binom_b(n, k, base(b)?))))
}

/// `(n!)_b`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_factorial_b(n: u64, b: u64, out: *mut *mut BasebNat) -> BasebStatus {
    guard(|| write(out, nat_handle(baseb::factorial_b(n, base(b)?))))
}

/// `F^{(b)}_n` with `F_0 = F_1 = 1`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_fib_b(n: u64, b: u64, out: *mut *mut BasebNat) -> BasebStatus {
    guard(|| write(out, nat_handle(baseb::fib_b(n, base(b)?))))
}

/// `{n, k}_b`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_stirling2_b(
    n: u64,
    k: u64,
    b: u64,
    out: *mut *mut BasebNat,
) -> BasebStatus {
    guard(|| write(out, nat_handle(baseb::stirling2_b(n, k, base(b)?))))
}

/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_digit_sum(n: u64, b: u64, out: *mut u64) -> BasebStatus {
    guard(|| write(out, baseb::digit_sum(n, base(b)?)))
}

/// Whether every base-b digit of `k` is at most the matching digit of `n`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_dominates(n: u64, k: u64, b: u64, out: *mut bool) -> BasebStatus {
    guard(|| write(out, baseb::dominates(n, k, base(b)?)))
}

/// Stern's diatomic sequence.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_stern(n: u64, out: *mut u64) -> BasebStatus {
    guard(|| write(out, baseb::stern(n)))
}

/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_fib_tilde2(n: u64, out: *mut u64) -> BasebStatus {
    guard(|| write(out, baseb::fib_tilde2(n)))
}

/// `Γ(a, z)` for integer `a ≥ 1` and `z ≥ 0`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_upper_gamma_int(a: u32, z: f64, out: *mut f64) -> BasebStatus {
    guard(|| write(out, lib(baseb::upper_gamma_int(a, z))?))
}

/// Depth-`depth` product form of the base-b exponential; `0 ≤ w < 1`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_exp_b_product(
    x: f64,
    w: f64,
    b: u64,
    depth: u32,
    out: *mut f64,
) -> BasebStatus {
    guard(|| write(out, lib(baseb::exp_b_product(x, w, base(b)?, depth))?))
}

/// First `terms` terms of the base-b exponential series.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_exp_b_series_numeric(
    x: f64,
    w: f64,
    b: u64,
    terms: usize,
    out: *mut f64,
) -> BasebStatus {
    guard(|| {
        write(
            out,
            lib(baseb::exp_b_series_numeric(x, w, base(b)?, terms))?,
        )
    })
}

/// Generating series of `F^{(b)}` truncated to `order` terms.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_fib_b_series(
    b: u64,
    order: usize,
    out: *mut *mut BasebSeries,
) -> BasebStatus {
    guard(|| {
        let s = lib(fib_b_genfun(base(b)?, order))?;
        write(out, Box::into_raw(Box::new(BasebSeries(s.into_coeffs()))))
    })
}

/// # Safety
/// `series` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_series_len(
    series: *const BasebSeries,
    out: *mut usize,
) -> BasebStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        write(out, s.0.len())
    })
}

/// Copy of the coefficient of `z^index` as a new natural.
///
/// # Safety
/// `series` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_series_coeff(
    series: *const BasebSeries,
    index: usize,
    out: *mut *mut BasebNat,
) -> BasebStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| null("series"))?;
        let c = s.0.get(index).ok_or_else(|| {
            (
                BasebStatus::InvalidArgument,
                format!("index {index} past order {}", s.0.len()),
            )
        })?;
        write(out, nat_handle(c.clone()))
    })
}

/// # Safety
/// `series` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn baseb_series_free(series: *mut BasebSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Runs the named identity sweep. A sweep that finds counterexamples still
/// returns `Ok`; inspect the report.
///
/// # Safety
/// `identity` must be null or a NUL-terminated string; `out` must be null
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_verify(
    identity: *const c_char,
    b: u64,
    n_max: u64,
    workers: usize,
    out: *mut *mut BasebReport,
) -> BasebStatus {
    guard(|| {
        if identity.is_null() {
            return Err(null("identity"));
        }
        let name = CStr::from_ptr(identity).to_str().map_err(|_| {
            (
                BasebStatus::InvalidArgument,
                "identity is not UTF-8".to_string(),
            )
        })?;
        let identity: Identity = name
            .parse()
            .map_err(|e: Error| (BasebStatus::InvalidArgument, e.to_string()))?;
        let config = SweepConfig {
            identity,
            base: base(b)?,
            n_max,
            workers: workers.max(1),
        };
        let report = lib(baseb::run_sweep(&config))?;
        write(out, Box::into_raw(Box::new(BasebReport { report })))
    })
}

/// # Safety
/// `report` must be null or a live handle; outputs must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_report_counts(
    report: *const BasebReport,
    total: *mut u64,
    failed: *mut u64,
    skipped: *mut u64,
) -> BasebStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null("report"))?.report;
        write(total, r.total)?;
        write(failed, r.failures.len() as u64)?;
        write(skipped, r.skipped)
    })
}

/// The `"P/T pass"` summary line; release with `baseb_string_free`.
///
/// # Safety
/// `report` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_report_summary(
    report: *const BasebReport,
    out: *mut *mut c_char,
) -> BasebStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null("report"))?.report;
        write(out, c_string(r.summary()))
    })
}

/// The `index`-th counterexample, rendered with its parameters and both
/// sides; release with `baseb_string_free`.
///
/// # Safety
/// `report` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn baseb_report_failure(
    report: *const BasebReport,
    index: usize,
    out: *mut *mut c_char,
) -> BasebStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null("report"))?.report;
        let f = r.failures.get(index).ok_or_else(|| {
            (
                BasebStatus::InvalidArgument,
                format!("failure index {index} out of {}", r.failures.len()),
            )
        })?;
        write(out, c_string(f.to_string()))
    })
}

/// # Safety
/// `report` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn baseb_report_free(report: *mut BasebReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}
