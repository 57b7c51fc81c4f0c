//! C ABI for `ffiwa`.
//!
//! Every function returns an [`FfiwaStatus`]; results are written through
//! out-pointers. On failure a description is available from
//! [`ffiwa_last_error_message`] on the same thread. Objects are opaque
//! handles released with their `_free` function, and strings returned by the
//! library are released with [`ffiwa_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ffiwa::algebra::FiniteField;
use ffiwa::drinfeld::DrinfeldModule;
use ffiwa::duality::{lambda_bound, H0Term, Provenance};
use ffiwa::iwasawa::fit_invariants;
use ffiwa::tower::{splitting_in_level, Place};
use ffiwa::zeta::{class_tower, ClassTower, LPolynomial};
use ffiwa::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FfiwaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    OutOfRange = 3,
    Domain = 10,
    Parse = 11,
    Precondition = 12,
    Size = 13,
    InvalidCounts = 14,
    InfiniteQuotient = 15,
    Precision = 16,
    NonConforming = 17,
    TwistMismatch = 18,
    NotStable = 19,
    Consistency = 20,
    Panic = 99,
}

impl From<&Error> for FfiwaStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => FfiwaStatus::Domain,
            Error::Parse { .. } => FfiwaStatus::Parse,
            Error::Precondition(_) => FfiwaStatus::Precondition,
            Error::Size(_) => FfiwaStatus::Size,
            Error::InvalidCounts(_) => FfiwaStatus::InvalidCounts,
            Error::InfiniteQuotient(_) => FfiwaStatus::InfiniteQuotient,
            Error::Precision(_) => FfiwaStatus::Precision,
            Error::NonConforming(_) => FfiwaStatus::NonConforming,
            Error::TwistMismatch { .. } => FfiwaStatus::TwistMismatch,
            Error::NotStable(_) => FfiwaStatus::NotStable,
            Error::Consistency(_) => FfiwaStatus::Consistency,
        }
    }
}

/// Opaque handle to a Drinfeld module.
pub struct FfiwaDrinfeld(DrinfeldModule);

/// Opaque handle to a computed class-number tower.
pub struct FfiwaClassTower(ClassTower);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Internal failure carrying its status and message.
struct Failure(FfiwaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(FfiwaStatus::from(&e), e.to_string())
    }
}

/// Run `body`, translating errors and panics into a status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> FfiwaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FfiwaStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FfiwaStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure(FfiwaStatus::NullPointer, format!("`{name}` is null"))
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn text<'a>(s: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(FfiwaStatus::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

/// # Safety
/// `data` must be null with `len == 0`, or point to `len` readable values.
unsafe fn slice<'a, T>(data: *const T, len: usize, name: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("NUL bytes removed")
        .into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ffiwa_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Release a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Create the Drinfeld module over `F_q` with `φ_T` given as comma-separated
/// τ-coefficients (`"T,1"`) or skew text (`"T + t"`).
///
/// # Safety
/// `phi_t` must be a valid string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_drinfeld_new(q: u64, phi_t: *const c_char, out: *mut *mut FfiwaDrinfeld) -> FfiwaStatus {
    guard(|| {
        let model = text(phi_t, "phi_t")?;
        let phi = DrinfeldModule::parse(q, model)?;
        write(out, Box::into_raw(Box::new(FfiwaDrinfeld(phi))), "out")
    })
}

/// Release a Drinfeld module. Null is ignored.
///
/// # Safety
/// `handle` must be null or obtained from [`ffiwa_drinfeld_new`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_drinfeld_free(handle: *mut FfiwaDrinfeld) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` must be null or a live handle.
unsafe fn drinfeld<'a>(handle: *const FfiwaDrinfeld) -> Result<&'a DrinfeldModule, Failure> {
    handle.as_ref().map(|h| &h.0).ok_or_else(|| null("handle"))
}

/// The rank `r` of the module.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_drinfeld_rank(handle: *const FfiwaDrinfeld, out: *mut usize) -> FfiwaStatus {
    guard(|| write(out, drinfeld(handle)?.rank(), "out"))
}

/// `φ_T` rendered as text; release with [`ffiwa_string_free`].
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_drinfeld_phi_t(handle: *const FfiwaDrinfeld, out: *mut *mut c_char) -> FfiwaStatus {
    guard(|| {
        let s = ffiwa::skew::format_skew(drinfeld(handle)?.phi_t());
        write(out, into_c_string(s), "out")
    })
}

/// Dimension over `F_π` of the Frobenius-fixed part of the reduced
/// `π`-torsion at the good place `place`.
///
/// # Safety
/// `handle` must be a live handle, `pi` and `place` valid strings, and `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_drinfeld_h0_dim(
    handle: *const FfiwaDrinfeld,
    pi: *const c_char,
    place: *const c_char,
    out: *mut usize,
) -> FfiwaStatus {
    guard(|| {
        let phi = drinfeld(handle)?;
        let pi = Place::parse(text(pi, "pi")?, phi.field())?;
        let v = Place::parse(text(place, "place")?, phi.field())?;
        write(out, phi.frobenius_data(&v, &pi)?.h0_dim, "out")
    })
}

/// Class numbers `h_n` for `n = 0..levels` of the constant `Z_p`-tower over
/// the curve with L-polynomial coefficients `coeffs[0..len]`.
///
/// # Safety
/// `coeffs` must point to `len` values and `out` be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_class_tower_new(
    q: u64,
    coeffs: *const i64,
    len: usize,
    p: u64,
    levels: u32,
    out: *mut *mut FfiwaClassTower,
) -> FfiwaStatus {
    guard(|| {
        let l = LPolynomial::from_i64(q, slice(coeffs, len, "coeffs")?)?;
        let tower = class_tower(&l, p, levels)?;
        write(out, Box::into_raw(Box::new(FfiwaClassTower(tower))), "out")
    })
}

/// Release a class tower. Null is ignored.
///
/// # Safety
/// `handle` must be null or obtained from [`ffiwa_class_tower_new`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_class_tower_free(handle: *mut FfiwaClassTower) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` must be null or a live handle.
unsafe fn tower<'a>(handle: *const FfiwaClassTower) -> Result<&'a ClassTower, Failure> {
    handle.as_ref().map(|h| &h.0).ok_or_else(|| null("handle"))
}

/// Number of levels in the tower.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_class_tower_len(handle: *const FfiwaClassTower, out: *mut usize) -> FfiwaStatus {
    guard(|| write(out, tower(handle)?.levels.len(), "out"))
}

/// `e_n = v_p(h_n)`.
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_class_tower_exponent(
    handle: *const FfiwaClassTower,
    n: usize,
    out: *mut u64,
) -> FfiwaStatus {
    guard(|| {
        let level = tower(handle)?
            .levels
            .get(n)
            .ok_or_else(|| Failure(FfiwaStatus::OutOfRange, format!("level {n} out of range")))?;
        write(out, level.e, "out")
    })
}

/// `h_n` as a decimal string; release with [`ffiwa_string_free`].
///
/// # Safety
/// `handle` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_class_tower_class_number(
    handle: *const FfiwaClassTower,
    n: usize,
    out: *mut *mut c_char,
) -> FfiwaStatus {
    guard(|| {
        let level = tower(handle)?
            .levels
            .get(n)
            .ok_or_else(|| Failure(FfiwaStatus::OutOfRange, format!("level {n} out of range")))?;
        write(out, into_c_string(level.h.to_string()), "out")
    })
}

/// Fit `e_n = λn + μp^n + ν`; `n0` is the first level from which the formula
/// holds.
///
/// # Safety
/// `e` must point to `len` values; every out-pointer must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_fit_invariants(
    e: *const i64,
    len: usize,
    p: u64,
    out_lambda: *mut u64,
    out_mu: *mut u64,
    out_nu: *mut i64,
    out_n0: *mut usize,
) -> FfiwaStatus {
    guard(|| {
        if out_lambda.is_null() || out_mu.is_null() || out_nu.is_null() || out_n0.is_null() {
            return Err(null("out"));
        }
        let fit = fit_invariants(slice(e, len, "e")?, p)?;
        write(out_lambda, fit.lambda, "out_lambda")?;
        write(out_mu, fit.mu, "out_mu")?;
        write(out_nu, fit.nu, "out_nu")?;
        write(out_n0, fit.n0, "out_n0")
    })
}

/// Number and degree of the places above `place` in the level-`n` constant
/// extension of `F_q(T)`.
///
/// # Safety
/// `place` must be a valid string; out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_splitting(
    q: u64,
    place: *const c_char,
    n: u32,
    out_count: *mut u64,
    out_degree: *mut u64,
) -> FfiwaStatus {
    guard(|| {
        if out_count.is_null() || out_degree.is_null() {
            return Err(null("out"));
        }
        let k = FiniteField::with_order(q)?;
        let v = Place::parse(text(place, "place")?, &k)?;
        let s = splitting_in_level(&v, k.characteristic(), n);
        write(out_count, s.count, "out_count")?;
        write(out_degree, s.degree, "out_degree")
    })
}

/// `sel_dim + Σ dims[i]`, the λ-bound from supplied local terms.
///
/// # Safety
/// `dims` must point to `len` values and `out` be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_lambda_bound(sel_dim: i64, dims: *const i64, len: usize, out: *mut u64) -> FfiwaStatus {
    guard(|| {
        let terms = slice(dims, len, "dims")?
            .iter()
            .enumerate()
            .map(|(i, &dim)| H0Term {
                place: format!("h0[{i}]"),
                dim,
                provenance: Provenance::Input,
            })
            .collect();
        write(out, lambda_bound(sel_dim, terms)?.bound, "out")
    })
}

/// Run the command line with `argv[0..argc]` (without the program name).
/// The report (or structured error) is written to `out_stdout` and the exit
/// code to `out_code`; the returned status only reflects argument passing.
///
/// # Safety
/// `argv` must point to `argc` valid strings; out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ffiwa_run(
    argv: *const *const c_char,
    argc: usize,
    out_stdout: *mut *mut c_char,
    out_code: *mut i32,
) -> FfiwaStatus {
    guard(|| {
        if out_stdout.is_null() || out_code.is_null() {
            return Err(null("out"));
        }
        let mut args = vec!["ffiwa".to_string()];
        for (i, &a) in slice(argv, argc, "argv")?.iter().enumerate() {
            args.push(text(a, &format!("argv[{i}]"))?.to_string());
        }
        let outcome = ffiwa::cli::run(args);
        let output = if outcome.stdout.is_empty() {
            outcome.stderr
        } else {
            outcome.stdout
        };
        write(out_stdout, into_c_string(output), "out_stdout")?;
        write(out_code, outcome.code, "out_code")
    })
}
