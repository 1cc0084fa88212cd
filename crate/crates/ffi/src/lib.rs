//! C interface to `teichfuchs`.
//!
//! Objects are opaque handles created by `tf_*_new`/`tf_*_derive` and
//! released with the matching `tf_*_free`. Every fallible call returns a
//! [`TfStatus`]; on failure a description is available from
//! [`tf_last_error`]. Strings are copied into caller buffers: the required
//! size including the terminating NUL is always written to `*needed`, and
//! `TF_BUFFER_TOO_SMALL` is returned when `cap` is smaller.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use teichfuchs::charp::{cartier_pattern, honda_test, p_curvature, prime_context, CharpError};
use teichfuchs::families::{family, FamilyError, FamilyModel};
use teichfuchs::numring::QuadNum;
use teichfuchs::picardfuchs::{derive_ode, FuchsOp};
use teichfuchs::polyalg::SeriesPrefix;
use teichfuchs::series::holomorphic_solution;
use teichfuchs::teich::{enumerate_prototypes, TeichError};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfStatus {
    TfOk = 0,
    TfNullPointer = 1,
    TfInvalidArgument = 2,
    /// No model or the prime is exceptional.
    TfUnsupported = 3,
    /// A computation failed or a mathematical precondition does not hold.
    TfComputationFailed = 4,
    TfBufferTooSmall = 5,
    TfInternalError = 6,
}

/// Family `y^2 = g(x, t)` for one discriminant and component.
pub struct TfFamily(FamilyModel);

/// Second-order Picard-Fuchs operator.
pub struct TfOperator(FuchsOp);

/// Power-series prefix of the holomorphic solution at `t = 0`.
pub struct TfSeries(SeriesPrefix<QuadNum>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("NUL bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn fail(status: TfStatus, msg: impl Into<String>) -> TfStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> TfStatus) -> TfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(TfStatus::TfInternalError, msg)
        }
    }
}

fn teich_status(e: TeichError) -> TfStatus {
    let s = match e {
        TeichError::EmptyLocus(_) => TfStatus::TfComputationFailed,
        _ => TfStatus::TfInvalidArgument,
    };
    fail(s, e.to_string())
}

fn family_status(e: FamilyError) -> TfStatus {
    let s = match e {
        FamilyError::UnsupportedDiscriminant(_) => TfStatus::TfUnsupported,
        _ => TfStatus::TfComputationFailed,
    };
    fail(s, e.to_string())
}

fn charp_status(e: CharpError) -> TfStatus {
    let s = match e {
        CharpError::ExceptionalPrime(_) | CharpError::Num(_) => TfStatus::TfUnsupported,
        _ => TfStatus::TfComputationFailed,
    };
    fail(s, e.to_string())
}

/// Copies `s` and a NUL into `buf` without touching the error slot.
///
/// # Safety
/// `buf` must be valid for `cap` bytes or null with `cap == 0`; `needed`
/// must be valid or null.
unsafe fn copy_str(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> TfStatus {
    let n = s.len() + 1;
    if !needed.is_null() {
        *needed = n;
    }
    if buf.is_null() || cap < n {
        return TfStatus::TfBufferTooSmall;
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
    *buf.add(s.len()) = 0;
    TfStatus::TfOk
}

unsafe fn write_str(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> TfStatus {
    match copy_str(s, buf, cap, needed) {
        TfStatus::TfBufferTooSmall => fail(TfStatus::TfBufferTooSmall, format!("{} bytes needed", s.len() + 1)),
        st => st,
    }
}

/// Copies the message of the last failed call on this thread.
///
/// # Safety
/// Same buffer contract as the other string getters.
#[no_mangle]
pub unsafe extern "C" fn tf_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> TfStatus {
    let msg = LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map(|c| c.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    copy_str(&msg, buf, cap, needed)
}

/// Number of splitting prototypes of discriminant `d`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_prototype_count(d: i64, out: *mut usize) -> TfStatus {
    guard(|| {
        if out.is_null() {
            return fail(TfStatus::TfNullPointer, "out is null");
        }
        match enumerate_prototypes(d) {
            Ok(v) => {
                *out = v.len();
                TfStatus::TfOk
            }
            Err(e) => teich_status(e),
        }
    })
}

/// Creates the family for `d` and spin component `eps` (ignored for
/// `d = 13`).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_family_new(d: i64, eps: u8, out: *mut *mut TfFamily) -> TfStatus {
    guard(|| {
        if out.is_null() {
            return fail(TfStatus::TfNullPointer, "out is null");
        }
        *out = ptr::null_mut();
        if eps > 1 {
            return fail(TfStatus::TfInvalidArgument, "eps must be 0 or 1");
        }
        match family(d, eps) {
            Ok(fm) => {
                *out = Box::into_raw(Box::new(TfFamily(fm)));
                TfStatus::TfOk
            }
            Err(e) => family_status(e),
        }
    })
}

/// # Safety
/// `fam` must come from [`tf_family_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tf_family_free(fam: *mut TfFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

/// Family as JSON.
///
/// # Safety
/// `fam` must be a live handle; buffer contract as in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn tf_family_json(
    fam: *const TfFamily,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> TfStatus {
    guard(|| match fam.as_ref() {
        None => fail(TfStatus::TfNullPointer, "family is null"),
        Some(f) => write_str(&serde_json::to_string(&f.0).expect("serializable"), buf, cap, needed),
    })
}

/// Derives the operator annihilating form `form` (1 or 2).
///
/// # Safety
/// `fam` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_operator_derive(
    fam: *const TfFamily,
    form: u32,
    out: *mut *mut TfOperator,
) -> TfStatus {
    guard(|| {
        if out.is_null() {
            return fail(TfStatus::TfNullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let Some(f) = fam.as_ref() else {
            return fail(TfStatus::TfNullPointer, "family is null");
        };
        if !(1..=2).contains(&form) {
            return fail(TfStatus::TfInvalidArgument, "form must be 1 or 2");
        }
        match derive_ode(&f.0, form as usize) {
            Ok(l) => {
                *out = Box::into_raw(Box::new(TfOperator(l)));
                TfStatus::TfOk
            }
            Err(e) => fail(TfStatus::TfComputationFailed, e.to_string()),
        }
    })
}

/// # Safety
/// `op` must come from [`tf_operator_derive`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tf_operator_free(op: *mut TfOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Operator as JSON `{A, B, singularities}`.
///
/// # Safety
/// `op` must be a live handle; buffer contract as in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn tf_operator_json(
    op: *const TfOperator,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> TfStatus {
    guard(|| match op.as_ref() {
        None => fail(TfStatus::TfNullPointer, "operator is null"),
        Some(l) => write_str(&serde_json::to_string(&l.0).expect("serializable"), buf, cap, needed),
    })
}

/// Holomorphic solution `u` with `u_0 = 1` up to `t^n`.
///
/// # Safety
/// `op` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_series_new(op: *const TfOperator, n: usize, out: *mut *mut TfSeries) -> TfStatus {
    guard(|| {
        if out.is_null() {
            return fail(TfStatus::TfNullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let Some(l) = op.as_ref() else {
            return fail(TfStatus::TfNullPointer, "operator is null");
        };
        match holomorphic_solution(&l.0, n) {
            Ok(u) => {
                *out = Box::into_raw(Box::new(TfSeries(u)));
                TfStatus::TfOk
            }
            Err(e) => fail(TfStatus::TfComputationFailed, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must come from [`tf_series_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tf_series_free(s: *mut TfSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of coefficients held (`n + 1`).
///
/// # Safety
/// `s` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_series_len(s: *const TfSeries, out: *mut usize) -> TfStatus {
    guard(|| match (s.as_ref(), out.is_null()) {
        (Some(s), false) => {
            *out = s.0.coeffs().len();
            TfStatus::TfOk
        }
        _ => fail(TfStatus::TfNullPointer, "null argument"),
    })
}

/// Coefficient `u_j` as text, e.g. `81/16 - 15/16*sqrt(17)`.
///
/// # Safety
/// `s` must be a live handle; buffer contract as in the crate docs.
#[no_mangle]
pub unsafe extern "C" fn tf_series_coeff(
    s: *const TfSeries,
    j: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> TfStatus {
    guard(|| {
        let Some(s) = s.as_ref() else {
            return fail(TfStatus::TfNullPointer, "series is null");
        };
        match s.0.coeffs().get(j) {
            Some(c) => write_str(&c.to_string(), buf, cap, needed),
            None => fail(TfStatus::TfInvalidArgument, format!("index {j} out of range")),
        }
    })
}

/// Whether the Cartier vanishing pattern at `p` matches the splitting of
/// `p` in the quadratic field.
///
/// # Safety
/// `fam` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_cartier_ok(fam: *const TfFamily, p: u64, out: *mut bool) -> TfStatus {
    guard(|| {
        let (Some(f), false) = (fam.as_ref(), out.is_null()) else {
            return fail(TfStatus::TfNullPointer, "null argument");
        };
        match cartier_pattern(&f.0, p) {
            Ok(r) => {
                *out = r.ok;
                TfStatus::TfOk
            }
            Err(e) => charp_status(e),
        }
    })
}

/// Nilpotence of the p-curvature of `op` and the Honda polynomial-solution
/// test, for a good prime `p` of `fam`.
///
/// # Safety
/// Handles must be live; `nilpotent` and `honda` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn tf_nilpotence(
    fam: *const TfFamily,
    op: *const TfOperator,
    p: u64,
    nilpotent: *mut bool,
    honda: *mut bool,
) -> TfStatus {
    guard(|| {
        let (Some(f), Some(l)) = (fam.as_ref(), op.as_ref()) else {
            return fail(TfStatus::TfNullPointer, "null handle");
        };
        if nilpotent.is_null() || honda.is_null() {
            return fail(TfStatus::TfNullPointer, "null output");
        }
        let ctx = match prime_context(&f.0, p, 1) {
            Ok(c) => c,
            Err(e) => return charp_status(e),
        };
        let res = p_curvature(&l.0, &ctx).and_then(|pc| Ok((pc.nilpotent, honda_test(&l.0, &ctx, None)?)));
        match res {
            Ok((n, h)) => {
                *nilpotent = n;
                *honda = h;
                TfStatus::TfOk
            }
            Err(e) => charp_status(e),
        }
    })
}
