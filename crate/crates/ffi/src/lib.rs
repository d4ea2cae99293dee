//! C interface to the `goodred` library.
//!
//! Maps live behind opaque `GoodredMap` handles. Every fallible function
//! returns a `GoodredStatus`; on failure `goodred_last_error` describes the
//! most recent error on the calling thread. Strings handed out by the
//! library must be released with `goodred_string_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use goodred::analysis::criteria::MapAnalysis;
use goodred::arith::modp::Prime;
use goodred::cli::parse::parse_map;
use goodred::error::Error;
use goodred::proj::map::RationalMap;
use libc::c_char;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoodredStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidArgument = 3,
    Budget = 4,
    Internal = 5,
    Utf8 = 6,
}

/// A normalized rational map. Opaque to C.
pub struct GoodredMap {
    inner: RationalMap,
}

/// Verdicts at one prime.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GoodredReport {
    pub sgr: bool,
    pub cgr: bool,
    pub separable: bool,
    pub nonconstant: bool,
    pub branch_nonsingular: bool,
    pub ram_nonsingular: bool,
    pub theorem1_consistent: bool,
    pub degree: u32,
    pub reduced_degree: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: GoodredStatus, msg: &str) -> GoodredStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> GoodredStatus {
    match e {
        Error::Parse { .. } | Error::ZeroDenominator { .. } => GoodredStatus::Parse,
        Error::BudgetExceeded(_) => GoodredStatus::Budget,
        Error::Internal(_) => GoodredStatus::Internal,
        _ => GoodredStatus::InvalidArgument,
    }
}

fn from_error(e: Error) -> GoodredStatus {
    fail(status_of(&e), &e.to_string())
}

/// Runs `f`, turning a panic into `Internal`.
fn guard(f: impl FnOnce() -> GoodredStatus) -> GoodredStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(GoodredStatus::Internal, "panic inside goodred"),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn new_handle(map: RationalMap) -> *mut GoodredMap {
    Box::into_raw(Box::new(GoodredMap { inner: map }))
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn goodred_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a map such as `"(x^2+x)/(x+2)"`. On success `*out` owns a new
/// handle to release with `goodred_map_free`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn goodred_map_parse(
    text: *const c_char,
    out: *mut *mut GoodredMap,
) -> GoodredStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(GoodredStatus::NullPointer, "null argument");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(GoodredStatus::Utf8, "input is not UTF-8");
        };
        match parse_map(s) {
            Ok(m) => {
                *out = new_handle(m);
                GoodredStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `map` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn goodred_map_free(map: *mut GoodredMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn goodred_map_degree(map: *const GoodredMap, out: *mut u32) -> GoodredStatus {
    if map.is_null() || out.is_null() {
        return fail(GoodredStatus::NullPointer, "null argument");
    }
    *out = (*map).inner.degree() as u32;
    GoodredStatus::Ok
}

/// The map in the syntax `goodred_map_parse` accepts, or NULL.
///
/// # Safety
/// `map` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn goodred_map_to_string(map: *const GoodredMap) -> *mut c_char {
    if map.is_null() {
        set_error("null argument");
        return ptr::null_mut();
    }
    into_c_string((*map).inner.to_string())
}

/// `*out = outer ∘ inner`, a new handle.
///
/// # Safety
/// `outer` and `inner` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn goodred_map_compose(
    outer: *const GoodredMap,
    inner: *const GoodredMap,
    out: *mut *mut GoodredMap,
) -> GoodredStatus {
    guard(|| {
        if outer.is_null() || inner.is_null() || out.is_null() {
            return fail(GoodredStatus::NullPointer, "null argument");
        }
        *out = new_handle((*outer).inner.compose(&(*inner).inner));
        GoodredStatus::Ok
    })
}

/// Verdicts at the prime `p`.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn goodred_analyze(
    map: *const GoodredMap,
    p: u64,
    out: *mut GoodredReport,
) -> GoodredStatus {
    guard(|| {
        if map.is_null() || out.is_null() {
            return fail(GoodredStatus::NullPointer, "null argument");
        }
        let prime = match Prime::from_u64(p) {
            Ok(q) => q,
            Err(e) => return from_error(e),
        };
        let a = MapAnalysis::new((*map).inner.clone());
        match a.report_at(&prime) {
            Ok(r) => {
                *out = GoodredReport {
                    sgr: r.sgr,
                    cgr: r.cgr,
                    separable: r.separable,
                    nonconstant: r.nonconstant,
                    branch_nonsingular: r.branch_nonsingular,
                    ram_nonsingular: r.ram_nonsingular,
                    theorem1_consistent: r.theorem1_consistent,
                    degree: a.degree() as u32,
                    reduced_degree: r.reduced_degree as u32,
                };
                GoodredStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// JSON object with `sgr_bad`, `cgr_bad` and `inseparable` prime lists.
/// Returns `Budget` if factorization ran out, with the partial lists still
/// written to `*out`.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn goodred_bad_primes_json(
    map: *const GoodredMap,
    out: *mut *mut c_char,
) -> GoodredStatus {
    guard(|| {
        if map.is_null() || out.is_null() {
            return fail(GoodredStatus::NullPointer, "null argument");
        }
        let a = MapAnalysis::new((*map).inner.clone());
        let lists = (|| Ok((a.sgr_bad_primes()?, a.cgr_bad_primes()?, a.inseparable_primes()?)))();
        let (sgr, cgr, insep) = match lists {
            Ok(l) => l,
            Err(e) => return from_error(e),
        };
        let complete = sgr.complete && cgr.complete && insep.complete;
        let doc = serde_json::json!({
            "sgr_bad": sgr,
            "cgr_bad": cgr,
            "inseparable": insep,
            "complete": complete,
        });
        *out = into_c_string(doc.to_string());
        if complete {
            GoodredStatus::Ok
        } else {
            fail(GoodredStatus::Budget, "factorization budget exhausted")
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn goodred_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
