use std::ffi::{CStr, CString};
use std::ptr;

use goodred_ffi::*;

fn parse(text: &str) -> *mut GoodredMap {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let s = unsafe { goodred_map_parse(c.as_ptr(), &mut out) };
    assert_eq!(s, GoodredStatus::Ok, "parsing {text}");
    out
}

fn last_error() -> String {
    let p = goodred_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn take_string(p: *mut libc::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { goodred_string_free(p) };
    s
}

#[test]
fn parse_print_free() {
    let m = parse("(x^2+x)/(x+2)");
    let mut d = 0;
    assert_eq!(unsafe { goodred_map_degree(m, &mut d) }, GoodredStatus::Ok);
    assert_eq!(d, 2);
    assert_eq!(take_string(unsafe { goodred_map_to_string(m) }), "(x^2+x)/(x+2)");
    unsafe { goodred_map_free(m) };
    unsafe { goodred_map_free(ptr::null_mut()) };
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    let bad = CString::new("x/0").unwrap();
    assert_eq!(unsafe { goodred_map_parse(bad.as_ptr(), &mut out) }, GoodredStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("zero denominator"));
    let common = CString::new("x^2/x").unwrap();
    assert_eq!(
        unsafe { goodred_map_parse(common.as_ptr(), &mut out) },
        GoodredStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { goodred_map_parse(ptr::null(), &mut out) },
        GoodredStatus::NullPointer
    );
    let not_utf8 = [0xffu8, 0];
    assert_eq!(
        unsafe { goodred_map_parse(not_utf8.as_ptr() as *const libc::c_char, &mut out) },
        GoodredStatus::Utf8
    );
    let m = parse("x^2");
    let mut r = GoodredReport::default();
    assert_eq!(unsafe { goodred_analyze(m, 4, &mut r) }, GoodredStatus::InvalidArgument);
    assert!(last_error().contains("not a prime"));
    let lin = parse("2*x+1");
    assert_eq!(unsafe { goodred_analyze(lin, 3, &mut r) }, GoodredStatus::InvalidArgument);
    unsafe {
        goodred_map_free(m);
        goodred_map_free(lin);
    }
}

#[test]
fn analyze_quartic() {
    let m = parse("-3*x^4+4*x^3");
    let mut r = GoodredReport::default();
    assert_eq!(unsafe { goodred_analyze(m, 3, &mut r) }, GoodredStatus::Ok);
    assert!(!r.sgr && r.cgr && !r.separable && r.theorem1_consistent);
    assert_eq!((r.degree, r.reduced_degree), (4, 3));
    unsafe { goodred_map_free(m) };
}

#[test]
fn compose_and_bad_primes() {
    let m = parse("(x-1)^2");
    let mut sq = ptr::null_mut();
    assert_eq!(unsafe { goodred_map_compose(m, m, &mut sq) }, GoodredStatus::Ok);
    assert_eq!(take_string(unsafe { goodred_map_to_string(sq) }), "x^4-4*x^3+4*x^2");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { goodred_bad_primes_json(sq, &mut json) }, GoodredStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    assert_eq!(v["cgr_bad"]["primes"], serde_json::json!(["2"]));
    assert_eq!(v["sgr_bad"]["primes"], serde_json::json!([]));
    assert_eq!(v["complete"], serde_json::json!(true));
    unsafe {
        goodred_map_free(m);
        goodred_map_free(sq);
    }
}

#[test]
fn header_is_current() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/goodred.h")).unwrap();
    for name in [
        "goodred_map_parse",
        "goodred_map_free",
        "goodred_map_degree",
        "goodred_map_to_string",
        "goodred_map_compose",
        "goodred_analyze",
        "goodred_bad_primes_json",
        "goodred_string_free",
        "goodred_last_error",
        "typedef struct GoodredMap GoodredMap;",
        "GOODRED_STATUS_BUDGET = 4",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
