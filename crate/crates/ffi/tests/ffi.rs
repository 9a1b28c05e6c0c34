use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qalg_ffi::*;

const WEYL: &str = "algebra Weyl { gen x; gen y; rel x*y - q*y*x = 1; }";

fn parse(src: &str) -> *mut QalgAlgebra {
    let src = CString::new(src).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { qalg_algebra_parse(src.as_ptr(), &mut a) }, QalgStatus::Ok);
    assert!(!a.is_null());
    a
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { qalg_string_free(s) };
    out
}

fn last_error() -> Option<String> {
    let p = qalg_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn normal_form_round_trip() {
    let a = parse(WEYL);
    assert_eq!(unsafe { qalg_algebra_generator_count(a) }, 2);
    let e = CString::new("x*y").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qalg_normal_form(a, e.as_ptr(), &mut out) }, QalgStatus::Ok);
    assert_eq!(take(out), "q*y*x + 1");
    assert_eq!(last_error(), None);
    unsafe { qalg_algebra_free(a) };
}

#[test]
fn witness_json() {
    let a = parse(WEYL);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qalg_der_solve_json(a, 1, &mut out) }, QalgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["witness"], "(1-q)^-1 * y^-1");
    assert_eq!(unsafe { qalg_der_solve_json(a, 0, &mut out) }, QalgStatus::Failed);
    assert!(out.is_null());
    assert!(last_error().unwrap().contains("box"));
    unsafe { qalg_algebra_free(a) };
}

#[test]
fn validate_json() {
    let a = parse(WEYL);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qalg_validate_json(a, &mut out) }, QalgStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["check"] == "confluence"));
    unsafe { qalg_algebra_free(a) };
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("algebra { gen x").unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { qalg_algebra_parse(bad.as_ptr(), &mut a) }, QalgStatus::Parse);
    assert!(a.is_null());
    assert!(last_error().is_some());

    assert_eq!(unsafe { qalg_algebra_parse(ptr::null(), &mut a) }, QalgStatus::NullPointer);
    let w = parse(WEYL);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qalg_normal_form(w, ptr::null(), &mut out) }, QalgStatus::NullPointer);
    let e = CString::new("x*").unwrap();
    assert_eq!(unsafe { qalg_normal_form(w, e.as_ptr(), &mut out) }, QalgStatus::Parse);
    let e = CString::new("x*y^-1").unwrap();
    assert_eq!(unsafe { qalg_normal_form(w, e.as_ptr(), &mut out) }, QalgStatus::Ok);
    take(out);
    assert_eq!(last_error(), None);
    unsafe { qalg_algebra_free(w) };
    unsafe { qalg_algebra_free(ptr::null_mut()) };
    unsafe { qalg_string_free(ptr::null_mut()) };
}

#[test]
fn last_error_is_per_thread() {
    let bad = CString::new("nonsense").unwrap();
    let mut a = ptr::null_mut();
    assert_ne!(unsafe { qalg_algebra_parse(bad.as_ptr(), &mut a) }, QalgStatus::Ok);
    assert!(last_error().is_some());
    std::thread::spawn(|| assert!(last_error().is_none())).join().unwrap();
}

#[test]
fn header_declares_api() {
    let h = include_str!("../include/qalg.h");
    for name in [
        "qalg_algebra_parse",
        "qalg_algebra_free",
        "qalg_normal_form",
        "qalg_validate_json",
        "qalg_der_solve_json",
        "qalg_string_free",
        "qalg_last_error",
        "typedef struct QalgAlgebra QalgAlgebra;",
        "QALG_STATUS_REJECTED = 4",
    ] {
        assert!(h.contains(name), "{name}");
    }
}
