//! C interface to `qalg`.
//!
//! Presentations are opaque handles. Every call returns a [`QalgStatus`];
//! on failure the message is kept per thread and read with
//! [`qalg_last_error`]. Strings handed out must be released with
//! [`qalg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qalg::frontend::{validate_presentation, AlgebraPresentation};
use qalg::solve::{solve_in_view, OreView};
use qalg::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Rejected = 4,
    Failed = 5,
    Panic = 6,
}

/// A parsed presentation.
pub struct QalgAlgebra {
    inner: AlgebraPresentation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(CString::new(msg).expect("nul removed")));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> QalgStatus {
    match e {
        Error::Syntax { .. } | Error::DuplicateGenerator { .. } | Error::UnknownSymbol { .. } => QalgStatus::Parse,
        e if e.is_rejection() => QalgStatus::Rejected,
        _ => QalgStatus::Failed,
    }
}

/// Run `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), (QalgStatus, String)>) -> QalgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QalgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QalgStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (QalgStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (QalgStatus, String)> {
    if p.is_null() {
        return Err((QalgStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (QalgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn algebra<'a>(a: *const QalgAlgebra) -> Result<&'a AlgebraPresentation, (QalgStatus, String)> {
    if a.is_null() {
        return Err((QalgStatus::NullPointer, "algebra handle is null".into()));
    }
    Ok(&(*a).inner)
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> Result<(), (QalgStatus, String)> {
    let c = CString::new(s).map_err(|_| (QalgStatus::Failed, "output contains a nul byte".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn check_out<T>(out: *mut *mut T) -> Result<(), (QalgStatus, String)> {
    if out.is_null() {
        return Err((QalgStatus::NullPointer, "output pointer is null".into()));
    }
    Ok(())
}

/// Parse presentation source text into a new handle.
///
/// # Safety
/// `source` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qalg_algebra_parse(source: *const c_char, out: *mut *mut QalgAlgebra) -> QalgStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let text = read_str(source, "source")?;
        let inner = AlgebraPresentation::parse(text).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(QalgAlgebra { inner }));
        Ok(())
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `a` must come from [`qalg_algebra_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qalg_algebra_free(a: *mut QalgAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of generators.
///
/// # Safety
/// `a` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qalg_algebra_generator_count(a: *const QalgAlgebra) -> usize {
    if a.is_null() {
        0
    } else {
        (*a).inner.nvars()
    }
}

/// Normal form of an expression, as text.
///
/// # Safety
/// `a` must be a live handle, `expr` a nul-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qalg_normal_form(
    a: *const QalgAlgebra,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> QalgStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let p = algebra(a)?;
        let e = read_str(expr, "expression")?;
        let nf = qalg::cli::eval(p, e).map_err(lib_err)?;
        write_out(out, p.system.format(&nf))
    })
}

/// Structural checks as JSON, `{passed, checks: [{check, status, detail}]}`.
/// Failing checks do not make the call fail.
///
/// # Safety
/// `a` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qalg_validate_json(a: *const QalgAlgebra, out: *mut *mut c_char) -> QalgStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let p = algebra(a)?;
        let rep = validate_presentation(p);
        let v = serde_json::json!({ "passed": rep.passed(), "checks": rep.checks });
        write_out(out, v.to_string())
    })
}

/// Inner witness search over the box `[-bound, bound]`, as JSON.
///
/// # Safety
/// `a` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qalg_der_solve_json(a: *const QalgAlgebra, bound: i64, out: *mut *mut c_char) -> QalgStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        let p = algebra(a)?;
        let view = OreView::new(p).map_err(lib_err)?;
        let r = solve_in_view(&view, bound).map_err(lib_err)?;
        write_out(out, r.to_json(&view).to_string())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn qalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
