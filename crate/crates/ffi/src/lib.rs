//! C ABI over the tanlift engine.
//!
//! Sessions are opaque handles. Every call returns a [`TlStatus`]; on anything
//! other than `TL_STATUS_OK` or `TL_STATUS_FAILED`, [`tl_last_error`] describes
//! the problem. Strings handed out by the library must be released with
//! [`tl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use serde_json::json;
use tanlift::dsl::{Failure, Session};
use tanlift::verify::{self, Config};
use tanlift::Error;

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TlStatus {
    /// Ran and every verdict passed.
    Ok = 0,
    /// Ran, but at least one verdict failed. The report says which.
    Failed = 1,
    Syntax = 2,
    Name = 3,
    Type = 4,
    Domain = 5,
    Jacobi = 6,
    NonSingularPoint = 7,
    Internal = 8,
    NullArgument = 9,
    InvalidUtf8 = 10,
    Panic = 11,
}

/// Report encoding.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TlFormat {
    Text = 0,
    Json = 1,
}

/// Opaque interpreter session; declarations persist across evaluations.
pub struct TlSession {
    inner: Session,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TlStatus {
    match e {
        Error::Syntax { .. } => TlStatus::Syntax,
        Error::Name(_) => TlStatus::Name,
        Error::Type(_) => TlStatus::Type,
        Error::Domain(_) => TlStatus::Domain,
        Error::JacobiFailure { .. } => TlStatus::Jacobi,
        Error::NonSingularPoint(_) => TlStatus::NonSingularPoint,
        Error::Internal(_) => TlStatus::Internal,
    }
}

fn fail(status: TlStatus, msg: &str) -> TlStatus {
    set_error(msg);
    status
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, TlStatus> {
    if p.is_null() {
        return Err(fail(TlStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(TlStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn hand_out(out: *mut *mut c_char, s: String) {
    if !out.is_null() {
        *out = CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut());
    }
}

fn guarded(f: impl FnOnce() -> TlStatus) -> TlStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(TlStatus::Panic, "panic inside tanlift"))
}

fn config(seed: u64, trials: usize, dim: usize, degree: u32) -> Config {
    let d = Config::default();
    Config {
        seed,
        trials: (trials > 0).then_some(trials),
        dim: if dim == 0 { d.dim } else { dim },
        degree: if degree == 0 { d.degree } else { degree },
    }
}

/// Creates a session with default sampling settings and the given seed.
#[no_mangle]
pub extern "C" fn tl_session_new(seed: u64) -> *mut TlSession {
    tl_session_new_with(seed, 0, 0, 0)
}

/// Creates a session; zero for `trials`, `dim` or `degree` keeps the default.
#[no_mangle]
pub extern "C" fn tl_session_new_with(seed: u64, trials: usize, dim: usize, degree: u32) -> *mut TlSession {
    Box::into_raw(Box::new(TlSession { inner: Session::new(config(seed, trials, dim, degree)) }))
}

/// Releases a session. Null is ignored.
///
/// # Safety
/// `session` must come from `tl_session_new*` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tl_session_free(session: *mut TlSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Runs script text in a session. `*report` receives the report (partial on
/// error), or null when nothing ran; release it with `tl_string_free`.
///
/// # Safety
/// `session` must be live, `source` a NUL-terminated string, and `report`
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn tl_session_eval(
    session: *mut TlSession,
    source: *const c_char,
    format: TlFormat,
    report: *mut *mut c_char,
) -> TlStatus {
    if !report.is_null() {
        *report = ptr::null_mut();
    }
    guarded(|| {
        let Some(session) = session.as_mut() else {
            return fail(TlStatus::NullArgument, "null session");
        };
        let src = match read_str(source) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let render = |r: &tanlift::dsl::Report| match format {
            TlFormat::Text => r.to_text(),
            TlFormat::Json => r.to_json().to_string(),
        };
        match session.inner.eval(src) {
            Ok(r) => {
                hand_out(report, render(&r));
                if r.passed() {
                    TlStatus::Ok
                } else {
                    TlStatus::Failed
                }
            }
            Err(Failure { statement, error, partial }) => {
                hand_out(report, render(&partial));
                let msg = match statement {
                    Some(i) => format!("statement {i}: {error}"),
                    None => error.to_string(),
                };
                fail(status_of(&error), &msg)
            }
        }
    })
}

/// Runs a verification suite, or `all`, with the same output as `tanlift verify`.
///
/// # Safety
/// `suite` must be a NUL-terminated string and `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn tl_verify(
    suite: *const c_char,
    seed: u64,
    trials: usize,
    format: TlFormat,
    report: *mut *mut c_char,
) -> TlStatus {
    if !report.is_null() {
        *report = ptr::null_mut();
    }
    guarded(|| {
        let name = match read_str(suite) {
            Ok(s) => s,
            Err(st) => return st,
        };
        let cfg = config(seed, trials, 0, 0);
        let reports = match verify::run(name, &cfg) {
            Ok(r) => r,
            Err(e) => return fail(status_of(&e), &e.to_string()),
        };
        let ok = reports.iter().all(|r| r.passed());
        let text = match format {
            TlFormat::Text => verify::report_text(&reports, &cfg),
            TlFormat::Json => json!({
                "schema": 1,
                "seed": cfg.seed,
                "dim": cfg.dim,
                "degree": cfg.degree,
                "trials": cfg.trials,
                "pass": ok,
                "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            })
            .to_string(),
        };
        hand_out(report, text);
        if ok {
            TlStatus::Ok
        } else {
            TlStatus::Failed
        }
    })
}

/// Message for the last error on this thread; empty after a successful call.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn tl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
