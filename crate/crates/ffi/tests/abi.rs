use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use tanlift_ffi::*;

fn take(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { tl_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tl_last_error()) }.to_str().unwrap().to_owned()
}

fn eval(s: *mut TlSession, src: &str, format: TlFormat) -> (TlStatus, Option<String>) {
    let src = CString::new(src).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { tl_session_eval(s, src.as_ptr(), format, &mut out) };
    (st, (!out.is_null()).then(|| take(out)))
}

#[test]
fn sessions_keep_declarations_between_calls() {
    let s = tl_session_new(7);
    let (st, _) = eval(s, "chart M(x, y); poisson L on M = x^2 * @x^@y;", TlFormat::Text);
    assert_eq!(st, TlStatus::Ok);
    let (st, r) = eval(s, "bracket L x y;", TlFormat::Text);
    assert_eq!(st, TlStatus::Ok);
    assert!(r.unwrap().contains("x^2"));
    let (st, r) = eval(s, "show L;", TlFormat::Json);
    assert_eq!(st, TlStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&r.unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    unsafe { tl_session_free(s) };
}

#[test]
fn errors_map_to_status_codes() {
    let s = tl_session_new(7);
    assert_eq!(eval(s, "chart M(x", TlFormat::Text).0, TlStatus::Syntax);
    assert!(last_error().contains("syntax"));
    assert_eq!(eval(s, "show nothing;", TlFormat::Text).0, TlStatus::Name);
    let (st, partial) =
        eval(s, "chart M(x,y,z); show M; poisson P on M = (x+y) * @x^@y + @y^@z - @z^@x;", TlFormat::Text);
    assert_eq!(st, TlStatus::Jacobi);
    assert!(last_error().starts_with("statement 3"));
    assert!(partial.unwrap().starts_with("[2] show M"));
    let (st, r) = eval(s, "mv B : 2 on M = (x+y) * @x^@y + @y^@z - @z^@x; jacobi B;", TlFormat::Text);
    assert_eq!(st, TlStatus::Failed);
    assert!(r.unwrap().contains("witness"));
    assert_eq!(last_error(), "");
    unsafe { tl_session_free(s) };
}

#[test]
fn null_and_bad_arguments_are_rejected() {
    let mut out = ptr::null_mut();
    let src = CString::new("show M;").unwrap();
    assert_eq!(
        unsafe { tl_session_eval(ptr::null_mut(), src.as_ptr(), TlFormat::Text, &mut out) },
        TlStatus::NullArgument
    );
    let s = tl_session_new(1);
    assert_eq!(unsafe { tl_session_eval(s, ptr::null(), TlFormat::Text, &mut out) }, TlStatus::NullArgument);
    let bad = [0xffu8, 0xfe, 0];
    assert_eq!(unsafe { tl_session_eval(s, bad.as_ptr().cast(), TlFormat::Text, &mut out) }, TlStatus::InvalidUtf8);
    assert!(out.is_null());
    unsafe {
        tl_session_free(s);
        tl_session_free(ptr::null_mut());
        tl_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_matches_the_library() {
    let name = CString::new("lift-schouten").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { tl_verify(name.as_ptr(), 7, 9, TlFormat::Text, &mut out) }, TlStatus::Ok);
    let cfg = tanlift::verify::Config { seed: 7, trials: Some(9), ..Default::default() };
    let want = tanlift::verify::report_text(&tanlift::verify::run("lift-schouten", &cfg).unwrap(), &cfg);
    assert_eq!(take(out), want);
    let unknown = CString::new("nope").unwrap();
    assert_eq!(unsafe { tl_verify(unknown.as_ptr(), 7, 0, TlFormat::Json, &mut out) }, TlStatus::Name);
    assert!(out.is_null());
}

#[test]
fn header_declares_the_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/tanlift.h")).unwrap();
    for f in [
        "tl_session_new",
        "tl_session_new_with",
        "tl_session_free",
        "tl_session_eval",
        "tl_verify",
        "tl_last_error",
        "tl_string_free",
        "tl_version",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct TlSession TlSession;"));
}

/// Builds the C example against the static library and runs it.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/abi-* -> target/<profile>
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libtanlift_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let exe = profile_dir.join("tanlift_ffi_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("examples/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "cc failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains(" ok"));
}
