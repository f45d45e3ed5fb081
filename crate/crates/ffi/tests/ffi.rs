use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use monopole_ffi::*;

struct Session(*mut MonopoleSession);

impl Session {
    fn new(seed: u64) -> Self {
        Session(monopole_session_new(seed))
    }

    fn last_error(&self) -> String {
        unsafe { CStr::from_ptr(monopole_session_last_error(self.0)).to_string_lossy().into_owned() }
    }

    fn run(&self, args: &[&str]) -> (MonopoleStatus, *mut MonopoleReport) {
        let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
        let ptrs: Vec<*const c_char> = owned.iter().map(|c| c.as_ptr()).collect();
        let mut out = ptr::null_mut();
        let st = unsafe { monopole_run(self.0, ptrs.len(), ptrs.as_ptr(), &mut out) };
        (st, out)
    }

    fn render(&self, r: *const MonopoleReport, f: MonopoleFormat) -> String {
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { monopole_report_render(self.0, r, f, &mut s) }, MonopoleStatus::Ok);
        let text = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
        unsafe { monopole_string_free(s) };
        text
    }
}

impl Drop for Session {
    fn drop(&mut self) {
        unsafe { monopole_session_free(self.0) }
    }
}

#[test]
fn run_hands_out_a_report() {
    let s = Session::new(7);
    let (st, r) = s.run(&["separate", "--spin", "one", "--lambda", "1", "--j", "2", "--golden", "vector"]);
    assert_eq!(st, MonopoleStatus::Ok, "{}", s.last_error());
    assert!(unsafe { monopole_report_passed(r) });
    assert_eq!(s.last_error(), "");
    let v: serde_json::Value = serde_json::from_str(&s.render(r, MonopoleFormat::Json)).unwrap();
    assert_eq!(v["command"], "separate");
    assert_eq!(v["seed"], 7);
    assert!(s.render(r, MonopoleFormat::Text).contains("MATCH"));
    unsafe { monopole_report_free(r) };
}

#[test]
fn session_seed_and_explicit_seed() {
    let s = Session::new(11);
    let (_, r) = s.run(&["check-symmetry", "--case", "selfconj"]);
    let v: serde_json::Value = serde_json::from_str(&s.render(r, MonopoleFormat::Json)).unwrap();
    assert_eq!(v["seed"], 11);
    unsafe { monopole_report_free(r) };
    let (_, r) = s.run(&["check-symmetry", "--case", "selfconj", "--seed", "3"]);
    let v: serde_json::Value = serde_json::from_str(&s.render(r, MonopoleFormat::Json)).unwrap();
    assert_eq!(v["seed"], 3);
    unsafe { monopole_report_free(r) };
}

#[test]
fn failing_checks_still_return_the_report() {
    let s = Session::new(7);
    let (st, r) = s.run(&["check-symmetry", "--case", "k-operator"]);
    assert_eq!(st, MonopoleStatus::Failed);
    assert!(!r.is_null());
    assert!(!unsafe { monopole_report_passed(r) });
    unsafe { monopole_report_free(r) };
}

#[test]
fn errors_map_to_codes() {
    let s = Session::new(7);
    let (st, r) = s.run(&["separate", "--spin", "half", "--lambda", "0.25", "--j", "1"]);
    assert_eq!(st, MonopoleStatus::Quantization);
    assert!(r.is_null());
    assert!(s.last_error().contains("lambda"));
    assert_eq!(s.run(&["frobnicate"]).0, MonopoleStatus::Config);
    assert_eq!(s.run(&[]).0, MonopoleStatus::Config);
    assert_eq!(s.run(&["--list-cases"]).0, MonopoleStatus::Config);
    assert_eq!(s.run(&["verify-algebra", "--dump-fixture", "half"]).0, MonopoleStatus::Config);
    let (st, _) = s.run(&["separate", "--spin", "half", "--lambda", "1", "--j", "1.5"]);
    assert_eq!(st, MonopoleStatus::Ok);
    assert_eq!(s.last_error(), "");
}

#[test]
fn null_pointers_are_reported() {
    let s = Session::new(7);
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(monopole_run(ptr::null_mut(), 0, ptr::null(), &mut out), MonopoleStatus::NullPointer);
        assert_eq!(monopole_run(s.0, 1, ptr::null(), &mut out), MonopoleStatus::NullPointer);
        assert_eq!(monopole_run(s.0, 0, ptr::null(), ptr::null_mut()), MonopoleStatus::NullPointer);
        assert_eq!(monopole_selection_rules(s.0, ptr::null(), &mut out), MonopoleStatus::NullPointer);
        assert!(!monopole_report_passed(ptr::null()));
        assert!(monopole_session_last_error(ptr::null()).is_null());
        let mut txt = ptr::null_mut();
        assert_eq!(
            monopole_report_render(s.0, ptr::null(), MonopoleFormat::Text, &mut txt),
            MonopoleStatus::NullPointer
        );
        monopole_report_free(ptr::null_mut());
        monopole_string_free(ptr::null_mut());
        monopole_session_free(ptr::null_mut());
    }
    let bad = [0xffu8, 0];
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { monopole_selection_rules(s.0, bad.as_ptr().cast(), &mut out) },
        MonopoleStatus::InvalidUtf8
    );
}

#[test]
fn selection_and_algebra_entry_points() {
    let s = Session::new(7);
    let cfg = CString::new(r#"{"kind": "neutral", "j_max": "3/2"}"#).unwrap();
    let mut r = ptr::null_mut();
    assert_eq!(
        unsafe { monopole_selection_rules(s.0, cfg.as_ptr(), &mut r) },
        MonopoleStatus::Ok,
        "{}",
        s.last_error()
    );
    unsafe { monopole_report_free(r) };
    let cfg = CString::new(r#"{"kind": "neutral", "colour": 1}"#).unwrap();
    assert_eq!(unsafe { monopole_selection_rules(s.0, cfg.as_ptr(), &mut r) }, MonopoleStatus::Json);

    assert_eq!(unsafe { monopole_verify_algebra(s.0, ptr::null(), &mut r) }, MonopoleStatus::Ok);
    assert!(s.render(r, MonopoleFormat::Markdown).contains('|'));
    unsafe { monopole_report_free(r) };
    let fixture = CString::new(r#"{"spin": "1/2", "gammas": []}"#).unwrap();
    assert_eq!(unsafe { monopole_verify_algebra(s.0, fixture.as_ptr(), &mut r) }, MonopoleStatus::Shape);
}

#[test]
fn wigner_d() {
    let mut d = 0.0;
    unsafe {
        assert_eq!(monopole_wigner_d(1, 1, -1, 0.4, &mut d), MonopoleStatus::Ok);
        assert!((d + (0.2f64).sin()).abs() < 1e-15);
        assert_eq!(monopole_wigner_d(1, 2, 1, 0.4, &mut d), MonopoleStatus::Domain);
        assert_eq!(monopole_wigner_d(2, 4, 0, 0.4, &mut d), MonopoleStatus::Domain);
        assert_eq!(monopole_wigner_d(2, 0, 0, f64::NAN, &mut d), MonopoleStatus::Domain);
        assert_eq!(monopole_wigner_d(2, 0, 0, 0.1, ptr::null_mut()), MonopoleStatus::NullPointer);
    }
    assert!(unsafe { CStr::from_ptr(monopole_version()) }.to_str().unwrap().starts_with("0."));
}

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_entry_point() {
    let h = std::fs::read_to_string(manifest().join("include/monopole.h")).unwrap();
    let src = std::fs::read_to_string(manifest().join("src/lib.rs")).unwrap();
    let names: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|r| r.split('(').next().unwrap())
        .collect();
    assert!(names.len() >= 10);
    for n in names {
        assert!(h.contains(&format!("{n}(")), "{n} missing from the header");
    }
    assert!(h.contains("typedef struct MonopoleSession MonopoleSession;"));
}

/// Static library built alongside the test binary; the copy one level up
/// is only refreshed by `cargo build`.
fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let p = exe.parent()?.join("libmonopole_ffi.a");
    p.exists().then_some(p)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("no static library next to the test binary; skipped");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipped");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("c_api");
    let st = Command::new("cc")
        .args(["-std=c11", "-Wall", "-Werror", "-I"])
        .arg(manifest().join("include"))
        .arg(manifest().join("tests/c_api.c"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}
