//! C interface to `monopole-core`.
//!
//! Every entry point returns a [`MonopoleStatus`]. Reports and strings handed
//! out through `out` pointers belong to the caller and are released with
//! [`monopole_report_free`] and [`monopole_string_free`]. The message of the
//! last failure is kept on the session until the next call.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use monopole_core::algebra::Backend;
use monopole_core::cli::{report_for, selection_rules_cmd, verify_algebra_cmd, Format, Report, SelectionConfig};
use monopole_core::wigner::{d_small, HalfInt, Label};
use monopole_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonopoleStatus {
    Ok = 0,
    /// The command ran and its checks failed; the report is still handed out.
    Failed = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Shape = 4,
    Domain = 5,
    Quantization = 6,
    Certification = 7,
    Snap = 8,
    Mismatch = 9,
    Integration = 10,
    Config = 11,
    Io = 12,
    Json = 13,
    Csv = 14,
    Panic = 15,
}

impl From<&Error> for MonopoleStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Shape(_) => MonopoleStatus::Shape,
            Error::Domain(_) => MonopoleStatus::Domain,
            Error::Quantization(_) => MonopoleStatus::Quantization,
            Error::Certification(_) => MonopoleStatus::Certification,
            Error::Snap { .. } => MonopoleStatus::Snap,
            Error::Mismatch(_) => MonopoleStatus::Mismatch,
            Error::Integration(_) => MonopoleStatus::Integration,
            Error::Config(_) => MonopoleStatus::Config,
            Error::Io(_) => MonopoleStatus::Io,
            Error::Json(_) => MonopoleStatus::Json,
            Error::Csv(_) => MonopoleStatus::Csv,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonopoleFormat {
    Text = 0,
    Json = 1,
    Markdown = 2,
    Csv = 3,
}

impl From<MonopoleFormat> for Format {
    fn from(f: MonopoleFormat) -> Self {
        match f {
            MonopoleFormat::Text => Format::Text,
            MonopoleFormat::Json => Format::Json,
            MonopoleFormat::Markdown => Format::Markdown,
            MonopoleFormat::Csv => Format::Csv,
        }
    }
}

/// Seed and last error message shared by calls.
pub struct MonopoleSession {
    seed: u64,
    last_error: CString,
}

/// Result of one command.
pub struct MonopoleReport {
    report: Report,
}

struct Failure(MonopoleStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(MonopoleStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(MonopoleStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(MonopoleStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn to_cstring(s: String) -> CString {
    CString::new(s).unwrap_or_else(|e| {
        let n = e.nul_position();
        let mut v = e.into_vec();
        v.truncate(n);
        CString::new(v).expect("truncated at the first nul")
    })
}

/// Runs `f`, records its failure on the session and turns panics into `Panic`.
unsafe fn call(session: *mut MonopoleSession, f: impl FnOnce(u64) -> Result<MonopoleStatus, Failure>) -> MonopoleStatus {
    let Some(s) = session.as_mut() else {
        return MonopoleStatus::NullPointer;
    };
    let seed = s.seed;
    let r = catch_unwind(AssertUnwindSafe(|| f(seed))).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|m| m.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_default();
        Err(Failure(MonopoleStatus::Panic, format!("panic: {msg}")))
    });
    match r {
        Ok(st) => {
            s.last_error = CString::default();
            st
        }
        Err(Failure(st, msg)) => {
            s.last_error = to_cstring(msg);
            st
        }
    }
}

unsafe fn hand_out(out: *mut *mut MonopoleReport, r: monopole_core::Result<Report>) -> Result<MonopoleStatus, Failure> {
    let report = r?;
    let st = if report.passed { MonopoleStatus::Ok } else { MonopoleStatus::Failed };
    *out = Box::into_raw(Box::new(MonopoleReport { report }));
    Ok(st)
}

/// Version of the library as a static string.
#[no_mangle]
pub extern "C" fn monopole_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub extern "C" fn monopole_session_new(seed: u64) -> *mut MonopoleSession {
    Box::into_raw(Box::new(MonopoleSession {
        seed,
        last_error: CString::default(),
    }))
}

/// # Safety
/// `session` must come from [`monopole_session_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn monopole_session_free(session: *mut MonopoleSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Message of the last failure, empty after a successful call. Valid until
/// the next call on the session.
///
/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn monopole_session_last_error(session: *const MonopoleSession) -> *const c_char {
    match session.as_ref() {
        Some(s) => s.last_error.as_ptr(),
        None => ptr::null(),
    }
}

/// Runs a command given as command-line arguments without the program name,
/// e.g. `{"separate", "--spin", "half", "--lambda", "1", "--j", "1.5"}`.
/// The session seed applies unless `--seed` is among the arguments.
///
/// # Safety
/// `argv` must hold `argc` valid C strings and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn monopole_run(session: *mut MonopoleSession, argc: usize, argv: *const *const c_char, out: *mut *mut MonopoleReport) -> MonopoleStatus {
    call(session, |seed| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if argv.is_null() && argc > 0 {
            return Err(null("argv"));
        }
        let mut args = vec!["monopole".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i), "argument")?.to_string());
        }
        if !args.iter().any(|a| a == "--seed" || a.starts_with("--seed=")) {
            args.push("--seed".into());
            args.push(seed.to_string());
        }
        hand_out(out, report_for(args))
    })
}

/// Selection-rule sweep from a JSON config.
///
/// # Safety
/// `config_json` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn monopole_selection_rules(session: *mut MonopoleSession, config_json: *const c_char, out: *mut *mut MonopoleReport) -> MonopoleStatus {
    call(session, |seed| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let cfg = SelectionConfig::from_json(text(config_json, "config")?)?;
        hand_out(out, selection_rules_cmd(&cfg, seed))
    })
}

/// Algebra identities of the built-in representations, exactly, or of the
/// matrices in `fixture_json` in floating point when it is not null.
///
/// # Safety
/// `fixture_json` must be null or a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn monopole_verify_algebra(session: *mut MonopoleSession, fixture_json: *const c_char, out: *mut *mut MonopoleReport) -> MonopoleStatus {
    call(session, |seed| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let fixture = if fixture_json.is_null() { None } else { Some(text(fixture_json, "fixture")?) };
        hand_out(out, verify_algebra_cmd(Backend::Exact, fixture, seed))
    })
}

/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn monopole_report_passed(report: *const MonopoleReport) -> bool {
    report.as_ref().is_some_and(|r| r.report.passed)
}

/// Renders a report; free the string with [`monopole_string_free`].
///
/// # Safety
/// `report` must be a live report and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn monopole_report_render(
    session: *mut MonopoleSession,
    report: *const MonopoleReport,
    format: MonopoleFormat,
    out: *mut *mut c_char,
) -> MonopoleStatus {
    call(session, |_| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        *out = to_cstring(r.report.render(format.into())?).into_raw();
        Ok(MonopoleStatus::Ok)
    })
}

/// # Safety
/// `report` must be null or come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn monopole_report_free(report: *mut MonopoleReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be null or a string handed out by this library.
#[no_mangle]
pub unsafe extern "C" fn monopole_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Small Wigner function `d^j_{m' s}(theta)` with doubled labels, so
/// `j2 = 2j`. Invalid labels give `MONOPOLE_STATUS_DOMAIN`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn monopole_wigner_d(j2: i32, mp2: i32, s2: i32, theta: f64, out: *mut f64) -> MonopoleStatus {
    if out.is_null() {
        return MonopoleStatus::NullPointer;
    }
    let (j, mp, s) = (HalfInt(j2), HalfInt(mp2), HalfInt(s2));
    if !Label::new(j, mp, s).is_valid() || !theta.is_finite() {
        return MonopoleStatus::Domain;
    }
    *out = d_small(j, mp, s, theta);
    MonopoleStatus::Ok
}
