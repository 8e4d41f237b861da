//! C ABI over the `twistder` kernel.
//!
//! Every function returns a [`TwdStatus`]; on failure a message is kept in
//! thread-local storage and can be read with [`twd_last_error`]. Strings
//! handed out through `char **` parameters are owned by the caller and must
//! be released with [`twd_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twistder::cli::{run_demo, run_fuzz, run_problem, Command, ProblemFile, Report};
use twistder::derlie::lie_algebra;
use twistder::dfield::Rationals;
use twistder::extend::{formula_extension_space, ExtensionProblem};
use twistder::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwdStatus {
    /// Success; for reports, every check passed.
    Ok = 0,
    /// A report was produced but some check failed.
    CheckFailed = 1,
    /// Malformed input or an input the operation cannot accept.
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// An internal panic was caught.
    Panic = 5,
}

/// Opaque parsed problem file.
pub struct TwdProblem {
    parsed: ProblemFile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: TwdStatus, msg: impl Into<String>) -> TwdStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> TwdStatus) -> TwdStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(TwdStatus::Panic, "internal panic"),
    }
}

/// # Safety
/// `p` is null or a valid nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, TwdStatus> {
    if p.is_null() {
        return Err(fail(TwdStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(TwdStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn hand_out(s: String, out: *mut *mut c_char) -> Result<(), TwdStatus> {
    let c = CString::new(s).map_err(|_| fail(TwdStatus::Panic, "report contains a nul byte"))?;
    // SAFETY: `out` was checked non-null by the caller.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn emit_report(r: Report, out: *mut *mut c_char) -> TwdStatus {
    let status = if r.passed() { TwdStatus::Ok } else { TwdStatus::CheckFailed };
    if status == TwdStatus::CheckFailed {
        set_error("some checks failed; see the report");
    }
    match hand_out(r.to_string(), out) {
        Ok(()) => status,
        Err(s) => s,
    }
}

fn input_error(e: Error) -> TwdStatus {
    fail(TwdStatus::InputError, e.to_string())
}

/// Parses a problem file. On success `*out` receives a handle to free with
/// [`twd_problem_free`].
///
/// # Safety
/// `text` is a nul-terminated string; `out` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn twd_problem_from_str(text: *const c_char, out: *mut *mut TwdProblem) -> TwdStatus {
    guard(|| {
        if out.is_null() {
            return fail(TwdStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match ProblemFile::parse(text) {
            Ok(parsed) => {
                *out = Box::into_raw(Box::new(TwdProblem { parsed }));
                TwdStatus::Ok
            }
            Err(e) => input_error(e),
        }
    })
}

/// # Safety
/// `p` is null or a handle from [`twd_problem_from_str`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn twd_problem_free(p: *mut TwdProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Runs `lie`, `validate`, `twist`, `extend` or `crosscheck` and writes the
/// report text to `*report`.
///
/// # Safety
/// `p` is a live handle; `command` a nul-terminated string; `report` valid.
#[no_mangle]
pub unsafe extern "C" fn twd_problem_run(
    p: *const TwdProblem,
    command: *const c_char,
    report: *mut *mut c_char,
) -> TwdStatus {
    guard(|| {
        if p.is_null() || report.is_null() {
            return fail(TwdStatus::NullPointer, "null handle or output pointer");
        }
        let command: Command = match read_str(command).map(str::parse) {
            Ok(Ok(c)) => c,
            Ok(Err(e)) => return input_error(e),
            Err(s) => return s,
        };
        match run_problem(command, &(*p).parsed, Report::new(command.name())) {
            Ok(r) => emit_report(r, report),
            Err(e) => input_error(e),
        }
    })
}

/// Runs a built-in demo.
///
/// # Safety
/// `name` is a nul-terminated string; `report` is valid.
#[no_mangle]
pub unsafe extern "C" fn twd_demo(name: *const c_char, report: *mut *mut c_char) -> TwdStatus {
    guard(|| {
        if report.is_null() {
            return fail(TwdStatus::NullPointer, "null output pointer");
        }
        match read_str(name) {
            Ok(name) => match run_demo(name) {
                Ok(r) => emit_report(r, report),
                Err(e) => input_error(e),
            },
            Err(s) => s,
        }
    })
}

/// Runs `n` seeded random conjugation cocycles.
///
/// # Safety
/// `report` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn twd_fuzz(n: usize, seed: u64, report: *mut *mut c_char) -> TwdStatus {
    guard(|| {
        if report.is_null() {
            return fail(TwdStatus::NullPointer, "null output pointer");
        }
        emit_report(run_fuzz(n, seed), report)
    })
}

/// Dimension of the Lie algebra of derivations of the `[algebra]` section.
///
/// # Safety
/// `p` is a live handle; `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn twd_lie_dimension(p: *const TwdProblem, out: *mut usize) -> TwdStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(TwdStatus::NullPointer, "null handle or output pointer");
        }
        match (*p).parsed.algebra() {
            Ok(a) => {
                *out = lie_algebra(&Rationals, a).basis().len();
                TwdStatus::Ok
            }
            Err(e) => input_error(e),
        }
    })
}

/// Dimension of the space of derivations of the twisted form extending
/// `d/dt`; `-1` when the space is empty.
///
/// # Safety
/// `p` is a live handle; `out` is valid.
#[no_mangle]
pub unsafe extern "C" fn twd_extension_dimension(p: *const TwdProblem, out: *mut i64) -> TwdStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(TwdStatus::NullPointer, "null handle or output pointer");
        }
        let parsed = &(*p).parsed;
        let problem = parsed
            .algebra()
            .and_then(|a| Ok((a.clone(), parsed.cocycle()?)))
            .and_then(|(a, cd)| ExtensionProblem::new(a, cd));
        match problem {
            Ok(problem) => {
                let space = formula_extension_space(&problem);
                *out = space.dimension().map_or(-1, |d| d as i64);
                TwdStatus::Ok
            }
            Err(e) => input_error(e),
        }
    })
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn twd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn twd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn twd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
