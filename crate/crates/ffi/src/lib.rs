//! C ABI over `orbithull`.
//!
//! Every fallible call returns an [`OhStatus`]. On failure a message is
//! available from [`oh_last_error`] on the same thread until the next call.
//! Strings returned through `out` pointers are owned by the caller and must be
//! released with [`oh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbithull::io::{self, ProblemSpec};
use orbithull::{compare_lattices, DominantPoint, Error, RennerMonoid};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OhStatus {
    Ok = 0,
    /// A required pointer was null or a string was not UTF-8.
    InvalidArgument = 1,
    /// Malformed JSON or element syntax.
    ParseError = 2,
    /// Well-formed input that violates a precondition.
    ValidationError = 3,
    /// The requested computation needs a finite Weyl group.
    FiniteTypeRequired = 4,
    /// A verification ran and found a mismatch.
    CheckFailed = 5,
    /// An internal panic was caught at the boundary.
    Internal = 6,
}

/// Opaque validated problem: a realization and a dominant point.
pub struct OhProblem {
    doc: ProblemSpec,
    point: Option<DominantPoint>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(err: &Error) -> OhStatus {
    match err {
        Error::Parse(_) | Error::ElementParse(_) => OhStatus::ParseError,
        Error::FiniteTypeRequired { .. } => OhStatus::FiniteTypeRequired,
        _ => OhStatus::ValidationError,
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), OhStatus>) -> OhStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OhStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal error");
            OhStatus::Internal
        }
    }
}

fn fail(err: Error) -> OhStatus {
    set_error(err.to_string());
    status_of(&err)
}

/// # Safety
/// `s` is null or a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, OhStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(OhStatus::InvalidArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        OhStatus::InvalidArgument
    })
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), OhStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(OhStatus::InvalidArgument);
    }
    *out = CString::new(text).expect("JSON has no interior NUL").into_raw();
    Ok(())
}

/// # Safety
/// `p` is null or a live handle.
unsafe fn problem<'a>(p: *const OhProblem) -> Result<&'a OhProblem, OhStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null problem handle");
        OhStatus::InvalidArgument
    })
}

fn point(p: &OhProblem) -> Result<&DominantPoint, OhStatus> {
    p.point.as_ref().ok_or_else(|| {
        set_error("the document has no \"mu\"");
        OhStatus::ValidationError
    })
}

/// Parses and validates a problem document.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oh_problem_new(json: *const c_char, out: *mut *mut OhProblem) -> OhStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return Err(OhStatus::InvalidArgument);
        }
        *out = ptr::null_mut();
        let text = read_str(json)?;
        let doc = ProblemSpec::parse(text).map_err(fail)?;
        let point = doc.mu.as_ref().map(|_| doc.dominant_point()).transpose().map_err(fail)?;
        *out = Box::into_raw(Box::new(OhProblem { doc, point }));
        Ok(())
    })
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
/// `p` is null or was returned by [`oh_problem_new`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oh_problem_free(p: *mut OhProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Classification report as JSON.
///
/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oh_classify(p: *const OhProblem, out: *mut *mut c_char) -> OhStatus {
    guard(|| {
        let p = problem(p)?;
        let v = io::classification_json(&p.doc).map_err(fail)?;
        write_string(out, v.to_string())
    })
}

/// Number of faces reachable within `bound`, and whether that is all of them.
///
/// # Safety
/// `p` is a live handle; `count` and `complete` are valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oh_face_count(
    p: *const OhProblem,
    bound: usize,
    count: *mut usize,
    complete: *mut bool,
) -> OhStatus {
    guard(|| {
        let dp = point(problem(p)?)?;
        if count.is_null() || complete.is_null() {
            set_error("null output pointer");
            return Err(OhStatus::InvalidArgument);
        }
        let en = dp.enumerate_faces(bound);
        *count = en.faces.len();
        *complete = en.complete;
        Ok(())
    })
}

/// Faces within `bound` as a JSON array of `{"sigma", "I", "dim"}`.
///
/// # Safety
/// `p` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oh_faces_json(p: *const OhProblem, bound: usize, out: *mut *mut c_char) -> OhStatus {
    guard(|| {
        let dp = point(problem(p)?)?;
        write_string(out, io::faces_json(&dp.enumerate_faces(bound).faces).to_string())
    })
}

/// Product of two Renner monoid elements given in the JSON element syntax.
///
/// # Safety
/// `p` is a live handle; `x`, `y` are NUL-terminated; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn oh_renner_multiply(
    p: *const OhProblem,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> OhStatus {
    guard(|| {
        let dp = point(problem(p)?)?;
        let monoid = RennerMonoid::new(dp.clone()).map_err(fail)?;
        let a = io::parse_element(&monoid, read_str(x)?).map_err(fail)?;
        let b = io::parse_element(&monoid, read_str(y)?).map_err(fail)?;
        write_string(out, io::element_json(&monoid.multiply(&a, &b)).to_string())
    })
}

/// Certifies the face lattice against exact convex hulls over the document's slice.
/// Returns [`OhStatus::CheckFailed`] on any mismatch.
///
/// # Safety
/// `p` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn oh_oracle(p: *const OhProblem) -> OhStatus {
    guard(|| {
        let p = problem(p)?;
        let report = compare_lattices(point(p)?, p.doc.slice).map_err(fail)?;
        if report.passed() {
            Ok(())
        } else {
            set_error(report.to_string());
            Err(OhStatus::CheckFailed)
        }
    })
}

/// Message for the last failure on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn oh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
