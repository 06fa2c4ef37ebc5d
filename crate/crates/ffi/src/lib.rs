//! C interface to `vecchoose`.
//!
//! Objects are opaque handles released with their `_free` function. Every
//! call returns a [`VcStatus`]; on failure [`vc_last_error`] returns the
//! message of the most recent error on the calling thread. Strings handed out
//! by the library must be released with [`vc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use vecchoose::constructions::cycle_bad_assignment;
use vecchoose::engine::{find_choice, verify_choice, Choice, SearchOptions, SubspaceAssignment, Verdict};
use vecchoose::fields::FieldSpec;
use vecchoose::graphs::{parse_graph, write_graph};
use vecchoose::hardness::{build_reduction, parse_dimacs};
use vecchoose::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    BudgetExceeded = 5,
    NotApplicable = 6,
    Internal = 7,
}

/// Outcome of [`vc_find_choice`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VcVerdict {
    Choosable = 0,
    NoChoice = 1,
    Inconclusive = 2,
}

/// A graph together with a subspace assignment.
pub struct VcAssignment {
    inner: SubspaceAssignment,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VcStatus {
    match e {
        Error::Parse { .. } | Error::ClauseArity { .. } | Error::RepeatedVariable { .. } => VcStatus::Parse,
        Error::BudgetExceeded(_) => VcStatus::BudgetExceeded,
        Error::NotApplicable(_) | Error::NotBipartite => VcStatus::NotApplicable,
        Error::Internal(_) => VcStatus::Internal,
        _ => VcStatus::InvalidArgument,
    }
}

struct Fail(VcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> VcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VcStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("panic inside vecchoose");
            VcStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(VcStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(VcStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn out_ptr<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(VcStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

unsafe fn handle<'a>(h: *const VcAssignment) -> Result<&'a VcAssignment, Fail> {
    h.as_ref()
        .ok_or_else(|| Fail(VcStatus::NullPointer, "assignment handle is null".into()))
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).expect("library text has no nul").into_raw()
}

fn boxed(a: SubspaceAssignment) -> *mut VcAssignment {
    Box::into_raw(Box::new(VcAssignment { inner: a }))
}

/// Message of the last failed call on this thread, or null. Release with
/// [`vc_string_free`].
#[no_mangle]
pub extern "C" fn vc_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn vc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph file and an assignment file (the CLI text formats).
///
/// # Safety
/// Both strings must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vc_assignment_parse(
    graph_text: *const c_char,
    assignment_text: *const c_char,
    out: *mut *mut VcAssignment,
) -> VcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let g = parse_graph(text(graph_text, "graph_text")?)?;
        let a = SubspaceAssignment::parse(g, text(assignment_text, "assignment_text")?)?;
        *out = boxed(a);
        Ok(())
    })
}

/// Planes on the cycle `C_len` admitting no valid choice; `field` is a
/// prime or `"Q"`.
///
/// # Safety
/// `field` must be nul-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vc_construct_cycle(len: usize, field: *const c_char, out: *mut *mut VcAssignment) -> VcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let f: FieldSpec = text(field, "field")?.parse()?;
        *out = boxed(cycle_bad_assignment(len, f)?);
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn vc_assignment_free(h: *mut VcAssignment) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vc_assignment_vertex_count(h: *const VcAssignment, out: *mut usize) -> VcStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = handle(h)?.inner.graph().n();
        Ok(())
    })
}

/// Graph and assignment texts of a handle.
///
/// # Safety
/// `h` must be a live handle; both out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn vc_assignment_to_text(
    h: *const VcAssignment,
    out_graph: *mut *mut c_char,
    out_assignment: *mut *mut c_char,
) -> VcStatus {
    guard(|| {
        out_ptr(out_graph, "out_graph")?;
        out_ptr(out_assignment, "out_assignment")?;
        let a = &handle(h)?.inner;
        *out_graph = owned(write_graph(a.graph()));
        *out_assignment = owned(a.to_text());
        Ok(())
    })
}

/// Exhaustive search over a finite field. `node_budget` and `seconds` of
/// 0 mean unlimited. The certificate text is written to
/// `out_certificate` when it is not null.
///
/// # Safety
/// `h` must be a live handle; `out_verdict` must be writable.
#[no_mangle]
pub unsafe extern "C" fn vc_find_choice(
    h: *const VcAssignment,
    node_budget: u64,
    seconds: u64,
    out_verdict: *mut VcVerdict,
    out_certificate: *mut *mut c_char,
) -> VcStatus {
    guard(|| {
        out_ptr(out_verdict, "out_verdict")?;
        let opts = SearchOptions {
            node_budget: (node_budget > 0).then_some(node_budget),
            time_budget: (seconds > 0).then(|| Duration::from_secs(seconds)),
            ..SearchOptions::default()
        };
        let cert = find_choice(&handle(h)?.inner, &opts)?;
        *out_verdict = match cert.verdict {
            Verdict::Choosable(_) => VcVerdict::Choosable,
            Verdict::NoChoice => VcVerdict::NoChoice,
            Verdict::Inconclusive(_) => VcVerdict::Inconclusive,
        };
        if !out_certificate.is_null() {
            *out_certificate = owned(cert.to_text());
        }
        Ok(())
    })
}

/// Checks a choice file against the assignment; `out_valid` is set to
/// whether it is valid, and the reason is kept as the last error otherwise.
///
/// # Safety
/// `h` must be a live handle, `choice_text` nul-terminated, `out_valid`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn vc_verify_choice(
    h: *const VcAssignment,
    choice_text: *const c_char,
    out_valid: *mut bool,
) -> VcStatus {
    guard(|| {
        out_ptr(out_valid, "out_valid")?;
        let a = &handle(h)?.inner;
        let (_, _, c) = Choice::parse(text(choice_text, "choice_text")?, a.graph().n())?;
        match verify_choice(a, &c)? {
            None => *out_valid = true,
            Some(v) => {
                *out_valid = false;
                set_error(&v.to_string());
            }
        }
        Ok(())
    })
}

/// Graph text of `G_φ` for a DIMACS 3-CNF.
///
/// # Safety
/// `cnf_text` must be nul-terminated; `out_graph` writable.
#[no_mangle]
pub unsafe extern "C" fn vc_reduce_dimacs(cnf_text: *const c_char, out_graph: *mut *mut c_char) -> VcStatus {
    guard(|| {
        out_ptr(out_graph, "out_graph")?;
        let r = build_reduction(&parse_dimacs(text(cnf_text, "cnf_text")?)?);
        *out_graph = owned(write_graph(&r.graph));
        Ok(())
    })
}
