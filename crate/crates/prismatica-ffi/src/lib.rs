//! C interface: opaque simplicial-set handles, `i32` status codes and JSON
//! strings. Strings returned through `out_json` belong to the caller and are
//! released with [`prism_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde_json::{json, Value};

use prismatica::cli::fixtures::fixture;
use prismatica::cli::{construction_complex, homology_need, ConstructionArg};
use prismatica::simplicial_core::{verify_identities, OrderedComplex, SimplicialSet};

pub const PRISM_OK: i32 = 0;
/// A required pointer argument was null.
pub const PRISM_ERR_NULL: i32 = -1;
/// A string argument was not valid UTF-8.
pub const PRISM_ERR_UTF8: i32 = -2;
/// The input could not be parsed or named nothing known.
pub const PRISM_ERR_INVALID: i32 = -3;
/// The computation itself failed.
pub const PRISM_ERR_COMPUTE: i32 = -4;
/// A panic was caught at the boundary.
pub const PRISM_ERR_PANIC: i32 = -5;

/// Opaque simplicial set.
pub struct PrismSimplicialSet {
    inner: SimplicialSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(i32, String);

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> i32 {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PRISM_OK,
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(p) => {
            let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned());
            set_error(format!("panic: {}", msg.unwrap_or_default()));
            PRISM_ERR_PANIC
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(PRISM_ERR_NULL, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(PRISM_ERR_UTF8, format!("{what}: {e}")))
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure(PRISM_ERR_INVALID, e.to_string())
}

fn compute(e: impl std::fmt::Display) -> Failure {
    Failure(PRISM_ERR_COMPUTE, e.to_string())
}

unsafe fn write_handle(out: *mut *mut PrismSimplicialSet, s: SimplicialSet) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PRISM_ERR_NULL, "out is null".into()));
    }
    *out = Box::into_raw(Box::new(PrismSimplicialSet { inner: s }));
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, v: &Value) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(PRISM_ERR_NULL, "out_json is null".into()));
    }
    let text = serde_json::to_string(v).map_err(compute)?;
    *out = CString::new(text).map_err(compute)?.into_raw();
    Ok(())
}

unsafe fn handle<'a>(s: *const PrismSimplicialSet) -> Result<&'a SimplicialSet, Failure> {
    s.as_ref().map(|h| &h.inner).ok_or_else(|| Failure(PRISM_ERR_NULL, "handle is null".into()))
}

fn raise(s: SimplicialSet, d: usize) -> Result<SimplicialSet, Failure> {
    if d > s.truncation() {
        s.with_truncation(d).map_err(compute)
    } else {
        Ok(s)
    }
}

/// Builds a simplicial set from complex JSON (`{"vertices", "simplices"}`) or
/// simplicial-set JSON (`{"generators", ...}`), truncated at least at
/// `truncation`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn prism_simplicial_set_from_json(json: *const c_char, truncation: usize, out: *mut *mut PrismSimplicialSet) -> i32 {
    guard(|| {
        let text = read_str(json, "json")?;
        let v: Value = serde_json::from_str(text).map_err(invalid)?;
        let s = if v.get("generators").is_some() {
            SimplicialSet::from_json(&v).map_err(invalid)?
        } else {
            SimplicialSet::from_complex(&OrderedComplex::from_json(text).map_err(invalid)?).map_err(invalid)?
        };
        write_handle(out, raise(s, truncation)?)
    })
}

/// Builds one of the shipped fixtures (`circle`, `torus7`, ...).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn prism_simplicial_set_from_fixture(
    name: *const c_char,
    truncation: usize,
    out: *mut *mut PrismSimplicialSet,
) -> i32 {
    guard(|| {
        let name = read_str(name, "name")?;
        write_handle(out, fixture(name, truncation).map_err(invalid)?)
    })
}

/// # Safety
/// `s` must come from one of the constructors and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn prism_simplicial_set_free(s: *mut PrismSimplicialSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Truncation dimension of `s`, or `-1` for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn prism_simplicial_set_truncation(s: *const PrismSimplicialSet) -> i64 {
    s.as_ref().map_or(-1, |h| h.inner.truncation() as i64)
}

/// Checks the simplicial identities; writes the report as JSON.
///
/// # Safety
/// `s` must be a live handle and `out_json` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn prism_verify_identities(s: *const PrismSimplicialSet, out_json: *mut *mut c_char) -> i32 {
    guard(|| {
        let rep = verify_identities(handle(s)?);
        let body = json!({ "ok": rep.ok(), "identities": rep });
        write_json(out_json, &body)
    })
}

/// Integral homology of `construction` (`simplicial`, `P`, `Pbar` or `Pf`) up
/// to `max_degree`; writes one `{degree, betti, torsion, reliable}` entry per
/// degree.
///
/// # Safety
/// `s` must be a live handle, `construction` a NUL-terminated string and
/// `out_json` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn prism_homology(
    s: *const PrismSimplicialSet,
    construction: *const c_char,
    max_degree: usize,
    out_json: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let base = handle(s)?;
        let c = match read_str(construction, "construction")? {
            "simplicial" => ConstructionArg::Simplicial,
            "P" => ConstructionArg::P,
            "Pbar" => ConstructionArg::Pbar,
            "Pf" => ConstructionArg::Pf,
            other => return Err(invalid(format!("unknown construction {other:?}"))),
        };
        let s = raise(base.clone(), homology_need(c, max_degree))?;
        let h = construction_complex(&s, c, max_degree).and_then(|cx| cx.homology()).map_err(compute)?;
        write_json(out_json, &json!({ "homology": h }))
    })
}

/// Message for the last failing call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn prism_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `p` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn prism_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}
