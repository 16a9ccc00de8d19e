//! C interface: opaque graph handles, status codes and owned strings.
//!
//! Every fallible call returns a [`PcStatus`]; on failure the message is
//! kept per thread and read back with [`pc_last_error`]. Strings returned
//! through out-pointers are owned by the caller and released with
//! [`pc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use plane_condense::aztec::{build_aztec, Weighting};
use plane_condense::campaign::{run_campaign, Campaign, Identity};
use plane_condense::graph::PlaneGraph;
use plane_condense::matching::{matching_sum, Method};
use plane_condense::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Unsupported = 4,
    Limit = 5,
    InvalidArgument = 6,
    IdentityFailed = 7,
}

/// How a matching sum is computed.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcMethod {
    Brute = 0,
    Fkt = 1,
    Auto = 2,
}

/// Opaque plane graph.
pub struct PcGraph {
    inner: PlaneGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> PcStatus {
    match e {
        Error::PolynomialWeights | Error::NegativeWeight(_) => PcStatus::Unsupported,
        Error::OrderTooLarge { .. } | Error::ResultTooLarge { .. } => PcStatus::Limit,
        Error::InvalidOrder { .. } => PcStatus::InvalidArgument,
        _ => PcStatus::Parse,
    }
}

fn fail(e: Error) -> PcStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PcStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(PcStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        PcStatus::InvalidUtf8
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> PcStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            PcStatus::Ok
        }
        Err(_) => {
            set_error("result contains a nul byte");
            PcStatus::InvalidArgument
        }
    }
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a graph file.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_graph_from_json(json: *const c_char, out: *mut *mut PcGraph) -> PcStatus {
    if out.is_null() {
        set_error("null output pointer");
        return PcStatus::NullPointer;
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match PlaneGraph::from_json(text) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(PcGraph { inner: g }));
            PcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Aztec diamond of order `n`; `start` 0 gives unit weights, 1 or 2 the
/// variable weights whose first column has that index.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_aztec_graph(n: u32, start: u32, out: *mut *mut PcGraph) -> PcStatus {
    if out.is_null() {
        set_error("null output pointer");
        return PcStatus::NullPointer;
    }
    let weighting = match start {
        0 => Weighting::Unit,
        1 | 2 => Weighting::Stanley(start as usize),
        _ => {
            set_error(format!("start must be 0, 1 or 2, got {start}"));
            return PcStatus::InvalidArgument;
        }
    };
    match build_aztec(n as usize).and_then(|a| a.weighted(weighting)) {
        Ok(a) => {
            *out = Box::into_raw(Box::new(PcGraph { inner: a.graph().clone() }));
            PcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Releases a graph. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_graph_free(g: *mut PcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph.
#[no_mangle]
pub unsafe extern "C" fn pc_graph_vertex_count(g: *const PcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.vertex_count())
}

/// Number of edges, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph.
#[no_mangle]
pub unsafe extern "C" fn pc_graph_edge_count(g: *const PcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// Graph file text of `g`.
///
/// # Safety
/// `g` must be a live graph and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_graph_to_json(g: *const PcGraph, out: *mut *mut c_char) -> PcStatus {
    match (g.as_ref(), out.is_null()) {
        (Some(g), false) => give_string(g.inner.to_json(), out),
        _ => {
            set_error("null argument");
            PcStatus::NullPointer
        }
    }
}

/// Matching sum of `g` in canonical text form.
///
/// # Safety
/// `g` must be a live graph and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn pc_matching_sum(g: *const PcGraph, method: PcMethod, out: *mut *mut c_char) -> PcStatus {
    let Some(g) = g.as_ref() else {
        set_error("null graph");
        return PcStatus::NullPointer;
    };
    if out.is_null() {
        set_error("null output pointer");
        return PcStatus::NullPointer;
    }
    let method = match method {
        PcMethod::Brute => Method::Brute,
        PcMethod::Fkt => Method::Fkt,
        PcMethod::Auto => Method::Auto,
    };
    match matching_sum(&g.inner, method) {
        Ok(w) => give_string(w.to_string(), out),
        Err(e) => fail(e),
    }
}

/// Runs `trials` random instances of the named identity and reports the
/// pass and fail counts. Returns `IdentityFailed` when any report fails.
///
/// # Safety
/// `identity` must be a nul-terminated string; `passed` and `failed` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn pc_verify(
    identity: *const c_char,
    trials: u32,
    seed: u64,
    passed: *mut u64,
    failed: *mut u64,
) -> PcStatus {
    if passed.is_null() || failed.is_null() {
        set_error("null output pointer");
        return PcStatus::NullPointer;
    }
    let name = match read_str(identity) {
        Ok(n) => n,
        Err(s) => return s,
    };
    let identity: Identity = match name.parse() {
        Ok(i) => i,
        Err(msg) => {
            set_error(msg);
            return PcStatus::InvalidArgument;
        }
    };
    if trials == 0 {
        set_error("trials must be at least 1");
        return PcStatus::InvalidArgument;
    }
    match run_campaign(&Campaign::new(identity, trials as usize, seed)) {
        Ok(result) => {
            let pass = result.reports.iter().filter(|r| r.pass).count() as u64;
            *passed = pass;
            *failed = result.reports.len() as u64 - pass;
            if result.all_pass() {
                PcStatus::Ok
            } else {
                set_error(format!("{} of {} reports failed", *failed, result.reports.len()));
                PcStatus::IdentityFailed
            }
        }
        Err(e) => fail(e),
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
