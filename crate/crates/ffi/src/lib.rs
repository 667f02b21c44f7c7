//! C interface to the dpcolor engine.
//!
//! Every object crosses the boundary as an opaque pointer owned by the
//! caller and released with its `_free` function. Functions return a
//! [`DpStatus`]; on failure the message is kept per thread and read with
//! [`dp_last_error`]. Strings returned to C are released with
//! [`dp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dpcolor::cover::{random_assignment, MLColoring, MatchingAssignment};
use dpcolor::graph::{is_mp2, Graph};
use dpcolor::mp2::cases::Params;
use dpcolor::mp2::{catalog, color_mp2};
use dpcolor::pipeline::{color_diam2, Certificate};
use dpcolor::solver::{dp_chromatic_number_exact, solve_exact, verify_coloring};
use dpcolor::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpStatus {
    Ok = 0,
    /// Input outside what the engine handles: non-planar, diameter above
    /// two, out-of-range parameters, size guards.
    Refused = 1,
    /// A runtime check inside the engine failed.
    Internal = 2,
    Parse = 3,
    InvalidArgument = 4,
    NullPointer = 5,
    Panic = 6,
}

pub struct DpGraph(Graph);

pub struct DpAssignment(MatchingAssignment);

pub struct DpColoring {
    coloring: MLColoring,
    certificate: Option<Certificate>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DpStatus {
    match e {
        Error::Refused(_) => DpStatus::Refused,
        Error::Consistency(_) | Error::CaseFailed { .. } => DpStatus::Internal,
        Error::Parse(_) | Error::Json(_) | Error::SelfLoop(_) | Error::UnknownVertex(_) => DpStatus::Parse,
        _ => DpStatus::InvalidArgument,
    }
}

fn guard(body: impl FnOnce() -> Result<(), (DpStatus, String)>) -> DpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => DpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside dpcolor".into());
            DpStatus::Panic
        }
    }
}

fn engine(e: Error) -> (DpStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (DpStatus, String) {
    (DpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DpStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (DpStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, (DpStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn out_ptr<T>(out: *mut T, what: &str) -> Result<(), (DpStatus, String)> {
    if out.is_null() {
        Err(null(what))
    } else {
        Ok(())
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn dp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn dp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the edge-list format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_graph_parse(text: *const c_char, out: *mut *mut DpGraph) -> DpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let g = Graph::parse_edge_list(self::text(text, "text")?).map_err(engine)?;
        *out = Box::into_raw(Box::new(DpGraph(g)));
        Ok(())
    })
}

/// A catalog graph. `params` is `n=2,m=1` style text or null for the
/// smallest valid parameters.
///
/// # Safety
/// `name` must be a nul-terminated string, `params` one or null, and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dp_catalog_graph(
    name: *const c_char,
    params: *const c_char,
    out: *mut *mut DpGraph,
) -> DpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let name = text(name, "name")?;
        let p = if params.is_null() {
            catalog::min_params(name)
        } else {
            let mut p = Params::new();
            for kv in text(params, "params")?.split(',').filter(|s| !s.trim().is_empty()) {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| (DpStatus::Parse, format!("parameter `{kv}` is not key=value")))?;
                let v = v.trim().parse().map_err(|_| (DpStatus::Parse, format!("parameter `{kv}` is not a number")))?;
                p.insert(k.trim().to_string(), v);
            }
            p
        };
        let e = catalog::catalog(name, &p).map_err(engine)?;
        *out = Box::into_raw(Box::new(DpGraph(e.graph)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn dp_graph_free(g: *mut DpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph or null.
#[no_mangle]
pub unsafe extern "C" fn dp_graph_vertex_count(g: *const DpGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` must be a live graph or null.
#[no_mangle]
pub unsafe extern "C" fn dp_graph_edge_count(g: *const DpGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Label of vertex `v` as a new string, or null when out of range.
///
/// # Safety
/// `g` must be a live graph or null.
#[no_mangle]
pub unsafe extern "C" fn dp_graph_label(g: *const DpGraph, v: usize) -> *mut c_char {
    match g.as_ref() {
        Some(g) if v < g.0.vertex_count() => to_c_string(g.0.label(v).to_string()),
        _ => ptr::null_mut(),
    }
}

/// # Safety
/// `g` must be a live graph and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_graph_is_mp2(g: *const DpGraph, out: *mut bool) -> DpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        *out = is_mp2(&get(g, "graph")?.0).map_err(engine)?;
        Ok(())
    })
}

/// DP-chromatic number by exhaustive search up to `kmax`. `*found` is false
/// when it exceeds `kmax`.
///
/// # Safety
/// `g` must be a live graph, `out` and `found` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_chromatic_number(
    g: *const DpGraph,
    kmax: usize,
    out: *mut usize,
    found: *mut bool,
) -> DpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        out_ptr(found, "found")?;
        let chi = dp_chromatic_number_exact(&get(g, "graph")?.0, kmax).map_err(engine)?;
        *found = chi.is_some();
        *out = chi.unwrap_or(0);
        Ok(())
    })
}

/// Reads an assignment file over `g`.
///
/// # Safety
/// `g` must be a live graph, `json` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_assignment_parse(
    g: *const DpGraph,
    json: *const c_char,
    out: *mut *mut DpAssignment,
) -> DpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = MatchingAssignment::from_json(&get(g, "graph")?.0, text(json, "json")?).map_err(engine)?;
        *out = Box::into_raw(Box::new(DpAssignment(m)));
        Ok(())
    })
}

/// Lists `{1..k}` and uniform random perfect matchings, reproducible from
/// `seed`.
///
/// # Safety
/// `g` must be a live graph and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_assignment_random(
    g: *const DpGraph,
    k: usize,
    seed: u64,
    out: *mut *mut DpAssignment,
) -> DpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        if k == 0 {
            return Err((DpStatus::InvalidArgument, "k must be at least 1".into()));
        }
        let m = random_assignment(&get(g, "graph")?.0, k, seed);
        *out = Box::into_raw(Box::new(DpAssignment(m)));
        Ok(())
    })
}

/// The assignment file as a new JSON string, or null.
///
/// # Safety
/// `m` must be a live assignment or null.
#[no_mangle]
pub unsafe extern "C" fn dp_assignment_to_json(m: *const DpAssignment) -> *mut c_char {
    m.as_ref().map_or(ptr::null_mut(), |m| to_c_string(m.0.to_json()))
}

/// # Safety
/// `m` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn dp_assignment_free(m: *mut DpAssignment) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Colors a planar graph of diameter at most two from 4-lists.
///
/// # Safety
/// `m` must be a live assignment and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_color_diam2(m: *const DpAssignment, out: *mut *mut DpColoring) -> DpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let m = &get(m, "assignment")?.0;
        let res = color_diam2(m).map_err(engine)?;
        let certificate = Some(res.certificate(m));
        *out = Box::into_raw(Box::new(DpColoring { coloring: res.coloring, certificate }));
        Ok(())
    })
}

/// Colors a maximal planar graph of diameter at most two by the case
/// procedures.
///
/// # Safety
/// `m` must be a live assignment and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_color_mp2(m: *const DpAssignment, out: *mut *mut DpColoring) -> DpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let (coloring, _) = color_mp2(&get(m, "assignment")?.0).map_err(engine)?;
        *out = Box::into_raw(Box::new(DpColoring { coloring, certificate: None }));
        Ok(())
    })
}

/// Exact search. `*sat` is false when no coloring exists; `out` receives
/// a coloring only when one does and `out` is non-null.
///
/// # Safety
/// `m` must be a live assignment, `sat` writable, `out` writable or null.
#[no_mangle]
pub unsafe extern "C" fn dp_solve(m: *const DpAssignment, sat: *mut bool, out: *mut *mut DpColoring) -> DpStatus {
    guard(|| {
        out_ptr(sat, "sat")?;
        let r = solve_exact(&get(m, "assignment")?.0).map_err(engine)?;
        *sat = r.is_sat();
        if !out.is_null() {
            *out = r.coloring.map_or(ptr::null_mut(), |coloring| {
                Box::into_raw(Box::new(DpColoring { coloring, certificate: None }))
            });
        }
        Ok(())
    })
}

/// # Safety
/// `c` must be a live coloring or null.
#[no_mangle]
pub unsafe extern "C" fn dp_coloring_len(c: *const DpColoring) -> usize {
    c.as_ref().map_or(0, |c| c.coloring.len())
}

/// # Safety
/// `c` must be a live coloring and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dp_coloring_get(c: *const DpColoring, v: usize, out: *mut u32) -> DpStatus {
    guard(|| {
        out_ptr(out, "out")?;
        let c = get(c, "coloring")?;
        if v >= c.coloring.len() {
            return Err((DpStatus::InvalidArgument, format!("vertex {v} out of range")));
        }
        *out = c.coloring.color(v);
        Ok(())
    })
}

/// Whether `c` is a coloring of `m`'s cover.
///
/// # Safety
/// `m` and `c` must be live or null.
#[no_mangle]
pub unsafe extern "C" fn dp_coloring_verify(m: *const DpAssignment, c: *const DpColoring) -> bool {
    match (m.as_ref(), c.as_ref()) {
        (Some(m), Some(c)) => c.coloring.len() == m.0.graph().vertex_count() && verify_coloring(&m.0, &c.coloring),
        _ => false,
    }
}

/// The pipeline certificate as a new JSON string; null for colorings that
/// did not come from [`dp_color_diam2`].
///
/// # Safety
/// `c` must be a live coloring or null.
#[no_mangle]
pub unsafe extern "C" fn dp_coloring_certificate(c: *const DpColoring) -> *mut c_char {
    c.as_ref()
        .and_then(|c| c.certificate.as_ref())
        .and_then(|cert| serde_json::to_string_pretty(cert).ok())
        .map_or(ptr::null_mut(), to_c_string)
}

/// # Safety
/// `c` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn dp_coloring_free(c: *mut DpColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
