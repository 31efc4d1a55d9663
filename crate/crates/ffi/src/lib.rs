//! C interface to `symbreak`.
//!
//! Graphs live behind the opaque [`SbGraph`] handle. Every fallible call
//! returns an [`SbStatus`] and writes its result through an out-pointer;
//! on failure, [`sb_last_error`] describes the problem on the calling
//! thread. Strings handed out by the library must be released with
//! [`sb_string_free`], graphs with [`sb_graph_free`]. Search functions
//! take a candidate budget; pass 0 for the default.
//!
//! # Safety
//!
//! Pointers passed in must be null or valid for the access the function
//! documents; arrays must hold at least the stated number of elements.
//! Null handles and out-pointers are reported as
//! [`SbStatus::SB_NULL_POINTER`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use symbreak::params::{self, Analyzer, Coloring, SearchConfig};
use symbreak::{closed, graph6, Error, Family, Graph};

/// Result codes shared by every function.
#[allow(non_camel_case_types)]
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbStatus {
    SB_OK = 0,
    SB_NULL_POINTER = 1,
    /// Malformed graph, coloring, vertex set or family spec.
    SB_INVALID_INPUT = 2,
    /// The search would exceed its candidate budget.
    SB_BUDGET_EXCEEDED = 3,
    /// No distinguishing coloring with the requested number of colors.
    SB_NOT_DISTINGUISHABLE = 4,
    SB_INTERNAL = 5,
    /// A Rust panic was caught at the boundary.
    SB_PANIC = 6,
}

/// Opaque graph handle.
pub struct SbGraph {
    graph: Graph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SbStatus {
    match e {
        Error::BudgetExceeded { .. } | Error::EnumerationCap { .. } => SbStatus::SB_BUDGET_EXCEEDED,
        Error::NotDistinguishable(_) => SbStatus::SB_NOT_DISTINGUISHABLE,
        Error::Internal(_) => SbStatus::SB_INTERNAL,
        _ => SbStatus::SB_INVALID_INPUT,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), SbStatus>) -> SbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SbStatus::SB_OK
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside symbreak");
            SbStatus::SB_PANIC
        }
    }
}

fn fail(e: Error) -> SbStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null() -> SbStatus {
    set_error("null pointer argument");
    SbStatus::SB_NULL_POINTER
}

unsafe fn str_arg<'a>(s: *const c_char) -> Result<&'a str, SbStatus> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        SbStatus::SB_INVALID_INPUT
    })
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize) -> Result<&'a [T], SbStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn graph_arg<'a>(g: *const SbGraph) -> Result<&'a Graph, SbStatus> {
    g.as_ref().map(|h| &h.graph).ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), SbStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_graph(out: *mut *mut SbGraph, graph: Graph) -> Result<(), SbStatus> {
    write_out(out, Box::into_raw(Box::new(SbGraph { graph })))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), SbStatus> {
    let c = CString::new(s).map_err(|_| fail(Error::Internal("interior NUL".into())))?;
    write_out(out, c.into_raw())
}

/// A budget of 0 selects [`sb_default_budget`].
fn config(budget: u64) -> SearchConfig {
    SearchConfig {
        budget: if budget == 0 { params::DEFAULT_BUDGET } else { budget },
        jobs: None,
    }
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Default search budget used by the command-line tool.
#[no_mangle]
pub extern "C" fn sb_default_budget() -> u64 {
    params::DEFAULT_BUDGET
}

/// Parses a graph6 string.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_from_graph6(text: *const c_char, out: *mut *mut SbGraph) -> SbStatus {
    guard(|| {
        let g = graph6::parse_graph6(str_arg(text)?).map_err(fail)?;
        write_graph(out, g)
    })
}

/// Builds a family member from a spec such as `"book:4,3"`.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_from_family(spec: *const c_char, out: *mut *mut SbGraph) -> SbStatus {
    guard(|| {
        let family: Family = str_arg(spec)?.parse().map_err(fail)?;
        write_graph(out, family.build().map_err(fail)?)
    })
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `endpoints` (`2 * edge_count` entries).
#[no_mangle]
pub unsafe extern "C" fn sb_graph_from_edges(
    n: usize,
    endpoints: *const usize,
    edge_count: usize,
    out: *mut *mut SbGraph,
) -> SbStatus {
    guard(|| {
        let flat = slice_arg(endpoints, edge_count.checked_mul(2).ok_or_else(null)?)?;
        let edges: Vec<(usize, usize)> = flat.chunks(2).map(|p| (p[0], p[1])).collect();
        write_graph(out, Graph::from_edges(n, &edges).map_err(fail)?)
    })
}

/// Releases a graph. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_free(g: *mut SbGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of vertices, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_vertex_count(g: *const SbGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.vertex_count())
}

/// Number of edges, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_edge_count(g: *const SbGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.edge_count())
}

/// graph6 encoding of the graph.
#[no_mangle]
pub unsafe extern "C" fn sb_graph_to_graph6(g: *const SbGraph, out: *mut *mut c_char) -> SbStatus {
    guard(|| write_string(out, graph6::emit_graph6(graph_arg(g)?)))
}

/// Order of the automorphism group as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn sb_automorphism_group_order(g: *const SbGraph, out: *mut *mut c_char) -> SbStatus {
    guard(|| {
        let group = symbreak::autsearch::automorphism_group(graph_arg(g)?, None);
        write_string(out, group.order().to_string())
    })
}

/// Whether only the identity preserves the color classes of `colors`
/// (one entry per vertex).
#[no_mangle]
pub unsafe extern "C" fn sb_is_distinguishing(
    g: *const SbGraph,
    colors: *const usize,
    len: usize,
    out: *mut bool,
) -> SbStatus {
    guard(|| {
        let coloring = Coloring::from_colors(slice_arg(colors, len)?.to_vec());
        let verdict = params::is_distinguishing(graph_arg(g)?, &coloring).map_err(fail)?;
        write_out(out, verdict)
    })
}

/// Whether only the identity fixes every vertex of `set`.
#[no_mangle]
pub unsafe extern "C" fn sb_is_determining_set(
    g: *const SbGraph,
    set: *const usize,
    len: usize,
    out: *mut bool,
) -> SbStatus {
    guard(|| {
        let verdict = params::is_determining_set(graph_arg(g)?, slice_arg(set, len)?).map_err(fail)?;
        write_out(out, verdict)
    })
}

/// `dist(G)`.
#[no_mangle]
pub unsafe extern "C" fn sb_distinguishing_number(g: *const SbGraph, budget: u64, out: *mut usize) -> SbStatus {
    guard(|| {
        let a = Analyzer::with_config(graph_arg(g)?, config(budget));
        write_out(out, a.distinguishing_number().map_err(fail)?.0)
    })
}

/// `det(G)`.
#[no_mangle]
pub unsafe extern "C" fn sb_determining_number(g: *const SbGraph, budget: u64, out: *mut usize) -> SbStatus {
    guard(|| {
        let a = Analyzer::with_config(graph_arg(g)?, config(budget));
        write_out(out, a.determining_number().map_err(fail)?.0)
    })
}

/// `ρ^d(G)`, the fewest vertices outside one class of a
/// `d`-distinguishing coloring.
#[no_mangle]
pub unsafe extern "C" fn sb_paint_cost(g: *const SbGraph, d: usize, budget: u64, out: *mut usize) -> SbStatus {
    guard(|| {
        let a = Analyzer::with_config(graph_arg(g)?, config(budget));
        write_out(out, a.paint_cost(d).map_err(fail)?.0)
    })
}

/// `ρ_d(G)`, the smallest class over `d`-distinguishing colorings using
/// all `d` colors.
#[no_mangle]
pub unsafe extern "C" fn sb_cost_number(g: *const SbGraph, d: usize, budget: u64, out: *mut usize) -> SbStatus {
    guard(|| {
        let a = Analyzer::with_config(graph_arg(g)?, config(budget));
        write_out(out, a.cost_number(d).map_err(fail)?.0)
    })
}

/// `fdist(G)`.
#[no_mangle]
pub unsafe extern "C" fn sb_frugal_distinguishing_number(
    g: *const SbGraph,
    budget: u64,
    out: *mut usize,
) -> SbStatus {
    guard(|| {
        let a = Analyzer::with_config(graph_arg(g)?, config(budget));
        write_out(out, a.frugal_distinguishing_number().map_err(fail)?)
    })
}

/// Full parameter report as JSON. A budget refusal still writes the
/// partial report and returns `SB_BUDGET_EXCEEDED`.
#[no_mangle]
pub unsafe extern "C" fn sb_analyze_json(g: *const SbGraph, budget: u64, out: *mut *mut c_char) -> SbStatus {
    guard(|| {
        let a = Analyzer::with_config(graph_arg(g)?, config(budget));
        let report = a.full_report().map_err(fail)?;
        let text = serde_json::to_string(&report).map_err(|e| fail(Error::Internal(e.to_string())))?;
        write_string(out, text)?;
        if report.is_complete() {
            Ok(())
        } else {
            set_error(&format!("skipped: {}", report.skipped.join(", ")));
            Err(SbStatus::SB_BUDGET_EXCEEDED)
        }
    })
}

/// Closed-form values for the book graph `B(m,n)` as JSON.
#[no_mangle]
pub unsafe extern "C" fn sb_book_params_json(m: u32, n: u64, out: *mut *mut c_char) -> SbStatus {
    guard(|| {
        let p = closed::book_params(m, n).map_err(fail)?;
        let text = serde_json::to_string(&p).map_err(|e| fail(Error::Internal(e.to_string())))?;
        write_string(out, text)
    })
}

/// Closed-form `ρ^d(B(m,n))`. Writes `lower` and `upper_exclusive`; the
/// value is exact when `upper_exclusive == lower + 1`. Values above
/// `UINT64_MAX` are rejected as invalid input.
#[no_mangle]
pub unsafe extern "C" fn sb_book_paint_cost(
    m: u32,
    n: u64,
    d: u64,
    lower: *mut u64,
    upper_exclusive: *mut u64,
) -> SbStatus {
    use num_traits::ToPrimitive;
    guard(|| {
        let (lo, hi) = match closed::book_paint_cost(m, n, d).map_err(fail)? {
            closed::PaintCost::Exact { value } => (value.clone(), value + 1u32),
            closed::PaintCost::Interval {
                lower,
                upper_exclusive,
            } => (lower, upper_exclusive),
        };
        let narrow = |x: num_bigint::BigUint| {
            x.to_u64()
                .ok_or_else(|| fail(Error::Domain("value exceeds 64 bits; use sb_book_params_json".into())))
        };
        let (lo, hi) = (narrow(lo)?, narrow(hi)?);
        write_out(lower, lo)?;
        write_out(upper_exclusive, hi)
    })
}
