//! C ABI for the 3-coloring toolkit: opaque handles, integer status codes,
//! and flat buffers. The header `include/tricolor.h` is generated from
//! this file by cbindgen at build time.
//!
//! Conventions: every constructor hands back an owned handle through an
//! out-pointer and reports a `TcStatus`; handles are released with the
//! matching `_free` function; strings returned by the library are freed
//! with `tc_string_free`. A thread-local message with details of the last
//! failure is available via `tc_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::time::{Duration, Instant};

use tricolor::graph::{connected_components, is_triangle_free, metrics, Graph};
use tricolor::reduce::{is_irreducible, reduce_to_irreducible, ReduceOutcome};
use tricolor::solver::{
    find_articulation_neighborhood, solve_auto, verify_coloring, Answer, Coloring, SolveError,
    SolveOpts, SolveReport, Strategy,
};

/// Status codes returned by every fallible entry point.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcStatus {
    TcOk = 0,
    TcNullArgument = 1,
    TcInvalidArgument = 2,
    TcPrecondition = 3,
    TcParse = 4,
    TcTimeout = 5,
    TcInternal = 6,
}

/// Random-instance profiles mirroring the library sampler.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TcProfile {
    TcProfileSmall = 0,
    TcProfileDiam2 = 1,
    TcProfileArtic = 2,
}

/// Opaque graph handle.
pub struct TcGraph {
    inner: Graph,
}

/// Opaque solve-report handle.
pub struct TcReport {
    inner: SolveReport,
}

/// Distance and degree summary; -1 marks an infinite diameter or radius.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TcMetrics {
    pub diameter: i64,
    pub radius: i64,
    pub min_degree: u32,
    pub max_degree: u32,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: impl Into<String>) {
    let message = message.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).unwrap_or_default();
    });
}

/// Message describing the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

fn fail(status: TcStatus, message: impl Into<String>) -> TcStatus {
    set_error(message);
    status
}

fn hand_out(graph: Graph, out: *mut *mut TcGraph) -> TcStatus {
    // Safety: the caller passed a non-null out pointer, checked upstream.
    unsafe {
        *out = Box::into_raw(Box::new(TcGraph { inner: graph }));
    }
    TcStatus::TcOk
}

/// Builds a graph from a flat edge array `[u0, v0, u1, v1, ...]` of
/// 0-based vertex ids.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable u32 values (or be null
/// when `edge_count` is 0); `out` must be a valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_build(
    vertex_count: u32,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut TcGraph,
) -> TcStatus {
    if out.is_null() || (edges.is_null() && edge_count > 0) {
        return fail(TcStatus::TcNullArgument, "null pointer argument");
    }
    let flat = if edge_count == 0 {
        &[][..]
    } else {
        std::slice::from_raw_parts(edges, 2 * edge_count)
    };
    let pairs: Vec<(u32, u32)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    match Graph::build(vertex_count as usize, &pairs) {
        Ok(g) => hand_out(g, out),
        Err(e) => fail(TcStatus::TcInvalidArgument, e.to_string()),
    }
}

/// Parses a DIMACS graph (`p edge`) from a NUL-terminated string.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_parse_dimacs(
    text: *const c_char,
    out: *mut *mut TcGraph,
) -> TcStatus {
    if text.is_null() || out.is_null() {
        return fail(TcStatus::TcNullArgument, "null pointer argument");
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(t) => t,
        Err(_) => return fail(TcStatus::TcInvalidArgument, "input is not valid UTF-8"),
    };
    match tricolor::io::read_dimacs_graph(text) {
        Ok((g, _duplicates)) => hand_out(g, out),
        Err(e) => fail(TcStatus::TcParse, e.to_string()),
    }
}

/// Serializes a graph to canonical DIMACS; free the result with
/// `tc_string_free`.
///
/// # Safety
/// `g` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_write_dimacs(g: *const TcGraph) -> *mut c_char {
    let Some(g) = g.as_ref() else {
        set_error("null graph handle");
        return std::ptr::null_mut();
    };
    CString::new(tricolor::io::write_dimacs_graph(&g.inner))
        .map(CString::into_raw)
        .unwrap_or(std::ptr::null_mut())
}

/// # Safety
/// `g` must be a handle produced by this library, not yet freed; null is
/// a no-op.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_free(g: *mut TcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn tc_graph_vertex_count(g: *const TcGraph) -> u32 {
    g.as_ref().map_or(0, |g| g.inner.vertex_count() as u32)
}

/// # Safety
/// `g` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn tc_graph_edge_count(g: *const TcGraph) -> u64 {
    g.as_ref().map_or(0, |g| g.inner.edge_count() as u64)
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_metrics(g: *const TcGraph, out: *mut TcMetrics) -> TcStatus {
    let (Some(g), Some(out)) = (g.as_ref(), out.as_mut()) else {
        return fail(TcStatus::TcNullArgument, "null pointer argument");
    };
    let m = metrics(&g.inner);
    *out = TcMetrics {
        diameter: m.diameter.map_or(-1, |d| d as i64),
        radius: m.radius.map_or(-1, |r| r as i64),
        min_degree: m.min_degree as u32,
        max_degree: m.max_degree as u32,
    };
    TcStatus::TcOk
}

/// 1 when triangle-free, 0 when not, -1 on a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_is_triangle_free(g: *const TcGraph) -> i32 {
    g.as_ref()
        .map_or(-1, |g| i32::from(is_triangle_free(&g.inner)))
}

/// 1 when neither reduction rule applies and no K4 exists, 0 otherwise,
/// -1 on a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_is_irreducible(g: *const TcGraph) -> i32 {
    g.as_ref()
        .map_or(-1, |g| i32::from(is_irreducible(&g.inner)))
}

/// Number of connected components; 0 on a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_component_count(g: *const TcGraph) -> u64 {
    g.as_ref()
        .map_or(0, |g| connected_components(&g.inner).len() as u64)
}

/// Lowest vertex whose closed neighborhood disconnects the graph, -1 when
/// none exists, -2 on a null handle.
///
/// # Safety
/// `g` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tc_graph_articulation_vertex(g: *const TcGraph) -> i64 {
    match g.as_ref() {
        None => -2,
        Some(g) => find_articulation_neighborhood(&g.inner).map_or(-1, |v| v as i64),
    }
}

/// Runs the reductions to a fixpoint. On a K4 the graph is not
/// 3-colorable: `*k4_found` is set and `*out` is null. Otherwise `*out`
/// receives the irreducible graph.
///
/// # Safety
/// `g` must be a live handle; `out` and `k4_found` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_reduce(
    g: *const TcGraph,
    out: *mut *mut TcGraph,
    k4_found: *mut bool,
) -> TcStatus {
    if g.is_null() || out.is_null() || k4_found.is_null() {
        return fail(TcStatus::TcNullArgument, "null pointer argument");
    }
    match reduce_to_irreducible(&(*g).inner) {
        ReduceOutcome::K4Found { .. } => {
            *k4_found = true;
            *out = std::ptr::null_mut();
            TcStatus::TcOk
        }
        ReduceOutcome::Irreducible { graph, .. } => {
            *k4_found = false;
            hand_out(graph, out)
        }
    }
}

fn map_solve_error(e: SolveError) -> TcStatus {
    let status = match e {
        SolveError::Timeout => TcStatus::TcTimeout,
        SolveError::InternalInvariant(_) => TcStatus::TcInternal,
        _ => TcStatus::TcPrecondition,
    };
    fail(status, e.to_string())
}

/// Decides 3-colorability with the automatic strategy dispatch.
/// `timeout_ms` = 0 disables the deadline.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_solve_auto(
    g: *const TcGraph,
    deterministic: bool,
    parallel: u32,
    timeout_ms: u64,
    out: *mut *mut TcReport,
) -> TcStatus {
    if g.is_null() || out.is_null() {
        return fail(TcStatus::TcNullArgument, "null pointer argument");
    }
    let opts = SolveOpts {
        deterministic,
        parallel: parallel as usize,
        deadline: (timeout_ms > 0).then(|| Instant::now() + Duration::from_millis(timeout_ms)),
    };
    match solve_auto(&(*g).inner, &opts) {
        Ok(report) => {
            *out = Box::into_raw(Box::new(TcReport { inner: report }));
            TcStatus::TcOk
        }
        Err(e) => map_solve_error(e),
    }
}

/// # Safety
/// `r` must be a handle produced by this library, not yet freed; null is
/// a no-op.
#[no_mangle]
pub unsafe extern "C" fn tc_report_free(r: *mut TcReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// 1 when colorable, 0 when not, -1 on a null handle.
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tc_report_is_colorable(r: *const TcReport) -> i32 {
    r.as_ref()
        .map_or(-1, |r| i32::from(r.inner.answer.is_colorable()))
}

/// Strategy name as a static string ("trivial", "reduce", "diam2",
/// "artic", "diam3", "seed", "mixed").
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn tc_report_strategy(r: *const TcReport) -> *const c_char {
    let strategy = r.as_ref().map(|r| r.inner.strategy);
    let name: &'static [u8] = match strategy {
        Some(Strategy::Trivial) => b"trivial\0",
        Some(Strategy::Reduce) => b"reduce\0",
        Some(Strategy::Diam2) => b"diam2\0",
        Some(Strategy::Articulation) => b"artic\0",
        Some(Strategy::Diam3) => b"diam3\0",
        Some(Strategy::SeedSet) => b"seed\0",
        Some(Strategy::Mixed) => b"mixed\0",
        None => b"\0",
    };
    name.as_ptr() as *const c_char
}

/// # Safety
/// `r` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn tc_report_seed_size(r: *const TcReport) -> u64 {
    r.as_ref().map_or(0, |r| r.inner.seed_size as u64)
}

/// # Safety
/// `r` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn tc_report_enumeration_count(r: *const TcReport) -> u64 {
    r.as_ref().map_or(0, |r| r.inner.enumeration_count)
}

/// # Safety
/// `r` must be a live handle or null (returns 0).
#[no_mangle]
pub unsafe extern "C" fn tc_report_wall_ms(r: *const TcReport) -> u64 {
    r.as_ref().map_or(0, |r| r.inner.wall_time.as_millis() as u64)
}

/// Copies the witness coloring (one color 1..=3 per vertex) into `buffer`.
/// Fails when the report is not colorable or the buffer is too small.
///
/// # Safety
/// `r` must be a live handle; `buffer` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn tc_report_coloring(
    r: *const TcReport,
    buffer: *mut u8,
    len: usize,
) -> TcStatus {
    let Some(r) = r.as_ref() else {
        return fail(TcStatus::TcNullArgument, "null report handle");
    };
    if buffer.is_null() {
        return fail(TcStatus::TcNullArgument, "null buffer");
    }
    let Answer::Colorable(c) = &r.inner.answer else {
        return fail(TcStatus::TcInvalidArgument, "report is not colorable");
    };
    if len < c.len() {
        return fail(
            TcStatus::TcInvalidArgument,
            format!("buffer holds {len} entries, coloring needs {}", c.len()),
        );
    }
    let slice = std::slice::from_raw_parts_mut(buffer, c.len());
    for (v, slot) in slice.iter_mut().enumerate() {
        *slot = c.get(v as u32).unwrap_or(0);
    }
    TcStatus::TcOk
}

/// 1 when `colors` (one entry per vertex, values 1..=3) is a proper total
/// coloring, 0 when not, -1 on bad arguments.
///
/// # Safety
/// `g` must be a live handle; `colors` must point to `len` readable bytes.
#[no_mangle]
pub unsafe extern "C" fn tc_verify_coloring(
    g: *const TcGraph,
    colors: *const u8,
    len: usize,
) -> i32 {
    let Some(g) = g.as_ref() else { return -1 };
    if colors.is_null() || len != g.inner.vertex_count() {
        return -1;
    }
    let slice = std::slice::from_raw_parts(colors, len);
    let mut coloring = Coloring::unassigned(len);
    for (v, &c) in slice.iter().enumerate() {
        if !(1..=3).contains(&c) {
            return 0;
        }
        coloring.set(v as u32, c);
    }
    i32::from(verify_coloring(&g.inner, &coloring))
}

/// Extremal diameter-2 family instance (k >= 3).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_gen_gn(k: u32, out: *mut *mut TcGraph) -> TcStatus {
    if out.is_null() {
        return fail(TcStatus::TcNullArgument, "null pointer argument");
    }
    match tricolor::generators::gen_gn(k as usize) {
        Ok((g, _)) => hand_out(g, out),
        Err(e) => fail(TcStatus::TcPrecondition, e.to_string()),
    }
}

/// Reduction-skeleton instance on `n` variables and `m` clauses.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_gen_gnm(n: u32, m: u32, out: *mut *mut TcGraph) -> TcStatus {
    if out.is_null() {
        return fail(TcStatus::TcNullArgument, "null pointer argument");
    }
    if n == 0 || m == 0 {
        return fail(TcStatus::TcPrecondition, "gnm needs n >= 1 and m >= 1");
    }
    let (g, _) = tricolor::generators::gen_gnm(n as usize, m as usize);
    hand_out(g, out)
}

/// Reduction graph of a 3-CNF formula given as DIMACS CNF text; the
/// formula is satisfiable iff the graph is 3-colorable.
///
/// # Safety
/// `cnf_text` must be a valid NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_gen_hphi(cnf_text: *const c_char, out: *mut *mut TcGraph) -> TcStatus {
    if cnf_text.is_null() || out.is_null() {
        return fail(TcStatus::TcNullArgument, "null pointer argument");
    }
    let text = match CStr::from_ptr(cnf_text).to_str() {
        Ok(t) => t,
        Err(_) => return fail(TcStatus::TcInvalidArgument, "input is not valid UTF-8"),
    };
    let formula = match tricolor::io::read_dimacs_cnf(text) {
        Ok(f) => f,
        Err(e) => return fail(TcStatus::TcParse, e.to_string()),
    };
    match tricolor::generators::gen_hphi(&formula) {
        Ok((g, _)) => hand_out(g, out),
        Err(e) => fail(TcStatus::TcPrecondition, e.to_string()),
    }
}

/// Seeded random instance; identical output for identical arguments.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_sample_random(
    seed: u64,
    profile: TcProfile,
    out: *mut *mut TcGraph,
) -> TcStatus {
    if out.is_null() {
        return fail(TcStatus::TcNullArgument, "null pointer argument");
    }
    let profile = match profile {
        TcProfile::TcProfileSmall => tricolor::generators::SampleProfile::Small,
        TcProfile::TcProfileDiam2 => tricolor::generators::SampleProfile::Diam2,
        TcProfile::TcProfileArtic => tricolor::generators::SampleProfile::Artic,
    };
    hand_out(
        tricolor::generators::sample_random_instance(seed, profile),
        out,
    )
}

/// # Safety
/// `s` must be a string returned by this library, not yet freed; null is
/// a no-op.
#[no_mangle]
pub unsafe extern "C" fn tc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
