//! C ABI over the gmatrix library: opaque handles, status codes, flat
//! buffers.
//!
//! The companion header lives at `include/gmatrix.h` and is maintained by
//! hand; keep it in sync with the exported surface (checked by a test).
//!
//! Conventions:
//! - Every fallible call returns [`GmStatus`]; `gm_last_error` exposes a
//!   thread-local message for the most recent failure on this thread.
//! - Matrices are written as row-major `n_r * n_r` buffers with the column
//!   as the transition source.
//! - Handles are freed exactly once with their `_free` function; passing a
//!   handle to any other thread is safe as long as calls do not overlap a
//!   free.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use gmatrix::error::Error;
use gmatrix::google::{cheirank, pagerank, GoogleOperator};
use gmatrix::graph::{build_graph, DirectedGraph, NodeId};
use gmatrix::io::read_edges;
use gmatrix::rank::{kendall_distance, theta_scores, Ranking};
use gmatrix::reduced::{
    ranked_hidden_links, reduced_google, strongest_hidden_links, HiddenLink, ReducedMatrices,
    ReducedSelection,
};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GmStatus {
    GmOk = 0,
    GmNullPointer = 1,
    GmInvalidArgument = 2,
    GmParseError = 3,
    GmIoError = 4,
    GmNonConvergence = 5,
    GmPanic = 6,
}

/// Structural summary of a graph.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GmGraphStats {
    pub n: u64,
    pub edge_count: u64,
    pub density: f64,
    pub mean_degree: f64,
    pub dangling_count: u64,
}

/// Outcome of an iterative solve.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GmSolverReport {
    pub iterations: u64,
    pub residual: f64,
    pub converged: bool,
}

/// Component selector for `gm_reduced_component`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GmReducedComponent {
    /// The reduced matrix itself.
    GmComponentFull = 0,
    /// Direct transitions.
    GmComponentDirect = 1,
    /// Rank-one leading-mode part.
    GmComponentRankOne = 2,
    /// Hidden-transition remainder.
    GmComponentHidden = 3,
}

/// Opaque graph handle.
pub struct GmGraph {
    inner: DirectedGraph,
}

/// Opaque reduced-matrix handle.
pub struct GmReduced {
    rm: ReducedMatrices,
    strongest: Vec<Option<HiddenLink>>,
    ranked: Vec<HiddenLink>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> GmStatus {
    match err {
        Error::Io { .. } => GmStatus::GmIoError,
        Error::Parse { .. } => GmStatus::GmParseError,
        Error::NonConvergence { .. } => GmStatus::GmNonConvergence,
        _ => GmStatus::GmInvalidArgument,
    }
}

fn fail(err: &Error) -> GmStatus {
    set_error(&err.to_string());
    status_of(err)
}

fn null_arg(name: &str) -> GmStatus {
    set_error(&format!("null pointer argument: {name}"));
    GmStatus::GmNullPointer
}

/// Runs a closure, translating panics into `GmPanic` instead of unwinding
/// across the ABI.
fn guarded(f: impl FnOnce() -> GmStatus) -> GmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            GmStatus::GmPanic
        }
    }
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn gm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on the calling thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Builds a graph from parallel source/target id arrays. Duplicate edges
/// collapse, self-loops drop, ids must lie in `[0, n)`.
///
/// # Safety
/// `src` and `dst` must point to `n_edges` readable elements; `out` must be
/// a valid location for one pointer.
#[no_mangle]
pub unsafe extern "C" fn gm_graph_build(
    n: u64,
    src: *const u32,
    dst: *const u32,
    n_edges: usize,
    out: *mut *mut GmGraph,
) -> GmStatus {
    guarded(|| {
        if out.is_null() {
            return null_arg("out");
        }
        if (src.is_null() || dst.is_null()) && n_edges > 0 {
            return null_arg("src/dst");
        }
        let sources = if n_edges == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(src, n_edges)
        };
        let targets = if n_edges == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(dst, n_edges)
        };
        let edges = sources.iter().copied().zip(targets.iter().copied());
        match build_graph(n as usize, edges) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(GmGraph { inner: graph }));
                GmStatus::GmOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Reads a `src<TAB>dst` edge file; the node count covers every id seen.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be a valid location
/// for one pointer.
#[no_mangle]
pub unsafe extern "C" fn gm_graph_read_edge_file(
    path: *const c_char,
    out: *mut *mut GmGraph,
) -> GmStatus {
    guarded(|| {
        if path.is_null() || out.is_null() {
            return null_arg("path/out");
        }
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            set_error("path is not valid UTF-8");
            return GmStatus::GmInvalidArgument;
        };
        let (edges, n) = match read_edges(Path::new(path)) {
            Ok(v) => v,
            Err(e) => return fail(&e),
        };
        match build_graph(n, edges) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(GmGraph { inner: graph }));
                GmStatus::GmOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Releases a graph handle. Passing NULL is a no-op.
///
/// # Safety
/// `graph` must be a pointer returned by a `gm_graph_*` constructor, not
/// yet freed.
#[no_mangle]
pub unsafe extern "C" fn gm_graph_free(graph: *mut GmGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gm_graph_node_count(graph: *const GmGraph) -> u64 {
    if graph.is_null() {
        return 0;
    }
    (*graph).inner.node_count() as u64
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gm_graph_edge_count(graph: *const GmGraph) -> u64 {
    if graph.is_null() {
        return 0;
    }
    (*graph).inner.edge_count() as u64
}

/// # Safety
/// `graph` must be a live handle and `out` a valid stats location.
#[no_mangle]
pub unsafe extern "C" fn gm_graph_stats(graph: *const GmGraph, out: *mut GmGraphStats) -> GmStatus {
    guarded(|| {
        if graph.is_null() || out.is_null() {
            return null_arg("graph/out");
        }
        match gmatrix::graph::graph_stats(&(*graph).inner) {
            Ok(s) => {
                *out = GmGraphStats {
                    n: s.n,
                    edge_count: s.edge_count,
                    density: s.density,
                    mean_degree: s.mean_degree,
                    dangling_count: s.dangling_count,
                };
                GmStatus::GmOk
            }
            Err(e) => fail(&e),
        }
    })
}

#[allow(clippy::too_many_arguments)] // mirrors the C signature
unsafe fn rank_into(
    graph: *const GmGraph,
    alpha: f64,
    tol: f64,
    max_iter: u64,
    probabilities: *mut f64,
    ranks: *mut u32,
    report: *mut GmSolverReport,
    chei: bool,
) -> GmStatus {
    if graph.is_null() || probabilities.is_null() {
        return null_arg("graph/probabilities");
    }
    let g = &(*graph).inner;
    let result = if chei {
        cheirank(g, alpha, tol, max_iter as usize)
    } else {
        pagerank(g, alpha, tol, max_iter as usize)
    };
    let (p, table, rep) = match result {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    let n = g.node_count();
    std::slice::from_raw_parts_mut(probabilities, n).copy_from_slice(&p.values);
    if !ranks.is_null() {
        let out = std::slice::from_raw_parts_mut(ranks, n);
        for node in 0..n as NodeId {
            out[node as usize] = table.rank_of(node);
        }
    }
    if !report.is_null() {
        *report = GmSolverReport {
            iterations: rep.iterations as u64,
            residual: rep.residual,
            converged: rep.converged,
        };
    }
    if rep.converged {
        GmStatus::GmOk
    } else {
        set_error("power iteration hit the iteration cap; partial result written");
        GmStatus::GmNonConvergence
    }
}

/// PageRank over the graph. `probabilities` receives `n` values; `ranks`
/// (optional, may be NULL) receives the 1-based rank of every node;
/// `report` (optional) receives the solver outcome. A non-converged run
/// still writes the buffers and returns `GM_NON_CONVERGENCE`.
///
/// # Safety
/// Buffers must provide space for `gm_graph_node_count(graph)` elements.
#[no_mangle]
pub unsafe extern "C" fn gm_pagerank(
    graph: *const GmGraph,
    alpha: f64,
    tol: f64,
    max_iter: u64,
    probabilities: *mut f64,
    ranks: *mut u32,
    report: *mut GmSolverReport,
) -> GmStatus {
    guarded(|| {
        rank_into(
            graph,
            alpha,
            tol,
            max_iter,
            probabilities,
            ranks,
            report,
            false,
        )
    })
}

/// CheiRank (PageRank of the edge-reversed graph); same contract as
/// `gm_pagerank`.
///
/// # Safety
/// Buffers must provide space for `gm_graph_node_count(graph)` elements.
#[no_mangle]
pub unsafe extern "C" fn gm_cheirank(
    graph: *const GmGraph,
    alpha: f64,
    tol: f64,
    max_iter: u64,
    probabilities: *mut f64,
    ranks: *mut u32,
    report: *mut GmSolverReport,
) -> GmStatus {
    guarded(|| {
        rank_into(
            graph,
            alpha,
            tol,
            max_iter,
            probabilities,
            ranks,
            report,
            true,
        )
    })
}

/// Computes the reduced Google matrix for `selection` (node ids, order
/// defines the matrix order) and returns an opaque handle carrying the
/// components and the hidden-link reports.
///
/// # Safety
/// `selection` must point to `n_r` readable ids; `out` must be a valid
/// location for one pointer; `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gm_reduced_compute(
    graph: *const GmGraph,
    selection: *const u32,
    n_r: usize,
    alpha: f64,
    tol: f64,
    max_iter: u64,
    out: *mut *mut GmReduced,
) -> GmStatus {
    guarded(|| {
        if graph.is_null() || selection.is_null() || out.is_null() {
            return null_arg("graph/selection/out");
        }
        let g = &(*graph).inner;
        let ids = std::slice::from_raw_parts(selection, n_r).to_vec();
        let sel = match ReducedSelection::new(ids, g.node_count()) {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        let op = match GoogleOperator::new(g, alpha) {
            Ok(o) => o,
            Err(e) => return fail(&e),
        };
        let rm = match reduced_google(&op, &sel, tol, max_iter as usize) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        let strongest = match strongest_hidden_links(&rm, g) {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        let ranked = match ranked_hidden_links(&rm, g) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        *out = Box::into_raw(Box::new(GmReduced {
            rm,
            strongest,
            ranked,
        }));
        GmStatus::GmOk
    })
}

/// Releases a reduced handle. Passing NULL is a no-op.
///
/// # Safety
/// `reduced` must come from `gm_reduced_compute`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gm_reduced_free(reduced: *mut GmReduced) {
    if !reduced.is_null() {
        drop(Box::from_raw(reduced));
    }
}

/// Selection size `n_r`.
///
/// # Safety
/// `reduced` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gm_reduced_size(reduced: *const GmReduced) -> u64 {
    if reduced.is_null() {
        return 0;
    }
    (*reduced).rm.len() as u64
}

/// Leading eigenvalue of the scatterer block.
///
/// # Safety
/// `reduced` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gm_reduced_lambda_c(reduced: *const GmReduced) -> f64 {
    if reduced.is_null() {
        return f64::NAN;
    }
    (*reduced).rm.spectrum.lambda_c
}

/// Copies one component as a row-major `n_r * n_r` buffer (column =
/// transition source).
///
/// # Safety
/// `out` must provide `n_r * n_r` elements; `reduced` must be live.
#[no_mangle]
pub unsafe extern "C" fn gm_reduced_component(
    reduced: *const GmReduced,
    which: GmReducedComponent,
    out: *mut f64,
) -> GmStatus {
    guarded(|| {
        if reduced.is_null() || out.is_null() {
            return null_arg("reduced/out");
        }
        let rm = &(*reduced).rm;
        let matrix = match which {
            GmReducedComponent::GmComponentFull => &rm.g_r,
            GmReducedComponent::GmComponentDirect => &rm.g_rr,
            GmReducedComponent::GmComponentRankOne => &rm.g_pr,
            GmReducedComponent::GmComponentHidden => &rm.g_qr,
        };
        let n_r = rm.len();
        let out = std::slice::from_raw_parts_mut(out, n_r * n_r);
        for i in 0..n_r {
            for j in 0..n_r {
                out[i * n_r + j] = matrix[(i, j)];
            }
        }
        GmStatus::GmOk
    })
}

/// Copies the normalized restriction of the global PageRank (`n_r` values).
///
/// # Safety
/// `out` must provide `n_r` elements; `reduced` must be live.
#[no_mangle]
pub unsafe extern "C" fn gm_reduced_pagerank(reduced: *const GmReduced, out: *mut f64) -> GmStatus {
    guarded(|| {
        if reduced.is_null() || out.is_null() {
            return null_arg("reduced/out");
        }
        let rm = &(*reduced).rm;
        std::slice::from_raw_parts_mut(out, rm.len()).copy_from_slice(&rm.p_r_normalized);
        GmStatus::GmOk
    })
}

/// Strongest purely hidden link out of every selection member. `targets[j]`
/// receives the selection index of the winner or `UINT32_MAX` when every
/// eligible weight is non-positive; `weights` (optional) receives the
/// winning weight or 0.
///
/// # Safety
/// `targets` (and `weights` when non-NULL) must provide `n_r` elements.
#[no_mangle]
pub unsafe extern "C" fn gm_reduced_strongest_hidden(
    reduced: *const GmReduced,
    targets: *mut u32,
    weights: *mut f64,
) -> GmStatus {
    guarded(|| {
        if reduced.is_null() || targets.is_null() {
            return null_arg("reduced/targets");
        }
        let handle = &*reduced;
        let n_r = handle.rm.len();
        let t = std::slice::from_raw_parts_mut(targets, n_r);
        for (j, slot) in handle.strongest.iter().enumerate() {
            t[j] = slot.map_or(u32::MAX, |l| l.target as u32);
            if !weights.is_null() {
                *weights.add(j) = slot.map_or(0.0, |l| l.weight);
            }
        }
        GmStatus::GmOk
    })
}

/// Number of purely hidden (source, target) pairs in the ranked listing.
///
/// # Safety
/// `reduced` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gm_reduced_ranked_hidden_count(reduced: *const GmReduced) -> usize {
    if reduced.is_null() {
        return 0;
    }
    (*reduced).ranked.len()
}

/// Copies up to `capacity` entries of the ranked hidden-link listing
/// (descending weight). `written` receives the copied count.
///
/// # Safety
/// `sources`, `targets` and `weights` must provide `capacity` elements;
/// `written` must be a valid location.
#[no_mangle]
pub unsafe extern "C" fn gm_reduced_ranked_hidden(
    reduced: *const GmReduced,
    sources: *mut u32,
    targets: *mut u32,
    weights: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> GmStatus {
    guarded(|| {
        if reduced.is_null() || sources.is_null() || targets.is_null() || weights.is_null() {
            return null_arg("reduced/sources/targets/weights");
        }
        let handle = &*reduced;
        let count = handle.ranked.len().min(capacity);
        for (k, link) in handle.ranked[..count].iter().enumerate() {
            *sources.add(k) = link.source as u32;
            *targets.add(k) = link.target as u32;
            *weights.add(k) = link.weight;
        }
        if !written.is_null() {
            *written = count;
        }
        GmStatus::GmOk
    })
}

/// Kendall distance between two rank assignments of length `len`.
///
/// # Safety
/// `r1` and `r2` must provide `len` elements; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn gm_kendall_distance(
    r1: *const u32,
    r2: *const u32,
    len: usize,
    out: *mut f64,
) -> GmStatus {
    guarded(|| {
        if r1.is_null() || r2.is_null() || out.is_null() {
            return null_arg("r1/r2/out");
        }
        let a = std::slice::from_raw_parts(r1, len);
        let b = std::slice::from_raw_parts(r2, len);
        match kendall_distance(a, b) {
            Ok(d) => {
                *out = d;
                GmStatus::GmOk
            }
            Err(e) => fail(&e),
        }
    })
}

/// Aggregates per-edition local ranks into Θ-scores.
///
/// `ranks` is row-major `n_editions x n_entities`; each row must be a
/// permutation of `1..=n_entities`. `theta[p]` receives the score of entity
/// `p`; `display_ranks` (optional) the competition-style rank.
///
/// # Safety
/// `ranks` must provide `n_editions * n_entities` elements; `theta` (and
/// `display_ranks` when non-NULL) must provide `n_entities` elements.
#[no_mangle]
pub unsafe extern "C" fn gm_theta_scores(
    ranks: *const u32,
    n_editions: usize,
    n_entities: usize,
    theta: *mut f64,
    display_ranks: *mut u32,
) -> GmStatus {
    guarded(|| {
        if ranks.is_null() || theta.is_null() {
            return null_arg("ranks/theta");
        }
        let flat = std::slice::from_raw_parts(ranks, n_editions * n_entities);
        // Zero-padded labels keep entity identity stable across the
        // library's label-ordered internals.
        let entities: Vec<String> = (0..n_entities).map(|i| format!("{i:012}")).collect();
        let mut editions = Vec::with_capacity(n_editions);
        for e in 0..n_editions {
            let row = flat[e * n_entities..(e + 1) * n_entities].to_vec();
            match Ranking::permutation(format!("edition-{e}"), entities.clone(), row) {
                Ok(r) => editions.push(r),
                Err(err) => return fail(&err),
            }
        }
        let table = match theta_scores(&editions) {
            Ok(t) => t,
            Err(e) => return fail(&e),
        };
        for entry in &table.entries {
            let idx: usize = entry.label.parse().expect("synthetic label");
            *theta.add(idx) = entry.theta;
            if !display_ranks.is_null() {
                *display_ranks.add(idx) = entry.display_rank;
            }
        }
        GmStatus::GmOk
    })
}
