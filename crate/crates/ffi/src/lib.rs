//! C interface to `gcgt`.
//!
//! Graphs and test collections cross the boundary as opaque handles that
//! the caller frees with the matching `*_free` function. Every fallible
//! function returns a [`GcgtStatus`]; on failure a message is kept per
//! thread and can be fetched with [`gcgt_last_error_message`]. Result
//! outputs are written only on success. Panics are caught at the boundary
//! and reported as `GCGT_STATUS_PANIC`.
//!
//! Variable-length results use the caller-buffer convention: the function
//! always stores the required length, and returns
//! `GCGT_STATUS_BUFFER_TOO_SMALL` when the supplied capacity is short.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gcgt::graph::{generate, min_cut, EdgeSet, Graph};
use gcgt::group_testing::{check_disjunct, decode, run_tests, OutcomeVector};
use gcgt::testgen::{make_tests, random_tests, random_walk_tests, ComponentMode, MakeTestsParams, TestCollection, WalkParams};
use gcgt::theory::{gamblers_ruin, RuinParams};
use gcgt::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcgtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Parse = 3,
    Budget = 4,
    Domain = 5,
    Io = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Opaque graph handle.
pub struct GcgtGraph(Graph);

/// Opaque test-collection handle.
pub struct GcgtTests(TestCollection);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(err: &Error) -> GcgtStatus {
    match err {
        Error::InvalidParameter(_) => GcgtStatus::InvalidParameter,
        Error::Parse { .. } | Error::Csv(_) | Error::Json(_) => GcgtStatus::Parse,
        Error::Budget { .. } => GcgtStatus::Budget,
        Error::Domain(_) | Error::Disconnected | Error::MixingCapExceeded { .. } | Error::RestartsExhausted { .. } => {
            GcgtStatus::Domain
        }
        Error::Io(_) | Error::Plot(_) => GcgtStatus::Io,
        Error::AtTau { source, .. } => status_of(source),
    }
}

enum Fail {
    Null(&'static str),
    Small { needed: usize },
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GcgtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GcgtStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is null"));
            GcgtStatus::NullPointer
        }
        Ok(Err(Fail::Small { needed })) => {
            set_error(format!("buffer too small: {needed} needed"));
            GcgtStatus::BufferTooSmall
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            GcgtStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::InvalidParameter(format!("{what} is not UTF-8"))))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Copies `items` into a caller buffer of capacity `cap`, storing the
/// length in `len_out` either way.
unsafe fn fill<T: Copy>(items: &[T], buf: *mut T, cap: usize, len_out: *mut usize) -> Result<(), Fail> {
    *out(len_out, "len_out")? = items.len();
    if items.len() > cap {
        return Err(Fail::Small { needed: items.len() });
    }
    if !items.is_empty() {
        if buf.is_null() {
            return Err(Fail::Null("buf"));
        }
        ptr::copy_nonoverlapping(items.as_ptr(), buf, items.len());
    }
    Ok(())
}

/// Copies the last error message of this thread, NUL-terminated, into
/// `buf`. `len_out` receives the message length without the terminator.
///
/// # Safety
/// `buf` must point to `cap` writable bytes (or be null with `cap = 0`);
/// `len_out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_last_error_message(buf: *mut c_char, cap: usize, len_out: *mut usize) -> GcgtStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match len_out.as_mut() {
        Some(l) => *l = msg.len(),
        None => return GcgtStatus::NullPointer,
    }
    if msg.len() + 1 > cap || buf.is_null() {
        return GcgtStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, msg.len());
    *buf.add(msg.len()) = 0;
    GcgtStatus::Ok
}

/// Builds a graph from a family spec such as `"fat_tree:8"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `graph_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_graph_generate(spec: *const c_char, graph_out: *mut *mut GcgtGraph) -> GcgtStatus {
    guard(|| {
        let slot = out(graph_out, "graph_out")?;
        let family = c_str(spec, "spec")?.parse()?;
        *slot = Box::into_raw(Box::new(GcgtGraph(generate(&family)?)));
        Ok(())
    })
}

/// Parses the `n m` / `u v` graph text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `graph_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_graph_from_text(text: *const c_char, graph_out: *mut *mut GcgtGraph) -> GcgtStatus {
    guard(|| {
        let slot = out(graph_out, "graph_out")?;
        let g = Graph::from_text(c_str(text, "text")?)?;
        *slot = Box::into_raw(Box::new(GcgtGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `graph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gcgt_graph_free(graph: *mut GcgtGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gcgt_graph_n(graph: *const GcgtGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gcgt_graph_m(graph: *const GcgtGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.m())
}

/// Endpoints of edge `id`.
///
/// # Safety
/// `graph` must be a live handle; `u_out`, `v_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_graph_edge(
    graph: *const GcgtGraph,
    id: usize,
    u_out: *mut usize,
    v_out: *mut usize,
) -> GcgtStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let (u_slot, v_slot) = (out(u_out, "u_out")?, out(v_out, "v_out")?);
        if id >= g.m() {
            return Err(Error::InvalidParameter(format!("edge {id} out of range (m = {})", g.m())).into());
        }
        (*u_slot, *v_slot) = g.edge(id);
        Ok(())
    })
}

/// Global minimum edge cut (0 for a disconnected graph).
///
/// # Safety
/// `graph` must be a live handle; `cut_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_graph_min_cut(graph: *const GcgtGraph, cut_out: *mut usize) -> GcgtStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let slot = out(cut_out, "cut_out")?;
        *slot = min_cut(g)?;
        Ok(())
    })
}

fn boxed(tests: TestCollection) -> *mut GcgtTests {
    Box::into_raw(Box::new(GcgtTests(tests)))
}

/// Connected-subgraph tests: `tau` rounds of `G(p)` with `p = 1/(delta d)`,
/// keeping components of at least `beta n` vertices (only the largest one
/// when `largest_only` is set).
///
/// # Safety
/// `graph` must be a live handle; `tests_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_tests_subgraph(
    graph: *const GcgtGraph,
    d: usize,
    delta: f64,
    beta: f64,
    tau: usize,
    largest_only: bool,
    seed: u64,
    tests_out: *mut *mut GcgtTests,
) -> GcgtStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let slot = out(tests_out, "tests_out")?;
        let mode = if largest_only {
            ComponentMode::LargestOnly
        } else {
            ComponentMode::AllLarge
        };
        let params = MakeTestsParams { d, delta, beta, tau, mode, seed };
        *slot = boxed(make_tests(g, &params)?);
        Ok(())
    })
}

/// `tau` unconstrained tests over `m` items, each item included with
/// probability `1/(d+1)`.
///
/// # Safety
/// `tests_out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_tests_random(
    m: usize,
    d: usize,
    tau: usize,
    seed: u64,
    tests_out: *mut *mut GcgtTests,
) -> GcgtStatus {
    guard(|| {
        let slot = out(tests_out, "tests_out")?;
        *slot = boxed(random_tests(m, d, tau, seed)?);
        Ok(())
    })
}

/// `tau` random-walk tests with length multiplier `l`; the mixing time is
/// estimated from `seed`.
///
/// # Safety
/// `graph` must be a live handle; `tests_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_tests_walk(
    graph: *const GcgtGraph,
    d: usize,
    l: f64,
    tau: usize,
    seed: u64,
    tests_out: *mut *mut GcgtTests,
) -> GcgtStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let slot = out(tests_out, "tests_out")?;
        *slot = boxed(random_walk_tests(g, &WalkParams::for_graph(g, d, l, tau, seed)?)?);
        Ok(())
    })
}

/// Parses the `m t` test-collection text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `tests_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_tests_from_text(text: *const c_char, tests_out: *mut *mut GcgtTests) -> GcgtStatus {
    guard(|| {
        let slot = out(tests_out, "tests_out")?;
        *slot = boxed(TestCollection::from_text(c_str(text, "text")?)?);
        Ok(())
    })
}

/// Serializes a collection to its text format, NUL-terminated. `len_out`
/// receives the byte length including the terminator.
///
/// # Safety
/// `tests` must be a live handle; `buf` must point to `cap` writable
/// bytes (or be null with `cap = 0`); `len_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_tests_to_text(
    tests: *const GcgtTests,
    buf: *mut c_char,
    cap: usize,
    len_out: *mut usize,
) -> GcgtStatus {
    guard(|| {
        let t = &deref(tests, "tests")?.0;
        let mut bytes = t.to_text().into_bytes();
        bytes.push(0);
        let bytes: Vec<c_char> = bytes.into_iter().map(|b| b as c_char).collect();
        fill(&bytes, buf, cap, len_out)
    })
}

/// Number of tests, or 0 for a null handle.
///
/// # Safety
/// `tests` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gcgt_tests_len(tests: *const GcgtTests) -> usize {
    tests.as_ref().map_or(0, |t| t.0.len())
}

/// Universe size, or 0 for a null handle.
///
/// # Safety
/// `tests` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gcgt_tests_m(tests: *const GcgtTests) -> usize {
    tests.as_ref().map_or(0, |t| t.0.m())
}

/// Ascending edge ids of test `index`.
///
/// # Safety
/// `tests` must be a live handle; `buf` must point to `cap` writable
/// elements (or be null with `cap = 0`); `len_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_tests_get(
    tests: *const GcgtTests,
    index: usize,
    buf: *mut usize,
    cap: usize,
    len_out: *mut usize,
) -> GcgtStatus {
    guard(|| {
        let t = &deref(tests, "tests")?.0;
        let test = t
            .tests()
            .get(index)
            .ok_or_else(|| Error::InvalidParameter(format!("test {index} out of range ({} tests)", t.len())))?;
        let ids: Vec<usize> = test.iter().collect();
        fill(&ids, buf, cap, len_out)
    })
}

/// # Safety
/// `tests` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gcgt_tests_free(tests: *mut GcgtTests) {
    if !tests.is_null() {
        drop(Box::from_raw(tests));
    }
}

/// Exact `d`-disjunctness check. On a violation `*disjunct_out` is false,
/// `*edge_out` holds the separated edge and the blocking set goes to
/// `blocking`/`blocking_len_out` (capacity `d` always suffices).
///
/// # Safety
/// `tests` must be a live handle; `blocking` must point to `cap` writable
/// elements (or be null with `cap = 0`); other outputs valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_check_disjunct(
    tests: *const GcgtTests,
    d: usize,
    disjunct_out: *mut bool,
    edge_out: *mut usize,
    blocking: *mut usize,
    cap: usize,
    blocking_len_out: *mut usize,
) -> GcgtStatus {
    guard(|| {
        let t = &deref(tests, "tests")?.0;
        let (flag, edge, len) = (
            out(disjunct_out, "disjunct_out")?,
            out(edge_out, "edge_out")?,
            out(blocking_len_out, "blocking_len_out")?,
        );
        let report = check_disjunct(t, d)?;
        match report.witness {
            None => {
                *len = 0;
                *flag = true;
            }
            Some(w) => {
                let ids: Vec<usize> = w.defectives.iter().collect();
                fill(&ids, blocking, cap, len)?;
                *edge = w.edge;
                *flag = false;
            }
        }
        Ok(())
    })
}

/// Outcome of every test for the failed edges `defective[..count]`:
/// `outcomes[i]` is 1 iff test `i` contains a failed edge.
///
/// # Safety
/// `tests` must be a live handle; `defective` must point to `count`
/// readable elements; `outcomes` to `cap` writable bytes; `len_out` valid.
#[no_mangle]
pub unsafe extern "C" fn gcgt_run_tests(
    tests: *const GcgtTests,
    defective: *const usize,
    count: usize,
    outcomes: *mut u8,
    cap: usize,
    len_out: *mut usize,
) -> GcgtStatus {
    guard(|| {
        let t = &deref(tests, "tests")?.0;
        let ids = slice(defective, count, "defective")?;
        if let Some(&bad) = ids.iter().find(|&&e| e >= t.m()) {
            return Err(Error::InvalidParameter(format!("edge {bad} out of range (m = {})", t.m())).into());
        }
        let b = EdgeSet::from_indices(t.m(), ids.iter().copied());
        let bits: Vec<u8> = run_tests(t, &b)?.0.into_iter().map(u8::from).collect();
        fill(&bits, outcomes, cap, len_out)
    })
}

/// Naive decoder: the edges all of whose tests are positive. `outcomes`
/// holds one byte per test, nonzero meaning positive.
///
/// # Safety
/// `tests` must be a live handle; `outcomes` must point to `count`
/// readable bytes; `edges` to `cap` writable elements; `len_out` valid.
#[no_mangle]
pub unsafe extern "C" fn gcgt_decode(
    tests: *const GcgtTests,
    outcomes: *const u8,
    count: usize,
    edges: *mut usize,
    cap: usize,
    len_out: *mut usize,
) -> GcgtStatus {
    guard(|| {
        let t = &deref(tests, "tests")?.0;
        let bits = slice(outcomes, count, "outcomes")?;
        let o = OutcomeVector(bits.iter().map(|&b| b != 0).collect());
        let ids: Vec<usize> = decode(t, &o)?.iter().collect();
        fill(&ids, edges, cap, len_out)
    })
}

/// Probability that a ±1 walk stepping up with probability `gamma`
/// reaches `+a` before `-b`.
///
/// # Safety
/// `prob_out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn gcgt_gamblers_ruin(gamma: f64, a: u32, b: u32, prob_out: *mut f64) -> GcgtStatus {
    guard(|| {
        let slot = out(prob_out, "prob_out")?;
        *slot = gamblers_ruin(&RuinParams::new(gamma, a, b)?);
        Ok(())
    })
}
