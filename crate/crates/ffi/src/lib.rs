//! C ABI over `glim-core`.
//!
//! Every function returns a [`GlimStatus`]; on failure the message is kept
//! per thread and read with [`glim_last_error`]. Graphs are opaque handles
//! released with [`glim_graph_free`]; strings handed out are released with
//! [`glim_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use glim_core::cayley::{limit_ball, Mode};
use glim_core::constructions::{product_c4, random_regular};
use glim_core::format::GraphFile;
use glim_core::graph::{canonical_code, extract_ball, girth};
use glim_core::limits::ball_census;
use glim_core::obstruction::max_independent_set;
use glim_core::obstruction::report::{theorem1_report_with, theorem2_report, Theorem1Options};
use glim_core::GlimError;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlimStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Format = 3,
    /// A computation finished but one of its checks failed.
    CheckFailed = 4,
    Internal = 5,
}

/// Opaque graph handle; may carry labels, fibers, marks and a cycle.
pub struct GlimGraph {
    file: GraphFile,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &GlimError) -> GlimStatus {
    match e {
        GlimError::Format(_) | GlimError::Json(_) => GlimStatus::Format,
        GlimError::Invariant(_) | GlimError::Io(_) => GlimStatus::Internal,
        _ => GlimStatus::InvalidArgument,
    }
}

struct Fail(GlimStatus, String);

impl From<GlimError> for Fail {
    fn from(e: GlimError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GlimStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GlimStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside glim");
            GlimStatus::Internal
        }
    }
}

fn null() -> Fail {
    Fail(GlimStatus::NullPointer, "null pointer argument".into())
}

unsafe fn graph_ref<'a>(g: *const GlimGraph) -> Result<&'a GlimGraph, Fail> {
    g.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut GlimGraph, file: GraphFile) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(GlimGraph { file })));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| Fail(GlimStatus::Internal, "string contains nul".into()))?;
    out.write(c.into_raw());
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn glim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn glim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn glim_graph_free(g: *mut GlimGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Parse a `glim-graph-v1` document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_graph_from_json(json: *const c_char, out: *mut *mut GlimGraph) -> GlimStatus {
    guard(|| {
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| Fail(GlimStatus::Format, "input is not UTF-8".into()))?;
        put_graph(out, GraphFile::from_json(text)?)
    })
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_graph_to_json(g: *const GlimGraph, out: *mut *mut c_char) -> GlimStatus {
    guard(|| put_string(out, graph_ref(g)?.file.to_json()))
}

/// # Safety
/// `g` must be a live handle; `vertices` and `edges` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_graph_counts(g: *const GlimGraph, vertices: *mut usize, edges: *mut usize) -> GlimStatus {
    guard(|| {
        let f = &graph_ref(g)?.file;
        put(vertices, f.n)?;
        put(edges, f.edges.len())
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_random_regular(n: usize, d: usize, seed: u64, out: *mut *mut GlimGraph) -> GlimStatus {
    guard(|| put_graph(out, GraphFile::from_graph(&random_regular(n, d, seed)?)))
}

/// Product with `C4`; the result carries fiber indices.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_product_c4(g: *const GlimGraph, out: *mut *mut GlimGraph) -> GlimStatus {
    guard(|| {
        let h = graph_ref(g)?.file.graph()?;
        put_graph(out, GraphFile::from_fibered(&product_c4(&h)?))
    })
}

/// Girth, or 0 for a forest.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_girth(g: *const GlimGraph, out: *mut usize) -> GlimStatus {
    guard(|| put(out, girth(&graph_ref(g)?.file.graph()?).value().unwrap_or(0)))
}

/// Independence number; `exact` tells whether `size` is proven optimal.
///
/// # Safety
/// `g` must be a live handle; `size` and `exact` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_mis(g: *const GlimGraph, exact_cap: usize, size: *mut usize, exact: *mut bool) -> GlimStatus {
    guard(|| {
        let m = max_independent_set(&graph_ref(g)?.file.graph()?, exact_cap);
        put(size, m.size)?;
        put(exact, m.exact)
    })
}

/// Radius-`radius` ball of the limit graph, rooted at vertex 0.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_limit_ball(radius: usize, labelled: bool, out: *mut *mut GlimGraph) -> GlimStatus {
    guard(|| {
        let file = if labelled {
            let d = limit_ball(radius, Mode::Diagram).ball.diagram().expect("labelled ball");
            GraphFile::from_diagram(&d)
        } else {
            GraphFile::from_graph(limit_ball(radius, Mode::Graph).ball.graph())
        };
        put_graph(out, file)
    })
}

/// Census of ball codes as `code,count,frequency` CSV.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_ball_census_csv(g: *const GlimGraph, radius: usize, out: *mut *mut c_char) -> GlimStatus {
    guard(|| {
        let view = graph_ref(g)?.file.view()?;
        put_string(out, ball_census(view.as_ref(), radius)?.to_csv())
    })
}

/// Canonical code of the ball of `radius` around `root`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_canonical_code(
    g: *const GlimGraph,
    root: usize,
    radius: usize,
    out: *mut *mut c_char,
) -> GlimStatus {
    guard(|| {
        let view = graph_ref(g)?.file.view()?;
        let ball = extract_ball(view.as_ref(), root, radius)?;
        put_string(out, canonical_code(&ball).0)
    })
}

unsafe fn report<T: serde::Serialize>(value: &T, ok: bool, out_json: *mut *mut c_char, pass: *mut bool) -> Result<(), Fail> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Fail(GlimStatus::Internal, e.to_string()))?;
    put_string(out_json, text + "\n")?;
    if !pass.is_null() {
        pass.write(ok);
    }
    if ok {
        Ok(())
    } else {
        Err(Fail(GlimStatus::CheckFailed, "report checks failed".into()))
    }
}

/// Report JSON is written even when a check fails (status `CheckFailed`).
/// `pass` may be null.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_theorem1_report(
    n: usize,
    radius: usize,
    trials: usize,
    budget: usize,
    seed: u64,
    out_json: *mut *mut c_char,
    pass: *mut bool,
) -> GlimStatus {
    guard(|| {
        let opts = Theorem1Options { budget, ..Default::default() };
        let r = theorem1_report_with(n, radius, trials, seed, opts)?;
        report(&r, r.pass, out_json, pass)
    })
}

/// As [`glim_theorem1_report`], for the `K_n` family.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn glim_theorem2_report(n: usize, seed: u64, out_json: *mut *mut c_char, pass: *mut bool) -> GlimStatus {
    guard(|| {
        let r = theorem2_report(n, seed)?;
        report(&r, r.pass, out_json, pass)
    })
}
