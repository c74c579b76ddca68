// SPDX-License-Identifier: Apache-2.0

//! C ABI over [`bidyck::Engine`].
//!
//! Every function returns a [`BidyckStatus`] and writes results through out
//! pointers. Handles are opaque; free them with [`bidyck_engine_free`]. A
//! handle must not be used from two threads at once.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bidyck::graph::parse_graph;
use bidyck::{Engine, Error};

/// Opaque engine handle.
pub struct BidyckEngine {
    inner: Engine,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BidyckStatus {
    Ok = 0,
    NullPointer = 1,
    NodeOutOfRange = 2,
    LabelOutOfRange = 3,
    AbsentEdge = 4,
    ParseError = 5,
    InvalidArgument = 6,
    Utf8Error = 7,
    /// The engine panicked; the handle must be freed and not reused.
    InternalError = 8,
}

impl From<&Error> for BidyckStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => BidyckStatus::ParseError,
            Error::AbsentEdge { .. } => BidyckStatus::AbsentEdge,
            Error::NodeOutOfRange { .. } => BidyckStatus::NodeOutOfRange,
            Error::LabelOutOfRange { .. } => BidyckStatus::LabelOutOfRange,
            Error::OracleLimit { .. } | Error::InvalidArgument(_) => BidyckStatus::InvalidArgument,
        }
    }
}

fn guard(f: impl FnOnce() -> BidyckStatus) -> BidyckStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(BidyckStatus::InternalError)
}

fn status(r: bidyck::Result<()>) -> BidyckStatus {
    match r {
        Ok(()) => BidyckStatus::Ok,
        Err(e) => (&e).into(),
    }
}

unsafe fn engine_ref<'a>(e: *const BidyckEngine) -> Option<&'a Engine> {
    e.as_ref().map(|h| &h.inner)
}

unsafe fn engine_mut<'a>(e: *mut BidyckEngine) -> Option<&'a mut Engine> {
    e.as_mut().map(|h| &mut h.inner)
}

fn boxed(inner: Engine) -> *mut BidyckEngine {
    Box::into_raw(Box::new(BidyckEngine { inner }))
}

/// Creates an engine over `n` nodes and `k` labels with no edges.
///
/// # Safety
/// `out` must be null or valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn bidyck_engine_new(
    n: usize,
    k: usize,
    out: *mut *mut BidyckEngine,
) -> BidyckStatus {
    if out.is_null() {
        return BidyckStatus::NullPointer;
    }
    *out = ptr::null_mut();
    if k == 0 || n > u32::MAX as usize {
        return BidyckStatus::InvalidArgument;
    }
    guard(|| {
        *out = boxed(Engine::new(n, k));
        BidyckStatus::Ok
    })
}

/// Creates an engine from graph text: an `n k` header followed by one
/// `u v label` line per edge copy.
///
/// # Safety
/// `text` must be null or a NUL-terminated string; `out` must be null or
/// valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn bidyck_engine_from_text(
    text: *const c_char,
    out: *mut *mut BidyckEngine,
) -> BidyckStatus {
    if text.is_null() || out.is_null() {
        return BidyckStatus::NullPointer;
    }
    *out = ptr::null_mut();
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return BidyckStatus::Utf8Error;
    };
    guard(|| match parse_graph(text) {
        Ok(g) => {
            *out = boxed(Engine::from_graph(&g));
            BidyckStatus::Ok
        }
        Err(e) => (&e).into(),
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `engine` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bidyck_engine_free(engine: *mut BidyckEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Adds one copy of the closing edge `u -label-> v`.
///
/// # Safety
/// `engine` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bidyck_insert(
    engine: *mut BidyckEngine,
    u: usize,
    v: usize,
    label: usize,
) -> BidyckStatus {
    let Some(e) = engine_mut(engine) else {
        return BidyckStatus::NullPointer;
    };
    guard(|| status(e.insert(u, v, label)))
}

/// Removes one copy of `u -label-> v`; fails with `AbsentEdge` if none exists.
///
/// # Safety
/// `engine` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bidyck_delete(
    engine: *mut BidyckEngine,
    u: usize,
    v: usize,
    label: usize,
) -> BidyckStatus {
    let Some(e) = engine_mut(engine) else {
        return BidyckStatus::NullPointer;
    };
    guard(|| status(e.delete(u, v, label)))
}

/// Writes whether `u` and `v` are in the same DSCC.
///
/// # Safety
/// `engine` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bidyck_same(
    engine: *const BidyckEngine,
    u: usize,
    v: usize,
    out: *mut bool,
) -> BidyckStatus {
    let Some(e) = engine_ref(engine) else {
        return BidyckStatus::NullPointer;
    };
    if out.is_null() {
        return BidyckStatus::NullPointer;
    }
    if u >= e.n() || v >= e.n() {
        return BidyckStatus::NodeOutOfRange;
    }
    guard(|| {
        *out = e.same_dscc(u, v);
        BidyckStatus::Ok
    })
}

/// Writes the representative of `u`'s DSCC. Two nodes share a DSCC iff
/// their representatives are equal; representatives may change after any
/// update.
///
/// # Safety
/// `engine` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bidyck_repr(
    engine: *const BidyckEngine,
    u: usize,
    out: *mut usize,
) -> BidyckStatus {
    let Some(e) = engine_ref(engine) else {
        return BidyckStatus::NullPointer;
    };
    if out.is_null() {
        return BidyckStatus::NullPointer;
    }
    if u >= e.n() {
        return BidyckStatus::NodeOutOfRange;
    }
    guard(|| {
        *out = e.dscc_repr(u);
        BidyckStatus::Ok
    })
}

/// Writes the node and label counts.
///
/// # Safety
/// `engine` must be null or a live handle; `n` and `k` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bidyck_dims(
    engine: *const BidyckEngine,
    n: *mut usize,
    k: *mut usize,
) -> BidyckStatus {
    let Some(e) = engine_ref(engine) else {
        return BidyckStatus::NullPointer;
    };
    if n.is_null() || k.is_null() {
        return BidyckStatus::NullPointer;
    }
    *n = e.n();
    *k = e.k();
    BidyckStatus::Ok
}

/// Writes the work counted by the last update (finds, list cells visited,
/// primal edge operations and queue extractions).
///
/// # Safety
/// `engine` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn bidyck_last_op_work(
    engine: *const BidyckEngine,
    out: *mut u64,
) -> BidyckStatus {
    let Some(e) = engine_ref(engine) else {
        return BidyckStatus::NullPointer;
    };
    if out.is_null() {
        return BidyckStatus::NullPointer;
    }
    *out = e.work_counters().last_op.nodes_touched();
    BidyckStatus::Ok
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn bidyck_status_message(status: BidyckStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BidyckStatus::Ok => c"ok",
        BidyckStatus::NullPointer => c"null pointer argument",
        BidyckStatus::NodeOutOfRange => c"node out of range",
        BidyckStatus::LabelOutOfRange => c"label out of range",
        BidyckStatus::AbsentEdge => c"edge not present",
        BidyckStatus::ParseError => c"malformed graph text",
        BidyckStatus::InvalidArgument => c"invalid argument",
        BidyckStatus::Utf8Error => c"text is not UTF-8",
        BidyckStatus::InternalError => c"internal error",
    };
    s.as_ptr()
}
