//! C ABI for `topk-afd`.
//!
//! Relations and results are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns a
//! [`TopkAfdStatus`]; on failure a message for the calling thread is
//! available from [`topk_afd_last_error`]. Panics never cross the boundary.
//!
//! # Safety
//!
//! Pointers passed in must be valid for the access described on each
//! function. Strings are NUL-terminated UTF-8. Pointers handed out stay valid
//! until the handle they were obtained from is freed.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Instant;

use topk_afd::relation::{load_csv, LoadOptions};
use topk_afd::search::theoretical_candidate_count;
use topk_afd::{run_base, run_opt, Error, Relation, ScoredAfd, SearchConfig, SearchStats};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopkAfdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    MalformedInput = 4,
    Overflow = 5,
    Panic = 6,
}

/// Engine selector. Values other than the enumerators are undefined
/// behaviour.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TopkAfdAlgorithm {
    Base = 0,
    Opt = 1,
}

/// CSV parsing options. `null_token` may be NULL, meaning only empty cells
/// are NULL.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TopkAfdLoadOptions {
    pub delimiter: u8,
    pub has_header: bool,
    pub null_token: *const c_char,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopkAfdConfig {
    pub k: usize,
    pub max_lhs: usize,
    pub ub_pruning: bool,
    pub fd_pruning: bool,
}

/// One ranked dependency. `lhs` points at `lhs_len` attribute indices owned
/// by the result handle.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TopkAfdEntry {
    pub score: f64,
    pub rho: f64,
    pub pdep_cond: f64,
    pub pdep_marg: f64,
    pub distinct_lhs: u64,
    pub valid_count: u64,
    pub rhs: usize,
    pub lhs: *const usize,
    pub lhs_len: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TopkAfdStats {
    pub evaluated_candidates: u64,
    pub exact_fd_count: u64,
    pub pruned_by_exact_fd: u64,
    pub pruned_by_upper_bound: u64,
    pub degenerate_skipped: u64,
    pub elapsed_ms: f64,
}

/// Opaque loaded relation.
pub struct TopkAfdRelation {
    relation: Relation,
    names: Vec<CString>,
}

/// Opaque ranked result of one search.
pub struct TopkAfdResult {
    ranked: Vec<ScoredAfd>,
    stats: SearchStats,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn fail(status: TopkAfdStatus, message: impl Into<String>) -> TopkAfdStatus {
    set_error(message);
    status
}

fn status_of(err: &Error) -> TopkAfdStatus {
    match err {
        Error::Io(_) => TopkAfdStatus::Io,
        Error::EmptyInput | Error::RaggedRow { .. } | Error::Malformed { .. } => TopkAfdStatus::MalformedInput,
        Error::Overflow { .. } => TopkAfdStatus::Overflow,
        _ => TopkAfdStatus::InvalidArgument,
    }
}

fn guard(body: impl FnOnce() -> TopkAfdStatus) -> TopkAfdStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(TopkAfdStatus::Panic, format!("internal panic: {message}"))
        }
    }
}

unsafe fn load_options(options: *const TopkAfdLoadOptions) -> Result<LoadOptions, TopkAfdStatus> {
    let Some(o) = options.as_ref() else {
        return Ok(LoadOptions::default());
    };
    let null_token = if o.null_token.is_null() {
        String::new()
    } else {
        match CStr::from_ptr(o.null_token).to_str() {
            Ok(s) => s.to_owned(),
            Err(_) => return Err(fail(TopkAfdStatus::InvalidArgument, "null token is not UTF-8")),
        }
    };
    Ok(LoadOptions {
        delimiter: o.delimiter,
        has_header: o.has_header,
        null_token,
    })
}

unsafe fn finish_load(
    loaded: topk_afd::Result<Relation>,
    out: *mut *mut TopkAfdRelation,
) -> TopkAfdStatus {
    let relation = match loaded {
        Ok(r) => r,
        Err(e) => return fail(status_of(&e), e.to_string()),
    };
    let mut names = Vec::with_capacity(relation.attribute_count());
    for name in relation.schema().names() {
        match CString::new(name.as_str()) {
            Ok(c) => names.push(c),
            Err(_) => return fail(TopkAfdStatus::MalformedInput, "attribute name contains a NUL byte"),
        }
    }
    *out = Box::into_raw(Box::new(TopkAfdRelation { relation, names }));
    TopkAfdStatus::Ok
}

/// Options equal to the library defaults: comma, header row, no null token.
#[no_mangle]
pub extern "C" fn topk_afd_load_options_default() -> TopkAfdLoadOptions {
    TopkAfdLoadOptions {
        delimiter: b',',
        has_header: true,
        null_token: ptr::null(),
    }
}

/// Loads a CSV file. `options` may be NULL. On success `*out` receives a
/// handle to free with [`topk_afd_relation_free`].
///
/// # Safety
///
/// `path` is a NUL-terminated string, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_relation_load_csv(
    path: *const c_char,
    options: *const TopkAfdLoadOptions,
    out: *mut *mut TopkAfdRelation,
) -> TopkAfdStatus {
    guard(|| {
        if path.is_null() || out.is_null() {
            return fail(TopkAfdStatus::NullPointer, "path and out must be non-NULL");
        }
        *out = ptr::null_mut();
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            return fail(TopkAfdStatus::InvalidArgument, "path is not UTF-8");
        };
        let options = match load_options(options) {
            Ok(o) => o,
            Err(status) => return status,
        };
        let loaded = std::fs::File::open(path)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{path}: {e}"))))
            .and_then(|f| load_csv(std::io::BufReader::new(f), &options));
        finish_load(loaded, out)
    })
}

/// Parses CSV text held in memory.
///
/// # Safety
///
/// `data` points at `len` readable bytes (it may be NULL when `len` is 0),
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_relation_load_buffer(
    data: *const u8,
    len: usize,
    options: *const TopkAfdLoadOptions,
    out: *mut *mut TopkAfdRelation,
) -> TopkAfdStatus {
    guard(|| {
        if out.is_null() || (data.is_null() && len > 0) {
            return fail(TopkAfdStatus::NullPointer, "data and out must be non-NULL");
        }
        *out = ptr::null_mut();
        let bytes: &[u8] = if len == 0 { &[] } else { std::slice::from_raw_parts(data, len) };
        let options = match load_options(options) {
            Ok(o) => o,
            Err(status) => return status,
        };
        finish_load(load_csv(bytes, &options), out)
    })
}

/// Releases a relation. NULL is ignored.
///
/// # Safety
///
/// `relation` came from a load function and is freed at most once.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_relation_free(relation: *mut TopkAfdRelation) {
    if !relation.is_null() {
        drop(Box::from_raw(relation));
    }
}

/// Row count, or 0 for NULL.
///
/// # Safety
///
/// `relation` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_relation_row_count(relation: *const TopkAfdRelation) -> usize {
    relation.as_ref().map_or(0, |r| r.relation.row_count())
}

/// Attribute count, or 0 for NULL.
///
/// # Safety
///
/// `relation` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_relation_attribute_count(relation: *const TopkAfdRelation) -> usize {
    relation.as_ref().map_or(0, |r| r.relation.attribute_count())
}

/// Name of attribute `index`, or NULL when out of range. Owned by the
/// relation.
///
/// # Safety
///
/// `relation` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_relation_attribute_name(
    relation: *const TopkAfdRelation,
    index: usize,
) -> *const c_char {
    relation
        .as_ref()
        .and_then(|r| r.names.get(index))
        .map_or(ptr::null(), |n| n.as_ptr())
}

/// k = 20, LHS size up to 5, both pruning rules on.
#[no_mangle]
pub extern "C" fn topk_afd_config_default() -> TopkAfdConfig {
    let cfg = SearchConfig::default();
    TopkAfdConfig {
        k: cfg.k,
        max_lhs: cfg.max_lhs,
        ub_pruning: cfg.ub_pruning,
        fd_pruning: cfg.fd_pruning,
    }
}

/// Runs one engine. `config` may be NULL for the defaults. On success
/// `*out` receives a handle to free with [`topk_afd_result_free`].
///
/// # Safety
///
/// `relation` is a live handle, `config` is NULL or readable, `out` is
/// writable. `algorithm` must be one of the declared enumerators.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_discover(
    relation: *const TopkAfdRelation,
    config: *const TopkAfdConfig,
    algorithm: TopkAfdAlgorithm,
    out: *mut *mut TopkAfdResult,
) -> TopkAfdStatus {
    guard(|| {
        if out.is_null() {
            return fail(TopkAfdStatus::NullPointer, "out must be non-NULL");
        }
        *out = ptr::null_mut();
        let Some(handle) = relation.as_ref() else {
            return fail(TopkAfdStatus::NullPointer, "relation must be non-NULL");
        };
        let c = config.as_ref().copied().unwrap_or_else(|| topk_afd_config_default());
        let cfg = SearchConfig::new(c.k)
            .with_max_lhs(c.max_lhs)
            .with_ub_pruning(c.ub_pruning)
            .with_fd_pruning(c.fd_pruning);
        if let Err(e) = cfg.validate() {
            return fail(status_of(&e), e.to_string());
        }
        let start = Instant::now();
        let (ranked, mut stats) = match algorithm {
            TopkAfdAlgorithm::Base => run_base(&handle.relation, &cfg),
            TopkAfdAlgorithm::Opt => run_opt(&handle.relation, &cfg),
        };
        stats.elapsed = start.elapsed();
        *out = Box::into_raw(Box::new(TopkAfdResult { ranked, stats }));
        TopkAfdStatus::Ok
    })
}

/// Number of ranked entries, or 0 for NULL.
///
/// # Safety
///
/// `result` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_result_len(result: *const TopkAfdResult) -> usize {
    result.as_ref().map_or(0, |r| r.ranked.len())
}

/// Copies entry `index` (0 is the best) into `*out`.
///
/// # Safety
///
/// `result` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_result_entry(
    result: *const TopkAfdResult,
    index: usize,
    out: *mut TopkAfdEntry,
) -> TopkAfdStatus {
    guard(|| {
        let (Some(r), false) = (result.as_ref(), out.is_null()) else {
            return fail(TopkAfdStatus::NullPointer, "result and out must be non-NULL");
        };
        let Some(afd) = r.ranked.get(index) else {
            return fail(
                TopkAfdStatus::InvalidArgument,
                format!("index {index} out of range for {} entries", r.ranked.len()),
            );
        };
        let d = &afd.diagnostics;
        *out = TopkAfdEntry {
            score: afd.score,
            rho: d.rho,
            pdep_cond: d.pdep_cond,
            pdep_marg: d.pdep_marg,
            distinct_lhs: d.distinct_lhs,
            valid_count: d.valid_count,
            rhs: afd.rhs,
            lhs: afd.lhs.as_ptr(),
            lhs_len: afd.lhs.len(),
        };
        TopkAfdStatus::Ok
    })
}

/// Copies the run counters into `*out`.
///
/// # Safety
///
/// `result` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_result_stats(result: *const TopkAfdResult, out: *mut TopkAfdStats) -> TopkAfdStatus {
    guard(|| {
        let (Some(r), false) = (result.as_ref(), out.is_null()) else {
            return fail(TopkAfdStatus::NullPointer, "result and out must be non-NULL");
        };
        let s = &r.stats;
        *out = TopkAfdStats {
            evaluated_candidates: s.evaluated_candidates,
            exact_fd_count: s.exact_fd_count,
            pruned_by_exact_fd: s.pruned_by_exact_fd,
            pruned_by_upper_bound: s.pruned_by_upper_bound,
            degenerate_skipped: s.degenerate_skipped,
            elapsed_ms: s.elapsed.as_secs_f64() * 1e3,
        };
        TopkAfdStatus::Ok
    })
}

/// Releases a result. NULL is ignored.
///
/// # Safety
///
/// `result` came from [`topk_afd_discover`] and is freed at most once.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_result_free(result: *mut TopkAfdResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Number of `X -> A` candidates with `1 <= |X| <= max_lhs` over
/// `attributes` attributes.
///
/// # Safety
///
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn topk_afd_theoretical_candidate_count(
    attributes: usize,
    max_lhs: usize,
    out: *mut u64,
) -> TopkAfdStatus {
    guard(|| {
        if out.is_null() {
            return fail(TopkAfdStatus::NullPointer, "out must be non-NULL");
        }
        match theoretical_candidate_count(attributes, max_lhs) {
            Ok(count) => match u64::try_from(count) {
                Ok(c) => {
                    *out = c;
                    TopkAfdStatus::Ok
                }
                Err(_) => fail(TopkAfdStatus::Overflow, format!("{count} does not fit in 64 bits")),
            },
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// Message describing the last failure on this thread, or NULL. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn topk_afd_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn topk_afd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
