//! C ABI for the pgs parameterized matcher.
//!
//! Alphabets and matchers are opaque heap handles created by the `*_new`
//! functions and released by the matching `*_free`. Every fallible call
//! returns a [`PgsStatus`]; on failure [`pgs_last_error`] describes what went
//! wrong on the calling thread.
//!
//! Symbols are `uint32_t` codes. The `_bytes` variants take one symbol per
//! byte.

use std::cell::RefCell;
use std::ffi::{c_char, c_void, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;
use std::sync::Arc;

use pgs_core::{AlphabetPartition, EngineOptions, Error, Matcher, PString, Symbol};

/// Result codes. `PGS_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidAlphabet = 2,
    UnknownSymbol = 3,
    EmptyPattern = 4,
    PartitionMismatch = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// A constant/parameter partition of the symbol codes.
pub struct PgsAlphabet {
    partition: Arc<AlphabetPartition>,
}

/// A preprocessed pattern, reusable across texts and threads.
pub struct PgsMatcher {
    matcher: Matcher,
    partition: Arc<AlphabetPartition>,
}

/// Work counters of one search, preprocessing included.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PgsMetrics {
    pub match_calls: u64,
    pub loop_iterations: u64,
    pub count_decrements: u64,
    pub peak_aux_words: u64,
}

/// One prefix period and its reach.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PgsPeriod {
    pub period: usize,
    pub reach: usize,
}

/// Called once per match with its offset, in ascending order.
pub type PgsMatchCallback = Option<unsafe extern "C" fn(position: usize, user_data: *mut c_void)>;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: PgsStatus, msg: &str) -> PgsStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> PgsStatus {
    let status = match e {
        Error::OverlappingAlphabets { .. } | Error::CodeTooLarge { .. } => PgsStatus::InvalidAlphabet,
        Error::UnknownSymbol { .. } => PgsStatus::UnknownSymbol,
        Error::EmptyPattern => PgsStatus::EmptyPattern,
        Error::PartitionMismatch => PgsStatus::PartitionMismatch,
        _ => PgsStatus::Internal,
    };
    fail(status, &e.to_string())
}

fn guard(f: impl FnOnce() -> PgsStatus) -> PgsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(PgsStatus::Internal, "internal panic"),
    }
}

/// An empty slice for a null pointer with zero length, `None` for a null
/// pointer with nonzero length.
unsafe fn view<'a, T>(data: *const T, len: usize) -> Option<&'a [T]> {
    if data.is_null() {
        return (len == 0).then_some(&[]);
    }
    // SAFETY: the caller promises `data` points to `len` readable elements.
    Some(unsafe { slice::from_raw_parts(data, len) })
}

fn symbols_of(codes: &[u32]) -> Vec<Symbol> {
    codes.iter().map(|&c| Symbol(c)).collect()
}

fn symbols_of_bytes(bytes: &[u8]) -> Vec<Symbol> {
    bytes.iter().map(|&b| Symbol::from(b)).collect()
}

/// Message for the last failed call on this thread. Empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pgs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn pgs_status_str(status: PgsStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PgsStatus::Ok => c"ok",
        PgsStatus::NullPointer => c"null pointer",
        PgsStatus::InvalidAlphabet => c"invalid alphabet",
        PgsStatus::UnknownSymbol => c"symbol not in alphabet",
        PgsStatus::EmptyPattern => c"empty pattern",
        PgsStatus::PartitionMismatch => c"alphabet mismatch",
        PgsStatus::BufferTooSmall => c"buffer too small",
        PgsStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Creates an alphabet from explicit constant and parameter codes.
///
/// # Safety
/// `constants` and `params` must point to `n_constants` and `n_params`
/// readable codes (or be null with a zero count). `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pgs_alphabet_new(
    constants: *const u32,
    n_constants: usize,
    params: *const u32,
    n_params: usize,
    out: *mut *mut PgsAlphabet,
) -> PgsStatus {
    guard(|| {
        if out.is_null() {
            return fail(PgsStatus::NullPointer, "out is null");
        }
        let (Some(c), Some(p)) = (unsafe { view(constants, n_constants) }, unsafe { view(params, n_params) }) else {
            return fail(PgsStatus::NullPointer, "symbol array is null");
        };
        match AlphabetPartition::new(c.iter().copied(), p.iter().copied()) {
            Ok(partition) => {
                let handle = Box::new(PgsAlphabet { partition: Arc::new(partition) });
                unsafe { *out = Box::into_raw(handle) };
                PgsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Creates a byte alphabet: the given bytes are parameters, the other 256
/// minus `n_params` bytes are constants.
///
/// # Safety
/// `params` must point to `n_params` readable bytes (or be null with a zero
/// count). `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pgs_alphabet_new_bytes(
    params: *const u8,
    n_params: usize,
    out: *mut *mut PgsAlphabet,
) -> PgsStatus {
    guard(|| {
        if out.is_null() {
            return fail(PgsStatus::NullPointer, "out is null");
        }
        let Some(p) = (unsafe { view(params, n_params) }) else {
            return fail(PgsStatus::NullPointer, "params is null");
        };
        let handle = Box::new(PgsAlphabet { partition: Arc::new(AlphabetPartition::bytes(p)) });
        unsafe { *out = Box::into_raw(handle) };
        PgsStatus::Ok
    })
}

/// Number of parameter symbols in the alphabet, or 0 for null.
///
/// # Safety
/// `alphabet` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pgs_alphabet_param_count(alphabet: *const PgsAlphabet) -> usize {
    unsafe { alphabet.as_ref() }.map_or(0, |a| a.partition.param_count())
}

/// # Safety
/// `alphabet` must be null or a handle from `pgs_alphabet_new*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pgs_alphabet_free(alphabet: *mut PgsAlphabet) {
    if !alphabet.is_null() {
        drop(unsafe { Box::from_raw(alphabet) });
    }
}

fn build_matcher(alphabet: *const PgsAlphabet, pattern: Option<Vec<Symbol>>, out: *mut *mut PgsMatcher) -> PgsStatus {
    let Some(a) = (unsafe { alphabet.as_ref() }) else {
        return fail(PgsStatus::NullPointer, "alphabet is null");
    };
    if out.is_null() {
        return fail(PgsStatus::NullPointer, "out is null");
    }
    let Some(pattern) = pattern else {
        return fail(PgsStatus::NullPointer, "pattern is null");
    };
    match Matcher::from_symbols(a.partition.clone(), pattern, EngineOptions::from_env()) {
        Ok(matcher) => {
            let handle = Box::new(PgsMatcher { matcher, partition: a.partition.clone() });
            unsafe { *out = Box::into_raw(handle) };
            PgsStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Preprocesses a pattern. The matcher keeps its own reference to the
/// alphabet, which may be freed afterwards.
///
/// # Safety
/// `alphabet` must be a live handle, `pattern` must point to `len` codes and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pgs_matcher_new(
    alphabet: *const PgsAlphabet,
    pattern: *const u32,
    len: usize,
    out: *mut *mut PgsMatcher,
) -> PgsStatus {
    guard(|| build_matcher(alphabet, unsafe { view(pattern, len) }.map(symbols_of), out))
}

/// # Safety
/// As [`pgs_matcher_new`], with `pattern` pointing to `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn pgs_matcher_new_bytes(
    alphabet: *const PgsAlphabet,
    pattern: *const u8,
    len: usize,
    out: *mut *mut PgsMatcher,
) -> PgsStatus {
    guard(|| build_matcher(alphabet, unsafe { view(pattern, len) }.map(symbols_of_bytes), out))
}

fn find(
    matcher: *const PgsMatcher,
    text: Option<Vec<Symbol>>,
    callback: PgsMatchCallback,
    user_data: *mut c_void,
    metrics: *mut PgsMetrics,
) -> PgsStatus {
    let Some(h) = (unsafe { matcher.as_ref() }) else {
        return fail(PgsStatus::NullPointer, "matcher is null");
    };
    let Some(text) = text else {
        return fail(PgsStatus::NullPointer, "text is null");
    };
    let text = match PString::new(h.partition.clone(), text) {
        Ok(t) => t,
        Err(e) => return from_error(e),
    };
    let emit = |i: usize| {
        if let Some(cb) = callback {
            // SAFETY: the caller supplied a valid callback for `user_data`.
            unsafe { cb(i, user_data) }
        }
    };
    match h.matcher.find_each(&text, emit) {
        Ok(m) => {
            if let Some(out) = unsafe { metrics.as_mut() } {
                *out = PgsMetrics {
                    match_calls: m.match_calls,
                    loop_iterations: m.loop_iterations,
                    count_decrements: m.count_decrements,
                    peak_aux_words: m.peak_aux_words,
                };
            }
            PgsStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Reports every offset where the pattern p-matches `text` through
/// `callback`, which may be null. `metrics` may be null.
///
/// # Safety
/// `matcher` must be a live handle and `text` must point to `len` codes.
/// `callback` must not unwind.
#[no_mangle]
pub unsafe extern "C" fn pgs_matcher_find(
    matcher: *const PgsMatcher,
    text: *const u32,
    len: usize,
    callback: PgsMatchCallback,
    user_data: *mut c_void,
    metrics: *mut PgsMetrics,
) -> PgsStatus {
    guard(|| find(matcher, unsafe { view(text, len) }.map(symbols_of), callback, user_data, metrics))
}

/// # Safety
/// As [`pgs_matcher_find`], with `text` pointing to `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn pgs_matcher_find_bytes(
    matcher: *const PgsMatcher,
    text: *const u8,
    len: usize,
    callback: PgsMatchCallback,
    user_data: *mut c_void,
    metrics: *mut PgsMetrics,
) -> PgsStatus {
    guard(|| find(matcher, unsafe { view(text, len) }.map(symbols_of_bytes), callback, user_data, metrics))
}

/// Copies the prefix-period table into `out`. `*len` receives the table
/// length; if it exceeds `capacity`, nothing is copied and
/// `PGS_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `matcher` must be a live handle, `out` must have room for `capacity`
/// entries (or be null with zero capacity) and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pgs_matcher_prefix_periods(
    matcher: *const PgsMatcher,
    out: *mut PgsPeriod,
    capacity: usize,
    len: *mut usize,
) -> PgsStatus {
    guard(|| {
        let Some(h) = (unsafe { matcher.as_ref() }) else {
            return fail(PgsStatus::NullPointer, "matcher is null");
        };
        if len.is_null() {
            return fail(PgsStatus::NullPointer, "len is null");
        }
        let table = h.matcher.table().to_pairs();
        unsafe { *len = table.len() };
        if table.len() > capacity {
            return fail(PgsStatus::BufferTooSmall, "prefix-period buffer too small");
        }
        if table.is_empty() {
            return PgsStatus::Ok;
        }
        if out.is_null() {
            return fail(PgsStatus::NullPointer, "out is null");
        }
        for (i, (period, reach)) in table.into_iter().enumerate() {
            unsafe { out.add(i).write(PgsPeriod { period, reach }) };
        }
        PgsStatus::Ok
    })
}

/// # Safety
/// `matcher` must be null or a handle from `pgs_matcher_new*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pgs_matcher_free(matcher: *mut PgsMatcher) {
    if !matcher.is_null() {
        drop(unsafe { Box::from_raw(matcher) });
    }
}

/// Sets `*result` to whether `x` and `y` p-match under `alphabet`.
///
/// # Safety
/// `alphabet` must be a live handle, `x` and `y` must point to `x_len` and
/// `y_len` codes and `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pgs_pmatch(
    alphabet: *const PgsAlphabet,
    x: *const u32,
    x_len: usize,
    y: *const u32,
    y_len: usize,
    result: *mut bool,
) -> PgsStatus {
    guard(|| {
        let Some(a) = (unsafe { alphabet.as_ref() }) else {
            return fail(PgsStatus::NullPointer, "alphabet is null");
        };
        let (Some(x), Some(y)) = (unsafe { view(x, x_len) }, unsafe { view(y, y_len) }) else {
            return fail(PgsStatus::NullPointer, "string is null");
        };
        if result.is_null() {
            return fail(PgsStatus::NullPointer, "result is null");
        }
        let x = PString::new(a.partition.clone(), symbols_of(x));
        let y = PString::new(a.partition.clone(), symbols_of(y));
        match x.and_then(|x| y.and_then(|y| pgs_core::pmatch(&x, &y))) {
            Ok(w) => {
                unsafe { *result = w.is_some() };
                PgsStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
