//! C ABI for tridiss.
//!
//! Objects cross the boundary as opaque handles that the caller frees with
//! the matching `*_free` function. Every fallible call returns a
//! [`TridissStatus`]; on failure [`tridiss_last_error`] describes the
//! error until the next call on the same thread. Strings returned to the
//! caller are freed with [`tridiss_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tridiss::bitrade::text::parse_bitrade;
use tridiss::bitrade::{Bitrade, Triple};
use tridiss::enumerate::{
    enumerate_dissections, DissectionStore, EnumerateConfig, LabelledBitrade,
};
use tridiss::geometry::{
    automorphism_order, canonical_signature, classify_separated, is_perfect, Signature,
};
use tridiss::ingest::{eulerian_triangulations, parse_planar_code, triangulation_to_bitrade};
use tridiss::render::{render, FigureFormat};
use tridiss::solver::{pointed_integer_dissection, IntegerDissection, Orientation, OverlapCheck};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TridissStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    Solve = 5,
    OutOfRange = 6,
    Panic = 7,
}

/// A validated latin bitrade.
pub struct TridissBitrade(Bitrade);

/// A dissection at its minimal integer scale.
pub struct TridissDissection(IntegerDissection);

/// The result of an enumeration run.
pub struct TridissStore(DissectionStore);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TridissTriangle {
    /// 0 for an up-triangle, 1 for a down-triangle.
    pub orientation: u8,
    pub x: i64,
    pub y: i64,
    pub side: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).unwrap_or_default());
}

fn fail(status: TridissStatus, message: impl Into<String>) -> TridissStatus {
    set_error(message);
    status
}

/// Runs `f`, clearing the last error first and turning panics into
/// [`TridissStatus::Panic`].
fn guard(f: impl FnOnce() -> TridissStatus) -> TridissStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(TridissStatus::Panic, "internal panic"))
}

unsafe fn text_arg<'a>(p: *const c_char) -> Result<&'a str, TridissStatus> {
    if p.is_null() {
        return Err(fail(TridissStatus::NullArgument, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| fail(TridissStatus::InvalidUtf8, e.to_string()))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> TridissStatus {
    if out.is_null() {
        return fail(TridissStatus::NullArgument, "null output pointer");
    }
    *out = Box::into_raw(Box::new(value));
    TridissStatus::Ok
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> TridissStatus {
    if out.is_null() {
        return fail(TridissStatus::NullArgument, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            TridissStatus::Ok
        }
        Err(e) => fail(TridissStatus::Invalid, e.to_string()),
    }
}

macro_rules! handle {
    ($p:expr) => {
        match $p.as_ref() {
            Some(h) => h,
            None => return fail(TridissStatus::NullArgument, "null handle"),
        }
    };
}

/// Description of the last failure on this thread; empty after success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn tridiss_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn tridiss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses one bitrade in either text layout.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_bitrade_parse(
    text: *const c_char,
    out: *mut *mut TridissBitrade,
) -> TridissStatus {
    guard(|| {
        let text = match text_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_bitrade(text) {
            Ok(b) => emit(out, TridissBitrade(b)),
            Err(e) => fail(TridissStatus::Parse, e.to_string()),
        }
    })
}

/// Converts graph `index` of a planar_code stream into a bitrade.
///
/// # Safety
/// `bytes` must point to `len` readable bytes and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_bitrade_from_planar_code(
    bytes: *const u8,
    len: usize,
    index: usize,
    out: *mut *mut TridissBitrade,
) -> TridissStatus {
    guard(|| {
        if bytes.is_null() {
            return fail(TridissStatus::NullArgument, "null buffer");
        }
        let data = std::slice::from_raw_parts(bytes, len);
        let graphs = match parse_planar_code(data) {
            Ok(g) => g,
            Err(e) => return fail(TridissStatus::Parse, e.to_string()),
        };
        let Some(g) = graphs.get(index) else {
            return fail(
                TridissStatus::OutOfRange,
                format!("index {index} of {} graphs", graphs.len()),
            );
        };
        match triangulation_to_bitrade(g) {
            Ok(b) => emit(out, TridissBitrade(b)),
            Err(e) => fail(TridissStatus::Invalid, e.to_string()),
        }
    })
}

/// # Safety
/// `b` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tridiss_bitrade_free(b: *mut TridissBitrade) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Number of triples in each half.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_bitrade_size(
    b: *const TridissBitrade,
    out: *mut usize,
) -> TridissStatus {
    guard(|| {
        let b = handle!(b);
        let Some(out) = out.as_mut() else {
            return fail(TridissStatus::NullArgument, "null output pointer");
        };
        *out = b.0.size();
        TridissStatus::Ok
    })
}

/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_bitrade_genus(
    b: *const TridissBitrade,
    out: *mut usize,
) -> TridissStatus {
    guard(|| {
        let b = handle!(b);
        let Some(out) = out.as_mut() else {
            return fail(TridissStatus::NullArgument, "null output pointer");
        };
        match b.0.genus() {
            Ok(g) => {
                *out = g;
                TridissStatus::Ok
            }
            Err(e) => fail(TridissStatus::Invalid, e.to_string()),
        }
    })
}

/// Writes triple `index` of T* (in sorted order) as row, column, symbol.
///
/// # Safety
/// `b` must be a live handle and `out` point to three writable `u32`.
#[no_mangle]
pub unsafe extern "C" fn tridiss_bitrade_star_triple(
    b: *const TridissBitrade,
    index: usize,
    out: *mut u32,
) -> TridissStatus {
    guard(|| {
        let b = handle!(b);
        if out.is_null() {
            return fail(TridissStatus::NullArgument, "null output pointer");
        }
        let Some(t) = b.0.t_star().get(index) else {
            return fail(TridissStatus::OutOfRange, format!("index {index}"));
        };
        let out = std::slice::from_raw_parts_mut(out, 3);
        out.copy_from_slice(&[t.row, t.col, t.sym]);
        TridissStatus::Ok
    })
}

/// A new handle for `swap(b)`.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_bitrade_swap(
    b: *const TridissBitrade,
    out: *mut *mut TridissBitrade,
) -> TridissStatus {
    guard(|| {
        let b = handle!(b);
        emit(out, TridissBitrade(b.0.swap()))
    })
}

/// Solves the bitrade anchored at `(row, col, sym)`.
///
/// # Safety
/// `b` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_dissection_solve(
    b: *const TridissBitrade,
    row: u32,
    col: u32,
    sym: u32,
    out: *mut *mut TridissDissection,
) -> TridissStatus {
    guard(|| {
        let b = handle!(b);
        let anchor = Triple::new(row, col, sym);
        match pointed_integer_dissection(&b.0, anchor, OverlapCheck::Pairwise) {
            Ok(d) => emit(out, TridissDissection(d)),
            Err(e) => fail(TridissStatus::Solve, e.to_string()),
        }
    })
}

/// Decodes and validates a signature.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_dissection_from_signature(
    text: *const c_char,
    out: *mut *mut TridissDissection,
) -> TridissStatus {
    guard(|| {
        let text = match text_arg(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match Signature::parse(text) {
            Ok(d) => emit(out, TridissDissection(d)),
            Err(e) => fail(TridissStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `d` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tridiss_dissection_free(d: *mut TridissDissection) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Triangle count, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tridiss_dissection_size(d: *const TridissDissection) -> usize {
    d.as_ref().map_or(0, |d| d.0.size())
}

/// Side of the outer triangle in grid units, or 0 for a null handle.
///
/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tridiss_dissection_scale(d: *const TridissDissection) -> i64 {
    d.as_ref().map_or(0, |d| d.0.scale)
}

/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_dissection_triangle(
    d: *const TridissDissection,
    index: usize,
    out: *mut TridissTriangle,
) -> TridissStatus {
    guard(|| {
        let d = handle!(d);
        let Some(out) = out.as_mut() else {
            return fail(TridissStatus::NullArgument, "null output pointer");
        };
        let Some(t) = d.0.triangles.get(index) else {
            return fail(TridissStatus::OutOfRange, format!("index {index}"));
        };
        *out = TridissTriangle {
            orientation: match t.orientation {
                Orientation::Up => 0,
                Orientation::Down => 1,
            },
            x: t.x,
            y: t.y,
            side: t.side,
        };
        TridissStatus::Ok
    })
}

/// Writes the automorphism order, and 0 or 1 for the separated and
/// perfect flags. Any output pointer may be null.
///
/// # Safety
/// `d` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_dissection_classify(
    d: *const TridissDissection,
    automorphisms: *mut usize,
    separated: *mut u8,
    perfect: *mut u8,
) -> TridissStatus {
    guard(|| {
        let d = handle!(d);
        if let Some(a) = automorphisms.as_mut() {
            *a = automorphism_order(&d.0);
        }
        if let Some(s) = separated.as_mut() {
            *s = classify_separated(&d.0) as u8;
        }
        if let Some(p) = perfect.as_mut() {
            *p = is_perfect(&d.0) as u8;
        }
        TridissStatus::Ok
    })
}

/// The canonical signature, to be freed with [`tridiss_string_free`].
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_dissection_signature(
    d: *const TridissDissection,
    out: *mut *mut c_char,
) -> TridissStatus {
    guard(|| {
        let d = handle!(d);
        emit_string(out, canonical_signature(&d.0).into_string())
    })
}

/// An SVG (`tikz == 0`) or TikZ figure, to be freed with
/// [`tridiss_string_free`].
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_dissection_render(
    d: *const TridissDissection,
    tikz: u8,
    out: *mut *mut c_char,
) -> TridissStatus {
    guard(|| {
        let d = handle!(d);
        let format = if tikz == 0 {
            FigureFormat::Svg
        } else {
            FigureFormat::Tikz
        };
        emit_string(out, render(&d.0, format))
    })
}

/// Enumerates every dissection of size at most `max_size` from the
/// internal triangulation generator.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tridiss_enumerate(
    max_size: usize,
    workers: usize,
    out: *mut *mut TridissStore,
) -> TridissStatus {
    guard(|| {
        if max_size < 4 {
            return fail(TridissStatus::OutOfRange, "max_size must be at least 4");
        }
        let mut bitrades = Vec::new();
        for (i, g) in eulerian_triangulations(max_size + 2).iter().enumerate() {
            match triangulation_to_bitrade(g) {
                Ok(bitrade) => bitrades.push(LabelledBitrade {
                    label: format!("generated#{i}"),
                    bitrade,
                }),
                Err(e) => return fail(TridissStatus::Invalid, e.to_string()),
            }
        }
        let config = EnumerateConfig {
            max_size,
            workers: workers.max(1),
            check: OverlapCheck::AreaOnly,
        };
        match enumerate_dissections(&bitrades, &config) {
            Ok(e) => emit(out, TridissStore(e.store)),
            Err(e) => fail(TridissStatus::Solve, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tridiss_store_free(s: *mut TridissStore) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of distinct dissections of size `n`, counting only separated
/// ones when `separated_only` is nonzero. Returns 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tridiss_store_count(
    s: *const TridissStore,
    n: usize,
    separated_only: u8,
) -> usize {
    s.as_ref().map_or(0, |s| {
        s.0.iter()
            .filter(|(_, r)| r.size == n && (separated_only == 0 || r.separated))
            .count()
    })
}
