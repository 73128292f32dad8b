//! C ABI over `symmap`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_parse`
//! style constructors and released with the matching `*_free`. Every fallible
//! call returns a [`SymmapStatus`]; on failure a message is kept per thread
//! and can be read with [`symmap_last_error`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use symmap::operators::{autocorrelation, magnitude_spectrum};
use symmap::{
    builtin_mapping, extrema_preservation, pearson_consistency, rotation_relatedness,
    sign_agreement, Alphabet, Boundary, Error, FormalSeries, MappingTable, Profile,
    ScalarEquivalence, SymbolSequence,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmapStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    BufferTooSmall = 3,
    UnknownMapping = 10,
    InvalidMapping = 11,
    AlphabetMismatch = 12,
    InvalidSequence = 13,
    InvalidArgument = 14,
    DegenerateProfile = 15,
    SupportOverflow = 16,
    Parse = 17,
    Io = 18,
    Panic = 99,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmapBoundary {
    Circular = 0,
    Truncated = 1,
}

/// A mapping table.
pub struct SymmapMapping(MappingTable);

/// A symbol sequence over some alphabet.
pub struct SymmapSequence(SymbolSequence);

/// An operator profile.
pub struct SymmapProfile(Profile);

/// A formal series with real coefficients.
pub struct SymmapSeries(FormalSeries<f64>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SymmapStatus {
    use SymmapStatus as S;
    match e {
        Error::UnknownMapping(_) => S::UnknownMapping,
        Error::InvalidAlphabet(_)
        | Error::InvalidMapping(_)
        | Error::DimensionTooSmall { .. }
        | Error::ZeroMapping => S::InvalidMapping,
        Error::AlphabetMismatch { .. } => S::AlphabetMismatch,
        Error::SymbolOutOfRange { .. }
        | Error::UnknownSymbol(_)
        | Error::EmptySequence
        | Error::LengthOutOfRange { .. } => S::InvalidSequence,
        Error::DegenerateProfile => S::DegenerateProfile,
        Error::SupportOverflow { .. } => S::SupportOverflow,
        Error::Parse(_)
        | Error::Json(_)
        | Error::MalformedFasta { .. }
        | Error::UnknownResidue { .. } => S::Parse,
        Error::File { .. } | Error::Io(_) => S::Io,
        _ => S::InvalidArgument,
    }
}

struct Failure(SymmapStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SymmapStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SymmapStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SymmapStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(SymmapStatus::NullPointer, format!("{what} is null")))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            SymmapStatus::NullPointer,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SymmapStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            SymmapStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            SymmapStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    *out = value;
    Ok(())
}

unsafe fn release<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Message of the most recent failure on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn symmap_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn symmap_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn symmap_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a built-in mapping by name.
#[no_mangle]
pub unsafe extern "C" fn symmap_mapping_builtin(
    name: *const c_char,
    out: *mut *mut SymmapMapping,
) -> SymmapStatus {
    guard(|| {
        let table = builtin_mapping(text(name, "name")?)?;
        store(out, SymmapMapping(table))
    })
}

/// Parses a mapping JSON document.
#[no_mangle]
pub unsafe extern "C" fn symmap_mapping_from_json(
    json: *const c_char,
    out: *mut *mut SymmapMapping,
) -> SymmapStatus {
    guard(|| {
        let table = MappingTable::from_json(text(json, "json")?)?;
        store(out, SymmapMapping(table))
    })
}

/// Dimension of the mapping's vectors, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn symmap_mapping_dim(mapping: *const SymmapMapping) -> usize {
    mapping.as_ref().map_or(0, |m| m.0.dim())
}

#[no_mangle]
pub unsafe extern "C" fn symmap_mapping_free(mapping: *mut SymmapMapping) {
    release(mapping)
}

/// Parses `symbols` over `alphabet` (one character per symbol).
#[no_mangle]
pub unsafe extern "C" fn symmap_sequence_parse(
    alphabet: *const c_char,
    symbols: *const c_char,
    out: *mut *mut SymmapSequence,
) -> SymmapStatus {
    guard(|| {
        let alphabet = Alphabet::new(text(alphabet, "alphabet")?)?;
        let seq = SymbolSequence::parse(&alphabet, text(symbols, "symbols")?)?;
        store(out, SymmapSequence(seq))
    })
}

#[no_mangle]
pub unsafe extern "C" fn symmap_sequence_len(seq: *const SymmapSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn symmap_sequence_free(seq: *mut SymmapSequence) {
    release(seq)
}

/// Lag autocorrelation of the encoded sequence for lags `0..=max_lag`.
#[no_mangle]
pub unsafe extern "C" fn symmap_autocorrelation(
    mapping: *const SymmapMapping,
    seq: *const SymmapSequence,
    max_lag: usize,
    boundary: SymmapBoundary,
    out: *mut *mut SymmapProfile,
) -> SymmapStatus {
    guard(|| {
        let m = &borrow(mapping, "mapping")?.0;
        let x = m.encode(&borrow(seq, "sequence")?.0)?;
        let boundary = match boundary {
            SymmapBoundary::Circular => Boundary::Circular,
            SymmapBoundary::Truncated => Boundary::Truncated,
        };
        let p = autocorrelation(&x, max_lag, boundary)?.with_mapping(m.label());
        store(out, SymmapProfile(p))
    })
}

/// Magnitude spectrum of the encoded sequence, one value per frequency bin.
#[no_mangle]
pub unsafe extern "C" fn symmap_spectrum(
    mapping: *const SymmapMapping,
    seq: *const SymmapSequence,
    out: *mut *mut SymmapProfile,
) -> SymmapStatus {
    guard(|| {
        let m = &borrow(mapping, "mapping")?.0;
        let x = m.encode(&borrow(seq, "sequence")?.0)?;
        store(
            out,
            SymmapProfile(magnitude_spectrum(&x)?.with_mapping(m.label())),
        )
    })
}

#[no_mangle]
pub unsafe extern "C" fn symmap_profile_len(profile: *const SymmapProfile) -> usize {
    profile.as_ref().map_or(0, |p| p.0.len())
}

/// Copies the profile values into `buf`. Fails with `BUFFER_TOO_SMALL` when
/// `cap` is less than the profile length.
#[no_mangle]
pub unsafe extern "C" fn symmap_profile_values(
    profile: *const SymmapProfile,
    buf: *mut f64,
    cap: usize,
) -> SymmapStatus {
    guard(|| {
        let values = borrow(profile, "profile")?.0.values();
        if cap < values.len() {
            return Err(Failure(
                SymmapStatus::BufferTooSmall,
                format!("buffer holds {cap} values, profile has {}", values.len()),
            ));
        }
        if buf.is_null() {
            return Err(Failure(SymmapStatus::NullPointer, "buf is null".into()));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn symmap_profile_free(profile: *mut SymmapProfile) {
    release(profile)
}

/// Pearson correlation of two profiles, skipping the `n_exclude` grid indices
/// in `exclude` (which may be null when `n_exclude` is 0).
#[no_mangle]
pub unsafe extern "C" fn symmap_pearson(
    p: *const SymmapProfile,
    q: *const SymmapProfile,
    exclude: *const usize,
    n_exclude: usize,
    out: *mut f64,
) -> SymmapStatus {
    guard(|| {
        let exclude: &[usize] = if n_exclude == 0 {
            &[]
        } else if exclude.is_null() {
            return Err(Failure(SymmapStatus::NullPointer, "exclude is null".into()));
        } else {
            std::slice::from_raw_parts(exclude, n_exclude)
        };
        let rho = pearson_consistency(&borrow(p, "p")?.0, &borrow(q, "q")?.0, exclude)?;
        write(out, rho)
    })
}

/// Percentage of `p`'s interior extrema that `q` reproduces.
#[no_mangle]
pub unsafe extern "C" fn symmap_extrema_preservation(
    p: *const SymmapProfile,
    q: *const SymmapProfile,
    out: *mut f64,
) -> SymmapStatus {
    guard(|| {
        let pct = extrema_preservation(&borrow(p, "p")?.0, &borrow(q, "q")?.0)?;
        write(out, pct)
    })
}

/// Fraction of successive differences with matching sign.
#[no_mangle]
pub unsafe extern "C" fn symmap_sign_agreement(
    p: *const SymmapProfile,
    q: *const SymmapProfile,
    out: *mut f64,
) -> SymmapStatus {
    guard(|| {
        let frac = sign_agreement(&borrow(p, "p")?.0, &borrow(q, "q")?.0)?;
        write(out, frac)
    })
}

/// Whether `second` is a scaled orthogonal image of `first`. `related` is set
/// to 1 or 0; `scale` and `residual` may be null.
#[no_mangle]
pub unsafe extern "C" fn symmap_rotation_check(
    first: *const SymmapMapping,
    second: *const SymmapMapping,
    tol: f64,
    related: *mut i32,
    scale: *mut f64,
    residual: *mut f64,
) -> SymmapStatus {
    guard(|| {
        let v = rotation_relatedness(
            &borrow(first, "first")?.0,
            &borrow(second, "second")?.0,
            tol,
        )?;
        write(related, i32::from(v.related))?;
        if !scale.is_null() {
            *scale = v.scale;
        }
        if !residual.is_null() {
            *residual = v.residual;
        }
        Ok(())
    })
}

/// Parses a series in `coefficient<TAB>word` lines.
#[no_mangle]
pub unsafe extern "C" fn symmap_series_parse(
    alphabet: *const c_char,
    text_in: *const c_char,
    out: *mut *mut SymmapSeries,
) -> SymmapStatus {
    guard(|| {
        let alphabet = Alphabet::new(text(alphabet, "alphabet")?)?;
        let s = FormalSeries::parse(&alphabet, text(text_in, "text")?)?;
        store(out, SymmapSeries(s))
    })
}

#[no_mangle]
pub unsafe extern "C" fn symmap_series_add(
    f: *const SymmapSeries,
    g: *const SymmapSeries,
    out: *mut *mut SymmapSeries,
) -> SymmapStatus {
    guard(|| {
        let sum = borrow(f, "f")?.0.add(&borrow(g, "g")?.0)?;
        store(out, SymmapSeries(sum))
    })
}

#[no_mangle]
pub unsafe extern "C" fn symmap_series_mul(
    f: *const SymmapSeries,
    g: *const SymmapSeries,
    out: *mut *mut SymmapSeries,
) -> SymmapStatus {
    guard(|| {
        let product = borrow(f, "f")?.0.mul(&borrow(g, "g")?.0)?;
        store(out, SymmapSeries(product))
    })
}

/// Sets `equivalent` to 1 and `scalar` to `c` when `f = c·g`, else 0.
#[no_mangle]
pub unsafe extern "C" fn symmap_series_equivalent(
    f: *const SymmapSeries,
    g: *const SymmapSeries,
    tol: f64,
    equivalent: *mut i32,
    scalar: *mut f64,
) -> SymmapStatus {
    guard(|| {
        match borrow(f, "f")?
            .0
            .scalar_equivalent(&borrow(g, "g")?.0, tol)?
        {
            ScalarEquivalence::Equivalent(c) => {
                write(equivalent, 1)?;
                if !scalar.is_null() {
                    *scalar = c;
                }
            }
            ScalarEquivalence::NotEquivalent => write(equivalent, 0)?,
        }
        Ok(())
    })
}

/// Serializes a series; free the result with [`symmap_string_free`].
#[no_mangle]
pub unsafe extern "C" fn symmap_series_to_text(
    series: *const SymmapSeries,
    out: *mut *mut c_char,
) -> SymmapStatus {
    guard(|| {
        let s = CString::new(borrow(series, "series")?.0.to_text())
            .map_err(|_| Failure(SymmapStatus::InvalidArgument, "embedded NUL".into()))?;
        write(out, s.into_raw())
    })
}

#[no_mangle]
pub unsafe extern "C" fn symmap_series_free(series: *mut SymmapSeries) {
    release(series)
}
