//! C interface to the `mimzv` crate.
//!
//! Objects cross the boundary as opaque handles created by `*_parse` or by
//! an operation and released with the matching `*_free`. Every fallible
//! function returns a [`MimzvStatus`]; on failure the message is available
//! from [`mimzv_last_error`] until the next call on the same thread.
//! Strings returned through out-parameters are owned by the caller and
//! released with [`mimzv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mimzv::evaluation::{eval_exact, eval_float, eval_lincomb_truncated, EvalTarget, EvalValue};
use mimzv::interpolation::s_operator;
use mimzv::products::{interp_product, shuffle, star_product, stuffle};
use mimzv::{Composition, Error, LinComb, Marker, TAssignment, TWord};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MimzvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MimzvProduct {
    Stuffle = 0,
    Star = 1,
    Shuffle = 2,
    Interpolated = 3,
}

/// Opaque linear combination of words with rational coefficients.
pub struct MimzvLinComb(LinComb);

/// Opaque assignment of sequences to markers.
pub struct MimzvTAssignment(TAssignment);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(MimzvStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e {
            Error::Parse(_) | Error::UnknownSuite(_) | Error::Io(_) => MimzvStatus::Parse,
            _ => MimzvStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> MimzvStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MimzvStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            MimzvStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(MimzvStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(MimzvStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(MimzvStatus::NullPointer, "null handle argument".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(MimzvStatus::NullPointer, "null out-parameter".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(MimzvStatus::Domain, "string contains NUL".into()))?;
    put(out, c.into_raw())
}

unsafe fn put_lincomb(out: *mut *mut MimzvLinComb, x: LinComb) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(MimzvLinComb(x))))
}

/// Message of the last failure on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mimzv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mimzv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a word such as `"z2 t z1"` (or `"1"` for the unit) into a
/// combination with coefficient one.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mimzv_lincomb_parse(text: *const c_char, out: *mut *mut MimzvLinComb) -> MimzvStatus {
    guard(|| {
        let w: TWord = str_arg(text)?.parse()?;
        put_lincomb(out, LinComb::from_word(w))
    })
}

/// # Safety
/// `x` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn mimzv_lincomb_free(x: *mut MimzvLinComb) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Canonical text form, e.g. `"z2 z3 + z3 z2 + z5 - 2*t z5"`.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mimzv_lincomb_to_string(x: *const MimzvLinComb, out: *mut *mut c_char) -> MimzvStatus {
    guard(|| put_string(out, ref_arg(x)?.0.to_string()))
}

/// Number of terms with non-zero coefficient.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mimzv_lincomb_len(x: *const MimzvLinComb, out: *mut usize) -> MimzvStatus {
    guard(|| put(out, ref_arg(x)?.0.len()))
}

/// `out = a + scale * b` with `scale` a rational such as `"-3/2"`.
///
/// # Safety
/// `a`, `b` must be live handles; `scale` a NUL-terminated string; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mimzv_lincomb_add_scaled(
    a: *const MimzvLinComb,
    b: *const MimzvLinComb,
    scale: *const c_char,
    out: *mut *mut MimzvLinComb,
) -> MimzvStatus {
    guard(|| {
        let c = mimzv::algebra::parse_rational(str_arg(scale)?)?;
        let mut sum = ref_arg(a)?.0.clone();
        sum.add_scaled(&ref_arg(b)?.0, &c);
        put_lincomb(out, sum)
    })
}

/// The interpolation operator `S` for the marker `t`.
///
/// # Safety
/// `x` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mimzv_s_operator(x: *const MimzvLinComb, out: *mut *mut MimzvLinComb) -> MimzvStatus {
    guard(|| put_lincomb(out, s_operator(&ref_arg(x)?.0, Marker::TAU)))
}

/// Product of two combinations. The interpolated product uses the marker
/// `t` and rejects inputs that already contain it.
///
/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mimzv_product(
    a: *const MimzvLinComb,
    b: *const MimzvLinComb,
    kind: MimzvProduct,
    out: *mut *mut MimzvLinComb,
) -> MimzvStatus {
    guard(|| {
        let (x, y) = (&ref_arg(a)?.0, &ref_arg(b)?.0);
        let p = match kind {
            MimzvProduct::Stuffle => stuffle(x, y),
            MimzvProduct::Star => star_product(x, y),
            MimzvProduct::Shuffle => shuffle(x, y),
            MimzvProduct::Interpolated => interp_product(x, y, Marker::TAU)?,
        };
        put_lincomb(out, p)
    })
}

/// Parses a `[marker=]spec` assignment such as `"const:1/2"` or
/// `"t1=evenodd:1,0"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mimzv_tassignment_parse(
    spec: *const c_char,
    out: *mut *mut MimzvTAssignment,
) -> MimzvStatus {
    guard(|| {
        let t = TAssignment::parse(str_arg(spec)?)?;
        put(out, Box::into_raw(Box::new(MimzvTAssignment(t))))
    })
}

/// Adds or replaces one marker's sequence in an existing assignment.
///
/// # Safety
/// `t` must be a live handle; `spec` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn mimzv_tassignment_add(t: *mut MimzvTAssignment, spec: *const c_char) -> MimzvStatus {
    guard(|| {
        let handle = t
            .as_mut()
            .ok_or_else(|| Failure(MimzvStatus::NullPointer, "null handle argument".into()))?;
        handle.0 = handle.0.clone().parse_into(str_arg(spec)?)?;
        Ok(())
    })
}

/// # Safety
/// `t` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn mimzv_tassignment_free(t: *mut MimzvTAssignment) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Exact truncated value of a combination (strict chains), as `"p/q"`.
///
/// # Safety
/// `x`, `t` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mimzv_eval_lincomb(
    x: *const MimzvLinComb,
    n: u64,
    t: *const MimzvTAssignment,
    out: *mut *mut c_char,
) -> MimzvStatus {
    guard(|| {
        let v = eval_lincomb_truncated(&ref_arg(x)?.0, n, &ref_arg(t)?.0);
        put_string(out, v.to_string())
    })
}

/// Exact truncated multi-interpolated value of an index such as `"2,1"`,
/// as `"p/q"`.
///
/// # Safety
/// `index` must be a NUL-terminated string; `t` a live handle; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn mimzv_eval_index_exact(
    index: *const c_char,
    n: u64,
    t: *const MimzvTAssignment,
    out: *mut *mut c_char,
) -> MimzvStatus {
    guard(|| {
        let idx: Composition = str_arg(index)?.parse()?;
        let r = eval_exact(&EvalTarget::Index(idx), n, &ref_arg(t)?.0)?;
        match r.value {
            EvalValue::Exact(q) => put_string(out, q.to_string()),
            EvalValue::Float { .. } => unreachable!("exact evaluation"),
        }
    })
}

/// Non-truncated multi-interpolated value of an admissible index to within
/// `eps`. Writes the value, its tail bound, and the truncation used; the
/// last two may be NULL.
///
/// # Safety
/// `index` must be a NUL-terminated string; `t` a live handle; `value`
/// writable; `tail_bound`, `n_used` writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn mimzv_eval_index_float(
    index: *const c_char,
    t: *const MimzvTAssignment,
    eps: f64,
    value: *mut f64,
    tail_bound: *mut f64,
    n_used: *mut u64,
) -> MimzvStatus {
    guard(|| {
        let idx: Composition = str_arg(index)?.parse()?;
        let r = eval_float(&EvalTarget::Index(idx), &ref_arg(t)?.0, eps)?;
        put(value, r.as_f64())?;
        if !tail_bound.is_null() {
            tail_bound.write(r.tail_bound());
        }
        if !n_used.is_null() {
            n_used.write(r.n);
        }
        Ok(())
    })
}
