//! C ABI over `extconvex`.
//!
//! Objects cross the boundary as opaque handles created from JSON and
//! released with the matching `*_free`. Every fallible call returns an
//! [`ExcStatus`]; on failure the message is available from
//! [`exc_last_error`] until the next failing call on the same thread.
//! Strings returned by the library are released with [`exc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use extconvex::calculus;
use extconvex::extreal::{DownReal, Ext, UpReal};
use extconvex::io::parse_json;
use extconvex::scalar_fn::{DualElem, UpFunction};
use extconvex::setvalued::{self, DualTriple, SetValuedFn, SvFunction, UpSet};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// The input is well formed but outside the operation's domain, e.g. a
    /// non-convex function or `z*` outside the dual cone.
    Domain = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExcKind {
    Finite = 0,
    PosInf = 1,
    NegInf = 2,
}

/// An extended real. `value` is meaningful only for `Finite`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExcExtReal {
    pub kind: ExcKind,
    pub value: f64,
}

/// Proper (`x ↦ a x`) or improper (hat) dual element.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExcDualKind {
    Proper = 0,
    Hat = 1,
}

/// Opaque function into the inf-extended reals.
pub struct ExcFunction(UpFunction);

/// Opaque closed convex set stable under `+C`.
pub struct ExcSet(UpSet);

/// Opaque polyhedral set-valued function.
pub struct ExcSetValued(SetValuedFn);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

struct Fail(ExcStatus, String);

type R<T> = Result<T, Fail>;

fn fail<T>(status: ExcStatus, msg: impl Into<String>) -> R<T> {
    Err(Fail(status, msg.into()))
}

/// Runs `f`, records any failure and turns panics into `Panic`.
fn guard(f: impl FnOnce() -> R<()>) -> ExcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ExcStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(p) => {
            let m = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal error: {m}"));
            ExcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> R<&'a T> {
    p.as_ref().map_or_else(|| fail(ExcStatus::NullPointer, format!("{what} is null")), Ok)
}

unsafe fn write<T>(out: *mut T, v: T) -> R<()> {
    if out.is_null() {
        return fail(ExcStatus::NullPointer, "output pointer is null");
    }
    out.write(v);
    Ok(())
}

unsafe fn text<'a>(p: *const c_char) -> R<&'a str> {
    if p.is_null() {
        return fail(ExcStatus::NullPointer, "string is null");
    }
    CStr::from_ptr(p).to_str().or_else(|e| fail(ExcStatus::InvalidArgument, format!("string is not UTF-8: {e}")))
}

fn to_c(e: Ext) -> ExcExtReal {
    match e {
        Ext::Finite(v) => ExcExtReal { kind: ExcKind::Finite, value: v },
        Ext::PosInf => ExcExtReal { kind: ExcKind::PosInf, value: f64::INFINITY },
        Ext::NegInf => ExcExtReal { kind: ExcKind::NegInf, value: f64::NEG_INFINITY },
    }
}

fn from_c(e: ExcExtReal) -> R<Ext> {
    match e.kind {
        ExcKind::PosInf => Ok(Ext::PosInf),
        ExcKind::NegInf => Ok(Ext::NegInf),
        ExcKind::Finite if e.value.is_finite() => Ok(Ext::Finite(e.value)),
        ExcKind::Finite => fail(ExcStatus::InvalidArgument, format!("finite extended real holds {}", e.value)),
    }
}

fn finite(x: f64, name: &str) -> R<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        fail(ExcStatus::InvalidArgument, format!("{name} must be finite, got {x}"))
    }
}

fn dual(kind: ExcDualKind, slope: f64) -> R<DualElem> {
    let a = finite(slope, "slope")?;
    Ok(match kind {
        ExcDualKind::Proper => DualElem::Proper(a),
        ExcDualKind::Hat => DualElem::Hat(a),
    })
}

fn json_out(v: &impl serde::Serialize, out: *mut *mut c_char) -> R<()> {
    let s = serde_json::to_string(v).or_else(|e| fail(ExcStatus::Panic, e.to_string()))?;
    let c = CString::new(s).or_else(|e| fail(ExcStatus::Panic, e.to_string()))?;
    unsafe { write(out, c.into_raw()) }
}

fn boxed<T>(v: T, out: *mut *mut T) -> R<()> {
    if out.is_null() {
        return fail(ExcStatus::NullPointer, "output pointer is null");
    }
    unsafe { out.write(Box::into_raw(Box::new(v))) };
    Ok(())
}

fn parse<T: serde::de::DeserializeOwned>(json: *const c_char, what: &str) -> R<T> {
    let s = unsafe { text(json)? };
    parse_json(what, s).or_else(|e| fail(ExcStatus::Parse, e.to_string()))
}

/// The message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn exc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn exc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

// extended reals --------------------------------------------------------

unsafe fn binop(a: ExcExtReal, b: ExcExtReal, out: *mut ExcExtReal, op: fn(Ext, Ext) -> Ext) -> ExcStatus {
    guard(|| write(out, to_c(op(from_c(a)?, from_c(b)?))))
}

/// Inf-addition: `+∞` dominates.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_isum(a: ExcExtReal, b: ExcExtReal, out: *mut ExcExtReal) -> ExcStatus {
    binop(a, b, out, |a, b| UpReal::from_ext(a).isum(UpReal::from_ext(b)).ext())
}

/// Sup-addition: `−∞` dominates.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_ssum(a: ExcExtReal, b: ExcExtReal, out: *mut ExcExtReal) -> ExcStatus {
    binop(a, b, out, |a, b| DownReal::from_ext(a).ssum(DownReal::from_ext(b)).ext())
}

/// Inf-difference `min{t : a ≤ b ⊞▵ t}`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_idif(a: ExcExtReal, b: ExcExtReal, out: *mut ExcExtReal) -> ExcStatus {
    binop(a, b, out, |a, b| UpReal::from_ext(a).idif(UpReal::from_ext(b)).ext())
}

/// Sup-difference `max{t : b ⊞▿ t ≤ a}`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_sdif(a: ExcExtReal, b: ExcExtReal, out: *mut ExcExtReal) -> ExcStatus {
    binop(a, b, out, |a, b| DownReal::from_ext(a).sdif(DownReal::from_ext(b)).ext())
}

// scalar functions ------------------------------------------------------

/// Parses a function from JSON (the CLI's input format).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_function_from_json(json: *const c_char, out: *mut *mut ExcFunction) -> ExcStatus {
    guard(|| boxed(ExcFunction(parse(json, "function")?), out))
}

/// # Safety
/// `f` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn exc_function_free(f: *mut ExcFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_function_to_json(f: *const ExcFunction, out: *mut *mut c_char) -> ExcStatus {
    guard(|| json_out(&deref(f, "function")?.0, out))
}

/// # Safety
/// `f` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_function_eval(f: *const ExcFunction, x: f64, out: *mut ExcExtReal) -> ExcStatus {
    guard(|| {
        let f = deref(f, "function")?;
        write(out, to_c(f.0.eval(finite(x, "x")?).ext()))
    })
}

/// `g*(ξ, r) = sup_x {ξ_r(x) ⊖ g(x)}`, a value in the sup-extended reals.
///
/// # Safety
/// `f` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_conjugate(
    f: *const ExcFunction,
    kind: ExcDualKind,
    slope: f64,
    r: f64,
    out: *mut ExcExtReal,
) -> ExcStatus {
    guard(|| {
        let f = deref(f, "function")?;
        let v = calculus::conjugate(&f.0, dual(kind, slope)?, finite(r, "r")?);
        write(out, to_c(v.ext()))
    })
}

/// # Safety
/// `f` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_biconjugate(f: *const ExcFunction, out: *mut *mut ExcFunction) -> ExcStatus {
    guard(|| boxed(ExcFunction(calculus::biconjugate(&deref(f, "function")?.0)), out))
}

/// Infimal convolution of two closed convex functions.
///
/// # Safety
/// `f`, `g` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_infconv(
    f: *const ExcFunction,
    g: *const ExcFunction,
    out: *mut *mut ExcFunction,
) -> ExcStatus {
    guard(|| {
        let (f, g) = (deref(f, "f")?, deref(g, "g")?);
        let h = calculus::infconv(&f.0, &g.0).or_else(|e| fail(ExcStatus::Domain, e.to_string()))?;
        boxed(ExcFunction(h), out)
    })
}

/// Directional derivative `g'(x0, x)` of a convex function.
///
/// # Safety
/// `f` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_dirderiv(f: *const ExcFunction, x0: f64, x: f64, out: *mut ExcExtReal) -> ExcStatus {
    guard(|| {
        let f = deref(f, "function")?;
        let v = calculus::dirderiv(&f.0, finite(x0, "x0")?, finite(x, "x")?)
            .or_else(|e| fail(ExcStatus::Domain, e.to_string()))?;
        write(out, to_c(v.ext()))
    })
}

// sets ------------------------------------------------------------------

/// Parses an upper set `{"poly": ..., "cone": ...}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_set_from_json(json: *const c_char, out: *mut *mut ExcSet) -> ExcStatus {
    guard(|| boxed(ExcSet(parse(json, "set")?), out))
}

/// # Safety
/// `s` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn exc_set_free(s: *mut ExcSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_set_to_json(s: *const ExcSet, out: *mut *mut c_char) -> ExcStatus {
    guard(|| json_out(&deref(s, "set")?.0, out))
}

/// `A ⊖ B = {z : B + z ⊆ A}`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_set_diff(a: *const ExcSet, b: *const ExcSet, out: *mut *mut ExcSet) -> ExcStatus {
    guard(|| {
        let (a, b) = (deref(a, "A")?, deref(b, "B")?);
        let d = a.0.idif(&b.0).or_else(|e| fail(ExcStatus::Domain, e.to_string()))?;
        boxed(ExcSet(d), out)
    })
}

/// `inf {−z*·z : z ∈ A}`.
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_set_support(a: *const ExcSet, z1: f64, z2: f64, out: *mut ExcExtReal) -> ExcStatus {
    guard(|| {
        let a = deref(a, "set")?;
        let z = [finite(z1, "z1")?, finite(z2, "z2")?];
        write(out, to_c(a.0.support(z).ext()))
    })
}

/// # Safety
/// `a`, `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn exc_set_is_empty(a: *const ExcSet, out: *mut bool) -> ExcStatus {
    guard(|| write(out, deref(a, "set")?.0.is_empty()))
}

// set-valued functions --------------------------------------------------

/// Parses a set-valued function `{"h": [...], "cone": ...}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_setvalued_from_json(json: *const c_char, out: *mut *mut ExcSetValued) -> ExcStatus {
    guard(|| boxed(ExcSetValued(parse(json, "set-valued function")?), out))
}

/// # Safety
/// `g` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn exc_setvalued_free(g: *mut ExcSetValued) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// The value `g(x)`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_setvalued_slice(g: *const ExcSetValued, x: f64, out: *mut *mut ExcSet) -> ExcStatus {
    guard(|| {
        let g = deref(g, "function")?;
        boxed(ExcSet(g.0.slice(finite(x, "x")?)), out)
    })
}

/// The scalarization `x ↦ inf {−z*·z : z ∈ g(x)}`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_scalarize(
    g: *const ExcSetValued,
    z1: f64,
    z2: f64,
    out: *mut *mut ExcFunction,
) -> ExcStatus {
    guard(|| {
        let g = deref(g, "function")?;
        let z = [finite(z1, "z1")?, finite(z2, "z2")?];
        let phi = setvalued::scalarize(&g.0, z).or_else(|e| fail(ExcStatus::Domain, e.to_string()))?;
        boxed(ExcFunction(phi), out)
    })
}

/// The conjugate `g*(ξ, r, z*)`; `z*` must lie in the dual cone.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_sv_conjugate(
    g: *const ExcSetValued,
    kind: ExcDualKind,
    slope: f64,
    r: f64,
    z1: f64,
    z2: f64,
    out: *mut *mut ExcSet,
) -> ExcStatus {
    guard(|| {
        let g = deref(g, "function")?;
        let z = [finite(z1, "z1")?, finite(z2, "z2")?];
        let d = DualTriple::new(dual(kind, slope)?, finite(r, "r")?, z, g.0.cone())
            .or_else(|e| fail(ExcStatus::Domain, e.to_string()))?;
        let s = setvalued::sv_conjugate(&g.0, &d).or_else(|e| fail(ExcStatus::Domain, e.to_string()))?;
        boxed(ExcSet(s), out)
    })
}

/// The biconjugate `g**(x)`.
///
/// # Safety
/// `g` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_sv_biconjugate(g: *const ExcSetValued, x: f64, out: *mut *mut ExcSet) -> ExcStatus {
    guard(|| {
        let g = deref(g, "function")?;
        let s = setvalued::sv_biconjugate(&g.0, finite(x, "x")?).or_else(|e| fail(ExcStatus::Domain, e.to_string()))?;
        boxed(ExcSet(s), out)
    })
}
