//! C ABI over `sra-trace`.
//!
//! Objects cross the boundary as opaque handles, exact results as JSON
//! strings owned by the library (release with [`sra_string_free`]). Every
//! call returns an [`SraStatus`]; on failure [`sra_last_error`] describes
//! the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sra_trace::algebra::{parse_element, Sra};
use sra_trace::exactnum::rational::{parse_rational, Rational};
use sra_trace::genfun::classify_nu;
use sra_trace::ideal::{build_moment_table, coincide, default_j, AnnihilatorCertificate, Verdict};
use sra_trace::trace::{degenerate_values, trace_space, DegenerateFamily, FamilyKind, Kappa, KappaTrace, DEFAULT_SLACK};
use sra_trace::Error;

/// Status codes. The first four coincide with the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SraStatus {
    Ok = 0,
    Mismatch = 1,
    Usage = 2,
    Resource = 3,
    NullPointer = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// Degenerate family selector for [`sra_trace_new_family`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SraFamily {
    /// tr_z, κ = +1
    Trace = 0,
    /// str_z, κ = -1
    Supertrace = 1,
    /// str_{1/2}, κ = -1
    SupertraceHalf = 2,
}

/// A κ-trace fixed by its values on the group algebra.
pub struct SraTrace {
    inner: KappaTrace,
}

/// Result of a κ-coincidence computation.
pub struct SraCertificate {
    inner: AnnihilatorCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SraStatus {
    match e.exit_code() {
        0 => SraStatus::Ok,
        1 => SraStatus::Mismatch,
        2 => SraStatus::Usage,
        3 => SraStatus::Resource,
        _ => SraStatus::Internal,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, clearing the last error first and catching panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SraStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SraStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            SraStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            SraStatus::Internal
        }
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Lib(Error::usage(format!("{what} is not valid UTF-8"))))
}

unsafe fn rational_arg(p: *const c_char, what: &'static str, default: i64) -> Result<Rational, Fail> {
    if p.is_null() {
        return Ok(Rational::from_integer(default.into()));
    }
    Ok(parse_rational(str_arg(p, what)?)?)
}

unsafe fn out_arg<T>(out: *mut *mut T, what: &'static str) -> Result<&'static mut *mut T, Fail> {
    if out.is_null() {
        return Err(Fail::Null(what));
    }
    *out = ptr::null_mut();
    Ok(&mut *out)
}

fn json_out(v: &impl serde::Serialize) -> Result<*mut c_char, Fail> {
    let s = serde_json::to_string(v).map_err(|e| Fail::Lib(Error::Internal(e.to_string())))?;
    Ok(CString::new(s).expect("JSON has no NUL").into_raw())
}

fn kappa_of(k: i32) -> Result<Kappa, Fail> {
    match k {
        1 => Ok(Kappa::Plus),
        -1 => Ok(Kappa::Minus),
        _ => Err(Fail::Lib(Error::usage(format!("kappa must be 1 or -1, got {k}")))),
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn sra_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn sra_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned through an out-parameter. NULL is ignored.
///
/// # Safety
/// `s` is NULL or a string produced by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sra_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// κ-trace at ν (`"p/q"`) with free values `params` (`n_params` strings,
/// S_1..S_m for κ = 1 and S_0..S_m for κ = -1).
///
/// # Safety
/// `nu` is a valid string, `params` points to `n_params` valid strings,
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sra_trace_new(
    n: u32,
    nu: *const c_char,
    kappa: i32,
    params: *const *const c_char,
    n_params: usize,
    out: *mut *mut SraTrace,
) -> SraStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let nu = parse_rational(str_arg(nu, "nu")?)?;
        if params.is_null() && n_params > 0 {
            return Err(Fail::Null("params"));
        }
        let mut values = Vec::with_capacity(n_params);
        for i in 0..n_params {
            values.push(parse_rational(str_arg(*params.add(i), "params[i]")?)?);
        }
        let inner = KappaTrace::from_rationals(n, nu, kappa_of(kappa)?, &values)?;
        *out = Box::into_raw(Box::new(SraTrace { inner }));
        Ok(())
    })
}

/// Degenerate family member at integer `z`; `tau` may be NULL for τ = 1.
///
/// # Safety
/// `tau` is NULL or a valid string, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sra_trace_new_family(
    n: u32,
    family: SraFamily,
    z: i64,
    tau: *const c_char,
    out: *mut *mut SraTrace,
) -> SraStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let kind = match family {
            SraFamily::Trace => FamilyKind::TraceZ,
            SraFamily::Supertrace => FamilyKind::SuperTraceZ,
            SraFamily::SupertraceHalf => FamilyKind::SuperTraceHalf,
        };
        let fam = DegenerateFamily::new(kind, z, rational_arg(tau, "tau", 1)?);
        let inner = degenerate_values(n, &fam)?;
        *out = Box::into_raw(Box::new(SraTrace { inner }));
        Ok(())
    })
}

/// # Safety
/// `t` is NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sra_trace_free(t: *mut SraTrace) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// κ of the trace (1 or -1), 0 for NULL.
///
/// # Safety
/// `t` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sra_trace_kappa(t: *const SraTrace) -> i32 {
    match t.as_ref() {
        None => 0,
        Some(t) if t.inner.kappa() == Kappa::Plus => 1,
        Some(_) => -1,
    }
}

/// Group-algebra values as JSON.
///
/// # Safety
/// `t` is a live handle, `out_json` is writable.
#[no_mangle]
pub unsafe extern "C" fn sra_trace_values_json(t: *const SraTrace, out_json: *mut *mut c_char) -> SraStatus {
    guard(|| {
        let out = out_arg(out_json, "out_json")?;
        let t = t.as_ref().ok_or(Fail::Null("trace"))?;
        *out = json_out(&t.inner.report())?;
        Ok(())
    })
}

/// Exact value sp(expr) as JSON `{"order": 4n, "coeffs": [...]}`.
/// `degree` is the cutoff of the solved trace space, 0 for automatic.
///
/// # Safety
/// `t` is a live handle, `expr` a valid string, `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn sra_trace_eval(
    t: *const SraTrace,
    expr: *const c_char,
    degree: u32,
    out_json: *mut *mut c_char,
) -> SraStatus {
    guard(|| {
        let out = out_arg(out_json, "out_json")?;
        let t = &t.as_ref().ok_or(Fail::Null("trace"))?.inner;
        let h = Sra::new(t.n(), t.nu().clone())?;
        let x = parse_element(&h, str_arg(expr, "expr")?)?;
        let d = if degree == 0 {
            x.degree().unwrap_or(0).max(2)
        } else {
            degree
        };
        let space = trace_space(&h, t.kappa(), d, DEFAULT_SLACK)?;
        *out = json_out(&space.evaluate(t, &x)?)?;
        Ok(())
    })
}

/// Moment table sp(𝔰^s Q_p), s ≤ `s_max`, as JSON.
///
/// # Safety
/// `t` is a live handle, `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn sra_trace_moments(
    t: *const SraTrace,
    s_max: u32,
    brute_degree: u32,
    out_json: *mut *mut c_char,
) -> SraStatus {
    guard(|| {
        let out = out_arg(out_json, "out_json")?;
        let t = &t.as_ref().ok_or(Fail::Null("trace"))?.inner;
        *out = json_out(&build_moment_table(t, s_max, brute_degree)?)?;
        Ok(())
    })
}

/// Classification of ν for dihedral order n, as JSON.
///
/// # Safety
/// `nu` is a valid string, `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn sra_classify(n: u32, nu: *const c_char, out_json: *mut *mut c_char) -> SraStatus {
    guard(|| {
        let out = out_arg(out_json, "out_json")?;
        let nu = parse_rational(str_arg(nu, "nu")?)?;
        *out = json_out(&classify_nu(n, &nu)?)?;
        Ok(())
    })
}

/// Compares the annihilators of tr_z and str_z. `j_max` 0 selects the
/// default truncation, `tau` NULL selects τ = 1.
///
/// # Safety
/// `tau` is NULL or a valid string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sra_coincide(
    n: u32,
    z: i64,
    j_max: u32,
    tau: *const c_char,
    brute_degree: u32,
    out: *mut *mut SraCertificate,
) -> SraStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let j = if j_max == 0 { default_j(z) } else { j_max };
        let inner = coincide(n, z, j, &rational_arg(tau, "tau", 1)?, brute_degree)?;
        *out = Box::into_raw(Box::new(SraCertificate { inner }));
        Ok(())
    })
}

/// 1 if the verdict is "equal", 0 if "differ", -1 for NULL.
///
/// # Safety
/// `c` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sra_certificate_equal(c: *const SraCertificate) -> i32 {
    match c.as_ref() {
        None => -1,
        Some(c) => i32::from(c.inner.verdict == Verdict::Equal),
    }
}

/// 1 if the verdict and every auxiliary check hold, 0 otherwise, -1 for NULL.
///
/// # Safety
/// `c` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sra_certificate_verified(c: *const SraCertificate) -> i32 {
    match c.as_ref() {
        None => -1,
        Some(c) => i32::from(c.inner.verified()),
    }
}

/// # Safety
/// `c` is a live handle, `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn sra_certificate_json(c: *const SraCertificate, out_json: *mut *mut c_char) -> SraStatus {
    guard(|| {
        let out = out_arg(out_json, "out_json")?;
        let c = c.as_ref().ok_or(Fail::Null("certificate"))?;
        *out = json_out(&c.inner)?;
        Ok(())
    })
}

/// # Safety
/// `c` is NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sra_certificate_free(c: *mut SraCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
