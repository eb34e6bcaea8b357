//! C ABI over `swcalc`.
//!
//! Manifolds cross the boundary as opaque `SwcManifold` handles. Every
//! fallible call returns an `SwcStatus`; on failure the message is available
//! from `swc_last_error` on the same thread. Strings handed out through
//! `char **out` parameters are owned by the caller and must be released with
//! `swc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use swcalc::basic_classes::{builtin_scenario, enumerate_candidates, AdjunctionScenario};
use swcalc::constructions::{eval_expr, ManifoldExpr};
use swcalc::geography::{geography_scan, ppx_check, render_scan, zmg_restricted, GeographyTag, TableFormat};
use swcalc::manifold::{homeo_compare, taubes_symplectic_check, FourManifold, Homeo, TaubesVerdict};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    EvalError = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwcHomeo {
    Homeomorphic = 0,
    Distinct = 1,
    Undecidable = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwcTaubes {
    Consistent = 0,
    Obstructed = 1,
    Inapplicable = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwcGeography {
    NotInRange = 0,
    ExceptionA = 1,
    ExceptionB = 2,
    Excluded = 3,
}

/// Characteristic numbers; a `has_*` flag is false when that value is unknown.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SwcChars {
    pub e: i64,
    pub sign: i64,
    pub c1_squared: i64,
    pub chi: i64,
    pub has_chi: bool,
    pub b1: i64,
    pub has_b1: bool,
    pub b2_plus: i64,
    pub b2_minus: i64,
    pub has_b2: bool,
}

/// Opaque manifold record.
pub struct SwcManifold {
    inner: FourManifold,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

type Failure = (SwcStatus, String);

fn eval_err(e: swcalc::Error) -> Failure {
    let code = match &e {
        swcalc::Error::Parse(_) => SwcStatus::ParseError,
        _ => SwcStatus::EvalError,
    };
    (code, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SwcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            SwcStatus::Ok
        }
        Ok(Err((code, msg))) => {
            set_last_error(&msg);
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("internal error: {msg}"));
            SwcStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((SwcStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (SwcStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn manifold<'a>(p: *const SwcManifold, what: &str) -> Result<&'a FourManifold, Failure> {
    p.as_ref().map(|m| &m.inner).ok_or_else(|| (SwcStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err((SwcStatus::NullPointer, "output pointer is null".into()));
    }
    let c = CString::new(s).map_err(|e| (SwcStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_handle(out: *mut *mut SwcManifold, m: FourManifold) -> Result<(), Failure> {
    if out.is_null() {
        return Err((SwcStatus::NullPointer, "output pointer is null".into()));
    }
    *out = Box::into_raw(Box::new(SwcManifold { inner: m }));
    Ok(())
}

fn json(v: &serde_json::Value) -> Result<String, Failure> {
    serde_json::to_string_pretty(v).map_err(|e| (SwcStatus::Internal, e.to_string()))
}

/// Evaluate a manifold expression (JSON text with a top-level `"op"`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn swc_manifold_from_expr_json(json: *const c_char, out: *mut *mut SwcManifold) -> SwcStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let expr = ManifoldExpr::from_json(text).map_err(eval_err)?;
        let m = eval_expr(&expr).map_err(eval_err)?;
        write_handle(out, m)
    })
}

/// Load a manifold record as emitted by `swc_manifold_to_json`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn swc_manifold_from_record_json(json: *const c_char, out: *mut *mut SwcManifold) -> SwcStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let m = FourManifold::from_json(text).map_err(eval_err)?;
        write_handle(out, m)
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn swc_manifold_free(m: *mut SwcManifold) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Canonical JSON form of the record.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn swc_manifold_to_json(m: *const SwcManifold, out: *mut *mut c_char) -> SwcStatus {
    guard(|| {
        let m = manifold(m, "manifold")?;
        write_string(out, m.to_json().map_err(eval_err)?)
    })
}

/// Human-readable Seiberg-Witten invariant.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn swc_manifold_sw_text(m: *const SwcManifold, out: *mut *mut c_char) -> SwcStatus {
    guard(|| {
        let m = manifold(m, "manifold")?;
        write_string(out, m.render_sw())
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn swc_manifold_chars(m: *const SwcManifold, out: *mut SwcChars) -> SwcStatus {
    guard(|| {
        let m = manifold(m, "manifold")?;
        let out = out.as_mut().ok_or((SwcStatus::NullPointer, "output pointer is null".to_string()))?;
        let chi = m.quarter_characteristic().ok();
        *out = SwcChars {
            e: m.e,
            sign: m.sign,
            c1_squared: m.c1_squared(),
            chi: chi.unwrap_or(0),
            has_chi: chi.is_some(),
            b1: m.b1.map_or(0, i64::from),
            has_b1: m.b1.is_some(),
            b2_plus: m.b2_plus().unwrap_or(0),
            b2_minus: m.b2_minus().unwrap_or(0),
            has_b2: m.b2().is_some(),
        };
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles; `verdict` must be writable; `note`
/// may be null, otherwise it receives an explanation string.
#[no_mangle]
pub unsafe extern "C" fn swc_homeo_compare(
    a: *const SwcManifold,
    b: *const SwcManifold,
    verdict: *mut SwcHomeo,
    note: *mut *mut c_char,
) -> SwcStatus {
    guard(|| {
        let (a, b) = (manifold(a, "a")?, manifold(b, "b")?);
        let out = verdict.as_mut().ok_or((SwcStatus::NullPointer, "verdict pointer is null".to_string()))?;
        let v = homeo_compare(a, b);
        *out = match v.verdict {
            Homeo::Homeomorphic => SwcHomeo::Homeomorphic,
            Homeo::Distinct => SwcHomeo::Distinct,
            Homeo::Undecidable => SwcHomeo::Undecidable,
        };
        if !note.is_null() {
            write_string(note, v.note)?;
        }
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle; `verdict` must be writable; `reason` may be null.
#[no_mangle]
pub unsafe extern "C" fn swc_taubes_check(
    m: *const SwcManifold,
    verdict: *mut SwcTaubes,
    reason: *mut *mut c_char,
) -> SwcStatus {
    guard(|| {
        let m = manifold(m, "manifold")?;
        let out = verdict.as_mut().ok_or((SwcStatus::NullPointer, "verdict pointer is null".to_string()))?;
        let (v, why) = match taubes_symplectic_check(m) {
            TaubesVerdict::Consistent => (SwcTaubes::Consistent, String::new()),
            TaubesVerdict::Obstructed(r) => (SwcTaubes::Obstructed, r),
            TaubesVerdict::Inapplicable(r) => (SwcTaubes::Inapplicable, r),
        };
        *out = v;
        if !reason.is_null() {
            write_string(reason, why)?;
        }
        Ok(())
    })
}

/// Whether `Z(m,g)` has the numbers of no simply connected spin complex surface.
#[no_mangle]
pub extern "C" fn swc_zmg_restricted(m: i64, g: i64) -> bool {
    catch_unwind(|| zmg_restricted(m, g)).unwrap_or(false)
}

#[no_mangle]
pub extern "C" fn swc_ppx_check(chi: i64, c1_squared: i64, spin: bool) -> SwcGeography {
    match catch_unwind(|| ppx_check(chi, c1_squared, spin).tag) {
        Ok(GeographyTag::ExceptionA) => SwcGeography::ExceptionA,
        Ok(GeographyTag::ExceptionB) => SwcGeography::ExceptionB,
        Ok(GeographyTag::Excluded) => SwcGeography::Excluded,
        _ => SwcGeography::NotInRange,
    }
}

/// Enumerate basic-class candidates. `scenario` is either a builtin name such
/// as `Y2g(3)` or a scenario JSON object.
///
/// # Safety
/// `scenario` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn swc_basic_classes_json(scenario: *const c_char, out: *mut *mut c_char) -> SwcStatus {
    guard(|| {
        let text = read_str(scenario, "scenario")?;
        let s = if text.trim_start().starts_with('{') {
            AdjunctionScenario::from_json(text).map_err(eval_err)?
        } else {
            builtin_scenario(text.trim()).map_err(eval_err)?
        };
        let r = enumerate_candidates(&s).map_err(eval_err)?;
        let described: Vec<String> = r.classes().iter().map(|k| s.lattice.describe(k)).collect();
        let v = serde_json::json!({
            "scenario": s.name,
            "basis": s.lattice.basis_names(),
            "enumeration": r,
            "described": described,
        });
        write_string(out, json(&v)?)
    })
}

/// Geography table over inclusive ranges, as JSON rows.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn swc_geography_scan_json(
    m_lo: i64,
    m_hi: i64,
    g_lo: i64,
    g_hi: i64,
    out: *mut *mut c_char,
) -> SwcStatus {
    guard(|| {
        if (m_hi - m_lo).saturating_add(1).saturating_mul((g_hi - g_lo).saturating_add(1)) > 1_000_000 {
            return Err((SwcStatus::EvalError, "scan larger than 10^6 rows".into()));
        }
        let rows = geography_scan(m_lo..=m_hi, g_lo..=g_hi);
        write_string(out, render_scan(&rows, TableFormat::Json).map_err(eval_err)?)
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn swc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread (empty after a success).
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn swc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn swc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
