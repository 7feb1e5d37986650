//! C ABI for the orbvir engine.
//!
//! Every fallible call returns an [`OrbvirStatus`] and writes its result
//! through an out-pointer. On failure [`orbvir_last_error`] describes the
//! problem. Strings returned by the library are released with
//! [`orbvir_string_free`]; profiles with [`orbvir_profile_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbvir::exactmath::format_rational;
use orbvir::geometry::{parse_rational_list, Case, Model, MonodromyProfile, PabModel};
use orbvir::invariants::{evaluate_invariant, invariant_form, solve_for_c, HodgeInput, InvariantQuery};
use orbvir::stringy::{stringy_rhs, supertrace_mu_squared};
use orbvir::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbvirStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Range = 4,
    NotAdmissible = 5,
    Inconsistent = 6,
    Unsupported = 7,
    Shape = 8,
    EmptyModuli = 9,
    Singular = 10,
    Degenerate = 11,
    Internal = 12,
    InvalidArgument = 13,
    Panic = 14,
}

pub const ORBVIR_CASE_CURVE: u32 = 0;
pub const ORBVIR_CASE_SURFACE: u32 = 1;

/// Opaque monodromy profile.
pub struct OrbvirProfile {
    inner: MonodromyProfile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> OrbvirStatus {
    match e {
        Error::Range { .. } => OrbvirStatus::Range,
        Error::Parse(_) => OrbvirStatus::Parse,
        Error::NotAdmissible(_) => OrbvirStatus::NotAdmissible,
        Error::Inconsistent(_) => OrbvirStatus::Inconsistent,
        Error::Unsupported(_) => OrbvirStatus::Unsupported,
        Error::Shape(_) => OrbvirStatus::Shape,
        Error::EmptyModuli(_) => OrbvirStatus::EmptyModuli,
        Error::Singular(_) => OrbvirStatus::Singular,
        Error::Degenerate(_) => OrbvirStatus::Degenerate,
        Error::Internal(_) => OrbvirStatus::Internal,
    }
}

struct Failure(OrbvirStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OrbvirStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OrbvirStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside orbvir".into());
            OrbvirStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(OrbvirStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `s` is null or a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(OrbvirStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or valid for `len` reads.
unsafe fn read_slice<'a>(p: *const u32, len: usize, what: &str) -> Result<&'a [u32], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

fn case_of(case: u32) -> Result<Case, Failure> {
    match case {
        ORBVIR_CASE_CURVE => Ok(Case::Curve),
        ORBVIR_CASE_SURFACE => Ok(Case::Surface),
        other => Err(Failure(OrbvirStatus::InvalidArgument, format!("unknown case {other}"))),
    }
}

fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(OrbvirStatus::Internal, "interior NUL".into()))?;
    // SAFETY: checked non-null by the caller of this helper.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn orbvir_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn orbvir_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbvir_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a profile such as `"N=3;n=3,0"`.
///
/// # Safety
/// `literal` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn orbvir_profile_parse(literal: *const c_char, out: *mut *mut OrbvirProfile) -> OrbvirStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p: MonodromyProfile = read_str(literal, "literal")?.parse()?;
        *out = Box::into_raw(Box::new(OrbvirProfile { inner: p }));
        Ok(())
    })
}

/// Builds a profile of order `n` from `len` sector counts.
///
/// # Safety
/// `counts` is valid for `len` reads and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn orbvir_profile_new(
    n: u32,
    counts: *const u32,
    len: usize,
    out: *mut *mut OrbvirProfile,
) -> OrbvirStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let counts = read_slice(counts, len, "counts")?.to_vec();
        let p = MonodromyProfile::new(n, counts)?;
        *out = Box::into_raw(Box::new(OrbvirProfile { inner: p }));
        Ok(())
    })
}

/// # Safety
/// `p` is null or came from this library and was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn orbvir_profile_free(p: *mut OrbvirProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of stacky points.
///
/// # Safety
/// `p` is a live profile and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn orbvir_profile_points(p: *const OrbvirProfile, out: *mut usize) -> OrbvirStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("profile"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = p.inner.total();
        Ok(())
    })
}

/// Genus of the cyclic cover.
///
/// # Safety
/// `p` is a live profile and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn orbvir_profile_genus(p: *const OrbvirProfile, out: *mut u64) -> OrbvirStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("profile"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = p.inner.cover_genus()?;
        Ok(())
    })
}

/// Eigenbundle ranks `r_1..r_{N-1}`. Writes at most `cap` values and the
/// full count to `len`; a short buffer yields `Shape`.
///
/// # Safety
/// `p` is a live profile, `out` is valid for `cap` writes, `len` is writable.
#[no_mangle]
pub unsafe extern "C" fn orbvir_profile_ranks(
    p: *const OrbvirProfile,
    out: *mut i64,
    cap: usize,
    len: *mut usize,
) -> OrbvirStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("profile"))?;
        if len.is_null() {
            return Err(null("len"));
        }
        let r = p.inner.eigenbundle_ranks()?;
        *len = r.len();
        if cap < r.len() {
            return Err(Failure(OrbvirStatus::Shape, format!("need room for {} ranks", r.len())));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(r.as_ptr(), out, r.len());
        Ok(())
    })
}

/// # Safety
/// Pointers valid for their lengths.
unsafe fn query(
    p: *const OrbvirProfile,
    case: u32,
    k: *const u32,
    k_len: usize,
    l: *const u32,
    l_len: usize,
) -> Result<InvariantQuery, Failure> {
    let p = p.as_ref().ok_or_else(|| null("profile"))?;
    let k = read_slice(k, k_len, "k")?.to_vec();
    let l = read_slice(l, l_len, "l")?.to_vec();
    Ok(InvariantQuery::new(p.inner.clone(), k, l, case_of(case)?)?)
}

/// Evaluates an invariant given the distinguished values `gamma`
/// (comma-separated rationals). The result is a rational such as `"1/3"`.
///
/// # Safety
/// Arrays valid for their lengths, `gamma` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn orbvir_invariant(
    p: *const OrbvirProfile,
    case: u32,
    k: *const u32,
    k_len: usize,
    l: *const u32,
    l_len: usize,
    gamma: *const c_char,
    out: *mut *mut c_char,
) -> OrbvirStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let q = query(p, case, k, k_len, l, l_len)?;
        let gamma = parse_rational_list(read_str(gamma, "gamma")?)?;
        let input = HodgeInput::new(&q.profile, gamma)?;
        write_string(out, format_rational(&evaluate_invariant(&q, &input)?))
    })
}

/// The invariant as a linear form in `c_1..c_S`, e.g. `"384*c1 + 128*c2"`.
///
/// # Safety
/// Arrays valid for their lengths, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn orbvir_invariant_form(
    p: *const OrbvirProfile,
    case: u32,
    k: *const u32,
    k_len: usize,
    l: *const u32,
    l_len: usize,
    out: *mut *mut c_char,
) -> OrbvirStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let q = query(p, case, k, k_len, l, l_len)?;
        write_string(out, invariant_form(&q)?.to_string())
    })
}

/// Solves for `c`; the result is comma-separated.
///
/// # Safety
/// `p` is live, `gamma` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn orbvir_solve_c(
    p: *const OrbvirProfile,
    case: u32,
    gamma: *const c_char,
    out: *mut *mut c_char,
) -> OrbvirStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = p.as_ref().ok_or_else(|| null("profile"))?;
        let gamma = parse_rational_list(read_str(gamma, "gamma")?)?;
        let input = HodgeInput::new(&p.inner, gamma)?;
        let c = solve_for_c(&p.inner, case_of(case)?, &input)?;
        let parts: Vec<String> = c.0.iter().map(format_rational).collect();
        write_string(out, parts.join(","))
    })
}

/// `str(μ²)` for `ℙ(a,b)` and the Euler/Chern side, each as a rational.
///
/// # Safety
/// `lhs` and `rhs` are writable.
#[no_mangle]
pub unsafe extern "C" fn orbvir_stringy(a: u32, b: u32, lhs: *mut *mut c_char, rhs: *mut *mut c_char) -> OrbvirStatus {
    guard(|| {
        if lhs.is_null() || rhs.is_null() {
            return Err(null("out"));
        }
        let m = PabModel::new(a, b)?;
        write_string(lhs, format_rational(&supertrace_mu_squared(&m)))?;
        write_string(rhs, format_rational(&stringy_rhs(&m)))
    })
}

/// Checks that a model literal such as `"P(1,1,N=3)"` parses; writes its
/// dimension.
///
/// # Safety
/// `literal` NUL-terminated, `dim` writable.
#[no_mangle]
pub unsafe extern "C" fn orbvir_model_dimension(literal: *const c_char, dim: *mut u32) -> OrbvirStatus {
    guard(|| {
        if dim.is_null() {
            return Err(null("dim"));
        }
        *dim = match read_str(literal, "literal")?.parse::<Model>()? {
            Model::Weighted(w) => w.dim(),
            Model::Pab(_) => 1,
        };
        Ok(())
    })
}
