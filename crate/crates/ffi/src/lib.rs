//! C ABI over `qhardy`. Groups are opaque handles; every call returns a
//! [`QhStatus`] and details of the last failure are kept per thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use qhardy::cli::{cmd_describe, CliError, GroupSpec, RunConfig, Setup};
use qhardy::hardy::DomainKind;
use qhardy::invariants::generating_polynomial_for;
use qhardy::poly::PolynomialJson;
use qhardy::tolerance::Tolerances;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    ComputationFailed = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QhModel {
    Polydisc = 0,
    Ball = 1,
}

impl From<QhModel> for DomainKind {
    fn from(m: QhModel) -> Self {
        match m {
            QhModel::Polydisc => DomainKind::Polydisc,
            QhModel::Ball => DomainKind::Ball,
        }
    }
}

/// Opaque group handle.
pub struct QhGroup {
    spec: GroupSpec,
    setup: Setup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(QhStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        let status = match e {
            CliError::Config(_) => QhStatus::InvalidArgument,
            CliError::Compute(_) => QhStatus::ComputationFailed,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QhStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QhStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(QhStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(QhStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn group_ref<'a>(g: *const QhGroup) -> Result<&'a QhGroup, Failure> {
    g.as_ref().ok_or_else(null)
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let c = CString::new(s).map_err(|_| Failure(QhStatus::ComputationFailed, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn read_point(p: *const f64, d: usize) -> Result<Vec<Complex64>, Failure> {
    if p.is_null() {
        return Err(null());
    }
    let raw = std::slice::from_raw_parts(p, 2 * d);
    Ok(raw.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect())
}

/// Build a group from a JSON description such as `{"family":"symmetric","d":3}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qh_group_from_json(json: *const c_char, out: *mut *mut QhGroup) -> QhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let spec = GroupSpec::parse_json(read_str(json)?)?;
        let setup = spec.build(&Tolerances::default())?;
        *out = Box::into_raw(Box::new(QhGroup { spec, setup }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from [`qh_group_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qh_group_free(g: *mut QhGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qh_group_order(g: *const QhGroup, out: *mut usize) -> QhStatus {
    guard(|| {
        let g = group_ref(g)?;
        *out.as_mut().ok_or_else(null)? = g.setup.group.order();
        Ok(())
    })
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qh_group_dimension(g: *const QhGroup, out: *mut usize) -> QhStatus {
    guard(|| {
        let g = group_ref(g)?;
        *out.as_mut().ok_or_else(null)? = g.setup.group.dim();
        Ok(())
    })
}

/// Number of one-dimensional characters.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qh_group_character_count(g: *const QhGroup, out: *mut usize) -> QhStatus {
    guard(|| {
        let g = group_ref(g)?;
        *out.as_mut().ok_or_else(null)? = g.setup.characters.len();
        Ok(())
    })
}

/// Summary of the group as JSON; free the result with [`qh_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qh_group_describe_json(g: *const QhGroup, out: *mut *mut c_char) -> QhStatus {
    guard(|| {
        let g = group_ref(g)?;
        let report = cmd_describe(&RunConfig::new(g.spec.clone()))?;
        write_string(out, report.value.to_string())
    })
}

/// Generating polynomial of character `character` as polynomial JSON.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qh_generating_polynomial_json(
    g: *const QhGroup,
    character: usize,
    out: *mut *mut c_char,
) -> QhStatus {
    guard(|| {
        let g = group_ref(g)?;
        let chi = character_at(g, character)?;
        let planes = g.setup.planes.as_ref().ok_or_else(|| {
            Failure(QhStatus::InvalidArgument, "not a reflection group".into())
        })?;
        let ell = generating_polynomial_for(planes, chi)
            .map_err(|e| Failure(QhStatus::ComputationFailed, e.to_string()))?;
        let json = serde_json::to_string(&PolynomialJson::from(&ell))
            .map_err(|e| Failure(QhStatus::ComputationFailed, e.to_string()))?;
        write_string(out, json)
    })
}

fn character_at(g: &QhGroup, k: usize) -> Result<&qhardy::group::Character, Failure> {
    g.setup.characters.get(k).ok_or_else(|| {
        Failure(
            QhStatus::InvalidArgument,
            format!("character index {k} out of range"),
        )
    })
}

#[derive(Clone, Copy)]
enum Kernel {
    Subspace,
    Quotient,
}

unsafe fn kernel(
    g: *const QhGroup,
    character: usize,
    model: QhModel,
    z: *const f64,
    w: *const f64,
    out: *mut f64,
    which: Kernel,
) -> QhStatus {
    guard(|| {
        let g = group_ref(g)?;
        if out.is_null() {
            return Err(null());
        }
        let d = g.setup.group.dim();
        let (z, w) = (read_point(z, d)?, read_point(w, d)?);
        let chi = character_at(g, character)?;
        let space = g.setup.space(chi, model.into())?;
        let value = match which {
            Kernel::Subspace => space.subspace_kernel(&z, &w),
            Kernel::Quotient => space.quotient_kernel(&z, &w),
        }
        .map_err(|e| Failure(QhStatus::InvalidArgument, e.to_string()))?;
        *out = value.re;
        *out.add(1) = value.im;
        Ok(())
    })
}

/// Reproducing kernel of the isotypic subspace at `(z, w)`. Points are
/// `2·d` doubles (interleaved real and imaginary parts); `out` receives two.
///
/// # Safety
/// Pointers must be valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn qh_subspace_kernel(
    g: *const QhGroup,
    character: usize,
    model: QhModel,
    z: *const f64,
    w: *const f64,
    out: *mut f64,
) -> QhStatus {
    kernel(g, character, model, z, w, out, Kernel::Subspace)
}

/// Kernel of the quotient space at `(θ(z), θ(w))`; same layout as
/// [`qh_subspace_kernel`].
///
/// # Safety
/// Pointers must be valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn qh_quotient_kernel(
    g: *const QhGroup,
    character: usize,
    model: QhModel,
    z: *const f64,
    w: *const f64,
    out: *mut f64,
) -> QhStatus {
    kernel(g, character, model, z, w, out, Kernel::Quotient)
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
