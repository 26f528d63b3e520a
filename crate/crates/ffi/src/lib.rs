//! C interface to `fga-core`.
//!
//! Elements cross the boundary as opaque `FgaElement` handles. Every
//! function returns an [`FgaStatus`]; on failure a message is available from
//! [`fga_last_error`] on the same thread until the next call. Strings handed
//! out must be released with [`fga_string_free`], handles with
//! [`fga_element_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fga_core::commute;
use fga_core::parse::parse_element;
use fga_core::{Alphabet, Element};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    Panic = 5,
}

/// Opaque element of the group algebra.
pub struct FgaElement(Element);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (FgaStatus, String)>) -> FgaStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FgaStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            FgaStatus::Panic
        }
    }
}

unsafe fn element<'a>(p: *const FgaElement) -> Result<&'a Element, (FgaStatus, String)> {
    p.as_ref().map(|e| &e.0).ok_or((FgaStatus::NullPointer, "null element handle".into()))
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, (FgaStatus, String)> {
    if p.is_null() {
        return Err((FgaStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (FgaStatus::InvalidUtf8, e.to_string()))
}

unsafe fn put_element(out: *mut *mut FgaElement, e: Element) -> Result<(), (FgaStatus, String)> {
    if out.is_null() {
        return Err((FgaStatus::NullPointer, "null output pointer".into()));
    }
    *out = Box::into_raw(Box::new(FgaElement(e)));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (FgaStatus, String)> {
    if out.is_null() {
        return Err((FgaStatus::NullPointer, "null output pointer".into()));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

fn alphabet(rank: u32) -> Result<Alphabet, (FgaStatus, String)> {
    Alphabet::new(rank as usize).map_err(|e| (FgaStatus::DomainError, e.to_string()))
}

/// Last error message on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn fga_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `text` over `rank` generators into a new handle.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fga_element_parse(
    text_ptr: *const c_char,
    rank: u32,
    out: *mut *mut FgaElement,
) -> FgaStatus {
    guard(|| {
        let s = text(text_ptr)?;
        alphabet(rank)?;
        let e = parse_element(s, rank as usize).map_err(|e| (FgaStatus::ParseError, e.to_string()))?;
        put_element(out, e)
    })
}

/// # Safety
/// `e` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fga_element_free(e: *mut FgaElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `s` must be null or a string from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fga_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Canonical text form, for example `a^2 + ab^-1 - 1/2`.
///
/// # Safety
/// `e` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fga_element_to_string(e: *const FgaElement, out: *mut *mut c_char) -> FgaStatus {
    guard(|| put_string(out, element(e)?.to_string()))
}

/// # Safety
/// `a`, `b` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fga_element_add(
    a: *const FgaElement,
    b: *const FgaElement,
    out: *mut *mut FgaElement,
) -> FgaStatus {
    guard(|| put_element(out, element(a)? + element(b)?))
}

/// # Safety
/// `a`, `b` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fga_element_mul(
    a: *const FgaElement,
    b: *const FgaElement,
    out: *mut *mut FgaElement,
) -> FgaStatus {
    guard(|| put_element(out, element(a)? * element(b)?))
}

/// # Safety
/// `a`, `b` must be live handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fga_element_commutes(
    a: *const FgaElement,
    b: *const FgaElement,
    out: *mut bool,
) -> FgaStatus {
    guard(|| {
        let c = commute::commutes(element(a)?, element(b)?);
        if out.is_null() {
            return Err((FgaStatus::NullPointer, "null output pointer".into()));
        }
        *out = c;
        Ok(())
    })
}

/// Structural report on the centralizer of `e` among words of length at
/// most `max_len`, as a JSON object.
///
/// # Safety
/// `e` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn fga_analyze_json(
    e: *const FgaElement,
    rank: u32,
    max_len: u32,
    out: *mut *mut c_char,
) -> FgaStatus {
    guard(|| {
        let u = element(e)?;
        if max_len == 0 {
            return Err((FgaStatus::DomainError, "max_len must be at least 1".into()));
        }
        let report = commute::analyze(u, max_len as usize, alphabet(rank)?, None)
            .map_err(|e| (FgaStatus::DomainError, e.to_string()))?;
        put_string(out, report.to_json().to_string())
    })
}
