//! C interface to `knotoid`.
//!
//! Diagrams are opaque `KnotoidDiagram` handles created by
//! `knotoid_diagram_parse` or by one of the transforming calls, and released
//! with `knotoid_diagram_free`. Every fallible call returns a `KnotoidStatus`
//! and writes its result through an out pointer; the message of the last
//! failure on the calling thread is available from `knotoid_last_error`.
//! Strings handed out by the library are freed with `knotoid_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use knotoid::group::{count_colorings, wirtinger};
use knotoid::invariants;
use knotoid::moves::{search_equivalent, Budget, Verdict};
use knotoid::skein::P_invariant;
use knotoid::{Diagram, Error};

pub struct KnotoidDiagram(Diagram);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnotoidStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    InvalidDiagram = 4,
    NotAKnotoid = 5,
    NotPlanar = 6,
    TooLarge = 7,
    Overflow = 8,
    Failed = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnotoidVerdict {
    Inconclusive = 0,
    Equivalent = 1,
    Distinct = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> KnotoidStatus {
    match e {
        Error::Syntax { .. } | Error::PolySyntax { .. } => KnotoidStatus::Syntax,
        Error::NonPlanar { .. } | Error::BadEndpoints { .. } | Error::DisconnectedSegment | Error::Orientation(_) => KnotoidStatus::InvalidDiagram,
        Error::NotAKnotoid => KnotoidStatus::NotAKnotoid,
        Error::NotPlanar | Error::IncompatibleSurfaces => KnotoidStatus::NotPlanar,
        Error::StateSpaceTooLarge { .. } | Error::RecursionBudgetExceeded(_) => KnotoidStatus::TooLarge,
        _ => KnotoidStatus::Failed,
    }
}

/// Runs `f`, recording any error or panic for `knotoid_last_error`.
fn guard(f: impl FnOnce() -> Result<(), (KnotoidStatus, String)>) -> KnotoidStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            KnotoidStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            KnotoidStatus::Panic
        }
    }
}

fn lib<T>(r: knotoid::Result<T>) -> Result<T, (KnotoidStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (KnotoidStatus, String) {
    (KnotoidStatus::NullPointer, "null pointer argument".into())
}

unsafe fn diagram<'a>(d: *const KnotoidDiagram) -> Result<&'a Diagram, (KnotoidStatus, String)> {
    d.as_ref().map(|d| &d.0).ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), (KnotoidStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

fn new_string(s: &str) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

/// Parses PD text into a new diagram.
///
/// # Safety
/// `pd` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn knotoid_diagram_parse(pd: *const c_char, out: *mut *mut KnotoidDiagram) -> KnotoidStatus {
    guard(|| {
        if pd.is_null() || out.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(pd).to_str().map_err(|e| (KnotoidStatus::InvalidUtf8, e.to_string()))?;
        let d = lib(text.parse::<Diagram>())?;
        put(out, Box::into_raw(Box::new(KnotoidDiagram(d))))
    })
}

/// # Safety
/// `d` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn knotoid_diagram_free(d: *mut KnotoidDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn knotoid_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn knotoid_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn knotoid_diagram_crossings(d: *const KnotoidDiagram, out: *mut usize) -> KnotoidStatus {
    guard(|| put(out, diagram(d)?.crossing_count()))
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn knotoid_diagram_writhe(d: *const KnotoidDiagram, out: *mut i64) -> KnotoidStatus {
    guard(|| put(out, diagram(d)?.writhe()))
}

/// 1 for a knotoid diagram, 0 for a link diagram.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn knotoid_diagram_is_knotoid(d: *const KnotoidDiagram, out: *mut i32) -> KnotoidStatus {
    guard(|| put(out, i32::from(diagram(d)?.is_knotoid())))
}

/// Text-valued quantities of a diagram.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnotoidText {
    Pd = 0,
    CanonicalCode = 1,
    Bracket = 2,
    NormalizedBracket = 3,
    ExtendedBracket = 4,
    PlanarBracket = 5,
    Homfly = 6,
    Presentation = 7,
}

/// Writes a newly allocated string; free it with `knotoid_string_free`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn knotoid_diagram_text(d: *const KnotoidDiagram, what: KnotoidText, out: *mut *mut c_char) -> KnotoidStatus {
    guard(|| {
        let d = diagram(d)?;
        let s = match what {
            KnotoidText::Pd => d.to_pd(),
            KnotoidText::CanonicalCode => d.canonical_code(),
            KnotoidText::Bracket => lib(invariants::bracket(d))?.to_string(),
            KnotoidText::NormalizedBracket => lib(invariants::normalized_bracket(d))?.to_string(),
            KnotoidText::ExtendedBracket => lib(invariants::extended_bracket(d))?.to_string(),
            KnotoidText::PlanarBracket => lib(invariants::planar_bracket(d))?.to_string(),
            KnotoidText::Homfly => lib(P_invariant(d))?.to_string(),
            KnotoidText::Presentation => lib(wirtinger(d))?.to_string(),
        };
        put(out, new_string(&s))
    })
}

/// Diagram-valued operations.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnotoidTransform {
    Mirror = 0,
    Reverse = 1,
    Symmetry = 2,
    ClosureUnder = 3,
    ClosureOver = 4,
    OnSphere = 5,
}

/// Writes a new handle; free it with `knotoid_diagram_free`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn knotoid_diagram_transform(d: *const KnotoidDiagram, what: KnotoidTransform, out: *mut *mut KnotoidDiagram) -> KnotoidStatus {
    guard(|| {
        let d = diagram(d)?;
        let r = match what {
            KnotoidTransform::Mirror => d.mirror(),
            KnotoidTransform::Reverse => d.reverse(),
            KnotoidTransform::Symmetry => d.symmetry(),
            KnotoidTransform::ClosureUnder => lib(d.closure_under())?,
            KnotoidTransform::ClosureOver => lib(d.closure_over())?,
            KnotoidTransform::OnSphere => d.on_sphere(),
        };
        put(out, Box::into_raw(Box::new(KnotoidDiagram(r))))
    })
}

/// Product of two diagrams, as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn knotoid_diagram_product(a: *const KnotoidDiagram, b: *const KnotoidDiagram, out: *mut *mut KnotoidDiagram) -> KnotoidStatus {
    guard(|| {
        let p = lib(diagram(a)?.product(diagram(b)?))?;
        put(out, Box::into_raw(Box::new(KnotoidDiagram(p))))
    })
}

/// Number of Fox `n`-colorings.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn knotoid_count_colorings(d: *const KnotoidDiagram, n: u64, out: *mut u64) -> KnotoidStatus {
    guard(|| {
        if n < 2 {
            return Err((KnotoidStatus::Failed, "modulus must be at least 2".into()));
        }
        let c = count_colorings(&lib(wirtinger(diagram(d)?))?, n);
        put(out, u64::try_from(c).map_err(|_| (KnotoidStatus::Overflow, format!("{c} colorings do not fit in 64 bits")))?)
    })
}

/// Bounded Reidemeister search. Zero limits select the defaults.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn knotoid_equivalent(
    a: *const KnotoidDiagram,
    b: *const KnotoidDiagram,
    max_crossings: usize,
    max_nodes: usize,
    out: *mut KnotoidVerdict,
) -> KnotoidStatus {
    guard(|| {
        let (a, b) = (diagram(a)?, diagram(b)?);
        if a.surface().is_plane() != b.surface().is_plane() {
            return Err((KnotoidStatus::NotPlanar, "diagrams live on different surfaces".into()));
        }
        let mut budget = Budget::default_for(a, b);
        if max_crossings > 0 {
            budget.max_crossings = max_crossings;
        }
        if max_nodes > 0 {
            budget.max_nodes = max_nodes;
        }
        let v = match search_equivalent(a, b, budget) {
            Verdict::Equivalent { .. } => KnotoidVerdict::Equivalent,
            Verdict::Distinct { .. } => KnotoidVerdict::Distinct,
            Verdict::Inconclusive { .. } => KnotoidVerdict::Inconclusive,
        };
        put(out, v)
    })
}
