//! C ABI over `schubert-core`.
//!
//! Every object crosses the boundary as an opaque pointer owned by the
//! caller and released with the matching `*_free` function. Functions return
//! a [`SchubertStatus`]; on failure [`schubert_last_error`] describes what
//! went wrong on the calling thread. Strings returned through out-parameters
//! are heap allocated and must be released with [`schubert_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use schubert_core::calculus::{detect_with, truncation_product_with, Options};
use schubert_core::diagram::k_march;
use schubert_core::grothendieck::{grothendieck, structure_constants};
use schubert_core::tree::{Mode, TreeBuilder};
use schubert_core::{Error, ExpansionMap, MarchTree, Permutation, Polynomial};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchubertStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    Resource = 5,
    /// A coefficient did not fit the requested integer type.
    Overflow = 6,
    Panic = 7,
}

pub struct SchubertPerm(Permutation);
pub struct SchubertPoly(Polynomial);
pub struct SchubertExpansion(ExpansionMap);
pub struct SchubertTree(MarchTree);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

struct Failure(SchubertStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::PermParse { .. } | Error::PolyParse { .. } | Error::NotBijection(_) | Error::ZeroEntry => {
                SchubertStatus::Parse
            }
            Error::NodeCeiling(_) | Error::OracleCeiling { .. } | Error::ExpansionDiverged(_) => {
                SchubertStatus::Resource
            }
            _ => SchubertStatus::Precondition,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SchubertStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SchubertStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SchubertStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SchubertStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(SchubertStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(text).map_err(|_| Failure(SchubertStatus::Panic, "interior nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn mode(cohomology: bool) -> Mode {
    if cohomology {
        Mode::Cohomology
    } else {
        Mode::K
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn schubert_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn schubert_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses one-line notation such as `4317625` or `123469857,10`.
///
/// # Safety
/// `text` must be a valid C string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn schubert_perm_parse(text: *const c_char, out: *mut *mut SchubertPerm) -> SchubertStatus {
    guard(|| {
        let perm: Permutation = read_str(text, "text")?.parse()?;
        write_out(out, SchubertPerm(perm))
    })
}

/// # Safety
/// `perm` must be null or a pointer from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn schubert_perm_free(perm: *mut SchubertPerm) {
    if !perm.is_null() {
        drop(Box::from_raw(perm));
    }
}

/// # Safety
/// `perm` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_perm_length(perm: *const SchubertPerm, out: *mut usize) -> SchubertStatus {
    guard(|| {
        let p = borrow(perm, "perm")?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = p.0.length();
        Ok(())
    })
}

/// Canonical text with at least `width` entries (0 for no padding).
///
/// # Safety
/// `perm` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_perm_to_string(
    perm: *const SchubertPerm,
    width: usize,
    out: *mut *mut c_char,
) -> SchubertStatus {
    guard(|| {
        let p = borrow(perm, "perm")?;
        write_string(out, p.0.to_padded_string(width))
    })
}

/// K-march toward the pivot rows `rows[0..len]`, strictly increasing.
///
/// # Safety
/// `perm` must be a live handle, `rows` must point to `len` values and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_perm_march(
    perm: *const SchubertPerm,
    rows: *const usize,
    len: usize,
    out: *mut *mut SchubertPerm,
) -> SchubertStatus {
    guard(|| {
        let p = borrow(perm, "perm")?;
        if rows.is_null() && len > 0 {
            return Err(null("rows"));
        }
        let rows = if len == 0 { &[][..] } else { std::slice::from_raw_parts(rows, len) };
        write_out(out, SchubertPerm(k_march(&p.0, rows)?))
    })
}

/// # Safety
/// `perm` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_grothendieck(
    perm: *const SchubertPerm,
    out: *mut *mut SchubertPoly,
) -> SchubertStatus {
    guard(|| {
        let p = borrow(perm, "perm")?;
        write_out(out, SchubertPoly((*grothendieck(&p.0)).clone()))
    })
}

/// Sets every variable beyond `x_t` to zero.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_poly_truncate(
    poly: *const SchubertPoly,
    t: usize,
    out: *mut *mut SchubertPoly,
) -> SchubertStatus {
    guard(|| {
        let f = borrow(poly, "poly")?;
        write_out(out, SchubertPoly(f.0.truncate(t)))
    })
}

/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_poly_to_string(poly: *const SchubertPoly, out: *mut *mut c_char) -> SchubertStatus {
    guard(|| {
        let f = borrow(poly, "poly")?;
        write_string(out, f.0.to_string())
    })
}

/// # Safety
/// `poly` must be null or a pointer from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn schubert_poly_free(poly: *mut SchubertPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// `G_sigma * G_rho` in the Grothendieck basis.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_structure_constants(
    sigma: *const SchubertPerm,
    rho: *const SchubertPerm,
    out: *mut *mut SchubertExpansion,
) -> SchubertStatus {
    guard(|| {
        let (s, r) = (borrow(sigma, "sigma")?, borrow(rho, "rho")?);
        write_out(out, SchubertExpansion(structure_constants(&s.0, &r.0)?))
    })
}

/// Structure constants of a truncation Schubert problem read off its tree.
/// Returns `Precondition` when `(sigma, alpha, n, t)` is not such a problem.
/// `node_ceiling` of 0 selects the default.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_truncation_product(
    sigma: *const SchubertPerm,
    alpha: *const SchubertPerm,
    n: usize,
    t: usize,
    cohomology: bool,
    node_ceiling: usize,
    out: *mut *mut SchubertExpansion,
) -> SchubertStatus {
    guard(|| {
        let (s, a) = (borrow(sigma, "sigma")?, borrow(alpha, "alpha")?);
        let mut opts = Options::default();
        if node_ceiling > 0 {
            opts.node_ceiling = node_ceiling;
        }
        let problem = detect_with(&s.0, &a.0, n, t, &opts)?
            .ok_or_else(|| Failure(SchubertStatus::Precondition, "not a truncation Schubert problem".into()))?;
        write_out(out, SchubertExpansion(truncation_product_with(&problem, mode(cohomology), &opts)?))
    })
}

/// # Safety
/// `map` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_expansion_len(map: *const SchubertExpansion, out: *mut usize) -> SchubertStatus {
    guard(|| {
        let m = borrow(map, "map")?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = m.0.len();
        Ok(())
    })
}

/// Coefficient of `perm`, zero when absent. Fails with `Overflow` outside
/// the `int64_t` range.
///
/// # Safety
/// Both handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_expansion_coefficient(
    map: *const SchubertExpansion,
    perm: *const SchubertPerm,
    out: *mut i64,
) -> SchubertStatus {
    guard(|| {
        let (m, p) = (borrow(map, "map")?, borrow(perm, "perm")?);
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        let c = m.0.get(&p.0);
        *out = c.to_i64().ok_or_else(|| Failure(SchubertStatus::Overflow, format!("coefficient {c} exceeds int64")))?;
        Ok(())
    })
}

/// JSON object `{"perm": coefficient, ...}` with keys padded to `width`.
///
/// # Safety
/// `map` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_expansion_to_json(
    map: *const SchubertExpansion,
    width: usize,
    out: *mut *mut c_char,
) -> SchubertStatus {
    guard(|| {
        let m = borrow(map, "map")?;
        write_string(out, m.0.to_json_padded(width).to_string())
    })
}

/// # Safety
/// `map` must be null or a pointer from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn schubert_expansion_free(map: *mut SchubertExpansion) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// Marching tree of `perm` truncated at `t`. `node_ceiling` of 0 selects
/// the default.
///
/// # Safety
/// `perm` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_tree_build(
    perm: *const SchubertPerm,
    t: usize,
    cohomology: bool,
    node_ceiling: usize,
    out: *mut *mut SchubertTree,
) -> SchubertStatus {
    guard(|| {
        let p = borrow(perm, "perm")?;
        let mut builder = TreeBuilder::new(t, mode(cohomology));
        if node_ceiling > 0 {
            builder = builder.ceiling(node_ceiling);
        }
        write_out(out, SchubertTree(builder.build(&p.0)?))
    })
}

/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_tree_node_count(tree: *const SchubertTree, out: *mut usize) -> SchubertStatus {
    guard(|| {
        let tr = borrow(tree, "tree")?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = tr.0.node_count();
        Ok(())
    })
}

/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_tree_to_json(tree: *const SchubertTree, out: *mut *mut c_char) -> SchubertStatus {
    guard(|| {
        let tr = borrow(tree, "tree")?;
        write_string(out, tr.0.to_json().to_string())
    })
}

/// # Safety
/// `tree` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schubert_tree_to_dot(tree: *const SchubertTree, out: *mut *mut c_char) -> SchubertStatus {
    guard(|| {
        let tr = borrow(tree, "tree")?;
        write_string(out, tr.0.to_dot())
    })
}

/// # Safety
/// `tree` must be null or a pointer from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn schubert_tree_free(tree: *mut SchubertTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}
