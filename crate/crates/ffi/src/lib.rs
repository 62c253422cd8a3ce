//! C ABI over the costrata toolkit. Handles are opaque pointers, every
//! fallible call returns a status code, and the last failure message is
//! kept per thread for retrieval with `costrata_last_error_message`.
//! Strings returned through out-parameters are heap allocations that
//! the caller releases with `costrata_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use costrata::coxeter::{build_group, CoxeterDatum, EnumeratedGroup, ParabolicSubset};
use costrata::cosets::coset_poset;
use costrata::hecke::{a_function, a_table_csv, AMethod};
use costrata::homdim::{BlockContext, BlockSpec};
use costrata::wposet::{is_isomorphic, IsoMode, WeightedPoset};

/// Result of every fallible call.
#[repr(i32)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CostrataStatus {
    /// The call succeeded and its out-parameters are valid.
    Ok = 0,
    /// An argument failed to parse or refers to nothing.
    InvalidArgument = 1,
    /// The arguments were well formed but the computation refused them.
    ComputationFailed = 2,
    /// A required pointer was null.
    NullPointer = 3,
}

/// Opaque handle to one enumerated group.
pub struct CostrataGroup {
    inner: EnumeratedGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let stored = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn fail(status: CostrataStatus, msg: String) -> CostrataStatus {
    set_error(msg);
    status
}

/// Runs the body behind a panic guard; a panic must not cross the ABI.
fn guarded(f: impl FnOnce() -> CostrataStatus) -> CostrataStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(CostrataStatus::ComputationFailed, "internal panic".to_string()),
    }
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, CostrataStatus> {
    if p.is_null() {
        return Err(fail(CostrataStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        fail(
            CostrataStatus::InvalidArgument,
            "string argument is not UTF-8".into(),
        )
    })
}

fn out_string(s: String) -> *mut c_char {
    CString::new(s)
        .unwrap_or_else(|_| CString::new("").unwrap())
        .into_raw()
}

/// Builds the enumerated group of the given type (for example "A3",
/// "B2xA1") and stores a handle in `out`. Fails with
/// `ComputationFailed` when the group is too large to enumerate.
///
/// # Safety
/// `type_name` must be a NUL-terminated string and `out` a valid
/// pointer; on success the caller owns the handle and must release it
/// with `costrata_group_free`.
#[no_mangle]
pub unsafe extern "C" fn costrata_group_new(
    type_name: *const c_char,
    out: *mut *mut CostrataGroup,
) -> CostrataStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CostrataStatus::NullPointer, "null out pointer".into());
        }
        let name = match str_arg(type_name) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let datum = match CoxeterDatum::parse(name) {
            Ok(d) => d,
            Err(e) => return fail(CostrataStatus::InvalidArgument, e.to_string()),
        };
        match build_group(&datum) {
            Ok(group) => {
                *out = Box::into_raw(Box::new(CostrataGroup { inner: group }));
                CostrataStatus::Ok
            }
            Err(e) => fail(CostrataStatus::ComputationFailed, e.to_string()),
        }
    })
}

/// Releases a handle returned by `costrata_group_new`. Null is a no-op.
///
/// # Safety
/// `group` must be null or a handle from `costrata_group_new` that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn costrata_group_free(group: *mut CostrataGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

unsafe fn group_arg<'a>(p: *const CostrataGroup) -> Result<&'a EnumeratedGroup, CostrataStatus> {
    if p.is_null() {
        return Err(fail(CostrataStatus::NullPointer, "null group handle".into()));
    }
    Ok(&(*p).inner)
}

/// Number of elements of the group.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn costrata_group_order(
    group: *const CostrataGroup,
    out: *mut u64,
) -> CostrataStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CostrataStatus::NullPointer, "null out pointer".into());
        }
        match group_arg(group) {
            Ok(g) => {
                *out = g.order() as u64;
                CostrataStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Number of simple reflections.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn costrata_group_rank(
    group: *const CostrataGroup,
    out: *mut u32,
) -> CostrataStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CostrataStatus::NullPointer, "null out pointer".into());
        }
        match group_arg(group) {
            Ok(g) => {
                *out = g.rank() as u32;
                CostrataStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Length of the longest element.
///
/// # Safety
/// `group` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn costrata_longest_length(
    group: *const CostrataGroup,
    out: *mut u32,
) -> CostrataStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CostrataStatus::NullPointer, "null out pointer".into());
        }
        match group_arg(group) {
            Ok(g) => {
                let w0 = g.longest_element(&ParabolicSubset::full(g.rank()));
                *out = g.length(w0);
                CostrataStatus::Ok
            }
            Err(status) => status,
        }
    })
}

/// Weighted double-coset poset of the pair (G, S) as single-line JSON.
/// Subsets are spelled as in the CLI: "none", "all", or "s1,s3". The
/// returned string is released with `costrata_string_free`.
///
/// # Safety
/// `group` must be a live handle, the subset strings NUL-terminated,
/// and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn costrata_coset_poset_json(
    group: *const CostrataGroup,
    g_subset: *const c_char,
    s_subset: *const c_char,
    out: *mut *mut c_char,
) -> CostrataStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CostrataStatus::NullPointer, "null out pointer".into());
        }
        let g = match group_arg(group) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let g_text = match str_arg(g_subset) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let s_text = match str_arg(s_subset) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let g_set = match ParabolicSubset::parse(g.rank(), g_text) {
            Ok(p) => p,
            Err(e) => return fail(CostrataStatus::InvalidArgument, e.to_string()),
        };
        let s_set = match ParabolicSubset::parse(g.rank(), s_text) {
            Ok(p) => p,
            Err(e) => return fail(CostrataStatus::InvalidArgument, e.to_string()),
        };
        match coset_poset(g, &g_set, &s_set) {
            Ok(poset) => {
                *out = out_string(poset.to_json());
                CostrataStatus::Ok
            }
            Err(e) => fail(CostrataStatus::ComputationFailed, e.to_string()),
        }
    })
}

/// Tests two JSON posets for isomorphism, weight-aware when `weighted`
/// is true, and stores the verdict in `out`.
///
/// # Safety
/// The JSON strings must be NUL-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn costrata_poset_isomorphic(
    a_json: *const c_char,
    b_json: *const c_char,
    weighted: bool,
    out: *mut bool,
) -> CostrataStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CostrataStatus::NullPointer, "null out pointer".into());
        }
        let a_text = match str_arg(a_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let b_text = match str_arg(b_json) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let a = match WeightedPoset::from_json(a_text) {
            Ok(p) => p,
            Err(e) => return fail(CostrataStatus::InvalidArgument, e.to_string()),
        };
        let b = match WeightedPoset::from_json(b_text) {
            Ok(p) => p,
            Err(e) => return fail(CostrataStatus::InvalidArgument, e.to_string()),
        };
        let mode = if weighted {
            IsoMode::Weighted
        } else {
            IsoMode::Unweighted
        };
        *out = is_isomorphic(&a, &b, mode).is_some();
        CostrataStatus::Ok
    })
}

/// The a-function of the whole group as CSV ("word,length,a" header),
/// computed by the requested method: "hecke", "rsk", or "auto". The
/// returned string is released with `costrata_string_free`.
///
/// # Safety
/// `group` must be a live handle, `method` NUL-terminated, and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn costrata_a_function_csv(
    group: *const CostrataGroup,
    method: *const c_char,
    out: *mut *mut c_char,
) -> CostrataStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CostrataStatus::NullPointer, "null out pointer".into());
        }
        let g = match group_arg(group) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let method_text = match str_arg(method) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let method = match AMethod::parse(method_text) {
            Some(m) => m,
            None => {
                return fail(
                    CostrataStatus::InvalidArgument,
                    format!("unknown method {method_text}"),
                )
            }
        };
        match a_function(g, method) {
            Ok(table) => {
                *out = out_string(a_table_csv(g, &table));
                CostrataStatus::Ok
            }
            Err(e) => fail(CostrataStatus::ComputationFailed, e.to_string()),
        }
    })
}

/// Finitistic dimension of the regular block of the handle's group with
/// quotient subset G (spelled "none", "all", or "s1,s3").
///
/// # Safety
/// `group` must be a live handle, `g_subset` NUL-terminated, and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn costrata_finitistic_dimension(
    group: *const CostrataGroup,
    g_subset: *const c_char,
    out: *mut u32,
) -> CostrataStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CostrataStatus::NullPointer, "null out pointer".into());
        }
        let g = match group_arg(group) {
            Ok(g) => g,
            Err(status) => return status,
        };
        let g_text = match str_arg(g_subset) {
            Ok(s) => s,
            Err(status) => return status,
        };
        let g_set = match ParabolicSubset::parse(g.rank(), g_text) {
            Ok(p) => p,
            Err(e) => return fail(CostrataStatus::InvalidArgument, e.to_string()),
        };
        let spec = BlockSpec::regular(g.datum().clone(), g_set);
        let ctx = match BlockContext::new(spec) {
            Ok(c) => c,
            Err(e) => return fail(CostrataStatus::ComputationFailed, e.to_string()),
        };
        match ctx.finitistic_dimension() {
            Ok(fd) => {
                *out = fd;
                CostrataStatus::Ok
            }
            Err(e) => fail(CostrataStatus::ComputationFailed, e.to_string()),
        }
    })
}

/// The message of the most recent failure on this thread, or an empty
/// string when nothing failed yet. The returned string is released with
/// `costrata_string_free`.
#[no_mangle]
pub extern "C" fn costrata_last_error_message() -> *mut c_char {
    let text = LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    out_string(text)
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string obtained from this library that has not
/// been freed yet.
#[no_mangle]
pub unsafe extern "C" fn costrata_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
