//! Drives the C entry points the way a C caller would: raw pointers,
//! status codes, per-thread error messages, explicit frees.

use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use costrata_ffi::{
    costrata_a_function_csv, costrata_coset_poset_json, costrata_finitistic_dimension,
    costrata_group_free, costrata_group_new, costrata_group_order, costrata_group_rank,
    costrata_last_error_message, costrata_longest_length, costrata_poset_isomorphic,
    costrata_string_free, CostrataGroup, CostrataStatus,
};
use costrata::wposet::WeightedPoset;

fn cstring(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let text = CStr::from_ptr(p).to_str().unwrap().to_string();
    costrata_string_free(p);
    text
}

unsafe fn last_error() -> String {
    take_string(costrata_last_error_message())
}

unsafe fn make_group(name: &str) -> *mut CostrataGroup {
    let name = cstring(name);
    let mut handle: *mut CostrataGroup = ptr::null_mut();
    assert_eq!(
        costrata_group_new(name.as_ptr(), &mut handle),
        CostrataStatus::Ok
    );
    assert!(!handle.is_null());
    handle
}

#[test]
fn group_lifecycle_and_scalar_queries() {
    unsafe {
        let handle = make_group("A3");

        let mut order = 0u64;
        assert_eq!(costrata_group_order(handle, &mut order), CostrataStatus::Ok);
        assert_eq!(order, 24);

        let mut rank = 0u32;
        assert_eq!(costrata_group_rank(handle, &mut rank), CostrataStatus::Ok);
        assert_eq!(rank, 3);

        let mut longest = 0u32;
        assert_eq!(
            costrata_longest_length(handle, &mut longest),
            CostrataStatus::Ok
        );
        assert_eq!(longest, 6);

        costrata_group_free(handle);
        costrata_group_free(ptr::null_mut());
    }
}

#[test]
fn construction_failures_set_the_error_message() {
    unsafe {
        let mut handle: *mut CostrataGroup = ptr::null_mut();

        let bad = cstring("Q9");
        assert_eq!(
            costrata_group_new(bad.as_ptr(), &mut handle),
            CostrataStatus::InvalidArgument
        );
        assert!(handle.is_null());
        assert!(!last_error().is_empty());

        let huge = cstring("E8");
        assert_eq!(
            costrata_group_new(huge.as_ptr(), &mut handle),
            CostrataStatus::ComputationFailed
        );
        assert!(handle.is_null());
        assert!(last_error().contains("cap"), "{}", last_error());

        assert_eq!(
            costrata_group_new(ptr::null(), &mut handle),
            CostrataStatus::NullPointer
        );
        let ok = cstring("A2");
        assert_eq!(
            costrata_group_new(ok.as_ptr(), ptr::null_mut()),
            CostrataStatus::NullPointer
        );
    }
}

#[test]
fn null_handles_are_rejected() {
    unsafe {
        let mut order = 0u64;
        assert_eq!(
            costrata_group_order(ptr::null(), &mut order),
            CostrataStatus::NullPointer
        );
        let handle = make_group("A2");
        assert_eq!(
            costrata_group_order(handle, ptr::null_mut()),
            CostrataStatus::NullPointer
        );
        costrata_group_free(handle);
    }
}

#[test]
fn coset_poset_round_trips_through_json() {
    unsafe {
        let handle = make_group("A3");
        let g_subset = cstring("s1,s2");
        let s_subset = cstring("none");
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(
            costrata_coset_poset_json(handle, g_subset.as_ptr(), s_subset.as_ptr(), &mut text),
            CostrataStatus::Ok
        );
        let json = take_string(text);
        let poset = WeightedPoset::from_json(&json).unwrap();
        assert_eq!(poset.size(), 4);
        assert_eq!(poset.weights(), &[6, 6, 6, 6]);

        let bad = cstring("s9");
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(
            costrata_coset_poset_json(handle, bad.as_ptr(), s_subset.as_ptr(), &mut text),
            CostrataStatus::InvalidArgument
        );
        assert!(text.is_null());
        costrata_group_free(handle);
    }
}

#[test]
fn isomorphism_verdicts() {
    unsafe {
        let a = cstring(r#"{"weights":[1,2],"covers":[[0,1]]}"#);
        let b = cstring(r#"{"weights":[2,1],"covers":[[1,0]]}"#);
        let c = cstring(r#"{"weights":[1,3],"covers":[[0,1]]}"#);

        let mut verdict = false;
        assert_eq!(
            costrata_poset_isomorphic(a.as_ptr(), b.as_ptr(), true, &mut verdict),
            CostrataStatus::Ok
        );
        assert!(verdict);

        assert_eq!(
            costrata_poset_isomorphic(a.as_ptr(), c.as_ptr(), true, &mut verdict),
            CostrataStatus::Ok
        );
        assert!(!verdict);

        assert_eq!(
            costrata_poset_isomorphic(a.as_ptr(), c.as_ptr(), false, &mut verdict),
            CostrataStatus::Ok
        );
        assert!(verdict);

        let broken = cstring("{");
        assert_eq!(
            costrata_poset_isomorphic(a.as_ptr(), broken.as_ptr(), true, &mut verdict),
            CostrataStatus::InvalidArgument
        );
    }
}

#[test]
fn a_function_csv_and_method_gates() {
    unsafe {
        let handle = make_group("A2");
        let auto = cstring("auto");
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(
            costrata_a_function_csv(handle, auto.as_ptr(), &mut text),
            CostrataStatus::Ok
        );
        assert_eq!(
            take_string(text),
            "word,length,a\ne,0,0\n1,1,1\n2,1,1\n12,2,1\n21,2,1\n121,3,3\n"
        );

        let unknown = cstring("zzz");
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(
            costrata_a_function_csv(handle, unknown.as_ptr(), &mut text),
            CostrataStatus::InvalidArgument
        );
        costrata_group_free(handle);

        // The brute-force backend refuses groups past its cap; the
        // symmetric-group backend accepts the same handle.
        let big = make_group("A4");
        let hecke = cstring("hecke");
        let mut text: *mut c_char = ptr::null_mut();
        assert_eq!(
            costrata_a_function_csv(big, hecke.as_ptr(), &mut text),
            CostrataStatus::ComputationFailed
        );
        let rsk = cstring("rsk");
        assert_eq!(
            costrata_a_function_csv(big, rsk.as_ptr(), &mut text),
            CostrataStatus::Ok
        );
        assert!(take_string(text).starts_with("word,length,a\n"));
        costrata_group_free(big);
    }
}

#[test]
fn finitistic_dimension_values() {
    unsafe {
        let handle = make_group("A2");
        let mut fd = u32::MAX;

        let g = cstring("s1");
        assert_eq!(
            costrata_finitistic_dimension(handle, g.as_ptr(), &mut fd),
            CostrataStatus::Ok
        );
        assert_eq!(fd, 2);

        let all = cstring("all");
        assert_eq!(
            costrata_finitistic_dimension(handle, all.as_ptr(), &mut fd),
            CostrataStatus::Ok
        );
        assert_eq!(fd, 0);

        let none = cstring("none");
        assert_eq!(
            costrata_finitistic_dimension(handle, none.as_ptr(), &mut fd),
            CostrataStatus::Ok
        );
        assert_eq!(fd, 6);
        costrata_group_free(handle);

        let b3 = make_group("B3");
        assert_eq!(
            costrata_finitistic_dimension(b3, none.as_ptr(), &mut fd),
            CostrataStatus::Ok
        );
        assert_eq!(fd, 18);
        costrata_group_free(b3);
    }
}

#[test]
fn generated_header_declares_the_api() {
    let header_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/costrata.h");
    let header = std::fs::read_to_string(&header_path).expect("header is generated at build time");
    for needle in [
        "COSTRATA_H",
        "CostrataStatus",
        "CostrataGroup",
        "costrata_group_new",
        "costrata_group_free",
        "costrata_coset_poset_json",
        "costrata_poset_isomorphic",
        "costrata_a_function_csv",
        "costrata_finitistic_dimension",
        "costrata_last_error_message",
        "costrata_string_free",
    ] {
        assert!(header.contains(needle), "header lacks {needle}");
    }

    // Full grammar check when a C compiler is around; the header must
    // stand alone as a compilation unit.
    let clang = Command::new("clang")
        .args(["-fsyntax-only", "-x", "c"])
        .arg(&header_path)
        .output();
    if let Ok(result) = clang {
        assert!(
            result.status.success(),
            "clang rejected the header: {}",
            String::from_utf8_lossy(&result.stderr)
        );
    }
}
