use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use schubert_ffi::*;

fn parse(text: &str) -> *mut SchubertPerm {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { schubert_perm_parse(c.as_ptr(), &mut out) }, SchubertStatus::Ok);
    out
}

fn take_string(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { schubert_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(schubert_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn parse_length_and_text() {
    let p = parse("432156");
    let mut len = 0;
    assert_eq!(unsafe { schubert_perm_length(p, &mut len) }, SchubertStatus::Ok);
    assert_eq!(len, 6);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { schubert_perm_to_string(p, 0, &mut s) }, SchubertStatus::Ok);
    assert_eq!(take_string(s), "4321");
    assert_eq!(unsafe { schubert_perm_to_string(p, 6, &mut s) }, SchubertStatus::Ok);
    assert_eq!(take_string(s), "432156");
    unsafe { schubert_perm_free(p) };
}

#[test]
fn parse_errors_set_message() {
    let bad = CString::new("4417").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { schubert_perm_parse(bad.as_ptr(), &mut out) }, SchubertStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("4417") || last_error().contains("permutation"));
    assert_eq!(unsafe { schubert_perm_parse(ptr::null(), &mut out) }, SchubertStatus::NullPointer);
    let good = CString::new("21").unwrap();
    assert_eq!(unsafe { schubert_perm_parse(good.as_ptr(), ptr::null_mut()) }, SchubertStatus::NullPointer);
}

#[test]
fn marching() {
    let p = parse("4317625");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { schubert_perm_march(p, [2usize].as_ptr(), 1, &mut out) }, SchubertStatus::Ok);
    let mut s = ptr::null_mut();
    unsafe { schubert_perm_to_string(out, 0, &mut s) };
    assert_eq!(take_string(s), "4517326");
    unsafe { schubert_perm_free(out) };

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { schubert_perm_march(p, [4usize].as_ptr(), 1, &mut out) }, SchubertStatus::Precondition);
    assert_eq!(last_error(), "row 4 is not a pivot row of 4317625");
    unsafe { schubert_perm_free(p) };
}

#[test]
fn polynomials() {
    let p = parse("132");
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { schubert_grothendieck(p, &mut g) }, SchubertStatus::Ok);
    let mut s = ptr::null_mut();
    unsafe { schubert_poly_to_string(g, &mut s) };
    assert_eq!(take_string(s), "x1 + x2 - x1*x2");
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { schubert_poly_truncate(g, 1, &mut r) }, SchubertStatus::Ok);
    unsafe { schubert_poly_to_string(r, &mut s) };
    assert_eq!(take_string(s), "x1");
    unsafe {
        schubert_poly_free(r);
        schubert_poly_free(g);
        schubert_perm_free(p);
    }
}

#[test]
fn products() {
    let (sigma, rho) = (parse("321"), parse("132"));
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { schubert_structure_constants(sigma, rho, &mut m) }, SchubertStatus::Ok);
    let mut len = 0;
    unsafe { schubert_expansion_len(m, &mut len) };
    assert_eq!(len, 3);
    let mut s = ptr::null_mut();
    unsafe { schubert_expansion_to_json(m, 6, &mut s) };
    assert_eq!(take_string(s), r#"{"341256":1,"421356":1,"431256":-1}"#);
    let key = parse("431256");
    let mut c = 0i64;
    assert_eq!(unsafe { schubert_expansion_coefficient(m, key, &mut c) }, SchubertStatus::Ok);
    assert_eq!(c, -1);

    let mut tp = ptr::null_mut();
    assert_eq!(unsafe { schubert_truncation_product(sigma, rho, 3, 2, false, 0, &mut tp) }, SchubertStatus::Ok);
    unsafe { schubert_expansion_to_json(tp, 6, &mut s) };
    assert_eq!(take_string(s), r#"{"341256":1,"421356":1,"431256":-1}"#);

    let (w, a) = (parse("4321"), parse("2143"));
    let mut none = ptr::null_mut();
    assert_eq!(unsafe { schubert_truncation_product(w, a, 4, 1, false, 0, &mut none) }, SchubertStatus::Precondition);
    assert!(none.is_null());
    unsafe {
        for p in [sigma, rho, key, w, a] {
            schubert_perm_free(p);
        }
        schubert_expansion_free(m);
        schubert_expansion_free(tp);
    }
}

#[test]
fn trees() {
    let p = parse("321465");
    let mut tree = ptr::null_mut();
    assert_eq!(unsafe { schubert_tree_build(p, 2, false, 0, &mut tree) }, SchubertStatus::Ok);
    let mut count = 0;
    unsafe { schubert_tree_node_count(tree, &mut count) };
    assert_eq!(count, 13);
    let mut s = ptr::null_mut();
    unsafe { schubert_tree_to_dot(tree, &mut s) };
    assert!(take_string(s).starts_with("digraph march_tree {"));
    unsafe { schubert_tree_to_json(tree, &mut s) };
    assert!(take_string(s).starts_with(r#"{"label":"321465""#));
    unsafe { schubert_tree_free(tree) };

    let mut capped = ptr::null_mut();
    assert_eq!(unsafe { schubert_tree_build(p, 2, false, 3, &mut capped) }, SchubertStatus::Resource);
    unsafe { schubert_perm_free(p) };
}

#[test]
fn free_functions_accept_null() {
    unsafe {
        schubert_perm_free(ptr::null_mut());
        schubert_poly_free(ptr::null_mut());
        schubert_expansion_free(ptr::null_mut());
        schubert_tree_free(ptr::null_mut());
        schubert_string_free(ptr::null_mut());
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// The static library built alongside this test binary.
fn static_lib() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|deps| deps.parent()).unwrap();
    let lib = profile_dir.join("libschubert_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    lib
}

#[test]
fn c_program_links_against_header() {
    let header = crate_dir().join("include/schubert.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["schubert_perm_parse", "schubert_truncation_product", "schubert_tree_to_dot", "SCHUBERT_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from header");
    }

    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ffi_c");
    std::fs::create_dir_all(&out_dir).unwrap();
    let src = out_dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "schubert.h"

int main(void) {
    SchubertPerm *sigma = NULL, *rho = NULL;
    SchubertExpansion *map = NULL;
    char *json = NULL;
    if (schubert_perm_parse("321", &sigma) != SCHUBERT_STATUS_OK) return 1;
    if (schubert_perm_parse("132", &rho) != SCHUBERT_STATUS_OK) return 1;
    if (schubert_structure_constants(sigma, rho, &map) != SCHUBERT_STATUS_OK) return 2;
    if (schubert_expansion_to_json(map, 6, &json) != SCHUBERT_STATUS_OK) return 3;
    printf("%s\n", json);
    schubert_string_free(json);
    schubert_expansion_free(map);
    schubert_perm_free(rho);
    schubert_perm_free(sigma);
    SchubertPerm *bad = NULL;
    if (schubert_perm_parse("11", &bad) != SCHUBERT_STATUS_PARSE) return 4;
    return strlen(schubert_last_error()) > 0 ? 0 : 5;
}
"#,
    )
    .unwrap();
    let exe = out_dir.join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(static_lib())
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is available");
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status);
    assert_eq!(String::from_utf8(run.stdout).unwrap(), "{\"341256\":1,\"421356\":1,\"431256\":-1}\n");
}
