use std::ffi::{c_char, CStr, CString};
use std::process::Command;
use std::ptr;

use serde_json::Value;

use prismatica_ffi::*;

fn take_json(p: *mut c_char) -> Value {
    assert!(!p.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(p) }.to_str().unwrap()).unwrap();
    unsafe { prism_string_free(p) };
    v
}

fn last_error() -> String {
    let p = prism_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn fixture(name: &str, d: usize) -> *mut PrismSimplicialSet {
    let name = CString::new(name).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { prism_simplicial_set_from_fixture(name.as_ptr(), d, &mut h) }, PRISM_OK);
    h
}

#[test]
fn fixture_identities_and_homology() {
    let h = fixture("rp2_6", 3);
    assert_eq!(unsafe { prism_simplicial_set_truncation(h) }, 3);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { prism_verify_identities(h, &mut out) }, PRISM_OK);
    assert_eq!(take_json(out)["ok"], true);
    let c = CString::new("Pbar").unwrap();
    assert_eq!(unsafe { prism_homology(h, c.as_ptr(), 2, &mut out) }, PRISM_OK);
    let r = take_json(out);
    assert_eq!(r["homology"][1]["torsion"], serde_json::json!([2]));
    assert_eq!(unsafe { prism_simplicial_set_truncation(h) }, 3);
    unsafe { prism_simplicial_set_free(h) };
}

#[test]
fn complex_json() {
    let text = CString::new(r#"{"vertices":["a","b","c"],"simplices":[[0,1],[1,2],[0,2]]}"#).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { prism_simplicial_set_from_json(text.as_ptr(), 2, &mut h) }, PRISM_OK);
    let mut out = ptr::null_mut();
    let c = CString::new("simplicial").unwrap();
    assert_eq!(unsafe { prism_homology(h, c.as_ptr(), 2, &mut out) }, PRISM_OK);
    let betti: Vec<u64> = take_json(out)["homology"].as_array().unwrap().iter().map(|d| d["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, vec![1, 1]);
    unsafe { prism_simplicial_set_free(h) };
}

#[test]
fn error_codes() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { prism_simplicial_set_from_fixture(ptr::null(), 2, &mut h) }, PRISM_ERR_NULL);
    assert!(h.is_null());
    let bad_utf8 = [0xffu8, 0];
    assert_eq!(unsafe { prism_simplicial_set_from_fixture(bad_utf8.as_ptr().cast(), 2, &mut h) }, PRISM_ERR_UTF8);
    let nope = CString::new("nowhere").unwrap();
    assert_eq!(unsafe { prism_simplicial_set_from_fixture(nope.as_ptr(), 2, &mut h) }, PRISM_ERR_INVALID);
    assert!(last_error().contains("nowhere"));
    let broken = CString::new(r#"{"vertices":["a","b"],"simplices":[[1,0]]}"#).unwrap();
    assert_eq!(unsafe { prism_simplicial_set_from_json(broken.as_ptr(), 2, &mut h) }, PRISM_ERR_INVALID);

    let s = fixture("circle", 2);
    let mut out = ptr::null_mut();
    let q = CString::new("Q").unwrap();
    assert_eq!(unsafe { prism_homology(s, q.as_ptr(), 1, &mut out) }, PRISM_ERR_INVALID);
    assert!(out.is_null());
    assert_eq!(unsafe { prism_verify_identities(ptr::null(), &mut out) }, PRISM_ERR_NULL);
    assert_eq!(unsafe { prism_verify_identities(s, ptr::null_mut()) }, PRISM_ERR_NULL);
    assert_eq!(unsafe { prism_verify_identities(s, &mut out) }, PRISM_OK);
    assert!(prism_last_error().is_null());
    unsafe {
        prism_string_free(out);
        prism_simplicial_set_free(s);
        prism_simplicial_set_free(ptr::null_mut());
        prism_string_free(ptr::null_mut());
    }
    assert_eq!(unsafe { prism_simplicial_set_truncation(ptr::null()) }, -1);
}

#[test]
fn header_declares_the_api() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/prismatica.h");
    let header = std::fs::read_to_string(path).unwrap();
    for name in [
        "prism_simplicial_set_from_json",
        "prism_simplicial_set_from_fixture",
        "prism_simplicial_set_free",
        "prism_verify_identities",
        "prism_homology",
        "prism_last_error",
        "prism_string_free",
        "PRISM_ERR_PANIC",
    ] {
        assert!(header.contains(name), "{name}");
    }
    if let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c", path]).output() {
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
}
