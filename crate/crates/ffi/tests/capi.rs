use std::ffi::{CStr, CString};
use std::ptr;

use qhardy_ffi::*;

fn group(json: &str) -> *mut QhGroup {
    let spec = CString::new(json).unwrap();
    let mut g = ptr::null_mut();
    let status = unsafe { qh_group_from_json(spec.as_ptr(), &mut g) };
    assert_eq!(status, QhStatus::Ok);
    assert!(!g.is_null());
    g
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { qh_string_free(p) };
    s
}

#[test]
fn group_queries() {
    let g = group(r#"{"family":"wreath","m":2,"d":2}"#);
    let (mut order, mut dim, mut chars) = (0usize, 0usize, 0usize);
    unsafe {
        assert_eq!(qh_group_order(g, &mut order), QhStatus::Ok);
        assert_eq!(qh_group_dimension(g, &mut dim), QhStatus::Ok);
        assert_eq!(qh_group_character_count(g, &mut chars), QhStatus::Ok);
    }
    assert_eq!((order, dim, chars), (8, 2, 4));

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qh_group_describe_json(g, &mut out) }, QhStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["hyperplanes"].as_array().unwrap().len(), 4);
    unsafe { qh_group_free(g) };
}

#[test]
fn generating_polynomial_of_sign() {
    let g = group(r#"{"family":"symmetric","d":2}"#);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qh_generating_polynomial_json(g, 1, &mut out) }, QhStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
    assert_eq!(
        unsafe { qh_generating_polynomial_json(g, 5, &mut out) },
        QhStatus::InvalidArgument
    );
    let msg = unsafe { CStr::from_ptr(qh_last_error()) }.to_str().unwrap();
    assert!(msg.contains("out of range"));
    unsafe { qh_group_free(g) };
}

#[test]
fn kernels() {
    let g = group(r#"{"family":"symmetric","d":2}"#);
    let z = [0.5, 0.0, 0.0, 0.0];
    let mut k = [0.0f64; 2];
    let status = unsafe {
        qh_subspace_kernel(g, 1, QhModel::Polydisc, z.as_ptr(), z.as_ptr(), k.as_mut_ptr())
    };
    assert_eq!(status, QhStatus::Ok);
    // (1/2)(1/(1−|z_1|²) − 1) with z = (1/2, 0)
    assert!((k[0] - 1.0 / 6.0).abs() < 1e-12 && k[1].abs() < 1e-12);

    let status = unsafe {
        qh_quotient_kernel(g, 1, QhModel::Polydisc, z.as_ptr(), z.as_ptr(), k.as_mut_ptr())
    };
    assert_eq!(status, QhStatus::Ok);
    assert!((k[0] - 2.0 / 6.0 / 0.25).abs() < 1e-12);

    let outside = [1.5, 0.0, 0.0, 0.0];
    let status = unsafe {
        qh_subspace_kernel(g, 1, QhModel::Ball, outside.as_ptr(), z.as_ptr(), k.as_mut_ptr())
    };
    assert_eq!(status, QhStatus::InvalidArgument);
    unsafe { qh_group_free(g) };
}

#[test]
fn invalid_input() {
    let mut g = ptr::null_mut();
    let bad = CString::new(r#"{"family":"symmetric"}"#).unwrap();
    assert_eq!(
        unsafe { qh_group_from_json(bad.as_ptr(), &mut g) },
        QhStatus::InvalidArgument
    );
    assert!(g.is_null());
    assert_eq!(
        unsafe { qh_group_from_json(ptr::null(), &mut g) },
        QhStatus::NullPointer
    );
    let mut n = 0usize;
    assert_eq!(unsafe { qh_group_order(ptr::null(), &mut n) }, QhStatus::NullPointer);
    unsafe {
        qh_group_free(ptr::null_mut());
        qh_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_symbol() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qhardy.h"))
        .expect("generated header");
    for name in [
        "qh_group_from_json",
        "qh_group_free",
        "qh_group_order",
        "qh_group_dimension",
        "qh_group_character_count",
        "qh_group_describe_json",
        "qh_generating_polynomial_json",
        "qh_subspace_kernel",
        "qh_quotient_kernel",
        "qh_string_free",
        "qh_last_error",
        "QH_STATUS_OK",
        "QH_MODEL_BALL",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
