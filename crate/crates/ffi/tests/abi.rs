use std::ffi::{c_char, CStr, CString};
use std::ptr;

use mimzv_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    mimzv_string_free(p);
    s
}

unsafe fn parse(s: &str) -> *mut MimzvLinComb {
    let mut out = ptr::null_mut();
    assert_eq!(mimzv_lincomb_parse(cstr(s).as_ptr(), &mut out), MimzvStatus::Ok);
    out
}

unsafe fn text(x: *const MimzvLinComb) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(mimzv_lincomb_to_string(x, &mut s), MimzvStatus::Ok);
    take_string(s)
}

#[test]
fn interpolated_product_round_trip() {
    unsafe {
        let (a, b) = (parse("z2"), parse("z3"));
        let mut p = ptr::null_mut();
        assert_eq!(mimzv_product(a, b, MimzvProduct::Interpolated, &mut p), MimzvStatus::Ok);
        assert_eq!(text(p), "z2 z3 + z3 z2 + z5 - 2*t z5");
        let mut len = 0;
        assert_eq!(mimzv_lincomb_len(p, &mut len), MimzvStatus::Ok);
        assert_eq!(len, 4);
        for x in [a, b, p] {
            mimzv_lincomb_free(x);
        }
    }
}

#[test]
fn s_operator_and_evaluation() {
    unsafe {
        let x = parse("z2 z1");
        let mut s = ptr::null_mut();
        assert_eq!(mimzv_s_operator(x, &mut s), MimzvStatus::Ok);
        assert_eq!(text(s), "z2 z1 + t z3");

        let mut t = ptr::null_mut();
        assert_eq!(mimzv_tassignment_parse(cstr("list:1/2,1/3").as_ptr(), &mut t), MimzvStatus::Ok);
        let mut v = ptr::null_mut();
        assert_eq!(mimzv_eval_lincomb(s, 2, t, &mut v), MimzvStatus::Ok);
        assert_eq!(take_string(v), "19/24");
        assert_eq!(mimzv_eval_index_exact(cstr("2,1").as_ptr(), 2, t, &mut v), MimzvStatus::Ok);
        assert_eq!(take_string(v), "19/24");

        mimzv_lincomb_free(x);
        mimzv_lincomb_free(s);
        mimzv_tassignment_free(t);
    }
}

#[test]
fn float_evaluation() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(mimzv_tassignment_parse(cstr("const:0").as_ptr(), &mut t), MimzvStatus::Ok);
        let (mut v, mut bound, mut n) = (0.0, 0.0, 0);
        let st = mimzv_eval_index_float(cstr("2").as_ptr(), t, 1e-6, &mut v, &mut bound, &mut n);
        assert_eq!(st, MimzvStatus::Ok);
        assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-6);
        assert!(bound <= 1e-6 && n > 0);

        let st = mimzv_eval_index_float(cstr("1,1").as_ptr(), t, 1e-3, &mut v, ptr::null_mut(), ptr::null_mut());
        assert_eq!(st, MimzvStatus::Domain);
        assert!(!mimzv_last_error().is_null());
        mimzv_tassignment_free(t);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(mimzv_lincomb_parse(cstr("z0").as_ptr(), &mut out), MimzvStatus::Domain);
        assert_eq!(mimzv_lincomb_parse(cstr("q7").as_ptr(), &mut out), MimzvStatus::Parse);
        let msg = CStr::from_ptr(mimzv_last_error()).to_str().unwrap();
        assert!(msg.contains("q7"), "{msg}");
        assert_eq!(mimzv_lincomb_parse(ptr::null(), &mut out), MimzvStatus::NullPointer);
        assert_eq!(mimzv_lincomb_parse(cstr("z1").as_ptr(), ptr::null_mut()), MimzvStatus::NullPointer);

        let (a, b) = (parse("t z2"), parse("z1"));
        let mut p = ptr::null_mut();
        assert_eq!(mimzv_product(a, b, MimzvProduct::Interpolated, &mut p), MimzvStatus::Domain);
        assert_eq!(mimzv_product(a, b, MimzvProduct::Stuffle, &mut p), MimzvStatus::Ok);
        assert_eq!(text(p), "z1 t z2 + t z2 z1 + t z3");

        let mut sum = ptr::null_mut();
        assert_eq!(mimzv_lincomb_add_scaled(p, p, cstr("-1").as_ptr(), &mut sum), MimzvStatus::Ok);
        assert_eq!(text(sum), "0");
        assert_eq!(mimzv_lincomb_add_scaled(p, p, cstr("1/0").as_ptr(), &mut sum), MimzvStatus::Parse);

        // a successful call clears the previous message
        assert!(!mimzv_last_error().is_null());
        assert_eq!(mimzv_lincomb_len(p, &mut 0usize), MimzvStatus::Ok);
        assert!(mimzv_last_error().is_null());

        for x in [a, b, p, sum] {
            mimzv_lincomb_free(x);
        }
        mimzv_lincomb_free(ptr::null_mut());
        mimzv_string_free(ptr::null_mut());
    }
}

#[test]
fn assignment_with_several_markers() {
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(mimzv_tassignment_parse(cstr("const:1").as_ptr(), &mut t), MimzvStatus::Ok);
        assert_eq!(mimzv_tassignment_add(t, cstr("t1=const:1/2").as_ptr()), MimzvStatus::Ok);
        assert_eq!(mimzv_tassignment_add(t, cstr("t1=bogus").as_ptr()), MimzvStatus::Parse);
        let x = parse("t1 z2");
        let mut v = ptr::null_mut();
        assert_eq!(mimzv_eval_lincomb(x, 2, t, &mut v), MimzvStatus::Ok);
        // (1/2)(1 + 1/4)
        assert_eq!(take_string(v), "5/8");
        mimzv_lincomb_free(x);
        mimzv_tassignment_free(t);
    }
}
