use std::ffi::{CStr, CString};
use std::ptr;

use extconvex_ffi::*;

fn fin(v: f64) -> ExcExtReal {
    ExcExtReal { kind: ExcKind::Finite, value: v }
}

const POS: ExcExtReal = ExcExtReal { kind: ExcKind::PosInf, value: f64::INFINITY };
const NEG: ExcExtReal = ExcExtReal { kind: ExcKind::NegInf, value: f64::NEG_INFINITY };

fn last_error() -> String {
    unsafe { CStr::from_ptr(exc_last_error()).to_string_lossy().into_owned() }
}

fn function(json: &str) -> *mut ExcFunction {
    let s = CString::new(json).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { exc_function_from_json(s.as_ptr(), &mut f) }, ExcStatus::Ok);
    f
}

#[test]
fn arithmetic_tables() {
    let mut out = fin(0.0);
    unsafe {
        assert_eq!(exc_isum(POS, NEG, &mut out), ExcStatus::Ok);
        assert_eq!(out.kind, ExcKind::PosInf);
        exc_ssum(POS, NEG, &mut out);
        assert_eq!(out.kind, ExcKind::NegInf);
        exc_idif(POS, POS, &mut out);
        assert_eq!(out.kind, ExcKind::NegInf);
        exc_sdif(POS, POS, &mut out);
        assert_eq!(out.kind, ExcKind::PosInf);
        exc_idif(fin(5.0), fin(3.0), &mut out);
        assert_eq!(out, fin(2.0));
    }
}

#[test]
fn bad_arguments_set_the_error() {
    let mut out = fin(0.0);
    let nan = fin(f64::NAN);
    assert_eq!(unsafe { exc_isum(nan, fin(1.0), &mut out) }, ExcStatus::InvalidArgument);
    assert!(last_error().contains("NaN"));
    assert_eq!(unsafe { exc_isum(fin(1.0), fin(1.0), ptr::null_mut()) }, ExcStatus::NullPointer);

    let bad = CString::new(r#"{"kind":"pl","breaks":[{"x":0,"v":"oops"}],"slopeL":0,"slopeR":0}"#).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { exc_function_from_json(bad.as_ptr(), &mut f) }, ExcStatus::Parse);
    assert!(f.is_null());
    assert!(last_error().contains("breaks[0].v"), "{}", last_error());

    let mut v = fin(0.0);
    assert_eq!(unsafe { exc_function_eval(ptr::null(), 0.0, &mut v) }, ExcStatus::NullPointer);
}

#[test]
fn function_round_trip() {
    let f = function(r#"{"kind":"pl","breaks":[{"x":0,"v":0}],"slopeL":-1,"slopeR":1}"#);
    unsafe {
        let mut v = fin(0.0);
        exc_function_eval(f, -2.0, &mut v);
        assert_eq!(v, fin(2.0));
        exc_conjugate(f, ExcDualKind::Proper, 0.5, 0.0, &mut v);
        assert_eq!(v, fin(0.0));
        exc_conjugate(f, ExcDualKind::Proper, 2.0, 0.0, &mut v);
        assert_eq!(v.kind, ExcKind::PosInf);
        exc_dirderiv(f, 0.0, -3.0, &mut v);
        assert_eq!(v, fin(3.0));

        let mut b = ptr::null_mut();
        assert_eq!(exc_biconjugate(f, &mut b), ExcStatus::Ok);
        let (mut s1, mut s2) = (ptr::null_mut(), ptr::null_mut());
        exc_function_to_json(f, &mut s1);
        exc_function_to_json(b, &mut s2);
        assert_eq!(CStr::from_ptr(s1), CStr::from_ptr(s2));
        exc_string_free(s1);
        exc_string_free(s2);

        let mut c = ptr::null_mut();
        assert_eq!(exc_infconv(f, b, &mut c), ExcStatus::Ok);
        exc_function_eval(c, 4.0, &mut v);
        assert_eq!(v, fin(4.0));
        exc_function_free(c);
        exc_function_free(b);
        exc_function_free(f);
        exc_function_free(ptr::null_mut());
    }
}

#[test]
fn non_convex_dirderiv_is_a_domain_error() {
    let f = function(r#"{"kind":"pl","breaks":[{"x":0,"v":0}],"slopeL":1,"slopeR":-1}"#);
    let mut v = fin(0.0);
    assert_eq!(unsafe { exc_dirderiv(f, 0.0, 1.0, &mut v) }, ExcStatus::Domain);
    unsafe { exc_function_free(f) };
}

#[test]
fn sets_and_set_valued() {
    let orthant = r#"{"gen":[[1,0],[0,1]]}"#;
    let a = CString::new(format!(r#"{{"poly":{{"v":[[0,0]],"rays":[[1,0],[0,1]]}},"cone":{orthant}}}"#)).unwrap();
    let b = CString::new(format!(r#"{{"poly":{{"v":[[1,1],[2,0]],"rays":[[1,0],[0,1]]}},"cone":{orthant}}}"#)).unwrap();
    let g =
        CString::new(format!(r#"{{"h":[{{"n":[1,-1,0],"c":0}},{{"n":[-1,0,-1],"c":0}}],"cone":{orthant}}}"#)).unwrap();
    unsafe {
        let (mut pa, mut pb, mut d) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(exc_set_from_json(a.as_ptr(), &mut pa), ExcStatus::Ok);
        assert_eq!(exc_set_from_json(b.as_ptr(), &mut pb), ExcStatus::Ok);
        assert_eq!(exc_set_diff(pa, pb, &mut d), ExcStatus::Ok);
        let mut v = fin(0.0);
        // A - B = (-1, 0) + R^2_+
        exc_set_support(d, -1.0, -1.0, &mut v);
        assert!((v.value + 1.0).abs() < 1e-12, "{v:?}");
        exc_set_support(d, 1.0, 0.0, &mut v);
        assert_eq!(v.kind, ExcKind::NegInf);

        let mut sv = ptr::null_mut();
        assert_eq!(exc_setvalued_from_json(g.as_ptr(), &mut sv), ExcStatus::Ok);
        let mut phi = ptr::null_mut();
        assert_eq!(exc_scalarize(sv, -1.0, -1.0, &mut phi), ExcStatus::Ok);
        exc_function_eval(phi, 3.0, &mut v);
        assert_eq!(v, fin(0.0));

        let mut s = ptr::null_mut();
        assert_eq!(exc_sv_conjugate(sv, ExcDualKind::Proper, 0.5, 0.0, 1.0, 0.0, &mut s), ExcStatus::Domain);
        assert!(last_error().contains("dual cone"), "{}", last_error());
        assert_eq!(exc_sv_conjugate(sv, ExcDualKind::Proper, 0.5, 0.0, -1.0, -1.0, &mut s), ExcStatus::Ok);
        let mut empty = false;
        exc_set_is_empty(s, &mut empty);
        assert!(empty);

        let (mut bic, mut sl) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(exc_sv_biconjugate(sv, 1.0, &mut bic), ExcStatus::Ok);
        exc_setvalued_slice(sv, 1.0, &mut sl);
        let (mut j1, mut j2) = (ptr::null_mut(), ptr::null_mut());
        exc_set_to_json(bic, &mut j1);
        exc_set_to_json(sl, &mut j2);
        let (u, w): (serde_json::Value, serde_json::Value) = (
            serde_json::from_str(CStr::from_ptr(j1).to_str().unwrap()).unwrap(),
            serde_json::from_str(CStr::from_ptr(j2).to_str().unwrap()).unwrap(),
        );
        assert_eq!(u["cone"], w["cone"]);
        exc_string_free(j1);
        exc_string_free(j2);

        for p in [pa, pb, d, s, bic, sl] {
            exc_set_free(p);
        }
        exc_function_free(phi);
        exc_setvalued_free(sv);
    }
}
