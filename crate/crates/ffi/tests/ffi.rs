use std::ffi::{c_char, CStr, CString};
use std::ptr;

use vecchoose_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { vc_string_free(s) };
    out
}

fn last_error() -> String {
    take(vc_last_error())
}

fn parse(graph: &str, assignment: &str) -> Result<*mut VcAssignment, (VcStatus, String)> {
    let g = CString::new(graph).unwrap();
    let a = CString::new(assignment).unwrap();
    let mut h = ptr::null_mut();
    let st = unsafe { vc_assignment_parse(g.as_ptr(), a.as_ptr(), &mut h) };
    if st == VcStatus::Ok {
        Ok(h)
    } else {
        Err((st, last_error()))
    }
}

const EDGE: &str = "graph 2 1\ne 0 1\n";
const EDGE_PLANES: &str = "field 3\nambient 2\nv 0 dim 1\n1 0\nv 1 dim 1\n0 1\n";

#[test]
fn cycle_has_no_choice() {
    let field = CString::new("3").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { vc_construct_cycle(3, field.as_ptr(), &mut h) }, VcStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { vc_assignment_vertex_count(h, &mut n) }, VcStatus::Ok);
    assert_eq!(n, 3);
    let mut verdict = VcVerdict::Inconclusive;
    let mut cert = ptr::null_mut();
    assert_eq!(
        unsafe { vc_find_choice(h, 0, 0, &mut verdict, &mut cert) },
        VcStatus::Ok
    );
    assert_eq!(verdict, VcVerdict::NoChoice);
    assert!(take(cert).starts_with("verdict no_choice"));
    unsafe { vc_assignment_free(h) };
}

#[test]
fn text_round_trip_and_verify() {
    let h = parse(EDGE, EDGE_PLANES).unwrap();
    let (mut g, mut a) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { vc_assignment_to_text(h, &mut g, &mut a) }, VcStatus::Ok);
    let (g, a) = (take(g), take(a));
    assert_eq!(g, EDGE);
    let h2 = parse(&g, &a).unwrap();

    let mut verdict = VcVerdict::Inconclusive;
    assert_eq!(
        unsafe { vc_find_choice(h2, 1000, 10, &mut verdict, ptr::null_mut()) },
        VcStatus::Ok
    );
    assert_eq!(verdict, VcVerdict::Choosable);

    let mut valid = false;
    let good = CString::new("field 3\nambient 2\nv 0\n2 0\nv 1\n0 1\n").unwrap();
    assert_eq!(unsafe { vc_verify_choice(h2, good.as_ptr(), &mut valid) }, VcStatus::Ok);
    assert!(valid);
    let bad = CString::new("field 3\nambient 2\nv 0\n1 0\nv 1\n1 0\n").unwrap();
    assert_eq!(unsafe { vc_verify_choice(h2, bad.as_ptr(), &mut valid) }, VcStatus::Ok);
    assert!(!valid);
    assert!(!last_error().is_empty());
    unsafe {
        vc_assignment_free(h);
        vc_assignment_free(h2);
    }
}

#[test]
fn error_codes() {
    let (st, msg) = parse("graph 2 1\ne 0 7\n", EDGE_PLANES).unwrap_err();
    assert_eq!(st, VcStatus::Parse);
    assert!(msg.contains("line"), "{msg}");
    let (st, _) = parse(EDGE, "field 4\nambient 2\n").unwrap_err();
    assert_eq!(st, VcStatus::Parse);

    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { vc_assignment_parse(ptr::null(), ptr::null(), &mut h) },
        VcStatus::NullPointer
    );
    let mut n = 0usize;
    assert_eq!(
        unsafe { vc_assignment_vertex_count(ptr::null(), &mut n) },
        VcStatus::NullPointer
    );

    let bytes = [0xffu8, 0];
    let field = bytes.as_ptr() as *const c_char;
    assert_eq!(unsafe { vc_construct_cycle(3, field, &mut h) }, VcStatus::InvalidUtf8);
    let q = CString::new("Q").unwrap();
    assert_eq!(
        unsafe { vc_construct_cycle(2, q.as_ptr(), &mut h) },
        VcStatus::InvalidArgument
    );

    unsafe {
        vc_assignment_free(ptr::null_mut());
        vc_string_free(ptr::null_mut());
    }
}

#[test]
fn budget_reported_as_inconclusive() {
    let field = CString::new("5").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { vc_construct_cycle(7, field.as_ptr(), &mut h) }, VcStatus::Ok);
    let mut verdict = VcVerdict::Choosable;
    assert_eq!(
        unsafe { vc_find_choice(h, 1, 0, &mut verdict, ptr::null_mut()) },
        VcStatus::Ok
    );
    assert_eq!(verdict, VcVerdict::Inconclusive);
    unsafe { vc_assignment_free(h) };
}

#[test]
fn reduction_graph() {
    let cnf = CString::new("p cnf 3 1\n1 -2 3 0\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { vc_reduce_dimacs(cnf.as_ptr(), &mut g) }, VcStatus::Ok);
    assert!(take(g).starts_with("graph 43 "));
    let bad = CString::new("p cnf 2 1\n1 -1 2 0\n").unwrap();
    assert_eq!(unsafe { vc_reduce_dimacs(bad.as_ptr(), &mut g) }, VcStatus::Parse);
}
