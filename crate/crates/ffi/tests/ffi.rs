//! The C ABI driven from Rust through raw pointers.

use std::ffi::{CStr, CString};
use std::ptr;

use bnalg_ffi::*;

const COLLIDER_CHAIN: &str = r#"{"variables":[{"id":1,"levels":2},{"id":2,"levels":2},{"id":3,"levels":2},{"id":4,"levels":2}],
"edges":[[1,3],[2,3],[3,4],[2,4]]}"#;
const DIAMOND: &str = r#"{"variables":[{"id":1,"levels":2},{"id":2,"levels":2},{"id":3,"levels":2},{"id":4,"levels":2}],
"edges":[[1,2],[1,3],[2,4],[3,4]]}"#;

fn open(json: &str) -> *mut BnNetwork {
    let c = CString::new(json).unwrap();
    let mut net = ptr::null_mut();
    assert_eq!(unsafe { bn_network_from_json(c.as_ptr(), &mut net) }, BnStatus::BnOk);
    assert!(!net.is_null());
    net
}

fn take(s: *mut std::ffi::c_char) -> String {
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { bn_string_free(s) };
    text
}

fn last_error() -> String {
    let p = bn_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn structure_queries() {
    let net = open(COLLIDER_CHAIN);
    let (mut n, mut toric, mut perfect) = (0usize, true, true);
    unsafe {
        assert_eq!(bn_network_vertex_count(net, &mut n), BnStatus::BnOk);
        assert_eq!(bn_toric_criterion(net, &mut toric), BnStatus::BnOk);
        assert_eq!(bn_is_perfect(net, &mut perfect), BnStatus::BnOk);
        bn_network_free(net);
    }
    assert_eq!(n, 4);
    assert!(!toric);
    assert!(!perfect);
}

#[test]
fn kernel_and_gss() {
    let net = open(COLLIDER_CHAIN);
    let (mut dim, mut k, mut ci, mut eq) = (0usize, 0usize, 0usize, false);
    unsafe {
        assert_eq!(bn_kernel_dim(net, 2, BnBasis::BnStandard, &mut dim), BnStatus::BnOk);
        assert_eq!(bn_gss_check(net, 2, BnBasis::BnPlus, &mut k, &mut ci, &mut eq), BnStatus::BnOk);
        bn_network_free(net);
    }
    assert_eq!(dim, 5);
    assert_eq!((k, ci, eq), (5, 5, true));
}

#[test]
fn json_reports() {
    let net = open(DIAMOND);
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(bn_analyze_json(net, 2, &mut s), BnStatus::BnOk);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["toric_criterion"], true);

        assert_eq!(bn_param_json(net, &mut s), BnStatus::BnOk);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["basis"].as_array().unwrap().len(), 16);

        assert_eq!(bn_witness_json(net, BnWitness::BnDeg4, &mut s), BnStatus::BnOk);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["certificate"]["outside_quadrics"], true);

        assert_eq!(bn_tree_dot(net, &mut s), BnStatus::BnOk);
        assert!(take(s).starts_with("digraph"));

        assert_eq!(bn_tree_json(net, &mut s), BnStatus::BnOk);
        assert!(serde_json::from_str::<serde_json::Value>(&take(s)).is_ok());
        bn_network_free(net);
    }
}

#[test]
fn ci_gens_kernel_and_rank_json() {
    let net = open(COLLIDER_CHAIN);
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(bn_ci_gens_json(net, &mut s), BnStatus::BnOk);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["generator_count"], 5);

        assert_eq!(bn_kernel_json(net, 2, BnBasis::BnStandard, &mut s), BnStatus::BnOk);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["elements"].as_array().unwrap().len(), 5);

        assert_eq!(bn_rank_json(net, &mut s), BnStatus::BnOk);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["pairs"].as_array().unwrap().len(), 10);
        bn_network_free(net);
    }
}

#[test]
fn error_codes() {
    let mut net = ptr::null_mut();
    let cyclic = CString::new(r#"{"variables":[{"id":1,"levels":2},{"id":2,"levels":2}],"edges":[[1,2],[2,1]]}"#).unwrap();
    assert_eq!(unsafe { bn_network_from_json(cyclic.as_ptr(), &mut net) }, BnStatus::BnInvalid);
    assert!(last_error().contains("cycle"));
    assert!(net.is_null());

    assert_eq!(unsafe { bn_network_from_json(ptr::null(), &mut net) }, BnStatus::BnNullPointer);

    let bad = [0xffu8, 0];
    assert_eq!(unsafe { bn_network_from_json(bad.as_ptr().cast(), &mut net) }, BnStatus::BnUtf8);

    let net = open(COLLIDER_CHAIN);
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(bn_param_json(net, &mut s), BnStatus::BnPrecondition);
        assert!(s.is_null());
        assert_eq!(bn_network_set_limits(net, 10, 3), BnStatus::BnOk);
        let mut dim = 0;
        assert_eq!(bn_kernel_dim(net, 2, BnBasis::BnStandard, &mut dim), BnStatus::BnGuard);
        assert!(last_error().contains("exceeds limit"));
        assert_eq!(bn_kernel_dim(net, 2, BnBasis::BnStandard, ptr::null_mut()), BnStatus::BnGuard);
        assert_eq!(bn_network_vertex_count(net, ptr::null_mut()), BnStatus::BnNullPointer);
        assert_eq!(bn_network_vertex_count(ptr::null(), &mut dim), BnStatus::BnNullPointer);
        bn_network_free(net);
        bn_network_free(ptr::null_mut());
        bn_string_free(ptr::null_mut());
    }
}

#[test]
fn success_clears_error() {
    let mut net = ptr::null_mut();
    assert_eq!(unsafe { bn_network_from_json(ptr::null(), &mut net) }, BnStatus::BnNullPointer);
    let net = open(COLLIDER_CHAIN);
    assert!(bn_last_error().is_null());
    unsafe { bn_network_free(net) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(bn_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/bnalg.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in ["bn_network_from_json", "bn_network_free", "bn_string_free", "bn_last_error", "typedef struct BnNetwork BnNetwork"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = std::process::Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).output() else {
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
