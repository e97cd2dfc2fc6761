//! C ABI over `bnalg`.
//!
//! Every fallible function returns a [`BnStatus`] and writes its result
//! through an out pointer. On failure the message is available from
//! [`bn_last_error`] on the same thread. Strings returned through `char **`
//! are owned by the caller and released with [`bn_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bnalg::dag::{is_perfect, toric_criterion};
use bnalg::ideal::{graded_kernel, gss_check};
use bnalg::report::{self, WitnessType};
use bnalg::{Basis, Config, Error, Network};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BnStatus {
    BnOk = 0,
    /// Malformed input: bad JSON, cyclic graph, unknown vertex, bad levels.
    BnInvalid = 1,
    /// A size guard was exceeded.
    BnGuard = 2,
    /// The operation does not apply to this network.
    BnPrecondition = 3,
    BnNullPointer = 4,
    BnUtf8 = 5,
    BnPanic = 6,
}

/// Coordinates of the polynomial ring.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BnBasis {
    BnStandard = 0,
    BnPlus = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BnWitness {
    BnDeg4 = 0,
    BnDetM = 1,
}

/// Opaque handle to a validated network.
pub struct BnNetwork {
    inner: Network,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BnStatus {
    match e {
        Error::GuardExceeded { .. } => BnStatus::BnGuard,
        Error::Precondition(_) | Error::NotQuadratic => BnStatus::BnPrecondition,
        _ => BnStatus::BnInvalid,
    }
}

/// Runs `f`, recording any error or panic.
fn guarded(f: impl FnOnce() -> Result<(), (BnStatus, String)>) -> BnStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BnStatus::BnOk,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            BnStatus::BnPanic
        }
    }
}

fn lib<T>(r: bnalg::Result<T>) -> Result<T, (BnStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (BnStatus, String) {
    (BnStatus::BnNullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or valid for writes.
unsafe fn write<T>(p: *mut T, v: T, what: &str) -> Result<(), (BnStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(v);
    Ok(())
}

/// # Safety
/// `net` must be null or a live handle.
unsafe fn network<'a>(net: *const BnNetwork) -> Result<&'a Network, (BnStatus, String)> {
    net.as_ref().map(|n| &n.inner).ok_or_else(|| null("network"))
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (BnStatus, String)> {
    let c = CString::new(s).map_err(|_| (BnStatus::BnUtf8, "output contains a nul byte".to_string()))?;
    write(out, c.into_raw(), "out")
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

impl From<BnBasis> for Basis {
    fn from(b: BnBasis) -> Self {
        match b {
            BnBasis::BnStandard => Basis::Standard,
            BnBasis::BnPlus => Basis::Plus,
        }
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn bn_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn bn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and validates a graph description.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_network_from_json(json: *const c_char, out: *mut *mut BnNetwork) -> BnStatus {
    guarded(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (BnStatus::BnUtf8, e.to_string()))?;
        let inner = lib(Network::from_json(text))?;
        write(out, Box::into_raw(Box::new(BnNetwork { inner })), "out")
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `net` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bn_network_free(net: *mut BnNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Sets the enumeration and monomial-count guards.
///
/// # Safety
/// `net` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn bn_network_set_limits(net: *mut BnNetwork, max_n: usize, max_monomials: usize) -> BnStatus {
    guarded(|| {
        let net = net.as_mut().ok_or_else(|| null("network"))?;
        net.inner.set_config(Config {
            max_n,
            max_cycle_n: Config::default().max_cycle_n.max(max_n),
            max_monomials,
        });
        Ok(())
    })
}

/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_network_vertex_count(net: *const BnNetwork, out: *mut usize) -> BnStatus {
    guarded(|| write(out, network(net)?.dag().n(), "out"))
}

/// Whether the subgraph on the non-sinks is perfect.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_toric_criterion(net: *const BnNetwork, out: *mut bool) -> BnStatus {
    guarded(|| write(out, toric_criterion(network(net)?.dag()), "out"))
}

/// Whether the whole graph is perfect.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_is_perfect(net: *const BnNetwork, out: *mut bool) -> BnStatus {
    guarded(|| {
        let dag = network(net)?.dag();
        write(out, lib(is_perfect(dag, dag.vertices()))?, "out")
    })
}

/// Dimension of the degree-`degree` component of the kernel.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_kernel_dim(net: *const BnNetwork, degree: usize, basis: BnBasis, out: *mut usize) -> BnStatus {
    guarded(|| {
        let k = lib(graded_kernel(network(net)?, degree, basis.into()))?;
        write(out, k.dim(), "out")
    })
}

/// Compares the degree-`degree` kernel with the CI ideal component.
///
/// # Safety
/// `net` must be a live handle; out pointers valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_gss_check(
    net: *const BnNetwork,
    degree: usize,
    basis: BnBasis,
    kernel_dim: *mut usize,
    ci_dim: *mut usize,
    equal: *mut bool,
) -> BnStatus {
    guarded(|| {
        let r = lib(gss_check(network(net)?, degree, basis.into()))?;
        write(kernel_dim, r.kernel_dim, "kernel_dim")?;
        write(ci_dim, r.ci_dim, "ci_dim")?;
        write(equal, r.equal, "equal")
    })
}

/// Full analysis report for degrees `2..=max_degree`, as JSON.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_analyze_json(net: *const BnNetwork, max_degree: usize, out: *mut *mut c_char) -> BnStatus {
    guarded(|| {
        let r = lib(report::analyze(network(net)?, max_degree.max(2), None))?;
        write_string(out, to_json(&r))
    })
}

/// Plus-basis parametrization as JSON.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_param_json(net: *const BnNetwork, out: *mut *mut c_char) -> BnStatus {
    guarded(|| write_string(out, to_json(&lib(report::param_report(network(net)?))?)))
}

/// Minors of the reduced global Markov statements as JSON.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_ci_gens_json(net: *const BnNetwork, out: *mut *mut c_char) -> BnStatus {
    guarded(|| write_string(out, to_json(&lib(report::ci_gens_report(network(net)?))?)))
}

/// Basis of a graded kernel component as JSON.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_kernel_json(
    net: *const BnNetwork,
    degree: usize,
    basis: BnBasis,
    out: *mut *mut c_char,
) -> BnStatus {
    guarded(|| {
        let v = lib(report::kernel_report(network(net)?, degree, basis.into(), true))?;
        write_string(out, to_json(&v))
    })
}

/// Witness polynomial and its certificate as JSON.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_witness_json(net: *const BnNetwork, kind: BnWitness, out: *mut *mut c_char) -> BnStatus {
    guarded(|| {
        let t = match kind {
            BnWitness::BnDeg4 => WitnessType::Deg4,
            BnWitness::BnDetM => WitnessType::DetM,
        };
        write_string(out, to_json(&lib(report::witness_report(network(net)?, t))?))
    })
}

/// Quadratic-form ranks and pencil certificates as JSON.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_rank_json(net: *const BnNetwork, out: *mut *mut c_char) -> BnStatus {
    guarded(|| {
        let (forms, pairs) = lib(report::rank_report(network(net)?))?;
        write_string(out, to_json(&serde_json::json!({"forms": forms, "pairs": pairs})))
    })
}

/// Staged tree as JSON.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_tree_json(net: *const BnNetwork, out: *mut *mut c_char) -> BnStatus {
    guarded(|| write_string(out, to_json(&network(net)?.tree().to_json())))
}

/// Staged tree in Graphviz DOT.
///
/// # Safety
/// `net` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bn_tree_dot(net: *const BnNetwork, out: *mut *mut c_char) -> BnStatus {
    guarded(|| write_string(out, network(net)?.tree().to_dot()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
