//! C ABI over the `supdense` solvers.
//!
//! Objects are opaque handles written through an `out` pointer by the
//! constructors and released with the matching `*_free`. Every fallible call returns an
//! [`SdStatus`]; on failure, `sd_last_error()` describes the problem. Handles
//! are not synchronized: use one from a single thread at a time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use supdense::{
    check_monotone_supermodular, den_combo_greedy, den_knapsack_greedy, den_m_greedy,
    densest_closure, densest_subset, io, DensityResult, DependencyDigraph, Error,
    KnapsackConstraint, MatroidOracle, SetFunctionOracle, Subset,
};

/// Status codes. Values 2, 3 and 4 mean the same as the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SdStatus {
    Ok = 0,
    /// Invalid instance or internal failure.
    Invalid = 1,
    /// The constraint admits no feasible set.
    Infeasible = 2,
    /// Malformed input file or text.
    Format = 3,
    /// Instance above an exhaustive-search cap.
    Cap = 4,
    /// A required pointer argument was null.
    NullArgument = 5,
    /// A caller-supplied buffer is too small.
    BufferTooSmall = 6,
    /// A value does not fit the output type.
    Overflow = 7,
    /// Rust panic caught at the boundary; a bug.
    Panic = 8,
}

/// Set function: a (weighted) graph's induced edge weight or an explicit table.
pub struct SdOracle(SetFunctionOracle);

pub struct SdMatroid(MatroidOracle);

/// Solver output: the chosen set and its exact density.
pub struct SdResult(DensityResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SdStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InfeasibleInstance(_) => SdStatus::Infeasible,
            Error::Parse { .. } => SdStatus::Format,
            Error::CapExceeded { .. } => SdStatus::Cap,
            Error::Overflow(_) => SdStatus::Overflow,
            _ => SdStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SdStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside supdense".into());
            SdStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(SdStatus::NullArgument, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// A `(ptr, len)` pair as a slice; `ptr` may be null only when `len == 0`.
unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn string<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SdStatus::Format, format!("{what} is not valid UTF-8")))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn id_set(n: usize, ids: *const usize, len: usize) -> Result<Subset, Failure> {
    Ok(Subset::from_ids(
        n,
        slice(ids, len, "ids")?.iter().copied(),
    )?)
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next `sd_*` call on the same thread.
#[no_mangle]
pub extern "C" fn sd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Loads a graph file ("n m" header, then one "u v [w]" line per edge).
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sd_oracle_from_graph_file(
    path: *const c_char,
    out: *mut *mut SdOracle,
) -> SdStatus {
    guard(|| {
        let f = io::read_graph(Path::new(string(path, "path")?))?;
        emit(out, SdOracle(f))
    })
}

/// Builds a graph oracle from `m` edges `(tails[i], heads[i])`. `weights` may
/// be null for unit weights.
///
/// # Safety
/// `tails` and `heads` (and `weights` unless null) must hold `m` elements.
#[no_mangle]
pub unsafe extern "C" fn sd_oracle_from_edges(
    n: usize,
    tails: *const usize,
    heads: *const usize,
    weights: *const u64,
    m: usize,
    out: *mut *mut SdOracle,
) -> SdStatus {
    guard(|| {
        let tails = slice(tails, m, "tails")?;
        let heads = slice(heads, m, "heads")?;
        let f = if weights.is_null() {
            let edges: Vec<_> = tails.iter().copied().zip(heads.iter().copied()).collect();
            SetFunctionOracle::graph(n, &edges)?
        } else {
            let weights = slice(weights, m, "weights")?;
            let edges: Vec<_> = (0..m).map(|i| (tails[i], heads[i], weights[i])).collect();
            SetFunctionOracle::weighted_graph(n, &edges)?
        };
        emit(out, SdOracle(f))
    })
}

/// Loads an explicit value table and checks it is monotone supermodular.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sd_oracle_from_table_file(
    path: *const c_char,
    out: *mut *mut SdOracle,
) -> SdStatus {
    guard(|| {
        let path = Path::new(string(path, "path")?);
        let f = io::read_table(path)?;
        let rep = check_monotone_supermodular(&f)?;
        if !rep.is_valid() {
            return Err(Failure(
                SdStatus::Format,
                format!("{}: table is not monotone supermodular", path.display()),
            ));
        }
        emit(out, SdOracle(f))
    })
}

/// Number of ground elements, or 0 for a null handle.
///
/// # Safety
/// `oracle` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sd_oracle_len(oracle: *const SdOracle) -> usize {
    oracle.as_ref().map_or(0, |o| o.0.n())
}

/// # Safety
/// `oracle` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_oracle_free(oracle: *mut SdOracle) {
    if !oracle.is_null() {
        drop(Box::from_raw(oracle));
    }
}

/// Uniform matroid: sets of size at most `r` are independent.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sd_matroid_cardinality(
    n: usize,
    r: usize,
    out: *mut *mut SdMatroid,
) -> SdStatus {
    guard(|| emit(out, SdMatroid(MatroidOracle::cardinality(n, r)?)))
}

/// Partition matroid: element `i` lies in block `block_of[i]`, and block `b`
/// admits at most `limits[b]` elements.
///
/// # Safety
/// `block_of` must hold `n` elements and `limits` `n_blocks`.
#[no_mangle]
pub unsafe extern "C" fn sd_matroid_partition(
    n: usize,
    block_of: *const usize,
    limits: *const usize,
    n_blocks: usize,
    out: *mut *mut SdMatroid,
) -> SdStatus {
    guard(|| {
        let block_of = slice(block_of, n, "block_of")?;
        let limits = slice(limits, n_blocks, "limits")?.to_vec();
        let mut blocks = vec![Vec::new(); n_blocks];
        for (id, &b) in block_of.iter().enumerate() {
            blocks
                .get_mut(b)
                .ok_or_else(|| {
                    Failure(
                        SdStatus::Invalid,
                        format!("element {id} is in block {b} of {n_blocks}"),
                    )
                })?
                .push(id);
        }
        emit(out, SdMatroid(MatroidOracle::partition(n, blocks, limits)?))
    })
}

/// Parses a JSON matroid description over `n` elements.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sd_matroid_from_json(
    json: *const c_char,
    n: usize,
    out: *mut *mut SdMatroid,
) -> SdStatus {
    guard(|| emit(out, SdMatroid(io::parse_matroid(string(json, "json")?, n)?)))
}

/// # Safety
/// `matroid` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_matroid_free(matroid: *mut SdMatroid) {
    if !matroid.is_null() {
        drop(Box::from_raw(matroid));
    }
}

/// Exact densest set containing the `n_required` ids in `required`.
///
/// # Safety
/// Handles must be live; `required` must hold `n_required` ids.
#[no_mangle]
pub unsafe extern "C" fn sd_densest(
    oracle: *const SdOracle,
    required: *const usize,
    n_required: usize,
    out: *mut *mut SdResult,
) -> SdStatus {
    guard(|| {
        let f = &deref(oracle, "oracle")?.0;
        let a = id_set(f.n(), required, n_required)?;
        emit(out, SdResult(densest_subset(f, &a)?))
    })
}

/// Densest set whose complement is independent in `matroid`, within factor 2.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sd_den_m_greedy(
    oracle: *const SdOracle,
    matroid: *const SdMatroid,
    out: *mut *mut SdResult,
) -> SdStatus {
    guard(|| {
        let f = &deref(oracle, "oracle")?.0;
        let m = &deref(matroid, "matroid")?.0;
        emit(out, SdResult(den_m_greedy(f, m)?.result))
    })
}

/// As [`sd_den_m_greedy`], with the set also required to contain `required`.
///
/// # Safety
/// Handles must be live; `required` must hold `n_required` ids.
#[no_mangle]
pub unsafe extern "C" fn sd_den_combo_greedy(
    oracle: *const SdOracle,
    matroid: *const SdMatroid,
    required: *const usize,
    n_required: usize,
    out: *mut *mut SdResult,
) -> SdStatus {
    guard(|| {
        let f = &deref(oracle, "oracle")?.0;
        let m = &deref(matroid, "matroid")?.0;
        let a = id_set(f.n(), required, n_required)?;
        emit(out, SdResult(den_combo_greedy(f, m, &a)?.result))
    })
}

/// Densest set of total weight at least `k`, within factor 3. Returns
/// `Infeasible` when all weights together fall short of `k`.
///
/// # Safety
/// `oracle` must be live; `weights` must hold one weight per element.
#[no_mangle]
pub unsafe extern "C" fn sd_den_knapsack_greedy(
    oracle: *const SdOracle,
    weights: *const u64,
    n_weights: usize,
    k: u64,
    out: *mut *mut SdResult,
) -> SdStatus {
    guard(|| {
        let f = &deref(oracle, "oracle")?.0;
        let c = KnapsackConstraint::new(slice(weights, n_weights, "weights")?.to_vec(), k);
        emit(out, SdResult(den_knapsack_greedy(f, &c)?.result))
    })
}

/// Exact densest set closed under the arcs `tails[i] -> heads[i]` (a member
/// tail forces its head in).
///
/// # Safety
/// `oracle` must be live; `tails` and `heads` must hold `n_arcs` ids.
#[no_mangle]
pub unsafe extern "C" fn sd_densest_closure(
    oracle: *const SdOracle,
    tails: *const usize,
    heads: *const usize,
    n_arcs: usize,
    out: *mut *mut SdResult,
) -> SdStatus {
    guard(|| {
        let f = &deref(oracle, "oracle")?.0;
        let tails = slice(tails, n_arcs, "tails")?;
        let heads = slice(heads, n_arcs, "heads")?;
        let d = DependencyDigraph::new(f.n(), tails.iter().copied().zip(heads.iter().copied()))?;
        emit(out, SdResult(densest_closure(f, &d)?))
    })
}

/// Exact density as a reduced fraction `num / den` with `den > 0`.
///
/// # Safety
/// `result` must be live; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sd_result_density(
    result: *const SdResult,
    num: *mut i64,
    den: *mut i64,
) -> SdStatus {
    guard(|| {
        let d = deref(result, "result")?.0.best_density;
        if num.is_null() || den.is_null() {
            return Err(null("num/den"));
        }
        let overflow = || {
            Failure(
                SdStatus::Overflow,
                format!("density {d} does not fit in i64"),
            )
        };
        let p = i64::try_from(d.numer()).map_err(|_| overflow())?;
        let q = i64::try_from(d.denom()).map_err(|_| overflow())?;
        *num = p;
        *den = q;
        Ok(())
    })
}

/// Number of elements in the chosen set, or 0 for a null handle.
///
/// # Safety
/// `result` must be null or live.
#[no_mangle]
pub unsafe extern "C" fn sd_result_len(result: *const SdResult) -> usize {
    result.as_ref().map_or(0, |r| r.0.best_set.len())
}

/// Copies the chosen ids, ascending, into `buf` (capacity `cap`).
///
/// # Safety
/// `result` must be live; `buf` must have room for `cap` ids.
#[no_mangle]
pub unsafe extern "C" fn sd_result_members(
    result: *const SdResult,
    buf: *mut usize,
    cap: usize,
) -> SdStatus {
    guard(|| {
        let set = &deref(result, "result")?.0.best_set;
        if set.len() > cap {
            return Err(Failure(
                SdStatus::BufferTooSmall,
                format!("{} ids do not fit in a buffer of {cap}", set.len()),
            ));
        }
        if set.is_empty() {
            return Ok(());
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        for (i, id) in set.iter().enumerate() {
            *buf.add(i) = id;
        }
        Ok(())
    })
}

/// # Safety
/// `result` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sd_result_free(result: *mut SdResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}
