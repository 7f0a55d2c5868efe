//! C ABI over `schroeder-lab`.
//!
//! Values cross the boundary as opaque handles (`SlInteger`, `SlReport`) that
//! the caller frees with the matching `*_free` function. Every fallible call
//! returns an [`SlStatus`]; on failure a message is available from
//! [`sl_last_error`] on the same thread. Strings returned by the library are
//! owned by the caller and must be released with [`sl_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use schroeder_lab::congruences::{self, CheckKind, CheckResult, Engine, IncRange, ScanReport, ScanSpec};
use schroeder_lab::{fastmod, sequences, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Precondition = 4,
    Unsupported = 5,
    Resource = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlEngine {
    Exact = 0,
    Fastmod = 1,
}

/// Inclusive range; ignored when `present` is false.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct SlRange {
    pub present: bool,
    pub lo: u64,
    pub hi: u64,
}

/// Scan parameters. `primes` may be null when `primes_len` is 0.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SlScanParams {
    pub n: SlRange,
    pub alpha: SlRange,
    pub k: SlRange,
    pub primes: *const u64,
    pub primes_len: usize,
    pub engine: SlEngine,
    pub jobs: u32,
}

/// Opaque exact integer.
pub struct SlInteger(BigInt);

/// Opaque list of check results with summary counts.
pub struct SlReport(ScanReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SlStatus {
    match e {
        Error::Domain(_) | Error::DivisionByZero | Error::NegativeValuation(_) => SlStatus::Domain,
        Error::Precondition(_) => SlStatus::Precondition,
        Error::Resource(_) => SlStatus::Resource,
        Error::UnsupportedEngine { .. } => SlStatus::Unsupported,
        Error::Unknown(_) => SlStatus::InvalidArgument,
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (SlStatus, String)>) -> SlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SlStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (SlStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (SlStatus, String) {
    (SlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn sl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn integer_call(
    out: *mut *mut SlInteger,
    f: impl FnOnce() -> Result<BigInt, Error>,
) -> SlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let v = f().map_err(lib_err)?;
        unsafe { write_out(out, SlInteger(v)) };
        Ok(())
    })
}

/// Exact Schröder number `S_n`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sl_schroeder(n: u64, out: *mut *mut SlInteger) -> SlStatus {
    integer_call(out, || Ok(sequences::schroeder(n)))
}

/// Little Schröder number `s_n = S_n / 2` (`n >= 1`).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sl_little_schroeder(n: u64, out: *mut *mut SlInteger) -> SlStatus {
    integer_call(out, || sequences::little_schroeder(n))
}

/// Catalan number `C_k`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sl_catalan(k: u64, out: *mut *mut SlInteger) -> SlStatus {
    integer_call(out, || Ok(sequences::catalan(k)))
}

/// Narayana number `N(n, k)`, zero outside `1 <= k <= n`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sl_narayana(n: u64, k: u64, out: *mut *mut SlInteger) -> SlStatus {
    integer_call(out, || Ok(sequences::narayana(n, k)))
}

/// Euler number `E_n` of `2 / (e^x + e^-x)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sl_euler(n: u64, out: *mut *mut SlInteger) -> SlStatus {
    integer_call(out, || {
        if n > 5_000 {
            return Err(Error::Resource(format!("E_{n} is beyond the supported 5000")));
        }
        Ok(sequences::euler_numbers(n).pop().expect("n+1 entries"))
    })
}

/// Decimal representation; caller frees with [`sl_string_free`]. Null on a null handle.
///
/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sl_integer_to_string(h: *const SlInteger) -> *mut c_char {
    match h.as_ref() {
        Some(h) => into_c_string(h.0.to_string()),
        None => {
            set_error("integer handle is null");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `h` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sl_integer_free(h: *mut SlInteger) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// `S_n mod 2^m` for `1 <= m <= 64` on the word kernel.
///
/// # Safety
/// `out` must be a valid pointer to a writable `u64`.
#[no_mangle]
pub unsafe extern "C" fn sl_schroeder_mod_2m(n: u64, m: u32, out: *mut u64) -> SlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let v = fastmod::schroeder_mod_2m(n, m).map_err(lib_err)?;
        *out = v;
        Ok(())
    })
}

unsafe fn check_name(name: *const c_char) -> Result<CheckKind, (SlStatus, String)> {
    if name.is_null() {
        return Err(null_err("check name"));
    }
    let s = CStr::from_ptr(name)
        .to_str()
        .map_err(|_| (SlStatus::InvalidArgument, "check name is not UTF-8".to_string()))?;
    s.parse::<CheckKind>().map_err(lib_err)
}

fn single(check: CheckKind, n: u64, alpha: u64, k: u64, p: u64) -> Result<Vec<CheckResult>, Error> {
    Ok(match check {
        CheckKind::Theorem1 => vec![congruences::verify_theorem1(n, alpha)?],
        CheckKind::Theorem2 => vec![congruences::verify_theorem2(n, alpha)?],
        CheckKind::Little => vec![congruences::verify_little_schroeder(n, alpha)?],
        CheckKind::SternEuler => vec![congruences::verify_stern_euler(n, alpha)?],
        CheckKind::KummerEuler => vec![congruences::verify_kummer_euler(n, p)?],
        CheckKind::TVanishing => vec![congruences::verify_t_vanishing(n, k)?],
        CheckKind::TShift => vec![congruences::verify_t_shift(n, k, alpha)?],
        CheckKind::BinomialShift => vec![congruences::verify_binomial_shift(n, k, alpha)?],
        CheckKind::SmallK => congruences::verify_t_smallk_expansions(n, alpha)?,
        CheckKind::C2Alpha => congruences::verify_c2alpha_vanishing(k, alpha)?,
        CheckKind::EquivalenceIff => congruences::verify_equivalence_iff(n, alpha)?.results,
    })
}

/// Run one named check (same names as the CLI). Parameters a check does not
/// use are ignored; for `equivalence-iff`, `n` is the upper index bound and
/// for `c2alpha`, `k` is the lower binomial index.
///
/// # Safety
/// `check` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_verify(
    check: *const c_char,
    n: u64,
    alpha: u64,
    k: u64,
    p: u64,
    out: *mut *mut SlReport,
) -> SlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let kind = check_name(check)?;
        let results = single(kind, n, alpha, k, p).map_err(lib_err)?;
        write_out(out, SlReport(ScanReport::from_results(results)));
        Ok(())
    })
}

fn range_of(r: SlRange) -> Result<Option<IncRange>, Error> {
    if r.present {
        IncRange::new(r.lo, r.hi).map(Some)
    } else {
        Ok(None)
    }
}

/// Scan a named check over parameter ranges.
///
/// # Safety
/// `check` must be a nul-terminated string, `params` must point to a valid
/// `SlScanParams` whose `primes` holds `primes_len` values, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sl_scan(
    check: *const c_char,
    params: *const SlScanParams,
    out: *mut *mut SlReport,
) -> SlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let params = params.as_ref().ok_or_else(|| null_err("params"))?;
        let kind = check_name(check)?;
        let primes = if params.primes_len == 0 {
            Vec::new()
        } else if params.primes.is_null() {
            return Err(null_err("primes"));
        } else {
            std::slice::from_raw_parts(params.primes, params.primes_len).to_vec()
        };
        let spec = ScanSpec {
            check: kind,
            n: range_of(params.n).map_err(lib_err)?,
            alpha: range_of(params.alpha).map_err(lib_err)?,
            k: range_of(params.k).map_err(lib_err)?,
            primes,
            engine: match params.engine {
                SlEngine::Exact => Engine::Exact,
                SlEngine::Fastmod => Engine::Fastmod,
            },
            jobs: params.jobs.max(1) as usize,
        };
        let report = congruences::scan(&spec).map_err(lib_err)?;
        write_out(out, SlReport(report));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn sl_report_total(h: *const SlReport) -> usize {
    h.as_ref().map_or(0, |r| r.0.total)
}

/// # Safety
/// `h` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn sl_report_passed(h: *const SlReport) -> usize {
    h.as_ref().map_or(0, |r| r.0.passed)
}

/// # Safety
/// `h` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn sl_report_failed(h: *const SlReport) -> usize {
    h.as_ref().map_or(0, |r| r.0.failed)
}

/// 1 if result `i` passed, 0 if it failed, -1 if `i` is out of range or `h` is null.
///
/// # Safety
/// `h` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn sl_report_result_pass(h: *const SlReport, i: usize) -> i32 {
    match h.as_ref().and_then(|r| r.0.results.get(i)) {
        Some(r) => i32::from(r.pass),
        None => -1,
    }
}

/// One JSON object per result, newline separated. Caller frees the string.
///
/// # Safety
/// `h` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn sl_report_to_jsonl(h: *const SlReport) -> *mut c_char {
    match h.as_ref() {
        Some(r) => into_c_string(r.0.to_jsonl()),
        None => ptr::null_mut(),
    }
}

/// CSV with the shared header. Caller frees the string.
///
/// # Safety
/// `h` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn sl_report_to_csv(h: *const SlReport) -> *mut c_char {
    let Some(r) = h.as_ref() else {
        return ptr::null_mut();
    };
    let mut buf = Vec::new();
    match r.0.write_csv(&mut buf) {
        Ok(()) => into_c_string(String::from_utf8(buf).expect("csv is utf8")),
        Err(_) => ptr::null_mut(),
    }
}

/// # Safety
/// `h` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn sl_report_free(h: *mut SlReport) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
