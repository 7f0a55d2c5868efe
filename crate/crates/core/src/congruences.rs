//! Verifiers for the Stern-type congruences of Schröder numbers, the
//! classical Euler-number congruences, and every lemma the proof leans on.
//!
//! Every check produces a [`CheckResult`] carrying a full residual. Both sides
//! are stored reduced modulo the check's modulus, which makes a result
//! independent of whether the Schröder values came from exact big integers or
//! from the `mod 2^m` kernel.

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::arith::{binomial, binomial_row, floor_log2, is_prime, nu2_u64};
use crate::error::{Error, Result};
use crate::fastmod::{schroeder_mod_2m_big, SchroederMod2m, WORD_MOD_EXP_CAP};
use crate::sequences::{euler_numbers, schroeder_via_catalan_sum, t_term};

/// Named integer parameters of a check, in a fixed per-check key order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Params(Vec<(&'static str, i64)>);

impl Params {
    pub fn new() -> Self {
        Params(Vec::new())
    }

    pub fn with(mut self, key: &'static str, value: i64) -> Self {
        self.0.push((key, value));
        self
    }

    pub fn get(&self, key: &str) -> Option<i64> {
        self.0.iter().find(|(k, _)| *k == key).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, i64)> + '_ {
        self.0.iter().copied()
    }

    /// Ordering key: the input parameters in declaration order. Derived
    /// annotations such as `sign` do not take part.
    fn sort_key(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().filter(|(k, _)| *k != "sign").map(|&(_, v)| v)
    }

    pub fn cmp_lex(&self, other: &Params) -> Ordering {
        self.sort_key().cmp(other.sort_key())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

fn decimal<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Outcome of one congruence instance `lhs ≡ rhs (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub params: Params,
    #[serde(serialize_with = "decimal")]
    pub lhs: BigInt,
    #[serde(serialize_with = "decimal")]
    pub rhs: BigInt,
    #[serde(serialize_with = "decimal")]
    pub modulus: BigInt,
    #[serde(serialize_with = "decimal")]
    pub residual: BigInt,
    pub pass: bool,
}

impl CheckResult {
    /// Reduce both sides into `[0, modulus)` and record the residual.
    pub fn congruence(
        check: impl Into<String>,
        params: Params,
        lhs: &BigInt,
        rhs: &BigInt,
        modulus: BigInt,
    ) -> Self {
        assert!(modulus.is_positive(), "modulus must be positive");
        let lhs = lhs.mod_floor(&modulus);
        let rhs = rhs.mod_floor(&modulus);
        let residual = (&lhs - &rhs).mod_floor(&modulus);
        let pass = residual.is_zero();
        CheckResult {
            check: check.into(),
            params,
            lhs,
            rhs,
            modulus,
            residual,
            pass,
        }
    }

    /// An exact identity between nonnegative sides, checked at a power of two
    /// exceeding both so that the congruence is equivalent to equality.
    pub fn identity(check: impl Into<String>, params: Params, lhs: &BigInt, rhs: &BigInt) -> Self {
        debug_assert!(!lhs.is_negative() && !rhs.is_negative());
        let bits = lhs.bits().max(rhs.bits()) + 1;
        Self::congruence(check, params, lhs, rhs, BigInt::one() << bits)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("check result serializes")
    }
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

fn precondition(msg: String) -> Error {
    Error::Precondition(msg)
}

/// Source of `S_n mod 2^e`.
pub trait SchroederSource: Sync {
    fn schroeder_mod(&self, n: u64, exp: u32) -> Result<BigInt>;
}

/// Exact values computed on demand.
#[derive(Debug, Default, Clone, Copy)]
pub struct OnDemandExact;

impl SchroederSource for OnDemandExact {
    fn schroeder_mod(&self, n: u64, exp: u32) -> Result<BigInt> {
        Ok(schroeder_via_catalan_sum(n).mod_floor(&pow2(exp.into())))
    }
}

/// Exact `S_0..=S_max`, precomputed.
#[derive(Debug, Clone)]
pub struct ExactTable {
    values: Vec<BigInt>,
}

impl ExactTable {
    pub fn up_to(max: u64) -> Self {
        let values = (0..=max).into_par_iter().map(schroeder_via_catalan_sum).collect();
        ExactTable { values }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

impl SchroederSource for ExactTable {
    fn schroeder_mod(&self, n: u64, exp: u32) -> Result<BigInt> {
        let v = self.values.get(n as usize).ok_or_else(|| {
            Error::Resource(format!(
                "S_{n} requested but the exact table stops at {}",
                self.values.len().saturating_sub(1)
            ))
        })?;
        Ok(v.mod_floor(&pow2(exp.into())))
    }
}

/// Residues from the word kernel (big fallback above 64 bits).
#[derive(Debug, Clone)]
pub struct FastmodSource {
    kernels: Vec<SchroederMod2m>,
}

impl FastmodSource {
    pub fn new() -> Self {
        let kernels = (1..=WORD_MOD_EXP_CAP)
            .map(|m| SchroederMod2m::new(m).expect("m within word cap"))
            .collect();
        FastmodSource { kernels }
    }
}

impl Default for FastmodSource {
    fn default() -> Self {
        Self::new()
    }
}

impl SchroederSource for FastmodSource {
    fn schroeder_mod(&self, n: u64, exp: u32) -> Result<BigInt> {
        if exp == 0 {
            return Ok(BigInt::zero());
        }
        if exp <= WORD_MOD_EXP_CAP {
            return Ok(self.kernels[exp as usize - 1].eval(n).into());
        }
        Ok(schroeder_mod_2m_big(n, exp)?.into())
    }
}

fn require_n_alpha(n: u64, alpha: u64, min_alpha: u64) -> Result<()> {
    if n < 1 || alpha < min_alpha {
        return Err(precondition(format!(
            "needs n >= 1 and alpha >= {min_alpha}, got n={n}, alpha={alpha}"
        )));
    }
    if alpha > 60 {
        return Err(precondition(format!("alpha={alpha} exceeds the supported 60")));
    }
    Ok(())
}

/// `S_{n+2^a} ≡ S_n + 2^{a+1} (mod 2^{a+2})`.
pub fn verify_theorem1_with(src: &dyn SchroederSource, n: u64, alpha: u64) -> Result<CheckResult> {
    require_n_alpha(n, alpha, 1)?;
    let exp = (alpha + 2) as u32;
    let lhs = src.schroeder_mod(n + (1 << alpha), exp)?;
    let rhs = src.schroeder_mod(n, exp)? + pow2(alpha + 1);
    Ok(CheckResult::congruence(
        "theorem1",
        Params::new().with("n", n as i64).with("alpha", alpha as i64),
        &lhs,
        &rhs,
        pow2(exp.into()),
    ))
}

pub fn verify_theorem1(n: u64, alpha: u64) -> Result<CheckResult> {
    verify_theorem1_with(&OnDemandExact, n, alpha)
}

/// `(-1)^floor((n-1)/2)`.
pub fn theorem2_sign(n: u64) -> i64 {
    if ((n - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// For `a >= 2`: `S_{n+2^a} ≡ S_n + (-1)^floor((n-1)/2) 2^{a+1} (mod 2^{a+3})`;
/// for `a = 1`: `S_{n+2} ≡ S_n + 4 (mod 16)`.
pub fn verify_theorem2_with(src: &dyn SchroederSource, n: u64, alpha: u64) -> Result<CheckResult> {
    require_n_alpha(n, alpha, 1)?;
    let exp = (alpha + 3) as u32;
    let lhs = src.schroeder_mod(n + (1 << alpha), exp)?;
    let base = src.schroeder_mod(n, exp)?;
    let mut params = Params::new().with("n", n as i64).with("alpha", alpha as i64);
    let rhs = if alpha == 1 {
        base + 4
    } else {
        let sign = theorem2_sign(n);
        params = params.with("sign", sign);
        base + sign * pow2(alpha + 1)
    };
    Ok(CheckResult::congruence("theorem2", params, &lhs, &rhs, pow2(exp.into())))
}

pub fn verify_theorem2(n: u64, alpha: u64) -> Result<CheckResult> {
    verify_theorem2_with(&OnDemandExact, n, alpha)
}

/// `s_n mod 2^e`, read off `S_n mod 2^{e+1}` since `S_n` is even for `n >= 1`.
fn little_mod(src: &dyn SchroederSource, n: u64, exp: u32) -> Result<BigInt> {
    Ok(src.schroeder_mod(n, exp + 1)? >> 1)
}

/// `s_{n+2^a} ≡ s_n + 2^a (mod 2^{a+1})`.
pub fn verify_little_schroeder_with(
    src: &dyn SchroederSource,
    n: u64,
    alpha: u64,
) -> Result<CheckResult> {
    require_n_alpha(n, alpha, 1)?;
    let exp = (alpha + 1) as u32;
    let lhs = little_mod(src, n + (1 << alpha), exp)?;
    let rhs = little_mod(src, n, exp)? + pow2(alpha);
    Ok(CheckResult::congruence(
        "little",
        Params::new().with("n", n as i64).with("alpha", alpha as i64),
        &lhs,
        &rhs,
        pow2(exp.into()),
    ))
}

pub fn verify_little_schroeder(n: u64, alpha: u64) -> Result<CheckResult> {
    verify_little_schroeder_with(&OnDemandExact, n, alpha)
}

fn euler_at(table: &[BigInt], i: u64) -> Result<&BigInt> {
    table.get(i as usize).ok_or_else(|| {
        Error::Resource(format!(
            "E_{i} requested but the Euler table stops at {}",
            table.len().saturating_sub(1)
        ))
    })
}

/// `E_{2n+2^a} ≡ E_{2n} + 2^a (mod 2^{a+1})` against a precomputed table.
pub fn verify_stern_euler_in(table: &[BigInt], n: u64, alpha: u64) -> Result<CheckResult> {
    if !(1..=60).contains(&alpha) {
        return Err(precondition(format!("needs 1 <= alpha <= 60, got {alpha}")));
    }
    let lhs = euler_at(table, 2 * n + (1 << alpha))?;
    let rhs = euler_at(table, 2 * n)? + pow2(alpha);
    Ok(CheckResult::congruence(
        "stern-euler",
        Params::new().with("n", n as i64).with("alpha", alpha as i64),
        lhs,
        &rhs,
        pow2(alpha + 1),
    ))
}

pub fn verify_stern_euler(n: u64, alpha: u64) -> Result<CheckResult> {
    if !(1..=20).contains(&alpha) {
        return Err(precondition(format!("needs 1 <= alpha <= 20, got {alpha}")));
    }
    verify_stern_euler_in(&euler_numbers(2 * n + (1 << alpha)), n, alpha)
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(precondition(format!("p={p} is not an odd prime")));
    }
    Ok(())
}

/// `E_{2n+p-1} ≡ E_{2n} (mod p)` for an odd prime `p`.
pub fn verify_kummer_euler_in(table: &[BigInt], n: u64, p: u64) -> Result<CheckResult> {
    require_odd_prime(p)?;
    let lhs = euler_at(table, 2 * n + p - 1)?;
    let rhs = euler_at(table, 2 * n)?;
    Ok(CheckResult::congruence(
        "kummer-euler",
        Params::new().with("n", n as i64).with("p", p as i64),
        lhs,
        rhs,
        BigInt::from(p),
    ))
}

pub fn verify_kummer_euler(n: u64, p: u64) -> Result<CheckResult> {
    require_odd_prime(p)?;
    verify_kummer_euler_in(&euler_numbers(2 * n + p - 1), n, p)
}

/// `T(n, k) ≡ 0 (mod 2^k)`.
pub fn verify_t_vanishing(n: u64, k: u64) -> Result<CheckResult> {
    if k < 1 || k > n {
        return Err(precondition(format!("needs 1 <= k <= n, got n={n}, k={k}")));
    }
    Ok(CheckResult::congruence(
        "t-vanishing",
        Params::new().with("n", n as i64).with("k", k as i64),
        &t_term(n, k),
        &BigInt::zero(),
        pow2(k),
    ))
}

/// `C(n+2^a, k) ≡ C(n, k) (mod 2^{a - floor(log2 k)})`.
pub fn verify_binomial_shift(n: u64, k: u64, alpha: u64) -> Result<CheckResult> {
    let log = floor_log2(k).map_err(|_| precondition("needs k >= 1".into()))?;
    if alpha <= log {
        return Err(precondition(format!(
            "alpha={alpha} <= floor_log2({k})={log} leaves a vacuous modulus"
        )));
    }
    if alpha > 60 {
        return Err(precondition(format!("alpha={alpha} exceeds the supported 60")));
    }
    Ok(CheckResult::congruence(
        "binomial-shift",
        Params::new()
            .with("n", n as i64)
            .with("alpha", alpha as i64)
            .with("k", k as i64),
        &binomial(n + (1 << alpha), k as i64),
        &binomial(n, k as i64),
        pow2(alpha - log),
    ))
}

/// `T(n+2^a, k) ≡ T(n, k) (mod 2^{a + k - floor(log2 k)})` for `1 <= k <= 2^a`,
/// with `T(n, k) = 0` for `k > n`.
pub fn verify_t_shift(n: u64, k: u64, alpha: u64) -> Result<CheckResult> {
    if n < 1 || !(2..=60).contains(&alpha) || k < 1 || k > 1 << alpha {
        return Err(precondition(format!(
            "needs n >= 1, 2 <= alpha <= 60, 1 <= k <= 2^alpha; got n={n}, k={k}, alpha={alpha}"
        )));
    }
    let log = floor_log2(k)?;
    Ok(CheckResult::congruence(
        "t-shift",
        Params::new()
            .with("n", n as i64)
            .with("alpha", alpha as i64)
            .with("k", k as i64),
        &t_term(n + (1 << alpha), k),
        &t_term(n, k),
        pow2(alpha + k - log),
    ))
}

/// The explicit shifts of `T(n, k)` for `k = 1..4`, plus both readings of the
/// expansion of `C(n + 2^a, 2)`.
///
/// `k = 1` and `k = 2` are exact identities (valid for `a >= 1`); `k = 3` and
/// `k = 4` hold modulo `2^{a+3}` and are only produced for `a >= 2`.
pub fn verify_t_smallk_expansions(n: u64, alpha: u64) -> Result<Vec<CheckResult>> {
    if n < 4 || !(1..=60).contains(&alpha) {
        return Err(precondition(format!(
            "needs n >= 4 and 1 <= alpha <= 60, got n={n}, alpha={alpha}"
        )));
    }
    let q = 1u64 << alpha;
    let params = Params::new().with("n", n as i64).with("alpha", alpha as i64);
    let nb = BigInt::from(n);
    let mut out = Vec::with_capacity(6);

    out.push(CheckResult::identity(
        "smallk-t1",
        params.clone().with("k", 1),
        &t_term(n + q, 1),
        &t_term(n, 1),
    ));

    let rhs2 = t_term(n, 2) + pow2(alpha + 2) * &nb - pow2(alpha + 1) + pow2(2 * alpha + 1);
    out.push(CheckResult::identity(
        "smallk-t2",
        params.clone().with("k", 2),
        &t_term(n + q, 2),
        &rhs2,
    ));

    if alpha >= 2 {
        let rhs3 = t_term(n, 3) + (&nb - 1) * pow2(alpha + 2) + pow2(2 * alpha + 1);
        out.push(CheckResult::congruence(
            "smallk-t3",
            params.clone().with("k", 3),
            &t_term(n + q, 3),
            &rhs3,
            pow2(alpha + 3),
        ));

        let rhs4 = t_term(n, 4) + binomial(n - 1, 2) * pow2(alpha + 2);
        out.push(CheckResult::congruence(
            "smallk-t4",
            params.clone().with("k", 4),
            &t_term(n + q, 4),
            &rhs4,
            pow2(alpha + 3),
        ));
    }

    // C(n + 2^a, 2) ≡ C(n, 2) + 2^{a-1} and the shifted reading with n - 1.
    for (name, base) in [("binomial2alpha-n", n), ("binomial2alpha-n-minus-1", n - 1)] {
        out.push(CheckResult::congruence(
            name,
            params.clone().with("k", 2),
            &binomial(base + q, 2),
            &(binomial(base, 2) + pow2(alpha - 1)),
            pow2(alpha),
        ));
    }
    Ok(out)
}

/// Checks on `C(2^a, j)` given its value.
fn c2alpha_checks(value: &BigInt, j: u64, alpha: u64) -> Result<Vec<CheckResult>> {
    let params = Params::new().with("alpha", alpha as i64).with("k", j as i64);
    let v = nu2_u64(j)?;
    let exp = alpha.saturating_sub(v);
    let mut out = vec![CheckResult::congruence(
        "c2alpha",
        params.clone(),
        value,
        &BigInt::zero(),
        pow2(exp),
    )];
    if j == 4 && alpha >= 3 {
        out.push(CheckResult::congruence(
            "c2alpha-j4",
            params,
            value,
            &pow2(alpha - 2),
            pow2(alpha - 1),
        ));
    }
    Ok(out)
}

/// `nu2(C(2^a, j)) >= a - nu2(j)`, and `C(2^a, 4) ≡ 2^{a-2} (mod 2^{a-1})` for `a >= 3`.
///
/// The index `j` is reported under the parameter key `k`.
pub fn verify_c2alpha_vanishing(j: u64, alpha: u64) -> Result<Vec<CheckResult>> {
    if alpha > 60 || j < 1 || j > 1 << alpha {
        return Err(precondition(format!(
            "needs 1 <= j <= 2^alpha, alpha <= 60; got j={j}, alpha={alpha}"
        )));
    }
    c2alpha_checks(&binomial(1 << alpha, j as i64), j, alpha)
}

/// `k - floor(log2 k)`, the exponent margin that lets the proof drop `k >= 5`.
pub fn truncation_margin(k: u64) -> Result<u64> {
    Ok(k - floor_log2(k)?)
}

fn equivalence_pairs(values: &[BigInt], first: u64, alpha: u64) -> Vec<CheckResult> {
    let q = 1u64 << alpha;
    let modulus = pow2(alpha);
    let mut out = Vec::new();
    for (i, sm) in values.iter().enumerate() {
        for (j, sn) in values.iter().enumerate().skip(i + 1) {
            let (m, n) = (first + i as u64, first + j as u64);
            let params = Params::new()
                .with("n", n as i64)
                .with("m", m as i64)
                .with("alpha", alpha as i64);
            if (n - m) % q == 0 {
                out.push(CheckResult::congruence(
                    "equivalence-if",
                    params,
                    sn,
                    sm,
                    modulus.clone(),
                ));
            } else {
                // 1 when the values collide although 2^a does not divide n - m
                let collide = BigInt::from(u8::from(sn == sm));
                out.push(CheckResult::congruence(
                    "equivalence-only-if",
                    params,
                    &collide,
                    &BigInt::zero(),
                    BigInt::from(2),
                ));
            }
        }
    }
    out
}

/// Both directions of `s_n ≡ s_m (mod 2^a)  <=>  2^a | n - m` for `lo <= m < n <= hi`.
///
/// Pairs with `2^a | n - m` are reported as `equivalence-if`, a plain
/// congruence between `s_n` and `s_m`. The remaining pairs are reported as
/// `equivalence-only-if` with `lhs` = 1 when `s_n ≡ s_m (mod 2^a)` anyway,
/// `rhs` = 0, modulo 2; such a pair fails.
pub fn verify_equivalence_range(
    src: &dyn SchroederSource,
    lo: u64,
    hi: u64,
    alpha: u64,
) -> Result<ScanReport> {
    if lo < 1 || hi < lo + 1 || !(1..=60).contains(&alpha) {
        return Err(precondition(format!(
            "needs 1 <= lo < hi and 1 <= alpha <= 60; got {lo}..{hi}, alpha={alpha}"
        )));
    }
    let values = (lo..=hi)
        .map(|i| little_mod(src, i, alpha as u32))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport::from_results(equivalence_pairs(&values, lo, alpha)))
}

pub fn verify_equivalence_iff(n_max: u64, alpha: u64) -> Result<ScanReport> {
    let table = ExactTable::up_to(n_max);
    verify_equivalence_range(&table, 1, n_max, alpha)
}

/// Ordered results with summary counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<Params>,
    pub results: Vec<CheckResult>,
}

impl ScanReport {
    /// Sort lexicographically by parameters (check name breaks ties) and count.
    pub fn from_results(mut results: Vec<CheckResult>) -> Self {
        results.sort_by(|a, b| a.params.cmp_lex(&b.params).then_with(|| a.check.cmp(&b.check)));
        let passed = results.iter().filter(|r| r.pass).count();
        let first_failure = results.iter().find(|r| !r.pass).map(|r| r.params.clone());
        ScanReport {
            total: results.len(),
            passed,
            failed: results.len() - passed,
            first_failure,
            results,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "total={} passed={} failed={}",
            self.total, self.passed, self.failed
        );
        if let Some(p) = &self.first_failure {
            s.push_str(&format!(" first_failure=[{p}]"));
        }
        s
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for r in &self.results {
            serde_json::to_writer(&mut out, r)?;
            out.write_all(b"\n")?;
        }
        out.flush()
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("write to Vec");
        String::from_utf8(buf).expect("utf8")
    }

    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        write_results_csv(&self.results, out)
    }
}

/// CSV columns shared by every check; parameters a check lacks stay empty.
pub const CSV_HEADER: [&str; 11] = [
    "check", "n", "alpha", "k", "p", "m", "lhs", "rhs", "modulus", "residual", "pass",
];

pub fn write_results_csv<W: Write>(results: &[CheckResult], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in results {
        let param = |key: &str| r.params.get(key).map(|v| v.to_string()).unwrap_or_default();
        w.write_record([
            r.check.clone(),
            param("n"),
            param("alpha"),
            param("k"),
            param("p"),
            param("m"),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.modulus.to_string(),
            r.residual.to_string(),
            r.pass.to_string(),
        ])?;
    }
    w.flush()
}

/// Every check the verifier knows by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Theorem1,
    Theorem2,
    Little,
    SternEuler,
    KummerEuler,
    TVanishing,
    TShift,
    BinomialShift,
    SmallK,
    C2Alpha,
    EquivalenceIff,
}

impl CheckKind {
    pub const ALL: [CheckKind; 11] = [
        CheckKind::Theorem1,
        CheckKind::Theorem2,
        CheckKind::Little,
        CheckKind::SternEuler,
        CheckKind::KummerEuler,
        CheckKind::TVanishing,
        CheckKind::TShift,
        CheckKind::BinomialShift,
        CheckKind::SmallK,
        CheckKind::C2Alpha,
        CheckKind::EquivalenceIff,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::Theorem1 => "theorem1",
            CheckKind::Theorem2 => "theorem2",
            CheckKind::Little => "little",
            CheckKind::SternEuler => "stern-euler",
            CheckKind::KummerEuler => "kummer-euler",
            CheckKind::TVanishing => "t-vanishing",
            CheckKind::TShift => "t-shift",
            CheckKind::BinomialShift => "binomial-shift",
            CheckKind::SmallK => "smallk",
            CheckKind::C2Alpha => "c2alpha",
            CheckKind::EquivalenceIff => "equivalence-iff",
        }
    }

    /// Checks whose only inputs are Schröder values, and so can run on fastmod.
    pub fn is_schroeder(&self) -> bool {
        matches!(
            self,
            CheckKind::Theorem1 | CheckKind::Theorem2 | CheckKind::Little | CheckKind::EquivalenceIff
        )
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Unknown(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Exact,
    Fastmod,
}

impl Engine {
    pub fn as_str(&self) -> &'static str {
        match self {
            Engine::Exact => "exact",
            Engine::Fastmod => "fastmod",
        }
    }
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Engine::Exact),
            "fastmod" => Ok(Engine::Fastmod),
            _ => Err(Error::Unknown(s.to_string())),
        }
    }
}

/// Inclusive integer range `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IncRange {
    pub lo: u64,
    pub hi: u64,
}

impl IncRange {
    pub fn new(lo: u64, hi: u64) -> Result<Self> {
        if lo > hi {
            return Err(precondition(format!("empty range {lo}..{hi}")));
        }
        Ok(IncRange { lo, hi })
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.lo..=self.hi
    }

    pub fn contains(&self, x: u64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl FromStr for IncRange {
    type Err = Error;
    /// `a..b` (inclusive) or a single integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("invalid range `{s}`, expected a..b"));
        match s.split_once("..") {
            Some((a, b)) => {
                let lo = a.trim().parse().map_err(|_| bad())?;
                let hi = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                IncRange::new(lo, hi)
            }
            None => {
                let v = s.trim().parse().map_err(|_| bad())?;
                IncRange::new(v, v)
            }
        }
    }
}

/// Parameters of a range scan. Which fields matter depends on the check.
#[derive(Debug, Clone)]
pub struct ScanSpec {
    pub check: CheckKind,
    pub n: Option<IncRange>,
    pub alpha: Option<IncRange>,
    pub k: Option<IncRange>,
    pub primes: Vec<u64>,
    pub engine: Engine,
    pub jobs: usize,
}

impl ScanSpec {
    pub fn new(check: CheckKind) -> Self {
        ScanSpec {
            check,
            n: None,
            alpha: None,
            k: None,
            primes: Vec::new(),
            engine: Engine::Exact,
            jobs: 1,
        }
    }

    pub fn n(mut self, lo: u64, hi: u64) -> Self {
        self.n = Some(IncRange { lo, hi });
        self
    }

    pub fn alpha(mut self, lo: u64, hi: u64) -> Self {
        self.alpha = Some(IncRange { lo, hi });
        self
    }

    pub fn k(mut self, lo: u64, hi: u64) -> Self {
        self.k = Some(IncRange { lo, hi });
        self
    }

    pub fn primes(mut self, primes: &[u64]) -> Self {
        self.primes = primes.to_vec();
        self
    }

    pub fn engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    fn need(&self, r: Option<IncRange>, what: &str) -> Result<IncRange> {
        let r = r.ok_or_else(|| precondition(format!("{} needs a {what} range", self.check)))?;
        IncRange::new(r.lo, r.hi)
    }
}

/// Run a check over the Cartesian product of its parameter ranges.
///
/// Instances may be evaluated concurrently (`jobs` threads) but the report is
/// always in lexicographic parameter order.
pub fn scan(spec: &ScanSpec) -> Result<ScanReport> {
    if spec.engine == Engine::Fastmod && !spec.check.is_schroeder() {
        return Err(Error::UnsupportedEngine {
            engine: spec.engine.as_str().into(),
            check: spec.check.as_str().into(),
        });
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs.max(1))
        .build()
        .map_err(|e| Error::Resource(e.to_string()))?;
    pool.install(|| run_scan(spec))
}

fn max_alpha_guard(a: IncRange, cap: u64) -> Result<()> {
    if a.hi > cap {
        return Err(precondition(format!("alpha up to {} exceeds the scan cap {cap}", a.hi)));
    }
    Ok(())
}

fn schroeder_source(spec: &ScanSpec, max_index: u64) -> Box<dyn SchroederSource> {
    match spec.engine {
        Engine::Exact => Box::new(ExactTable::up_to(max_index)),
        Engine::Fastmod => Box::new(FastmodSource::new()),
    }
}

fn collect<I, F>(items: Vec<I>, f: F) -> Result<Vec<CheckResult>>
where
    I: Send + Sync,
    F: Fn(&I) -> Result<Vec<CheckResult>> + Sync + Send,
{
    let nested: Vec<Vec<CheckResult>> = items.par_iter().map(f).collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn run_scan(spec: &ScanSpec) -> Result<ScanReport> {
    let results = match spec.check {
        CheckKind::Theorem1 | CheckKind::Theorem2 | CheckKind::Little => {
            let n = spec.need(spec.n, "n")?;
            let a = spec.need(spec.alpha, "alpha")?;
            max_alpha_guard(a, 60)?;
            if n.lo < 1 || a.lo < 1 {
                return Err(precondition("needs n >= 1 and alpha >= 1".into()));
            }
            let src = schroeder_source(spec, n.hi + (1 << a.hi));
            let grid: Vec<(u64, u64)> =
                n.iter().flat_map(|n| a.iter().map(move |a| (n, a))).collect();
            let check = spec.check;
            collect(grid, |&(n, a)| {
                let r = match check {
                    CheckKind::Theorem1 => verify_theorem1_with(src.as_ref(), n, a),
                    CheckKind::Theorem2 => verify_theorem2_with(src.as_ref(), n, a),
                    _ => verify_little_schroeder_with(src.as_ref(), n, a),
                };
                r.map(|r| vec![r])
            })?
        }
        CheckKind::EquivalenceIff => {
            let n = spec.need(spec.n, "n")?;
            let a = spec.need(spec.alpha, "alpha")?;
            max_alpha_guard(a, 60)?;
            let src = schroeder_source(spec, n.hi);
            let alphas: Vec<u64> = a.iter().collect();
            collect(alphas, |&a| {
                verify_equivalence_range(src.as_ref(), n.lo, n.hi, a).map(|r| r.results)
            })?
        }
        CheckKind::SternEuler => {
            let n = spec.need(spec.n, "n")?;
            let a = spec.need(spec.alpha, "alpha")?;
            max_alpha_guard(a, 20)?;
            if a.lo < 1 {
                return Err(precondition("needs alpha >= 1".into()));
            }
            let table = euler_numbers(2 * n.hi + (1 << a.hi));
            let grid: Vec<(u64, u64)> =
                n.iter().flat_map(|n| a.iter().map(move |a| (n, a))).collect();
            collect(grid, |&(n, a)| verify_stern_euler_in(&table, n, a).map(|r| vec![r]))?
        }
        CheckKind::KummerEuler => {
            let n = spec.need(spec.n, "n")?;
            if spec.primes.is_empty() {
                return Err(precondition("kummer-euler needs a prime list".into()));
            }
            for &p in &spec.primes {
                require_odd_prime(p)?;
            }
            let pmax = *spec.primes.iter().max().expect("nonempty");
            let table = euler_numbers(2 * n.hi + pmax - 1);
            let grid: Vec<(u64, u64)> = n
                .iter()
                .flat_map(|n| spec.primes.iter().map(move |&p| (n, p)))
                .collect();
            collect(grid, |&(n, p)| verify_kummer_euler_in(&table, n, p).map(|r| vec![r]))?
        }
        CheckKind::TVanishing => {
            let n = spec.need(spec.n, "n")?;
            let grid: Vec<(u64, u64)> = n
                .iter()
                .flat_map(|n| (1..=n).map(move |k| (n, k)))
                .filter(|&(_, k)| spec.k.is_none_or(|r| r.contains(k)))
                .collect();
            collect(grid, |&(n, k)| verify_t_vanishing(n, k).map(|r| vec![r]))?
        }
        CheckKind::TShift => {
            let n = spec.need(spec.n, "n")?;
            let a = spec.need(spec.alpha, "alpha")?;
            max_alpha_guard(a, 16)?;
            let grid: Vec<(u64, u64, u64)> = n
                .iter()
                .flat_map(|n| a.iter().map(move |a| (n, a)))
                .flat_map(|(n, a)| (1..=(1u64 << a).min(n)).map(move |k| (n, a, k)))
                .filter(|&(_, _, k)| spec.k.is_none_or(|r| r.contains(k)))
                .collect();
            collect(grid, |&(n, a, k)| verify_t_shift(n, k, a).map(|r| vec![r]))?
        }
        CheckKind::BinomialShift => {
            let n = spec.need(spec.n, "n")?;
            let a = spec.need(spec.alpha, "alpha")?;
            max_alpha_guard(a, 60)?;
            let k = spec.k.unwrap_or(IncRange { lo: 1, hi: 16 });
            let grid: Vec<(u64, u64, u64)> = n
                .iter()
                .flat_map(|n| a.iter().map(move |a| (n, a)))
                .flat_map(|(n, a)| k.iter().map(move |k| (n, a, k)))
                .filter(|&(_, a, k)| k >= 1 && floor_log2(k).is_ok_and(|l| a > l))
                .collect();
            collect(grid, |&(n, a, k)| verify_binomial_shift(n, k, a).map(|r| vec![r]))?
        }
        CheckKind::SmallK => {
            let n = spec.need(spec.n, "n")?;
            let a = spec.need(spec.alpha, "alpha")?;
            max_alpha_guard(a, 60)?;
            let grid: Vec<(u64, u64)> =
                n.iter().flat_map(|n| a.iter().map(move |a| (n, a))).collect();
            collect(grid, |&(n, a)| verify_t_smallk_expansions(n, a))?
        }
        CheckKind::C2Alpha => {
            let a = spec.need(spec.alpha, "alpha")?;
            max_alpha_guard(a, 16)?;
            let alphas: Vec<u64> = a.iter().collect();
            collect(alphas, |&a| {
                let row = binomial_row(1 << a);
                let mut out = Vec::new();
                for j in 1..=(1u64 << a) {
                    if spec.k.is_none_or(|r| r.contains(j)) {
                        out.extend(c2alpha_checks(&row[j as usize], j, a)?);
                    }
                }
                Ok(out)
            })?
        }
    };
    Ok(ScanReport::from_results(results))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pass(r: &CheckResult) -> bool {
        r.pass
    }

    #[test]
    fn theorem1_examples() {
        let r = verify_theorem1(1, 1).unwrap();
        assert!(pass(&r));
        assert_eq!(r.modulus, 8.into());
        // S_3 - S_1 - 4 = 16
        assert_eq!(r.lhs, (22 % 8).into());
        assert!(verify_theorem1(2, 2).unwrap().pass);
        let r = verify_theorem1(1, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.modulus, 32.into());
        assert!(matches!(verify_theorem1(0, 1), Err(Error::Precondition(_))));
        assert!(matches!(verify_theorem1(1, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn little_examples() {
        for (n, a, m) in [(1, 1, 4), (2, 2, 8), (3, 1, 4)] {
            let r = verify_little_schroeder(n, a).unwrap();
            assert!(r.pass, "{n} {a}");
            assert_eq!(r.modulus, m.into());
        }
        // s_3 = 11, s_1 = 1
        let r = verify_little_schroeder(1, 1).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (3.into(), 3.into()));
        assert!(verify_little_schroeder(0, 1).is_err());
    }

    #[test]
    fn theorem2_examples() {
        let r = verify_theorem2(1, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.params.get("sign"), Some(1));
        assert_eq!(r.modulus, 32.into());
        let r = verify_theorem2(3, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.params.get("sign"), Some(-1));
        let r = verify_theorem2(1, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.modulus, 16.into());
        assert_eq!(r.params.get("sign"), None);
    }

    #[test]
    fn theorem2_strengthens_theorem1() {
        let table = ExactTable::up_to(64 + 64);
        for n in 1..=64 {
            for a in 1..=6 {
                let t2 = verify_theorem2_with(&table, n, a).unwrap();
                let t1 = verify_theorem1_with(&table, n, a).unwrap();
                assert!(t2.pass && t1.pass, "n={n} a={a}");
                assert!(t1.residual.is_zero());
            }
        }
    }

    #[test]
    fn stern_and_kummer_examples() {
        for (n, a) in [(1, 1), (0, 2), (1, 2)] {
            assert!(verify_stern_euler(n, a).unwrap().pass, "stern {n} {a}");
        }
        // E_6 - E_2 - 4 = -64
        let r = verify_stern_euler(1, 2).unwrap();
        assert_eq!(r.lhs, BigInt::from(-61).mod_floor(&8.into()));
        for (n, p) in [(1, 3), (1, 5), (2, 3)] {
            assert!(verify_kummer_euler(n, p).unwrap().pass, "kummer {n} {p}");
        }
        // the congruence needs n >= 1: E_{p-1} - E_0 is not divisible by p
        for p in [3, 5, 7, 11, 13] {
            assert!(!verify_kummer_euler(0, p).unwrap().pass, "kummer 0 {p}");
        }
        assert!(matches!(verify_kummer_euler(1, 4), Err(Error::Precondition(_))));
        assert!(verify_kummer_euler(1, 2).is_err());
        assert!(matches!(
            verify_stern_euler_in(&euler_numbers(4), 1, 2),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn lemma_examples() {
        let r = verify_t_vanishing(3, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.modulus, 4.into());
        assert!(verify_t_vanishing(17, 1).unwrap().pass);
        assert!(verify_t_vanishing(6, 4).unwrap().pass);
        assert!(verify_t_vanishing(3, 4).is_err());

        for (n, k, a, m) in [(3, 1, 2, 4), (5, 2, 3, 4), (2, 4, 4, 4)] {
            let r = verify_binomial_shift(n, k, a).unwrap();
            assert!(r.pass);
            assert_eq!(r.modulus, m.into());
        }
        assert!(matches!(verify_binomial_shift(3, 4, 2), Err(Error::Precondition(_))));

        for (n, k, a, m) in [(1, 2, 2, 8), (3, 1, 2, 8), (2, 3, 2, 16)] {
            let r = verify_t_shift(n, k, a).unwrap();
            assert!(r.pass, "{n} {k} {a}");
            assert_eq!(r.modulus, m.into());
        }
        assert!(verify_t_shift(3, 5, 2).is_err());
        assert!(verify_t_shift(3, 1, 1).is_err());
    }

    #[test]
    fn smallk_examples() {
        let rs = verify_t_smallk_expansions(4, 2).unwrap();
        let names: Vec<_> = rs.iter().map(|r| r.check.as_str()).collect();
        assert_eq!(
            names,
            [
                "smallk-t1",
                "smallk-t2",
                "smallk-t3",
                "smallk-t4",
                "binomial2alpha-n",
                "binomial2alpha-n-minus-1"
            ]
        );
        assert!(rs.iter().all(pass));
        // T(8, 2) = T(4, 2) + 2^4*4 - 2^3 + 2^5 exactly
        assert_eq!(rs[1].lhs, t_term(8, 2));
        assert_eq!(t_term(8, 2), t_term(4, 2) + 64 - 8 + 32);
        assert!(verify_t_smallk_expansions(5, 2).unwrap().iter().all(pass));
        assert_eq!(verify_t_smallk_expansions(9, 1).unwrap().len(), 4);
        assert!(verify_t_smallk_expansions(3, 2).is_err());
    }

    #[test]
    fn c2alpha_examples() {
        assert!(verify_c2alpha_vanishing(2, 3).unwrap().iter().all(pass));
        let r = verify_c2alpha_vanishing(1, 5).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].modulus, 32.into());
        let r = verify_c2alpha_vanishing(4, 4).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(pass));
        assert_eq!(r[1].lhs, 4.into()); // 1820 mod 8
        assert!(verify_c2alpha_vanishing(9, 3).is_err());
    }

    #[test]
    fn truncation_bound() {
        for k in 5..=(1u64 << 20) {
            assert!(truncation_margin(k).unwrap() >= 3, "k={k}");
        }
        assert_eq!(truncation_margin(4).unwrap(), 2);
    }

    #[test]
    fn equivalence_if_direction_holds() {
        for (n_max, a) in [(8, 1), (8, 2), (6, 3), (64, 4)] {
            let rep = verify_equivalence_iff(n_max, a).unwrap();
            assert_eq!(rep.total as u64, n_max * (n_max - 1) / 2);
            assert!(rep
                .results
                .iter()
                .filter(|r| r.check == "equivalence-if")
                .all(pass));
        }
        // s_6 ≡ s_2 mod 4 and 4 | 4
        let rep = verify_equivalence_iff(8, 2).unwrap();
        let r = rep
            .results
            .iter()
            .find(|r| r.params.get("n") == Some(6) && r.params.get("m") == Some(2))
            .unwrap();
        assert_eq!(r.check, "equivalence-if");
        assert!(r.pass);
        // s_5 - s_1 = 196 ≡ 4 mod 8 and 8 does not divide 4
        let rep = verify_equivalence_iff(6, 3).unwrap();
        let r = rep
            .results
            .iter()
            .find(|r| r.params.get("n") == Some(5) && r.params.get("m") == Some(1))
            .unwrap();
        assert_eq!(r.check, "equivalence-only-if");
        assert!(r.pass);
    }

    #[test]
    fn equivalence_only_if_direction_has_collisions() {
        // s_3 = 11 ≡ 3 = s_2 (mod 8) although 8 does not divide 1
        let rep = verify_equivalence_iff(3, 3).unwrap();
        let r = rep
            .results
            .iter()
            .find(|r| r.params.get("n") == Some(3) && r.params.get("m") == Some(2))
            .unwrap();
        assert_eq!(r.check, "equivalence-only-if");
        assert!(!r.pass);
        // every s_n is odd, so mod 2 every pair collides
        let rep = verify_equivalence_iff(8, 1).unwrap();
        assert_eq!(rep.failed, 16);
        assert_eq!(rep.first_failure, Some(Params::new().with("n", 2).with("m", 1).with("alpha", 1)));
    }

    #[test]
    fn scan_examples() {
        let rep = scan(&ScanSpec::new(CheckKind::Theorem1).n(1, 64).alpha(1, 6)).unwrap();
        assert_eq!(rep.total, 384);
        assert!(rep.all_pass());
        let rep = scan(&ScanSpec::new(CheckKind::Theorem2).n(1, 64).alpha(2, 6)).unwrap();
        assert!(rep.all_pass());
        let rep = scan(&ScanSpec::new(CheckKind::Theorem1).n(1, 4).alpha(1, 1)).unwrap();
        assert_eq!(rep.total, 4);
        let err = scan(&ScanSpec::new(CheckKind::SternEuler).n(0, 3).alpha(1, 2).engine(Engine::Fastmod));
        assert!(matches!(err, Err(Error::UnsupportedEngine { .. })));
    }

    #[test]
    fn scan_order_is_lexicographic_and_job_independent() {
        let one = scan(&ScanSpec::new(CheckKind::TShift).n(1, 20).alpha(2, 4)).unwrap();
        let many = scan(&ScanSpec::new(CheckKind::TShift).n(1, 20).alpha(2, 4).jobs(4)).unwrap();
        assert_eq!(one.to_jsonl(), many.to_jsonl());
        for w in one.results.windows(2) {
            assert_ne!(w[0].params.cmp_lex(&w[1].params), Ordering::Greater);
        }
    }

    #[test]
    fn engines_agree_on_schroeder_checks() {
        for check in [CheckKind::Theorem1, CheckKind::Theorem2, CheckKind::Little] {
            let base = ScanSpec::new(check).n(1, 100).alpha(1, 5);
            let exact = scan(&base.clone()).unwrap();
            let fast = scan(&base.engine(Engine::Fastmod)).unwrap();
            assert_eq!(exact.to_jsonl(), fast.to_jsonl(), "{check}");
        }
        let base = ScanSpec::new(CheckKind::EquivalenceIff).n(1, 40).alpha(1, 4);
        assert_eq!(
            scan(&base.clone()).unwrap(),
            scan(&base.engine(Engine::Fastmod)).unwrap()
        );
    }

    #[test]
    fn eq5_at_alpha_one_is_not_a_theorem() {
        // Recorded only: the signed form fails for some n when alpha = 1,
        // which is why the alpha = 1 branch uses the unsigned +4 mod 16.
        let t = ExactTable::up_to(40);
        let failures = (1..=30u64)
            .filter(|&n| {
                let lhs = t.schroeder_mod(n + 2, 4).unwrap();
                let rhs = t.schroeder_mod(n, 4).unwrap() + theorem2_sign(n) * 4;
                !(lhs - rhs).mod_floor(&16.into()).is_zero()
            })
            .count();
        assert!(failures > 0);
    }

    #[test]
    fn serialization_shapes() {
        let r = verify_theorem2(3, 2).unwrap();
        assert_eq!(
            r.to_json(),
            format!(
                r#"{{"check":"theorem2","params":{{"n":3,"alpha":2,"sign":-1}},"lhs":"{}","rhs":"{}","modulus":"32","residual":"0","pass":true}}"#,
                8558 % 32,
                (22 - 8i64).rem_euclid(32)
            )
        );
        let mut buf = Vec::new();
        write_results_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "check,n,alpha,k,p,m,lhs,rhs,modulus,residual,pass\ntheorem2,3,2,,,,14,14,32,0,true\n"
        );
        assert_eq!("3..7".parse::<IncRange>().unwrap(), IncRange { lo: 3, hi: 7 });
        assert_eq!("5".parse::<IncRange>().unwrap(), IncRange { lo: 5, hi: 5 });
        assert!("7..3".parse::<IncRange>().is_err());
    }
}
