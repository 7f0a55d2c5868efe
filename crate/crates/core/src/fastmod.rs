//! `S_n mod 2^m` without big integers.
//!
//! `S_n = sum_{k=1}^n T(n, k)` and `2^k | T(n, k)`, so only the terms with
//! `k < m` survive modulo `2^m`. Consecutive terms differ by the ratio
//! `T(n, k+1) / T(n, k) = 2 (n-k)(n-k+1) / (k (k+1))`, which is applied to a
//! tracked `(valuation, odd part)` pair: valuations add and subtract exactly,
//! odd parts multiply by odd inverses. Each `S_n mod 2^m` therefore costs
//! `O(min(n, m))` word operations.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{self, inv_odd_u64, low_mask, nu2_factorial, odd_factorial_mod, Residue2m};
use crate::error::{Error, Result};

/// Largest modulus exponent handled by the word kernel.
pub const WORD_MOD_EXP_CAP: u32 = 64;

/// Precomputed denominators for a fixed `m <= 64`.
#[derive(Debug, Clone)]
pub struct SchroederMod2m {
    mod_exp: u32,
    mask: u64,
    /// For step `k -> k+1`: `nu2(k (k+1))` and the inverse of its odd part mod 2^64.
    den_val: Vec<u32>,
    den_inv: Vec<u64>,
}

impl SchroederMod2m {
    pub fn new(mod_exp: u32) -> Result<Self> {
        if mod_exp == 0 || mod_exp > WORD_MOD_EXP_CAP {
            return Err(Error::Domain(format!(
                "word kernel needs 1 <= m <= {WORD_MOD_EXP_CAP}, got {mod_exp}"
            )));
        }
        let steps = mod_exp as u64;
        let mut den_val = Vec::with_capacity(steps as usize + 1);
        let mut den_inv = Vec::with_capacity(steps as usize + 1);
        den_val.push(0);
        den_inv.push(1);
        for k in 1..=steps {
            let (a, b) = (k, k + 1);
            let v = a.trailing_zeros() + b.trailing_zeros();
            let odd = (a >> a.trailing_zeros()).wrapping_mul(b >> b.trailing_zeros());
            den_val.push(v);
            den_inv.push(inv_odd_u64(odd));
        }
        Ok(SchroederMod2m {
            mod_exp,
            mask: low_mask(mod_exp),
            den_val,
            den_inv,
        })
    }

    pub fn mod_exp(&self) -> u32 {
        self.mod_exp
    }

    /// `S_n mod 2^m`; `n = 0` gives `S_0 = 1`.
    #[inline]
    pub fn eval(&self, n: u64) -> u64 {
        if n == 0 {
            return 1 & self.mask;
        }
        let m = self.mod_exp;
        let last = n.min(u64::from(m) - 1);
        // T(n, 1) = 2
        let mut val: u32 = 1;
        let mut odd: u64 = 1;
        let mut acc: u64 = 0;
        let mut k = 1u64;
        while k <= last {
            debug_assert!(u64::from(val) >= k);
            if val < m {
                acc = acc.wrapping_add(odd << val);
            }
            if k == last {
                break;
            }
            let a = n - k;
            let b = a + 1;
            let (ta, tb) = (a.trailing_zeros(), b.trailing_zeros());
            val = val + 1 + ta + tb - self.den_val[k as usize];
            odd = odd
                .wrapping_mul(a >> ta)
                .wrapping_mul(b >> tb)
                .wrapping_mul(self.den_inv[k as usize]);
            k += 1;
        }
        acc & self.mask
    }
}

/// `S_n mod 2^m` for `1 <= m <= 64`.
pub fn schroeder_mod_2m(n: u64, m: u32) -> Result<u64> {
    Ok(SchroederMod2m::new(m)?.eval(n))
}

/// `S_n mod 2^m` for any `m >= 1`, through [`Residue2m`] when `m > 64`.
pub fn schroeder_mod_2m_big(n: u64, m: u32) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::Domain("modulus exponent must be >= 1".into()));
    }
    if m <= WORD_MOD_EXP_CAP {
        return Ok(BigUint::from(schroeder_mod_2m(n, m)?));
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    let mut acc = BigUint::zero();
    for r in t_residues(n, m)? {
        acc = r.add_into(&acc)?;
    }
    Ok(acc)
}

/// Tracked residues of `T(n, k)` for `k = 1..=min(n, m-1)`, by ratio stepping.
pub fn t_residues(n: u64, m: u32) -> Result<TResidues> {
    if n == 0 || m < 2 {
        return Err(Error::Precondition(format!(
            "t_residues needs n >= 1 and m >= 2, got n={n}, m={m}"
        )));
    }
    Ok(TResidues {
        n,
        m,
        k: 1,
        last: n.min(u64::from(m) - 1),
        current: Some(Residue2m::from_parts(1, BigUint::one(), m)?),
    })
}

/// Iterator returned by [`t_residues`].
#[derive(Debug, Clone)]
pub struct TResidues {
    n: u64,
    m: u32,
    k: u64,
    last: u64,
    current: Option<Residue2m>,
}

impl TResidues {
    fn step(&self, cur: &Residue2m) -> Result<Residue2m> {
        let k = self.k;
        let of = |x: u64| Residue2m::of(&BigInt::from(x), self.m);
        let num = of(2)?.mul(&of(self.n - k)?)?.mul(&of(self.n - k + 1)?)?;
        let den = of(k)?.mul(&of(k + 1)?)?;
        cur.mul(&num)?.div(&den)
    }
}

impl Iterator for TResidues {
    type Item = Residue2m;

    fn next(&mut self) -> Option<Residue2m> {
        if self.k > self.last {
            return None;
        }
        let cur = self.current.take()?;
        assert!(
            cur.valuation() >= self.k as i64,
            "T({}, {}) tracked with valuation {} < k",
            self.n,
            self.k,
            cur.valuation()
        );
        if self.k < self.last {
            self.current = Some(self.step(&cur).expect("ratio step on matching precision"));
        }
        self.k += 1;
        Some(cur)
    }
}

/// `(nu2(C(n, k)), odd part of C(n, k) mod 2^m)` from Legendre valuations and
/// odd factorial residues.
pub fn binomial_residue(n: u64, k: u64, m: u32) -> Result<Residue2m> {
    if k > n {
        return Err(Error::Precondition(format!(
            "binomial_residue needs 0 <= k <= n, got n={n}, k={k}"
        )));
    }
    if m == 0 || m > WORD_MOD_EXP_CAP {
        return Err(Error::Domain(format!(
            "binomial_residue needs 1 <= m <= {WORD_MOD_EXP_CAP}, got {m}"
        )));
    }
    let v = nu2_factorial(n) - nu2_factorial(k) - nu2_factorial(n - k);
    let num = odd_factorial_mod(n, 64)?;
    let den = odd_factorial_mod(k, 64)?.wrapping_mul(odd_factorial_mod(n - k, 64)?);
    let odd = num.wrapping_mul(inv_odd_u64(den)) & low_mask(m);
    Residue2m::from_parts(v as i64, BigUint::from(odd), m)
}

/// `T(n, k) = C(n, k) C(n, k-1) 2^k / n` composed from [`binomial_residue`].
pub fn t_residue_from_binomials(n: u64, k: u64, m: u32) -> Result<Residue2m> {
    if n == 0 || k == 0 || k > n {
        return Ok(Residue2m::zero(m));
    }
    let two_k = Residue2m::from_parts(k as i64, BigUint::one(), m)?;
    binomial_residue(n, k, m)?
        .mul(&binomial_residue(n, k - 1, m)?)?
        .mul(&two_k)?
        .div(&arith::residue_of(&BigInt::from(n), m)?)
}

/// Timing of one `S_1..S_n mod 2^m` sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BenchReport {
    pub n: u64,
    pub m: u32,
    pub reps: u32,
    pub best_seconds: f64,
    pub mean_seconds: f64,
    /// XOR of all residues, so the work cannot be optimized away.
    pub checksum: u64,
}

pub fn bench(n: u64, m: u32, reps: u32) -> Result<BenchReport> {
    let kernel = SchroederMod2m::new(m)?;
    let reps = reps.max(1);
    let mut times = Vec::with_capacity(reps as usize);
    let mut checksum = 0;
    for _ in 0..reps {
        let start = std::time::Instant::now();
        let mut x = 0u64;
        for i in 1..=n {
            x ^= kernel.eval(i);
        }
        times.push(start.elapsed().as_secs_f64());
        checksum = std::hint::black_box(x);
    }
    let best = times.iter().cloned().fold(f64::INFINITY, f64::min);
    let mean = times.iter().sum::<f64>() / times.len() as f64;
    Ok(BenchReport {
        n,
        m,
        reps,
        best_seconds: best,
        mean_seconds: mean,
        checksum,
    })
}
