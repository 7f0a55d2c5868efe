//! Exact integer utilities: binomials, 2-adic valuations and the
//! [`Residue2m`] representation `2^v * u (mod 2^(v+m))` with odd `u`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
///
/// Uses the multiplicative formula with exact division at every step, so no
/// modular shortcut is ever taken.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `[C(n, 0), ..., C(n, n)]`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..n {
        c *= n - i;
        c /= i + 1;
        row.push(c.clone());
    }
    row
}

/// 2-adic valuation of a nonzero integer.
pub fn nu2(x: &BigInt) -> Result<u64> {
    x.trailing_zeros()
        .ok_or_else(|| Error::Domain("nu2 is undefined at 0".into()))
}

/// 2-adic valuation of a nonzero machine integer.
pub fn nu2_u64(x: u64) -> Result<u64> {
    if x == 0 {
        return Err(Error::Domain("nu2 is undefined at 0".into()));
    }
    Ok(u64::from(x.trailing_zeros()))
}

/// `floor(log2(k))` for `k >= 1`.
pub fn floor_log2(k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("floor_log2 is undefined at 0".into()));
    }
    Ok(u64::from(63 - k.leading_zeros()))
}

/// `nu2(n!)` by Legendre's formula, `n - s2(n)`.
pub fn nu2_factorial(n: u64) -> u64 {
    n - u64::from(n.count_ones())
}

/// Mask with the low `m` bits set (`m <= 64`).
#[inline]
pub(crate) fn low_mask(m: u32) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Inverse of an odd `u` modulo `2^64` by Newton/Hensel lifting.
///
/// Each step `x <- x(2 - ux)` doubles the number of correct low bits; the seed
/// `x = u` is already correct to 3 bits for odd `u`.
#[inline]
pub fn inv_odd_u64(u: u64) -> u64 {
    debug_assert!(u & 1 == 1);
    let mut x = u;
    for _ in 0..5 {
        x = x.wrapping_mul(2u64.wrapping_sub(u.wrapping_mul(x)));
    }
    x
}

/// Inverse of an odd `u` modulo `2^m` for arbitrary `m`.
pub fn inv_odd_mod_pow2(u: &BigUint, m: u32) -> BigUint {
    debug_assert!(u.bit(0));
    let modulus = BigUint::one() << m;
    let mut x = BigUint::one();
    let mut bits = 1u32;
    while bits < m {
        bits = (2 * bits).min(m);
        let q = BigUint::one() << bits;
        // x <- x * (2 - u x) mod 2^bits, written with nonnegative terms.
        let ux = (u * &x) % &q;
        let two_minus = (BigUint::from(2u32) + &q - ux) % &q;
        x = (x * two_minus) % &q;
    }
    x % modulus
}

/// `(n! / 2^nu2(n!)) mod 2^m` via a single pass over the odd parts of `1..=n`.
pub fn odd_factorial_mod(n: u64, m: u32) -> Result<u64> {
    if m == 0 || m > 64 {
        return Err(Error::Domain(format!(
            "odd_factorial_mod needs 1 <= m <= 64, got {m}"
        )));
    }
    let mask = low_mask(m);
    let mut acc = 1u64;
    for i in 2..=n {
        let odd = i >> i.trailing_zeros();
        acc = acc.wrapping_mul(odd);
    }
    Ok(acc & mask)
}

/// A nonzero integer `2^v * u` with odd `u` known modulo `2^m`, or exact zero.
///
/// The valuation is signed so that a quotient with `v1 < v2` can be
/// represented; such a value is not an integer and is rejected by
/// [`Residue2m::add_into`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue2m {
    valuation: i64,
    odd: BigUint,
    mod_exp: u32,
    is_zero: bool,
}

impl Residue2m {
    pub fn zero(mod_exp: u32) -> Self {
        Residue2m {
            valuation: 0,
            odd: BigUint::one(),
            mod_exp,
            is_zero: true,
        }
    }

    /// Build from parts; `odd` is reduced modulo `2^mod_exp` and must be odd.
    pub fn from_parts(valuation: i64, odd: BigUint, mod_exp: u32) -> Result<Self> {
        if mod_exp == 0 {
            return Err(Error::Domain("Residue2m needs m >= 1".into()));
        }
        let odd = odd % (BigUint::one() << mod_exp);
        if !odd.bit(0) {
            return Err(Error::Domain("Residue2m odd part must be odd".into()));
        }
        Ok(Residue2m {
            valuation,
            odd,
            mod_exp,
            is_zero: false,
        })
    }

    /// Track `x` with an odd part modulo `2^m`.
    pub fn of(x: &BigInt, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("Residue2m needs m >= 1".into()));
        }
        let Some(v) = x.trailing_zeros() else {
            return Ok(Self::zero(m));
        };
        let odd = x >> v;
        let modulus = BigInt::one() << m;
        let u = odd.mod_floor(&modulus);
        Ok(Residue2m {
            valuation: v as i64,
            odd: u.to_biguint().expect("mod_floor is nonnegative"),
            mod_exp: m,
            is_zero: false,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn odd_part(&self) -> &BigUint {
        &self.odd
    }

    pub fn mod_exp(&self) -> u32 {
        self.mod_exp
    }

    fn check_same_m(&self, other: &Self) -> Result<()> {
        if self.mod_exp != other.mod_exp {
            return Err(Error::Domain(format!(
                "Residue2m precision mismatch: m={} vs m={}",
                self.mod_exp, other.mod_exp
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_m(other)?;
        if self.is_zero || other.is_zero {
            return Ok(Self::zero(self.mod_exp));
        }
        let modulus = BigUint::one() << self.mod_exp;
        Ok(Residue2m {
            valuation: self.valuation + other.valuation,
            odd: (&self.odd * &other.odd) % modulus,
            mod_exp: self.mod_exp,
            is_zero: false,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_same_m(other)?;
        if other.is_zero {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero {
            return Ok(Self::zero(self.mod_exp));
        }
        let modulus = BigUint::one() << self.mod_exp;
        let inv = inv_odd_mod_pow2(&other.odd, self.mod_exp);
        Ok(Residue2m {
            valuation: self.valuation - other.valuation,
            odd: (&self.odd * inv) % modulus,
            mod_exp: self.mod_exp,
            is_zero: false,
        })
    }

    /// `2^v * u mod 2^t`, defined for `t <= v + m`.
    pub fn value_mod(&self, t: u32) -> Result<BigUint> {
        if self.is_zero {
            return Ok(BigUint::zero());
        }
        if self.valuation < 0 {
            return Err(Error::NegativeValuation(self.valuation));
        }
        if i64::from(t) > self.valuation + i64::from(self.mod_exp) {
            return Err(Error::Domain(format!(
                "value_mod: t={t} exceeds known precision v+m={}",
                self.valuation + i64::from(self.mod_exp)
            )));
        }
        let modulus = BigUint::one() << t;
        if self.valuation >= i64::from(t) {
            return Ok(BigUint::zero());
        }
        Ok((&self.odd << self.valuation as u64) % modulus)
    }

    /// `(acc + 2^v * u) mod 2^m`.
    pub fn add_into(&self, acc: &BigUint) -> Result<BigUint> {
        let modulus = BigUint::one() << self.mod_exp;
        if self.is_zero {
            return Ok(acc % modulus);
        }
        if self.valuation < 0 {
            return Err(Error::NegativeValuation(self.valuation));
        }
        if self.valuation >= i64::from(self.mod_exp) {
            return Ok(acc % modulus);
        }
        let term = (&self.odd << self.valuation as u64) % &modulus;
        Ok((acc + term) % modulus)
    }
}

/// Shorthand for [`Residue2m::of`].
pub fn residue_of(x: &BigInt, m: u32) -> Result<Residue2m> {
    Residue2m::of(x, m)
}

/// Odd part of `x` (sign dropped); `x` must be nonzero.
pub fn odd_part(x: &BigInt) -> Result<BigInt> {
    let v = nu2(x)?;
    Ok(x.abs() >> v)
}

/// `x mod modulus` as a nonnegative representative.
pub fn mod_floor(x: &BigInt, modulus: &BigInt) -> BigInt {
    x.mod_floor(modulus)
}

/// `x` as `u64` when it fits, for small table values.
pub fn to_u64(x: &BigInt) -> Option<u64> {
    if x.sign() == Sign::Minus {
        None
    } else {
        x.to_u64()
    }
}

/// Deterministic primality by trial division.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
