//! Truncated power series with integer coefficients.
//!
//! Only what the generating-function route needs: truncated products,
//! reciprocals and square roots, all by Newton iteration. The Newton iterates
//! for `1/g` and `sqrt(f)` are rational in general; for a leading coefficient
//! of 1 every iterate is integral, and the halving in the square-root step is
//! checked to be exact.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        Series { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    fn truncated(&self, prec: usize) -> Series {
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().take(prec).cloned().collect();
        coeffs.resize(prec, BigInt::zero());
        Series { coeffs }
    }

    /// Product modulo `x^prec`.
    pub fn mul_trunc(&self, other: &Series, prec: usize) -> Series {
        let mut out = vec![BigInt::zero(); prec];
        for (i, a) in self.coeffs.iter().enumerate().take(prec) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(prec - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    /// `1/self` modulo `x^prec`; the constant term must be 1.
    pub fn inverse(&self, prec: usize) -> Series {
        assert!(self.coeff(0).is_one(), "inverse needs constant term 1");
        let mut g = Series::from_coeffs(vec![BigInt::one()]);
        let mut p = 1;
        while p < prec {
            p = (2 * p).min(prec);
            // g <- g (2 - self g)
            let sg = self.truncated(p).mul_trunc(&g, p);
            let mut corr = sg.coeffs;
            for c in corr.iter_mut() {
                *c = -&*c;
            }
            corr[0] += 2;
            g = g.mul_trunc(&Series { coeffs: corr }, p);
        }
        g.truncated(prec)
    }

    /// `sqrt(self)` modulo `x^prec`; the constant term must be 1.
    pub fn sqrt(&self, prec: usize) -> Series {
        assert!(self.coeff(0).is_one(), "sqrt needs constant term 1");
        let mut y = Series::from_coeffs(vec![BigInt::one()]);
        let mut p = 1;
        while p < prec {
            p = (2 * p).min(prec);
            // y <- (y + self / y) / 2
            let quotient = self.truncated(p).mul_trunc(&y.inverse(p), p);
            let y_ext = y.truncated(p);
            let coeffs = y_ext
                .coeffs
                .iter()
                .zip(&quotient.coeffs)
                .map(|(a, b)| {
                    let (half, rem) = (a + b).div_rem(&BigInt::from(2));
                    assert!(rem.is_zero(), "Newton square-root step left a non-integer coefficient");
                    half
                })
                .collect();
            y = Series { coeffs };
        }
        y.truncated(prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> Series {
        Series::from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn inverse_of_one_minus_x() {
        let inv = s(&[1, -1]).inverse(6);
        assert_eq!(inv, s(&[1, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn sqrt_of_square() {
        // (1 + 2x + 3x^2)^2 = 1 + 4x + 10x^2 + 12x^3 + 9x^4
        let f = s(&[1, 4, 10, 12, 9]);
        assert_eq!(f.sqrt(7), s(&[1, 2, 3, 0, 0, 0, 0]));
    }

    #[test]
    fn sqrt_squares_back() {
        let f = s(&[1, -6, 1]);
        let r = f.sqrt(40);
        let sq = r.mul_trunc(&r, 40);
        let mut want = vec![BigInt::zero(); 40];
        want[0] = 1.into();
        want[1] = (-6).into();
        want[2] = 1.into();
        assert_eq!(sq.coeffs(), &want[..]);
    }
}
