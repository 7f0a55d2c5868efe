//! Brute-force counters taken straight from the combinatorial definitions.
//! They share no code with the closed formulas they are used to check.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Largest semilength accepted by [`dyck_paths_with_peaks`].
pub const DYCK_ENUMERATION_CAP: u64 = 12;
/// Largest length accepted by [`alternating_permutation_count`].
pub const PERMUTATION_ENUMERATION_CAP: u64 = 10;

/// Lattice paths `(0,0) -> (n,n)` with steps `E=(1,0)`, `N=(0,1)`, `D=(1,1)`
/// that never go above `y = x`, counted by a row-by-row DP over `(i, j)`.
pub fn schroeder_paths_dp(n: u64) -> BigInt {
    schroeder_paths_dp_table(n).pop().expect("table has n+1 entries")
}

/// Path counts to every diagonal point `(i, i)`, `i = 0..=max`, from a single
/// sweep; the count at `(i, i)` is `S_i`.
pub fn schroeder_paths_dp_table(max: u64) -> Vec<BigInt> {
    let n = max as usize;
    let mut diagonal = Vec::with_capacity(n + 1);
    // prev[j] holds the count for (i-1, j) while row i is filled in cur.
    let mut prev: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for i in 0..=n {
        let mut cur = vec![BigInt::zero(); n + 1];
        for j in 0..=i {
            if i == 0 {
                cur[0] = BigInt::one();
                continue;
            }
            let mut w = BigInt::zero();
            if j < i {
                w += &prev[j]; // E from (i-1, j)
            }
            if j > 0 {
                w += &cur[j - 1]; // N from (i, j-1)
                w += &prev[j - 1]; // D from (i-1, j-1)
            }
            cur[j] = w;
        }
        diagonal.push(cur[i].clone());
        prev = cur;
    }
    diagonal
}

/// Schröder paths of order `n` with exactly `d` diagonal steps.
pub fn schroeder_paths_by_diagonals(n: u64, d: u64) -> BigInt {
    if d > n {
        return BigInt::zero();
    }
    let n = n as usize;
    let d = d as usize;
    // ways[i][j][t]: paths to (i, j) using t diagonal steps.
    let zero_plane = || vec![vec![BigInt::zero(); d + 1]; n + 1];
    let mut prev = zero_plane();
    for i in 0..=n {
        let mut cur = zero_plane();
        for j in 0..=i {
            for t in 0..=d {
                if i == 0 && j == 0 {
                    if t == 0 {
                        cur[0][0] = BigInt::one();
                    }
                    continue;
                }
                let mut w = BigInt::zero();
                if i > 0 && j < i {
                    w += &prev[j][t];
                }
                if j > 0 {
                    w += &cur[j - 1][t];
                    if i > 0 && t > 0 {
                        w += &prev[j - 1][t - 1];
                    }
                }
                cur[j][t] = w;
            }
        }
        prev = cur;
    }
    prev[n][d].clone()
}

/// Dyck paths of semilength `n` with exactly `k` peaks (an up-step directly
/// followed by a down-step), by exhaustive backtracking.
pub fn dyck_paths_with_peaks(n: u64, k: u64) -> Result<u64> {
    if n > DYCK_ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "Dyck enumeration is capped at n <= {DYCK_ENUMERATION_CAP}, got {n}"
        )));
    }
    if k == 0 || k > n {
        return Ok(0);
    }
    Ok(peak_histogram(n)[k as usize])
}

/// `hist[k]` = number of Dyck paths of semilength `n` with `k` peaks.
pub fn peak_histogram(n: u64) -> Vec<u64> {
    fn walk(ups: u64, downs: u64, n: u64, last_up: bool, peaks: usize, hist: &mut [u64]) {
        if ups == n && downs == n {
            hist[peaks] += 1;
            return;
        }
        if ups < n {
            walk(ups + 1, downs, n, true, peaks, hist);
        }
        if downs < ups {
            walk(ups, downs + 1, n, false, peaks + usize::from(last_up), hist);
        }
    }
    let mut hist = vec![0u64; n as usize + 1];
    walk(0, 0, n, false, 0, &mut hist);
    hist
}

/// Permutations of `1..=len` with `s1 < s2 > s3 < ... `, by backtracking.
pub fn alternating_permutation_count(len: u64) -> Result<u64> {
    if len % 2 == 1 {
        return Err(Error::Domain(format!(
            "alternating permutation count is taken over even lengths, got {len}"
        )));
    }
    if len > PERMUTATION_ENUMERATION_CAP {
        return Err(Error::Resource(format!(
            "permutation enumeration is capped at length {PERMUTATION_ENUMERATION_CAP}, got {len}"
        )));
    }
    fn extend(pos: usize, len: usize, last: usize, used: &mut [bool]) -> u64 {
        if pos == len {
            return 1;
        }
        let mut count = 0;
        for v in 1..=len {
            if used[v] {
                continue;
            }
            // position pos (0-based) must rise from pos-1 when pos is odd
            let ok = pos == 0 || if pos % 2 == 1 { v > last } else { v < last };
            if ok {
                used[v] = true;
                count += extend(pos + 1, len, v, used);
                used[v] = false;
            }
        }
        count
    }
    let len = len as usize;
    let mut used = vec![false; len + 1];
    Ok(extend(0, len, 0, &mut used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use crate::sequences::{catalan, euler_numbers, narayana, schroeder_via_catalan_sum};

    #[test]
    fn path_dp_examples() {
        assert_eq!(schroeder_paths_dp(0), 1.into());
        assert_eq!(schroeder_paths_dp(1), 2.into());
        assert_eq!(schroeder_paths_dp(4), 90.into());
        for (n, s) in schroeder_paths_dp_table(60).iter().enumerate() {
            assert_eq!(s, &schroeder_via_catalan_sum(n as u64));
        }
        assert_eq!(schroeder_paths_dp(17), schroeder_paths_dp_table(17)[17]);
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(schroeder_paths_by_diagonals(5, 5), 1.into());
        assert_eq!(schroeder_paths_by_diagonals(2, 0), 2.into());
        // 5 insertion slots for the diagonal step around each of C_2 = 2 Dyck words
        assert_eq!(schroeder_paths_by_diagonals(3, 1), 10.into());
        assert_eq!(schroeder_paths_by_diagonals(3, 4), 0.into());
    }

    #[test]
    fn diagonals_decompose_schroeder() {
        for n in 0..=12u64 {
            let mut total = BigInt::zero();
            for d in 0..=n {
                let k = n - d;
                let by_dp = schroeder_paths_by_diagonals(n, d);
                assert_eq!(by_dp, binomial(n + k, 2 * k as i64) * catalan(k), "n={n} d={d}");
                assert_eq!(by_dp, binomial(n + k, d as i64) * catalan(k));
                total += by_dp;
            }
            assert_eq!(total, schroeder_paths_dp(n));
        }
    }

    #[test]
    fn dyck_examples() {
        assert_eq!(dyck_paths_with_peaks(3, 1).unwrap(), 1);
        assert_eq!(dyck_paths_with_peaks(4, 2).unwrap(), 6);
        assert_eq!(dyck_paths_with_peaks(4, 4).unwrap(), 1);
        assert_eq!(dyck_paths_with_peaks(4, 0).unwrap(), 0);
        assert_eq!(dyck_paths_with_peaks(4, 5).unwrap(), 0);
        assert_eq!(peak_histogram(4).iter().sum::<u64>(), 14);
        assert!(dyck_paths_with_peaks(13, 2).is_err());
    }

    #[test]
    fn dyck_matches_narayana() {
        for n in 1..=12u64 {
            let hist = peak_histogram(n);
            for k in 1..=n {
                assert_eq!(BigInt::from(hist[k as usize]), narayana(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(alternating_permutation_count(0).unwrap(), 1);
        assert_eq!(alternating_permutation_count(2).unwrap(), 1);
        assert_eq!(alternating_permutation_count(4).unwrap(), 5);
        assert_eq!(alternating_permutation_count(8).unwrap(), 1385);
        assert!(matches!(alternating_permutation_count(3), Err(Error::Domain(_))));
        assert!(matches!(alternating_permutation_count(12), Err(Error::Resource(_))));
    }

    #[test]
    fn alternating_matches_euler() {
        let e = euler_numbers(10);
        for len in (0..=10u64).step_by(2) {
            let signed = if len % 4 == 0 { e[len as usize].clone() } else { -e[len as usize].clone() };
            assert_eq!(BigInt::from(alternating_permutation_count(len).unwrap()), signed);
        }
    }
}
