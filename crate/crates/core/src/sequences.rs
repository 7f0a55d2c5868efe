//! Exact Schröder, little Schröder, Catalan, Narayana and Euler numbers,
//! each available through more than one independent route.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{binomial, binomial_row};
use crate::error::{Error, Result};
use crate::oracles;
use crate::series::Series;

/// `S_n = sum_k C(n+k, 2k) C(2k, k) / (k+1)`, i.e. Catalan numbers weighted by
/// the number of ways to place the diagonal steps.
pub fn schroeder_via_catalan_sum(n: u64) -> BigInt {
    catalan_sum_terms(n).into_iter().sum()
}

/// Terms `C(n+k, 2k) * C_k` for `k = 0..=n`.
pub fn catalan_sum_terms(n: u64) -> Vec<BigInt> {
    let mut terms = Vec::with_capacity(n as usize + 1);
    let mut placements = BigInt::one(); // C(n+k, 2k)
    let mut cat = BigInt::one(); // C_k
    for k in 0..=n {
        terms.push(&placements * &cat);
        if k == n {
            break;
        }
        placements *= (n + k + 1) * (n - k);
        placements /= (2 * k + 1) * (2 * k + 2);
        cat *= 2 * (2 * k + 1);
        cat /= k + 2;
    }
    terms
}

/// `S_n = sum_k C(n, k) C(n+k, k) / (k+1)`.
pub fn schroeder_via_binomial_sum(n: u64) -> BigInt {
    binomial_sum_terms(n).into_iter().sum()
}

/// Terms `C(n, k) C(n+k, k) / (k+1)` for `k = 0..=n`.
pub fn binomial_sum_terms(n: u64) -> Vec<BigInt> {
    let mut terms = Vec::with_capacity(n as usize + 1);
    let mut lower = BigInt::one(); // C(n, k)
    let mut upper = BigInt::one(); // C(n+k, k)
    for k in 0..=n {
        terms.push((&lower * &upper) / (k + 1));
        if k == n {
            break;
        }
        lower *= n - k;
        lower /= k + 1;
        upper *= n + k + 1;
        upper /= k + 1;
    }
    terms
}

/// `S_n = sum_{k=1}^n T(n, k)`; `S_0 = 1` by convention (the sum is empty).
pub fn schroeder_via_narayana_sum(n: u64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let row = binomial_row(n);
    (1..=n as usize)
        .map(|k| {
            let prod = &row[k] * &row[k - 1];
            let (q, r) = prod.div_rem(&BigInt::from(n));
            debug_assert!(r.is_zero());
            q << k
        })
        .sum()
}

/// `S_0..=S_max` as coefficients of `(1 - x - sqrt(1 - 6x + x^2)) / (2x)`.
pub fn schroeder_via_gf(max: u64) -> Vec<BigInt> {
    let prec = max as usize + 2;
    let disc = Series::from_coeffs(vec![1.into(), (-6).into(), 1.into()]);
    let root = disc.sqrt(prec);
    (0..=max as usize)
        .map(|n| {
            // coefficient of x^(n+1) in 1 - x - sqrt(...)
            let mut c = -root.coeff(n + 1);
            if n == 0 {
                c -= 1;
            }
            let (q, r) = c.div_rem(&BigInt::from(2));
            assert!(r.is_zero(), "generating function produced a non-integer");
            q
        })
        .collect()
}

/// Default exact route.
pub fn schroeder(n: u64) -> BigInt {
    schroeder_via_catalan_sum(n)
}

/// `s_n = S_n / 2`, defined for `n >= 1`.
pub fn little_schroeder(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain(
            "little Schröder number s_n needs n >= 1 (S_0 = 1 is odd)".into(),
        ));
    }
    Ok(schroeder(n) >> 1)
}

/// `C_k = C(2k, k) / (k+1)`.
pub fn catalan(k: u64) -> BigInt {
    binomial(2 * k, k as i64) / (k + 1)
}

/// `N(n, k) = C(n, k) C(n, k-1) / n`, by exact division. Zero outside `1 <= k <= n`.
pub fn narayana(n: u64, k: u64) -> BigInt {
    if n == 0 || k == 0 || k > n {
        return BigInt::zero();
    }
    let prod = binomial(n, k as i64) * binomial(n, k as i64 - 1);
    let (q, r) = prod.div_rem(&BigInt::from(n));
    debug_assert!(r.is_zero());
    q
}

/// `N(n, k) = C(n+1, k) C(n-1, k-1) - C(n, k) C(n, k-1)`, division free.
pub fn narayana_by_difference(n: u64, k: u64) -> BigInt {
    if n == 0 || k == 0 || k > n {
        return BigInt::zero();
    }
    let k = k as i64;
    binomial(n + 1, k) * binomial(n - 1, k - 1) - binomial(n, k) * binomial(n, k - 1)
}

/// Which formula a Narayana row is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NarayanaRoute {
    Division,
    Difference,
}

/// `[N(n, 1), ..., N(n, n)]` from precomputed binomial rows.
pub fn narayana_row(n: u64, route: NarayanaRoute) -> Vec<BigInt> {
    if n == 0 {
        return Vec::new();
    }
    let mid = binomial_row(n);
    match route {
        NarayanaRoute::Division => (1..=n as usize)
            .map(|k| (&mid[k] * &mid[k - 1]) / n)
            .collect(),
        NarayanaRoute::Difference => {
            let above = binomial_row(n + 1);
            let below = binomial_row(n - 1);
            (1..=n as usize)
                .map(|k| &above[k] * &below[k - 1] - &mid[k] * &mid[k - 1])
                .collect()
        }
    }
}

/// `T(n, k) = N(n, k) 2^k`; zero for `k = 0` or `k > n`.
pub fn t_term(n: u64, k: u64) -> BigInt {
    narayana(n, k) << k
}

/// Zigzag (up/down) numbers `A_0..=A_max` from the boustrophedon triangle.
pub fn zigzag_numbers(max: u64) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for n in 1..=max as usize {
        let mut next = Vec::with_capacity(n + 1);
        next.push(BigInt::zero());
        for k in 1..=n {
            let v = &next[k - 1] + &row[n - k];
            next.push(v);
        }
        out.push(next[n].clone());
        row = next;
    }
    out
}

/// Euler numbers `E_0..=E_max` of `2 / (e^x + e^-x)`: `E_odd = 0` and
/// `E_2m = (-1)^m A_2m`.
pub fn euler_numbers(max: u64) -> Vec<BigInt> {
    zigzag_numbers(max)
        .into_iter()
        .enumerate()
        .map(|(i, a)| match i % 4 {
            0 => a,
            2 => -a,
            _ => BigInt::zero(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceName {
    Schroeder,
    LittleSchroeder,
    Catalan,
    NarayanaRow,
    Euler,
}

impl SequenceName {
    pub fn as_str(&self) -> &'static str {
        match self {
            SequenceName::Schroeder => "schroeder",
            SequenceName::LittleSchroeder => "little_schroeder",
            SequenceName::Catalan => "catalan",
            SequenceName::NarayanaRow => "narayana_row",
            SequenceName::Euler => "euler",
        }
    }
}

impl fmt::Display for SequenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SequenceName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('-', "_").as_str() {
            "schroeder" => SequenceName::Schroeder,
            "little_schroeder" => SequenceName::LittleSchroeder,
            "catalan" => SequenceName::Catalan,
            "narayana_row" => SequenceName::NarayanaRow,
            "euler" => SequenceName::Euler,
            _ => return Err(Error::Unknown(s.to_string())),
        })
    }
}

impl Serialize for SequenceName {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Computation route for [`schroeder_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchroederMethod {
    CatalanSum,
    BinomialSum,
    NarayanaSum,
    GeneratingFunction,
    PathDp,
}

impl SchroederMethod {
    pub const ALL: [SchroederMethod; 5] = [
        SchroederMethod::CatalanSum,
        SchroederMethod::BinomialSum,
        SchroederMethod::NarayanaSum,
        SchroederMethod::GeneratingFunction,
        SchroederMethod::PathDp,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SchroederMethod::CatalanSum => "catalan-sum",
            SchroederMethod::BinomialSum => "binomial-sum",
            SchroederMethod::NarayanaSum => "narayana-sum",
            SchroederMethod::GeneratingFunction => "gf",
            SchroederMethod::PathDp => "path-dp",
        }
    }
}

impl FromStr for SchroederMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SchroederMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Unknown(s.to_string()))
    }
}

/// A prefix of a named sequence together with the route that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceTable {
    pub name: SequenceName,
    pub method: String,
    pub first_index: u64,
    #[serde(serialize_with = "serialize_decimal_vec")]
    pub values: Vec<BigInt>,
}

fn serialize_decimal_vec<S: Serializer>(
    values: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

impl SequenceTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    /// CSV with header `index,value`.
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["index", "value"])?;
        for (i, v) in self.values.iter().enumerate() {
            w.write_record([(self.first_index + i as u64).to_string(), v.to_string()])?;
        }
        w.flush()
    }
}

/// `S_0..S_{count-1}` by the given route.
pub fn schroeder_table(count: u64, method: SchroederMethod) -> SequenceTable {
    let values = match method {
        SchroederMethod::GeneratingFunction => {
            if count == 0 {
                Vec::new()
            } else {
                schroeder_via_gf(count - 1)
            }
        }
        SchroederMethod::CatalanSum => (0..count).map(schroeder_via_catalan_sum).collect(),
        SchroederMethod::BinomialSum => (0..count).map(schroeder_via_binomial_sum).collect(),
        SchroederMethod::NarayanaSum => (0..count).map(schroeder_via_narayana_sum).collect(),
        SchroederMethod::PathDp => {
            if count == 0 {
                Vec::new()
            } else {
                oracles::schroeder_paths_dp_table(count - 1)
            }
        }
    };
    SequenceTable {
        name: SequenceName::Schroeder,
        method: method.as_str().to_string(),
        first_index: 0,
        values,
    }
}

/// `s_1..s_count` halved from the given Schröder route.
pub fn little_schroeder_table(count: u64, method: SchroederMethod) -> SequenceTable {
    let big = schroeder_table(count + 1, method);
    SequenceTable {
        name: SequenceName::LittleSchroeder,
        method: method.as_str().to_string(),
        first_index: 1,
        values: big.values.into_iter().skip(1).map(|v| v >> 1).collect(),
    }
}

pub fn catalan_table(count: u64) -> SequenceTable {
    SequenceTable {
        name: SequenceName::Catalan,
        method: "binomial".into(),
        first_index: 0,
        values: (0..count).map(catalan).collect(),
    }
}

pub fn euler_table(count: u64) -> SequenceTable {
    SequenceTable {
        name: SequenceName::Euler,
        method: "boustrophedon".into(),
        first_index: 0,
        values: if count == 0 {
            Vec::new()
        } else {
            euler_numbers(count - 1)
        },
    }
}

/// First `count` entries of the Narayana row `N(n, 1..=n)`.
pub fn narayana_row_table(n: u64, count: u64, route: NarayanaRoute) -> Result<SequenceTable> {
    if count > n {
        return Err(Error::Domain(format!(
            "narayana row {n} has only {n} entries, {count} requested"
        )));
    }
    let mut values = narayana_row(n, route);
    values.truncate(count as usize);
    Ok(SequenceTable {
        name: SequenceName::NarayanaRow,
        method: match route {
            NarayanaRoute::Division => "division",
            NarayanaRoute::Difference => "difference",
        }
        .into(),
        first_index: 1,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    const SCHROEDER: [i64; 11] = [1, 2, 6, 22, 90, 394, 1806, 8558, 41586, 206098, 1037718];

    #[test]
    fn catalan_sum_examples() {
        assert_eq!(schroeder_via_catalan_sum(0), 1.into());
        assert_eq!(schroeder_via_catalan_sum(3), 22.into());
        assert_eq!(schroeder_via_catalan_sum(6), 1806.into());
        for (n, &s) in SCHROEDER.iter().enumerate() {
            assert_eq!(schroeder_via_binomial_sum(n as u64), s.into());
        }
    }

    #[test]
    fn narayana_sum_examples() {
        assert_eq!(schroeder_via_narayana_sum(0), 1.into());
        assert_eq!(schroeder_via_narayana_sum(2), 6.into());
        assert_eq!(schroeder_via_narayana_sum(3), 22.into());
        assert_eq!(schroeder_via_narayana_sum(9), 206098.into());
    }

    #[test]
    fn gf_examples() {
        assert_eq!(schroeder_via_gf(0), ints(&[1]));
        assert_eq!(schroeder_via_gf(1), ints(&[1, 2]));
        assert_eq!(schroeder_via_gf(5), ints(&[1, 2, 6, 22, 90, 394]));
        assert_eq!(schroeder_via_gf(10), ints(&SCHROEDER));
    }

    #[test]
    fn forms_are_termwise_equal() {
        for n in 0..=500u64 {
            assert_eq!(catalan_sum_terms(n), binomial_sum_terms(n), "n={n}");
        }
        for n in (0..=500u64).step_by(41) {
            for k in 0..=n {
                let ki = k as i64;
                assert_eq!(
                    binomial(n + k, 2 * ki) * binomial(2 * k, ki),
                    binomial(n, ki) * binomial(n + k, ki)
                );
            }
        }
    }

    #[test]
    fn routes_agree_up_to_300() {
        let gf = schroeder_via_gf(300);
        for n in 0..=300u64 {
            let a = schroeder_via_catalan_sum(n);
            assert_eq!(a, schroeder_via_narayana_sum(n), "n={n}");
            assert_eq!(a, gf[n as usize], "n={n}");
        }
    }

    #[test]
    fn schroeder_even_for_positive_n() {
        for (n, s) in schroeder_via_gf(2000).iter().enumerate().skip(1) {
            assert!(s.is_even(), "S_{n} is odd");
        }
    }

    #[test]
    fn little_examples() {
        assert_eq!(little_schroeder(1).unwrap(), 1.into());
        assert_eq!(little_schroeder(4).unwrap(), 45.into());
        assert_eq!(little_schroeder(7).unwrap(), 4279.into());
        assert!(matches!(little_schroeder(0), Err(Error::Domain(_))));
    }

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), 1.into());
        assert_eq!(catalan(4), 14.into());
        assert_eq!(catalan(7), 429.into());
    }

    #[test]
    fn narayana_examples() {
        assert_eq!(narayana(4, 2), 6.into());
        assert_eq!(narayana(4, 1), 1.into());
        assert_eq!(narayana(5, 3), 20.into());
        assert_eq!(narayana(5, 0), 0.into());
        assert_eq!(narayana(5, 6), 0.into());
        assert_eq!(narayana_by_difference(5, 3), 20.into());
    }

    #[test]
    fn narayana_routes_agree_up_to_500() {
        for n in 1..=500u64 {
            assert_eq!(
                narayana_row(n, NarayanaRoute::Division),
                narayana_row(n, NarayanaRoute::Difference),
                "row {n}"
            );
        }
        for n in (1..=500u64).step_by(23) {
            for k in 1..=n {
                assert_eq!(narayana(n, k), narayana_by_difference(n, k));
            }
        }
    }

    #[test]
    fn narayana_rows_sum_to_catalan() {
        for n in 1..=200u64 {
            let sum: BigInt = narayana_row(n, NarayanaRoute::Division).into_iter().sum();
            assert_eq!(sum, catalan(n), "n={n}");
        }
    }

    #[test]
    fn t_term_examples_and_divisibility() {
        assert_eq!(t_term(2, 2), 4.into());
        assert_eq!(t_term(3, 2), 12.into());
        for n in 1..50 {
            assert_eq!(t_term(n, 1), 2.into());
        }
        assert_eq!(t_term(3, 4), 0.into());
        for n in 1..=200u64 {
            for (i, nk) in narayana_row(n, NarayanaRoute::Division).into_iter().enumerate() {
                let k = i as u64 + 1;
                let t = nk << k;
                assert!((&t % (BigInt::one() << k)).is_zero());
            }
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_numbers(2), ints(&[1, 0, -1]));
        assert_eq!(euler_numbers(4)[4], 5.into());
        assert_eq!(euler_numbers(8)[8], 1385.into());
        assert_eq!(euler_numbers(6)[6], (-61).into());
    }

    #[test]
    fn euler_parity_and_signs() {
        let e = euler_numbers(60);
        for (n, v) in e.iter().enumerate() {
            if n % 2 == 1 {
                assert!(v.is_zero());
            } else {
                let signed = if n % 4 == 0 { v.clone() } else { -v };
                assert!(signed > BigInt::zero(), "E_{n}");
            }
        }
    }

    #[test]
    fn tables() {
        let t = schroeder_table(6, SchroederMethod::CatalanSum);
        assert_eq!(t.values, ints(&[1, 2, 6, 22, 90, 394]));
        for m in SchroederMethod::ALL {
            assert_eq!(schroeder_table(8, m).values, ints(&SCHROEDER[..8]), "{m:?}");
        }
        assert_eq!(
            little_schroeder_table(8, SchroederMethod::GeneratingFunction).values,
            ints(&[1, 3, 11, 45, 197, 903, 4279, 20793])
        );
        assert_eq!(euler_table(3).values, ints(&[1, 0, -1]));
        assert_eq!(catalan_table(5).values, ints(&[1, 1, 2, 5, 14]));
        assert!(narayana_row_table(3, 4, NarayanaRoute::Division).is_err());
        assert_eq!(
            narayana_row_table(4, 4, NarayanaRoute::Difference).unwrap().values,
            ints(&[1, 6, 6, 1])
        );
    }

    #[test]
    fn table_serialization() {
        let t = euler_table(3);
        assert_eq!(
            t.to_json(),
            r#"{"name":"euler","method":"boustrophedon","first_index":0,"values":["1","0","-1"]}"#
        );
        let mut buf = Vec::new();
        schroeder_table(3, SchroederMethod::CatalanSum).write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "index,value\n0,1\n1,2\n2,6\n");
        assert_eq!("little-schroeder".parse::<SequenceName>().unwrap(), SequenceName::LittleSchroeder);
        assert!("fibonacci".parse::<SequenceName>().is_err());
    }
}
