//! Catalan numbers by three independent exact methods.
//!
//! Tables are always indexed by `C_n` (so `C_0 = 1`, `C_1 = 1`, `C_2 = 2`);
//! Euler's polygon count is `T_n = C_{n-2}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::ExactInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// `C_{n+1} = sum_k C_k C_{n-k}`.
    Segner,
    /// Euler's product `2 * 6 * 10 * ... * (4n - 2) / (n + 1)!`.
    Product,
    /// `binom(2n, n) / (n + 1)`.
    Binomial,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Segner, Method::Product, Method::Binomial];

    pub fn name(self) -> &'static str {
        match self {
            Method::Segner => "segner",
            Method::Product => "product",
            Method::Binomial => "binomial",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "segner" => Ok(Method::Segner),
            "product" => Ok(Method::Product),
            "binomial" => Ok(Method::Binomial),
            _ => Err(Error::Parse {
                what: "method",
                input: s.to_string(),
            }),
        }
    }
}

/// `C_0 ..= C_max_index`, with the method that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalanTable {
    method: Method,
    values: Vec<ExactInt>,
}

impl CatalanTable {
    pub fn compute(method: Method, max_index: usize) -> Result<Self> {
        match method {
            Method::Segner => Ok(compute_segner(max_index)),
            Method::Product => compute_product(max_index),
            Method::Binomial => compute_binomial(max_index),
        }
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[ExactInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> Option<&ExactInt> {
        self.values.get(n)
    }

    /// Euler's `T_sides = C_{sides-2}`, for `sides >= 2`.
    pub fn polygon_count(&self, sides: usize) -> Option<&ExactInt> {
        sides.checked_sub(2).and_then(|n| self.values.get(n))
    }

    /// CSV with header `n,C_n`; values are plain decimal integers.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,C_n\n");
        for (n, c) in self.values.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }

    /// JSON array of decimal strings, `["1","1","2",...]`.
    pub fn to_json(&self) -> String {
        let strings: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        serde_json::to_string(&strings).expect("string arrays always serialize")
    }

    /// Parses the output of [`Self::to_json`]; the values must form a valid
    /// table (start at 1, strictly positive).
    pub fn from_json(method: Method, json: &str) -> Result<Self> {
        let strings: Vec<String> = serde_json::from_str(json).map_err(|_| Error::Parse {
            what: "catalan table",
            input: json.chars().take(80).collect(),
        })?;
        let values = strings
            .iter()
            .map(|s| crate::exactnum::parse_int(s))
            .collect::<Result<Vec<_>>>()?;
        if values.first() != Some(&BigInt::one()) || values.iter().any(|v| v <= &BigInt::zero()) {
            return Err(Error::invalid("CatalanTable::from_json", "not a Catalan table"));
        }
        Ok(Self { method, values })
    }
}

/// The Segner convolution `sum_{k=0..n} C_k C_{n-k}` of a prefix
/// `(C_0, ..., C_n)`, which is `C_{n+1}`.
pub fn segner_step(prefix: &[ExactInt]) -> Result<ExactInt> {
    if prefix.is_empty() {
        return Err(Error::invalid("segner_step", "prefix must contain C_0"));
    }
    Ok(convolve(prefix))
}

fn convolve(prefix: &[ExactInt]) -> ExactInt {
    let n = prefix.len() - 1;
    // The convolution is symmetric: pair k with n-k.
    let mut half = BigInt::zero();
    for k in 0..(n + 1) / 2 {
        half += &prefix[k] * &prefix[n - k];
    }
    let mut total = half * 2u32;
    if n % 2 == 0 {
        let mid = &prefix[n / 2];
        total += mid * mid;
    }
    total
}

/// `C_0 ..= C_max_index` from Segner's recursion alone.
pub fn compute_segner(max_index: usize) -> CatalanTable {
    let mut values = Vec::with_capacity(max_index + 1);
    values.push(BigInt::one());
    while values.len() <= max_index {
        let next = convolve(&values);
        values.push(next);
    }
    CatalanTable {
        method: Method::Segner,
        values,
    }
}

/// `C_0 ..= C_max_index` from Euler's product formula
/// `T_n = 2 * 6 * 10 * ... * (4n - 10) / (2 * 3 * ... * (n - 1))`, i.e.
/// `C_n = prod_{j=1..n} (4j - 2) / (n + 1)!`.
///
/// For each `n` the full numerator and denominator products are formed and
/// divided once; a nonzero remainder is an integrity error. `C_0 = 1` is
/// taken as given since Euler's product starts at `T_3`.
pub fn compute_product(max_index: usize) -> Result<CatalanTable> {
    let mut values = Vec::with_capacity(max_index + 1);
    values.push(BigInt::one());
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for n in 1..=max_index as u64 {
        numer *= 4 * n - 2;
        denom *= n + 1;
        values.push(exact_quotient("compute_product", n, &numer, &denom)?);
    }
    Ok(CatalanTable {
        method: Method::Product,
        values,
    })
}

/// `C_0 ..= C_max_index` as `binom(2n, n) / (n + 1)`.
pub fn compute_binomial(max_index: usize) -> Result<CatalanTable> {
    let mut values = Vec::with_capacity(max_index + 1);
    let mut central = BigInt::one();
    values.push(BigInt::one());
    for n in 1..=max_index as u64 {
        // binom(2n, n) = binom(2n-2, n-1) * (2n)(2n-1) / n^2
        central *= (2 * n) * (2 * n - 1);
        central = exact_quotient("compute_binomial", n, &central, &BigInt::from(n * n))?;
        values.push(exact_quotient("compute_binomial", n, &central, &BigInt::from(n + 1))?);
    }
    Ok(CatalanTable {
        method: Method::Binomial,
        values,
    })
}

fn exact_quotient(op: &'static str, n: u64, numer: &BigInt, denom: &BigInt) -> Result<BigInt> {
    let (q, r) = numer.div_rem(denom);
    if !r.is_zero() {
        return Err(Error::Integrity {
            op,
            detail: format!("nonzero remainder {r} at n = {n}"),
        });
    }
    Ok(q)
}

/// One row of a multi-method comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementRow {
    pub n: usize,
    pub values: Vec<(Method, ExactInt)>,
    pub agree: bool,
}

/// Computes every requested method and compares them index by index.
pub fn compare_methods(methods: &[Method], max_index: usize) -> Result<Vec<AgreementRow>> {
    let tables = methods
        .iter()
        .map(|&m| CatalanTable::compute(m, max_index))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..=max_index)
        .map(|n| {
            let values: Vec<(Method, ExactInt)> = tables
                .iter()
                .map(|t| (t.method(), t.values()[n].clone()))
                .collect();
            let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
            AgreementRow { n, values, agree }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[u64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    const FIRST: [u64; 9] = [1, 1, 2, 5, 14, 42, 132, 429, 1430];

    #[test]
    fn segner_first_values() {
        assert_eq!(compute_segner(8).values(), ints(&FIRST).as_slice());
        assert_eq!(compute_segner(0).values(), ints(&[1]).as_slice());
    }

    #[test]
    fn product_first_values() {
        let t = compute_product(8).unwrap();
        assert_eq!(t.values(), ints(&FIRST).as_slice());
        // Euler's T_3 = 1, T_5 = 5, T_10 = 1430
        assert_eq!(t.polygon_count(3), Some(&BigInt::from(1)));
        assert_eq!(t.polygon_count(5), Some(&BigInt::from(5)));
        assert_eq!(t.polygon_count(10), Some(&BigInt::from(1430)));
    }

    #[test]
    fn binomial_first_values() {
        let t = compute_binomial(8).unwrap();
        assert_eq!(t.values(), ints(&FIRST).as_slice());
        assert_eq!(compute_binomial(0).unwrap().values(), ints(&[1]).as_slice());
    }

    #[test]
    fn step_examples() {
        assert_eq!(segner_step(&ints(&[1])).unwrap(), BigInt::from(1));
        assert_eq!(segner_step(&ints(&[1, 1, 2, 5])).unwrap(), BigInt::from(14));
        assert!(segner_step(&[]).is_err());
        let b = compute_binomial(21).unwrap();
        assert_eq!(segner_step(&b.values()[..=20]).unwrap(), b.values()[21]);
    }

    #[test]
    fn step_reproduces_each_next_entry() {
        let t = compute_binomial(60).unwrap();
        for n in 0..60 {
            assert_eq!(segner_step(&t.values()[..=n]).unwrap(), t.values()[n + 1]);
        }
    }

    #[test]
    fn three_methods_agree_to_500() {
        let s = compute_segner(500);
        let p = compute_product(500).unwrap();
        let b = compute_binomial(500).unwrap();
        assert_eq!(s.values(), p.values());
        assert_eq!(s.values(), b.values());
    }

    #[test]
    fn table_is_positive_and_nondecreasing() {
        let t = compute_segner(200);
        assert_eq!(t.values()[0], BigInt::one());
        for w in t.values().windows(2) {
            assert!(w[0] > BigInt::zero() && w[1] >= w[0]);
        }
    }

    #[test]
    fn serializations() {
        let t = compute_segner(4);
        assert_eq!(t.to_csv(), "n,C_n\n0,1\n1,1\n2,2\n3,5\n4,14\n");
        assert_eq!(t.to_json(), r#"["1","1","2","5","14"]"#);
        let back = CatalanTable::from_json(Method::Segner, &t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(CatalanTable::from_json(Method::Segner, r#"["2"]"#).is_err());
    }

    #[test]
    fn agreement_rows() {
        let rows = compare_methods(&Method::ALL, 8).unwrap();
        assert!(rows.iter().all(|r| r.agree));
        assert_eq!(rows[8].values[0].1, BigInt::from(1430));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("euler".parse::<Method>().is_err());
    }
}
