//! Truncated power series with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::catalan::compute_segner;
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, ExactRational};

/// `a_0 + a_1 x + ... + a_N x^N`, meaning nothing about powers above `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoly {
    coeffs: Vec<ExactRational>,
}

impl SeriesPoly {
    /// Series from its coefficients `a_0..=a_N`; `order = len - 1`.
    pub fn new(coeffs: Vec<ExactRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("SeriesPoly::new", "need at least the constant term"));
        }
        Ok(Self { coeffs })
    }

    pub fn from_integers<I, T>(coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&ExactRational> {
        self.coeffs.get(k)
    }

    pub fn set_coeff(&mut self, k: usize, value: ExactRational) -> Result<()> {
        match self.coeffs.get_mut(k) {
            Some(slot) => {
                *slot = value;
                Ok(())
            }
            None => Err(Error::invalid("SeriesPoly::set_coeff", format!("index {k} above order"))),
        }
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::invalid(
                "SeriesPoly::truncate",
                format!("cannot raise order {} to {order}", self.order()),
            ));
        }
        Ok(Self {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_orders(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::invalid(
                op,
                format!("order mismatch: {} vs {}", self.order(), other.order()),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_orders(other, "SeriesPoly::add")?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_orders(other, "SeriesPoly::sub")?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x`, keeping the order (the old top coefficient falls off).
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BigRational::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    /// Cauchy product truncated at the shared order.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_orders(other, "SeriesPoly::multiply")?;
        let coeffs = (0..=self.order())
            .map(|k| {
                (0..=k).fold(BigRational::zero(), |acc, i| {
                    acc + &self.coeffs[i] * &other.coeffs[k - i]
                })
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// `sum_k a_k x^k`, exactly (Horner's rule).
    pub fn evaluate(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// Wire form: `{"order": N, "coeffs": ["num/den", ...]}`.
#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<String>,
}

impl Serialize for SeriesPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeriesPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = SeriesRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "order {} needs {} coefficients, found {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        SeriesPoly::new(coeffs).map_err(D::Error::custom)
    }
}

pub fn multiply(a: &SeriesPoly, b: &SeriesPoly) -> Result<SeriesPoly> {
    a.multiply(b)
}

/// `C(x) = C_0 + C_1 x + ... + C_order x^order`.
pub fn catalan_series(order: usize) -> SeriesPoly {
    SeriesPoly::from_integers(compute_segner(order).values().iter().cloned())
        .expect("a table always has C_0")
}

pub fn evaluate_partial_sum(s: &SeriesPoly, x: &ExactRational) -> ExactRational {
    s.evaluate(x)
}

/// Which functional equation a coefficient failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadraticIdentity {
    /// `x C(x)^2 - C(x) + 1 = 0`.
    CatalanQuadratic,
    /// `T = (1 + x T)^2` with `T(x) = (C(x) - 1) / x`.
    GoldbachSquared,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticFailure {
    pub identity: QuadraticIdentity,
    /// Index into the `C` coefficients of the first coefficient that breaks
    /// the identity.
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldbachReport {
    pub order: usize,
    pub holds: bool,
    /// Earliest failure over both identities.
    pub first_failure: Option<QuadraticFailure>,
    pub failures: Vec<QuadraticFailure>,
}

/// Checks Goldbach's quadratic on the Catalan series through `x^order`.
pub fn verify_goldbach_quadratic(order: usize) -> Result<GoldbachReport> {
    if order == 0 {
        return Err(Error::invalid("verify_goldbach_quadratic", "order must be at least 1"));
    }
    verify_goldbach_for(&catalan_series(order))
}

/// Checks both forms of Goldbach's quadratic on an arbitrary candidate `C`.
///
/// Through order `N` every checked coefficient is fully determined by
/// `C_0..=C_N`: coefficient `k` of `x C^2 - C + 1` involves `C_k` and the
/// product coefficients below `k`, and `T` has order `N - 1`.
pub fn verify_goldbach_for(c: &SeriesPoly) -> Result<GoldbachReport> {
    let order = c.order();
    if order == 0 {
        return Err(Error::invalid("verify_goldbach_for", "order must be at least 1"));
    }
    let mut failures = Vec::new();

    // x C^2 - C + 1
    let residual = c.multiply(c)?.shift_up().sub(c)?;
    let mut residual = residual.coeffs().to_vec();
    residual[0] += BigRational::one();
    if let Some(index) = residual.iter().position(|r| !r.is_zero()) {
        failures.push(QuadraticFailure {
            identity: QuadraticIdentity::CatalanQuadratic,
            index,
        });
    }

    // T = (C - 1)/x has order N - 1; compare T with (1 + xT)^2.
    let t = SeriesPoly::new(c.coeffs()[1..].to_vec())?;
    let one_plus_xt = SeriesPoly::one(t.order()).add(&t.shift_up())?;
    let rhs = one_plus_xt.multiply(&one_plus_xt)?;
    let constant_ok = c.coeffs()[0].is_one();
    let goldbach_index = if !constant_ok {
        Some(0)
    } else {
        t.coeffs()
            .iter()
            .zip(rhs.coeffs())
            .position(|(a, b)| a != b)
            .map(|k| k + 1)
    };
    if let Some(index) = goldbach_index {
        failures.push(QuadraticFailure {
            identity: QuadraticIdentity::GoldbachSquared,
            index,
        });
    }

    let first_failure = failures.iter().min_by_key(|f| f.index).cloned();
    Ok(GoldbachReport {
        order,
        holds: failures.is_empty(),
        first_failure,
        failures,
    })
}
