//! Truncated power series with exact rational coefficients.
//!
//! Used to obtain the Taylor coefficients of `x·τ(x)` at the origin, whose
//! even derivatives drive the power-series tail of the large-color
//! expansion.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::knot::TorusKnot;

/// `Σ_{i < order} c_i x^i + O(x^order)`. Coefficients at or beyond `order`
/// are unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    /// Truncation order (exclusive).
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Result<&BigRational> {
        self.coeffs.get(i).ok_or(Error::OrderExceeded {
            needed: i,
            order: self.order(),
        })
    }

    /// Index of the first nonzero coefficient, `None` if all known
    /// coefficients vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divide by `x^v`, dropping `v` known coefficients. The first `v`
    /// coefficients must be zero.
    pub fn shift_down(&self, v: usize) -> Result<Self> {
        if v > self.order() {
            return Err(Error::OrderExceeded {
                needed: v,
                order: self.order(),
            });
        }
        if self.coeffs[..v].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument(format!(
                "series is not divisible by x^{v}"
            )));
        }
        Ok(Self::new(self.coeffs[v..].to_vec()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..order.min(self.order())].to_vec())
    }

    /// Horner evaluation of the known part in double precision.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order())
    }
}

/// Exact fraction string `numerator/denominator`, denominator always shown.
pub fn fraction_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `sinh(ax)` to the given order: `a^{2n+1}/(2n+1)!` at odd powers.
pub fn sinh_series(a: u64, order: usize) -> Result<RationalSeries> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!("order {order} < 2")));
    }
    let a = BigInt::from(a);
    let mut coeffs = Vec::with_capacity(order);
    let mut power = BigInt::one();
    let mut fact = BigInt::one();
    for i in 0..order {
        if i > 0 {
            power *= &a;
            fact *= BigInt::from(i);
        }
        coeffs.push(if i % 2 == 1 {
            BigRational::new(power.clone(), fact.clone())
        } else {
            BigRational::zero()
        });
    }
    Ok(RationalSeries::new(coeffs))
}

/// Cauchy product truncated to the smaller order.
pub fn ser_mul(a: &RationalSeries, b: &RationalSeries) -> RationalSeries {
    let n = a.order().min(b.order());
    let mut out = vec![BigRational::zero(); n];
    for (i, ai) in a.coeffs.iter().take(n).enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().take(n - i).enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    RationalSeries::new(out)
}

/// Multiplicative inverse; the constant term must be nonzero.
pub fn ser_inv(a: &RationalSeries) -> Result<RationalSeries> {
    let n = a.order();
    let c0 = match a.coeffs.first() {
        Some(c) if !c.is_zero() => c.clone(),
        _ => return Err(Error::ZeroLeadingCoefficient(n)),
    };
    let inv0 = c0.recip();
    let mut out: Vec<BigRational> = Vec::with_capacity(n);
    out.push(inv0.clone());
    for i in 1..n {
        let mut acc = BigRational::zero();
        for j in 1..=i {
            if !a.coeffs[j].is_zero() {
                acc += &a.coeffs[j] * &out[i - j];
            }
        }
        out.push(-acc * &inv0);
    }
    Ok(RationalSeries::new(out))
}

/// `a / b` where `b = x^v·u` with `u(0) ≠ 0`; `a` must be divisible by
/// `x^v`.
pub fn ser_div(a: &RationalSeries, b: &RationalSeries) -> Result<RationalSeries> {
    let v = b.valuation().ok_or(Error::ZeroLeadingCoefficient(b.order()))?;
    let num = a.shift_down(v)?;
    let den = b.shift_down(v)?;
    Ok(ser_mul(&num, &ser_inv(&den)?))
}

/// Series of `x·τ(x) = 2 sinh(mx) sinh(px) / (sinh(mpx)/x)` to `order`.
///
/// Odd coefficients vanish and the series starts at `x²`.
pub fn x_tau_series(knot: TorusKnot, order: usize) -> Result<RationalSeries> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "order must be even and at least 4 (got {order})"
        )));
    }
    let sm = sinh_series(knot.m() as u64, order + 1)?;
    let sp = sinh_series(knot.p() as u64, order + 1)?;
    let num = ser_mul(&sm, &sp).scale(&BigRational::from_integer(2.into())).truncate(order);
    // sinh(mpx)/x has constant term mp: divide by the known valuation 1.
    let den = sinh_series(knot.mp(), order + 1)?.shift_down(1)?;
    Ok(ser_mul(&num, &ser_inv(&den)?))
}

/// `(2n)!` times the coefficient of `x^{2n}`.
pub fn even_derivative(s: &RationalSeries, n: usize) -> Result<BigRational> {
    let idx = 2 * n;
    if idx >= s.order() {
        return Err(Error::OrderExceeded {
            needed: idx,
            order: s.order(),
        });
    }
    Ok(&s.coeffs[idx] * BigRational::from_integer(factorial(idx)))
}

/// Ratio `c_{2n+2}/c_{2n}` of consecutive even coefficients, as a float.
pub fn coefficient_ratios(s: &RationalSeries) -> Vec<f64> {
    (1..)
        .map(|n| 2 * n)
        .take_while(|&i| i + 2 < s.order())
        .filter_map(|i| {
            let a = &s.coeffs[i];
            let b = &s.coeffs[i + 2];
            if a.is_zero() {
                None
            } else {
                (b / a).abs().to_f64()
            }
        })
        .collect()
}
