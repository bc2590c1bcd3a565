//! Truncated formal power series in `q` over exact rationals.
//!
//! Every series carries its truncation order `N` and stores exactly `N + 1`
//! coefficients. Binary operations require equal orders; mixing orders is an
//! error rather than a silent re-truncation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
    #[error("coefficient index {index} exceeds truncation order {order}")]
    IndexOutOfRange { index: usize, order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigRational::one(), 0, order)
    }

    /// `c·q^degree`, or zero when `degree > order`.
    pub fn monomial(c: BigRational, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c;
        }
        s
    }

    /// Builds a series from leading coefficients, zero-padding or truncating
    /// to `order + 1` entries.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let coeffs = coeffs
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        Self::from_coeffs(coeffs, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, s: usize) -> Result<&BigRational, SeriesError> {
        self.coeffs.get(s).ok_or(SeriesError::IndexOutOfRange {
            index: s,
            order: self.order(),
        })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if any coefficient has a non-unit
    /// denominator.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

fn check_orders(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<(), SeriesError> {
    if a.order() != b.order() {
        return Err(SeriesError::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    Ok(())
}

pub fn add(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    check_orders(a, b)?;
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
    Ok(TruncatedSeries { coeffs })
}

/// Cauchy product truncated at the common order.
pub fn mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    check_orders(a, b)?;
    Ok(mul_unchecked(a, b))
}

fn mul_unchecked(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let order = a.order();
    let mut out = TruncatedSeries::zero(order);
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs[..=order - i].iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out.coeffs[i + j] += x * y;
        }
    }
    out
}

/// Multiplicative inverse via `b_0 = 1/a_0`, `b_s = −(1/a_0) Σ_{i=1}^{s} a_i b_{s−i}`.
pub fn inverse(a: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let a0 = &a.coeffs[0];
    if a0.is_zero() {
        return Err(SeriesError::NotInvertible);
    }
    let inv_a0 = a0.recip();
    let order = a.order();
    let mut b = Vec::with_capacity(order + 1);
    b.push(inv_a0.clone());
    for s in 1..=order {
        let mut acc = BigRational::zero();
        for i in 1..=s {
            let ai = &a.coeffs[i];
            if !ai.is_zero() {
                acc += ai * &b[s - i];
            }
        }
        b.push(-(acc * &inv_a0));
    }
    Ok(TruncatedSeries { coeffs: b })
}

/// `a^e` for any signed exponent. Non-negative powers use square-and-multiply;
/// negative powers raise the inverse. `a^0` is one even when `a` has zero
/// constant term.
pub fn int_pow(a: &TruncatedSeries, e: i64) -> Result<TruncatedSeries, SeriesError> {
    let base = if e < 0 { inverse(a)? } else { a.clone() };
    Ok(pow_unsigned(base, e.unsigned_abs()))
}

fn pow_unsigned(mut base: TruncatedSeries, mut exp: u64) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(base.order());
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_unchecked(&acc, &base);
        }
        exp >>= 1;
        if exp > 0 {
            base = mul_unchecked(&base, &base);
        }
    }
    acc
}

/// `∏_{k=1}^{N} (1 − q^k)^{−e}` truncated at order `N`. Factors with `k > N`
/// are `1 + O(q^{N+1})` and cannot change the result.
///
/// The coefficient of `q^n` is the Euler characteristic of the Hilbert scheme
/// of `n` points on a surface with Euler characteristic `e`.
pub fn euler_product(e: i64, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for k in 1..=order {
        let mut factor = TruncatedSeries::one(order);
        factor.coeffs[k] = -BigRational::one();
        let power = int_pow(&factor, -e).expect("1 - q^k has unit constant term");
        acc = mul_unchecked(&acc, &power);
    }
    assert!(
        acc.is_integral(),
        "Euler product coefficients must be integers (e = {e}, order = {order})"
    );
    acc
}

/// `c_s` of `a`.
pub fn coefficient(a: &TruncatedSeries, s: usize) -> Result<BigRational, SeriesError> {
    a.coefficient(s).cloned()
}

/// Integer coefficient `c_s`; panics if `c_s` is not an integer.
pub fn integer_coefficient(a: &TruncatedSeries, s: usize) -> Result<BigInt, SeriesError> {
    let c = a.coefficient(s)?;
    assert!(c.is_integer(), "coefficient {s} is not an integer: {c}");
    Ok(c.to_integer())
}
