//! Euler characteristics by summation over partition strata.
//!
//! The symmetric product `X^(n)` splits into strata `S^n_ν X`, one per
//! partition `ν` of `n`, and the Hilbert scheme `X^[n]` splits into their
//! preimages `S̃^n_ν X`. Over each stratum the preimage is a locally trivial
//! bundle with fiber a product of punctual Hilbert schemes, whose Euler
//! characteristic is `∏_j p(ν_j)`. Additivity over the strata gives
//!
//! ```text
//! e(X^[n]) = Σ_ν ∏_i p(i)^{α_i} / ∏_i α_i! · e(e−1)…(e−λ(ν)+1)
//! e(X^(n)) = Σ_ν                1 / ∏_i α_i! · e(e−1)…(e−λ(ν)+1)
//! ```
//!
//! Every formula is evaluated verbatim for negative `e` as well; the values
//! are then formal, and what is checked is agreement with the series route.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::partitions::{enumerate_partitions, partition_counts, Partition};
use crate::series;

/// A surface, reduced to its topological Euler characteristic, together with
/// the largest number of points of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceModel {
    pub euler_char: i64,
    pub max_n: usize,
}

impl SurfaceModel {
    pub fn new(euler_char: i64, max_n: usize) -> Self {
        Self { euler_char, max_n }
    }

    /// `e(X^[n])` for `n = 0..=max_n` by stratum summation.
    pub fn hilbert_by_strata(&self) -> Vec<BigInt> {
        (0..=self.max_n)
            .map(|n| hilbert_euler_strata(n, self.euler_char))
            .collect()
    }

    /// `e(X^[n])` for `n = 0..=max_n` from the Euler product.
    pub fn hilbert_by_product(&self) -> Vec<BigInt> {
        series::euler_product(self.euler_char, self.max_n)
            .to_integers()
            .expect("Euler product has integer coefficients")
    }

    /// `e(X^(n))` for `n = 0..=max_n` by stratum summation.
    pub fn symmetric_by_strata(&self) -> Vec<BigInt> {
        (0..=self.max_n)
            .map(|n| symmetric_euler_strata(n, self.euler_char))
            .collect()
    }

    /// Per-stratum breakdown for every `n = 0..=max_n`, in partition
    /// enumeration order.
    pub fn breakdown(&self) -> Vec<(usize, Vec<StratumReport>)> {
        let counts = partition_counts(self.max_n);
        (0..=self.max_n)
            .map(|n| {
                let reports = enumerate_partitions(n)
                    .into_iter()
                    .map(|nu| StratumReport::with_counts(nu, self.euler_char, &counts))
                    .collect();
                (n, reports)
            })
            .collect()
    }
}

/// `e(e−1)…(e−m+1)`; the empty product `m = 0` is 1.
pub fn falling_factorial(e: i64, m: usize) -> BigInt {
    let e = BigInt::from(e);
    (0..m).fold(BigInt::one(), |acc, i| acc * (&e - BigInt::from(i)))
}

fn factorial(m: usize) -> BigInt {
    (2..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `e(S^n_ν X) = e(e−1)…(e−λ(ν)+1) / ∏_i α_i!`.
///
/// The quotient is always an integer, but it is returned as an exact
/// rational so callers can confirm that.
pub fn stratum_euler(nu: &Partition, e: i64) -> BigRational {
    let (numer, denom) = stratum_fraction(nu, e);
    BigRational::new(numer, denom)
}

// Numerator and denominator of e(S^n_ν X) before any reduction.
fn stratum_fraction(nu: &Partition, e: i64) -> (BigInt, BigInt) {
    let denom = nu
        .to_multiplicity()
        .alpha()
        .iter()
        .fold(BigInt::one(), |acc, &a| acc * factorial(a));
    (falling_factorial(e, nu.length()), denom)
}

/// `e(F_ν) = ∏_j p(ν_j)`, the Euler characteristic of the fiber of the
/// Hilbert–Chow map over a cycle of type `ν`.
pub fn fiber_euler(nu: &Partition) -> BigUint {
    let counts = partition_counts(nu.parts().first().copied().unwrap_or(0));
    fiber_euler_with_counts(nu, &counts)
}

/// [`fiber_euler`] against a precomputed table `counts[m] = p(m)`.
pub fn fiber_euler_with_counts(nu: &Partition, counts: &[BigUint]) -> BigUint {
    nu.parts()
        .iter()
        .fold(BigUint::one(), |acc, &part| acc * &counts[part])
}

/// `e(S̃^n_ν X) = e(F_ν) · e(S^n_ν X)`.
pub fn tilde_stratum_euler(nu: &Partition, e: i64) -> BigRational {
    let fiber = BigRational::from_integer(fiber_euler(nu).into());
    fiber * stratum_euler(nu, e)
}

/// Euler numbers of one stratum and of its preimage in the Hilbert scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumReport {
    pub partition: Partition,
    pub stratum_euler: BigRational,
    pub fiber_euler: BigUint,
    pub tilde_euler: BigRational,
}

impl StratumReport {
    pub fn new(partition: Partition, e: i64) -> Self {
        let max_part = partition.parts().first().copied().unwrap_or(0);
        Self::with_counts(partition, e, &partition_counts(max_part))
    }

    pub fn with_counts(partition: Partition, e: i64, counts: &[BigUint]) -> Self {
        let stratum_euler = stratum_euler(&partition, e);
        let fiber_euler = fiber_euler_with_counts(&partition, counts);
        let tilde_euler = BigRational::from_integer(fiber_euler.clone().into()) * &stratum_euler;
        Self {
            partition,
            stratum_euler,
            fiber_euler,
            tilde_euler,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.stratum_euler.is_integer() && self.tilde_euler.is_integer()
    }
}

/// `Σ_{ν ∈ P(n)} weight(ν) · e(S^n_ν X)`, summed in parallel over the
/// partitions of `n`.
///
/// With `weight = e(F_ν)` this is `e(X^[n])`; with `weight = 1` it is
/// `e(X^(n))`. Each term is divided exactly; a term that leaves a remainder
/// makes the whole sum fall back to rational arithmetic, so the result is
/// exact either way.
pub fn weighted_strata_sum<W>(n: usize, e: i64, weight: W) -> BigRational
where
    W: Fn(&Partition) -> BigInt + Sync,
{
    let terms: Vec<(BigInt, BigInt)> = enumerate_partitions(n)
        .par_iter()
        .map(|nu| {
            let (numer, denom) = stratum_fraction(nu, e);
            (weight(nu) * numer, denom)
        })
        .collect();
    let mut integral = BigInt::zero();
    let mut fractional = BigRational::zero();
    for (numer, denom) in terms {
        let (q, r) = numer.div_rem(&denom);
        if r.is_zero() {
            integral += q;
        } else {
            fractional += BigRational::new(numer, denom);
        }
    }
    fractional + BigRational::from_integer(integral)
}

fn expect_integer(value: BigRational, what: &str, n: usize, e: i64) -> BigInt {
    assert!(
        value.is_integer(),
        "{what} for n = {n}, e = {e} is not an integer: {value}"
    );
    value.to_integer()
}

/// `e(X^[n]) = Σ_ν e(S̃^n_ν X)`; `n = 0` gives 1.
pub fn hilbert_euler_strata(n: usize, e: i64) -> BigInt {
    let counts = partition_counts(n);
    let sum = weighted_strata_sum(n, e, |nu| fiber_euler_with_counts(nu, &counts).into());
    expect_integer(sum, "Hilbert scheme stratum sum", n, e)
}

/// `e(X^(n)) = Σ_ν e(S^n_ν X)`; `n = 0` gives 1.
pub fn symmetric_euler_strata(n: usize, e: i64) -> BigInt {
    let sum = weighted_strata_sum(n, e, |_| BigInt::one());
    expect_integer(sum, "symmetric product stratum sum", n, e)
}
