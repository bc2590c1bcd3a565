//! Integer partitions in parts form and multiplicity form, plus the
//! partition-counting function `p(n)`.
//!
//! Partitions of `n` index the strata of the symmetric product and of the
//! Hilbert scheme, so enumeration order here fixes the row order of every
//! stratum-level report downstream.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("partition parts must be positive, found a zero part at position {0}")]
    ZeroPart(usize),
    #[error("partition parts must be non-increasing, but part {index} ({value}) exceeds its predecessor")]
    NotNonIncreasing { index: usize, value: usize },
    #[error("multiplicity vector of length {len} has weight {weight}; expected weight {len}")]
    WeightMismatch { len: usize, weight: usize },
}

/// A partition `ν_1 ≥ ν_2 ≥ … ≥ ν_k > 0` of its weight `n = Σ ν_j`.
///
/// The unique partition of zero has no parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
    weight: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        for (index, window) in parts.windows(2).enumerate() {
            if window[1] > window[0] {
                return Err(PartitionError::NotNonIncreasing {
                    index: index + 1,
                    value: window[1],
                });
            }
        }
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(PartitionError::ZeroPart(pos));
        }
        Ok(Self::from_sorted(parts))
    }

    /// The empty partition of zero.
    pub fn empty() -> Self {
        Self {
            parts: Vec::new(),
            weight: 0,
        }
    }

    fn from_sorted(parts: Vec<usize>) -> Self {
        let weight = parts.iter().sum();
        Self { parts, weight }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The weight `n`.
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Number of parts, `λ(ν)`.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn to_multiplicity(&self) -> MultiplicityForm {
        let mut alpha = vec![0; self.weight];
        for &part in &self.parts {
            alpha[part - 1] += 1;
        }
        MultiplicityForm { alpha }
    }

    pub fn from_multiplicity(form: &MultiplicityForm) -> Self {
        let mut parts = Vec::with_capacity(form.length());
        for (i, &count) in form.alpha.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i + 1, count));
        }
        Self::from_sorted(parts)
    }
}

/// Renders parts joined by `+`, e.g. `2+1+1`. The empty partition renders as
/// the empty string.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

/// Dense multiplicity vector `(α_1, …, α_n)` where `α_i` counts the parts
/// equal to `i`. The vector length is the weight `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiplicityForm {
    alpha: Vec<usize>,
}

impl MultiplicityForm {
    /// Builds a multiplicity form from `alpha[i - 1] = α_i`, checking that
    /// `Σ i·α_i` equals `alpha.len()`.
    pub fn new(alpha: Vec<usize>) -> Result<Self, PartitionError> {
        let weight = alpha
            .iter()
            .enumerate()
            .map(|(i, &a)| (i + 1) * a)
            .sum::<usize>();
        if weight != alpha.len() {
            return Err(PartitionError::WeightMismatch {
                len: alpha.len(),
                weight,
            });
        }
        Ok(Self { alpha })
    }

    /// `α_1..α_n` as a slice indexed from zero.
    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    /// `α_i` for `1 ≤ i`; zero beyond the weight.
    pub fn multiplicity(&self, i: usize) -> usize {
        assert!(i >= 1, "multiplicities are indexed from 1");
        self.alpha.get(i - 1).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> usize {
        self.alpha.len()
    }

    pub fn length(&self) -> usize {
        self.alpha.iter().sum()
    }
}

/// Lazily walks the partitions of `n` in reverse-lexicographic order, largest
/// first part first.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Partitions {
    pub fn new(n: usize) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Self {
            current: Some(first),
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.take()?;
        self.current = successor(&current);
        Some(Partition::from_sorted(current))
    }
}

// Next partition in reverse-lex order: take the rightmost part larger than 1,
// lower it by one, and refill the freed amount greedily with that new bound.
fn successor(parts: &[usize]) -> Option<Vec<usize>> {
    let pivot = parts.iter().rposition(|&p| p > 1)?;
    let ones = parts.len() - pivot - 1;
    let bound = parts[pivot] - 1;
    let mut next = parts[..pivot].to_vec();
    next.push(bound);
    let mut remaining = ones + 1;
    while remaining > 0 {
        let piece = remaining.min(bound);
        next.push(piece);
        remaining -= piece;
    }
    Some(next)
}

/// Every partition of `n`, each exactly once, in reverse-lexicographic order.
/// `n = 0` yields the single empty partition.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    Partitions::new(n).collect()
}

/// Table `p(0), …, p(max_n)` from Euler's pentagonal-number recurrence
/// `p(n) = Σ_{k≥1} (−1)^{k+1} [p(n − k(3k−1)/2) + p(n − k(3k+1)/2)]`.
pub fn partition_counts(max_n: usize) -> Vec<BigUint> {
    let mut table: Vec<BigInt> = Vec::with_capacity(max_n + 1);
    table.push(BigInt::one());
    for n in 1..=max_n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let first = k * (3 * k - 1) / 2;
            if first > n {
                break;
            }
            let second = k * (3 * k + 1) / 2;
            let mut term = table[n - first].clone();
            if second <= n {
                term += &table[n - second];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        table.push(acc);
    }
    table
        .into_iter()
        .map(|v| v.to_biguint().expect("partition counts are non-negative"))
        .collect()
}

/// `p(n)` without enumerating partitions.
pub fn count_p_recurrence(n: usize) -> BigUint {
    partition_counts(n).swap_remove(n)
}
