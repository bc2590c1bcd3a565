//! Brute-force oracles and the cross-route verification harness.
//!
//! The oracles here do not reuse the code paths they check: tuples are
//! enumerated rather than counted by formula, polynomial powers are expanded
//! by repeated schoolbook multiplication, partition counts come from explicit
//! enumeration, and multiplicity vectors are generated directly instead of
//! via the partition enumerator.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::partitions::{enumerate_partitions, partition_counts, Partitions};
use crate::series::{self, TruncatedSeries};
use crate::strata::{
    falling_factorial, fiber_euler_with_counts, hilbert_euler_strata, symmetric_euler_strata,
    weighted_strata_sum, StratumReport,
};

const FALLING_FACTORIAL_BOUND: usize = 8;
const POLYNOMIAL_E_BOUND: i64 = 6;
const POLYNOMIAL_N_BOUND: usize = 12;

/// Number of `m`-tuples of pairwise distinct elements of an `E`-element set,
/// found by walking the tuple tree and discarding every branch that repeats
/// an element.
pub fn injective_tuple_count(set_size: usize, m: usize) -> u64 {
    fn walk(set_size: usize, m: usize, prefix: &mut Vec<usize>) -> u64 {
        if prefix.len() == m {
            return 1;
        }
        let mut count = 0;
        for x in 0..set_size {
            if prefix.contains(&x) {
                continue;
            }
            prefix.push(x);
            count += walk(set_size, m, prefix);
            prefix.pop();
        }
        count
    }
    walk(set_size, m, &mut Vec::with_capacity(m))
}

// p(0..=max_n) by counting enumerated partitions.
fn enumerated_counts(max_n: usize) -> Vec<BigInt> {
    (0..=max_n)
        .map(|s| BigInt::from(Partitions::new(s).count()))
        .collect()
}

fn schoolbook_product(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficient of `q^n` in the polynomial `(Σ_{s=0}^{n} p(s) q^s)^e`, which
/// agrees with the Euler product in every degree up to `n`.
pub fn polynomial_power_coeff(e: u32, n: usize) -> BigInt {
    let base = enumerated_counts(n);
    let mut power = vec![BigInt::one()];
    for _ in 0..e {
        power = schoolbook_product(&power, &base);
    }
    power.get(n).cloned().unwrap_or_default()
}

/// `Σ_k Σ_{α : Σα_i = k, Σ iα_i = n} ∏ p(i)^{α_i} / ∏ α_i! · e(e−1)…(e−k+1)`,
/// evaluated directly over multiplicity vectors grouped by length `k`.
///
/// `k` runs from 0, so `n = 0` yields 1 from the empty vector and `n ≥ 1`
/// is unaffected.
pub fn multinomial_sum_coeff(e: u32, n: usize) -> BigInt {
    let counts = enumerated_counts(n);
    let mut by_length = vec![BigRational::zero(); n + 1];
    let mut alpha = vec![0usize; n];
    collect_multiplicities(n, 1, &mut alpha, &counts, &mut by_length);

    let e = BigInt::from(e);
    let mut total = BigRational::zero();
    for (k, weight) in by_length.into_iter().enumerate() {
        let mut descending = BigInt::one();
        for i in 0..k {
            descending *= &e - BigInt::from(i);
        }
        total += weight * BigRational::from_integer(descending);
    }
    assert!(total.is_integer(), "multinomial sum is not an integer");
    total.to_integer()
}

// Fills alpha[i-1..] so that Σ iα_i uses up `remaining`, then records the
// monomial weight ∏ p(i)^{α_i}/α_i! under its length Σα_i.
fn collect_multiplicities(
    remaining: usize,
    i: usize,
    alpha: &mut [usize],
    counts: &[BigInt],
    by_length: &mut [BigRational],
) {
    if remaining == 0 {
        let mut numer = BigInt::one();
        let mut denom = BigInt::one();
        for (idx, &a) in alpha.iter().enumerate() {
            for j in 1..=a {
                numer *= &counts[idx + 1];
                denom *= BigInt::from(j);
            }
        }
        let length: usize = alpha.iter().sum();
        by_length[length] += BigRational::new(numer, denom);
        return;
    }
    if i > alpha.len() {
        return;
    }
    for a in 0..=remaining / i {
        alpha[i - 1] = a;
        collect_multiplicities(remaining - a * i, i + 1, alpha, counts, by_length);
    }
    alpha[i - 1] = 0;
}

fn pascal_binomial(rows: &[Vec<BigUint>], top: usize, bottom: usize) -> BigUint {
    rows[top].get(bottom).cloned().unwrap_or_default()
}

fn pascal_rows(max: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for r in 1..=max {
        let prev = &rows[r - 1];
        let mut row = vec![BigUint::one(); r + 1];
        for c in 1..r {
            row[c] = &prev[c - 1] + &prev[c];
        }
        rows.push(row);
    }
    rows
}

/// A deliberate corruption of the stratum route, used to show that the
/// harness can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Fiber factor `p(m) + 1` in place of `p(m)` for every part `m ≥ 2`.
    FiberOffByOne,
    /// Omits the `1/∏α_i!` symmetry factor.
    DropSymmetryFactor,
}

impl Mutation {
    pub const ALL: [Mutation; 2] = [Mutation::FiberOffByOne, Mutation::DropSymmetryFactor];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::FiberOffByOne => "fiber-off-by-one",
            Mutation::DropSymmetryFactor => "drop-symmetry-factor",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Mutation::ALL.iter().map(|m| m.name()).collect();
                format!(
                    "unknown mutation `{s}`; expected one of {}",
                    names.join(", ")
                )
            })
    }
}

/// `e(X^[n])` via strata, optionally corrupted.
pub fn strata_route(n: usize, e: i64, mutation: Option<Mutation>) -> BigInt {
    let counts = partition_counts(n);
    match mutation {
        None => hilbert_euler_strata(n, e),
        Some(Mutation::FiberOffByOne) => weighted_strata_sum(n, e, |nu| {
            nu.parts()
                .iter()
                .map(|&m| BigInt::from(counts[m].clone()) + u32::from(m >= 2))
                .product()
        })
        .to_integer(),
        Some(Mutation::DropSymmetryFactor) => enumerate_partitions(n)
            .iter()
            .map(|nu| {
                BigInt::from(fiber_euler_with_counts(nu, &counts))
                    * falling_factorial(e, nu.length())
            })
            .sum(),
    }
}

/// Parameter grid for [`run_all`]. Ranges are inclusive; a range whose start
/// exceeds its end is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridConfig {
    pub e_range: RangeInclusive<i64>,
    pub n_range: RangeInclusive<usize>,
    pub mutation: Option<Mutation>,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            e_range: -6..=24,
            n_range: 0..=30,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub cell: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl Check {
    fn compare<T: fmt::Display + PartialEq>(
        name: &str,
        cell: String,
        expected: T,
        actual: T,
    ) -> Self {
        Self {
            name: name.to_owned(),
            passed: expected == actual,
            cell,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    fn from_checks(checks: Vec<Check>) -> Self {
        let failed = checks.iter().filter(|c| !c.passed).count();
        let summary = Summary {
            passed: checks.len() - failed,
            failed,
        };
        Self { checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failed == 0 {
            write!(f, "all passed ({} checks)", self.passed)
        } else {
            write!(f, "{} failed, {} passed", self.failed, self.passed)
        }
    }
}

fn cell(e: i64, n: usize) -> String {
    format!("e={e},n={n}")
}

fn clip<T: Copy + Ord>(range: &RangeInclusive<T>, lo: T, hi: T) -> RangeInclusive<T> {
    (*range.start()).max(lo)..=(*range.end()).min(hi)
}

/// Runs every identity check across the grid. Checks are grouped by name and
/// ordered by `(e, n)` within each group.
pub fn run_all(grid: &GridConfig) -> VerificationReport {
    let es: Vec<i64> = grid.e_range.clone().collect();
    let ns: Vec<usize> = grid.n_range.clone().collect();
    let cells: Vec<(i64, usize)> = es
        .iter()
        .flat_map(|&e| ns.iter().map(move |&n| (e, n)))
        .collect();
    let order = ns.last().copied().unwrap_or(0);
    let mutation = grid.mutation;

    let mut checks = Vec::new();
    if cells.is_empty() {
        return VerificationReport::from_checks(checks);
    }

    let products: Vec<TruncatedSeries> = es
        .par_iter()
        .map(|&e| series::euler_product(e, order))
        .collect();
    let one_minus_q = TruncatedSeries::from_integers([1, -1], order);
    let symmetric_series: Vec<TruncatedSeries> = es
        .par_iter()
        .map(|&e| series::int_pow(&one_minus_q, -e).expect("1 - q is invertible"))
        .collect();
    let e_index = |e: i64| (e - es[0]) as usize;

    // Stratum route against the Euler product.
    checks.par_extend(cells.par_iter().map(|&(e, n)| {
        let product = series::integer_coefficient(&products[e_index(e)], n).unwrap();
        Check::compare(
            "route_equality",
            cell(e, n),
            product,
            strata_route(n, e, mutation),
        )
    }));

    // Every per-stratum Euler number is an integer.
    checks.par_extend(cells.par_iter().map(|&(e, n)| {
        let counts = partition_counts(n);
        let non_integral = enumerate_partitions(n)
            .into_iter()
            .filter(|nu| !StratumReport::with_counts(nu.clone(), e, &counts).is_integral())
            .count();
        Check::compare("integrality", cell(e, n), 0, non_integral)
    }));

    // Symmetric products: stratum sum against (1 − q)^{−e}.
    checks.par_extend(cells.par_iter().map(|&(e, n)| {
        let expected = series::integer_coefficient(&symmetric_series[e_index(e)], n).unwrap();
        Check::compare(
            "macdonald_series",
            cell(e, n),
            expected,
            symmetric_euler_strata(n, e),
        )
    }));

    // And against binomial(e + n − 1, n) from Pascal's triangle when e ≥ 1.
    let positive: Vec<(i64, usize)> = cells.iter().copied().filter(|&(e, _)| e >= 1).collect();
    if !positive.is_empty() {
        let max_top = positive
            .iter()
            .map(|&(e, n)| (e as usize + n).saturating_sub(1))
            .max()
            .unwrap_or(0);
        let rows = pascal_rows(max_top);
        checks.par_extend(positive.par_iter().map(|&(e, n)| {
            let top = (e as usize + n).saturating_sub(1);
            let expected = if n == 0 {
                BigUint::one()
            } else {
                pascal_binomial(&rows, top, n)
            };
            Check::compare(
                "macdonald_binomial",
                cell(e, n),
                BigInt::from(expected),
                symmetric_euler_strata(n, e),
            )
        }));
    }

    // e = 1: both routes give p(n), counted two ways.
    if grid.e_range.contains(&1) {
        let recurrence = partition_counts(order);
        let enumerated = enumerated_counts(order);
        let p_rec = |n: usize| BigInt::from(recurrence[n].clone());
        for &n in &ns {
            checks.push(Check::compare(
                "partition_count",
                cell(1, n),
                enumerated[n].clone(),
                p_rec(n),
            ));
        }
        checks.par_extend(ns.par_iter().map(|&n| {
            Check::compare(
                "punctual_strata",
                cell(1, n),
                enumerated[n].clone(),
                strata_route(n, 1, mutation),
            )
        }));
        for &n in &ns {
            let product = series::integer_coefficient(&products[e_index(1)], n).unwrap();
            checks.push(Check::compare(
                "punctual_product",
                cell(1, n),
                p_rec(n),
                product,
            ));
        }
    }

    // Falling factorial against injective tuple enumeration.
    let set_sizes = clip(&grid.e_range, 0, FALLING_FACTORIAL_BOUND as i64);
    let lengths = clip(&grid.n_range, 0, FALLING_FACTORIAL_BOUND);
    for set_size in set_sizes {
        for m in lengths.clone() {
            checks.push(Check::compare(
                "falling_factorial_oracle",
                format!("E={set_size},m={m}"),
                BigInt::from(injective_tuple_count(set_size as usize, m)),
                falling_factorial(set_size, m),
            ));
        }
    }

    // Polynomial-power and multinomial expansions on the small grid.
    let small: Vec<(i64, usize)> = cells
        .iter()
        .copied()
        .filter(|&(e, n)| (0..=POLYNOMIAL_E_BOUND).contains(&e) && n <= POLYNOMIAL_N_BOUND)
        .collect();
    checks.par_extend(small.par_iter().map(|&(e, n)| {
        let product = series::integer_coefficient(&series::euler_product(e, n), n).unwrap();
        Check::compare(
            "polynomial_power_oracle",
            cell(e, n),
            polynomial_power_coeff(e as u32, n),
            product,
        )
    }));
    checks.par_extend(small.par_iter().filter(|&&(_, n)| n >= 1).map(|&(e, n)| {
        Check::compare(
            "multinomial_oracle",
            cell(e, n),
            multinomial_sum_coeff(e as u32, n),
            strata_route(n, e, mutation),
        )
    }));

    VerificationReport::from_checks(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injective_tuple_examples() {
        assert_eq!(injective_tuple_count(3, 2), 6);
        assert_eq!(injective_tuple_count(5, 0), 1);
        assert_eq!(injective_tuple_count(2, 3), 0);
        assert_eq!(injective_tuple_count(0, 0), 1);
        assert_eq!(injective_tuple_count(0, 1), 0);
    }

    #[test]
    fn polynomial_power_examples() {
        assert_eq!(polynomial_power_coeff(0, 0), BigInt::from(1));
        assert_eq!(polynomial_power_coeff(1, 5), BigInt::from(7));
        assert_eq!(polynomial_power_coeff(2, 2), BigInt::from(5));
        assert_eq!(polynomial_power_coeff(0, 3), BigInt::from(0));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_sum_coeff(1, 3), BigInt::from(3));
        assert_eq!(multinomial_sum_coeff(0, 1), BigInt::from(0));
        assert_eq!(multinomial_sum_coeff(24, 1), BigInt::from(24));
        assert_eq!(multinomial_sum_coeff(24, 2), BigInt::from(324));
        assert_eq!(multinomial_sum_coeff(5, 0), BigInt::from(1));
    }

    #[test]
    fn mutation_names_round_trip() {
        for m in Mutation::ALL {
            assert_eq!(m.name().parse::<Mutation>(), Ok(m));
        }
        assert!("nope".parse::<Mutation>().is_err());
    }

    #[test]
    fn empty_grid_is_an_empty_pass() {
        let grid = GridConfig {
            e_range: RangeInclusive::new(1, 0),
            n_range: 0..=5,
            mutation: None,
        };
        let report = run_all(&grid);
        assert!(report.checks.is_empty());
        assert!(report.all_passed());
    }

    #[test]
    fn single_cell_grid() {
        let grid = GridConfig {
            e_range: 1..=1,
            n_range: 0..=0,
            mutation: None,
        };
        let report = run_all(&grid);
        assert!(
            report.all_passed(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );
        assert!(report.checks.iter().all(|c| c.cell.ends_with("0")));
    }

    #[test]
    fn small_grid_passes() {
        let grid = GridConfig {
            e_range: -2..=4,
            n_range: 0..=8,
            mutation: None,
        };
        let report = run_all(&grid);
        assert!(
            report.all_passed(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );
        assert_eq!(report, run_all(&grid));
    }

    #[test]
    fn mutations_are_caught() {
        for mutation in Mutation::ALL {
            let grid = GridConfig {
                e_range: 0..=4,
                n_range: 0..=6,
                mutation: Some(mutation),
            };
            let report = run_all(&grid);
            assert!(!report.all_passed(), "{mutation} went unnoticed");
            let failure = report.failures().next().unwrap();
            assert_ne!(failure.expected, failure.actual);
            assert!(failure.cell.starts_with("e="));
        }
    }
}
