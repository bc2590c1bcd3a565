//! Acceptance suite. Runs every exit criterion at exact (zero) tolerance and
//! prints one PASS/FAIL line per criterion; exits nonzero if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::binomial;
use serde_json::Value;

use hilbert_euler::cli::{self, BothRow, Document};
use hilbert_euler::partitions::{enumerate_partitions, partition_counts};
use hilbert_euler::series::{self, integer_coefficient, TruncatedSeries};
use hilbert_euler::strata::{
    falling_factorial, hilbert_euler_strata, stratum_euler, symmetric_euler_strata,
    tilde_stratum_euler,
};
use hilbert_euler::verify::{injective_tuple_count, multinomial_sum_coeff, polynomial_power_coeff};

const E_MIN: i64 = -6;
const E_MAX: i64 = 24;
const N_MAX: usize = 30;
const ROUTE_BUDGET: Duration = Duration::from_secs(10);
const ORACLE_BUDGET: Duration = Duration::from_secs(1);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1_main_identity() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    for e in E_MIN..=E_MAX {
        let product = series::euler_product(e, N_MAX);
        for n in 0..=N_MAX {
            let expected = integer_coefficient(&product, n).unwrap();
            let actual = hilbert_euler_strata(n, e);
            ensure(expected == actual, || {
                format!("e={e}, n={n}: product {expected} != strata {actual}")
            })?;
            cells += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < ROUTE_BUDGET, || {
        format!("took {elapsed:?}, budget {ROUTE_BUDGET:?}")
    })?;
    Ok(format!("{cells} cells equal in {elapsed:.2?}"))
}

fn criterion_2_punctual() -> Outcome {
    let recurrence = partition_counts(N_MAX);
    let product = series::euler_product(1, N_MAX);
    for (n, count) in recurrence.iter().enumerate() {
        let by_recurrence = BigInt::from(count.clone());
        let by_enumeration = BigInt::from(enumerate_partitions(n).len());
        ensure(by_recurrence == by_enumeration, || {
            format!("n={n}: recurrence {by_recurrence} != enumeration {by_enumeration}")
        })?;
        let strata = hilbert_euler_strata(n, 1);
        let prod = integer_coefficient(&product, n).unwrap();
        ensure(strata == by_recurrence && prod == by_recurrence, || {
            format!("n={n}: strata {strata}, product {prod}, p(n) {by_recurrence}")
        })?;
    }
    Ok(format!(
        "p(0..={N_MAX}) matched by both routes; p({N_MAX}) = {}",
        recurrence[N_MAX]
    ))
}

fn criterion_3_macdonald() -> Outcome {
    let one_minus_q = TruncatedSeries::from_integers([1, -1], N_MAX);
    let mut cells = 0;
    for e in E_MIN..=E_MAX {
        let rhs = series::int_pow(&one_minus_q, -e).unwrap();
        for n in 0..=N_MAX {
            let sym = symmetric_euler_strata(n, e);
            let coeff = integer_coefficient(&rhs, n).unwrap();
            ensure(sym == coeff, || {
                format!("e={e}, n={n}: strata {sym} != series {coeff}")
            })?;
            if e >= 1 {
                let b = BigInt::from(binomial(e as u64 + n as u64 - 1, n as u64));
                ensure(sym == b, || {
                    format!("e={e}, n={n}: strata {sym} != binomial {b}")
                })?;
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells equal (binomial for e >= 1)"))
}

fn criterion_4_falling_factorial() -> Outcome {
    let start = Instant::now();
    for set_size in 0..=8usize {
        for m in 0..=8usize {
            let oracle = BigInt::from(injective_tuple_count(set_size, m));
            let formula = falling_factorial(set_size as i64, m);
            ensure(oracle == formula, || {
                format!("E={set_size}, m={m}: {oracle} != {formula}")
            })?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < ORACLE_BUDGET, || {
        format!("took {elapsed:?}, budget {ORACLE_BUDGET:?}")
    })?;
    Ok(format!("81 cells equal in {elapsed:.2?}"))
}

fn criterion_5_multinomial() -> Outcome {
    for e in 0..=6u32 {
        for n in 0..=12usize {
            let product = integer_coefficient(&series::euler_product(e.into(), n), n).unwrap();
            let poly = polynomial_power_coeff(e, n);
            let multi = multinomial_sum_coeff(e, n);
            ensure(poly == product && multi == product, || {
                format!("e={e}, n={n}: product {product}, polynomial {poly}, multinomial {multi}")
            })?;
        }
    }
    Ok("91 cells equal".into())
}

fn criterion_6_integrality() -> Outcome {
    let mut strata = 0usize;
    for n in 0..=N_MAX {
        let partitions = enumerate_partitions(n);
        for e in E_MIN..=E_MAX {
            for nu in &partitions {
                let s = stratum_euler(nu, e);
                let t = tilde_stratum_euler(nu, e);
                ensure(s.is_integer() && t.is_integer(), || {
                    format!("ν={nu}, e={e}: stratum {s}, tilde {t}")
                })?;
                strata += 1;
            }
        }
    }
    Ok(format!("{strata} (partition, e) pairs with denominator 1"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn parse_values(v: &Value) -> Vec<BigInt> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|x| x.as_str().expect("decimal string").parse().unwrap())
        .collect()
}

fn criterion_7_golden() -> Outcome {
    let text = std::fs::read_to_string(fixture("golden.json")).map_err(|e| e.to_string())?;
    let golden: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;

    for key in ["e24_first_terms", "e0_constant"] {
        let entry = &golden[key];
        let e = entry["euler_char"].as_i64().unwrap();
        let expected = parse_values(&entry["values"]);
        let order = expected.len() - 1;
        let product = series::euler_product(e, order).to_integers().unwrap();
        let strata: Vec<BigInt> = (0..=order).map(|n| hilbert_euler_strata(n, e)).collect();
        ensure(product == expected, || {
            format!("{key}: product {product:?}")
        })?;
        ensure(strata == expected, || format!("{key}: strata {strata:?}"))?;
    }

    let entry = &golden["e2_n2"];
    let e = entry["euler_char"].as_i64().unwrap();
    let n = entry["n"].as_u64().unwrap() as usize;
    let expected: BigInt = entry["value"].as_str().unwrap().parse().unwrap();
    let product = integer_coefficient(&series::euler_product(e, n), n).unwrap();
    ensure(
        product == expected && hilbert_euler_strata(n, e) == expected,
        || format!("e2_n2: product {product}"),
    )?;

    let csv = std::fs::read_to_string(fixture("compute_e24_n3_product.csv")).unwrap();
    let (code, out) = run_in_process(&[
        "-e", "24", "-n", "3", "--mode", "product", "--format", "csv",
    ]);
    ensure(code == 0 && out == csv, || {
        format!("CLI csv differs from fixture:\n{out}")
    })?;
    Ok("e=24, e=2 and e=0 fixtures matched".into())
}

fn run_in_process(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hilbert-euler").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn criterion_8_cli() -> Outcome {
    for e in E_MIN..=E_MAX {
        let e_arg = e.to_string();
        let n_arg = N_MAX.to_string();
        let (code, out) = run_in_process(&[
            "compute",
            "--euler-char",
            &e_arg,
            "--max-n",
            &n_arg,
            "--mode",
            "both",
            "--format",
            "json",
        ]);
        ensure(code == 0, || format!("compute e={e} exited {code}"))?;
        let doc: Document<BothRow> = serde_json::from_str(&out).map_err(|err| err.to_string())?;
        ensure(
            doc.euler_char == e && doc.max_n == N_MAX && doc.mode == "both",
            || {
                format!(
                    "e={e}: header {} {} {}",
                    doc.euler_char, doc.max_n, doc.mode
                )
            },
        )?;
        ensure(doc.rows.len() == N_MAX + 1, || {
            format!("e={e}: {} rows", doc.rows.len())
        })?;
        let product = series::euler_product(e, N_MAX).to_integers().unwrap();
        for (row, expected) in doc.rows.iter().zip(&product) {
            let strata: BigInt = row.strata.parse().map_err(|_| "bad strata".to_string())?;
            let prod: BigInt = row.product.parse().map_err(|_| "bad product".to_string())?;
            ensure(
                row.matches && strata == *expected && prod == *expected,
                || format!("e={e}, n={}: row {row:?}, expected {expected}", row.n),
            )?;
        }
    }

    let bin = env!("CARGO_BIN_EXE_hilbert-euler");
    let status = Command::new(bin)
        .arg("verify")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.code() == Some(0), || {
        format!(
            "verify exited {:?}:\n{}",
            status.status.code(),
            String::from_utf8_lossy(&status.stdout)
        )
    })?;
    let summary = String::from_utf8_lossy(&status.stdout);
    ensure(summary.contains("all passed"), || {
        "verify summary missing".into()
    })?;

    let control = Command::new(bin)
        .args([
            "verify",
            "--grid-e",
            "0..6",
            "--grid-n",
            "0..12",
            "--negative-control",
            "fiber-off-by-one",
        ])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(control.status.code() == Some(1), || {
        format!("negative control exited {:?}", control.status.code())
    })?;
    Ok(
        "compute rows all match=true and round-trip; verify exits 0; negative control exits 1"
            .into(),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "1 main identity, e in [-6,24], n in [0,30]",
            criterion_1_main_identity,
        ),
        ("2 punctual specialization e = 1", criterion_2_punctual),
        ("3 symmetric-product formula", criterion_3_macdonald),
        (
            "4 falling factorial vs injective tuples",
            criterion_4_falling_factorial,
        ),
        (
            "5 polynomial-power and multinomial expansions",
            criterion_5_multinomial,
        ),
        ("6 stratum integrality", criterion_6_integrality),
        ("7 golden values", criterion_7_golden),
        ("8 CLI contract", criterion_8_cli),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
