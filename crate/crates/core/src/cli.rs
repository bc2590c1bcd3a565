//! Command-line front end.
//!
//! `compute` (the default) tabulates `n ↦ e(X^[n])` or related numbers for a
//! single Euler characteristic; `verify` runs the identity checks over a
//! grid. JSON and CSV output are stable; the table format is for people.
//!
//! Exit codes: 0 on success, 1 on a route mismatch or failed check, 2 on a
//! usage error.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::strata::SurfaceModel;
use crate::verify::{self, GridConfig, Mutation, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hilbert-euler",
    version,
    about = "Euler characteristics of Hilbert schemes of points on a surface",
    subcommand_negates_reqs = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,

    #[command(flatten)]
    pub compute: ComputeArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate Euler characteristics for one surface (default).
    Compute(ComputeArgs),
    /// Check every identity over a grid of Euler characteristics and n.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    /// Topological Euler characteristic e(X) of the surface; may be negative.
    #[arg(short = 'e', long, required = true, allow_negative_numbers = true)]
    pub euler_char: Option<i64>,

    /// Largest number of points n.
    #[arg(short = 'n', long, default_value_t = 20)]
    pub max_n: usize,

    #[arg(long, value_enum, default_value_t = Mode::Both)]
    pub mode: Mode,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Inclusive range of Euler characteristics, e.g. `-6..24`.
    #[arg(long, default_value = "-6..24", allow_hyphen_values = true)]
    pub grid_e: GridRange<i64>,

    /// Inclusive range of n, e.g. `0..30`.
    #[arg(long, default_value = "0..30")]
    pub grid_n: GridRange<usize>,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Corrupt the stratum route on purpose; the run is then expected to fail.
    #[arg(long, hide = true)]
    pub negative_control: Option<Mutation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Product,
    Strata,
    Both,
    Macdonald,
    Breakdown,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Product => "product",
            Mode::Strata => "strata",
            Mode::Both => "both",
            Mode::Macdonald => "macdonald",
            Mode::Breakdown => "breakdown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Inclusive range written `start..end`; a single value `k` means `k..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRange<T>(pub RangeInclusive<T>);

impl<T> FromStr for GridRange<T>
where
    T: FromStr + Copy,
    T::Err: fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |v: &str| {
            v.trim()
                .parse::<T>()
                .map_err(|err| format!("invalid bound `{v}`: {err}"))
        };
        match s.split_once("..") {
            Some((start, end)) => {
                let end = end.strip_prefix('=').unwrap_or(end);
                Ok(GridRange(parse(start)?..=parse(end)?))
            }
            None => {
                let v = parse(s)?;
                Ok(GridRange(v..=v))
            }
        }
    }
}

/// Row of `product`, `strata` and `macdonald` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueRow {
    pub n: usize,
    pub value: String,
}

/// Row of `both` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BothRow {
    pub n: usize,
    pub strata: String,
    pub product: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Row of `breakdown` output: one stratum of `X^[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakdownRow {
    pub n: usize,
    pub partition: String,
    pub stratum_euler: String,
    pub fiber_euler: String,
    pub tilde_euler: String,
}

/// The JSON document emitted by `compute`. Integers that can grow without
/// bound are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document<R> {
    pub euler_char: i64,
    pub max_n: usize,
    pub mode: String,
    pub rows: Vec<R>,
}

trait Tabular {
    const HEADER: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

impl Tabular for ValueRow {
    const HEADER: &'static [&'static str] = &["n", "value"];
    fn cells(&self) -> Vec<String> {
        vec![self.n.to_string(), self.value.clone()]
    }
}

impl Tabular for BothRow {
    const HEADER: &'static [&'static str] = &["n", "strata", "product", "match"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.strata.clone(),
            self.product.clone(),
            self.matches.to_string(),
        ]
    }
}

impl Tabular for BreakdownRow {
    const HEADER: &'static [&'static str] = &[
        "n",
        "partition",
        "stratum_euler",
        "fiber_euler",
        "tilde_euler",
    ];
    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.partition.clone(),
            self.stratum_euler.clone(),
            self.fiber_euler.clone(),
            self.tilde_euler.clone(),
        ]
    }
}

fn value_rows(values: Vec<BigInt>) -> Vec<ValueRow> {
    values
        .into_iter()
        .enumerate()
        .map(|(n, v)| ValueRow {
            n,
            value: v.to_string(),
        })
        .collect()
}

pub fn both_rows(model: &SurfaceModel) -> Vec<BothRow> {
    model
        .hilbert_by_strata()
        .into_iter()
        .zip(model.hilbert_by_product())
        .enumerate()
        .map(|(n, (strata, product))| BothRow {
            n,
            matches: strata == product,
            strata: strata.to_string(),
            product: product.to_string(),
        })
        .collect()
}

pub fn breakdown_rows(model: &SurfaceModel) -> Vec<BreakdownRow> {
    model
        .breakdown()
        .into_iter()
        .flat_map(|(n, reports)| {
            reports.into_iter().map(move |r| {
                assert!(
                    r.is_integral(),
                    "non-integral stratum {} at n = {n}",
                    r.partition
                );
                BreakdownRow {
                    n,
                    partition: r.partition.to_string(),
                    stratum_euler: r.stratum_euler.to_integer().to_string(),
                    fiber_euler: r.fiber_euler.to_string(),
                    tilde_euler: r.tilde_euler.to_integer().to_string(),
                }
            })
        })
        .collect()
}

fn write_table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let header: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    writeln!(out, "{}", line(&header))?;
    writeln!(
        out,
        "{}",
        "-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1))
    )?;
    for row in rows {
        writeln!(out, "{}", line(row))?;
    }
    Ok(())
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

fn emit<R: Tabular + Serialize>(
    out: &mut dyn Write,
    args: &ComputeArgs,
    euler_char: i64,
    rows: Vec<R>,
) -> io::Result<()> {
    match args.format {
        Format::Json => {
            let doc = Document {
                euler_char,
                max_n: args.max_n,
                mode: args.mode.name().to_owned(),
                rows,
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Csv => {
            let cells: Vec<_> = rows.iter().map(Tabular::cells).collect();
            write_csv(out, R::HEADER, &cells)
        }
        Format::Table => {
            let cells: Vec<_> = rows.iter().map(Tabular::cells).collect();
            writeln!(out, "e(X) = {euler_char}, mode = {}", args.mode.name())?;
            write_table(out, R::HEADER, &cells)
        }
    }
}

pub fn cmd_compute(
    args: &ComputeArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let euler_char = args
        .euler_char
        .expect("clap enforces --euler-char for compute");
    let model = SurfaceModel::new(euler_char, args.max_n);
    match args.mode {
        Mode::Product => emit(
            out,
            args,
            euler_char,
            value_rows(model.hilbert_by_product()),
        )?,
        Mode::Strata => emit(out, args, euler_char, value_rows(model.hilbert_by_strata()))?,
        Mode::Macdonald => emit(
            out,
            args,
            euler_char,
            value_rows(model.symmetric_by_strata()),
        )?,
        Mode::Breakdown => emit(out, args, euler_char, breakdown_rows(&model))?,
        Mode::Both => {
            let rows = both_rows(&model);
            let mismatches: Vec<BothRow> = rows.iter().filter(|r| !r.matches).cloned().collect();
            emit(out, args, euler_char, rows)?;
            if !mismatches.is_empty() {
                for r in &mismatches {
                    writeln!(
                        err,
                        "route mismatch at n = {}: strata {} != product {}",
                        r.n, r.strata, r.product
                    )?;
                }
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_verify_table(out: &mut dyn Write, report: &VerificationReport) -> io::Result<()> {
    let mut groups: Vec<(&str, usize, usize)> = Vec::new();
    for check in &report.checks {
        match groups.last_mut() {
            Some((name, passed, failed)) if *name == check.name => {
                if check.passed {
                    *passed += 1
                } else {
                    *failed += 1
                }
            }
            _ => groups.push((
                &check.name,
                usize::from(check.passed),
                usize::from(!check.passed),
            )),
        }
    }
    let rows: Vec<Vec<String>> = groups
        .iter()
        .map(|(name, p, f)| vec![name.to_string(), p.to_string(), f.to_string()])
        .collect();
    write_table(out, &["check", "passed", "failed"], &rows)?;
    for check in report.failures() {
        writeln!(
            out,
            "FAIL {} [{}]: expected {}, got {}",
            check.name, check.cell, check.expected, check.actual
        )?;
    }
    writeln!(out, "{}", report.summary)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let grid = GridConfig {
        e_range: args.grid_e.0.clone(),
        n_range: args.grid_n.0.clone(),
        mutation: args.negative_control,
    };
    let report = verify::run_all(&grid);
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        format!("\"{}\"", c.cell),
                        c.expected.clone(),
                        c.actual.clone(),
                        c.passed.to_string(),
                    ]
                })
                .collect();
            write_csv(
                out,
                &["check", "cell", "expected", "actual", "passed"],
                &rows,
            )?;
        }
        Format::Table => write_verify_table(out, &report)?,
    }
    if report.all_passed() {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "verification failed: {}", report.summary)?;
        Ok(EXIT_FAILURE)
    }
}

/// Parses `args` (including the program name) and runs the selected
/// command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let result = match &cli.command {
        None => cmd_compute(&cli.compute, out, err),
        Some(Command::Compute(args)) => cmd_compute(args, out, err),
        Some(Command::Verify(args)) => cmd_verify(args, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_FAILURE
    })
}
