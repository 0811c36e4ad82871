//! `flagcodes`: build, analyse, simulate and verify flag codes.
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O error, 3 verification
//! failure.

mod spec;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use flagcodes::channel::{decode_derived_erasure, decode_min_distance, monte_carlo};
use flagcodes::codes::{
    code_checkerboard, code_derived, code_lifted, code_min_distance, code_sandwich, mrd_field_rep, mrd_gabidulin,
    DistanceMode, FlagCode, MrdCode,
};
use flagcodes::flags::StutteringFlag;
use flagcodes::symgrp::depth_histogram;
use flagcodes::verify::{Verifier, SUITES};
use flagcodes::{Field, Permutation};

use spec::ExperimentSpec;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

#[derive(Parser)]
#[command(name = "flagcodes", version, about = "Flag codes for network coding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation statistics.
    #[command(subcommand)]
    Perm(PermCommand),
    /// Build and analyse flag codes.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Run a Monte Carlo experiment described by a key=value spec file.
    Sim {
        spec: PathBuf,
        /// Overrides the spec's `seed` key.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the exhaustive verification suites.
    Verify {
        /// Run a single suite.
        #[arg(long)]
        only: Option<String>,
    },
    /// Decode a received stuttering flag.
    #[command(subcommand)]
    Decode(DecodeCommand),
}

#[derive(Subcommand)]
enum PermCommand {
    /// Length, depth, transposition length and sum of distances.
    Stats {
        /// One-line notation, one-based.
        #[arg(required = true, num_args = 1.., value_name = "VALUES")]
        values: Vec<String>,
    },
    /// Number of permutations of S_n by depth, as CSV.
    Hist { n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Lifted,
    Sandwich,
    Checkerboard,
    Derived,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Group,
    Pairwise,
    Subgroup,
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Write a code file.
    Gen {
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Ambient dimension (lifted, derived).
        #[arg(long)]
        n: Option<usize>,
        /// Subspace dimension (lifted) or derived-series index (derived).
        #[arg(long)]
        k: Option<usize>,
        /// Block size (sandwich).
        #[arg(long)]
        m: Option<usize>,
        /// Tower height (checkerboard); the ambient dimension is 2^(t+1).
        #[arg(long)]
        t: Option<usize>,
        /// Gabidulin q-degree bound (lifted).
        #[arg(long)]
        kappa: Option<usize>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the minimum distance and dimension of a code file.
    Mindist {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "group")]
        mode: Mode,
    },
}

#[derive(Subcommand)]
enum DecodeCommand {
    /// Minimum error-count decoding against a code file.
    Min {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        received: PathBuf,
    },
    /// Erasure decoding for the derived-series code D^(k).
    Erasure {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long)]
        received: PathBuf,
    },
}

pub struct CodeParams {
    pub q: u32,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub t: Option<usize>,
    pub kappa: Option<usize>,
}

fn require(value: Option<usize>, name: &str, construction: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Validation(format!("{construction} needs --{name}")))
}

/// Square code of side, dimension and distance `side`.
fn square_mrd(field: &Field, side: usize) -> Result<MrdCode, CliError> {
    mrd_field_rep(field, side).map_err(invalid)
}

/// `k × (n−k)` code for lifting. Square codes without `kappa` use the field
/// representation; otherwise a Gabidulin code on `min(k, n−k)` columns,
/// padded with zero columns when `n−k > k`.
fn lifting_code(field: &Field, n: usize, k: usize, kappa: Option<usize>) -> Result<MrdCode, CliError> {
    if k == 0 || k >= n {
        return Err(CliError::Validation(format!("lifted needs 0 < k < n, got k={k} n={n}")));
    }
    let l = n - k;
    match kappa {
        None if l == k => square_mrd(field, k),
        kappa => {
            let length = l.min(k);
            let code = mrd_gabidulin(field, k, length, kappa.unwrap_or(1)).map_err(invalid)?;
            Ok(if l > k { code.pad_columns(l - k) } else { code })
        }
    }
}

pub fn build_code(construction: &str, p: &CodeParams) -> Result<FlagCode, CliError> {
    let field = Field::from_order(p.q).map_err(invalid)?;
    let code = match construction {
        "lifted" => {
            let n = require(p.n, "n", construction)?;
            let k = require(p.k, "k", construction)?;
            code_lifted(&lifting_code(&field, n, k, p.kappa)?, n)
        }
        "sandwich" => {
            let m = require(p.m, "m", construction)?;
            code_sandwich(m, &square_mrd(&field, m)?, &square_mrd(&field, 2 * m)?)
        }
        "checkerboard" => {
            let t = require(p.t, "t", construction)?;
            let tower = (0..=t)
                .map(|i| {
                    let side = 1usize.checked_shl(i as u32).filter(|&s| s <= 16);
                    square_mrd(&field, side.ok_or_else(|| invalid("checkerboard tower too tall"))?)
                })
                .collect::<Result<Vec<_>, _>>()?;
            code_checkerboard(&tower)
        }
        "derived" => code_derived(&field, require(p.n, "n", construction)?, require(p.k, "k", construction)?),
        other => return Err(CliError::Validation(format!("unknown construction {other:?}"))),
    };
    code.map_err(invalid)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<FlagCode, CliError> {
    FlagCode::parse_text(&read_file(path)?).map_err(invalid)
}

fn cmd_perm(cmd: PermCommand) -> Result<String, CliError> {
    match cmd {
        PermCommand::Stats { values } => {
            // accept both "4 3 2 1" as one argument and as four
            let nums = values
                .iter()
                .flat_map(|v| v.split_whitespace())
                .map(|v| v.parse::<usize>().map_err(|_| invalid(format!("not a number: {v:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let pi = Permutation::from_one_line(&nums).map_err(invalid)?;
            Ok(format!(
                "l={} depth={} l_tr={} s={}\n",
                pi.length(),
                pi.depth(),
                pi.transposition_length(),
                pi.sum_of_distances()
            ))
        }
        PermCommand::Hist { n } => {
            let hist = depth_histogram(n).map_err(invalid)?;
            let mut out = String::from("depth,count\n");
            for (d, c) in hist {
                writeln!(out, "{d},{c}").expect("string write");
            }
            Ok(out)
        }
    }
}

fn cmd_code(cmd: CodeCommand) -> Result<String, CliError> {
    match cmd {
        CodeCommand::Gen {
            construction,
            q,
            n,
            k,
            m,
            t,
            kappa,
            out,
        } => {
            let name = match construction {
                Construction::Lifted => "lifted",
                Construction::Sandwich => "sandwich",
                Construction::Checkerboard => "checkerboard",
                Construction::Derived => "derived",
            };
            let code = build_code(name, &CodeParams { q, n, k, m, t, kappa })?;
            let text = code.to_text();
            match out {
                Some(path) => {
                    write_file(&path, &text)?;
                    Ok(format!("wrote {} codewords to {}\n", code.len(), path.display()))
                }
                None => Ok(text),
            }
        }
        CodeCommand::Mindist { file, mode } => {
            let code = load_code(&file)?;
            let mode = match mode {
                Mode::Group => DistanceMode::Group,
                Mode::Pairwise => DistanceMode::Pairwise,
                Mode::Subgroup => DistanceMode::Subgroup,
            };
            let d = code_min_distance(&code, mode).map_err(invalid)?;
            Ok(format!("d={d} dim={}\n", code.dimension()))
        }
    }
}

fn cmd_sim(spec_path: &Path, seed: Option<u64>) -> Result<String, CliError> {
    let spec = ExperimentSpec::load(spec_path, seed)?;
    let report = monte_carlo(&spec.code, &spec.topology, &spec.config, spec.trials).map_err(invalid)?;
    if let Some(path) = &spec.output {
        write_file(path, &report.to_csv())?;
    }
    let d = report.min_distance.map_or("none".to_string(), |d| d.to_string());
    let mut out = String::new();
    writeln!(
        out,
        "trials={} d={d} successes={} success_rate={:.6} failures={}",
        report.rows.len(),
        report.successes(),
        report.success_rate(),
        report.failures()
    )
    .expect("string write");
    writeln!(
        out,
        "below_bound={} failures_below_bound={}",
        report.trials_below_bound(),
        report.failures_below_bound()
    )
    .expect("string write");
    if spec.output.is_none() {
        out.push_str(&report.to_csv());
    }
    if report.failures_below_bound() > 0 {
        print!("{out}");
        return Err(CliError::Verification(format!(
            "{} trials with E < d were not decoded",
            report.failures_below_bound()
        )));
    }
    Ok(out)
}

fn cmd_verify(only: Option<String>) -> Result<String, CliError> {
    let verifier = Verifier::default();
    let results = match only {
        Some(name) => vec![verifier.run(&name).ok_or_else(|| {
            CliError::Validation(format!("unknown suite {name:?}; known: {}", SUITES.join(", ")))
        })?],
        None => verifier.run_all(),
    };
    let mut out = String::new();
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {} {}", r.name, r.detail).expect("string write");
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.name).collect();
    if failed.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::Verification(failed.join(", ")))
    }
}

fn cmd_decode(cmd: DecodeCommand) -> Result<String, CliError> {
    match cmd {
        DecodeCommand::Min { code, received } => {
            let code = load_code(&code)?;
            let r = StutteringFlag::parse_text(code.field(), &read_file(&received)?).map_err(invalid)?;
            let result = decode_min_distance(&code, &r).map_err(invalid)?;
            Ok(format!(
                "index={} error_count={} unique={}\n{}",
                result.index,
                result.error_count,
                result.unique,
                result.codeword.to_text()
            ))
        }
        DecodeCommand::Erasure { n, k, q, received } => {
            let field = Field::from_order(q).map_err(invalid)?;
            let r = StutteringFlag::parse_text(&field, &read_file(&received)?).map_err(invalid)?;
            let g = decode_derived_erasure(&field, n, k, &r).map_err(invalid)?;
            Ok(g.to_text())
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Perm(cmd) => cmd_perm(cmd),
        Command::Code(cmd) => cmd_code(cmd),
        Command::Sim { spec, seed } => cmd_sim(&spec, seed),
        Command::Verify { only } => cmd_verify(only),
        Command::Decode(cmd) => cmd_decode(cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
