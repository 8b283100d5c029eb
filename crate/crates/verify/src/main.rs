use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use opmeans::inequalities::TheoremId;
use opmeans_verify::config::{Format, HarnessConfig, StorePolicy};
use opmeans_verify::{oracle, report, sensitivity, sweep};

/// Property-based verification harness for operator-mean inequality
/// chains on random positive definite matrices.
#[derive(Parser)]
#[command(name = "verify", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    sweep: SweepArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Hunt for chain violations with exp_neg forced through the
    /// refinement chain (hypothesis bypass) at dimension 2. Exit code 0
    /// means at least one genuine violation was found.
    Sensitivity {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u32,
        /// Eigenvalue range lo,hi for generated matrices.
        #[arg(long, value_parser = parse_range, default_value = "0.1,10")]
        eig_range: (f64, f64),
        /// Optional JSON output path for the search report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive all scalar oracle fixtures and write them to a JSON
    /// file for CI comparison.
    Oracle {
        #[arg(long, default_value = "fixtures/oracle.json")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Chains to sweep (comma-separated), e.g. T21,T25,R33. Empty runs
    /// nothing and exits 0.
    #[arg(long, value_delimiter = ',')]
    theorems: Vec<TheoremId>,

    /// Matrix dimensions.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,5,8")]
    dims: Vec<usize>,

    /// α grid; values outside [0,1] only reach the triangle chains.
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    alphas: Vec<f64>,

    /// β grid in [0,1].
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    betas: Vec<f64>,

    /// γ grid in [0,1] (R33 only).
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    gammas: Vec<f64>,

    /// δ grid in [0,1] (R33 only).
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,1")]
    deltas: Vec<f64>,

    /// Power-path exponents in [-1,1].
    #[arg(long, value_delimiter = ',', default_value = "-1,0,1")]
    upsilons: Vec<f64>,

    /// Scalar function specs, e.g. neg_power:0.5 or shifted_inverse:1:2.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "neg_power:0.25,neg_power:0.5,neg_power:1,shifted_inverse:1:1,power:0.5,power:1,log1p"
    )]
    functions: Vec<String>,

    /// Positive-map specs (repeatable): pinching:1,1 block_sum:2x3
    /// compression:<file.json> weighted_trace:<file.json>. Defaults to
    /// the built-in unital set per dimension.
    #[arg(long, num_args = 1..)]
    maps: Vec<String>,

    /// Random pairs per grid cell.
    #[arg(long, default_value_t = 100)]
    trials: u32,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Eigenvalue range lo,hi for generated matrices.
    #[arg(long, value_parser = parse_range, default_value = "0.1,10")]
    eig_range: (f64, f64),

    /// Which cells to keep in the report.
    #[arg(long, value_enum, default_value_t = StoreArg::All)]
    store: StoreArg,

    /// Report output path.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum StoreArg {
    All,
    Violations,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected lo,hi — got `{s}`"))?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lo `{lo}`: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad hi `{hi}`: {e}"))?;
    if !(lo > 0.0 && lo < hi) {
        return Err(format!("need 0 < lo < hi, got ({lo}, {hi})"));
    }
    Ok((lo, hi))
}

fn write_file(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, bytes)
}

fn run_sweep(args: SweepArgs) -> ExitCode {
    let cfg = HarnessConfig {
        theorems: args.theorems,
        dims: args.dims,
        alphas: args.alphas,
        betas: args.betas,
        gammas: args.gammas,
        deltas: args.deltas,
        upsilons: args.upsilons,
        functions: args.functions,
        maps: args.maps,
        trials_per_cell: args.trials,
        seed: args.seed,
        eig_range: args.eig_range,
        store: match args.store {
            StoreArg::All => StorePolicy::All,
            StoreArg::Violations => StorePolicy::Violations,
        },
        output_path: args.out,
        format: match args.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
    };
    let resolved = match cfg.resolve(Path::new(".")) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match sweep::run(&resolved) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let s = &report.summary;
    println!(
        "cells: {} total, {} passed, {} failed",
        s.total, s.passed, s.failed
    );
    if let (Some(gap), Some(cell)) = (s.weakest_gap, &s.weakest_cell) {
        println!(
            "weakest normalized gap: {gap:.3e} at {} (dim {}, trial {})",
            cell.theorem, cell.dim, cell.trial
        );
    }

    let bytes = match report.config.format {
        Format::Json => report::to_json_bytes(&report),
        Format::Csv => report::to_csv_bytes(&report),
    };
    if let Some(path) = report.config.output_path.clone() {
        let path = path.as_path();
        if let Err(e) = write_file(path, &bytes) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
        println!("report written to {}", path.display());
    }

    if s.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run_sensitivity(seed: u64, trials: u32, eig_range: (f64, f64), out: Option<PathBuf>) -> ExitCode {
    let report = match sensitivity::search(seed, trials, eig_range) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    println!(
        "sensitivity: {} violations in {} trials (worst normalized gap {:.3e})",
        report.violations, report.trials, report.worst_gap
    );
    if let Some(first) = &report.first {
        println!(
            "first violation at trial {} (alpha={:.4}, beta={:.4}, gap {:.3e})",
            first.trial, first.alpha, first.beta, first.min_normalized_gap
        );
    }
    if let Some(path) = &out {
        let bytes = report::to_json_bytes(&report);
        if let Err(e) = write_file(path, &bytes) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
        println!("report written to {}", path.display());
    }
    // Violation found is the success condition for this mode.
    if report.found() {
        ExitCode::SUCCESS
    } else {
        eprintln!("no violation found: the checker failed to detect the planted witness");
        ExitCode::FAILURE
    }
}

fn run_oracle(out: PathBuf) -> ExitCode {
    let bytes = oracle::fixtures_json();
    if let Err(e) = write_file(&out, &bytes) {
        eprintln!("error: {}: {e}", out.display());
        return ExitCode::from(2);
    }
    let fixtures = oracle::compute_fixtures();
    for f in &fixtures {
        let values: Vec<String> = f.values.iter().map(|v| format!("{v:.6}")).collect();
        println!("{}: [{}]", f.name, values.join(", "));
    }
    println!("{} fixtures written to {}", fixtures.len(), out.display());
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Some(Command::Sensitivity {
            seed,
            trials,
            eig_range,
            out,
        }) => run_sensitivity(seed, trials, eig_range, out),
        Some(Command::Oracle { out }) => run_oracle(out),
        None => run_sweep(cli.sweep),
    }
}
