use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use frobsieve_cli::config::{load_config, ExperimentConfig};
use frobsieve_cli::error::{HarnessError, Result};
use frobsieve_cli::experiment::{match_summary, run_experiment, sieve_csv, sieve_reports, GrowthSeries};
use frobsieve_cli::verify::{self, VerifyReport};
use frobsieve_core::charsum::CharSumTable;
use frobsieve_core::elliptic::TraceMethod;
use frobsieve_core::frobenius::field_of_trace;
use frobsieve_core::gl2count::{count_det_trace_formula, verify_class_counts, VerificationRow};
use frobsieve_core::CurveQ;

#[derive(Parser)]
#[command(name = "frobsieve", version, about = "Frobenius field coincidences for pairs of elliptic curves")]
struct Cli {
    /// Worker threads (overrides the config).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Trace cache directory (overrides the config).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Output directory for CSV and SVG files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Trace of Frobenius of y^2 = x^3 + Ax + B at a good prime p.
    Ap {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        p: u64,
        /// Count points directly instead of baby-step giant-step.
        #[arg(long)]
        naive: bool,
    },
    /// Growth table of matching Frobenius fields at each checkpoint.
    MatchCount { config: PathBuf },
    /// Square sieve reports on the curve-pair multiset at each checkpoint.
    SieveDemo { config: PathBuf },
    /// Determinant/trace count formulas against enumeration.
    Gl2Verify,
    /// Character sum closed forms against brute force.
    CharsumVerify,
    /// Every verification suite.
    VerifyAll,
    /// Full experiment: match, growth and sieve CSVs plus the SVG plot.
    Experiment { config: PathBuf },
}

fn load(path: &Path, cli: &Cli) -> Result<ExperimentConfig> {
    let mut config = load_config(path)?;
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(HarnessError::Config("--threads must be positive".into()));
        }
        config.threads = t;
    }
    if let Some(dir) = &cli.cache {
        config.cache_dir = dir.clone();
    }
    Ok(config)
}

fn write_out(out: Option<&Path>, name: &str, contents: &str) -> Result<()> {
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|e| HarnessError::io(&path, e))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn finish(report: VerifyReport) -> Result<()> {
    println!("{report}");
    report.into_result().map(|_| ())
}

fn run(cli: &Cli) -> Result<()> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Ap { a, b, p, naive } => {
            let curve = CurveQ::new(*a, *b)?;
            let method = if *naive { TraceMethod::Naive } else { TraceMethod::Bsgs };
            let ap = method.trace(&curve, *p)?;
            let field = field_of_trace(*p, ap)?;
            println!("a_{p} = {ap}  #E = {}  D = {}", *p as i64 + 1 - ap, field.d());
        }
        Command::MatchCount { config } => {
            let config = load(config, cli)?;
            let (summary, _) = match_summary(&config, Some(&config.cache_dir))?;
            let growth = GrowthSeries::from_records(&summary.records, &config.checkpoints)?;
            print!("{}", growth.to_csv());
            write_out(out, "growth.csv", &growth.to_csv())?;
        }
        Command::SieveDemo { config } => {
            let config = load(config, cli)?;
            let (summary, _) = match_summary(&config, Some(&config.cache_dir))?;
            for &x in &config.checkpoints {
                let csv = sieve_csv(&sieve_reports(&summary.records, x, config.sieve_z(x)?)?);
                println!("# x = {x}\n{csv}");
                write_out(out, &format!("sieve_x{x}.csv"), &csv)?;
            }
        }
        Command::Gl2Verify => {
            let report = verify::verify_gl2();
            if out.is_some() {
                let mut csv = format!("{}\n", VerificationRow::CSV_HEADER);
                for (q1, q2) in verify::GL2_PAIRS {
                    for row in verify_class_counts(q1, q2, count_det_trace_formula)? {
                        csv.push_str(&row.to_csv());
                        csv.push('\n');
                    }
                }
                write_out(out, "gl2_verification.csv", &csv)?;
            }
            finish(report)?;
        }
        Command::CharsumVerify => {
            let report = verify::verify_charsum();
            if out.is_some() {
                let mut csv = format!("{}\n", CharSumTable::CSV_HEADER);
                for q in frobsieve_core::primes_in(2, verify::CHARSUM_MAX_Q) {
                    for row in CharSumTable::build(q)?.csv_rows() {
                        csv.push_str(&row);
                        csv.push('\n');
                    }
                }
                write_out(out, "charsum.csv", &csv)?;
            }
            finish(report)?;
        }
        Command::VerifyAll => finish(verify::verify_all())?,
        Command::Experiment { config } => {
            let config = load(config, cli)?;
            let dir = out.unwrap_or(Path::new("out"));
            let outcome = run_experiment(&config, dir)?;
            print!("{}", outcome.growth.to_csv());
            for f in &outcome.files {
                eprintln!("wrote {}", f.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
