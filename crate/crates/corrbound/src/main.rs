//! Command-line front end.
//!
//! Exit codes: 0 success (or search found), 1 search not found, 2 usage or
//! parse error, 3 validation error, 4 guaranteed-property failure, 5 I/O
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use corrbound::bounds;
use corrbound::corr::{CorrelationMatrix, Exponent};
use corrbound::csvio;
use corrbound::explore::{self, SearchConfig, SearchResult};
use corrbound::fixtures;
use corrbound::majorization;
use corrbound::report;
use corrbound::Error;

const EXIT_NOT_FOUND: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_PROPERTY: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(
    name = "corrbound",
    version,
    about = "Determinant bounds for correlation matrices: analysis, sweeps, and counterexample search"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for the inequality verdicts
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for randomized subcommands
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a correlation matrix read from a CSV file
    Analyze {
        /// Matrix file: one row per line, comma-separated, no header
        file: PathBuf,
    },
    /// Recompute the built-in reference examples and compare against their
    /// published values
    PaperExamples,
    /// Sample random correlation matrices and verify the guaranteed bounds
    Sweep {
        /// Smallest dimension
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        /// Largest dimension
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Matrices per dimension
        #[arg(long, default_value_t = 1000)]
        count: u64,
    },
    /// Hill-climb for bound violations
    Search {
        #[arg(value_enum)]
        task: Task,
        /// Power-mean exponent ("inf" or a float > 1); p-counterexample only
        #[arg(long)]
        p: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Proposals per restart
        #[arg(long, default_value_t = 5000)]
        budget: u64,
        #[arg(long, default_value_t = 10)]
        restarts: u32,
        /// Initial perturbation step, in (0, 1)
        #[arg(long, default_value_t = 0.05)]
        perturb_scale: f64,
        /// Start near this matrix instead of random starts
        #[arg(long)]
        start: Option<PathBuf>,
        /// Write the best matrix found as CSV
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random correlation matrix as CSV
    Gen {
        #[arg(long)]
        n: usize,
        /// Output path; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Task {
    /// det R > f(n, r_p) for the configured exponent
    PCounterexample,
    /// r1 < 0 with the r2 bound sharper than the r1 bound
    NegativeR1,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. }
        | Error::Asymmetric { .. }
        | Error::InvalidExponent { .. }
        | Error::InvalidConfig { .. } => EXIT_USAGE,
        Error::DimensionTooSmall { .. }
        | Error::NotUnitDiagonal { .. }
        | Error::OffDiagonalOutOfRange { .. }
        | Error::NotPositiveSemidefinite { .. } => EXIT_VALIDATION,
        _ => EXIT_PROPERTY,
    }
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(err))
}

fn fail_io(context: &str, err: &std::io::Error) -> ExitCode {
    eprintln!("error: {context}: {err}");
    ExitCode::from(EXIT_IO)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze { ref file } => cmd_analyze(file, cli.json, cli.tol),
        Command::PaperExamples => cmd_paper_examples(cli.json),
        Command::Sweep {
            n_min,
            n_max,
            count,
        } => cmd_sweep(n_min, n_max, count, cli.seed, cli.tol, cli.json),
        Command::Search {
            task,
            ref p,
            n,
            budget,
            restarts,
            perturb_scale,
            ref start,
            ref out,
        } => cmd_search(
            task,
            p.as_deref(),
            n,
            budget,
            restarts,
            perturb_scale,
            start.as_deref(),
            out.as_deref(),
            cli.seed,
            cli.tol,
        ),
        Command::Gen { n, ref out } => cmd_gen(n, out.as_deref(), cli.seed),
    }
}

fn load_correlation(path: &Path) -> Result<CorrelationMatrix, ExitCode> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Err(fail_io(&path.display().to_string(), &e)),
    };
    let sym = csvio::parse_matrix_csv(&text).map_err(|e| fail(&e))?;
    CorrelationMatrix::validate(sym).map_err(|e| fail(&e))
}

fn cmd_analyze(file: &Path, json: bool, tol: f64) -> ExitCode {
    let r = match load_correlation(file) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let rep = match report::analyze(&r, tol) {
        Ok(rep) => rep,
        Err(e) => return fail(&e),
    };
    if json {
        println!("{}", rep.to_json());
    } else {
        print!("{}", rep.render_table());
    }
    if rep.guaranteed_properties_hold() {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: a guaranteed bound failed; this indicates a numerical bug");
        ExitCode::from(EXIT_PROPERTY)
    }
}

fn cmd_paper_examples(json: bool) -> ExitCode {
    let mut outcomes = Vec::new();
    for fixture in fixtures::builtin_fixtures() {
        match fixtures::run_fixture(&fixture) {
            Ok(outcome) => outcomes.push((fixture, outcome)),
            Err(e) => return fail(&e),
        }
    }
    let all_pass = outcomes.iter().all(|(_, o)| o.pass);

    if json {
        let reports: Vec<_> = outcomes.iter().map(|(_, o)| o).collect();
        println!("{}", serde_json::to_string(&reports).expect("serializes"));
    } else {
        for (fixture, outcome) in &outcomes {
            println!("{}", outcome.name);
            for row in fixture.rows {
                println!("    {}, {}, {}", row[0], row[1], row[2]);
            }
            for check in &outcome.checks {
                println!(
                    "  {} {:<24} {}",
                    if check.pass { "PASS" } else { "FAIL" },
                    check.label,
                    check.detail
                );
            }
        }
        println!(
            "{}",
            if all_pass {
                "all PASS"
            } else {
                "FAILURES PRESENT"
            }
        );
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_PROPERTY)
    }
}

#[derive(Serialize)]
struct SweepSummary {
    matrices: u64,
    failures: u64,
    worst_olkin_margin: f64,
    worst_sandwich_margin: f64,
    worst_theorem1_slack: Option<f64>,
    worst_p_margin: f64,
}

fn cmd_sweep(n_min: usize, n_max: usize, count: u64, seed: u64, tol: f64, json: bool) -> ExitCode {
    if n_min < 2 || n_max < n_min || count < 1 {
        eprintln!("error: need 2 <= n-min <= n-max and count >= 1");
        return ExitCode::from(EXIT_USAGE);
    }
    let guaranteed_exponents = [1.25, 1.5, 1.75, 2.0];

    let mut matrices = 0u64;
    let mut failures = 0u64;
    let mut worst_olkin = f64::INFINITY;
    let mut worst_sandwich = f64::INFINITY;
    let mut worst_theorem1: Option<f64> = None;
    let mut worst_p = f64::INFINITY;

    for n in n_min..=n_max {
        for i in 0..count {
            let matrix_seed = explore::derive_seed(seed, ((n as u64) << 32) | i);
            let r = match explore::random_correlation(n, matrix_seed) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            matrices += 1;

            let b = bounds::bounds_report_with_tol(&r, tol);
            if !b.olkin_holds || !b.sandwich_holds {
                failures += 1;
            }
            worst_olkin = worst_olkin.min(b.det_rtilde - b.det_r);
            worst_sandwich = worst_sandwich
                .min(b.det_rhat - b.det_r)
                .min(b.det_r - b.det_rbar);

            match majorization::verify_theorem1(&r, tol) {
                Ok((left, right)) => {
                    if !left.holds || !right.holds {
                        failures += 1;
                    }
                    for s in left.slacks.iter().chain(right.slacks.iter()) {
                        worst_theorem1 = Some(worst_theorem1.map_or(*s, |w: f64| w.min(*s)));
                    }
                }
                Err(e) => return fail(&e),
            }

            for p in guaranteed_exponents {
                match bounds::p_bound(&r, Exponent::Finite(p), tol) {
                    Ok(res) => {
                        if !res.bound_holds {
                            failures += 1;
                        }
                        worst_p = worst_p.min(res.margin);
                    }
                    // The guaranteed regime erroring out is itself a failure.
                    Err(_) => failures += 1,
                }
            }
        }
    }

    let summary = SweepSummary {
        matrices,
        failures,
        worst_olkin_margin: worst_olkin,
        worst_sandwich_margin: worst_sandwich,
        worst_theorem1_slack: worst_theorem1,
        worst_p_margin: worst_p,
    };
    if json {
        println!("{}", serde_json::to_string(&summary).expect("serializes"));
    } else {
        println!("matrices checked        {}", summary.matrices);
        println!("failures                {}", summary.failures);
        println!("worst olkin margin      {:.3e}", summary.worst_olkin_margin);
        println!(
            "worst sandwich margin   {:.3e}",
            summary.worst_sandwich_margin
        );
        match summary.worst_theorem1_slack {
            Some(s) => println!("worst theorem1 slack    {s:.3e}"),
            None => println!("worst theorem1 slack    n/a (no interior prefixes)"),
        }
        println!("worst p-bound margin    {:.3e}", summary.worst_p_margin);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_PROPERTY)
    }
}

#[derive(Serialize)]
struct SearchReport {
    task: String,
    found: bool,
    /// Violation margin; null when no proposal satisfied the constraint.
    objective: Option<f64>,
    iterations_used: u64,
    seed: u64,
    n: usize,
    p: String,
    best_matrix: Vec<Vec<f64>>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    task: Task,
    p: Option<&str>,
    n: usize,
    budget: u64,
    restarts: u32,
    perturb_scale: f64,
    start: Option<&Path>,
    out: Option<&Path>,
    seed: u64,
    _tol: f64,
) -> ExitCode {
    let exponent = match task {
        Task::PCounterexample => {
            let Some(text) = p else {
                eprintln!("error: search p-counterexample requires --p (\"inf\" or a float > 1)");
                return ExitCode::from(EXIT_USAGE);
            };
            match text.parse::<Exponent>() {
                Ok(e) => e,
                Err(e) => return fail(&e),
            }
        }
        // Unused by the negative-r1 objective; any valid value will do.
        Task::NegativeR1 => Exponent::Finite(2.0),
    };

    let mut cfg = SearchConfig::new(n, exponent);
    cfg.budget = budget;
    cfg.restarts = restarts;
    cfg.perturb_scale = perturb_scale;
    cfg.seed = seed;
    if let Some(path) = start {
        match load_correlation(path) {
            Ok(r) => cfg.start = Some(r),
            Err(code) => return code,
        }
    }
    if let Err(e) = cfg.validate() {
        return fail(&e);
    }

    let result: SearchResult = match task {
        Task::PCounterexample => match explore::search_p_counterexample(&cfg) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        },
        Task::NegativeR1 => match explore::search_improvement_with_negative_r1(&cfg) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        },
    };

    let report = SearchReport {
        task: match task {
            Task::PCounterexample => "p-counterexample".into(),
            Task::NegativeR1 => "negative-r1".into(),
        },
        found: result.found,
        objective: result.objective.is_finite().then_some(result.objective),
        iterations_used: result.iterations_used,
        seed: result.seed,
        n,
        p: exponent.to_string(),
        best_matrix: result.best_matrix.matrix().to_rows(),
    };
    println!("{}", serde_json::to_string(&report).expect("serializes"));

    if let Some(path) = out {
        let csv = csvio::format_matrix_csv(result.best_matrix.matrix());
        if let Err(e) = fs::write(path, csv) {
            return fail_io(&path.display().to_string(), &e);
        }
    }
    if result.found {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NOT_FOUND)
    }
}

fn cmd_gen(n: usize, out: Option<&Path>, seed: u64) -> ExitCode {
    if n < 2 {
        eprintln!("error: --n must be at least 2");
        return ExitCode::from(EXIT_USAGE);
    }
    let r = match explore::random_correlation(n, seed) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let csv = csvio::format_matrix_csv(r.matrix());
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, csv) {
                return fail_io(&path.display().to_string(), &e);
            }
        }
        None => print!("{csv}"),
    }
    ExitCode::SUCCESS
}
