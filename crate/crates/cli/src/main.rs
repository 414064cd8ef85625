use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use monocurve::poset::concrete_system;
use monocurve::report::{analyze, render_text, AnalysisReport};
use monocurve::sweep::{run_sweep, Family, SweepSpec};
use monocurve::verify::{run_suite, Suite};
use monocurve::{CurveSpec, Error, ExponentSet};

const EXIT_INPUT: u8 = 1;
const EXIT_DISAGREE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "monocurve",
    version,
    about = "Invariants of projective monomial curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct CurveArgs {
    /// Common degree of the monomials.
    #[arg(long)]
    d: Option<u64>,
    /// Exponent set, e.g. `0,3-5,9-10,12`.
    #[arg(long, conflicts_with = "a_seq")]
    set: Option<String>,
    /// Interval endpoints a_0,a_1,...,a_{2r+1}.
    #[arg(long = "a-seq", value_delimiter = ',')]
    a_seq: Option<Vec<u64>>,
}

impl CurveArgs {
    fn curve(&self) -> Result<CurveSpec, Error> {
        match (&self.set, &self.a_seq) {
            (Some(set), None) => {
                let d = self
                    .d
                    .ok_or_else(|| Error::InvalidInput("--d is required with --set".into()))?;
                CurveSpec::new(d, set.parse::<ExponentSet>()?)
            }
            (None, Some(a)) => {
                let c = CurveSpec::from_a_seq(a)?;
                if let Some(d) = self.d {
                    if d != c.d() {
                        return Err(Error::InvalidInput(format!(
                            "--d {d} does not match the last a-sequence entry {}",
                            c.d()
                        )));
                    }
                }
                Ok(c)
            }
            _ => Err(Error::InvalidInput(
                "give --set (with --d) or --a-seq".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every criterion on one curve or a batch file.
    Analyze {
        #[command(flatten)]
        curve: CurveArgs,
        /// File with one `d=<int>;set=<literal>` per line; `#` starts a comment.
        #[arg(long, conflicts_with_all = ["set", "a_seq"])]
        batch: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the explicit Buchsbaum inequality system with per-line verdicts.
    Ineq {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Analyze every member of a parameter family.
    Sweep {
        /// typeA_r2, typeB_r3, remA_family, smooth_random or exhaustive.
        #[arg(long)]
        family: String,
        #[arg(long = "d-max")]
        d_max: u64,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Newline-delimited JSON output, one record per instance.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Draws for the random family.
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
    /// Run verification suites and print one line per check.
    Verify {
        /// all, buchsbaum, regularity, lemmas, cover, poset, structure or examples.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "d-max", default_value_t = 20)]
        d_max: u64,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Input(String),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::Inapplicable(_) => Failure::Input(e.to_string()),
            Error::SaturationIncomplete { .. } | Error::InternalInconsistency(_) => {
                Failure::Disagreement(e.to_string())
            }
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn set_jobs(jobs: Option<usize>) -> Result<(), Failure> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input(format!("cannot configure {n} workers: {e}")))?;
    }
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn print_report(rep: &AnalysisReport, format: Format) {
    match format {
        Format::Text => print!("{}", render_text(rep)),
        Format::Json => println!("{}", json(rep)),
    }
}

fn read_batch(path: &PathBuf) -> Result<Vec<CurveSpec>, Failure> {
    let text = fs::read_to_string(path)?;
    let mut curves = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let curve = line
            .parse::<CurveSpec>()
            .map_err(|e| Failure::Input(format!("{}:{}: {e}", path.display(), no + 1)))?;
        curves.push(curve);
    }
    Ok(curves)
}

fn cmd_analyze(curve: &CurveArgs, batch: &Option<PathBuf>, format: Format) -> Result<(), Failure> {
    let curves = match batch {
        Some(path) => read_batch(path)?,
        None => vec![curve.curve()?],
    };
    let reports = curves
        .par_iter()
        .map(analyze)
        .collect::<Result<Vec<_>, _>>()?;
    let mut bad = Vec::new();
    for (i, rep) in reports.iter().enumerate() {
        if i > 0 && matches!(format, Format::Text) {
            println!();
        }
        print_report(rep, format);
        if rep.has_disagreement() {
            bad.push(format!("{}: {}", curves[i], rep.disagreements().join(", ")));
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!(
            "criteria disagree on {}",
            bad.join("; ")
        )))
    }
}

fn cmd_ineq(curve: &CurveArgs, format: Format) -> Result<(), Failure> {
    let system = concrete_system(&curve.curve()?)?;
    match format {
        Format::Text => print!("{}", system.render()),
        Format::Json => println!("{}", json(&system)),
    }
    Ok(())
}

fn cmd_sweep(
    family: &str,
    d_max: u64,
    out: &Option<PathBuf>,
    seed: u64,
    samples: usize,
) -> Result<(), Failure> {
    let family: Family = family.parse()?;
    let spec = SweepSpec {
        family,
        d_max,
        seed,
        samples,
    };
    let (records, summary) = run_sweep(&spec)?;
    if let Some(path) = out {
        let mut w = BufWriter::new(File::create(path)?);
        for rec in &records {
            writeln!(w, "{}", json(rec))?;
        }
        w.flush()?;
    }
    print!("{}", summary.render());
    if summary.all_passed() {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!(
            "{} instances failed",
            summary.failed
        )))
    }
}

fn cmd_verify(suite: &str, d_max: u64, format: Format) -> Result<(), Failure> {
    let suite: Suite = suite.parse()?;
    let reports = run_suite(suite, d_max)?;
    let mut failed = 0;
    for rep in &reports {
        match format {
            Format::Text => {
                println!("{}", rep.suite);
                for line in &rep.checks {
                    println!("  {line}");
                }
            }
            Format::Json => println!("{}", json(rep)),
        }
        failed += rep.checks.iter().filter(|c| !c.passed).count();
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!("{failed} checks failed")))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Analyze {
            curve,
            batch,
            format,
        } => cmd_analyze(curve, batch, *format),
        Command::Ineq { curve, format } => cmd_ineq(curve, *format),
        Command::Sweep {
            family,
            d_max,
            jobs,
            out,
            seed,
            samples,
        } => set_jobs(*jobs).and_then(|_| cmd_sweep(family, *d_max, out, *seed, *samples)),
        Command::Verify {
            suite,
            d_max,
            jobs,
            format,
        } => set_jobs(*jobs).and_then(|_| cmd_verify(suite, *d_max, *format)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("disagreement: {msg}");
            ExitCode::from(EXIT_DISAGREE)
        }
    }
}
