//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage or parameter errors, 2 for numerical
//! failures, I/O failures and failed self-checks.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::experiments;
use crate::output::{Format, Report};
use crate::spec::{ExperimentId, ExperimentSpec, GridMode};

#[derive(Debug, Parser)]
#[command(
    name = "gig-bench",
    version,
    about = "Sampling, benchmarks and self-checks for gig-core"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Draw variates from GIG(lambda, psi, chi).
    Sample,
    /// Acceptance probability over a standardized (lambda, beta) grid.
    AcceptanceGrid,
    /// Sample quantiles and mean against exact values.
    QuantileCheck,
    /// Cutoff count as a function of the rate target.
    CutoffCurve,
    /// Time per variate over (eps0, sample size).
    TimingGrid,
    /// Rejection constant against the number of cutoffs.
    RejectionGrid,
    /// Goodness-of-fit and envelope self-checks.
    Validate,
}

impl Command {
    fn id(self) -> ExperimentId {
        match self {
            Command::Sample => ExperimentId::Sample,
            Command::AcceptanceGrid => ExperimentId::AcceptanceGrid,
            Command::QuantileCheck => ExperimentId::QuantileCheck,
            Command::CutoffCurve => ExperimentId::CutoffCurve,
            Command::TimingGrid => ExperimentId::TimingGrid,
            Command::RejectionGrid => ExperimentId::RejectionGrid,
            Command::Validate => ExperimentId::Validate,
        }
    }
}

#[derive(Debug, Args)]
pub struct Options {
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true)]
    pub psi: Option<f64>,
    #[arg(long, global = true)]
    pub chi: Option<f64>,
    /// Draws per replicate, or per cell.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Upper bound on the rejection rate.
    #[arg(long, global = true, conflicts_with = "cutoffs")]
    pub eps0: Option<f64>,
    /// Exact number of cutoffs.
    #[arg(long, global = true)]
    pub cutoffs: Option<usize>,
    /// Hand twice the rate target to the cutoff search.
    #[arg(long, global = true)]
    pub adhoc_double: bool,
    #[arg(long, global = true, env = "GIG_SEED")]
    pub seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub replicates: Option<usize>,
    /// JSON experiment description; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambdas: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub betas: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub eps0s: Option<Vec<f64>>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub counts: Option<Vec<usize>>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub sample_sizes: Option<Vec<usize>>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<GridMode>,
    /// Grid resolution for cutoff-curve.
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// Randomized settings per check for validate.
    #[arg(long, global = true)]
    pub settings: Option<usize>,
    /// Run timing cells concurrently.
    #[arg(long, global = true)]
    pub parallel: bool,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Runtime(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Runtime(m) => m,
        }
    }
}

impl From<gig_core::Error> for Failure {
    fn from(e: gig_core::Error) -> Self {
        if e.is_input_error() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Runtime(e.to_string())
        }
    }
}

/// Experiment description from the config file (if any) overlaid with flags.
pub fn build_spec(cli: &Cli) -> Result<ExperimentSpec, Failure> {
    let id = cli.command.id();
    let mut spec = match &cli.opts.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let spec = ExperimentSpec::from_json(&text, id).map_err(Failure::Usage)?;
            if spec.experiment != id {
                return Err(Failure::Usage(format!(
                    "config describes {} but the command is {id}",
                    spec.experiment
                )));
            }
            spec
        }
        None => ExperimentSpec::defaults(id),
    };
    let o = &cli.opts;
    macro_rules! set {
        ($($field:ident),*) => {$(
            if let Some(v) = &o.$field {
                spec.$field = v.clone();
            }
        )*};
    }
    set!(
        lambda,
        psi,
        chi,
        n,
        replicates,
        lambdas,
        betas,
        eps0s,
        counts,
        sample_sizes,
        mode,
        points,
        settings,
        seed
    );
    if let Some(e) = o.eps0 {
        spec.eps0 = Some(e);
        spec.cutoffs = None;
    }
    if let Some(k) = o.cutoffs {
        spec.cutoffs = Some(k);
        spec.eps0 = None;
    }
    spec.adhoc_double |= o.adhoc_double;
    spec.parallel |= o.parallel;
    spec.validate().map_err(Failure::Usage)?;
    Ok(spec)
}

fn write_output(cli: &Cli, spec: &ExperimentSpec, report: &Report) -> Result<(), Failure> {
    let io_err = |e: &dyn std::fmt::Display| Failure::Runtime(format!("cannot write output: {e}"));
    let mut sink: Box<dyn Write> = match &cli.opts.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| io_err(&e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let plain = spec.experiment == ExperimentId::Sample
        && cli.opts.format.is_none()
        && cli.opts.out.is_none();
    if plain {
        for row in &report.rows {
            writeln!(sink, "{}", row[0].to_csv()).map_err(|e| io_err(&e))?;
        }
    } else {
        report
            .write(cli.opts.format.unwrap_or(Format::Csv), &mut sink)
            .map_err(|e| io_err(&e))?;
    }
    sink.flush().map_err(|e| io_err(&e))
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let spec = build_spec(cli)?;
    let report = experiments::run(&spec)?;
    write_output(cli, &spec, &report)?;
    if spec.experiment == ExperimentId::Validate {
        let failed = report
            .summary
            .get("failed")
            .map(|c| c.to_csv())
            .unwrap_or_default();
        if failed != "0" {
            return Err(Failure::Runtime(format!(
                "{failed} validation checks failed"
            )));
        }
    }
    Ok(())
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("gig-bench").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_override_defaults() {
        let cli = parse(&[
            "acceptance-grid",
            "--mode",
            "rate",
            "--eps0s",
            "0.5,0.25",
            "--lambdas=-1,-0.1",
            "--n",
            "10",
        ]);
        let spec = build_spec(&cli).unwrap();
        assert_eq!(spec.experiment, ExperimentId::AcceptanceGrid);
        assert_eq!(spec.mode, GridMode::Rate);
        assert_eq!(spec.eps0s, vec![0.5, 0.25]);
        assert_eq!(spec.lambdas, vec![-1.0, -0.1]);
        assert_eq!(spec.n, 10);
    }

    #[test]
    fn global_flags_before_subcommand() {
        let cli = parse(&["--lambda", "-0.5", "--cutoffs", "3", "sample"]);
        let spec = build_spec(&cli).unwrap();
        assert_eq!(spec.lambda, -0.5);
        assert_eq!(spec.cutoffs, Some(3));
    }

    #[test]
    fn conflicting_flags_rejected() {
        let r = Cli::try_parse_from(["gig-bench", "sample", "--eps0", "0.1", "--cutoffs", "2"]);
        assert!(r.is_err());
    }

    #[test]
    fn structural_errors_are_usage_errors() {
        let cli = parse(&["acceptance-grid", "--replicates", "0"]);
        assert_eq!(build_spec(&cli).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn error_classification() {
        let f: Failure = gig_core::generator::GigParams::new(0.0, 1.0, 1.0)
            .and_then(|p| gig_core::generator::derive_form(&p))
            .unwrap_err()
            .into();
        assert_eq!(f.exit_code(), 1);
    }
}
