//! Command-line front end for `gausslab`: chart configs in, JSON or CSV reports out.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::IsoArgs;
use crate::error::CliError;
use crate::report::{inputs_digest, tables_to_csv, Output, Report};

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "GAUSSLAB_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "gausslab", version, about = "Biharmonicity of Gauss maps and the hypercone catalog")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Include the wall-clock duration in the JSON report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hypersurface residual report for a Euclidean chart.
    Verify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Link system for a chart in the unit sphere; the verdict refers to the cone.
    VerifyLink {
        #[arg(long)]
        config: PathBuf,
    },
    /// Solve the classification conditions.
    Solve {
        #[command(subcommand)]
        target: SolveTarget,
    },
    /// Non-existence and consistency checks.
    Check {
        #[command(subcommand)]
        target: CheckTarget,
    },
    /// Isolate the real roots of a rational polynomial c0 + c1 x + ...
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Interval a,b; `-inf` and `inf` are allowed.
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
    },
    /// Regenerate every classification table.
    Report {
        #[arg(long, required = true)]
        all: bool,
        /// Write one CSV per table into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Largest n of the Takagi family.
        #[arg(long, default_value_t = 21)]
        takagi_max: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SolveTarget {
    /// Small-sphere links.
    SphereCone {
        #[arg(long)]
        m: usize,
    },
    /// Clifford-torus links S^m1(r1) x S^m2(r2).
    CliffordCone {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        m1: usize,
    },
    /// Isoparametric links with l distinct principal curvatures.
    Isoparametric(IsoCli),
    /// Type-4 family with multiplicities (n - 2, 2).
    Takagi {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct IsoCli {
    #[arg(long)]
    pub l: usize,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub m1: Option<usize>,
    #[arg(long)]
    pub m2: Option<usize>,
    #[arg(long)]
    pub mult: Option<usize>,
    /// Dimension of the sphere link for l = 1.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CheckTarget {
    /// Elimination certificate for cones in R^3.
    ConeR3,
    /// Obstruction integrals for a closed surface link in S^3.
    ConeR4 {
        #[arg(long)]
        config: PathBuf,
        /// Periodic grid counts a,b.
        #[arg(long, value_delimiter = ',')]
        counts: Option<Vec<usize>>,
    },
    /// Laplacian of the Gauss-map energy density along the cone.
    Composition {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        m: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2")]
        t: Vec<f64>,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Worker count from [`THREADS_ENV`], if set.
pub fn threads_from_env(value: Option<&str>) -> Result<Option<usize>, CliError> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
    }
}

fn echo(args: &[String]) -> String {
    args.iter()
        .skip(1)
        .map(|a| if a.is_empty() || a.contains(char::is_whitespace) { format!("{a:?}") } else { a.clone() })
        .collect::<Vec<_>>()
        .join(" ")
}

fn dispatch(cli: &Cli) -> Result<(Output, Vec<Vec<u8>>), CliError> {
    let none = |o: Output| (o, Vec::new());
    Ok(match &cli.command {
        Command::Verify { config } => {
            let (o, b) = commands::verify(config)?;
            (o, vec![b])
        }
        Command::VerifyLink { config } => {
            let (o, b) = commands::verify_link(config)?;
            (o, vec![b])
        }
        Command::Solve { target } => none(match target {
            SolveTarget::SphereCone { m } => commands::solve_sphere_cone(*m)?,
            SolveTarget::CliffordCone { m, m1 } => commands::solve_clifford_cone(*m, *m1)?,
            SolveTarget::Isoparametric(a) => commands::solve_isoparametric(&IsoArgs {
                l: a.l,
                q: a.q,
                m1: a.m1,
                m2: a.m2,
                mult: a.mult,
                m: a.m,
            })?,
            SolveTarget::Takagi { n } => commands::solve_takagi(*n)?,
        }),
        Command::Check { target } => match target {
            CheckTarget::ConeR3 => none(commands::check_cone_r3()?),
            CheckTarget::ConeR4 { config, counts } => {
                let (o, b) = commands::check_cone_r4(config, counts.clone())?;
                (o, vec![b])
            }
            CheckTarget::Composition { m, t } => none(commands::check_composition(m, t)?),
        },
        Command::Roots { coeffs, range } => none(commands::roots(coeffs, range.as_deref())?),
        Command::Report { takagi_max, .. } => none(commands::report_all(*takagi_max)?),
    })
}

fn write_tables(dir: &std::path::Path, output: &Output) -> Result<String, CliError> {
    std::fs::create_dir_all(dir)?;
    let mut listing = String::new();
    for t in &output.tables {
        let path = dir.join(format!("{}.csv", t.name));
        std::fs::write(&path, t.to_csv()?)?;
        listing.push_str(&format!("{}\n", path.display()));
    }
    Ok(listing)
}

fn execute(cli: &Cli, command: &str) -> Result<(String, f64), CliError> {
    let start = Instant::now();
    let (output, files) = dispatch(cli)?;
    let elapsed = start.elapsed().as_secs_f64();
    let out_dir = match &cli.command {
        Command::Report { out_dir: Some(d), .. } => Some(d),
        _ => None,
    };
    let text = match (cli.format, out_dir) {
        (Format::Csv, Some(dir)) => write_tables(dir, &output)?,
        (Format::Csv, None) => tables_to_csv(&output.tables)?,
        (Format::Json, dir) => {
            if let Some(dir) = dir {
                write_tables(dir, &output)?;
            }
            let report = Report {
                command: command.to_string(),
                inputs_digest: inputs_digest(command, &files),
                results: output.results,
                duration_s: cli.timing.then_some(elapsed),
            };
            report.to_json()
        }
    };
    Ok((text, elapsed))
}

/// Run one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput { code: 2, stdout: String::new(), stderr: text }
            } else {
                RunOutput { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let command = echo(&args);
    match execute(&cli, &command) {
        Ok((stdout, elapsed)) => {
            RunOutput { code: 0, stdout, stderr: format!("gausslab: {command}: done in {elapsed:.3} s\n") }
        }
        Err(e) => RunOutput { code: e.exit_code(), stdout: String::new(), stderr: format!("gausslab: {e}\n") },
    }
}
