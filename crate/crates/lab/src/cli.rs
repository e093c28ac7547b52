//! Argument parsing and dispatch.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use waring_core::{SylvesterConfig, Tolerances};

use crate::commands::{self, Format, Report, RunConfig, SweepSpec};
use crate::error::{LabError, LabResult};
use crate::input::{resolve, InputSpec};

#[derive(Debug, Parser)]
#[command(
    name = "waring-lab",
    version,
    about = "Symmetric rank and Waring decompositions of binary forms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long, global = true, default_value_t = Tolerances::default().rank)]
    pub tol: f64,
    /// Chordal distance below which two roots count as equal.
    #[arg(long = "root-tol", global = true, default_value_t = Tolerances::default().root)]
    pub root_tol: f64,
    /// Largest accepted relative re-expansion residual.
    #[arg(long = "residual-tol", global = true, default_value_t = Tolerances::default().residual)]
    pub residual_tol: f64,
    /// Seed for kernel retries and irrational sweep samples.
    #[arg(long, global = true, default_value_t = SylvesterConfig::default().seed)]
    pub seed: u64,
    /// Output format; `sweep` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symmetric border rank, symmetric rank and catalecticant diagnostics.
    Rank(InputArgs),
    /// Explicit decomposition into powers of linear forms.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        /// Allow repeated roots: terms l^(N-s+1) F with deg F = s - 1.
        #[arg(long)]
        generalized: bool,
    },
    /// Ranks of spin-squeezed states over rational and random squeezing parameters.
    Sweep {
        /// Particle numbers, comma separated.
        #[arg(short = 'N', long = "particles", value_delimiter = ',', required = true)]
        particles: Vec<usize>,
        /// Largest denominator q of the rational parameters 2πp/q.
        #[arg(long = "q-max", default_value_t = 9)]
        q_max: u64,
        /// Number of pseudo-random irrational parameters.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Re-expand a stored decomposition and compare it with the input.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Decomposition JSON as written by `decompose`.
        #[arg(long)]
        decomposition: PathBuf,
        /// Include catalecticant rank reports.
        #[arg(long)]
        explain: bool,
    },
    /// Compare floating ranks against exact rational arithmetic.
    OracleCheck(InputArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Fock state, e.g. `N=3,k=1` (k particles down).
    #[arg(long)]
    pub fock: Option<String>,
    /// Spin-squeezed state, `p=1,q=3,N=13` for μ = 2πp/q or `mu=0.4,N=13`.
    #[arg(long)]
    pub sss: Option<String>,
    /// Coherent spin state, e.g. `theta=0.7,phi=1.1,N=9`.
    #[arg(long)]
    pub css: Option<String>,
    /// Homogeneous polynomial in x and y, e.g. `x^2 y - (1+2i) y^3`.
    #[arg(long)]
    pub inline: Option<String>,
    /// Form or state JSON file.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

impl InputArgs {
    fn spec(&self) -> InputSpec<'_> {
        InputSpec {
            fock: self.fock.as_deref(),
            sss: self.sss.as_deref(),
            css: self.css.as_deref(),
            inline: self.inline.as_deref(),
            input: self.input.as_deref(),
        }
    }
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        let default_format = match self.command {
            Command::Sweep { .. } => Format::Csv,
            _ => Format::Json,
        };
        RunConfig {
            tolerances: Tolerances {
                rank: self.tol,
                root: self.root_tol,
                residual: self.residual_tol,
            },
            seed: self.seed,
            format: match self.format {
                Some(FormatArg::Json) => Format::Json,
                Some(FormatArg::Csv) => Format::Csv,
                None => default_format,
            },
        }
    }
}

pub fn execute(cli: &Cli) -> LabResult<Report> {
    let cfg = cli.config();
    cfg.validate()?;
    match &cli.command {
        Command::Rank(input) => commands::rank(&resolve(&input.spec())?, &cfg),
        Command::Decompose { input, generalized } => {
            commands::decompose_cmd(&resolve(&input.spec())?, &cfg, *generalized)
        }
        Command::Sweep {
            particles,
            q_max,
            samples,
        } => commands::sweep(
            &SweepSpec {
                particles: particles.clone(),
                q_max: *q_max,
                samples: *samples,
            },
            &cfg,
        ),
        Command::Verify {
            input,
            decomposition,
            explain,
        } => commands::verify(&resolve(&input.spec())?, decomposition, *explain, &cfg),
        Command::OracleCheck(input) => commands::oracle_check(&resolve(&input.spec())?, &cfg),
    }
}

fn emit(cli: &Cli, text: &str) -> LabResult<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

/// Parses `args`, runs the command and maps the outcome to an exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = execute(&cli).and_then(|report| {
        emit(&cli, &report.text)?;
        match report.failure {
            Some(msg) => Err(LabError::Verification(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("waring-lab: {e}");
            e.to_exit_code()
        }
    }
}
