use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "holofol",
    version,
    about = "Normal forms, first integrals and complex-time traces for polynomial vector fields on C^2",
    after_help = "Exit status: 0 success, 1 usage, 2 gate failure, 3 symbolic mismatch, 4 numerical failure."
)]
pub struct Cli {
    /// TOML job file; flags given on the command line take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the main output here instead of stdout.
    #[arg(short = 'o', long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// May be omitted when the job file names a command.
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit P, its dual field Y and the covering map H.
    NormalForm(ParamArgs),
    /// Pull a field (or, with --form, a one-form) back along H.
    Pullback(PullbackArgs),
    /// Push a deck-invariant field in (u, v) forward along H.
    Pushforward(PushforwardArgs),
    /// The one-form of times and the identities it satisfies upstairs.
    TimesForm(FieldArgs),
    /// Build G^{nq} with its gate report.
    FirstIntegral(FieldArgs),
    /// Exact check that X(log G) vanishes.
    Verify(VerifyArgs),
    /// Critical values of P and fibers invariant under X.
    SpecialValues(SpecialArgs),
    /// Integrate X in complex time and write CSV.
    Trace(TraceArgs),
    /// Integrate X in complex time and draw SVG projections.
    Plot(TraceArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::NormalForm(_) => "normal-form",
            Command::Pullback(_) => "pullback",
            Command::Pushforward(_) => "pushforward",
            Command::TimesForm(_) => "times-form",
            Command::FirstIntegral(_) => "first-integral",
            Command::Verify(_) => "verify",
            Command::SpecialValues(_) => "special-values",
            Command::Trace(_) => "trace",
            Command::Plot(_) => "plot",
        }
    }

    /// The command with every flag left unset, for jobs run from a file.
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "normal-form" => Command::NormalForm(Default::default()),
            "pullback" => Command::Pullback(Default::default()),
            "pushforward" => Command::Pushforward(Default::default()),
            "times-form" => Command::TimesForm(Default::default()),
            "first-integral" => Command::FirstIntegral(Default::default()),
            "verify" => Command::Verify(Default::default()),
            "special-values" => Command::SpecialValues(Default::default()),
            "trace" => Command::Trace(Default::default()),
            "plot" => Command::Plot(Default::default()),
            _ => return None,
        })
    }
}

/// `P = x^m (x^l y + p(x))^n`.
#[derive(Clone, Debug, Default, Args)]
pub struct ParamArgs {
    #[arg(short = 'm', allow_negative_numbers = true)]
    pub m: Option<i64>,
    #[arg(short = 'n')]
    pub n: Option<u32>,
    #[arg(short = 'l')]
    pub l: Option<u32>,
    /// p(x) as an expression in x.
    #[arg(short = 'p', allow_hyphen_values = true)]
    pub p: Option<String>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct FieldArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Vector field in x, y, e.g. "x^2 d/dx - (2*x*y+1) d/dy".
    #[arg(short = 'X', long = "field", allow_hyphen_values = true)]
    pub field: Option<String>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct PullbackArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(short = 'X', long = "field", allow_hyphen_values = true, conflicts_with = "form")]
    pub field: Option<String>,
    /// One-form in x, y, e.g. "y dx + x dy".
    #[arg(long, allow_hyphen_values = true)]
    pub form: Option<String>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct PushforwardArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Vector field in u, v.
    #[arg(short = 'W', long = "field", allow_hyphen_values = true)]
    pub field: Option<String>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct VerifyArgs {
    /// JSON document with a first integral, as written by first-integral.
    #[arg(short = 'G', long = "first-integral", value_name = "FILE")]
    pub first_integral: Option<PathBuf>,
    #[arg(short = 'X', long = "field", allow_hyphen_values = true)]
    pub field: Option<String>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct SpecialArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Polynomial in x, y; defaults to the normal form of the parameters.
    #[arg(short = 'P', long = "polynomial", allow_hyphen_values = true)]
    pub polynomial: Option<String>,
    #[arg(short = 'X', long = "field", allow_hyphen_values = true)]
    pub field: Option<String>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct TraceArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(short = 'X', long = "field", allow_hyphen_values = true)]
    pub field: Option<String>,
    /// First integral (JSON) whose values are recorded along the trace.
    #[arg(short = 'G', long = "first-integral", value_name = "FILE")]
    pub first_integral: Option<PathBuf>,
    /// Base point x coordinate as "re,im".
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<String>,
    /// Length T of the time ray.
    #[arg(long = "t-end", short = 'T')]
    pub t_end: Option<f64>,
    /// Complex time direction "re,im"; normalized to unit length.
    #[arg(long, allow_hyphen_values = true)]
    pub direction: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long = "escape-radius")]
    pub escape_radius: Option<f64>,
    #[arg(long = "max-steps")]
    pub max_steps: Option<usize>,
    /// Number of random base points (used when no base point is given).
    #[arg(long)]
    pub count: Option<usize>,
    /// Seed for random base points; HOLOFOL_SEED is used when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write a JSON summary of the run here.
    #[arg(long, value_name = "FILE")]
    pub summary: Option<PathBuf>,
}
