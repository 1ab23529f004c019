use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oddpart::families::{FamilySpec, TailPolicy};
use oddpart::specfun::PrecisionMode;

#[derive(Debug, Parser)]
#[command(name = "oddpart", version, about = "Odd partitions of an interval, their decreasing enumeration and spheroid spectra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write output to a file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Working precision for spheroid computations.
    #[arg(long, value_enum, env = "ODDPART_PRECISION", default_value_t = Precision::Double, global = true)]
    pub precision: Precision,

    /// Seed for the randomized checks of `verify`.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// What to do after the last row of a custom family.
    #[arg(long, value_enum, default_value_t = Tail::Equi, global = true)]
    pub tail: Tail,

    /// Run batch computations on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    Double,
    Extended,
}

impl From<Precision> for PrecisionMode {
    fn from(p: Precision) -> Self {
        match p {
            Precision::Double => PrecisionMode::Double,
            Precision::Extended => PrecisionMode::Extended,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tail {
    Equi,
    Reject,
}

impl From<Tail> for TailPolicy {
    fn from(t: Tail) -> Self {
        match t {
            Tail::Equi => TailPolicy::EquiTail,
            Tail::Reject => TailPolicy::Reject,
        }
    }
}

/// An index window `LO:HI`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window(pub usize, pub usize);

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s.split_once(':').ok_or_else(|| format!("`{s}` is not of the form LO:HI"))?;
        let parse = |t: &str| t.trim().parse::<f64>().ok().filter(|v| v.fract() == 0.0 && *v >= 1.0 && *v <= 1e12);
        match (parse(lo), parse(hi)) {
            (Some(lo), Some(hi)) if lo < hi => Ok(Window(lo as usize, hi as usize)),
            _ => Err(format!("`{s}` needs integers 1 <= LO < HI")),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First terms of the decreasing sequence with their origins.
    Enumerate {
        #[arg(long)]
        family: FamilySpec,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
        count: u64,
    },
    /// Power-law fit of the sequence over an index window.
    Decay {
        #[arg(long)]
        family: FamilySpec,
        #[arg(long, default_value = "1000:100000")]
        window: Window,
    },
    /// Two-sided enclosure of the power sum of all lengths.
    Tau {
        #[arg(long)]
        family: FamilySpec,
        /// Exponents, each greater than 2.
        #[arg(long, value_delimiter = ',', default_value = "3")]
        p: Vec<f64>,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
        rows: u64,
    },
    /// Regularized zeta bound near p = 2 and its extrapolated limit.
    GammaProbe {
        /// Exponents in (2, 3]; defaults to 2 + 2^-k for k = 1..8.
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
    },
    /// Minimum of sqrt(j) a_j over index windows.
    Liminf {
        #[arg(long)]
        family: FamilySpec,
        #[arg(long, default_value = "10000:40000")]
        window: Vec<Window>,
    },
    /// Prolate spheroid spectra.
    Np {
        #[command(subcommand)]
        command: NpCommand,
    },
    /// Runs the invariant suite; exits 0 only if every check passes.
    Verify,
}

#[derive(Debug, Subcommand)]
pub enum NpCommand {
    /// Eigenvalues by degree and azimuthal order.
    Eigen {
        #[arg(long)]
        xi0: f64,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// Willmore energy and Weyl coefficients, optionally with an empirical fit.
    Weyl {
        #[arg(long)]
        xi0: f64,
        /// Fit the doubled spectrum over this window.
        #[arg(long)]
        fit_window: Option<Window>,
        #[arg(long, default_value_t = 400)]
        n_max: usize,
    },
    /// Shape whose doubled Weyl coefficient equals the target.
    SolveC {
        #[arg(long)]
        target: f64,
    },
    /// Nyström eigenvalues against the closed form.
    Oracle {
        #[arg(long)]
        xi0: f64,
        #[arg(long, default_value_t = 3200)]
        nodes: usize,
        #[arg(long, default_value_t = 9)]
        k: usize,
        /// Largest degree of the closed-form spectrum used for comparison.
        #[arg(long, default_value_t = 16)]
        n_max: usize,
    },
}

impl Command {
    pub fn supports_plot(&self) -> bool {
        matches!(self, Command::Enumerate { .. } | Command::Decay { .. })
    }
}
