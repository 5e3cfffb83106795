//! `quasimod`: command-line front end for the quasimod library.
//!
//! Exit codes: 0 when every check passed, 1 when violations were found (the
//! report lists the witnesses), 2 on input or usage errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quasimod::{Side, TConorm};

/// Default seed of the randomized suites.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(
    name = "quasimod",
    version,
    about = "Checks and constructions for quasi-modular pseudometric spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input JSON document.
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,

    /// Report path; standard output when omitted.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Numerical tolerance of bisections and tolerance-band checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Seed of randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Comma-separated scale grid, overriding the document's grid.
    #[arg(long, global = true, value_delimiter = ',')]
    pub grid: Option<Vec<f64>>,

    /// Conorm of conorm-regime gauges, overriding the document's.
    #[arg(long, global = true)]
    pub conorm: Option<ConormArg>,

    /// Ball side.
    #[arg(long, global = true, default_value = "forward")]
    pub side: SideArg,

    /// Also write the main matrix of the report as CSV.
    #[arg(long, global = true)]
    pub csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sweep the gauge axioms of a gauge document.
    CheckAxioms {
        /// Also sweep convex scaling.
        #[arg(long)]
        convexity: bool,
        /// Also check the enriched triangle (conorm regime).
        #[arg(long)]
        enriched: bool,
        /// Number of single-entry corruption trials.
        #[arg(long, default_value_t = 0)]
        corruptions: usize,
    },
    /// Left, right, join and symmetric topologies with the quasi-uniformity axioms.
    Topology,
    /// Covers of a gauge, Cauchy classification of a sequence, or the
    /// uniform-tail criterion of a sequence family, depending on the input.
    Cover {
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        scale: Option<f64>,
        /// Target point of the convergence test (sequence input).
        #[arg(long)]
        limit: Option<String>,
        /// Tail threshold (family input).
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
    /// Luxemburg quasi-distances of an additive gauge.
    Luxemburg {
        /// Threshold `c`.
        #[arg(long, default_value_t = 1.0)]
        threshold: f64,
    },
    /// Path distances, asymmetry and energies of a directed graph.
    Graph {
        /// Cost schedule document.
        #[arg(long)]
        schedule: Option<PathBuf>,
        /// Query time for the schedule.
        #[arg(long, default_value_t = 0.0)]
        time: f64,
        /// Vertex function document for the energies.
        #[arg(long)]
        function: Option<PathBuf>,
        /// Exponent of the power edge function.
        #[arg(long, default_value_t = 2.0)]
        power: f64,
    },
    /// Modular, Luxemburg norm and unit-ball clauses; one-sided gauges when
    /// the document has `psi1`/`psi2`.
    Orlicz,
    /// Upper and lower Lipschitz envelopes of a partial function.
    Envelope,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConormArg {
    Max,
    ProbSum,
    BoundedSum,
}

impl From<ConormArg> for TConorm {
    fn from(c: ConormArg) -> Self {
        match c {
            ConormArg::Max => TConorm::Max,
            ConormArg::ProbSum => TConorm::ProbabilisticSum,
            ConormArg::BoundedSum => TConorm::BoundedSum,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Forward,
    Backward,
    Sym,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Forward => Side::Forward,
            SideArg::Backward => Side::Backward,
            SideArg::Sym => Side::TwoSided,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("QUASIMOD_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
