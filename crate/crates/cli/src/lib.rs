//! The `hombound` command line. Every subcommand wraps one library call;
//! `--json` prints the call's result as JSON with `exact` marking values
//! that are exact rationals.
//!
//! Environment:
//!
//! * `HOMBOUND_SEED` replaces the default seed (7) when `--seed` is absent.
//! * `HOMBOUND_DEPTH` replaces the default expansion depth (60) when
//!   `--depth` is absent.
//!
//! Both are echoed under `meta` in JSON output.
//!
//! Exit status is 0 on success, 2 on a usage or input error and 1 when the
//! computation itself fails.

mod commands;
mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hombound::boundary::DEFAULT_DEPTH;
use hombound::random::DEFAULT_SEED;
use serde_json::{json, Map, Value};

pub use input::FormatFlag;

pub const SEED_VAR: &str = "HOMBOUND_SEED";
pub const DEPTH_VAR: &str = "HOMBOUND_DEPTH";

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
}

impl From<hombound::Error> for Failure {
    fn from(e: hombound::Error) -> Self {
        match e {
            hombound::Error::Parse { .. } | hombound::Error::InvalidParameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "hombound", version, about = "Induced densities, lexicographic products and the boundary curve")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// How to read graph arguments.
    #[arg(long, global = true, value_enum, default_value_t = FormatFlag::Auto)]
    pub format: FormatFlag,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Backend {
    /// Use f64 arithmetic instead of exact rationals.
    #[arg(long)]
    pub float: bool,
}

#[derive(Args, Debug, Clone)]
pub struct Gnp {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "1/2")]
    pub p: String,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct SetupArgs {
    /// Order of the two stringent graphs.
    #[arg(long, default_value_t = hombound::boundary::DEFAULT_N)]
    pub n: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Binary digits kept in every expansion.
    #[arg(long)]
    pub depth: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Prime,
    Asymmetric,
    Stringent,
    Homogeneous,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Induced density t(F; G) of one graph in another.
    Density {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        target: String,
    },
    /// Induced density in a vertex-weighted graph.
    Wdensity {
        #[arg(long)]
        pattern: String,
        /// `n=..; edges: ..; mu: ..` or a plain graph for uniform weights.
        #[arg(long)]
        target: String,
        #[command(flatten)]
        backend: Backend,
    },
    /// Evaluate a quantum graph expression on a weighted graph.
    Eval {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        target: String,
        /// Label images as `label=vertex,...`.
        #[arg(long)]
        pin: Option<String>,
        #[command(flatten)]
        backend: Backend,
    },
    /// Test a structural property.
    Check {
        #[arg(value_enum)]
        property: Property,
        #[arg(long)]
        graph: String,
        /// Vertex set for `homogeneous`, as `0,2,5`.
        #[arg(long)]
        set: Option<String>,
    },
    /// Whether a vertex map from one graph to another is a folding.
    Fold {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        onto: String,
        /// Images of the vertices of `--graph`, as `0,1,0`.
        #[arg(long)]
        map: String,
    },
    /// Draw graphs from G(n, p).
    Sample {
        #[command(flatten)]
        gnp: Gnp,
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
    /// Estimate the rate of stringent graphs in G(n, p).
    Rate {
        #[command(flatten)]
        gnp: Gnp,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Union bound on the probability that G(n, p) is not prime.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        p: String,
    },
    /// First stringent sample from G(n, p).
    FindStringent {
        #[command(flatten)]
        gnp: Gnp,
        #[arg(long, default_value_t = hombound::random::DEFAULT_ATTEMPT_CAP)]
        cap: u64,
    },
    /// Density of a prime pattern in an infinite lexicographic product.
    LexDensity {
        #[arg(long)]
        pattern: String,
        /// `prefix: [..]; cycle: [..]`.
        #[arg(long)]
        spec: String,
        /// Keep only the first N levels and report an error bound.
        #[arg(long, value_name = "N")]
        truncate: Option<usize>,
        #[command(flatten)]
        backend: Backend,
    },
    /// Blow up each vertex into an independent set.
    Blowup {
        #[arg(long)]
        graph: String,
        /// Part sizes, as `2,1,3`.
        #[arg(long)]
        sizes: String,
    },
    /// Lexicographic product of two weighted graphs.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[command(flatten)]
        backend: Backend,
    },
    /// The stringent pair, weights and constants behind the curve.
    Setup {
        #[command(flatten)]
        setup: SetupArgs,
    },
    /// Sample the boundary curve psi.
    Curve {
        #[command(flatten)]
        setup: SetupArgs,
        #[arg(long, default_value_t = 1024)]
        resolution: usize,
        /// Also include every lambda = m / 2^L.
        #[arg(long, default_value_t = hombound::boundary::DEFAULT_DYADIC_LEVEL)]
        dyadic_level: u32,
        /// Print an SVG polyline instead of CSV.
        #[arg(long)]
        svg: bool,
    },
    /// Largest difference quotients of psi at scales 2^-j.
    Quotients {
        #[command(flatten)]
        setup: SetupArgs,
        #[arg(long, default_value_t = 4)]
        j_min: u32,
        #[arg(long, default_value_t = 20)]
        j_max: u32,
    },
    /// Random points (t(P4; W), t(K2; W)) from products with random level sets.
    Scatter {
        #[command(flatten)]
        setup: SetupArgs,
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
    /// Residuals of the split-forcing aggregate on finite powers.
    ForcingResidual {
        /// A stringent graph; drawn from G(6, 1/2) when absent.
        #[arg(long)]
        graph: Option<String>,
        /// Vertex weights; uniform when absent.
        #[arg(long)]
        mu: Option<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Flag,
    Env,
    Default,
}

impl Source {
    fn name(self) -> &'static str {
        match self {
            Source::Flag => "flag",
            Source::Env => "env",
            Source::Default => "default",
        }
    }
}

/// Seed and depth after applying flags, then environment, then defaults.
#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub seed: u64,
    pub seed_source: Source,
    pub depth: usize,
    pub depth_source: Source,
}

fn resolve<T: std::str::FromStr>(flag: Option<T>, var: &str, default: T) -> Result<(T, Source), Failure> {
    if let Some(v) = flag {
        return Ok((v, Source::Flag));
    }
    match std::env::var(var) {
        Ok(s) => s
            .trim()
            .parse()
            .map(|v| (v, Source::Env))
            .map_err(|_| Failure::Usage(format!("{var}={s:?} is not a valid value"))),
        Err(_) => Ok((default, Source::Default)),
    }
}

impl Settings {
    pub fn resolve(seed: Option<u64>, depth: Option<usize>) -> Result<Self, Failure> {
        let (seed, seed_source) = resolve(seed, SEED_VAR, DEFAULT_SEED.0)?;
        let (depth, depth_source) = resolve(depth, DEPTH_VAR, DEFAULT_DEPTH)?;
        Ok(Settings { seed, seed_source, depth, depth_source })
    }

    fn meta(&self) -> Value {
        json!({
            "seed": self.seed,
            "seed_source": self.seed_source.name(),
            "depth": self.depth,
            "depth_source": self.depth_source.name(),
        })
    }
}

/// What a subcommand produced: plain text, and for `--json` any number of
/// record lines followed by one summary object.
pub struct Report {
    pub text: String,
    pub records: Vec<Value>,
    pub summary: Map<String, Value>,
}

impl Report {
    fn new(text: impl Into<String>, summary: Value) -> Self {
        let summary = match summary {
            Value::Object(m) => m,
            other => Map::from_iter([("value".to_string(), other)]),
        };
        Report { text: text.into(), records: Vec::new(), summary }
    }

    fn render(self, json_mode: bool, command: &str, settings: &Settings) -> String {
        if !json_mode {
            let mut t = self.text;
            if !t.ends_with('\n') {
                t.push('\n');
            }
            return t;
        }
        let mut out = String::new();
        for r in &self.records {
            out += &r.to_string();
            out.push('\n');
        }
        let mut head = Map::new();
        head.insert("command".into(), command.into());
        head.extend(self.summary);
        head.insert("meta".into(), settings.meta());
        out += &Value::Object(head).to_string();
        out.push('\n');
        out
    }
}

/// Parses `args` (program name first), runs the subcommand and writes its
/// output. Returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => match &cli.out {
            Some(path) => match std::fs::write(path, text) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                    1
                }
            },
            None => {
                let _ = stdout.write_all(text.as_bytes());
                0
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let (seed, depth) = match &cli.command {
        Command::Sample { gnp, .. } | Command::Rate { gnp, .. } | Command::FindStringent { gnp, .. } => (gnp.seed, None),
        Command::Setup { setup } | Command::Curve { setup, .. } | Command::Quotients { setup, .. } | Command::Scatter { setup, .. } => {
            (setup.seed, setup.depth)
        }
        Command::ForcingResidual { seed, .. } => (*seed, None),
        _ => (None, None),
    };
    let settings = Settings::resolve(seed, depth)?;
    let report = commands::dispatch(&cli.command, cli.format, cli.json, &settings)?;
    Ok(report.render(cli.json, command_name(&cli.command), &settings))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Density { .. } => "density",
        Command::Wdensity { .. } => "wdensity",
        Command::Eval { .. } => "eval",
        Command::Check { .. } => "check",
        Command::Fold { .. } => "fold",
        Command::Sample { .. } => "sample",
        Command::Rate { .. } => "rate",
        Command::Bound { .. } => "bound",
        Command::FindStringent { .. } => "find-stringent",
        Command::LexDensity { .. } => "lex-density",
        Command::Blowup { .. } => "blowup",
        Command::Product { .. } => "product",
        Command::Setup { .. } => "setup",
        Command::Curve { .. } => "curve",
        Command::Quotients { .. } => "quotients",
        Command::Scatter { .. } => "scatter",
        Command::ForcingResidual { .. } => "forcing-residual",
    }
}
