mod commands;
mod error;
mod json;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;

/// Exact computations for semistable Sp6-orbits, composition-algebra flags and
/// Freudenthal algebras. Prints one JSON document on standard output.
#[derive(Debug, Parser)]
#[command(name = "sp6flags", version)]
pub struct Cli {
    /// Also write the JSON document to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArg {
    /// `Q`, `Q(sqrt:D)` or `F:p`.
    #[arg(long, default_value = "Q")]
    pub field: String,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    /// A trivector, as text (`-1*e123 - 2*e456`) or as a JSON map `{"123": "-1", ...}`.
    #[arg(long, conflicts_with = "nf", allow_hyphen_values = true)]
    pub trivector: Option<String>,
    /// Normal form `y0,y1,y2,y3`.
    #[arg(long, allow_hyphen_values = true)]
    pub nf: Option<String>,
    /// Canonical v-pattern 1, 2 or 3 used with `--nf`.
    #[arg(long, requires = "nf")]
    pub pattern: Option<usize>,
    /// Explicit v-part used with `--nf`.
    #[arg(long, requires = "nf", conflicts_with = "pattern", allow_hyphen_values = true)]
    pub v: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    X,
    V,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Formula,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    Tower,
    Zorn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessCase {
    #[value(name = "thmCD_g")]
    ThmCdG,
    #[value(name = "spPV_chain")]
    SpPvChain,
    #[value(name = "sl2_embed")]
    Sl2Embed,
    #[value(name = "sl3_embed")]
    Sl3Embed,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate f, f1, f2 and semistability.
    Eval {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Move (x_split, v) to (x_split, (q(v),0,0,1,0,0)) inside SL3.
    Canonicalize {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, allow_hyphen_values = true)]
        y0: String,
        /// `v1,...,v6`.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Lie stabilizer in sp6, its Killing form and the quaternion norm.
    Stabilizer {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Maximal flag of composition algebras attached to a normal-form point over Q.
    Flag {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, allow_hyphen_values = true)]
        nf: String,
        #[arg(long, default_value_t = 1)]
        pattern: usize,
    },
    /// Freudenthal algebra H3(C, Γ): trace form and cubic identities.
    Freudenthal {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum, default_value = "tower")]
        algebra: AlgebraArg,
        /// Doubling constants of the tower (0 to 3, comma separated).
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        lambdas: String,
        #[arg(long, default_value = "1,1,1", allow_hyphen_values = true)]
        gamma: String,
        /// Build the algebras attached to the flag of this normal form instead.
        #[arg(long, allow_hyphen_values = true)]
        nf: Option<String>,
        #[arg(long, default_value_t = 1)]
        pattern: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Fiber counts of (f1, f2) over F_p against orbit-stabilizer predictions.
    Census {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, value_enum, default_value = "x")]
        level: LevelArg,
        #[arg(long, value_enum, default_value = "formula")]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Percentage of kernel points checked in brute mode.
        #[arg(long, default_value_t = 1)]
        sample_percent: u32,
        /// Allow scans up to 5^14 kernel points.
        #[arg(long)]
        extended_budget: bool,
    },
    /// Run the property suites.
    Verify {
        /// A suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Check one of the explicit group elements from the orbit arguments.
    Witness {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long = "case", value_enum)]
        case: WitnessCase,
        #[arg(long, allow_hyphen_values = true)]
        i: Option<String>,
        /// `y0,y1,y2,y3` for thmCD_g.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y0: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// `C1` for sl2_embed or `A` for sl3_embed, rows separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(|| commands::run(&cli.command));
    let (doc, ok) = match result {
        Ok(Ok(v)) => v,
        Ok(Err(e)) => {
            eprintln!("sp6flags: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
        Err(_) => {
            eprintln!("sp6flags: {}", CliError::Internal("assertion failed".into()));
            return ExitCode::from(4);
        }
    };
    let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("sp6flags: cannot write {}: {e}", path.display());
            return ExitCode::from(4);
        }
    }
    let _ = writeln!(std::io::stdout(), "{text}");
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
