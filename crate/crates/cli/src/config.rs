use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cycbmw::params::{generic_specialization, parse_preset};
use cycbmw::seminormal::MAX_PRECISION;
use cycbmw::ExactParams;

use crate::CliError;

pub const DEFAULT_MAX_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "bmw", version, about = "Reports for cyclotomic BMW algebras with odd r")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Number of cyclotomic parameters (odd). Taken from the preset when one is given.
    #[arg(long, global = true)]
    pub r: Option<usize>,
    /// Number of strands.
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Parameter preset (key=value lines: r, q, k or u, alpha).
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "seed")]
    pub preset: Option<PathBuf>,
    /// Shifts q in the generated parameters.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Ball working precision in bits.
    #[arg(long, global = true, default_value_t = 512, value_name = "BITS")]
    pub precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Ground parameters, omega dump, admissibility and generating functions.
    Params,
    /// Up-down tableaux and coset counts.
    Tabs {
        /// Counts per shape instead of full enumerations.
        #[arg(long)]
        count: bool,
    },
    /// Build every seminormal module and verify the defining relations.
    Rep,
    /// Exact identity suites on every module.
    Identities,
    /// omega_k^(a) tables, recursion against residue form.
    Omega {
        /// Series order; defaults to 4r.
        #[arg(long)]
        order: Option<usize>,
    },
    /// The irreducible B_{r,2}-modules, their count, det A_d and gamma.
    Br2,
    /// Cellular index-set sizes.
    Basis,
    /// Certified rank of the cellular words.
    Rank {
        /// Include wall-clock time (breaks byte-identical reruns).
        #[arg(long)]
        timing: bool,
    },
    /// Gram values on the f = n/2 cell.
    Gram,
    /// Irreducible labels at the current parameters.
    Classify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Params => "params",
            Command::Tabs { .. } => "tabs",
            Command::Rep => "rep",
            Command::Identities => "identities",
            Command::Omega { .. } => "omega",
            Command::Br2 => "br2",
            Command::Basis => "basis",
            Command::Rank { .. } => "rank",
            Command::Gram => "gram",
            Command::Classify => "classify",
        }
    }
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub r: usize,
    pub n: usize,
    pub params: ExactParams,
    /// `seed=N` or `preset=PATH`, echoed into reports.
    pub source: String,
    /// Drives the random draws of `br2`; `0` under a preset.
    pub seed: u64,
    pub precision: u32,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// `BMW_MAX_N`, or the default cap.
pub fn max_n() -> Result<usize, CliError> {
    match std::env::var("BMW_MAX_N") {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("BMW_MAX_N must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let c = cli.common;
        let cap = max_n()?;
        if c.n > cap {
            return Err(CliError::Usage(format!("n = {} exceeds the cap {cap} (set BMW_MAX_N to raise it)", c.n)));
        }
        if !(32..=MAX_PRECISION).contains(&c.precision) {
            return Err(CliError::Usage(format!("precision must lie in 32..={MAX_PRECISION}, got {}", c.precision)));
        }
        let seed = c.seed.unwrap_or(0);
        let (params, source) = match &c.preset {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                let p = parse_preset(&text).map_err(|e| CliError::Usage(e.to_string()))?;
                if let Some(r) = c.r {
                    if r != p.r() {
                        return Err(CliError::Usage(format!("--r {r} disagrees with the preset's r = {}", p.r())));
                    }
                }
                (p, format!("preset={}", path.display()))
            }
            None => {
                let r = c.r.unwrap_or(1);
                let p = generic_specialization(r, c.n.max(2), seed).map_err(|e| CliError::Usage(e.to_string()))?;
                (p, format!("seed={seed}"))
            }
        };
        Ok(RunConfig {
            command: cli.command,
            r: params.r(),
            n: c.n,
            params,
            source,
            seed,
            precision: c.precision,
            format: c.format,
            out: c.out,
        })
    }
}
