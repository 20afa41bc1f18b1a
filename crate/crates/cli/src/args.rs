use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use dlab_core::catalog::Family;
use dlab_core::search::Symmetry;
use dlab_core::suites::{Suite, DEFAULT_SEED};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "dlab", version, about = "Regular two-level designs by doubling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,

    /// Where to write the run manifest (default: `<out>.manifest.json`, or
    /// stderr when writing to stdout).
    #[arg(long, global = true)]
    #[serde(skip)]
    pub manifest: Option<PathBuf>,

    /// Worker thread cap.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build a catalog design.
    Construct {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        t: u32,
        /// Delete the constructed complement of this size (max-5n16 only).
        #[arg(long)]
        complement_u: Option<usize>,
    },
    /// Double a design file one or more times.
    Double {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Keep or drop columns (1-based, e.g. `1,3,5-9`).
    Project {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, conflicts_with = "drop", required_unless_present = "drop")]
        keep: Option<Columns>,
        #[arg(long)]
        drop: Option<Columns>,
    },
    /// Exact wordlength pattern and resolution.
    Wlp {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Differences between kept and deleted parts of a doubled design.
    Delta {
        /// Design file with a pedigree.
        #[arg(long = "in", required_unless_present = "family")]
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        family: Option<Family>,
        #[arg(long, default_value_t = 1)]
        t: u32,
        /// Deleted columns.
        #[arg(long)]
        complement: Columns,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
    },
    /// Run a named verification suite.
    Verify {
        suite: Suite,
        #[arg(long)]
        family: Option<Family>,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long)]
        u: Option<u32>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Search complements of size `u` for the smallest sequential key.
    Search {
        #[arg(long, default_value = "max-5n16")]
        family: Family,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        u: usize,
        /// Only balanced frequency vectors.
        #[arg(long)]
        balanced: bool,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, env = "DLAB_BUDGET")]
        budget: Option<u64>,
        #[arg(long, default_value = "full")]
        symmetry: Symmetry,
        /// Skip the unbalanced comparison run after a balanced search.
        #[arg(long)]
        no_unconstrained_check: bool,
        #[arg(long, default_value_t = 16)]
        max_ties: usize,
    },
    /// Closed-form bounds, as a single value with `--n` or a table.
    Bounds {
        #[arg(long)]
        which: BoundKind,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: Option<u64>,
    },
    /// The 256-run table for 69 to 79 factors.
    #[command(name = "reproduce-s6")]
    ReproduceS6 {
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Skip the exhaustive search confirming each complement.
        #[arg(long)]
        no_certify: bool,
        #[arg(long, env = "DLAB_BUDGET")]
        budget: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Corollary2,
    Lemma3,
    Lemma4,
    Lemma6,
    Lemma7,
}

/// Column list such as `1,3,5-9`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Columns(pub Vec<usize>);

impl FromStr for Columns {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let num = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("bad column '{x}': {e}"));
            match part.split_once('-') {
                Some((a, b)) => {
                    let (a, b) = (num(a)?, num(b)?);
                    if a > b {
                        return Err(format!("empty range {part}"));
                    }
                    out.extend(a..=b);
                }
                None => out.push(num(part)?),
            }
        }
        Ok(Columns(out))
    }
}
