use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Symmetry-breaking indices of small graphs and Cartesian products.
///
/// GRAPH arguments take a family (`path:5`, `cycle:6`, `complete:4`,
/// `kbipartite:3,3`, `hypercube:3`, `grid:4x5`), a product of factors
/// separated by `x` (`path:4 x path:5`), or `file:PATH` with an edge list.
#[derive(Debug, Parser)]
#[command(name = "symbreak", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Args, Clone)]
pub struct GlobalOpts {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Maximum number of colourings any enumeration may visit.
    #[arg(long, global = true, env = "SYMBREAK_BUDGET")]
    pub budget: Option<u64>,

    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Automorphism group: order, generators, orbits, motion.
    Aut {
        graph: String,
        /// List every element.
        #[arg(long)]
        elements: bool,
    },
    /// Every index in one table.
    Indices {
        graph: String,
        #[arg(long, default_value = "1..4")]
        k: KRange,
        #[arg(long, default_value = "auto")]
        backend: String,
    },
    /// Distinguishing number D(G) with a certificate colouring.
    Dnum { graph: String },
    /// Distinguishing threshold θ(G) from the automorphism group.
    Theta { graph: String },
    /// Non-equivalent distinguishing colourings with at most k colours.
    Phi {
        graph: String,
        #[arg(long)]
        k: KRange,
        #[arg(long, default_value = "auto")]
        backend: String,
    },
    /// Non-equivalent distinguishing colourings with exactly k colours.
    Varphi {
        graph: String,
        #[arg(long)]
        k: KRange,
        #[arg(long, default_value = "auto")]
        backend: String,
        /// Use k!·S(n,k)/|Aut| (requires k ≥ θ).
        #[arg(long)]
        closed: bool,
    },
    /// Test whether a colouring is distinguishing.
    ///
    /// COLORING is a comma-separated list in vertex order, or
    /// `red=(i,j),(i,j)` with 1-based product coordinates (all other
    /// vertices get colour 1, red ones colour 2).
    Check {
        graph: String,
        coloring: String,
        /// Automorphisms of the quotient used by the layer-wise test.
        #[arg(long, value_enum, default_value_t = Mode::Full)]
        mode: Mode,
    },
    /// Closed-form threshold of a product of prime factors.
    ProductTheta {
        graph: String,
        /// Also compute θ from the product's automorphism group.
        #[arg(long)]
        oracle: bool,
    },
    /// Compare closed forms against independent oracles.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[arg(long, default_value = "2..4")]
        m: KRange,
        #[arg(long, default_value = "2..4")]
        n: KRange,
        #[arg(long, default_value = "2..3")]
        k: KRange,
        #[arg(long, default_value = "auto")]
        backend: String,
        /// Seed for sampled checks.
        #[arg(long, default_value_t = symbreak_core::indices::SATURATION_SEED)]
        seed: u64,
        /// Colourings sampled per graph in the saturation check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Full,
    #[value(name = "aut_f", alias = "aut-f")]
    AutF,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    /// Grid formulas against counted Φ_k.
    Grids,
    /// Path and cycle thresholds, the motion bound, φ_k closed form and
    /// saturation.
    Thresholds,
    /// Product thresholds and the layer-wise test.
    Products,
    All,
}

/// Inclusive range `a..b`, or a single value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRange {
    pub lo: u32,
    pub hi: u32,
}

impl KRange {
    pub fn iter(self) -> impl Iterator<Item = u32> {
        self.lo..=self.hi
    }

    pub fn is_single(self) -> bool {
        self.lo == self.hi
    }
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(Self { lo, hi })
    }
}
