use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "nadyn", version, about = "Exact analysis of non-autonomous piecewise-linear systems")]
pub struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SystemArg {
    /// Bundled example name (tent, doubling, example31,
    /// tent_doubling_alternating) or path to a JSON system file.
    #[arg(long)]
    pub system: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the orbit map f₀ⁿ at a point.
    Eval {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        x: String,
        /// Number of maps applied.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Forward image f₀ⁿ(S).
    Image {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Preimage (f₀ⁿ)⁻¹(S).
    Preimage {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Correlations c_i = μ(A ∩ f₀⁻ⁱ(B)) for i < N.
    Correlate {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        pair: SetPair,
        /// Number of terms.
        #[arg(long = "N")]
        horizon: usize,
        /// Also write the series as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Cesàro averages of |c_i − μ(A)μ(B)|.
    Cesaro {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        pair: SetPair,
        #[arg(long = "N")]
        horizon: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Density window of an index set, optionally intersected with a second.
    Density {
        /// Comma-separated members.
        #[arg(long)]
        members: String,
        /// Indices range over 0..horizon.
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value_t = 1)]
        tail_start: usize,
        /// Second index set for the intersection witness.
        #[arg(long)]
        with: Option<String>,
        #[arg(long, default_value_t = 0)]
        cutoff: usize,
    },
    /// Exceptional-set extraction for a nonnegative sequence.
    Kvn {
        /// Comma-separated rationals. Mutually exclusive with --system.
        #[arg(long, conflicts_with_all = ["system", "a", "b", "horizon"])]
        sequence: Option<String>,
        /// Use the correlation deviations of this system instead.
        #[arg(long, requires_all = ["a", "b", "horizon"])]
        system: Option<String>,
        #[arg(long = "A")]
        a: Option<String>,
        #[arg(long = "B")]
        b: Option<String>,
        #[arg(long = "N")]
        horizon: Option<usize>,
        /// Comma-separated strictly decreasing thresholds.
        #[arg(long)]
        thresholds: Option<String>,
    },
    /// Hitting set N(U,V) ∩ {1..H}.
    Hitting {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long = "U")]
        u: String,
        #[arg(long = "V")]
        v: String,
        #[arg(long = "H")]
        horizon: usize,
    },
    /// Transitivity verdict on a grid.
    Transitivity(VerdictArgs),
    /// Weak-mixing verdict on a grid.
    Weakmix(VerdictArgs),
    /// Mixing verdict on a grid.
    Mixing(VerdictArgs),
    /// Scale-bounded sensitivity certificate.
    Sensitivity {
        #[command(flatten)]
        system: SystemArg,
        /// Separation constant. Defaults to |x0 − y0|/8 for --pair.
        #[arg(long, conflicts_with = "pair")]
        delta: Option<String>,
        /// Two distinct points "x0,y0"; delta becomes |x0 − y0|/8.
        #[arg(long)]
        pair: Option<String>,
        #[arg(long)]
        scale: String,
        #[arg(long = "H")]
        horizon: usize,
    },
    /// Monte Carlo estimate of a correlation, or of orbit separation when
    /// --x is given.
    Mc {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long = "A", requires = "b", conflicts_with = "x")]
        a: Option<String>,
        #[arg(long = "B", requires = "a")]
        b: Option<String>,
        #[arg(long, requires = "epsilon")]
        x: Option<String>,
        #[arg(long)]
        epsilon: Option<String>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Run the bundled reproduction scenario for an example.
    Verify {
        /// Bundled example name.
        example: String,
    },
}

#[derive(Debug, Args)]
pub struct SetPair {
    #[arg(long = "A")]
    pub a: String,
    #[arg(long = "B")]
    pub b: String,
}

#[derive(Debug, Args)]
pub struct VerdictArgs {
    #[command(flatten)]
    pub system: SystemArg,
    /// Cell width; must divide the domain length.
    #[arg(long)]
    pub grid: String,
    #[arg(long = "H")]
    pub horizon: usize,
}
