use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "delta-springer", version, about = "Cup diagrams, homology and Hecke algebra actions for two-row Δ-Springer fibres")]
pub struct Cli {
    /// Output format. Not every command supports every format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Parameter constraints: strict is 0 <= m <= k <= n/2.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Strict)]
    pub mode: ModeArg,

    /// Worker threads for sweep. Output is identical for every value.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
    Ascii,
    Tikz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    Relaxed,
    AnyK,
}

#[derive(Args, Clone, Copy, Debug)]
pub struct Shape {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: usize,
}

/// A diagram given either as a weight string or as JSON, ASCII or TikZ text.
#[derive(Args, Clone, Debug)]
#[group(required = true, multiple = false)]
pub struct DiagramInput {
    /// Weight such as `v^^v|^v`; the diagram is its cup diagram.
    #[arg(long)]
    pub weight: Option<String>,
    /// Diagram text in any rendered format, or `@path` to read a file.
    #[arg(long)]
    pub diagram: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Hecke,
    Stability,
    Typec,
    Specht,
    Equivariance,
    Commutant,
    Extremal,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Hecke, Suite::Stability, Suite::Typec, Suite::Specht, Suite::Equivariance, Suite::Commutant, Suite::Extremal];

    pub fn expand(suites: &[Suite]) -> Vec<Suite> {
        let mut out: Vec<Suite> = suites.iter().flat_map(|&s| if s == Suite::All { Suite::EACH.to_vec() } else { vec![s] }).collect();
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    /// The classes L_α.
    L,
    /// All line classes l_U.
    Lines,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TensorCheck {
    Equivariance,
    Commutant,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cup diagrams of shape (n, k, m) in canonical order.
    Enumerate(Shape),
    /// Δ-weights of shape (n, k, m) in lexicographic order.
    Weights(Shape),
    /// Betti numbers b_0..b_k.
    Betti(Shape),
    /// Expansion of L_α in line classes.
    LExpand {
        #[arg(long)]
        weight: String,
    },
    /// Matrix of one generator on one degree block.
    Matrix {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        degree: usize,
        /// s<i>, x<i>, sprime<i>, jm<i> or jmt<i>.
        #[arg(long)]
        generator: String,
        #[arg(long, value_enum, default_value_t = BasisArg::L)]
        basis: BasisArg,
        /// `springer`, `zero`, or comma-separated ξ_0,...,ξ_{n-m}.
        #[arg(long, default_value = "springer")]
        xi: String,
    },
    /// Run a verification suite. Exit status 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        shape: Shape,
        /// Restrict equivariance and commutant to one degree.
        #[arg(long)]
        degree: Option<usize>,
        /// ξ for the hecke, stability and typec suites.
        #[arg(long, default_value = "springer")]
        xi: String,
        /// Basis for the hecke suite.
        #[arg(long, value_enum, default_value_t = BasisArg::L)]
        basis: BasisArg,
    },
    /// Specht decomposition of each degree block.
    Decompose {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Intersection of two components.
    Intersect {
        /// First diagram: a weight string or rendered diagram text.
        #[arg(long)]
        a: String,
        /// Second diagram, same shape as the first.
        #[arg(long)]
        b: String,
    },
    /// Render a diagram as json, ascii or tikz.
    Render(DiagramInput),
    /// Tensor space model.
    Tensor {
        #[command(subcommand)]
        command: TensorCommand,
    },
    /// Run suites over every strict (n, k, m) with n <= max-n.
    Sweep {
        #[arg(long)]
        max_n: usize,
        /// Comma-separated suites.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
        suites: Vec<Suite>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TensorCommand {
    /// The highest weight vector p_a of a diagram.
    PVector(DiagramInput),
    /// Equivariance or commutant check. Exit status 1 on failure.
    Verify {
        #[arg(value_enum)]
        check: TensorCheck,
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        degree: Option<usize>,
    },
}
