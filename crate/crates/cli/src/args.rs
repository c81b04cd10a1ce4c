use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "semiloop", version, about = "Left loops, transversals and semidirect products")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for sweeps.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check loop identities on a loop table.
    Check {
        path: String,
        /// Comma-separated identity names; all of them by default.
        #[arg(long, value_delimiter = ',')]
        identities: Vec<String>,
    },

    /// Decompose a group along a subgroup and a transversal.
    #[command(group(ArgGroup::new("choice").required(true).args(["transversal", "all_transversals"])))]
    Decompose {
        group: String,
        #[arg(long, value_delimiter = ',', required = true)]
        subgroup: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        transversal: Option<Vec<usize>>,
        /// One summary line per unital transversal.
        #[arg(long)]
        all_transversals: bool,
        /// Stop after this many transversals (0 for all).
        #[arg(long, default_value_t = 0)]
        limit: usize,
        /// Write the induced loop to this file.
        #[arg(long)]
        write_loop: Option<String>,
    },

    /// Build a group table from a product construction.
    #[command(group(ArgGroup::new("source").required(true).args(["standard", "external", "heisenberg"])))]
    Build {
        /// A loop table and the acting group: `lmlt1`, `aut`, `psaut`,
        /// `trivial` or a file of generating permutations.
        #[arg(long, num_args = 2, value_names = ["LOOP", "H"])]
        standard: Option<Vec<String>>,
        /// An external spec file.
        #[arg(long)]
        external: Option<String>,
        /// The order-p³ product of the plane over F_p with F_p.
        #[arg(long)]
        heisenberg: Option<usize>,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<String>,
    },

    /// Sweep the structure theorems over small groups and loops.
    VerifyTheorems {
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        /// Transversals per (group, subgroup) pair; 0 for all.
        #[arg(long, default_value_t = 512)]
        cap: usize,
        /// Every left loop up to this order (at most 5).
        #[arg(long, default_value_t = 4)]
        loop_order: usize,
        /// Random loops of order 6.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Mutated external specs.
        #[arg(long, default_value_t = 1000)]
        mutations: usize,
    },

    /// List the left loops of order n.
    Enumerate {
        n: usize,
        #[arg(long)]
        limit: Option<usize>,
        /// Print only how many there are.
        #[arg(long)]
        count: bool,
    },
}
