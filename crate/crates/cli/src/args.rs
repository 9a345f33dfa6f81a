use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "xasp", version, about = "Answer sets and explanation graphs of ground normal logic programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List answer sets, one per line
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Print at most this many answer sets
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = ListOutput::Text)]
        output: ListOutput,
    },
    /// Print the cautious consequences C+ and C-
    Cautious {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = ListOutput::Text)]
        output: ListOutput,
    },
    /// Print the well-founded model
    Wf {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = ListOutput::Text)]
        output: ListOutput,
    },
    /// Print the supported sets of every literal
    Supports {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        select: SelectArgs,
        #[arg(long, value_enum, default_value_t = ListOutput::Text)]
        output: ListOutput,
    },
    /// Print tentative assumptions, dependencies and minimal assumption sets
    Assumptions {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        select: SelectArgs,
        #[arg(long, default_value = "10000")]
        selection_cap: NonZeroUsize,
        /// Also check each assumption set against the reduced program
        #[arg(long)]
        diagnose: bool,
        #[arg(long, value_enum, default_value_t = ListOutput::Text)]
        output: ListOutput,
    },
    /// Emit the explanation graphs of an atom
    Explain {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        select: SingleSelectArgs,
        /// Atom to explain
        #[arg(long)]
        atom: String,
        /// Assumption set index, or `all`
        #[arg(long, default_value = "all")]
        assumption_set: AssumptionSelector,
        #[arg(long, default_value = "10000")]
        selection_cap: NonZeroUsize,
        #[arg(long, value_enum, default_value_t = GraphOutput::Dot)]
        output: GraphOutput,
        /// Write one file per graph into this directory
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Native,
    Aspif,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Program file, or `-` for standard input
    #[arg(long)]
    pub input: PathBuf,
    /// Input format; by default `.aspif` files are aspif and all else native
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    /// Maximum number of negated atoms the solver may branch on
    #[arg(long, default_value = "30")]
    pub branching_cap: NonZeroUsize,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct SelectArgs {
    /// Index of the answer set in `solve` order (default 0)
    #[arg(long)]
    pub answer_set: Option<usize>,
    /// Answer set given as comma-separated atoms
    #[arg(long, value_name = "ATOMS")]
    pub answer_set_lits: Option<String>,
    /// Every answer set
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct SingleSelectArgs {
    /// Index of the answer set in `solve` order (default 0)
    #[arg(long)]
    pub answer_set: Option<usize>,
    /// Answer set given as comma-separated atoms
    #[arg(long, value_name = "ATOMS")]
    pub answer_set_lits: Option<String>,
}

impl From<SingleSelectArgs> for SelectArgs {
    fn from(s: SingleSelectArgs) -> Self {
        SelectArgs { answer_set: s.answer_set, answer_set_lits: s.answer_set_lits, all: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssumptionSelector {
    All,
    Index(usize),
}

impl FromStr for AssumptionSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(AssumptionSelector::All);
        }
        s.parse().map(AssumptionSelector::Index).map_err(|_| format!("expected an index or `all`, got `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListOutput {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphOutput {
    Dot,
    Structured,
    Text,
}

impl GraphOutput {
    pub fn extension(self) -> &'static str {
        match self {
            GraphOutput::Dot => "dot",
            GraphOutput::Structured => "json",
            GraphOutput::Text => "txt",
        }
    }
}
