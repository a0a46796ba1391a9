mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

/// Exact nullspace analysis of simple graphs.
///
/// Exit codes: 0 success, 1 usage, 2 unparsable input, 3 unmet precondition,
/// 4 counterexample found.
#[derive(Parser)]
#[command(name = "nullcore", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nullity, kernel basis, vertex classes and block checks.
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        format: AnalyzeFormat,
    },
    /// Delete the remote core-forbidden vertices, or pendant-reduce a forest.
    Reduce {
        path: PathBuf,
        #[command(flatten)]
        mode: ReduceMode,
    },
    /// Edge additions that keep the chosen nullspace property.
    Perturb {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Preserve::Nullity)]
        preserve: Preserve,
        #[command(flatten)]
        action: PerturbAction,
    },
    /// Minimal-configuration verdict.
    Mc { path: PathBuf },
    /// Print a generated graph as an edge list.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability for `random`, as `num/den`.
        #[arg(long, default_value = "1/2")]
        p: String,
    },
    /// Randomized structural checks; writes counterexamples as edge lists.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for counterexample graphs.
        #[arg(long, default_value = "counterexamples")]
        out: PathBuf,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct AnalyzeFormat {
    /// JSON report (default).
    #[arg(long)]
    json: bool,
    /// Graphviz DOT with vertices coloured by class.
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ReduceMode {
    #[arg(long)]
    slim: bool,
    #[arg(long)]
    pendant: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PerturbAction {
    /// List every safe single-edge addition.
    #[arg(long)]
    list: bool,
    /// Add safe edges greedily until none remain.
    #[arg(long)]
    densify: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preserve {
    Nullity,
    Cv,
    Nullspace,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Path,
    Cycle,
    Star,
    Complete,
    Tree,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Trees,
    Bipartite,
    Subdivisions,
    Perturbations,
    Unicyclic,
    All,
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Analyze { path, format } => commands::analyze(&path, format.dot),
        Command::Reduce { path, mode } => commands::reduce(&path, mode.slim),
        Command::Perturb {
            path,
            preserve,
            action,
        } => commands::perturb(&path, preserve.into(), action.densify),
        Command::Mc { path } => commands::mc(&path),
        Command::Gen { kind, n, seed, p } => commands::generate(kind.into(), n, seed, &p),
        Command::Verify {
            suite,
            max_n,
            trials,
            seed,
            out,
        } => commands::verify(suite.into(), max_n, trials, seed, &out),
    }
}

impl From<Preserve> for nullcore::perturbation::PreserveMode {
    fn from(p: Preserve) -> Self {
        match p {
            Preserve::Nullity => Self::Nullity,
            Preserve::Cv => Self::CvSet,
            Preserve::Nullspace => Self::Nullspace,
        }
    }
}

impl From<GenKind> for commands::Kind {
    fn from(k: GenKind) -> Self {
        match k {
            GenKind::Path => Self::Path,
            GenKind::Cycle => Self::Cycle,
            GenKind::Star => Self::Star,
            GenKind::Complete => Self::Complete,
            GenKind::Tree => Self::Tree,
            GenKind::Random => Self::Random,
        }
    }
}

impl From<SuiteArg> for nullcore::verify::Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Trees => Self::Trees,
            SuiteArg::Bipartite => Self::Bipartite,
            SuiteArg::Subdivisions => Self::Subdivisions,
            SuiteArg::Perturbations => Self::Perturbations,
            SuiteArg::Unicyclic => Self::Unicyclic,
            SuiteArg::All => Self::All,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(out) = &f.stdout {
                print!("{out}");
            }
            eprintln!("nullcore: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
