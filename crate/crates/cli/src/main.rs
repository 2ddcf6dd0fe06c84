//! `ghostforge`: load algebras, modules and complexes from files, run the ghost
//! and splitting checks and the sampling verifiers, and emit JSON reports.
//!
//! Exit codes: 0 positive, 2 negative verdict, 3 undetermined (search budget
//! ran out), 4 input error, 5 internal invariant or theorem check violated.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ghostforge::oracle::SearchBudget;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] ghostforge::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 4,
            CliError::Core(ghostforge::Error::Invariant(_)) => 5,
            CliError::Core(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ghostforge", version, about = "Ghost ideals, splittings and Cartan-Eilenberg checks over finite-dimensional algebras")]
pub struct Cli {
    /// Write the report here (plus a `.meta.json` sidecar) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Suppress the one-line summary on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebra definitions.
    Algebra {
        #[command(subcommand)]
        action: AlgebraCmd,
    },
    /// Complex and chain-map documents.
    Complex {
        #[command(subcommand)]
        action: ComplexCmd,
    },
    /// Dimension and basis conflations of Ext(C, A).
    Ext { c: PathBuf, a: PathBuf },
    /// Ghost tests, preenvelopes and composites.
    Ghost {
        #[command(subcommand)]
        action: GhostCmd,
    },
    /// Membership in an object ideal.
    Ideal {
        #[command(subcommand)]
        action: IdealCmd,
    },
    /// Powers of the ghost ideal of complexes against ⟨Acyc⟩.
    Ggh {
        #[command(subcommand)]
        action: VerifyCmd,
    },
    /// Composites of FP-ghosts against ⟨Inj⟩.
    Psi {
        #[command(subcommand)]
        action: VerifyCmd,
    },
    /// Splittings, adjustments and connecting maps of a trivial conflation.
    Splitting(SplittingArgs),
    /// Brute-force enumerations over F_2.
    Oracle {
        #[command(subcommand)]
        action: OracleCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Build the algebra and report associativity, radical and global dimension.
    Check { toml: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ComplexCmd {
    /// Validate `d∘d = 0` and intertwining, and report homology and CE-projectivity.
    Check { doc: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GhostMode {
    Chain,
    SGhost,
    Fp,
    CoghostCrosscheck,
}

#[derive(Debug, Subcommand)]
pub enum GhostCmd {
    /// Decide whether a map is a ghost.
    Test {
        f: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<GhostMode>,
        /// Test modules (`simple:0`, `projective:1`, ... or module documents).
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        set: Vec<String>,
    },
    /// Ghost preenvelope `A -> G -> W` of a module or complex.
    Preenvelope {
        a: PathBuf,
        /// Test objects; modules by name or document, complexes as `sphere:n`.
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        set: Vec<String>,
    },
    /// Compose certified ghosts into an element of a power of the ghost ideal.
    Power {
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        factors: Vec<PathBuf>,
        #[arg(long, num_args = 1.., value_delimiter = ',')]
        set: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ObjectIdeal {
    Acyc,
    Inj,
}

#[derive(Debug, Subcommand)]
pub enum IdealCmd {
    /// Look for a factorization through an acyclic complex or an injective module.
    Member {
        f: PathBuf,
        #[arg(long, value_enum)]
        object_ideal: ObjectIdeal,
    },
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 6)]
    pub max_middle_dim: usize,
    #[arg(long, default_value_t = 1 << 22)]
    pub max_maps: u64,
    #[arg(long, default_value_t = 600)]
    pub time_cap: u64,
}

impl BudgetArgs {
    pub fn budget(&self, seed: u64) -> SearchBudget {
        SearchBudget {
            max_middle_dim: self.max_middle_dim,
            max_enumerated_maps: self.max_maps,
            time_cap_seconds: self.time_cap,
            seed,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Sample composites and report the fraction in the object ideal.
    Verify {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        n: usize,
        /// Number of sampled composites.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        search: BudgetArgs,
    },
}

#[derive(Debug, Args)]
pub struct SplittingArgs {
    /// A conflation document.
    pub xi: PathBuf,
    /// Adjust the splitting by a random connecting map and recheck it.
    #[arg(long, conflicts_with = "arrow")]
    pub adjust: bool,
    /// A conflation-morphism document starting at `xi`.
    #[arg(long)]
    pub arrow: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Tiny,
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    /// Compare fast paths against exhaustive enumeration.
    Crosscheck {
        #[arg(long, value_enum, default_value = "tiny")]
        suite: Suite,
        /// Algebras to run; defaults to the dual numbers and A2 over F_2.
        #[arg(long)]
        algebra: Vec<PathBuf>,
        #[command(flatten)]
        search: BudgetArgs,
    },
    /// Search for an n-fold ghost composite outside ⟨Acyc⟩.
    Witness {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        n: usize,
        /// Also write the witness as a ghost-composite document.
        #[arg(long)]
        write: Option<PathBuf>,
        #[command(flatten)]
        search: BudgetArgs,
    },
    /// Search for an FP-ghost not factoring through an injective.
    FpWitness {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long)]
        write: Option<PathBuf>,
        #[command(flatten)]
        search: BudgetArgs,
    },
}

fn configure_threads() {
    if let Some(n) = std::env::var("GHOSTFORGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    configure_threads();
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(report) => {
            if !cli.quiet {
                eprintln!("{}: {} ({})", report.operation, report.verdict.label(), report.summary);
            }
            let written = match &cli.out {
                Some(path) => report.write(path),
                None => {
                    print!("{}", report.render());
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(report.verdict.exit_code() as u8),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code())
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
