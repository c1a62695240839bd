//! The `glim` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::cayley::{check_relators, limit_ball, Mode, Presentation};
use crate::constructions::{
    build_kn, hamiltonian_cycle_kn, product_c4, random_bipartite_hamiltonian, random_regular,
};
use crate::error::GlimError;
use crate::format::GraphFile;
use crate::graph::girth;
use crate::limits::{ball_census, census_tv_distance, good_fraction, sampled_census, BallCensus};
use crate::obstruction::mis::{max_independent_set, DEFAULT_EXACT_CAP};
use crate::obstruction::report::{theorem1_report_with, theorem2_report, Theorem1Options};
use crate::obstruction::Strategy;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ASSERTION: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "glim", version, about = "Limit balls, constructions and obstruction checks")]
pub struct Cli {
    /// Worker threads (outputs do not depend on this).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SeedArg {
    /// Seed for every random choice; falls back to GLIM_SEED.
    #[arg(long, env = "GLIM_SEED")]
    pub seed: Option<u64>,
}

impl SeedArg {
    fn require(&self) -> Result<u64, CliError> {
        self.seed.ok_or_else(|| CliError::Usage("this command needs --seed (or GLIM_SEED)".into()))
    }
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uniform random d-regular graph.
    GenRr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Random cubic bipartite graph with a Hamiltonian cycle.
    GenBipham {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Cartesian product of the input graph with C4.
    BuildProduct {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// The colored 5-regular graph K_n with its Hamiltonian cycle.
    BuildKn {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
        /// Also write the directed graph K_n'.
        #[arg(long)]
        kn_prime: Option<PathBuf>,
    },
    /// Census of radius-r ball codes as CSV.
    BallCensus {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Sample this many root vertices instead of enumerating all of them.
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Total variation distance between the censuses of two graphs.
    CensusDistance {
        /// Given twice.
        #[arg(long = "in", required = true)]
        input: Vec<PathBuf>,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Fraction of vertices whose ball matches the limit ball.
    GoodFrac {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Length of a shortest cycle, or "acyclic"
    Girth {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Maximum independent set.
    Mis {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
        exact_cap: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Ball of the limit graph, labelled unless --mode graph.
    LimitBall {
        #[arg(long)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Diagram)]
        mode: ModeArg,
        #[command(flatten)]
        out: OutArg,
        /// Also write the presentation of the labelled limit.
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// Trace every relator through a labelled graph.
    CheckRelators {
        #[arg(long = "in")]
        input: PathBuf,
        /// Presentation JSON; the limit presentation when absent.
        #[arg(long)]
        presentation: Option<PathBuf>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Labelling search and orientation checks on products of random cubic graphs.
    Theorem1 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
        /// Use one strategy for all trials; otherwise they rotate.
        #[arg(long)]
        strategy: Option<Strategy>,
        #[arg(long, default_value_t = Theorem1Options::default().budget)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
        exact_cap: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Structural checks of the K_n family.
    Theorem2 {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
pub enum ModeArg {
    Graph,
    Diagram,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Lib(#[from] GlimError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Assertion(_) => EXIT_ASSERTION,
            CliError::Io { .. } => EXIT_IO,
            CliError::Lib(e) => match e {
                GlimError::Io(_) => EXIT_IO,
                GlimError::Invariant(_) | GlimError::InvalidConstruction(_) | GlimError::BudgetExhausted { .. } => {
                    EXIT_ASSERTION
                }
                _ => EXIT_USAGE,
            },
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn read_graph(path: &Path) -> Result<GraphFile, CliError> {
    Ok(GraphFile::from_json(&read(path)?)?)
}

fn emit(out: &OutArg, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn check(pass: bool, what: &str) -> Result<(), CliError> {
    if pass {
        Ok(())
    } else {
        Err(CliError::Assertion(what.to_string()))
    }
}

#[derive(Serialize)]
struct Distance {
    radius: usize,
    tv_distance: f64,
}

#[derive(Serialize)]
struct GoodFracOut {
    radius: usize,
    vertices: usize,
    fraction: f64,
    good: Vec<usize>,
}

fn census_of(f: &GraphFile, radius: usize) -> Result<BallCensus, CliError> {
    Ok(ball_census(f.view()?.as_ref(), radius)?)
}

/// Run one parsed command. Reports are written before a failed check is returned.
pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::GenRr { n, d, seed, out } => {
            let g = random_regular(n, d, seed.require()?)?;
            emit(&out, &GraphFile::from_graph(&g).to_json())
        }
        Command::GenBipham { n, seed, out } => {
            let b = random_bipartite_hamiltonian(n, seed.require()?)?;
            emit(&out, &GraphFile::from_graph(&b.graph).with_ham_cycle(b.ham.clone()).to_json())
        }
        Command::BuildProduct { input, out } => {
            let h = read_graph(&input)?.graph()?;
            emit(&out, &GraphFile::from_fibered(&product_c4(&h)?).to_json())
        }
        Command::BuildKn { n, seed, out, kn_prime } => {
            let b = random_bipartite_hamiltonian(n, seed.require()?)?;
            let mut k = build_kn(&b)?;
            hamiltonian_cycle_kn(&mut k, &b)?;
            if let Some(path) = kn_prime {
                write_file(&path, &json(&k.kn_prime))?;
            }
            emit(&out, &GraphFile::from_kn(&k).to_json())
        }
        Command::BallCensus { input, radius, samples, seed, out } => {
            let f = read_graph(&input)?;
            let census = match samples {
                None => census_of(&f, radius)?,
                Some(s) => sampled_census(f.view()?.as_ref(), radius, s, seed.require()?)?,
            };
            emit(&out, &census.to_csv())
        }
        Command::CensusDistance { input, radius, out } => {
            if input.len() != 2 {
                return Err(CliError::Usage("census-distance takes exactly two --in files".into()));
            }
            let a = census_of(&read_graph(&input[0])?, radius)?;
            let b = census_of(&read_graph(&input[1])?, radius)?;
            emit(&out, &json(&Distance { radius, tv_distance: census_tv_distance(&a, &b)? }))
        }
        Command::GoodFrac { input, radius, out } => {
            let f = read_graph(&input)?;
            let view = f.view()?;
            let mode = if view.is_labelled() { Mode::Diagram } else { Mode::Graph };
            let limit = limit_ball(radius, mode);
            let g = good_fraction(view.as_ref(), &limit.ball)?;
            emit(&out, &json(&GoodFracOut { radius, vertices: f.n, fraction: g.fraction, good: g.good }))
        }
        Command::Girth { input, out } => {
            let g = read_graph(&input)?.graph()?;
            emit(&out, &json(&serde_json::json!({ "girth": girth(&g) })))
        }
        Command::Mis { input, exact_cap, out } => {
            let g = read_graph(&input)?.graph()?;
            emit(&out, &json(&max_independent_set(&g, exact_cap)))
        }
        Command::LimitBall { radius, mode, out, presentation } => {
            if let Some(path) = presentation {
                write_file(&path, &(Presentation::limit_diagram().to_json()? + "\n"))?;
            }
            let file = match mode {
                ModeArg::Graph => GraphFile::from_graph(limit_ball(radius, Mode::Graph).ball.graph()),
                ModeArg::Diagram => {
                    let d = limit_ball(radius, Mode::Diagram).ball.diagram().expect("labelled ball");
                    GraphFile::from_diagram(&d)
                }
            };
            emit(&out, &file.to_json())
        }
        Command::CheckRelators { input, presentation, out } => {
            let d = read_graph(&input)?
                .diagram()?
                .ok_or_else(|| CliError::Usage("check-relators needs a labelled graph".into()))?;
            let p = match presentation {
                Some(path) => Presentation::from_json(&read(&path)?)?,
                None => Presentation::limit_diagram(),
            };
            let report = check_relators(&d, &p)?;
            emit(&out, &json(&report))?;
            check(report.is_clean(), "relator violations found")
        }
        Command::Theorem1 { n, radius, trials, seed, strategy, budget, exact_cap, out } => {
            let opts = Theorem1Options { budget, exact_cap, strategy };
            let report = theorem1_report_with(n, radius, trials, seed.require()?, opts)?;
            emit(&out, &json(&report))?;
            check(report.pass, "theorem1 checks failed")
        }
        Command::Theorem2 { n, seed, out } => {
            let report = theorem2_report(n, seed.require()?)?;
            emit(&out, &json(&report))?;
            check(report.pass, "theorem2 checks failed")
        }
    }
}

/// Parse, run and map the outcome to an exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(CliError::Usage(format!("cannot start {t} threads: {e}"))),
        },
        None => dispatch(cli),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("glim: {e}");
            e.exit_code()
        }
    }
}
