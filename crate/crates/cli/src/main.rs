//! `bookram`: generate, analyse, certify and search red/blue colorings of
//! complete graphs.
//!
//! Exit status is 0 on success, 1 when a mathematical verification fails and
//! 2 on usage, parse or cap errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bookram", version, about = "Book Ramsey colorings: statistics, certificates and search")]
pub struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true, env = "BOOKRAM_THREADS")]
    pub threads: Option<usize>,

    /// Tab-separated tables instead of space-separated.
    #[arg(long, global = true)]
    pub tsv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated coloring to a file.
    Gen(GenArgs),
    /// Clique, book and quasirandomness statistics of a coloring.
    #[command(subcommand)]
    Analyze(Analyze),
    /// Exact regularity certificates.
    #[command(subcommand)]
    Regularity(Regularity),
    /// Numerical checks of the real-variable inequalities.
    #[command(subcommand)]
    Analytic(Analytic),
    /// Search for colorings without large monochromatic books.
    #[command(subcommand)]
    Search(Search),
    /// Run the exact identity suite on a coloring.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GenKind {
    Random,
    Paley,
    Join,
    Mono,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FormatArg {
    Text,
    Binary,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ColorArg {
    Red,
    Blue,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    /// Vertex count (random, mono).
    #[arg(long)]
    pub n: Option<usize>,
    /// Probability that a pair is blue (random).
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Prime order, 1 mod 4 (paley).
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long, value_enum, default_value = "red")]
    pub color: ColorArg,
    /// Coloring files joined by blue edges (join).
    #[arg(long)]
    pub left: Option<PathBuf>,
    #[arg(long)]
    pub right: Option<PathBuf>,
    #[arg(short = 'o', long)]
    pub output: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: FormatArg,
}

#[derive(Subcommand, Debug)]
pub enum Analyze {
    /// Extension histogram of the monochromatic K_k.
    Books {
        file: PathBuf,
        #[arg(short = 'k')]
        k: usize,
    },
    /// Cut deviation theta*, exact or by local search.
    Quasi {
        file: PathBuf,
        #[arg(long, conflicts_with = "heuristic")]
        exact: bool,
        #[arg(long, requires = "seed")]
        heuristic: bool,
        /// Restarts of the local search.
        #[arg(long, default_value_t = 16)]
        iters: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest n for the exact scan.
        #[arg(long, default_value_t = bookram_core::quasi::DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
    },
    /// E, S and codegree statistics.
    Stats {
        file: PathBuf,
        #[arg(short = 'k', default_value_t = 2)]
        k: usize,
    },
    /// Goodman's triangle count against direct enumeration.
    Goodman { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum KindArg {
    Eps,
    Lower,
    Peps,
}

#[derive(Subcommand, Debug)]
pub enum Regularity {
    /// Certify a pair (X, Y) or report a violating sub-pair.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Vertex list such as `0,2,5` or `3..7`.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value = "blue")]
        color: ColorArg,
        /// Largest enumerated side.
        #[arg(long, default_value_t = bookram_core::regularity::DEFAULT_SUBSET_CAP)]
        cap: usize,
    },
    /// Find a red book or a blue lower-regular pair from (A, B).
    Lowerreg {
        file: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        eta: f64,
        #[arg(short = 'k')]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Analytic {
    /// Grid minimum of F over the unit cube.
    #[command(alias = "min-F")]
    MinF {
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Grid estimate of the stability gap.
    Delta0 {
        #[arg(short = 'k')]
        k: usize,
        #[arg(long)]
        eps0: f64,
        #[arg(long, default_value_t = 0.005)]
        step: f64,
    },
    /// Local minima of F on the faces x_i = 1.
    Critical {
        #[arg(short = 'k')]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Search {
    /// Simulated annealing with checkpoints.
    Anneal {
        #[arg(long)]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long)]
        iters: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1)]
        chains: usize,
        /// Iterations between chain exchanges.
        #[arg(long, default_value_t = 1000)]
        exchange: u64,
        #[arg(long, default_value_t = 1.0)]
        t0: f64,
        #[arg(long, default_value_t = 0.999)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-3)]
        t_min: f64,
        #[arg(long, default_value_t = 5000)]
        reheat: u64,
    },
    /// Decide by enumeration whether every coloring of K_n has a book.
    Exhaustive {
        #[arg(long)]
        n: usize,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long)]
        pages: u64,
        /// Lift the default cap on C(n,2).
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Goodman, I1, I2, E-decomposition and S-inequality.
    Identities {
        file: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        /// A saved `analyze books` report to check against the coloring.
        #[arg(long)]
        histogram: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
