//! Command-line front end for `dwlab-core`.
//!
//! Every command prints one JSON report line on stdout (except `gen` without
//! `-o`, which prints the tournament, and `bench`, which prints CSV). Exit
//! codes: 0 on success, 1 when the answer is "no" or "none", 2 on input
//! errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

mod commands;
pub mod formats;
pub mod report;

pub use commands::BENCH_HEADER;

#[derive(Debug, Parser)]
#[command(name = "dwlab", version, about = "Degreewidth of tournaments")]
pub struct Cli {
    /// Add wall-clock time to reports (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a tournament file.
    Gen(GenArgs),
    /// Degreewidth: exact value, 3-approximation or bounds.
    Dw(DwArgs),
    /// Recognize sparse tournaments and print a certificate ordering.
    Sparse(SparseArgs),
    /// Minimum feedback arc set.
    Fas(FasArgs),
    /// Feedback vertex set by branching on triangles.
    Fvs(FvsArgs),
    /// Dominating set.
    Ds(DsArgs),
    /// Build hardness instances and translate certificates.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Recompute the backward profile of an ordering.
    Verify(VerifyArgs),
    /// Seeded sweep comparing the approximation with the exact solvers (CSV).
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub family: Family,
    /// Write the tournament here and print a report instead.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    Acyclic {
        #[arg(long)]
        n: usize,
    },
    /// Circulant regular tournament of order 2k+1.
    Rotational {
        #[arg(long)]
        k: usize,
    },
    /// Acyclic tournament with its Hamiltonian path reversed.
    U {
        #[arg(long)]
        n: usize,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["exact", "approx", "bounds"])))]
pub struct DwArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub approx: bool,
    #[arg(long)]
    pub bounds: bool,
}

#[derive(Debug, Args)]
pub struct SparseArgs {
    pub input: PathBuf,
    /// Vertices that must carry no backward arc, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub protect: Vec<usize>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["sparse", "exact"])))]
pub struct FasArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub sparse: bool,
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct FvsArgs {
    pub input: PathBuf,
    #[arg(long, required = true)]
    pub exact: bool,
    /// Size budget; without it the minimum is searched.
    #[arg(short)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["fpt", "greedy", "exact"])))]
pub struct DsArgs {
    pub input: PathBuf,
    #[arg(long, requires = "s")]
    pub fpt: bool,
    #[arg(long)]
    pub greedy: bool,
    #[arg(long)]
    pub exact: bool,
    /// Size budget for `--fpt`.
    #[arg(short)]
    pub s: Option<usize>,
    /// Use randomized lopsided families seeded with this value.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Ordering for `--greedy` (defaults to the in-degree ordering).
    #[arg(long)]
    pub ordering: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ReduceCommand {
    /// Balanced 3-SAT (DIMACS cnf) to a degreewidth threshold instance.
    Sat2dw(Sat2dwArgs),
    /// Cubic graph (`p edge`) to feedback vertex set on a sparse tournament.
    Vc2fvst(Vc2fvstArgs),
}

#[derive(Debug, Args)]
pub struct Sat2dwArgs {
    pub input: PathBuf,
    /// Tournament output file.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// JSON sidecar with labels and the block map.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// Truth values as 0/1 per variable; builds the nice ordering.
    #[arg(long, value_delimiter = ',')]
    pub assignment: Option<Vec<u8>>,
    /// Search for a satisfying assignment instead (small formulas only).
    #[arg(long, conflicts_with = "assignment")]
    pub solve: bool,
    /// Where to write the nice ordering.
    #[arg(long)]
    pub ordering_out: Option<PathBuf>,
    /// Read an ordering of the instance back into an assignment.
    #[arg(long, conflicts_with_all = ["assignment", "solve"])]
    pub extract: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Vc2fvstArgs {
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// JSON sidecar with the pattern map and tagged backward arcs.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// File with the sparse ordering of the instance.
    #[arg(long)]
    pub ordering_out: Option<PathBuf>,
    /// Vertex cover (0-based ids, comma separated) to turn into a feedback vertex set.
    #[arg(long, value_delimiter = ',')]
    pub cover: Option<Vec<usize>>,
    /// Feedback vertex set file to turn back into a vertex cover.
    #[arg(long, conflicts_with = "cover")]
    pub fvs: Option<PathBuf>,
    /// Where to write the feedback vertex set built from `--cover`.
    #[arg(long)]
    pub set_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    pub ordering: PathBuf,
    /// Claimed width; exit 1 if it differs from the recomputed one.
    #[arg(long)]
    pub width: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 4)]
    pub n_min: usize,
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    /// Instances per size.
    #[arg(long, default_value_t = 5)]
    pub per_n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Reports go to `out`, diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match commands::dispatch(&cli, echo, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
