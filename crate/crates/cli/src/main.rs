//! `cihomol`: command-line front end for the cihomol engine.
//!
//! Exit codes: 0 success or pass, 1 a negative answer from a command that
//! asserts (suite failure, not isomorphic, supports meet, divisibility
//! failure), 2 usage or parse errors, 3 an undetermined or unknown verdict.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::{CliError, Format};

#[derive(Parser, Debug)]
#[command(name = "cihomol", version, about = "Exact homological algebra over F_p[X_1..X_c]/(X_i^a_i)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Ring spec, e.g. "p=5;exps=2,4".
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Module file (JSON).
    #[arg(long, global = true)]
    pub module: Option<PathBuf>,
    /// Second module file for binary commands.
    #[arg(long, global = true)]
    pub module2: Option<PathBuf>,
    #[arg(long = "max-degree", global = true, default_value_t = 8)]
    pub max_degree: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random isomorphism trials per test.
    #[arg(long, global = true, default_value_t = 16)]
    pub trials: u32,
    /// Family size for generated and certified families.
    #[arg(long, global = true, default_value_t = 50)]
    pub budget: usize,
    /// Output format. Defaults to json for `verify` and text otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long = "cache-dir", global = true, default_value = ".cihomol-cache")]
    pub cache_dir: PathBuf,
    /// Disable the resolution cache (memory and disk).
    #[arg(long = "no-cache", global = true)]
    pub no_cache: bool,
    /// Output file or directory, depending on the command.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Ring parameters: length, variables, number of projective points.
    RingInfo,
    /// Write a module family to files under --out.
    Gen {
        #[arg(long, value_enum)]
        family: commands::Family,
        /// Linear form for h, avoiding and quotient families.
        #[arg(long)]
        g: Option<String>,
        /// Power for the quotient family A/(g^j).
        #[arg(long, default_value_t = 1)]
        j: u32,
        /// Syzygy depth for syzygy-closure.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Number of modules for random, extensions for extension-closure.
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Subring powers for restriction-chain, e.g. "5,5".
        #[arg(long)]
        u: Option<String>,
    },
    /// Minimal resolution up to --max-degree; --out DIR writes the syzygies.
    Resolve,
    /// Betti numbers up to --max-degree.
    Betti,
    /// The i-th syzygy module.
    Syzygy {
        #[arg(long, default_value_t = 1)]
        i: usize,
    },
    /// The i-th cosyzygy module.
    Cosyzygy {
        #[arg(long, default_value_t = 1)]
        i: usize,
    },
    /// M ⊗_A N.
    Tensor,
    /// dim Tor_i(M, N); all i up to --max-degree when --i is absent.
    Tor {
        #[arg(long)]
        i: Option<usize>,
    },
    /// Isomorphism test between --module and --module2.
    Iso,
    /// Rank-variety membership at --point, or the support point of a periodic module.
    Support {
        #[arg(long)]
        point: Option<String>,
    },
    /// Whether the supports of --module and --module2 are disjoint.
    Disjoint,
    /// Class of --module in Z/l(A).
    Gclass,
    /// Subgroup of Z/l(A) generated by the lengths of the given modules.
    Subgroup {
        /// Module files or directories of module files.
        paths: Vec<PathBuf>,
        /// Also report divisibility of every length by this integer.
        #[arg(long)]
        p: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: commands::SuiteName,
        #[arg(long)]
        g: Option<String>,
        /// Divisor for the divisibility suite.
        #[arg(long)]
        p: Option<u32>,
        /// Sample size (length-identity, power-filtration).
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Resolution cache maintenance.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCmd {
    /// Remove corrupt or stale entries from --cache-dir.
    Gc,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let verify = matches!(cli.cmd, Cmd::Verify { .. });
    let format = cli.common.format.unwrap_or(if verify { Format::Json } else { Format::Text });
    commands::configure_cache(&cli.common);
    let ctx = commands::Ctx { common: cli.common };
    let result = match cli.cmd {
        Cmd::RingInfo => commands::ring_info(&ctx),
        Cmd::Gen { family, g, j, depth, count, u } => commands::gen(&ctx, family, g, j, depth, count, u),
        Cmd::Resolve => commands::resolve(&ctx),
        Cmd::Betti => commands::betti(&ctx),
        Cmd::Syzygy { i } => commands::syzygy(&ctx, i, false),
        Cmd::Cosyzygy { i } => commands::syzygy(&ctx, i, true),
        Cmd::Tensor => commands::tensor(&ctx),
        Cmd::Tor { i } => commands::tor(&ctx, i),
        Cmd::Iso => commands::iso(&ctx),
        Cmd::Support { point } => commands::support(&ctx, point),
        Cmd::Disjoint => commands::disjoint(&ctx),
        Cmd::Gclass => commands::gclass(&ctx),
        Cmd::Subgroup { paths, p } => commands::subgroup(&ctx, &paths, p),
        Cmd::Verify { suite, g, p, sample } => commands::verify(&ctx, suite, g, p, sample),
        Cmd::Cache { action: CacheCmd::Gc } => commands::cache_gc(&ctx),
    };
    match result.and_then(|out| out.emit(format)) {
        Ok(code) => ExitCode::from(code),
        Err(CliError { code, msg }) => {
            eprintln!("cihomol: error: {msg}");
            ExitCode::from(code)
        }
    }
}
