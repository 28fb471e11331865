use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod io;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "freeact", version, about = "Exact certificates for free actions of free groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format on stdout or in the --out file.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Grid,
    Random,
}

#[derive(clap::Args, Debug, Clone)]
pub struct SearchArgs {
    /// Word-length bound N.
    #[arg(long = "words", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=12))]
    pub words: u32,
    /// Denominator bound D for candidate translations.
    #[arg(long = "denom", default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
    pub denom: u32,
    /// Number of candidates to try.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Smallest power of the generators tried by the ping-pong proposer.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=8))]
    pub power: u32,
    #[arg(long, value_enum, default_value_t = StrategyArg::Random)]
    pub strategy: StrategyArg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether one affine torus map has a fixed point.
    FixedPoint { input: PathBuf },
    /// Certify a deformation (s, t) of a Schottky pair up to word length N.
    Certify {
        input: PathBuf,
        #[arg(long = "words", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=12))]
        words: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=8))]
        power: u32,
    },
    /// Search for translations (s, t) whose deformation certifies.
    Search {
        input: PathBuf,
        #[command(flatten)]
        args: SearchArgs,
        /// Search Gaussian-rational translations on (C/Z[i])^n.
        #[arg(long)]
        complex: bool,
    },
    /// Verify a given ping-pong table, or propose one.
    Pingpong {
        input: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=8))]
        power: u32,
    },
    /// Fixed points of a group of linear maps on a Hopf surface.
    Hopf {
        input: PathBuf,
        #[arg(long = "words", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..=12))]
        words: u32,
    },
    /// Order of an SL2 matrix over Q(i) with rational trace.
    Order { input: PathBuf },
    /// Free action of an SL2(Z) matrix on (R²∖0)/⟨×2⟩.
    ExpandedTorus { input: PathBuf },
    /// Re-check a certificate file.
    Verify { input: PathBuf },
    /// Certify (or search) a complex deformation on an abelian threefold.
    Abelian3 {
        input: PathBuf,
        #[command(flatten)]
        args: SearchArgs,
    },
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("FREEACT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| anyhow::anyhow!("FREEACT_THREADS must be a non-negative integer, got {raw:?}"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    configure_threads()?;
    match &cli.command {
        Command::FixedPoint { input } => commands::fixed_point(input),
        Command::Certify { input, words, power } => commands::certify(input, *words as usize, *power),
        Command::Search { input, args, complex } => commands::search(input, args, *complex),
        Command::Pingpong { input, power } => commands::pingpong(input, *power),
        Command::Hopf { input, words } => commands::hopf(input, *words as usize),
        Command::Order { input } => commands::order(input),
        Command::ExpandedTorus { input } => commands::expanded_torus(input),
        Command::Verify { input } => commands::verify(input),
        Command::Abelian3 { input, args } => commands::abelian3(input, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.format {
        Format::Json => outcome.json.clone(),
        Format::Text => outcome.text.clone(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = io::write_atomic(path, rendered.as_bytes()) {
                eprintln!("error: writing {}: {e:#}", path.display());
                return ExitCode::from(2);
            }
            println!("{}", outcome.text.lines().next().unwrap_or_default());
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(if outcome.accepted { 0 } else { 1 })
}
