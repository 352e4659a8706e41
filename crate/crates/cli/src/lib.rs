//! Command-line front end: argument definitions and command dispatch.

pub mod cache;
pub mod render;
pub mod suites;

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use render::{MatrixDoc, MatrixKind, RenderOptions, Style};
use schur2::linkage::block_partition;
use schur2::weights::pow;
use schur2::{BlockMatrices, BlockSpec, Recursions, Variant};

/// Process exit status of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "schur2", version, about = "Decomposition, tilting and Cartan matrices of blocks of S(2,r) and S_q(2,r)")]
pub struct Cli {
    /// Directory for the persistent memo cache.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decomposition matrix of a block.
    Decomp(MatrixArgs),
    /// Tilting matrix of a block.
    Tilting(MatrixArgs),
    /// Cartan matrix of a block.
    Cartan(MatrixArgs),
    /// Cartan matrix of the Ringel dual of a block.
    RingelCartan(MatrixArgs),
    /// Partition the weights of S(2,r) into blocks.
    Blocks(BlocksArgs),
    /// Run verification suites over a parameter grid.
    Verify(VerifyArgs),
    /// Inspect or fill the memo cache.
    #[command(subcommand)]
    Cache(CacheCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Classical,
    Quantum,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Classical => Variant::Classical,
            VariantArg::Quantum => Variant::Quantum,
        }
    }
}

#[derive(Debug, Args)]
pub struct BlockArgs {
    #[arg(long, value_enum, default_value = "classical")]
    pub variant: VariantArg,
    /// Characteristic.
    #[arg(long, default_value_t = 5)]
    pub p: u64,
    /// Order of the root of unity (quantum blocks only).
    #[arg(long)]
    pub ell: Option<u64>,
    /// Lowest residue of the block.
    #[arg(long, default_value_t = 0)]
    pub lowest: u64,
    /// Number of simple modules.
    #[arg(long, conflicts_with_all = ["a", "k"])]
    pub size: Option<u64>,
    /// Size as a*p^k, together with --k.
    #[arg(long, requires = "k")]
    pub a: Option<u64>,
    #[arg(long, requires = "a")]
    pub k: Option<u32>,
}

impl BlockArgs {
    pub fn spec(&self) -> anyhow::Result<BlockSpec> {
        let variant = Variant::from(self.variant);
        let size = match (self.size, self.a, self.k) {
            (Some(s), _, _) => s,
            (None, Some(a), Some(k)) => a
                .checked_mul(pow(self.p, k).map_err(usage)?)
                .ok_or_else(|| usage("a*p^k overflows"))?,
            _ => return Err(usage("give --size or both --a and --k")),
        };
        let ell = match (variant, self.ell) {
            (Variant::Classical, None) => self.p,
            (Variant::Classical, Some(l)) => l,
            (Variant::Quantum, Some(l)) => l,
            (Variant::Quantum, None) => return Err(usage("quantum blocks need --ell")),
        };
        let spec = BlockSpec { variant, p: self.p, ell, lowest: self.lowest, size };
        spec.validate().map_err(usage)?;
        Ok(spec)
    }
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub block: BlockArgs,
    #[arg(long, value_enum, default_value = "figure")]
    pub style: Style,
    /// Separator period (defaults to p).
    #[arg(long)]
    pub group: Option<u64>,
    #[arg(long, default_value = ".")]
    pub zero: String,
    #[arg(long, default_value = "1")]
    pub one: String,
    /// Omit row labels.
    #[arg(long)]
    pub no_labels: bool,
    /// Label rows by absolute weight instead of block index.
    #[arg(long)]
    pub absolute: bool,
    /// Write to a file instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct BlocksArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long, value_enum, default_value = "classical")]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 5)]
    pub p: u64,
    #[arg(long)]
    pub ell: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: suites::Suite,
    /// Restrict to one prime (default: 2, 3, 5, 7).
    #[arg(long)]
    pub p: Option<u64>,
    /// Restrict to one quantum ell.
    #[arg(long, conflicts_with = "classical")]
    pub ell: Option<u64>,
    /// Restrict to classical blocks.
    #[arg(long)]
    pub classical: bool,
    /// Largest block size in the grid.
    #[arg(long)]
    pub max_size: Option<u64>,
    /// Largest exponent k in the grid.
    #[arg(long)]
    pub k_max: Option<u32>,
    /// Check a single block size.
    #[arg(long)]
    pub size: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Print the reports as a JSON array.
    #[arg(long)]
    pub json: bool,
    /// Print every report, not only failures.
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum CacheCommand {
    /// Compute and store the rows for all weights below a bound.
    Warm {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4096)]
        max_weight: u64,
    },
    /// List cache files and whether they load.
    Info,
    /// Delete the cache files.
    Clear,
}

/// Marks an error as a usage problem (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    UsageError(e.to_string()).into()
}

fn with_cache<T>(cli_cache: &Option<PathBuf>, primes: &[u64], body: impl FnOnce() -> anyhow::Result<T>) -> anyhow::Result<T> {
    if let Some(dir) = cli_cache {
        for &p in primes {
            let rec = Recursions::shared(p).map_err(usage)?;
            for (kind, state) in cache::load(dir, &rec) {
                if let cache::FileState::Rejected(why) = state {
                    eprintln!("warning: ignoring cached {} rows for p = {p}: {why}", kind.as_str());
                }
            }
        }
    }
    let result = body()?;
    if let Some(dir) = cli_cache {
        for &p in primes {
            let rec = Recursions::shared(p)?;
            cache::store(dir, &rec).with_context(|| format!("writing cache to {}", dir.display()))?;
        }
    }
    Ok(result)
}

fn matrix(kind: MatrixKind, args: &MatrixArgs, cache_dir: &Option<PathBuf>, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let spec = args.block.spec()?;
    let doc = with_cache(cache_dir, &[spec.p], || {
        let b = BlockMatrices::for_spec(spec)?;
        Ok(match kind {
            MatrixKind::Decomposition => MatrixDoc::from_multiplicity(kind, &spec, b.decomp_matrix()?),
            MatrixKind::Tilting => MatrixDoc::from_multiplicity(kind, &spec, b.tilt_matrix()?),
            MatrixKind::Cartan => MatrixDoc::from_cartan(kind, &spec, b.cartan_matrix()?),
            MatrixKind::RingelCartan => MatrixDoc::from_cartan(kind, &spec, b.ringel_cartan_matrix()?),
        })
    })?;
    let opts = RenderOptions {
        style: args.style,
        group: args.group,
        zero: args.zero.clone(),
        one: args.one.clone(),
        labels: !args.no_labels,
        absolute: args.absolute,
    };
    if opts.group == Some(0) {
        bail!(usage("--group must be positive"));
    }
    let text = render::render(&doc, &opts)?;
    match &args.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(Outcome::Pass)
}

fn format_weights(w: &[u64]) -> String {
    let items: Vec<String> = w.iter().map(u64::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn blocks(args: &BlocksArgs, cache_dir: &Option<PathBuf>, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let variant = Variant::from(args.variant);
    let ell = match (variant, args.ell) {
        (Variant::Quantum, None) => return Err(usage("quantum blocks need --ell")),
        (_, Some(l)) => l,
        (Variant::Classical, None) => args.p,
    };
    BlockSpec { variant, p: args.p, ell, lowest: 0, size: 1 }.validate().map_err(usage)?;
    let components = with_cache(cache_dir, &[args.p], || {
        let rec = Recursions::shared(args.p)?;
        Ok(block_partition(args.r, variant, ell, &rec)?)
    })?;
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&components)?)?,
        Format::Text => {
            for (i, c) in components.iter().enumerate() {
                let id = c.identified.expect("every component is identified");
                if c.primitive {
                    writeln!(out, "block {i}: {} primitive, lowest {}, size {}", format_weights(&c.weights), id.lowest, id.size)?;
                } else {
                    let strips: Vec<String> = c.strips.iter().map(u64::to_string).collect();
                    writeln!(
                        out,
                        "block {i}: {} imprimitive, stripped by {} to classical lowest {}, size {}",
                        format_weights(&c.weights),
                        strips.join(", "),
                        id.lowest,
                        id.size
                    )?;
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

fn cache_command(cmd: &CacheCommand, dir: &Option<PathBuf>, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let Some(dir) = dir else {
        return Err(usage("the cache commands need --cache DIR"));
    };
    match cmd {
        CacheCommand::Warm { p, max_weight } => {
            let rec = Recursions::shared(*p).map_err(usage)?;
            cache::load(dir, &rec);
            let bound = (*max_weight).min(rec.memo_bound());
            for m in 0..bound {
                rec.decomp_row(m)?;
                rec.tilt_row(m)?;
            }
            cache::store(dir, &rec)?;
            writeln!(out, "stored rows for weights below {bound} (p = {p})")?;
        }
        CacheCommand::Info => {
            for (path, state) in cache::inspect(dir)? {
                let status = match state {
                    cache::FileState::Loaded { rows, .. } => format!("{rows} rows"),
                    cache::FileState::Rejected(why) => format!("unreadable ({why})"),
                    cache::FileState::Missing => continue,
                };
                writeln!(out, "{}: {status}", path.display())?;
            }
        }
        CacheCommand::Clear => {
            let n = cache::clear(dir)?;
            writeln!(out, "removed {n} files")?;
        }
    }
    Ok(Outcome::Pass)
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Decomp(a) => matrix(MatrixKind::Decomposition, a, &cli.cache, out),
        Command::Tilting(a) => matrix(MatrixKind::Tilting, a, &cli.cache, out),
        Command::Cartan(a) => matrix(MatrixKind::Cartan, a, &cli.cache, out),
        Command::RingelCartan(a) => matrix(MatrixKind::RingelCartan, a, &cli.cache, out),
        Command::Blocks(a) => blocks(a, &cli.cache, out),
        Command::Verify(a) => {
            let tasks = suites::plan(a)?;
            let primes: Vec<u64> = {
                let mut v: Vec<u64> = tasks.iter().map(|t| t.spec.p).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            with_cache(&cli.cache, &primes, || suites::execute(a, &tasks, out))
        }
        Command::Cache(c) => cache_command(c, &cli.cache, out),
    }
}
