use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use blockforge::corpus::{selftest, CorpusConfig, DEFAULT_INSTANCES, DEFAULT_SEED};
use blockforge::graph::{set_vertex_cap, DEFAULT_CAP};
use blockforge::io::read_graph;
use blockforge::pipeline::{decompose, is_separable, mode_profiles, verify, Mode};
use blockforge::profile::k_blocks;
use blockforge::tree_decomp::TreeDecompositionJson;
use blockforge::{fixtures, Error, Result, TreeDecomposition};

/// Canonical tree-decompositions distinguishing profiles of small graphs.
#[derive(Parser)]
#[command(name = "blockforge", version)]
struct Cli {
    /// Largest vertex count accepted by the exhaustive routines.
    #[arg(long, global = true, env = "BLOCKFORGE_CAP")]
    cap: Option<usize>,
    /// Allow a cap above the default of 14.
    #[arg(long, global = true)]
    unsafe_cap: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ModeArgs {
    /// Distinguish all k-profiles.
    #[arg(short, long)]
    k: Option<usize>,
    /// Distinguish all maximal robust profiles.
    #[arg(long)]
    maximal_robust: bool,
}

impl ModeArgs {
    fn mode(&self) -> Mode {
        match self.k {
            Some(k) => Mode::KProfiles(k),
            None => Mode::MaximalRobust,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the k-blocks of a graph with their separability.
    Blocks {
        input: PathBuf,
        #[arg(short, long)]
        k: usize,
    },
    /// Compute a decomposition and write its report.
    Decompose {
        input: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        /// Report path (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Graphviz output path.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also write the distinguished profiles as JSON.
        #[arg(long)]
        profiles: Option<PathBuf>,
    },
    /// Check a decomposition file against the guarantees for a mode.
    Verify {
        input: PathBuf,
        decomposition: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Run the pipeline over a seeded random corpus.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_INSTANCES)]
        instances: usize,
        #[arg(long, default_value_t = 4)]
        min_n: usize,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Print an embedded fixture graph.
    Fixture {
        #[arg(value_parser = fixtures::NAMES)]
        name: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Writes a line to stdout; a reader that went away is not an error.
fn print_line(text: &str) -> Result<()> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => print_line(text)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(cap) = cli.cap {
        if cap > DEFAULT_CAP && !cli.unsafe_cap {
            return Err(Error::Precondition(format!(
                "cap {cap} exceeds {DEFAULT_CAP}; pass --unsafe-cap to allow it"
            )));
        }
        set_vertex_cap(cap);
    }
    match cli.command {
        Command::Blocks { input, k } => {
            let g = read_graph(&input)?;
            for b in k_blocks(&g, k)? {
                let flag = if is_separable(&g, &b) {
                    "separable"
                } else {
                    "inseparable"
                };
                print_line(&format!("{} {flag}", b.vertices))?;
            }
            Ok(0)
        }
        Command::Decompose {
            input,
            mode,
            out,
            dot,
            profiles,
        } => {
            let g = read_graph(&input)?;
            let mode = mode.mode();
            let report = decompose(&g, mode)?;
            write_or_print(out.as_deref(), &report.to_json())?;
            if let Some(path) = dot {
                std::fs::write(path, report.tree_decomposition()?.to_dot())?;
            }
            if let Some(path) = profiles {
                let ps = mode_profiles(&g, mode)?
                    .iter()
                    .map(|p| p.to_json(&g))
                    .collect::<Result<Vec<_>>>()?;
                std::fs::write(path, serde_json::to_string_pretty(&ps)?)?;
            }
            Ok(0)
        }
        Command::Verify {
            input,
            decomposition,
            mode,
        } => {
            let g = read_graph(&input)?;
            let text = std::fs::read_to_string(&decomposition)?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            // accept either a bare decomposition or a full report
            let raw: TreeDecompositionJson = match value.get("decomposition") {
                Some(inner) => serde_json::from_value(inner.clone())?,
                None => serde_json::from_value(value)?,
            };
            let td = TreeDecomposition::from_json(&raw)?;
            let report = verify(&g, &td, mode.mode())?;
            print_line(&report.to_json())?;
            Ok(if report.passed { 0 } else { 2 })
        }
        Command::Selftest {
            seed,
            instances,
            min_n,
            max_n,
        } => {
            if min_n < 1 || min_n > max_n {
                return Err(Error::Precondition(format!("bad vertex range {min_n}..={max_n}")));
            }
            let config = CorpusConfig {
                seed,
                instances,
                min_n,
                max_n,
                ..CorpusConfig::default()
            };
            let report = selftest(&config)?;
            print_line(&serde_json::to_string_pretty(&report)?)?;
            Ok(report.failure.map_or(0, |f| f.exit_code as u8))
        }
        Command::Fixture { name } => {
            let json = fixtures::fixture_json(&name).expect("validated by clap");
            print_line(json.trim_end())?;
            Ok(0)
        }
    }
}
