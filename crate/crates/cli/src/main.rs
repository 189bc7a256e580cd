//! `ngraph`: check, inspect and translate proof-graph files.
//!
//! Exit codes: 0 sound or valid, 1 unsound or invalid derivation, 2 the input
//! could not be read as a proof-graph or derivation, 3 anything else.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ngraph_core::dot;
use ngraph_core::empire::{empire_by_intersection, empire_closure, whole_empire, Empire, EmpireSide, Side};
use ngraph_core::generate::{generate_sound, generate_unsound, GeneratorSpec};
use ngraph_core::io;
use ngraph_core::lk::{lk_check, Derivation, DerivationFileError};
use ngraph_core::sequentialize::{encode_units, sequentialize_with, unit_witness, Options};
use ngraph_core::split::find_split;
use ngraph_core::switching::{is_ngraph, Verdict, DEFAULT_MAX_SWITCHABLES};
use ngraph_core::{GraphError, NodeId, ProofGraph};

#[derive(Parser)]
#[command(name = "ngraph", version, about = "Proof-graph workbench for classical propositional logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Bound {
    /// Largest number of switchable links to enumerate over
    #[arg(long, env = "NGRAPH_MAX_SWITCHABLES", default_value_t = DEFAULT_MAX_SWITCHABLES)]
    max_switchables: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide soundness by enumerating meta-switchings
    Check {
        file: PathBuf,
        #[command(flatten)]
        bound: Bound,
        /// Write the failing switching graph here
        #[arg(long)]
        witness_dot: Option<PathBuf>,
    },
    /// Compute the empire of a node
    Empire {
        file: PathBuf,
        /// Node id as written in the file
        #[arg(long)]
        node: String,
        #[arg(long, value_enum)]
        side: SideArg,
        /// Intersect switching components instead of running the closure
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        bound: Bound,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Find the split node and print both halves
    Split {
        file: PathBuf,
        #[command(flatten)]
        bound: Bound,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Translate a sound proof-graph into an LK derivation
    Sequentialize {
        file: PathBuf,
        /// Spell T and F out with an atom of the graph
        #[arg(long)]
        encode_units: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        bound: Bound,
    },
    /// Check an LK derivation file
    VerifyLk { file: PathBuf },
    /// Generate random proof-graphs into a directory
    Gen {
        #[arg(long, conflicts_with = "unsound", required_unless_present = "unsound")]
        sound: bool,
        #[arg(long)]
        unsound: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = GeneratorSpec::default().max_links)]
        max_links: usize,
        /// Number of graphs; seeds run upward from --seed
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Comma-separated atom names
        #[arg(long, value_delimiter = ',')]
        atoms: Option<Vec<String>>,
        #[arg(long, default_value_t = GeneratorSpec::default().mutation_rate)]
        mutation_rate: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a proof-graph as DOT
    Dot { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    North,
    South,
    Whole,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<ProofGraph> {
    io::from_json(&read(path)?).with_context(|| path.display().to_string())
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn node(g: &ProofGraph, name: &str) -> Result<NodeId> {
    g.find(name).ok_or_else(|| anyhow!("no node with id {name:?}"))
}

fn names(g: &ProofGraph, members: impl IntoIterator<Item = NodeId>) -> String {
    members.into_iter().map(|n| g.name(n)).collect::<Vec<_>>().join(" ")
}

/// Refuses unsound graphs with exit code 1.
fn require_sound(g: &ProofGraph, bound: &Bound) -> Result<Option<ExitCode>> {
    match is_ngraph(g, bound.max_switchables)? {
        Verdict::Sound => Ok(None),
        Verdict::Unsound { defect, .. } => {
            eprintln!("unsound: a meta-switching graph is {defect}");
            Ok(Some(ExitCode::from(1)))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { file, bound, witness_dot } => {
            let g = load(&file)?;
            match is_ngraph(&g, bound.max_switchables)? {
                Verdict::Sound => {
                    println!("sound: {}", g.end_sequent());
                    Ok(ExitCode::SUCCESS)
                }
                Verdict::Unsound { witness, defect } => {
                    println!("unsound: {defect}");
                    println!("witness #{}: {}", witness.index(), witness.describe(&g));
                    if let Some(path) = witness_dot {
                        write(&path, &dot::switching_dot(&g, &witness))?;
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Empire { file, node: name, side, oracle, bound, dot: dot_path } => {
            let g = load(&file)?;
            if let Some(code) = require_sound(&g, &bound)? {
                return Ok(code);
            }
            let a = node(&g, &name)?;
            let empire = match (side, oracle) {
                (SideArg::Whole, false) => whole_empire(&g, a),
                (SideArg::Whole, true) => {
                    let mut members = empire_by_intersection(&g, a, Side::North, bound.max_switchables)?;
                    members.union_with(&empire_by_intersection(&g, a, Side::South, bound.max_switchables)?);
                    Empire { root: a, side: EmpireSide::Whole, members }
                }
                (SideArg::North | SideArg::South, _) => {
                    let side = if matches!(side, SideArg::North) { Side::North } else { Side::South };
                    if oracle {
                        let members = empire_by_intersection(&g, a, side, bound.max_switchables)?;
                        Empire { root: a, side: side.into(), members }
                    } else {
                        empire_closure(&g, a, side)
                    }
                }
            };
            println!("{} empire of {name}: {}", empire.side, names(&g, empire.members.iter()));
            let labels: Vec<String> = empire.members.iter().map(|n| g.label(n).to_string()).collect();
            println!("labels: {}", labels.join(", "));
            if let Some(path) = dot_path {
                write(&path, &dot::empire_dot(&g, &empire))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Split { file, bound, dot: dot_path } => {
            let g = load(&file)?;
            if let Some(code) = require_sound(&g, &bound)? {
                return Ok(code);
            }
            let split = find_split(&g)?;
            let (north, south) = (split.north_graph(&g), split.south_graph(&g));
            println!("split node: {} ({})", g.name(split.node), g.label(split.node));
            println!("north: {}  [{}]", north.end_sequent(), names(&g, split.north.members.iter()));
            println!("south: {}  [{}]", south.end_sequent(), names(&g, split.south.members.iter()));
            if let Some(path) = dot_path {
                write(&path, &dot::split_dot(&g, &split))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sequentialize { file, encode_units: encode, format, bound } => {
            let g = load(&file)?;
            if let Some(code) = require_sound(&g, &bound)? {
                return Ok(code);
            }
            let options = Options { max_switchables: bound.max_switchables, check_steps: false };
            let (mut d, _) = sequentialize_with(&g, &options)?;
            if encode {
                d = encode_units(&d, &unit_witness(&g));
            }
            lk_check(&d).map_err(|e| anyhow!("emitted derivation fails the checker: {e}"))?;
            match format {
                Format::Text => print!("{d}"),
                Format::Json => println!("{}", d.to_json()),
                Format::Dot => print!("{}", dot::derivation_dot(&d)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyLk { file } => {
            let d = Derivation::from_json(&read(&file)?).with_context(|| file.display().to_string())?;
            match lk_check(&d) {
                Ok(()) => {
                    println!("valid: {}", d.end_sequent());
                    Ok(ExitCode::SUCCESS)
                }
                Err(defect) => {
                    println!("invalid: {defect}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Gen { sound, unsound, seed, max_links, count, atoms, mutation_rate, out } => {
            debug_assert!(sound != unsound);
            let base = GeneratorSpec {
                seed,
                max_links,
                atom_pool: atoms.unwrap_or_else(|| GeneratorSpec::default().atom_pool),
                mutation_rate,
                ..GeneratorSpec::default()
            };
            fs::create_dir_all(&out).with_context(|| format!("cannot create {}", out.display()))?;
            let prefix = if sound { "sound" } else { "unsound" };
            let mut files = Vec::new();
            for i in 0..count {
                let spec = GeneratorSpec { seed: seed.wrapping_add(i), ..base.clone() };
                let g = if sound { generate_sound(&spec)? } else { generate_unsound(&spec)? };
                let name = format!("{prefix}-{}.json", spec.seed);
                write(&out.join(&name), &io::to_json(&g))?;
                files.push(serde_json::json!({
                    "file": name,
                    "seed": spec.seed,
                    "links": g.link_count(),
                    "switchables": g.switchable_links().len(),
                }));
            }
            let manifest = serde_json::json!({
                "kind": prefix,
                "generator": "ChaCha8 seeded by seed_from_u64",
                "max_links": base.max_links,
                "atom_pool": base.atom_pool,
                "mutation_rate": base.mutation_rate,
                "graphs": files,
            });
            write(&out.join("manifest.json"), &serde_json::to_string_pretty(&manifest)?)?;
            println!("wrote {count} {prefix} graph(s) to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Dot { file } => {
            print!("{}", dot::graph_dot(&load(&file)?));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn is_input_error(err: &anyhow::Error) -> bool {
    err.chain().any(|e| e.is::<GraphError>() || e.is::<DerivationFileError>())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if is_input_error(&err) {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
