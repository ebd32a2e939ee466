use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use rcqi_core::bisim::{bisimilar_mod_colors, minimal_quotient, symmetric_group, ColoredGraph};
use rcqi_core::cfs::{build_four_cycle_graph, is_cfs};
use rcqi_core::classify::{classify, qi_equivalent};
use rcqi_core::decompose::visual_tree;
use rcqi_core::graph::enumerate_induced_four_cycles;
use rcqi_core::highdim::{
    build_raag_nerve, build_racg_nerve, qi_highdim, qi_raag_vs_racg, validate_pftree,
    HighdimError, PFTree, PairAssignment, PermutationScope,
};
use rcqi_core::io::{parse_graph, EmbeddedGraph};
use rcqi_core::planar::{find_embedding, find_embedding_seeded, RotationSystem};
use rcqi_core::relhyp::{caprace_check, peripheral_structure};
use rcqi_core::standing::validate_standing;

#[derive(Parser)]
#[command(name = "rcqi", version, about = "Right-angled Coxeter group defining-graph toolkit")]
struct Cli {
    /// Seed for embedding search and pair assignments.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the standing assumptions.
    Validate { graph: PathBuf },
    /// Induced 4-cycles and the four-cycle graph.
    Cycles { graph: PathBuf },
    /// CFS status.
    Cfs { graph: PathBuf },
    /// Visual decomposition tree of a CFS graph.
    Tree {
        graph: PathBuf,
        /// Also write the tree in DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Divergence, manifold type, splitting and RAAG verdicts.
    Classify { graph: PathBuf },
    /// Quasi-isometry test for two CFS graphs.
    Compare { first: PathBuf, second: PathBuf },
    /// Peripheral structure and the relative hyperbolicity conditions.
    Relhyp { graph: PathBuf },
    /// Bisimilarity of two coloured graphs.
    Bisim(BisimArgs),
    /// High-dimensional nerve families.
    #[command(subcommand)]
    Highdim(Highdim),
    /// Classify every graph file in a directory.
    Corpus {
        dir: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Args)]
struct BisimArgs {
    first: PathBuf,
    second: PathBuf,
    /// Colours that may be permuted before comparing.
    #[arg(long, value_delimiter = ',')]
    permute: Vec<String>,
}

#[derive(Subcommand)]
enum Highdim {
    /// Build the flag complex of a p/f tree.
    Build {
        tree: PathBuf,
        /// Build the RAAG nerve instead of the RACG nerve.
        #[arg(long)]
        raag: bool,
    },
    /// Compare two p/f trees up to permutation of p-colours.
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Allow permutations exchanging b and w colours.
        #[arg(long)]
        full: bool,
    },
    /// RAAG nerve of the first tree against RACG nerve of the second.
    RaagCompare { raag: PathBuf, racg: PathBuf },
}

/// Exit 1: the input was read but is invalid for the request.
/// Exit 2: the input could not be read or parsed.
enum Failure {
    Invalid(String, Option<Value>),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<Value, Failure>;

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string(), None)
}

fn read(path: &Path) -> Result<String, Failure> {
    Ok(fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}

fn load_graph(path: &Path) -> Result<EmbeddedGraph, Failure> {
    let text = read(path)?;
    Ok(parse_graph(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn load_tree(path: &Path) -> Result<PFTree, Failure> {
    let text = read(path)?;
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn load_colored(path: &Path) -> Result<ColoredGraph, Failure> {
    let text = read(path)?;
    Ok(serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?)
}

/// The shipped rotation, or one found by search.
fn rotation(c: &EmbeddedGraph, seed: Option<u64>) -> Result<RotationSystem, Failure> {
    if let Some(f) = &c.rotation {
        return Ok(f.clone());
    }
    let found = match seed {
        Some(s) => find_embedding_seeded(&c.graph, s),
        None => find_embedding(&c.graph),
    };
    found.ok_or_else(|| invalid("graph is not planar"))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialise")
}

fn highdim_failure(e: HighdimError) -> Failure {
    match e {
        HighdimError::InvalidTree(v) => {
            Failure::Invalid("invalid p/f tree".into(), Some(json!({ "violations": v })))
        }
        e => invalid(e),
    }
}

fn run_validate(path: &Path) -> Outcome {
    let c = load_graph(path)?;
    let report = validate_standing(&c.graph, c.rotation.as_ref());
    if report.passes() {
        Ok(to_value(&report))
    } else {
        Err(Failure::Invalid(
            "standing assumptions fail".into(),
            Some(to_value(&report)),
        ))
    }
}

fn run_cycles(path: &Path) -> Outcome {
    let c = load_graph(path)?;
    let fg = build_four_cycle_graph(&c.graph);
    Ok(json!({
        "cycles": enumerate_induced_four_cycles(&c.graph),
        "links": fg.links,
        "components": fg.components,
    }))
}

fn run_cfs(path: &Path) -> Outcome {
    let c = load_graph(path)?;
    Ok(to_value(&is_cfs(&c.graph)))
}

fn run_tree(path: &Path, dot: Option<&Path>, seed: Option<u64>) -> Outcome {
    let c = load_graph(path)?;
    let f = rotation(&c, seed)?;
    let t = visual_tree(&c.graph, &f).map_err(invalid)?;
    if let Some(out) = dot {
        fs::write(out, t.to_dot()).with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(to_value(&t))
}

fn classify_file(path: &Path, seed: Option<u64>) -> Outcome {
    let c = load_graph(path)?;
    let f = rotation(&c, seed)?;
    classify(&c.graph, &f)
        .map(|r| to_value(&r))
        .map_err(invalid)
}

fn run_compare(a: &Path, b: &Path, seed: Option<u64>) -> Outcome {
    let (c1, c2) = (load_graph(a)?, load_graph(b)?);
    let (f1, f2) = (rotation(&c1, seed)?, rotation(&c2, seed)?);
    qi_equivalent(&c1.graph, &f1, &c2.graph, &f2)
        .map(|r| to_value(&r))
        .map_err(invalid)
}

fn run_relhyp(path: &Path, seed: Option<u64>) -> Outcome {
    let c = load_graph(path)?;
    let f = rotation(&c, seed)?;
    let p = peripheral_structure(&c.graph, &f).map_err(invalid)?;
    let check = caprace_check(&c.graph, &p.subgraphs()).map_err(invalid)?;
    Ok(json!({ "peripheral": p, "check": check }))
}

fn run_bisim(args: &BisimArgs) -> Outcome {
    let (g, h) = (load_colored(&args.first)?, load_colored(&args.second)?);
    let allowed = symmetric_group(&args.permute);
    let found = bisimilar_mod_colors(&g, &h, &allowed);
    Ok(json!({
        "bisimilar": found.is_some(),
        "permutation": found,
        "quotients": [minimal_quotient(&g), minimal_quotient(&h)],
    }))
}

fn run_highdim(cmd: &Highdim, seed: Option<u64>) -> Outcome {
    match cmd {
        Highdim::Build { tree, raag } => {
            let t = load_tree(tree)?;
            let report = validate_pftree(&t);
            if !report.valid {
                return Err(Failure::Invalid("invalid p/f tree".into(), Some(to_value(&report))));
            }
            let complex = if *raag {
                build_raag_nerve(&t)
            } else {
                let choice = match seed {
                    Some(s) => PairAssignment::seeded(&t, s),
                    None => PairAssignment::breadth_first(&t),
                };
                build_racg_nerve(&t, &choice)
            }
            .map_err(highdim_failure)?;
            let mut v = complex.to_json();
            v["origin"] = to_value(&complex.origin);
            Ok(v)
        }
        Highdim::Compare { first, second, full } => {
            let (t1, t2) = (load_tree(first)?, load_tree(second)?);
            let scope = if *full {
                PermutationScope::Full
            } else {
                PermutationScope::ClassPreserving
            };
            let found = qi_highdim(&t1, &t2, scope).map_err(highdim_failure)?;
            Ok(json!({ "qi": found.is_some(), "scope": scope, "result": found }))
        }
        Highdim::RaagCompare { raag, racg } => {
            let (tl, tk) = (load_tree(raag)?, load_tree(racg)?);
            let found = qi_raag_vs_racg(&tl, &tk).map_err(highdim_failure)?;
            Ok(json!({ "qi": found.is_some(), "permutation": found }))
        }
    }
}

/// Graph files in `dir` (p/f trees and coloured graphs are skipped),
/// classified independently and reported in file-name order.
fn run_corpus(dir: &Path, jobs: usize, seed: Option<u64>) -> Outcome {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("starting worker pool")?;
    let results: Vec<Value> = pool.install(|| {
        files
            .par_iter()
            .filter_map(|p| {
                let text = fs::read_to_string(p).ok()?;
                let raw: Value = serde_json::from_str(&text).ok()?;
                if raw.get("edges").is_none() || raw.get("n").is_some() || raw.get("colors").is_some() {
                    return None;
                }
                let name = p.file_stem()?.to_string_lossy().into_owned();
                Some(match classify_file(p, seed) {
                    Ok(r) => json!({
                        "file": name,
                        "ok": true,
                        "divergence": r["divergence"],
                        "manifold": r["manifold"],
                        "cfs": r["cfs"],
                    }),
                    Err(Failure::Invalid(msg, _)) => json!({ "file": name, "ok": false, "error": msg }),
                    Err(Failure::Input(e)) => json!({ "file": name, "ok": false, "error": format!("{e:#}") }),
                })
            })
            .collect()
    });
    Ok(json!({ "results": results }))
}

fn dispatch(cli: &Cli) -> Outcome {
    let seed = cli.seed;
    match &cli.command {
        Command::Validate { graph } => run_validate(graph),
        Command::Cycles { graph } => run_cycles(graph),
        Command::Cfs { graph } => run_cfs(graph),
        Command::Tree { graph, dot } => run_tree(graph, dot.as_deref(), seed),
        Command::Classify { graph } => classify_file(graph, seed),
        Command::Compare { first, second } => run_compare(first, second, seed),
        Command::Relhyp { graph } => run_relhyp(graph, seed),
        Command::Bisim(args) => run_bisim(args),
        Command::Highdim(cmd) => run_highdim(cmd, seed),
        Command::Corpus { dir, jobs } => run_corpus(dir, *jobs, seed),
    }
}

fn emit(cli: &Cli, v: &Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match &cli.json {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, code) = match dispatch(&cli) {
        Ok(v) => (Some(v), 0),
        Err(Failure::Invalid(msg, detail)) => {
            eprintln!("invalid input: {msg}");
            (Some(json!({ "error": msg, "detail": detail })), 1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            (None, 2)
        }
    };
    if let Some(v) = report {
        if let Err(e) = emit(&cli, &v) {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
