use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use trunc_pi1::field::{Field, FieldChoice};
use trunc_pi1::graph::{cycle_space, EdgeBijection, EdgeId, Multigraph, VertexId};
use trunc_pi1::harness::{enumerate_and_verify, DEFAULT_EDGE_CAP};
use trunc_pi1::invariant::{image_subalgebra, invariants_equal_with, CompareOptions};
use trunc_pi1::reconstruct::reconstruct_isomorphism;
use trunc_pi1::text::{parse_bijection, parse_graph, write_bijection, write_graph};
use trunc_pi1::trunc::Level;
use trunc_pi1::whitney::whitney_twist;

#[derive(Parser)]
#[command(
    name = "trunc-pi1",
    version,
    about = "Truncated group-algebra invariants of based multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the image subalgebra of a based graph.
    Invariant {
        graph: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = parse_level)]
        level: u8,
        #[arg(long, default_value = "q")]
        field: FieldChoice,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether an edge bijection carries one invariant onto the other.
    Compare {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long = "map")]
        map: PathBuf,
        #[arg(long, default_value_t = 2, value_parser = parse_level)]
        level: u8,
        #[arg(long, default_value = "q")]
        field: FieldChoice,
        /// Allow comparison over a field of characteristic 2.
        #[arg(long)]
        allow_char2: bool,
    },
    /// Grow a vertex isomorphism from an edge bijection.
    Reconstruct {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long = "map")]
        map: PathBuf,
    },
    /// Apply a Whitney twist and print the twisted graph.
    Twist {
        graph: PathBuf,
        /// The two cut vertices, `u,v`.
        #[arg(long)]
        cut: String,
        /// Edge ids on the side to twist, comma separated.
        #[arg(long)]
        side: String,
        /// Also write the induced edge bijection here.
        #[arg(long)]
        map_out: Option<PathBuf>,
    },
    /// Print the canonical cycle-space basis.
    Cyclespace {
        graph: PathBuf,
        #[arg(long, default_value = "q")]
        field: FieldChoice,
    },
    /// Exhaustively compare invariant equality, isomorphism and reconstruction.
    Oracle {
        #[arg(long)]
        max_edges: usize,
        #[arg(long, default_value_t = 2, value_parser = parse_level)]
        level: u8,
        #[arg(long, default_value = "q")]
        field: FieldChoice,
        #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
        cap: usize,
    },
}

fn parse_level(s: &str) -> Result<u8, String> {
    match s {
        "1" => Ok(1),
        "2" => Ok(2),
        _ => Err(format!("level must be 1 or 2, got {s}")),
    }
}

fn level(k: u8) -> Level {
    Level::try_from(k).expect("validated by clap")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Multigraph> {
    parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_map(path: &Path) -> Result<EdgeBijection> {
    parse_bijection(&read(path)?).with_context(|| format!("in {}", path.display()))
}

#[derive(Serialize)]
struct BasisJson {
    level: u8,
    edge_order: Vec<EdgeId>,
    basis: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct CycleSpaceJson {
    edge_order: Vec<EdgeId>,
    basis: Vec<Vec<String>>,
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn invariant<F: Field>(field: F, g: &Multigraph, k: u8, json: bool) -> Result<()> {
    let s = image_subalgebra(field, g, level(k))?;
    if json {
        return print_json(&BasisJson {
            level: k,
            edge_order: s.edge_order().to_vec(),
            basis: s.basis().to_fraction_strings(),
        });
    }
    println!(
        "level {k}, dimension {} (cyclomatic number {})",
        s.dim(),
        g.cyclomatic_number()
    );
    for a in s.elements() {
        println!("  {a}");
    }
    Ok(())
}

fn compare<F: Field>(
    field: F,
    g1: &Multigraph,
    g2: &Multigraph,
    phi: &EdgeBijection,
    k: u8,
    allow_char2: bool,
) -> Result<bool> {
    let options = CompareOptions {
        allow_characteristic_two: allow_char2,
    };
    Ok(invariants_equal_with(
        field,
        g1,
        g2,
        phi,
        level(k),
        options,
    )?)
}

fn cyclespace<F: Field>(field: F, g: &Multigraph) -> Result<()> {
    let z = cycle_space(field, g)?;
    print_json(&CycleSpaceJson {
        edge_order: g.edge_order(),
        basis: z.to_fraction_strings(),
    })
}

fn oracle<F: Field>(field: F, max_edges: usize, k: u8, cap: usize) -> Result<bool> {
    let report = enumerate_and_verify(field, max_edges, level(k), cap)?;
    print_json(&report)?;
    Ok(report.is_consistent())
}

macro_rules! with_field {
    ($choice:expr, $f:ident => $body:expr) => {
        match $choice {
            FieldChoice::Rationals => {
                let $f = trunc_pi1::field::Rationals;
                $body
            }
            FieldChoice::Prime(p) => {
                let $f = p;
                $body
            }
        }
    };
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Invariant {
            graph,
            level,
            field,
            json,
        } => {
            let g = load_graph(&graph)?;
            with_field!(field, f => invariant(f, &g, level, json))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compare {
            g1,
            g2,
            map,
            level,
            field,
            allow_char2,
        } => {
            let (g1, g2, phi) = (load_graph(&g1)?, load_graph(&g2)?, load_map(&map)?);
            let equal = with_field!(field, f => compare(f, &g1, &g2, &phi, level, allow_char2))?;
            println!("{equal}");
            Ok(verdict(equal))
        }
        Command::Reconstruct { g1, g2, map } => {
            let (g1, g2, phi) = (load_graph(&g1)?, load_graph(&g2)?, load_map(&map)?);
            let outcome = reconstruct_isomorphism(&g1, &g2, &phi)?;
            print_json(&outcome)?;
            Ok(verdict(outcome.is_success()))
        }
        Command::Twist {
            graph,
            cut,
            side,
            map_out,
        } => {
            let g = load_graph(&graph)?;
            let Some((u, v)) = cut.split_once(',') else {
                bail!("--cut expects two comma-separated vertices, got {cut:?}");
            };
            let side = side
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(EdgeId::from)
                .collect();
            let (twisted, phi) = whitney_twist(
                &g,
                &VertexId::from(u.trim()),
                &VertexId::from(v.trim()),
                &side,
            )?;
            print!("{}", write_graph(&twisted));
            if let Some(path) = map_out {
                fs::write(&path, write_bijection(&phi))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Cyclespace { graph, field } => {
            let g = load_graph(&graph)?;
            with_field!(field, f => cyclespace(f, &g))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            max_edges,
            level,
            field,
            cap,
        } => {
            let consistent = with_field!(field, f => oracle(f, max_edges, level, cap))?;
            Ok(verdict(consistent))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
