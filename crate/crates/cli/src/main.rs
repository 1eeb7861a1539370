use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use hkh_core::diagram::{apply_move, enumerate_r1_sites, enumerate_r2_sites, enumerate_r3_sites, parse_moves, MoveSpec};
use hkh_core::khovanov::{edge_map, verify_table1};
use hkh_core::state_cube::{resolve, CubeTable, EdgeKind};
use hkh_core::{compare, kh_with, verify_d_squared, Diagram, Flavor, HomologyTable, KhOptions};

/// Homotopical Khovanov homology of link diagrams on surfaces.
#[derive(Parser, Debug)]
#[command(name = "hkh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the homology table of a diagram.
    Compute {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check that the differential squares to zero in every slice.
    VerifyD2 {
        #[command(flatten)]
        common: Common,
    },
    /// Apply Reidemeister moves and compare tables before and after.
    VerifyMoves {
        #[command(flatten)]
        common: Common,
        /// Comma-separated moves applied in sequence, e.g. "r1+:edge=3,r2:edges=1,4".
        /// Without it, every enumerated site is tried once.
        #[arg(long)]
        moves: Option<String>,
        /// Seed used when sampling enumerated sites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// At most this many enumerated sites are tried.
        #[arg(long, default_value_t = 200)]
        max_sites: usize,
    },
    /// Check every commutativity relation of the cube faces.
    VerifyTable1,
    /// Print every resolution and the map on every cube edge.
    DumpCube {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Diagram JSON file.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = FlavorArg::Homotopical)]
    flavor: FlavorArg,
    /// Report unshifted gradings.
    #[arg(long)]
    no_shift: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Homotopical,
    Classical,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

impl Common {
    fn options(&self) -> KhOptions {
        let flavor = match self.flavor {
            FlavorArg::Homotopical => Flavor::Homotopical,
            FlavorArg::Classical => Flavor::Classical,
        };
        KhOptions { no_shift: self.no_shift, ..KhOptions::new(flavor) }
    }
}

struct Input {
    diagram: Diagram,
    hash: String,
}

fn load(path: &Path) -> Result<Input> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let diagram = Diagram::from_json(text).with_context(|| format!("parsing {}", path.display()))?;
    diagram.require_valid().with_context(|| format!("validating {}", path.display()))?;
    Ok(Input { diagram, hash: hex::encode(Sha256::digest(&bytes)) })
}

fn compute(common: &Common, format: Format) -> Result<bool> {
    let input = load(&common.input)?;
    let table = kh_with(&input.diagram, &common.options())?;
    match format {
        Format::Text => print!("{}", table.render_text()),
        Format::Tsv => print!("{}", table.render_tsv()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&table.to_json(&input.hash))?),
    }
    Ok(true)
}

fn verify_d2(common: &Common) -> Result<bool> {
    let input = load(&common.input)?;
    let report = verify_d_squared(&input.diagram, &common.options())?;
    if report.ok() {
        println!("all slices zero ({} composable pairs)", report.pairs);
    } else {
        for (j, beta) in &report.failures {
            println!("nonzero square in slice j={j} at height {beta}");
        }
    }
    Ok(report.ok())
}

fn check_move(base: &HomologyTable, d: &Diagram, m: &MoveSpec, opts: &KhOptions) -> Result<(Diagram, bool)> {
    let moved = apply_move(d, m).with_context(|| format!("applying {m}"))?;
    let table = kh_with(&moved, opts)?;
    let same = match compare(&table, base, None) {
        Ok(()) => {
            println!("{m} : equal");
            true
        }
        Err(diff) => {
            println!("{m} : differs at {}", diff.render(d.genus));
            false
        }
    };
    Ok((moved, same))
}

fn verify_moves(common: &Common, moves: Option<&str>, seed: u64, max_sites: usize) -> Result<bool> {
    let input = load(&common.input)?;
    let opts = common.options();
    let base = kh_with(&input.diagram, &opts)?;
    let mut total = 0;
    let mut good = 0;
    match moves {
        Some(spec) => {
            let mut d = input.diagram;
            for m in parse_moves(spec)? {
                let (next, same) = check_move(&base, &d, &m, &opts)?;
                total += 1;
                good += same as usize;
                d = next;
            }
        }
        None => {
            let d = &input.diagram;
            let mut sites = enumerate_r1_sites(d);
            sites.extend(enumerate_r2_sites(d));
            sites.extend(enumerate_r3_sites(d));
            if sites.len() > max_sites {
                sites.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                sites.truncate(max_sites);
            }
            for m in &sites {
                let (_, same) = check_move(&base, d, m, &opts)?;
                total += 1;
                good += same as usize;
            }
        }
    }
    println!("{good}/{total} moves preserve the table");
    Ok(good == total)
}

fn verify_table1_cmd() -> bool {
    let checks = verify_table1();
    for c in &checks {
        println!("{c}");
    }
    let ok = checks.iter().filter(|c| c.holds()).count();
    println!("{ok}/{} cells hold", checks.len());
    ok == checks.len()
}

fn dump_cube(common: &Common) -> Result<bool> {
    let input = load(&common.input)?;
    let d = &input.diagram;
    let opts = common.options();
    let n = d.crossings.len();
    if n > 12 {
        anyhow::bail!("dump-cube is limited to 12 crossings, got {n}");
    }
    let table = CubeTable::build(d, &opts.resolve)?;
    let bits = |s: u64| -> String { (0..n).map(|c| if s >> c & 1 == 1 { '1' } else { '0' }).collect() };
    for s in 0..1u64 << n {
        println!("{}", resolve(d, s, &opts.resolve)?.describe(n, d.genus));
        for c in 0..n {
            if s >> c & 1 == 1 {
                continue;
            }
            let t = s | 1 << c;
            let edge = table.edge(s, c)?;
            let kind = match edge.kind {
                EdgeKind::Merge { .. } => "merge",
                EdgeKind::Split { .. } => "split",
                EdgeKind::Neutral { .. } => "neutral",
            };
            let map = edge_map(opts.flavor, &table.states[s as usize], &table.states[t as usize], &edge, &table.classes)?;
            println!("  crossing {c} -> {}: {kind} {map}", bits(t));
        }
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Compute { common, format } => compute(common, *format),
        Command::VerifyD2 { common } => verify_d2(common),
        Command::VerifyMoves { common, moves, seed, max_sites } => {
            verify_moves(common, moves.as_deref(), *seed, *max_sites)
        }
        Command::VerifyTable1 => Ok(verify_table1_cmd()),
        Command::DumpCube { common } => dump_cube(common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
