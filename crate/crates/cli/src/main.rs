use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use pachner::composite::{build_l41_stack, detect_l41_exceptional, detour_rewrite};
use pachner::explore::{bfs_explore_with, connectivity_report, threads_from_env};
use pachner::io::{parse_move, parse_path, parse_table, write_path, write_table};
use pachner::moves::{apply, MovePath};
use pachner::{validate, Mode, Skeleton, Triangulation};

#[derive(Parser)]
#[command(name = "pachner", version, about = "Triangulations, Pachner moves and degree-one-free path rewriting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Closed,
    Ideal,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Closed => Mode::ClosedOneVertex,
            ModeArg::Ideal => Mode::Ideal,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a gluing table. Exit 0 if valid without degree-one edges, 2 if
    /// valid with them, 1 otherwise.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "closed")]
        mode: ModeArg,
    },
    /// Apply one move, e.g. `--apply "23 0 2"`.
    Move {
        file: PathBuf,
        #[arg(long)]
        apply: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay a path file and write the final table.
    Replay {
        path: PathBuf,
        /// Fail on the first state with a degree-one edge.
        #[arg(long)]
        check_degree_one: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Rewrite a path so that no state has a degree-one edge.
    Rewrite {
        path: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Sidecar report; defaults to the output path with `.cert` appended.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Explore the Pachner graph around a triangulation.
    Explore {
        file: PathBuf,
        #[arg(long)]
        max_tets: usize,
        #[arg(long)]
        forbid_degree_one: bool,
        /// Worker count; overrides PACHNER_THREADS.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build or recognise the exceptional L(4,1) stacks.
    L41 {
        #[arg(long, value_parser = odd_size, conflicts_with = "detect", required_unless_present = "detect")]
        stack: Option<usize>,
        #[arg(long)]
        detect: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn odd_size(s: &str) -> Result<usize, String> {
    let k: usize = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if k < 3 || k % 2 == 0 {
        return Err(format!("stack size must be odd and at least 3, got {k}"));
    }
    Ok(k)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_table(path: &Path) -> Result<Triangulation> {
    parse_table(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Writes via a temporary file in the same directory and a rename.
fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| anyhow!("writing {}: {}", path.display(), e.error))?;
    Ok(())
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// The path file's triangulation, resolved against the path file's folder.
fn load_path(path: &Path) -> Result<(String, MovePath)> {
    let file = parse_path(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let base = path.parent().unwrap_or(Path::new(""));
    let initial = read_table(&base.join(&file.triangulation))?;
    Ok((file.triangulation, MovePath { initial, moves: file.moves }))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { file, mode } => {
            let tri = match parse_table(&read(&file)?) {
                Ok(t) => t,
                Err(e) => {
                    println!("invalid: {e}");
                    println!("valid=false");
                    return Ok(ExitCode::from(1));
                }
            };
            let report = validate(&tri, mode.into());
            let verdict = match (report.is_valid(), report.degree_one_edges.is_empty()) {
                (false, _) => "invalid",
                (true, false) => "valid, with degree-one edges",
                (true, true) => "valid",
            };
            println!("{}: {} tetrahedra, {verdict}", file.display(), tri.len());
            print!("{}", report.key_values());
            Ok(ExitCode::from(match (report.is_valid(), report.degree_one_edges.is_empty()) {
                (false, _) => 1,
                (true, false) => 2,
                (true, true) => 0,
            }))
        }
        Command::Move { file, apply: text, output } => {
            let tri = read_table(&file)?;
            let m = parse_move(&text).map_err(|e| anyhow!(e))?;
            let out = apply(&tri, &m).with_context(|| format!("applying `{text}`"))?;
            emit(output.as_deref(), &write_table(&out.result))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Replay { path, check_degree_one, output } => {
            let (_, mp) = load_path(&path)?;
            let states = mp.states()?;
            if check_degree_one {
                for (i, s) in states.iter().enumerate() {
                    let ones = Skeleton::new(s).degree_one_edges();
                    if !ones.is_empty() {
                        eprintln!("state {i} has degree-one edges {ones:?}");
                        return Ok(ExitCode::from(2));
                    }
                }
            }
            emit(output.as_deref(), &write_table(states.last().unwrap()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Rewrite { path, output, certificate } => {
            let (reference, mp) = load_path(&path)?;
            let states = mp.states()?;
            if let Some(i) = states.iter().position(detect_l41_exceptional) {
                bail!("state {i} is an exceptional L(4,1) stack of {} tetrahedra; refusing to rewrite", states[i].len());
            }
            let cert = detour_rewrite(&mp)?;
            write_atomic(&output, &write_path(&reference, &cert.rewritten.moves))?;
            let side = certificate.unwrap_or_else(|| {
                let mut s = output.clone().into_os_string();
                s.push(".cert");
                PathBuf::from(s)
            });
            write_atomic(&side, &cert.report())?;
            eprintln!("{} moves in, {} out", mp.moves.len(), cert.rewritten.moves.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Explore { file, max_tets, forbid_degree_one, threads, output } => {
            let tri = read_table(&file)?;
            let slice = bfs_explore_with(&tri, max_tets, forbid_degree_one, threads.or_else(threads_from_env))?;
            emit(output.as_deref(), &slice.export())?;
            let report = connectivity_report(&slice, forbid_degree_one)?;
            eprintln!("{} nodes, {} edges, {} components", slice.nodes.len(), slice.edges.len(), report.components.len());
            for c in &report.components {
                let note = if c.bound_artifact { " (touches the bound)" } else { "" };
                eprintln!("  {} nodes from {}{note}", c.size, c.representative);
            }
            if tri.len() == 1 {
                eprintln!("note: single-tetrahedron triangulations admit no 2-3 or 3-2 move");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::L41 { stack, detect, output } => {
            if let Some(k) = stack {
                emit(output.as_deref(), &write_table(&build_l41_stack(k)?))?;
            } else if let Some(file) = detect {
                let found = detect_l41_exceptional(&read_table(&file)?);
                emit(output.as_deref(), &format!("{found}\n"))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
