mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use normsurf::convert::{enumerate_std_via_quad, quad_to_std, std_to_quad, ConvertOptions};
use normsurf::coords::{is_admissible, quad_matching_system, standard_matching_system};
use normsurf::enumerate::enumerate_solution_set;
use normsurf::io::{parse_solution_set, write_solution_set};
use normsurf::{build_skeleton, parse_triangulation, validate_compact, Coords, Skeleton, Triangulation};

#[derive(Debug, Parser)]
#[command(name = "normsurf", version, about = "Vertex normal surface enumeration and coordinate conversion")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a triangulation is compact. Exits 1 on a parse failure
    /// and 2 if some vertex link is neither a sphere nor a disc.
    Validate { path: PathBuf },
    /// Enumerate the vertex normal surfaces of a triangulation.
    Enumerate {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = CoordsArg::Std)]
        coords: CoordsArg,
        #[arg(long, value_enum, default_value_t = Algorithm::Direct)]
        algorithm: Algorithm,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Convert a solution set between coordinate systems.
    Convert {
        path: PathBuf,
        set_file: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Write the conversion trace CSV here (quad2std only).
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
    /// Time direct and via-quad standard enumeration over a directory of
    /// gluing files and emit one CSV row per file.
    Bench {
        corpus_dir: PathBuf,
        /// Per-enumeration time limit; slower runs are recorded as censored.
        #[arg(long, default_value_t = 300)]
        timeout_secs: u64,
        /// Files processed concurrently. Timings interfere above 1.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Output file; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CoordsArg {
    Std,
    Quad,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Direct,
    ViaQuad,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Direction {
    Std2quad,
    Quad2std,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = match args.command {
        Command::Validate { path } => return validate(&path),
        Command::Enumerate { path, coords, algorithm, output } => enumerate(&path, coords, algorithm, output.as_deref()),
        Command::Convert { path, set_file, direction, output, trace_out } => {
            convert(&path, &set_file, direction, output.as_deref(), trace_out.as_deref())
        }
        Command::Bench { corpus_dir, timeout_secs, jobs, output } => {
            bench::run(&corpus_dir, timeout_secs, jobs).and_then(|csv| emit(output.as_deref(), &csv))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<(Triangulation, Skeleton)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let tri = parse_triangulation(&text).with_context(|| format!("parsing {}", path.display()))?;
    let skel = build_skeleton(&tri)?;
    Ok((tri, skel))
}

/// Loads and requires a compact triangulation.
fn load_compact(path: &Path) -> Result<(Triangulation, Skeleton)> {
    let (tri, skel) = load(path)?;
    let report = validate_compact(&tri, &skel);
    if !report.is_compact {
        bail!("{} is not compact: {}", path.display(), report.failures.join("; "));
    }
    Ok((tri, skel))
}

fn validate(path: &Path) -> ExitCode {
    let (tri, skel) = match load(path) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let report = validate_compact(&tri, &skel);
    println!("tetrahedra: {}", tri.size());
    println!("vertices: {}", skel.vertex_count());
    for (v, link) in report.per_vertex.iter().enumerate() {
        let kind = if link.boundary { "bounded" } else { "closed" };
        println!("vertex {v}: {kind} link, euler characteristic {}", link.euler_characteristic);
    }
    for f in &report.failures {
        println!("failure: {f}");
    }
    if report.is_compact {
        println!("compact: yes");
        ExitCode::SUCCESS
    } else {
        println!("compact: no");
        ExitCode::from(2)
    }
}

fn enumerate(path: &Path, coords: CoordsArg, algorithm: Algorithm, output: Option<&Path>) -> Result<()> {
    if coords == CoordsArg::Quad && algorithm == Algorithm::ViaQuad {
        bail!("--algorithm via-quad requires --coords std");
    }
    let (tri, skel) = load_compact(path)?;
    let set = match (coords, algorithm) {
        (CoordsArg::Quad, _) => enumerate_solution_set(&quad_matching_system(&tri, &skel)),
        (CoordsArg::Std, Algorithm::Direct) => enumerate_solution_set(&standard_matching_system(&tri, &skel)),
        (CoordsArg::Std, Algorithm::ViaQuad) => enumerate_std_via_quad(&tri, &skel, &ConvertOptions::default())?.0,
    };
    emit(output, &write_solution_set(&set))
}

fn convert(
    path: &Path,
    set_file: &Path,
    direction: Direction,
    output: Option<&Path>,
    trace_out: Option<&Path>,
) -> Result<()> {
    if direction == Direction::Std2quad && trace_out.is_some() {
        bail!("--trace-out is only produced by --direction quad2std");
    }
    let (tri, skel) = load_compact(path)?;
    let text = fs::read_to_string(set_file).with_context(|| format!("reading {}", set_file.display()))?;
    let set = parse_solution_set(&text).with_context(|| format!("parsing {}", set_file.display()))?;
    let expected = match direction {
        Direction::Std2quad => Coords::Standard,
        Direction::Quad2std => Coords::Quad,
    };
    if set.coords() != expected || set.tets() != tri.size() {
        bail!(
            "{} holds {} vectors for {} tetrahedra, expected {} vectors for {}",
            set_file.display(),
            set.coords(),
            set.tets(),
            expected,
            tri.size()
        );
    }
    let std_sys = standard_matching_system(&tri, &skel);
    let out = match direction {
        Direction::Std2quad => {
            for (i, w) in set.vectors().enumerate() {
                if !is_admissible(&w, &std_sys)? {
                    bail!("ray {} of {} is not admissible", i + 1, set_file.display());
                }
            }
            std_to_quad(&set)
        }
        Direction::Quad2std => {
            let (out, trace) = quad_to_std(&set, &std_sys, &skel, &ConvertOptions::default())?;
            if let Some(p) = trace_out {
                fs::write(p, trace.to_csv()).with_context(|| format!("writing {}", p.display()))?;
            }
            out
        }
    };
    emit(output, &write_solution_set(&out))
}
