use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use parzono_cli::commands;
use parzono_cli::formats::{load_lattice, load_subsets, load_vectors, LatticeFile};
use parzono_core::lattice_core::Lattice;
use serde_json::Value;

/// Exact computations with Voronoi cells of lattices and their zonotope
/// sums. Lattice arguments are JSON files or built-in names (Z<n>, A<n>,
/// D<n>, E6, E6*, E7, E7*, E8).
#[derive(Parser)]
#[command(name = "parzono", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice invariants and export.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// The Voronoi cell of a lattice.
    #[command(subcommand)]
    Voronoi(VoronoiCmd),
    /// Free vectors of the Voronoi cell.
    #[command(subcommand)]
    Free(FreeCmd),
    /// Sums of the Voronoi cell with zonotopes.
    #[command(subcommand)]
    Zonosum(ZonosumCmd),
    /// The E6 case study.
    #[command(subcommand)]
    E6(E6Cmd),
    /// Matroids of vector sets.
    #[command(subcommand)]
    Matroid(MatroidCmd),
    /// Symmetries of vector sets.
    #[command(subcommand)]
    Symmetry(SymmetryCmd),
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Dimension, determinant, minimal norm, relevant vectors and classes
    /// of L/2L.
    Info { lattice: String },
    /// Writes a lattice as a JSON lattice file.
    Export { lattice: String },
}

#[derive(Subcommand)]
enum VoronoiCmd {
    /// Vertices and facets.
    Build { lattice: String },
    /// Belts of facets.
    Belts { lattice: String },
    /// Face numbers, optionally with the types of codimension-3 dual cells.
    Faces {
        lattice: String,
        #[arg(long)]
        dual_cells: bool,
    },
}

#[derive(Subcommand)]
enum FreeCmd {
    /// All free lines of the Voronoi cell.
    Enumerate { lattice: String },
}

#[derive(Subcommand)]
enum ZonosumCmd {
    /// Is the sum with the given segments a parallelotope? Exit code 0 if
    /// it is, 2 if not.
    Check {
        lattice: String,
        #[arg(long)]
        generators: PathBuf,
    },
    /// Orbits of minimal forbidden and maximal feasible sets of free lines.
    Enumerate {
        lattice: String,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum E6Cmd {
    /// Recomputes the E6 tables and compares them with the reference
    /// values; exit code 2 on mismatch.
    Tables {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum MatroidCmd {
    /// Rank, circuits, unimodularity and graphic/cographic label.
    Classify {
        vectors: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
    },
}

#[derive(Subcommand)]
enum SymmetryCmd {
    /// Orbit representatives and stabilizer orders of subsets under the
    /// product-preserving permutations of the vectors.
    Orbits {
        vectors: PathBuf,
        #[arg(long)]
        subsets: PathBuf,
        /// Lattice whose Gram matrix defines the products; the standard
        /// inner product otherwise.
        #[arg(long)]
        lattice: Option<String>,
        /// Treat the vectors as lines, i.e. up to sign.
        #[arg(long)]
        lines: bool,
    },
}

enum Output {
    Json(Value, u8),
    Text(String, u8),
}

// A closed pipe on stdout is not an error of the computation.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        Some(n) => Ok(rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build()?.install(f)),
        None => Ok(f()),
    }
}

fn lattice(arg: &str) -> Result<(String, Lattice)> {
    load_lattice(arg)
}

fn run(cli: Cli) -> Result<Output> {
    Ok(match cli.command {
        Command::Lattice(LatticeCmd::Info { lattice: l }) => {
            let (name, lat) = lattice(&l)?;
            Output::Json(commands::lattice_info(&name, &lat), 0)
        }
        Command::Lattice(LatticeCmd::Export { lattice: l }) => {
            let (name, lat) = lattice(&l)?;
            Output::Json(serde_json::to_value(LatticeFile::from_lattice(&name, &lat))?, 0)
        }
        Command::Voronoi(VoronoiCmd::Build { lattice: l }) => {
            let (name, lat) = lattice(&l)?;
            Output::Json(commands::voronoi_build(&name, &lat), 0)
        }
        Command::Voronoi(VoronoiCmd::Belts { lattice: l }) => {
            let (name, lat) = lattice(&l)?;
            Output::Json(commands::voronoi_belts(&name, &lat), 0)
        }
        Command::Voronoi(VoronoiCmd::Faces { lattice: l, dual_cells }) => {
            let (name, lat) = lattice(&l)?;
            Output::Json(commands::voronoi_faces(&name, &lat, dual_cells), 0)
        }
        Command::Free(FreeCmd::Enumerate { lattice: l }) => {
            let (_, lat) = lattice(&l)?;
            Output::Json(commands::free_enumerate(&lat), 0)
        }
        Command::Zonosum(ZonosumCmd::Check { lattice: l, generators }) => {
            let (_, lat) = lattice(&l)?;
            let gens = load_vectors(&generators)?;
            let (report, ok) = commands::zonosum_check(&lat, &gens)?;
            Output::Json(report, if ok { 0 } else { 2 })
        }
        Command::Zonosum(ZonosumCmd::Enumerate { lattice: l, max_size, jobs }) => {
            let (name, lat) = lattice(&l)?;
            let report = with_jobs(jobs, || commands::zonosum_enumerate(&name, &lat, max_size))??;
            Output::Json(report, 0)
        }
        Command::E6(E6Cmd::Tables { format }) => {
            let (report, ok) = commands::e6_tables(&commands::e6_golden())?;
            let code = if ok { 0 } else { 2 };
            match format {
                Format::Json => Output::Json(report, code),
                Format::Text => Output::Text(commands::e6_tables_text(&report), code),
            }
        }
        Command::Matroid(MatroidCmd::Classify { vectors, max_vertices }) => {
            let vs = load_vectors(&vectors)?;
            Output::Json(commands::matroid_classify(&vs, max_vertices)?, 0)
        }
        Command::Symmetry(SymmetryCmd::Orbits { vectors, subsets, lattice: l, lines }) => {
            let vs = load_vectors(&vectors)?;
            let subsets = load_subsets(&subsets)?;
            let lat = l.map(|l| lattice(&l)).transpose()?;
            Output::Json(commands::symmetry_orbits(&vs, lat.as_ref().map(|x| &x.1), &subsets, lines)?, 0)
        }
    })
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Output::Json(v, code)) => {
            emit(&(serde_json::to_string_pretty(&v).expect("serializable") + "\n"));
            ExitCode::from(code)
        }
        Ok(Output::Text(s, code)) => {
            emit(&s);
            ExitCode::from(code)
        }
        Err(e) => {
            let err = serde_json::json!({ "error": format!("{e:#}") });
            eprintln!("{}", serde_json::to_string_pretty(&err).expect("serializable"));
            ExitCode::from(1)
        }
    }
}
