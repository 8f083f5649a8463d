use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use symcircle::complex::{ParseError, Simplex, SimplicialComplex};
use symcircle::geometry::{d_polyline, prism_off};
use symcircle::homology::homology_groups;
use symcircle::knot::{knot_pipeline, StageError, DEFAULT_BUDGET};
use symcircle::quotient::{barnette_complex, knot_cycle_complex, mobius_complex, prism_complex};
use symcircle::report::{verify_paper, VerifyOptions, DEFAULT_GRID};

#[derive(Parser)]
#[command(
    name = "symcircle",
    version,
    about = "Build and verify the triangulations of the space of at most three points on the circle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Named {
    Prism,
    Barnette,
    Mobius,
    Knot,
}

#[derive(Subcommand)]
enum Command {
    /// Write one of the built-in complexes in the `sc v1` format.
    Emit { name: Named, out: PathBuf },
    /// Integral homology of a complex file.
    Homology { file: PathBuf },
    /// Vertex links and the closed 3-manifold check.
    Links { file: PathBuf },
    /// Face counts by dimension.
    Fvector { file: PathBuf },
    /// Knot invariants of a 1-dimensional subcomplex of a closed 3-manifold.
    Alexander {
        complex: PathBuf,
        #[arg(long)]
        knot: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Run every check and print one `CHECK` line each.
    VerifyPaper {
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: u32,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Use this prism table instead of the built-in one.
        #[arg(long)]
        prism: Option<PathBuf>,
    },
    /// Write the untriangulated prism as an OFF mesh.
    ExportOff { out: PathBuf },
    /// Write the three segments of the 1-stratum as a polyline.
    ExportPolyline { out: PathBuf },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Stage(#[from] StageError),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Stage(_) | CliError::ChecksFailed(_) => 1,
        }
    }
}

fn read_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    SimplicialComplex::from_text(&text).map_err(|source| CliError::Parse {
        path: path.into(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn fvector_line(k: &SimplicialComplex) -> String {
    k.f_vector()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Emit { name, out } => {
            let k = match name {
                Named::Prism => prism_complex(),
                Named::Barnette => barnette_complex(),
                Named::Mobius => mobius_complex(),
                Named::Knot => knot_cycle_complex(),
            };
            write(&out, &k.to_text())
        }
        Command::Homology { file } => {
            let k = read_complex(&file)?;
            for (d, g) in homology_groups(&k, false).iter().enumerate() {
                let torsion: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
                println!("H{d} rank={} torsion=[{}]", g.betti, torsion.join(","));
            }
            Ok(())
        }
        Command::Links { file } => {
            let k = read_complex(&file)?;
            for &v in k.vertices() {
                let link = k
                    .link(&Simplex::new([v]).expect("single vertex"))
                    .expect("vertex of k");
                println!(
                    "link {v} f={} chi={}",
                    fvector_line(&link).replace(' ', ","),
                    link.euler_characteristic()
                );
            }
            let m = k.check_closed_3_manifold();
            println!("pure_3 {}", m.pure_3);
            println!("ridges_in_two_facets {}", m.ridges_in_two_facets);
            println!("edge_links_cycles {}", m.edge_links_cycles);
            println!("vertex_links_spheres {}", m.vertex_links_spheres);
            println!("connected {}", m.connected);
            for f in &m.failures {
                println!("failure {f}");
            }
            println!("closed_3_manifold {}", m.passed());
            Ok(())
        }
        Command::Fvector { file } => {
            println!("f {}", fvector_line(&read_complex(&file)?));
            Ok(())
        }
        Command::Alexander {
            complex,
            knot,
            budget,
        } => {
            let ambient = read_complex(&complex)?;
            let knot = read_complex(&knot)?;
            print!("{}", knot_pipeline(&ambient, &knot, budget)?);
            Ok(())
        }
        Command::VerifyPaper {
            grid,
            budget,
            prism,
        } => {
            let prism = prism.as_deref().map(read_complex).transpose()?;
            let report = verify_paper(&VerifyOptions {
                grid,
                budget,
                prism,
            });
            print!("{report}");
            match report.failures().count() {
                0 => Ok(()),
                n => Err(CliError::ChecksFailed(n)),
            }
        }
        Command::ExportOff { out } => write(&out, &prism_off()),
        Command::ExportPolyline { out } => write(&out, &d_polyline()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
