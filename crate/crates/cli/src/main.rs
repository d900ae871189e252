use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use tirs::convex;
use tirs::digraph::{self, Condition};
use tirs::duality;
use tirs::enumeration;
use tirs::harness::{self, Predicate, Scope};
use tirs::io::{self as tio, LatticeJson, Structure};
use tirs::properties::{self, Property};
use tirs::{Digraph, FiniteLattice};

#[derive(Parser)]
#[command(name = "tirs", version, about = "Finite lattices and their TiRS dual digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the dual digraph of a lattice
    Dual {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Print the lattice of maximal partial E-preserving maps of a digraph
    Primal {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Evaluate a lattice property or digraph condition
    ///
    /// On a lattice file, digraph conditions are evaluated on its dual.
    Check { property: String, file: PathBuf },
    /// Check that a lattice or TiRS digraph survives the round trip through its dual
    Roundtrip { file: PathBuf },
    /// List every lattice up to the given size, one JSON record per line
    Enumerate {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the theorem checks over all small lattices and digraphs
    VerifyTheorems {
        #[arg(long)]
        max_n: usize,
        /// Write the JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = harness::DEFAULT_MAX_V)]
        max_v: usize,
        #[arg(long, default_value_t = harness::DEFAULT_MAX_GROUND)]
        max_ground: usize,
        /// Only run these checks
        #[arg(long = "only", value_delimiter = ',')]
        only: Vec<String>,
    },
    /// List lattices where one property holds and another fails
    Search {
        #[arg(long)]
        holds: String,
        #[arg(long)]
        fails: String,
        #[arg(long)]
        max_n: usize,
    },
    /// Build a convex geometry whose closure lattice is the given lattice
    Convexify { file: PathBuf },
}

enum Failure {
    Input(String),
    Theorem(String),
}

impl From<tirs::Error> for Failure {
    fn from(e: tirs::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Theorem(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Dual { file, dot } => {
            let l = read_lattice(&file)?;
            let g = duality::try_dual_digraph(&l)?;
            emit(if dot { tio::digraph_to_dot(&g) } else { tio::digraph_to_json(&g) + "\n" })
        }
        Command::Primal { file, dot } => {
            let g = read_digraph(&file)?;
            let l = duality::mpe_lattice(&g)?;
            emit(if dot { tio::lattice_to_dot(&l) } else { tio::lattice_to_json(&l) + "\n" })
        }
        Command::Check { property, file } => check(&property, &file),
        Command::Roundtrip { file } => roundtrip(&file),
        Command::Enumerate { max_n, out } => {
            let catalog = enumeration::enumerate_lattices(max_n)?;
            let counts = catalog.counts();
            match out {
                Some(path) => {
                    let mut buf = Vec::new();
                    catalog.write_ndjson(&mut buf).map_err(io_failure)?;
                    fs::write(&path, buf).map_err(io_failure)?;
                }
                None => catalog.write_ndjson(io::stdout().lock()).map_err(io_failure)?,
            }
            for (n, count) in counts.iter().enumerate().skip(1) {
                eprintln!("n = {n}: {count}");
            }
            Ok(())
        }
        Command::VerifyTheorems {
            max_n,
            report,
            max_v,
            max_ground,
            only,
        } => {
            let scope = Scope {
                max_n,
                max_v,
                max_v_all: max_v.min(harness::DEFAULT_MAX_V_ALL),
                max_ground,
            };
            let checks = if only.is_empty() {
                harness::verify_theorems_in(scope)?
            } else {
                let ids: Vec<&str> = only.iter().map(String::as_str).collect();
                harness::verify_selected(scope, &ids)?
            };
            if let Some(path) = report {
                fs::write(&path, harness::report_json(&checks) + "\n").map_err(io_failure)?;
            }
            emit(harness::report_text(&checks))?;
            let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Theorem(format!("failed checks: {}", failed.join(", "))))
            }
        }
        Command::Search { holds, fails, max_n } => {
            let found = harness::search_counterexamples(&holds, &fails, max_n)?;
            let mut out = String::new();
            for l in &found {
                out.push_str(&tio::lattice_to_json(l));
                out.push('\n');
            }
            emit(out)?;
            eprintln!("{} lattices with {holds} and not {fails}", found.len());
            Ok(())
        }
        Command::Convexify { file } => {
            let l = read_lattice(&file)?;
            let system = convex::lattice_to_convex_geometry(&l)?;
            let (_, elements) = convex::join_irreducible_representation(&l);
            let points: Vec<String> = elements.iter().map(|&x| l.name(x)).collect();
            let value = json!({
                "ground": system.ground(),
                "closed": serde_json::to_value(&system).map_err(|e| Failure::Input(e.to_string()))?["closed"],
                "points": points,
            });
            emit(pretty(&value))
        }
    }
}

fn check(property: &str, file: &Path) -> Outcome {
    let structure = read_structure(file)?;
    let predicate: Predicate = property.parse()?;
    let value = match (structure, predicate) {
        (Structure::Lattice(l), Predicate::Lattice(p)) => lattice_report(&l, p),
        (Structure::Lattice(l), Predicate::Dual(c)) => {
            let g = duality::try_dual_digraph(&l)?;
            let mut report = digraph_report(&g, c);
            report["on"] = json!("dual digraph");
            report
        }
        (Structure::Digraph(g), Predicate::Dual(c)) => digraph_report(&g.digraph, c),
        (Structure::Digraph(g), Predicate::Lattice(p)) => {
            let g = g.digraph;
            if !digraph::is_tirs(&g) {
                return Err(Failure::Input(format!(
                    "`{p}` is a lattice property and the digraph is not TiRS"
                )));
            }
            let l = duality::mpe_lattice(&g)?;
            let mut report = lattice_report(&l, p);
            report["on"] = json!("lattice of maximal partial maps");
            report
        }
    };
    emit(pretty(&value))
}

fn lattice_report(l: &FiniteLattice, p: Property) -> Value {
    let r = properties::check(l, p);
    json!({
        "property": p.as_str(),
        "holds": r.holds,
        "witness": r.witness.as_ref().map(|w| w.iter().map(|&x| l.name(x)).collect::<Vec<_>>()),
    })
}

fn digraph_report(g: &Digraph, c: Condition) -> Value {
    let (holds, witness) = c.evaluate(g);
    json!({
        "property": c.as_str(),
        "holds": holds,
        "witness": witness.map(|w| w.iter().map(|&x| g.name(x)).collect::<Vec<_>>()),
    })
}

fn roundtrip(file: &Path) -> Outcome {
    let (kind, ok) = match read_structure(file)? {
        Structure::Lattice(l) => ("lattice", duality::roundtrip_lattice(&l)?),
        Structure::Digraph(g) => {
            let report = digraph::check_tirs(&g.digraph)?;
            let failing = [("S", &report.s), ("R", &report.r), ("Ti", &report.ti)]
                .into_iter()
                .find_map(|(name, v)| v.witness().map(|&(x, y)| format!("({name}) fails at {x}, {y}")));
            if let Some(reason) = failing {
                return Err(Failure::Input(format!("digraph is not TiRS: {reason}")));
            }
            ("digraph", duality::roundtrip_digraph(&g.digraph)?)
        }
    };
    emit(pretty(&json!({ "kind": kind, "roundtrip": ok })))?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Theorem(format!("{kind} is not isomorphic to its double dual")))
    }
}

fn read_text(file: &Path) -> Result<String, Failure> {
    fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))
}

fn read_lattice(file: &Path) -> Result<FiniteLattice, Failure> {
    let text = read_text(file)?;
    Ok(serde_json::from_str::<LatticeJson>(&text)
        .map_err(tirs::Error::from)?
        .to_lattice()?)
}

fn read_digraph(file: &Path) -> Result<Digraph, Failure> {
    let loaded = tio::parse_digraph(&read_text(file)?)?;
    warn_loops(&loaded.added_loops);
    Ok(loaded.digraph)
}

fn read_structure(file: &Path) -> Result<Structure, Failure> {
    let structure = tio::parse_structure(&read_text(file)?)?;
    Ok(match structure {
        Structure::Digraph(loaded) => {
            warn_loops(&loaded.added_loops);
            Structure::Digraph(loaded)
        }
        s => s,
    })
}

fn warn_loops(added: &[usize]) {
    if !added.is_empty() {
        let list: Vec<String> = added.iter().map(usize::to_string).collect();
        eprintln!("warning: added missing loops at vertices {}", list.join(", "));
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON value serializes") + "\n"
}

fn emit(text: String) -> Outcome {
    io::stdout().lock().write_all(text.as_bytes()).map_err(io_failure)
}

fn io_failure(e: io::Error) -> Failure {
    Failure::Input(e.to_string())
}
