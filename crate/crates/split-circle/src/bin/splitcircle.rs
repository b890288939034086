//! Thin command-line front end over the split-circle library.
//!
//! Exit codes: 0 = circle / success, 2 = not circle, 3 = not split,
//! 1 = error. SPLIT_CIRCLE_CAP overrides the oracle vertex cap.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use split_circle::catalog::{make_fsc, Family};
use split_circle::chord::ChordModel;
use split_circle::graph::Graph;
use split_circle::oracle::OracleConfig;
use split_circle::recognize::{recognize, VerdictStatus};
use split_circle::svg::render_svg;

#[derive(Parser)]
#[command(name = "splitcircle", about = "circle-graph recognition inside split graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the graph in FILE is a circle graph; prints the
    /// verdict as JSON.
    Recognize { file: String },
    /// Print the forbidden-subgraph witness of a non-circle graph.
    Witness { file: String },
    /// Print a chord model (double occurrence word) of a circle graph.
    Model { file: String },
    /// Render a chord model file as SVG.
    Render { model_file: String },
    /// Emit a catalog member in the graph format plus a JSON sidecar.
    Catalog { family: String, k: usize },
    /// Run the acceptance self-check suite.
    Selfcheck {
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn config() -> OracleConfig {
    let mut cfg = OracleConfig::default();
    if let Ok(v) = std::env::var("SPLIT_CIRCLE_CAP") {
        if let Ok(cap) = v.parse() {
            cfg.circle_cap = cap;
        }
    }
    cfg
}

fn exit_for(status: VerdictStatus) -> ExitCode {
    match status {
        VerdictStatus::Circle => ExitCode::from(0),
        VerdictStatus::NotCircle => ExitCode::from(2),
        VerdictStatus::NotSplit => ExitCode::from(3),
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    let cfg = config();
    match cli.command {
        Command::Recognize { file } => {
            let g = Graph::parse(&read_input(&file)?).map_err(|e| e.to_string())?;
            let out = recognize(&g, &cfg).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&out.verdict).map_err(|e| e.to_string())?);
            Ok(exit_for(out.verdict.status))
        }
        Command::Witness { file } => {
            let g = Graph::parse(&read_input(&file)?).map_err(|e| e.to_string())?;
            let out = recognize(&g, &cfg).map_err(|e| e.to_string())?;
            match out.verdict.status {
                VerdictStatus::NotCircle => {
                    let w = out.verdict.witness.expect("non-circle verdicts carry a witness");
                    println!("{}", serde_json::to_string_pretty(&w).map_err(|e| e.to_string())?);
                    Ok(ExitCode::from(2))
                }
                other => {
                    eprintln!("graph is {other:?}; no witness");
                    Ok(exit_for(other))
                }
            }
        }
        Command::Model { file } => {
            let g = Graph::parse(&read_input(&file)?).map_err(|e| e.to_string())?;
            let out = recognize(&g, &cfg).map_err(|e| e.to_string())?;
            match (out.verdict.status, out.model) {
                (VerdictStatus::Circle, Some(m)) => {
                    print!("{}", m.emit());
                    Ok(ExitCode::from(0))
                }
                (VerdictStatus::Circle, None) => {
                    eprintln!("circle graph, but no model available over the cap");
                    Ok(ExitCode::from(1))
                }
                (other, _) => {
                    eprintln!("graph is {other:?}");
                    Ok(exit_for(other))
                }
            }
        }
        Command::Render { model_file } => {
            let m = ChordModel::parse(&read_input(&model_file)?).map_err(|e| e.to_string())?;
            print!("{}", render_svg(&m));
            Ok(ExitCode::from(0))
        }
        Command::Catalog { family, k } => {
            if k > 16 {
                return Err(format!("parameter k={k} exceeds the catalog cap (16)"));
            }
            let f = Family::from_name(&family)
                .ok_or_else(|| format!("unknown family {family}; names: {:?}",
                    Family::all().iter().map(|f| f.name()).collect::<Vec<_>>()))?;
            let member = make_fsc(f, k).map_err(|e| e.to_string())?;
            print!("{}", member.graph.emit());
            let sidecar = serde_json::json!({
                "family": f.name(),
                "k": k,
                "vertices": member.graph.n(),
                "clique": member.partition.k,
                "stable": member.partition.s,
            });
            eprintln!("{}", serde_json::to_string(&sidecar).map_err(|e| e.to_string())?);
            Ok(ExitCode::from(0))
        }
        Command::Selfcheck { cap, seed } => {
            let mut cfg = cfg;
            if let Some(c) = cap {
                cfg.circle_cap = c;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let report = split_circle::recognize::selfcheck(&cfg);
            print!("{report}");
            if report.lines().any(|l| l.contains("FAIL")) {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::from(0))
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
