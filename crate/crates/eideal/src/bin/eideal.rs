use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use eideal::compose::{compose, ComposeOp};
use eideal::format::{read_graph_file, serialize_graph, write_graph_file};
use eideal::generate::generate_corpus;
use eideal::oracle::par_oracle_values;
use eideal::report::{analyze, render_table, AnalyzeOptions};
use eideal::verify::{verify, Theorem, VerifyConfig};
use eideal_core::cm::classify_cm;
use eideal_core::formulas::Formulas;
use eideal_core::homology::{OracleConfig, DEFAULT_MAX_VERTICES};
use serde_json::json;

/// Depth and regularity of edge ideals of glued Cohen–Macaulay bipartite graphs.
///
/// Exit status: 0 success, 1 usage or input error, 2 formula/oracle mismatch
/// (or, for check-cm, a graph that is not Cohen–Macaulay).
#[derive(Parser)]
#[command(name = "eideal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct OracleArgs {
    /// Largest graph the Hochster oracle accepts.
    #[arg(long, env = "EIDEAL_MAX_VERTICES", default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
}

impl OracleArgs {
    fn config(self) -> OracleConfig {
        OracleConfig {
            max_vertices: self.max_vertices,
            ..Default::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Recognition, invariants, closed-form values and (optionally) the oracle.
    Analyze {
        file: PathBuf,
        /// Run the Hochster oracle and compare with the formula.
        #[arg(long)]
        oracle: bool,
        /// Include the Betti table (implies --oracle).
        #[arg(long)]
        betti: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        cap: OracleArgs,
    },
    /// Glue graphs with ∘ (circ), * (star) or a pendant edge and predict depth/reg.
    Compose {
        #[arg(long, value_enum)]
        op: ComposeOp,
        #[arg(long)]
        g1: PathBuf,
        #[arg(long)]
        u1: String,
        #[arg(long)]
        g2: Option<PathBuf>,
        #[arg(long)]
        u2: Option<String>,
        /// Output graph file; printed to stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Skip the Cohen–Macaulay re-check of the operands.
        #[arg(long)]
        trusted: bool,
        /// Also run the oracle on the composite.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        cap: OracleArgs,
    },
    /// Write random Cohen–Macaulay bipartite graphs as cm_<n>_<seed>_<index>.graph.
    Generate {
        #[arg(long)]
        pairs: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(short, long, default_value = ".")]
        output: PathBuf,
    },
    /// Compare a theorem's formula with the oracle on random instances.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        max_pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        trusted: bool,
        #[command(flatten)]
        cap: OracleArgs,
    },
    /// Report whether each file is a Cohen–Macaulay bipartite graph.
    CheckCm {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

enum Outcome {
    Ok,
    Mismatch,
}

fn formulas(trusted: bool) -> Formulas {
    if trusted {
        Formulas::trusted()
    } else {
        Formulas::checked()
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Analyze {
            file,
            oracle,
            betti,
            json,
            cap,
        } => {
            let g = read_graph_file(&file)?;
            let opts = AnalyzeOptions {
                oracle,
                betti,
                oracle_config: cap.config(),
            };
            let report = analyze(&g, &opts)?;
            if json {
                print_json(&report)?;
            } else {
                print!("{}", render_table(&report));
            }
            Ok(if report.mismatch {
                Outcome::Mismatch
            } else {
                Outcome::Ok
            })
        }
        Command::Compose {
            op,
            g1,
            u1,
            g2,
            u2,
            output,
            json,
            trusted,
            oracle,
            cap,
        } => {
            let first = read_graph_file(&g1)?;
            let second = match (op, g2, u2) {
                (ComposeOp::Pendant, None, None) => None,
                (ComposeOp::Pendant, _, _) => bail!("--op pendant takes only --g1 and --u1"),
                (_, Some(f), Some(u)) => Some((read_graph_file(&f)?, u)),
                _ => bail!("--op {op:?} needs --g2 and --u2"),
            };
            let c = compose(
                op,
                (&first, &u1),
                second.as_ref().map(|(g, u)| (g, u.as_str())),
                formulas(trusted),
            )?;
            if let Some(path) = &output {
                write_graph_file(path, &c.graph)?;
            }
            let checked = if oracle {
                Some(par_oracle_values(&c.graph, &cap.config())?.0)
            } else {
                None
            };
            let mismatch = checked.is_some_and(|o| {
                o.depth != c.formula.depth || c.formula.reg.is_some_and(|r| r != o.reg)
            });
            if json {
                print_json(&json!({
                    "op": op,
                    "vertices": c.graph.vertex_count(),
                    "edges": c.graph.edge_count(),
                    "formula": c.formula,
                    "oracle": checked.map(|o| json!({"depth": o.depth, "reg": o.reg, "pd": o.pd, "dim": o.dim})),
                    "warnings": c.warnings,
                    "mismatch": mismatch,
                    "output": output.as_ref().map(|p| p.display().to_string()),
                    "graph": output.is_none().then(|| serialize_graph(&c.graph)),
                }))?;
            } else {
                if output.is_none() {
                    print!("{}", serialize_graph(&c.graph));
                }
                let reg = c.formula.reg.map_or("-".to_string(), |r| r.to_string());
                println!(
                    "# {} vertices, {} edges; predicted depth {} reg {} [{}]",
                    c.graph.vertex_count(),
                    c.graph.edge_count(),
                    c.formula.depth,
                    reg,
                    c.formula.provenance
                );
                if let Some(o) = checked {
                    println!("# oracle depth {} reg {}", o.depth, o.reg);
                }
                for w in &c.warnings {
                    println!("# warning: {w}");
                }
                if mismatch {
                    println!("# FAIL: formula and oracle disagree");
                }
            }
            Ok(if mismatch {
                Outcome::Mismatch
            } else {
                Outcome::Ok
            })
        }
        Command::Generate {
            pairs,
            density,
            seed,
            count,
            output,
        } => {
            if pairs == 0 {
                bail!("--pairs must be at least 1");
            }
            if !(0.0..=1.0).contains(&density) {
                bail!("--density must lie in [0, 1]");
            }
            for path in generate_corpus(pairs, density, seed, count, &output)? {
                println!("{}", path.display());
            }
            Ok(Outcome::Ok)
        }
        Command::Verify {
            theorem,
            trials,
            max_pairs,
            seed,
            json,
            trusted,
            cap,
        } => {
            let cfg = VerifyConfig {
                theorem,
                trials,
                max_pairs,
                seed,
                oracle: cap.config(),
                formulas: formulas(trusted),
            };
            let summary = verify(&cfg)?;
            if json {
                print_json(&summary)?;
            } else {
                println!(
                    "{:?}: {}/{} pass (depth failures {}, reg failures {})",
                    theorem,
                    summary.passed,
                    summary.trials,
                    summary.depth_failures,
                    summary.reg_failures
                );
                if let Some(t) = &summary.first_counterexample {
                    println!("FAIL: first counterexample at trial {}", t.trial);
                    println!("{}", serde_json::to_string_pretty(t)?);
                }
            }
            Ok(if summary.failed > 0 {
                Outcome::Mismatch
            } else {
                Outcome::Ok
            })
        }
        Command::CheckCm { files, json } => {
            let mut results = Vec::new();
            for f in &files {
                let g = read_graph_file(f)?;
                results.push((f.as_path(), classify_cm(&g)));
            }
            if json {
                let rows: Vec<_> = results
                    .iter()
                    .map(|(p, r)| {
                        json!({
                            "file": p.display().to_string(),
                            "cm": r.is_ok(),
                            "reason": r.as_ref().err().map(ToString::to_string),
                        })
                    })
                    .collect();
                print_json(&rows)?;
            } else {
                for (p, r) in &results {
                    match r {
                        Ok(l) => println!("{}: cm ({} pairs)", display(p), l.len()),
                        Err(e) => println!("{}: not cm ({e})", display(p)),
                    }
                }
            }
            Ok(if results.iter().all(|(_, r)| r.is_ok()) {
                Outcome::Ok
            } else {
                Outcome::Mismatch
            })
        }
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
