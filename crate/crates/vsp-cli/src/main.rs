//! `vsp`: exact vertex separators from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vsp_cli::bench::{parse_manifest, run_bench};
use vsp_cli::dimacs::write_dimacs_col;
use vsp_cli::instances;
use vsp_cli::records::{RunRecord, CSV_HEADER};
use vsp_cli::report::verify_polytope;
use vsp_cli::run::{
    alpha_table_jobs, export_lp_text, load_graph, run_solve, CliError, Format, SolveArgs,
};
use vsp_core::graph::default_beta;
use vsp_core::model::build_full_model;
use vsp_core::solver::{SolveStatus, Strategy};

#[derive(Parser)]
#[command(
    name = "vsp",
    about = "Exact vertex separator toolkit: alpha tables, branch-and-cut solves, polytope checks, benchmarks",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Instance file (.col or .mtx)
    file: PathBuf,
    /// Input format: dimacs | mm (default: by extension)
    #[arg(long)]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Vertex-disjoint path counts for all non-adjacent pairs plus alpha_min
    Alpha {
        #[command(flatten)]
        input: InputArgs,
        /// Output style: csv | json
        #[arg(long, default_value = "csv")]
        output: String,
        /// Worker threads for the pair loop
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Solve the separator problem exactly by branch-and-cut
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Balance bound: auto (= floor(2n/3)) or an integer
        #[arg(long, default_value = "auto")]
        beta: String,
        /// Cut families: all | none | comma list of alpha_pair,chain,subgraph
        #[arg(long, default_value = "all")]
        cuts: String,
        /// Time limit in seconds
        #[arg(long, default_value_t = 1800.0)]
        time_limit: f64,
        /// Cross-check against the brute-force oracle (n <= 22)
        #[arg(long)]
        oracle: bool,
        /// Random seed recorded in the config hash
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output style: json | csv
        #[arg(long, default_value = "json")]
        output: String,
        /// Search strategy: fictitious | ab
        #[arg(long, default_value = "fictitious")]
        strategy: String,
        /// Vertex-cost side file (lines: 1-based id, decimal cost)
        #[arg(long)]
        costs: Option<PathBuf>,
        /// Write the root model in LP text format to this path
        #[arg(long)]
        export_lp: Option<PathBuf>,
    },
    /// Verify the polyhedral claims by exhaustive enumeration (small n)
    VerifyPolytope {
        #[command(flatten)]
        input: InputArgs,
        /// First pinned vertex (1-based); with --b limits to one pair
        #[arg(long)]
        a: Option<usize>,
        /// Second pinned vertex (1-based)
        #[arg(long)]
        b: Option<usize>,
        #[arg(long, default_value = "auto")]
        beta: String,
        /// Emit the machine-readable JSON report instead of the table
        #[arg(long)]
        json: bool,
    },
    /// Run a manifest of instances and print records plus a mean row
    Bench {
        /// Manifest: one `path [format] [beta]` per line
        manifest: PathBuf,
        /// Parallel instances (each solve stays single-threaded)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Only compute metadata and alpha_min
        #[arg(long)]
        alpha_only: bool,
        #[arg(long, default_value = "csv")]
        output: String,
        #[arg(long, default_value_t = 1800.0)]
        time_limit: f64,
        #[arg(long, default_value = "all")]
        cuts: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit a generated instance as a DIMACS .col file
    Generate {
        #[command(subcommand)]
        family: GenCmd,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Mycielski tower member k (k = 3 is the 11-vertex instance)
    Myciel {
        k: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Queens graph on an r x c board
    Queen {
        r: usize,
        c: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Connected random graph (spanning tree + density-tuned extras)
    Random {
        n: usize,
        density: f64,
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn parse_format(input: &InputArgs) -> Result<Option<Format>, CliError> {
    match &input.format {
        None => Ok(None),
        Some(s) => Format::parse(s).map(Some).ok_or_else(|| CliError::Parse {
            path: input.file.display().to_string(),
            msg: format!("unknown format `{s}`"),
        }),
    }
}

fn parse_beta(spec: &str, n: usize, path: &str) -> Result<usize, CliError> {
    if spec == "auto" {
        return Ok(default_beta(n));
    }
    spec.parse::<usize>().map_err(|_| CliError::Parse {
        path: path.into(),
        msg: format!("bad beta `{spec}` (expected `auto` or an integer)"),
    })
}

fn parse_cuts(spec: &str, args: &mut SolveArgs, path: &str) -> Result<(), CliError> {
    args.cut_alpha_pair = false;
    args.cut_chain = false;
    args.cut_subgraph = false;
    match spec {
        "none" => Ok(()),
        "all" => {
            args.cut_alpha_pair = true;
            args.cut_chain = true;
            args.cut_subgraph = true;
            Ok(())
        }
        list => {
            for tok in list.split(',') {
                match tok.trim() {
                    "alpha_pair" => args.cut_alpha_pair = true,
                    "chain" => args.cut_chain = true,
                    "subgraph" => args.cut_subgraph = true,
                    other => {
                        return Err(CliError::Parse {
                            path: path.into(),
                            msg: format!("unknown cut family `{other}`"),
                        })
                    }
                }
            }
            Ok(())
        }
    }
}

fn parse_strategy(spec: &str, path: &str) -> Result<Strategy, CliError> {
    match spec {
        "fictitious" => Ok(Strategy::Fictitious),
        "ab" | "ab-decomposition" => Ok(Strategy::AbDecomposition),
        other => Err(CliError::Parse {
            path: path.into(),
            msg: format!("unknown strategy `{other}`"),
        }),
    }
}

fn print_records(records: &[RunRecord], output: &str) {
    if output == "csv" {
        println!("{CSV_HEADER}");
        for r in records {
            println!("{}", r.csv_row());
        }
    } else {
        for r in records {
            println!("{}", r.json_line());
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.cmd {
        Cmd::Alpha { input, output, jobs } => {
            let fmt = parse_format(&input)?;
            let (g, _name) = load_graph(&input.file, fmt, None, false)?;
            let table = alpha_table_jobs(&g, jobs).map_err(|e| CliError::Parse {
                path: input.file.display().to_string(),
                msg: e.to_string(),
            })?;
            if output == "json" {
                let pairs: Vec<serde_json::Value> = table
                    .pairs()
                    .map(|(i, j, a)| {
                        serde_json::json!({"i": i + 1, "j": j + 1, "alpha": a})
                    })
                    .collect();
                let doc = serde_json::json!({
                    "pairs": pairs,
                    "alpha_min": table.alpha_min(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                println!("i,j,alpha");
                for (i, j, a) in table.pairs() {
                    println!("{},{},{}", i + 1, j + 1, a);
                }
                println!("alpha_min,{}", table.alpha_min());
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Solve {
            input,
            beta,
            cuts,
            time_limit,
            oracle,
            seed,
            output,
            strategy,
            costs,
            export_lp,
        } => {
            let path = input.file.display().to_string();
            let fmt = parse_format(&input)?;
            let (g, name) = load_graph(&input.file, fmt, costs.as_deref(), true)?;
            let mut args = SolveArgs {
                time_limit,
                seed,
                oracle,
                strategy: parse_strategy(&strategy, &path)?,
                format_name: fmt
                    .or_else(|| Format::detect(&input.file))
                    .map(|f| f.name().to_string())
                    .unwrap_or_else(|| "dimacs".into()),
                ..Default::default()
            };
            let beta_val = parse_beta(&beta, g.vertex_count(), &path)?;
            if beta != "auto" {
                args.beta_override = Some(beta_val);
            }
            parse_cuts(&cuts, &mut args, &path)?;

            if let Some(lp_path) = &export_lp {
                // root model export, before any cuts
                let at = alpha_table_jobs(&g, 1).map_err(|e| CliError::Parse {
                    path: path.clone(),
                    msg: e.to_string(),
                })?;
                let model = build_full_model(&g, beta_val, at.alpha_min())
                    .map_err(|e| CliError::Parse { path: path.clone(), msg: e.to_string() })?;
                std::fs::write(lp_path, export_lp_text(&model)).map_err(|err| CliError::Io {
                    path: lp_path.display().to_string(),
                    err,
                })?;
            }

            let (record, result) = run_solve(&g, &name, &args, 1)?;
            print_records(std::slice::from_ref(&record), &output);
            Ok(match result.status {
                SolveStatus::Optimal => ExitCode::SUCCESS,
                SolveStatus::Infeasible => ExitCode::from(3),
                SolveStatus::TimeLimit => ExitCode::from(4),
            })
        }

        Cmd::VerifyPolytope { input, a, b, beta, json } => {
            let path = input.file.display().to_string();
            let fmt = parse_format(&input)?;
            let (g, name) = load_graph(&input.file, fmt, None, true)?;
            let beta_val = parse_beta(&beta, g.vertex_count(), &path)?;
            let pair = match (a, b) {
                (Some(a), Some(b)) => {
                    if a < 1 || b < 1 {
                        return Err(CliError::Parse {
                            path,
                            msg: "vertex ids are 1-based".into(),
                        });
                    }
                    Some((a - 1, b - 1))
                }
                (None, None) => None,
                _ => {
                    return Err(CliError::Parse {
                        path,
                        msg: "--a and --b must be given together".into(),
                    })
                }
            };
            let report = verify_polytope(&g, &name, pair, beta_val)?;
            if json {
                println!("{}", report.json());
            } else {
                print!("{}", report.table());
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(5)
            })
        }

        Cmd::Bench { manifest, jobs, alpha_only, output, time_limit, cuts, seed } => {
            let text = std::fs::read_to_string(&manifest).map_err(|err| CliError::Io {
                path: manifest.display().to_string(),
                err,
            })?;
            let base = manifest
                .parent()
                .map(|p| p.to_path_buf())
                .unwrap_or_else(|| PathBuf::from("."));
            let entries = parse_manifest(&text, &base);
            let mut args = SolveArgs { time_limit, seed, ..Default::default() };
            parse_cuts(&cuts, &mut args, &manifest.display().to_string())?;
            let records = run_bench(&entries, &args, jobs, alpha_only);
            print_records(&records, &output);
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Generate { family } => {
            let (g, name, out) = match family {
                GenCmd::Myciel { k, out } => (instances::mycielski(k), format!("myciel{k}"), out),
                GenCmd::Queen { r, c, out } => (instances::queen(r, c), format!("queen{r}_{c}"), out),
                GenCmd::Random { n, density, seed, out } => (
                    instances::random_connected(n, density, seed),
                    format!("random{n}_d{density}_s{seed}"),
                    out,
                ),
            };
            let text = write_dimacs_col(&g, &name);
            match out {
                Some(p) => std::fs::write(&p, text).map_err(|err| CliError::Io {
                    path: p.display().to_string(),
                    err,
                })?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
