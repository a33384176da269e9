//! Instance loading, timing, the parallel alpha driver, and the solve
//! pipeline shared by the CLI subcommands.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;
use vsp_core::alpha::{alpha_pair, alpha_table, non_adjacent_pairs, AlphaError, AlphaTable};
use vsp_core::graph::Graph;
use vsp_core::model::{to_f64, ModelMode, Sense, VspModel};
use vsp_core::solver::{
    brute_force, solve_with_table, SolveError, SolveResult, SolveStatus, SolverConfig, Stopwatch,
    Strategy,
};

use crate::costs::apply_cost_file;
use crate::dimacs::parse_dimacs_col;
use crate::mm::{intersection_graph, parse_matrix_market};
use crate::records::{config_hash, RunRecord};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
    #[error("{path}: {msg}")]
    Parse { path: String, msg: String },
    #[error("infeasible")]
    Infeasible,
    #[error("time limit reached")]
    TimeLimit,
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    /// 2 parse, 3 infeasible, 4 time limit, 5 internal assertion.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Infeasible => 3,
            CliError::TimeLimit => 4,
            CliError::Internal(_) => 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dimacs,
    MatrixMarket,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "dimacs" | "col" => Some(Format::Dimacs),
            "mm" | "mtx" | "matrixmarket" => Some(Format::MatrixMarket),
            _ => None,
        }
    }

    pub fn detect(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()? {
            "col" | "clq" => Some(Format::Dimacs),
            "mtx" | "mm" => Some(Format::MatrixMarket),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Format::Dimacs => "dimacs",
            Format::MatrixMarket => "mm",
        }
    }
}

pub struct WallClock {
    start: Instant,
}

impl WallClock {
    pub fn start() -> Self {
        WallClock { start: Instant::now() }
    }
}

impl Stopwatch for WallClock {
    fn elapsed_secs(&self) -> f64 {
        self.start.elapsed().as_secs_f64()
    }
}

/// Reads a graph instance; `enforce_connected` turns disconnectedness into
/// its own error (the solver requires connectivity, pure measurement does
/// not).
pub fn load_graph(
    path: &Path,
    format: Option<Format>,
    cost_file: Option<&Path>,
    enforce_connected: bool,
) -> Result<(Graph, String), CliError> {
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let text = fs::read_to_string(path)
        .map_err(|err| CliError::Io { path: path.display().to_string(), err })?;
    let format = format
        .or_else(|| Format::detect(path))
        .ok_or_else(|| CliError::Parse {
            path: path.display().to_string(),
            msg: "cannot detect format; pass --format dimacs|mm".into(),
        })?;
    let mut g = match format {
        Format::Dimacs => parse_dimacs_col(&text).map_err(|e| CliError::Parse {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?,
        Format::MatrixMarket => {
            let pattern = parse_matrix_market(&text).map_err(|e| CliError::Parse {
                path: path.display().to_string(),
                msg: e.to_string(),
            })?;
            intersection_graph(&pattern).map_err(|e| CliError::Parse {
                path: path.display().to_string(),
                msg: e.to_string(),
            })?
        }
    };
    if let Some(cp) = cost_file {
        let ct = fs::read_to_string(cp)
            .map_err(|err| CliError::Io { path: cp.display().to_string(), err })?;
        apply_cost_file(&mut g, &ct).map_err(|e| CliError::Parse {
            path: cp.display().to_string(),
            msg: e.to_string(),
        })?;
    }
    if enforce_connected && !g.is_connected() {
        return Err(CliError::Parse {
            path: path.display().to_string(),
            msg: "graph is disconnected".into(),
        });
    }
    Ok((g, name))
}

/// Alpha table with pairs distributed over `jobs` workers; each worker
/// builds its own split network, results merge by pair, so the table is
/// identical to the sequential one.
pub fn alpha_table_jobs(g: &Graph, jobs: usize) -> Result<AlphaTable, AlphaError> {
    if jobs <= 1 {
        return alpha_table(g);
    }
    let pairs = non_adjacent_pairs(g);
    if pairs.is_empty() {
        return Err(AlphaError::CompleteGraph);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|_| AlphaError::CompleteGraph)
        .expect("thread pool construction");
    let entries: Vec<(usize, usize, u32)> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(i, j)| (i, j, alpha_pair(g, i, j).expect("pair list is non-adjacent")))
            .collect()
    });
    Ok(AlphaTable::from_entries(g.vertex_count(), &entries))
}

#[derive(Clone, Debug)]
pub struct SolveArgs {
    pub beta_override: Option<usize>,
    pub cut_alpha_pair: bool,
    pub cut_chain: bool,
    pub cut_subgraph: bool,
    pub time_limit: f64,
    pub seed: u64,
    pub strategy: Strategy,
    pub oracle: bool,
    pub format_name: String,
}

impl Default for SolveArgs {
    fn default() -> Self {
        SolveArgs {
            beta_override: None,
            cut_alpha_pair: true,
            cut_chain: true,
            cut_subgraph: true,
            time_limit: 1800.0,
            seed: 0,
            strategy: Strategy::Fictitious,
            oracle: false,
            format_name: "dimacs".into(),
        }
    }
}

impl SolveArgs {
    pub fn config(&self) -> SolverConfig {
        SolverConfig {
            time_limit_secs: self.time_limit,
            cut_alpha_pair: self.cut_alpha_pair,
            cut_chain: self.cut_chain,
            cut_subgraph: self.cut_subgraph,
            seed: self.seed,
            strategy: self.strategy,
            ..Default::default()
        }
    }

    pub fn hash(&self) -> String {
        config_hash(&[
            ("beta", self.beta_override.map_or("auto".into(), |b| b.to_string())),
            (
                "cuts",
                format!(
                    "alpha_pair={},chain={},subgraph={}",
                    self.cut_alpha_pair, self.cut_chain, self.cut_subgraph
                ),
            ),
            ("time_limit", format!("{}", self.time_limit)),
            ("seed", self.seed.to_string()),
            (
                "strategy",
                match self.strategy {
                    Strategy::Fictitious => "fictitious".into(),
                    Strategy::AbDecomposition => "ab".into(),
                },
            ),
            ("format", self.format_name.clone()),
        ])
    }
}

pub fn status_name(s: SolveStatus) -> &'static str {
    match s {
        SolveStatus::Optimal => "optimal",
        SolveStatus::TimeLimit => "time_limit",
        SolveStatus::Infeasible => "infeasible",
    }
}

/// Full pipeline for one instance: metadata, alpha table, exact solve,
/// optional oracle cross-check, run record.
pub fn run_solve(
    g: &Graph,
    name: &str,
    args: &SolveArgs,
    jobs: usize,
) -> Result<(RunRecord, SolveResult), CliError> {
    let meta = g
        .meta()
        .map_err(|e| CliError::Parse { path: name.into(), msg: e.to_string() })?;
    let beta = args.beta_override.unwrap_or(meta.beta);
    let clock = WallClock::start();

    let alpha = match alpha_table_jobs(g, jobs) {
        Ok(t) => Some(t),
        Err(AlphaError::CompleteGraph) => None,
        Err(e) => return Err(CliError::Internal(e.to_string())),
    };

    let result = match &alpha {
        None => SolveResult {
            status: SolveStatus::Infeasible,
            best: None,
            objective: None,
            bound: 0.0,
            nodes: 0,
            cuts: Default::default(),
            wall_secs: clock.elapsed_secs(),
        },
        Some(at) => solve_with_table(g, beta, &args.config(), &clock, at).map_err(|e| match e {
            SolveError::Assertion(m) => CliError::Internal(m.into()),
            SolveError::Lp(l) => CliError::Internal(l.to_string()),
            other => CliError::Parse { path: name.into(), msg: other.to_string() },
        })?,
    };

    if args.oracle {
        match brute_force(g, beta) {
            Ok(oracle) => {
                let agree = oracle.status == result.status && oracle.objective == result.objective;
                if !agree {
                    return Err(CliError::Internal(format!(
                        "oracle disagreement on {name}: solver {:?}/{:?} vs oracle {:?}/{:?}",
                        result.status, result.objective, oracle.status, oracle.objective
                    )));
                }
            }
            Err(SolveError::TooLarge { n, guard }) => {
                eprintln!("warning: oracle skipped for {name} (n = {n} exceeds guard {guard})");
            }
            Err(e) => return Err(CliError::Internal(e.to_string())),
        }
    }

    let record = RunRecord {
        instance: name.into(),
        n: meta.n,
        e: meta.e,
        d: meta.d,
        beta,
        alpha_min: alpha.as_ref().map(|t| t.alpha_min()),
        objective: result.objective_f64(),
        separator_size: result.separator_size(),
        bound: match result.status {
            SolveStatus::Infeasible => None,
            _ => Some(result.bound),
        },
        nodes: result.nodes,
        cuts_chain: result.cuts.chain,
        cuts_alpha_pair: result.cuts.alpha_pair,
        cuts_subgraph: result.cuts.subgraph,
        wall_secs: result.wall_secs,
        status: status_name(result.status).into(),
        config_hash: args.hash(),
    };
    Ok((record, result))
}

/// LP-style text export of a model (objective, rows, bounds, binaries) for
/// debugging against external solvers.
pub fn export_lp_text(model: &VspModel) -> String {
    let col_name = |c: usize| -> String {
        let (v, side) = model.col_owner(c);
        match side {
            vsp_core::model::Side::A => format!("xa{}", v + 1),
            vsp_core::model::Side::B => format!("xb{}", v + 1),
        }
    };
    let mut out = String::new();
    out.push_str("Maximize\n obj:");
    for c in 0..model.num_cols() {
        let w = to_f64(model.objective[c]);
        if w != 0.0 {
            out.push_str(&format!(" +{} {}", fmt_num(w), col_name(c)));
        }
    }
    out.push_str("\nSubject To\n");
    for (i, row) in model.base_constraints().iter().chain(model.pool().iter()).enumerate() {
        out.push_str(&format!(" r{i}:"));
        for &(c, coef) in row.terms() {
            let w = to_f64(coef);
            if w >= 0.0 {
                out.push_str(&format!(" +{} {}", fmt_num(w), col_name(c)));
            } else {
                out.push_str(&format!(" -{} {}", fmt_num(-w), col_name(c)));
            }
        }
        let op = match row.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        out.push_str(&format!(" {op} {}\n", fmt_num(to_f64(row.rhs))));
    }
    out.push_str("Bounds\n");
    for c in 0..model.num_cols() {
        out.push_str(&format!(
            " {} <= {} <= {}\n",
            fmt_num(to_f64(model.col_lower[c])),
            col_name(c),
            fmt_num(to_f64(model.col_upper[c]))
        ));
    }
    out.push_str("Binaries\n");
    for c in 0..model.num_cols() {
        out.push(' ');
        out.push_str(&col_name(c));
    }
    out.push_str("\nEnd\n");
    let _ = matches!(model.mode, ModelMode::Fictitious);
    out
}

fn fmt_num(v: f64) -> String {
    if v == v.trunc() {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use vsp_core::model::build_full_model;

    #[test]
    fn parallel_alpha_matches_sequential() {
        let g = crate::instances::queen(5, 5);
        let seq = alpha_table(&g).unwrap();
        let par = alpha_table_jobs(&g, 4).unwrap();
        assert_eq!(seq.alpha_min(), par.alpha_min());
        for (i, j, a) in seq.pairs() {
            assert_eq!(par.get(i, j), Some(a));
        }
    }

    #[test]
    fn lp_export_mentions_columns_and_rows() {
        let g = vsp_core::graph::Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let m = build_full_model(&g, 2, 1).unwrap();
        let text = export_lp_text(&m);
        assert!(text.starts_with("Maximize"));
        assert!(text.contains("xa1") && text.contains("xb3"));
        assert!(text.contains("<= 1"));
        assert!(text.contains("Binaries"));
        assert!(text.trim_end().ends_with("End"));
    }

    #[test]
    fn solve_pipeline_on_tiny_graph() {
        let g = vsp_core::graph::Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let args = SolveArgs { oracle: true, ..Default::default() };
        let (rec, res) = run_solve(&g, "p3", &args, 1).unwrap();
        assert_eq!(rec.status, "optimal");
        assert_eq!(rec.objective, Some(2.0));
        assert_eq!(rec.separator_size, Some(1));
        assert_eq!(rec.alpha_min, Some(1));
        assert_eq!(res.status, SolveStatus::Optimal);
        // |C| = n - objective with unit costs
        assert_eq!(rec.separator_size.unwrap() as f64, rec.n as f64 - rec.objective.unwrap());
    }
}
