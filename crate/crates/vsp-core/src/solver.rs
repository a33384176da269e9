//! Exact branch-and-cut for the vertex separator problem, plus the
//! independent brute-force oracle used to verify it.
//!
//! Default strategy: best-first branch-and-bound on the fictitious-vertex
//! model. Each node solves the LP relaxation, runs a bounded cut loop over
//! the enabled families (all cuts are globally valid, so they accumulate in
//! a shared pool), rounds fractional points with a greedy primal heuristic,
//! and branches on the most fractional column. The alternate strategy
//! solves one ab-fixed model per non-adjacent pair, which is where chain
//! cuts apply.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::Zero;

use crate::alpha::{alpha_table, AlphaError, AlphaTable};
use crate::graph::{validate_partition, Cost, Graph, Verdict, VertexPartition};
use crate::lp::{LpError, LpProblem, LpStatus, SimplexEngine};
use crate::model::{
    build_ab_model, build_full_model, separate_alpha_pairs, separate_chain, separate_subgraph,
    subgraph_candidates, to_f64, CutOrigin, IncidenceVector, LinearConstraint, ModelMode, Side,
    SubgraphCandidate, VspModel,
};

/// Elapsed-time source injected by the host (the core has no clock).
pub trait Stopwatch {
    fn elapsed_secs(&self) -> f64;
}

/// Clock that never advances; solves run without a time limit.
pub struct NoClock;

impl Stopwatch for NoClock {
    fn elapsed_secs(&self) -> f64 {
        0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchRule {
    /// Fractional part closest to one half; ties a-side first, then lowest
    /// vertex id.
    MostFractional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Single model with fictitious `a`, `b` (the default).
    Fictitious,
    /// One ab-fixed subproblem per non-adjacent pair.
    AbDecomposition,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub time_limit_secs: f64,
    pub cut_alpha_pair: bool,
    pub cut_chain: bool,
    pub cut_subgraph: bool,
    pub max_rounds_per_node: usize,
    pub max_cuts_per_round: usize,
    pub branch_rule: BranchRule,
    pub strategy: Strategy,
    /// Reserved for randomized strategies; recorded in run fingerprints but
    /// never consulted by the deterministic defaults.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            time_limit_secs: 1800.0,
            cut_alpha_pair: true,
            cut_chain: true,
            cut_subgraph: true,
            max_rounds_per_node: 10,
            max_cuts_per_round: 50,
            branch_rule: BranchRule::MostFractional,
            strategy: Strategy::Fictitious,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    TimeLimit,
    Infeasible,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CutCounts {
    pub chain: u64,
    pub alpha_pair: u64,
    pub subgraph: u64,
}

impl CutCounts {
    pub fn total(&self) -> u64 {
        self.chain + self.alpha_pair + self.subgraph
    }

    fn bump(&mut self, origin: CutOrigin) {
        match origin {
            CutOrigin::Chain => self.chain += 1,
            CutOrigin::AlphaPair => self.alpha_pair += 1,
            CutOrigin::Subgraph => self.subgraph += 1,
            CutOrigin::Base | CutOrigin::Bound => {}
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub best: Option<VertexPartition>,
    /// Cost kept out of the separator (`sum of c_i over A union B`).
    pub objective: Option<Cost>,
    /// Upper bound on the objective; equals it at optimality.
    pub bound: f64,
    pub nodes: u64,
    pub cuts: CutCounts,
    /// Filled from the injected stopwatch.
    pub wall_secs: f64,
}

impl SolveResult {
    pub fn objective_f64(&self) -> Option<f64> {
        self.objective.map(to_f64)
    }

    pub fn separator_size(&self) -> Option<usize> {
        self.best.as_ref().map(|p| p.c.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveError {
    Disconnected,
    BadBeta(usize),
    TooLarge { n: usize, guard: usize },
    Lp(LpError),
    Assertion(&'static str),
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Disconnected => write!(f, "graph must be connected"),
            SolveError::BadBeta(b) => write!(f, "beta = {b} out of range"),
            SolveError::TooLarge { n, guard } => {
                write!(f, "instance too large for this routine (n = {n} > {guard})")
            }
            SolveError::Lp(e) => write!(f, "lp failure: {e}"),
            SolveError::Assertion(m) => write!(f, "internal assertion failed: {m}"),
        }
    }
}

impl From<LpError> for SolveError {
    fn from(e: LpError) -> Self {
        SolveError::Lp(e)
    }
}

const INT_TOL: f64 = 1e-6;
const CUT_VIOL_TOL: f64 = 1e-6;
/// Safety margin when rounding LP bounds to integers for pruning; dwarfs
/// the worst dual-tolerance error at these sizes.
const PRUNE_GUARD: f64 = 1e-4;

#[inline]
fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

fn is_integral(x: &[f64]) -> bool {
    x.iter().all(|&v| v <= INT_TOL || v >= 1.0 - INT_TOL)
}

/// Branching column: fractional part closest to one half; ties resolved by
/// the lowest column index (a-block precedes b-block per the model layout).
pub fn branch_column(x: &[f64]) -> Option<usize> {
    let mut best: Option<(f64, usize)> = None;
    for (j, &v) in x.iter().enumerate() {
        if v <= INT_TOL || v >= 1.0 - INT_TOL {
            continue;
        }
        let score = fabs(v - 0.5);
        match best {
            Some((s, _)) if s <= score => {}
            _ => best = Some((score, j)),
        }
    }
    best.map(|(_, j)| j)
}

/// Rounds an integral-within-tolerance LP point to a 0/1 vector.
fn to_incidence(x: &[f64]) -> IncidenceVector {
    IncidenceVector::new(x.iter().map(|&v| (v >= 0.5) as u8).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeError {
    NotModelFeasible,
}

/// Decodes an integral model point into a partition, rejecting points that
/// violate any base row, pooled cut, or fixed column.
pub fn decode(model: &VspModel, x: &IncidenceVector) -> Result<VertexPartition, DecodeError> {
    for c in 0..model.num_cols() {
        let v = if x.get(c) { 1 } else { 0 };
        if Cost::from_integer(v) > model.col_upper[c] || Cost::from_integer(v) < model.col_lower[c]
        {
            return Err(DecodeError::NotModelFeasible);
        }
    }
    if !model.all_rows_satisfied(x) {
        return Err(DecodeError::NotModelFeasible);
    }
    Ok(model.decode(x))
}

/// Greedy rounding: sort vertices by `max(x_ia, x_ib)` descending and send
/// each to its strictly larger side when that creates no crossing edge and
/// respects the size caps; everything else falls into `C`. Swaps `A` and
/// `B` at the end if `|A| > |B|` (fictitious mode only). `None` when either
/// side ends up empty.
pub fn primal_heuristic(
    model: &VspModel,
    g: &Graph,
    x: &[f64],
    beta: usize,
) -> Option<VertexPartition> {
    let n = g.vertex_count();
    let mut side = vec![0u8; n]; // 0 = C, 1 = A, 2 = B
    let (fixed_a, fixed_b) = match model.mode {
        ModelMode::AbFixed { a, b } => {
            side[a] = 1;
            side[b] = 2;
            (Some(a), Some(b))
        }
        ModelMode::Fictitious => (None, None),
    };
    let mut order: Vec<usize> = (0..n)
        .filter(|&v| Some(v) != fixed_a && Some(v) != fixed_b)
        .collect();
    let key = |v: usize| -> f64 {
        let va = x[model.col(v, Side::A).unwrap()];
        let vb = x[model.col(v, Side::B).unwrap()];
        if va > vb {
            va
        } else {
            vb
        }
    };
    order.sort_by(|&l, &r| key(r).partial_cmp(&key(l)).unwrap_or(Ordering::Equal).then(l.cmp(&r)));

    let mut size_a = fixed_a.map_or(0, |_| 1);
    let mut size_b = fixed_b.map_or(0, |_| 1);
    for &v in &order {
        let va = x[model.col(v, Side::A).unwrap()];
        let vb = x[model.col(v, Side::B).unwrap()];
        let target = if va > vb {
            1
        } else if vb > va {
            2
        } else {
            continue; // ties (including 0/0) stay in C
        };
        let opposite = 3 - target;
        if g.neighbors(v).iter().any(|&w| side[w] == opposite) {
            continue;
        }
        let cap_ok = if target == 1 { size_a < beta } else { size_b < beta };
        if !cap_ok {
            continue;
        }
        side[v] = target;
        if target == 1 {
            size_a += 1;
        } else {
            size_b += 1;
        }
    }
    if size_a == 0 || size_b == 0 {
        return None;
    }
    if matches!(model.mode, ModelMode::Fictitious) && size_a > size_b {
        for s in side.iter_mut() {
            *s = match *s {
                1 => 2,
                2 => 1,
                other => other,
            };
        }
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut c = Vec::new();
    for (v, &s) in side.iter().enumerate() {
        match s {
            1 => a.push(v),
            2 => b.push(v),
            _ => c.push(v),
        }
    }
    let p = VertexPartition::new(a, b, c);
    debug_assert_eq!(validate_partition(g, &p, beta), Ok(Verdict::Feasible));
    Some(p)
}

struct ArenaNode {
    parent: usize,
    fix_col: usize,
    fix_val: u8,
}

struct HeapEntry {
    bound: f64,
    order: u64,
    id: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.order == other.order
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // max bound first, FIFO on ties
        self.bound
            .partial_cmp(&other.bound)
            .unwrap_or(Ordering::Equal)
            .then(other.order.cmp(&self.order))
    }
}

struct Incumbent {
    partition: Option<VertexPartition>,
    objective: Option<Cost>,
}

impl Incumbent {
    fn value_f64(&self) -> Option<f64> {
        self.objective.map(to_f64)
    }

    fn offer(&mut self, g: &Graph, p: VertexPartition) -> bool {
        let obj = p.kept_cost(g);
        if self.objective.map_or(true, |cur| obj > cur) {
            self.objective = Some(obj);
            self.partition = Some(p);
            true
        } else {
            false
        }
    }
}

struct BcStats {
    nodes: u64,
    cuts: CutCounts,
}

enum BcOutcome {
    Done,
    TimedOut,
}

/// Solves the VSP exactly. The graph must be connected; complete graphs
/// report `Infeasible` (no partition with nonempty `A`, `B` exists).
pub fn solve(
    g: &Graph,
    beta: usize,
    cfg: &SolverConfig,
    clock: &dyn Stopwatch,
) -> Result<SolveResult, SolveError> {
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let at = match alpha_table(g) {
        Ok(at) => at,
        Err(AlphaError::CompleteGraph) => {
            return Ok(SolveResult {
                status: SolveStatus::Infeasible,
                best: None,
                objective: None,
                bound: 0.0,
                nodes: 0,
                cuts: CutCounts::default(),
                wall_secs: clock.elapsed_secs(),
            });
        }
        Err(_) => unreachable!("connected graph"),
    };
    solve_with_table(g, beta, cfg, clock, &at)
}

/// Same as [`solve`] with a precomputed alpha table.
pub fn solve_with_table(
    g: &Graph,
    beta: usize,
    cfg: &SolverConfig,
    clock: &dyn Stopwatch,
    at: &AlphaTable,
) -> Result<SolveResult, SolveError> {
    let n = g.vertex_count();
    if beta < 1 || beta > n {
        return Err(SolveError::BadBeta(beta));
    }
    let candidates = if cfg.cut_subgraph {
        subgraph_candidates(g, beta, at)
    } else {
        Vec::new()
    };
    let mut inc = Incumbent { partition: None, objective: None };
    let mut stats = BcStats { nodes: 0, cuts: CutCounts::default() };

    let (outcome, open_bound) = match cfg.strategy {
        Strategy::Fictitious => {
            let mut model = build_full_model(g, beta, at.alpha_min())
                .map_err(|_| SolveError::BadBeta(beta))?;
            branch_and_cut(
                g,
                &mut model,
                at,
                &candidates,
                cfg,
                clock,
                Cost::zero(),
                &mut inc,
                &mut stats,
                true,
            )?
        }
        Strategy::AbDecomposition => {
            let mut timed_out = false;
            let mut open = f64::NEG_INFINITY;
            for (a, b) in crate::alpha::non_adjacent_pairs(g) {
                if clock.elapsed_secs() > cfg.time_limit_secs {
                    timed_out = true;
                    // unexplored pairs keep the trivial bound
                    open = to_f64(g.costs().iter().copied().sum::<Cost>());
                    break;
                }
                let mut model =
                    build_ab_model(g, a, b, beta).map_err(|_| SolveError::BadBeta(beta))?;
                let offset = g.cost(a) + g.cost(b);
                let (out, pair_open) = branch_and_cut(
                    g,
                    &mut model,
                    at,
                    &candidates,
                    cfg,
                    clock,
                    offset,
                    &mut inc,
                    &mut stats,
                    false,
                )?;
                if pair_open > open {
                    open = pair_open;
                }
                if matches!(out, BcOutcome::TimedOut) {
                    timed_out = true;
                    break;
                }
            }
            (
                if timed_out { BcOutcome::TimedOut } else { BcOutcome::Done },
                open,
            )
        }
    };

    let wall = clock.elapsed_secs();
    let result = match (outcome, &inc.partition) {
        (BcOutcome::Done, Some(_)) => SolveResult {
            status: SolveStatus::Optimal,
            bound: inc.value_f64().unwrap(),
            best: inc.partition,
            objective: inc.objective,
            nodes: stats.nodes,
            cuts: stats.cuts,
            wall_secs: wall,
        },
        (BcOutcome::Done, None) => SolveResult {
            status: SolveStatus::Infeasible,
            best: None,
            objective: None,
            bound: 0.0,
            nodes: stats.nodes,
            cuts: stats.cuts,
            wall_secs: wall,
        },
        (BcOutcome::TimedOut, _) => {
            let bound = open_bound.max(inc.value_f64().unwrap_or(f64::NEG_INFINITY));
            SolveResult {
                status: SolveStatus::TimeLimit,
                bound,
                best: inc.partition,
                objective: inc.objective,
                nodes: stats.nodes,
                cuts: stats.cuts,
                wall_secs: wall,
            }
        }
    };
    if let (Some(obj), SolveStatus::Optimal) = (result.objective, result.status) {
        if fabs(result.bound - to_f64(obj)) > 1e-6 {
            return Err(SolveError::Assertion("optimal bound != objective"));
        }
    }
    Ok(result)
}

/// Best-first branch-and-cut over one model. Returns the outcome and the
/// largest global-objective bound left unexplored (`-inf` when exhausted).
#[allow(clippy::too_many_arguments)]
fn branch_and_cut(
    g: &Graph,
    model: &mut VspModel,
    at: &AlphaTable,
    candidates: &[SubgraphCandidate],
    cfg: &SolverConfig,
    clock: &dyn Stopwatch,
    offset: Cost,
    inc: &mut Incumbent,
    stats: &mut BcStats,
    assert_root_bound: bool,
) -> Result<(BcOutcome, f64), SolveError> {
    let offset_f = to_f64(offset);
    let integer_objective = g.integer_costs();
    let ncols = model.num_cols();
    let orig_lo: Vec<f64> = model.col_lower.iter().map(|&c| to_f64(c)).collect();
    let orig_hi: Vec<f64> = model.col_upper.iter().map(|&c| to_f64(c)).collect();

    // structural rows up front; edge rows activate on first violation and
    // then stay, so every reported node bound is the exact full-LP optimum
    let mut lp = LpProblem::new();
    for j in 0..ncols {
        lp.add_col(to_f64(model.objective[j]), orig_lo[j], orig_hi[j]);
    }
    for c in model.eager_rows() {
        let (terms, sense, rhs) = crate::lp::constraint_row(c);
        lp.add_row(terms, sense, rhs);
    }
    let mut engine = SimplexEngine::new(&lp);
    let mut lazy_active = vec![false; model.lazy_rows().len()];
    let mut pool_rows_in_engine = 0usize;

    let mut arena: Vec<ArenaNode> = vec![ArenaNode {
        parent: usize::MAX,
        fix_col: usize::MAX,
        fix_val: 0,
    }];
    let mut heap = alloc::collections::BinaryHeap::new();
    heap.push(HeapEntry { bound: f64::INFINITY, order: 0, id: 0 });
    let mut next_order = 1u64;
    let mut first_node = true;

    // prune test in global objective space
    let should_prune = |bound_global: f64, inc: &Incumbent| -> bool {
        match inc.value_f64() {
            None => false,
            Some(v) => {
                if integer_objective {
                    ((bound_global + PRUNE_GUARD) as i64 as f64) <= v
                } else {
                    bound_global <= v + 1e-6
                }
            }
        }
    };

    while let Some(entry) = heap.pop() {
        if clock.elapsed_secs() > cfg.time_limit_secs {
            let open = heap
                .iter()
                .map(|e| e.bound)
                .fold(entry.bound, f64::max)
                .min(1e18);
            // bounds are in model space; shift to global
            let open_global = if open.is_finite() {
                open + offset_f
            } else {
                to_f64(g.costs().iter().copied().sum::<Cost>())
            };
            return Ok((BcOutcome::TimedOut, open_global));
        }
        if should_prune(entry.bound + offset_f, inc) {
            continue;
        }

        stats.nodes += 1;

        // restore this node's bounds
        for c in 0..ncols {
            engine.set_col_bounds(c, orig_lo[c], orig_hi[c]);
        }
        let mut walk = entry.id;
        while walk != usize::MAX {
            let node = &arena[walk];
            if node.fix_col != usize::MAX {
                let v = node.fix_val as f64;
                engine.set_col_bounds(node.fix_col, v, v);
            }
            walk = node.parent;
        }
        // sync pooled cuts added while processing other nodes
        while pool_rows_in_engine < model.pool().len() {
            engine.add_constraint(&model.pool().as_slice()[pool_rows_in_engine]);
            pool_rows_in_engine += 1;
        }

        if solve_with_lazy(&mut engine, model, &mut lazy_active)? == LpStatus::Infeasible {
            continue;
        }
        let mut value = engine.objective_value();

        if first_node && assert_root_bound {
            if let Some(am) = model.alpha_min {
                let cap = to_f64(
                    g.costs().iter().copied().sum::<Cost>()
                ) - am as f64
                    * g.costs()
                        .iter()
                        .map(|&c| to_f64(c))
                        .fold(f64::INFINITY, f64::min)
                        .min(1.0);
                // with unit costs this is exactly n - alpha_min
                if g.unit_costs() && value > (g.vertex_count() as f64 - am as f64) + 1e-6 {
                    return Err(SolveError::Assertion("root bound exceeds n - alpha_min"));
                }
                let _ = cap;
            }
            first_node = false;
        }

        // cut loop
        let mut rounds = 0usize;
        let mut lp_infeasible = false;
        loop {
            let x = engine.structural_values().to_vec();
            if is_integral(&x) || rounds >= cfg.max_rounds_per_node {
                break;
            }
            if clock.elapsed_secs() > cfg.time_limit_secs {
                break; // handled at the next pop
            }
            let mut found: Vec<LinearConstraint> = Vec::new();
            if cfg.cut_alpha_pair {
                found.extend(separate_alpha_pairs(
                    model,
                    at,
                    &x,
                    cfg.max_cuts_per_round,
                    CUT_VIOL_TOL,
                ));
            }
            if cfg.cut_chain && matches!(model.mode, ModelMode::AbFixed { .. }) {
                if let Ok(Some(c)) = separate_chain(model, g, &x, CUT_VIOL_TOL) {
                    found.push(c);
                }
            }
            if cfg.cut_subgraph {
                found.extend(separate_subgraph(
                    model,
                    candidates,
                    &x,
                    cfg.max_cuts_per_round,
                    CUT_VIOL_TOL,
                ));
            }
            if found.is_empty() {
                break;
            }
            // strongest cuts across families, round budget applied once
            found.sort_by(|l, r| {
                r.violation(&x)
                    .partial_cmp(&l.violation(&x))
                    .unwrap_or(Ordering::Equal)
                    .then(l.origin.cmp(&r.origin))
                    .then(l.signature().cmp(&r.signature()))
            });
            found.truncate(cfg.max_cuts_per_round);
            let mut added = 0usize;
            for c in found {
                let origin = c.origin;
                if model.pool_mut().insert(c.clone()) {
                    engine.add_constraint(&c);
                    pool_rows_in_engine += 1;
                    stats.cuts.bump(origin);
                    added += 1;
                }
            }
            if added == 0 {
                break;
            }
            if solve_with_lazy(&mut engine, model, &mut lazy_active)? == LpStatus::Infeasible {
                lp_infeasible = true;
                break;
            }
            let new_value = engine.objective_value();
            debug_assert!(
                new_value <= value + 1e-6,
                "adding valid cuts increased the LP value"
            );
            value = new_value;
            rounds += 1;
        }
        if lp_infeasible {
            continue;
        }

        let bound_global = value + offset_f;
        if should_prune(bound_global, inc) {
            continue;
        }

        let x = engine.structural_values().to_vec();
        if is_integral(&x) {
            let xi = to_incidence(&x);
            let p = decode(model, &xi)
                .map_err(|_| SolveError::Assertion("integral LP point not model-feasible"))?;
            if validate_partition(g, &p, model.beta) != Ok(Verdict::Feasible) {
                return Err(SolveError::Assertion("decoded partition infeasible"));
            }
            if inc.offer(g, p) {
                let global_ub = heap
                    .iter()
                    .map(|e| e.bound + offset_f)
                    .fold(bound_global, f64::max);
                if inc.value_f64().unwrap() > global_ub + 1e-6 {
                    return Err(SolveError::Assertion("incumbent above global bound"));
                }
            }
            continue;
        }

        if let Some(p) = primal_heuristic(model, g, &x, model.beta) {
            inc.offer(g, p);
            // re-test the node with the possibly improved incumbent
            if should_prune(bound_global, inc) {
                continue;
            }
        }

        let Some(col) = branch_column(&x) else {
            return Err(SolveError::Assertion("fractional point without branch column"));
        };
        for val in [0u8, 1u8] {
            arena.push(ArenaNode { parent: entry.id, fix_col: col, fix_val: val });
            heap.push(HeapEntry { bound: value, order: next_order, id: arena.len() - 1 });
            next_order += 1;
        }
    }

    Ok((BcOutcome::Done, f64::NEG_INFINITY))
}

/// Solves the LP, pulling in any violated edge row until the point is
/// feasible for the whole model; the result is the exact full relaxation.
fn solve_with_lazy(
    engine: &mut SimplexEngine,
    model: &VspModel,
    lazy_active: &mut [bool],
) -> Result<LpStatus, LpError> {
    const ACTIVATIONS_PER_ROUND: usize = 200;
    loop {
        if engine.solve()? == LpStatus::Infeasible {
            return Ok(LpStatus::Infeasible);
        }
        let x = engine.structural_values();
        let lazy = model.lazy_rows();
        let mut violated: Vec<(f64, usize)> = Vec::new();
        for (idx, row) in lazy.iter().enumerate() {
            if lazy_active[idx] {
                continue;
            }
            let v = row.violation(x);
            if v > crate::lp::FEAS_TOL {
                violated.push((v, idx));
            }
        }
        if violated.is_empty() {
            return Ok(LpStatus::Optimal);
        }
        violated.sort_by(|l, r| {
            r.0.partial_cmp(&l.0)
                .unwrap_or(Ordering::Equal)
                .then(l.1.cmp(&r.1))
        });
        for &(_, idx) in violated.iter().take(ACTIVATIONS_PER_ROUND) {
            engine.add_constraint(&lazy[idx]);
            lazy_active[idx] = true;
        }
    }
}

/// Verification oracle: enumerates candidate separators `C` in increasing
/// cost order and, for each, checks whether the components of `G - C` pack
/// into two nonempty groups of size at most `beta`. Guarded to `n <= 22`.
/// Completely independent of the LP path.
pub fn brute_force(g: &Graph, beta: usize) -> Result<SolveResult, SolveError> {
    const GUARD: usize = 22;
    let n = g.vertex_count();
    if n > GUARD {
        return Err(SolveError::TooLarge { n, guard: GUARD });
    }
    if beta < 1 || beta > n {
        return Err(SolveError::BadBeta(beta));
    }
    let mut examined = 0u64;

    let try_c = |mask: u32, examined: &mut u64| -> Option<VertexPartition> {
        *examined += 1;
        let removed: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let comps = g.components_without(&removed);
        if comps.len() < 2 {
            return None;
        }
        pack_components(&comps, beta).map(|(a, b)| {
            let c = (0..n).filter(|&v| removed[v]).collect();
            VertexPartition::new(a, b, c)
        })
    };

    let best = if g.unit_costs() {
        // increasing cardinality, first hit is optimal
        let mut found = None;
        'sizes: for k in 0..n {
            let mut subset: Vec<usize> = (0..k).collect();
            loop {
                let mask = subset.iter().fold(0u32, |m, &v| m | 1 << v);
                if let Some(p) = try_c(mask, &mut examined) {
                    found = Some(p);
                    break 'sizes;
                }
                // next k-combination
                let mut i = k;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if subset[i] != i + n - k {
                        subset[i] += 1;
                        for j in i + 1..k {
                            subset[j] = subset[j - 1] + 1;
                        }
                        break;
                    }
                    if i == 0 {
                        subset.clear();
                        break;
                    }
                }
                if subset.len() != k || (k == 0 && mask == 0) {
                    break;
                }
            }
        }
        found
    } else {
        // general costs: full sweep keeping the cheapest feasible C
        let mut best: Option<(Cost, VertexPartition)> = None;
        for mask in 0..(1u32 << n) {
            let cost: Cost = (0..n)
                .filter(|&v| mask >> v & 1 == 1)
                .map(|v| g.cost(v))
                .sum();
            if let Some((bc, _)) = &best {
                if cost >= *bc {
                    continue;
                }
            }
            if let Some(p) = try_c(mask, &mut examined) {
                best = Some((cost, p));
            }
        }
        best.map(|(_, p)| p)
    };

    Ok(match best {
        Some(p) => {
            debug_assert_eq!(validate_partition(g, &p, beta), Ok(Verdict::Feasible));
            let obj = p.kept_cost(g);
            SolveResult {
                status: SolveStatus::Optimal,
                bound: to_f64(obj),
                objective: Some(obj),
                best: Some(p),
                nodes: examined,
                cuts: CutCounts::default(),
                wall_secs: 0.0,
            }
        }
        None => SolveResult {
            status: SolveStatus::Infeasible,
            best: None,
            objective: None,
            bound: 0.0,
            nodes: examined,
            cuts: CutCounts::default(),
            wall_secs: 0.0,
        },
    })
}

/// Splits component vertex sets into two groups with sizes at most `beta`
/// (both nonempty) by subset-sum reachability with parent tracking.
fn pack_components(comps: &[Vec<usize>], beta: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let total: usize = comps.iter().map(|c| c.len()).sum();
    if total > 2 * beta || comps.len() < 2 {
        return None;
    }
    // reachable[s] = Some(index of last component achieving sum s)
    let mut reach: Vec<Option<usize>> = vec![None; total + 1];
    let mut reach_at = vec![usize::MAX; total + 1]; // step when s became reachable
    reach[0] = Some(usize::MAX);
    reach_at[0] = 0;
    for (idx, comp) in comps.iter().enumerate() {
        let sz = comp.len();
        for s in (sz..=total).rev() {
            if reach[s].is_none() && reach[s - sz].is_some() && reach_at[s - sz] <= idx {
                reach[s] = Some(idx);
                reach_at[s] = idx + 1;
            }
        }
    }
    let lo = total.saturating_sub(beta).max(1);
    let hi = beta.min(total - 1);
    let mut pick = None;
    for s in lo..=hi {
        if reach[s].is_some() {
            pick = Some(s);
            break;
        }
    }
    let mut s = pick?;
    let mut in_a = vec![false; comps.len()];
    while s > 0 {
        let idx = reach[s].expect("reachable sums have parents");
        in_a[idx] = true;
        s -= comps[idx].len();
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (idx, comp) in comps.iter().enumerate() {
        if in_a[idx] {
            a.extend_from_slice(comp);
        } else {
            b.extend_from_slice(comp);
        }
    }
    Some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::default_beta;

    fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn path3_solves_to_one_separator_vertex() {
        let g = path(3);
        let r = solve(&g, 2, &SolverConfig::default(), &NoClock).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_eq!(r.objective, Some(Cost::from_integer(2)));
        assert_eq!(r.separator_size(), Some(1));
        assert_eq!(r.best.unwrap().c, vec![1]);
    }

    #[test]
    fn triangle_is_infeasible_everywhere() {
        let g = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let r = solve(&g, 2, &SolverConfig::default(), &NoClock).unwrap();
        assert_eq!(r.status, SolveStatus::Infeasible);
        let o = brute_force(&g, 2).unwrap();
        assert_eq!(o.status, SolveStatus::Infeasible);
    }

    #[test]
    fn six_cycle_needs_two() {
        let g = cycle(6);
        let o = brute_force(&g, 2).unwrap();
        assert_eq!(o.status, SolveStatus::Optimal);
        assert_eq!(o.separator_size(), Some(2));
        let r = solve(&g, 2, &SolverConfig::default(), &NoClock).unwrap();
        assert_eq!(r.status, SolveStatus::Optimal);
        assert_eq!(r.objective, o.objective);
    }

    #[test]
    fn brute_force_guard() {
        let g = path(3);
        assert!(matches!(
            brute_force(&g, 0),
            Err(SolveError::BadBeta(0))
        ));
        let big = path(23);
        assert!(matches!(
            brute_force(&big, 5),
            Err(SolveError::TooLarge { n: 23, .. })
        ));
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            solve(&g, 2, &SolverConfig::default(), &NoClock),
            Err(SolveError::Disconnected)
        ));
    }

    #[test]
    fn decode_rejects_all_zero() {
        let g = path(3);
        let m = build_full_model(&g, 2, 1).unwrap();
        let x = IncidenceVector::zeros(6);
        assert_eq!(decode(&m, &x), Err(DecodeError::NotModelFeasible));
    }

    #[test]
    fn decode_round_trips_oracle_optimum() {
        let g = cycle(6);
        let o = brute_force(&g, 2).unwrap();
        let p = o.best.unwrap();
        let m = build_full_model(&g, 2, 2).unwrap();
        // the model's symmetry bound wants |A| <= |B|; mirror if needed
        let p = if p.a.len() > p.b.len() {
            VertexPartition::new(p.b.clone(), p.a.clone(), p.c.clone())
        } else {
            p
        };
        let x = m.encode(&p).unwrap();
        assert_eq!(decode(&m, &x).unwrap(), p);
    }

    #[test]
    fn heuristic_contracts() {
        let g = path(4);
        let m = build_full_model(&g, 2, 1).unwrap();
        // integral feasible point decodes to itself
        let p = VertexPartition::new(vec![0], vec![3], vec![1, 2]);
        let x = m.encode(&p).unwrap().to_f64();
        assert_eq!(primal_heuristic(&m, &g, &x, 2), Some(p));
        // all-zero point has no sides
        assert_eq!(primal_heuristic(&m, &g, &vec![0.0; 8], 2), None);
    }

    #[test]
    fn branch_column_rule() {
        assert_eq!(branch_column(&[0.0, 1.0]), None);
        assert_eq!(branch_column(&[0.0, 0.5, 1.0]), Some(1));
        assert_eq!(branch_column(&[0.3, 0.45]), Some(1));
        assert_eq!(branch_column(&[0.45, 0.55]), Some(0)); // tie: lowest column
    }

    #[test]
    fn solver_matches_oracle_on_small_batch() {
        // a few structured graphs at two betas each
        let graphs = [
            path(5),
            path(6),
            cycle(5),
            cycle(7),
            Graph::new(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap(),
            Graph::new(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6), (6, 4)])
                .unwrap(),
        ];
        for g in &graphs {
            for beta in [default_beta(g.vertex_count()), g.vertex_count() - 1] {
                let o = brute_force(g, beta).unwrap();
                let r = solve(g, beta, &SolverConfig::default(), &NoClock).unwrap();
                assert_eq!(r.status, o.status, "status diverged");
                assert_eq!(r.objective, o.objective, "objective diverged");
            }
        }
    }

    #[test]
    fn ab_decomposition_agrees() {
        let cfg = SolverConfig { strategy: Strategy::AbDecomposition, ..Default::default() };
        for g in [path(5), cycle(6)] {
            let o = brute_force(&g, default_beta(g.vertex_count())).unwrap();
            let r = solve(&g, default_beta(g.vertex_count()), &cfg, &NoClock).unwrap();
            assert_eq!(r.status, SolveStatus::Optimal);
            assert_eq!(r.objective, o.objective);
        }
    }

    #[test]
    fn weighted_costs_respected() {
        // star-ish graph where the cheap separator is not the small one
        let mut g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        g.set_costs(
            [5, 1, 1, 1, 5]
                .iter()
                .map(|&c| Cost::from_integer(c))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let o = brute_force(&g, 3).unwrap();
        let r = solve(&g, 3, &SolverConfig::default(), &NoClock).unwrap();
        assert_eq!(r.objective, o.objective);
    }

    #[test]
    fn cuts_off_matches_cuts_on() {
        let g = cycle(7);
        let on = solve(&g, 4, &SolverConfig::default(), &NoClock).unwrap();
        let off = SolverConfig {
            cut_alpha_pair: false,
            cut_chain: false,
            cut_subgraph: false,
            ..Default::default()
        };
        let r = solve(&g, 4, &off, &NoClock).unwrap();
        assert_eq!(r.objective, on.objective);
        assert_eq!(r.cuts.total(), 0);
    }

    struct TickClock(core::cell::Cell<f64>);
    impl Stopwatch for TickClock {
        fn elapsed_secs(&self) -> f64 {
            let v = self.0.get();
            self.0.set(v + 1.0);
            v
        }
    }

    #[test]
    fn time_limit_reports_best_and_bound() {
        let g = cycle(9);
        let cfg = SolverConfig { time_limit_secs: 0.5, ..Default::default() };
        let clock = TickClock(core::cell::Cell::new(0.0));
        let r = solve(&g, 6, &cfg, &clock).unwrap();
        assert_eq!(r.status, SolveStatus::TimeLimit);
        if let Some(obj) = r.objective_f64() {
            assert!(r.bound >= obj - 1e-6);
        }
    }

    #[test]
    fn relabeling_invariance() {
        let g = Graph::new(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (1, 5)])
            .unwrap();
        let perm = [3, 0, 6, 2, 5, 1, 4];
        let h = g.permuted(&perm);
        let rg = solve(&g, 4, &SolverConfig::default(), &NoClock).unwrap();
        let rh = solve(&h, 4, &SolverConfig::default(), &NoClock).unwrap();
        assert_eq!(rg.objective, rh.objective);
    }
}
