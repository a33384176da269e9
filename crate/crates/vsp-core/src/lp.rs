//! Bounded-variable primal simplex for the node relaxations.
//!
//! Revised simplex with a dense explicit basis inverse, sparse columns, a
//! composite phase 1 (basic variables may start outside their bounds; the
//! objective is total bound violation until it reaches zero), Dantzig
//! pricing with Bland's rule engaged after a degenerate streak, and
//! refactorization every fixed number of pivots. The engine is persistent:
//! rows can be appended and column bounds changed between solves, which is
//! what keeps branch-and-cut nodes warm.
//!
//! All bounds are finite. Row senses are folded into finite slack bounds
//! computed from the original column boxes, so later bound tightenings
//! never invalidate a row.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{to_f64, LinearConstraint, Sense, VspModel};

pub const FEAS_TOL: f64 = 1e-7;
pub const COST_TOL: f64 = 1e-7;
const RATIO_EPS: f64 = 1e-9;
const DEGEN_EPS: f64 = 1e-9;
const PIVOT_EPS: f64 = 1e-10;
const REFACTOR_EVERY: usize = 50;

#[inline]
fn fabs(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        x
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpError {
    /// Pivot limit exceeded after the anti-cycling fallback.
    IterationLimit,
    /// Basis could not be factorized even after a reset.
    Singular,
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::IterationLimit => write!(f, "simplex iteration limit exceeded"),
            LpError::Singular => write!(f, "basis matrix is singular"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
}

/// A bounded-variable LP: maximize `obj . x` subject to rows and boxes.
#[derive(Clone, Debug, Default)]
pub struct LpProblem {
    obj: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    rows: Vec<(Vec<(usize, f64)>, Sense, f64)>,
}

impl LpProblem {
    pub fn new() -> Self {
        LpProblem::default()
    }

    pub fn add_col(&mut self, obj: f64, lo: f64, hi: f64) -> usize {
        assert!(lo.is_finite() && hi.is_finite());
        self.obj.push(obj);
        self.lo.push(lo);
        self.hi.push(hi);
        self.obj.len() - 1
    }

    pub fn set_col_bounds(&mut self, j: usize, lo: f64, hi: f64) {
        self.lo[j] = lo;
        self.hi[j] = hi;
    }

    pub fn set_col_obj(&mut self, j: usize, obj: f64) {
        self.obj[j] = obj;
    }

    pub fn add_row(&mut self, terms: Vec<(usize, f64)>, sense: Sense, rhs: f64) {
        debug_assert!(terms.iter().all(|&(j, _)| j < self.obj.len()));
        self.rows.push((terms, sense, rhs));
    }

    pub fn num_cols(&self) -> usize {
        self.obj.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// LP relaxation of a separator model: its columns, bounds, objective
    /// and base rows (the cut pool is appended separately by the solver).
    pub fn relaxation_of(model: &VspModel) -> LpProblem {
        let mut p = LpProblem::new();
        for j in 0..model.num_cols() {
            p.add_col(
                to_f64(model.objective[j]),
                to_f64(model.col_lower[j]),
                to_f64(model.col_upper[j]),
            );
        }
        for c in model.base_constraints() {
            let (terms, sense, rhs) = constraint_row(c);
            p.add_row(terms, sense, rhs);
        }
        p
    }
}

/// Converts an exact constraint to an f64 row (the single LP boundary).
pub fn constraint_row(c: &LinearConstraint) -> (Vec<(usize, f64)>, Sense, f64) {
    let terms = c.terms().iter().map(|&(j, v)| (j, to_f64(v))).collect();
    (terms, c.sense, to_f64(c.rhs))
}

/// Basis snapshot for warm starts: per-variable state plus the basic
/// variable of each row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpBasis {
    states: Vec<u8>, // 0 = at lower, 1 = at upper, 2 = basic
    basic: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: f64,
    pub x: Vec<f64>,
    pub basis: LpBasis,
}

/// One-shot solve with an optional warm-start basis.
pub fn solve_lp(p: &LpProblem, warm: Option<&LpBasis>) -> Result<LpSolution, LpError> {
    let mut engine = SimplexEngine::new(p);
    if let Some(b) = warm {
        engine.load_basis(b);
    }
    let status = engine.solve()?;
    Ok(LpSolution {
        status,
        value: engine.objective_value(),
        x: engine.structural_values().to_vec(),
        basis: engine.snapshot(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum VarState {
    Basic(u32),
    AtLower,
    AtUpper,
}

/// Persistent simplex engine; see the module docs.
pub struct SimplexEngine {
    ncols: usize,
    /// Sparse structural columns: (row, coefficient).
    cols: Vec<Vec<(u32, f64)>>,
    obj: Vec<f64>,
    /// Current bounds for all variables (structural then slack).
    lo: Vec<f64>,
    hi: Vec<f64>,
    /// Original structural boxes; slack bounds derive from these so that
    /// later tightenings stay compatible.
    orig_lo: Vec<f64>,
    orig_hi: Vec<f64>,
    rhs: Vec<f64>,
    state: Vec<VarState>,
    basic: Vec<u32>,
    binv: Vec<f64>, // m x m row-major
    x: Vec<f64>,
    dirty: bool,
    pivots_since_refactor: usize,
    /// Pivots plus bound flips performed by the last `solve`.
    pub last_iterations: u64,
}

impl SimplexEngine {
    pub fn new(p: &LpProblem) -> SimplexEngine {
        let ncols = p.num_cols();
        let mut e = SimplexEngine {
            ncols,
            cols: vec![Vec::new(); ncols],
            obj: p.obj.clone(),
            lo: p.lo.clone(),
            hi: p.hi.clone(),
            orig_lo: p.lo.clone(),
            orig_hi: p.hi.clone(),
            rhs: Vec::new(),
            state: (0..ncols).map(|_| VarState::AtLower).collect(),
            basic: Vec::new(),
            binv: Vec::new(),
            x: vec![0.0; ncols],
            dirty: true,
            pivots_since_refactor: 0,
            last_iterations: 0,
        };
        for (terms, sense, rhs) in &p.rows {
            e.add_row(terms, *sense, *rhs);
        }
        e
    }

    fn m(&self) -> usize {
        self.rhs.len()
    }

    fn nvars(&self) -> usize {
        self.ncols + self.m()
    }

    pub fn num_rows(&self) -> usize {
        self.m()
    }

    pub fn structural_values(&self) -> &[f64] {
        &self.x[..self.ncols]
    }

    pub fn objective_value(&self) -> f64 {
        (0..self.ncols).map(|j| self.obj[j] * self.x[j]).sum()
    }

    /// Appends a row; its slack enters the basis. Slack bounds come from
    /// the original column boxes, so the row stays valid under any later
    /// tightening of column bounds.
    pub fn add_row(&mut self, terms: &[(usize, f64)], sense: Sense, rhs: f64) {
        let m_old = self.m();
        let mut min_act = 0.0;
        let mut max_act = 0.0;
        for &(j, c) in terms {
            debug_assert!(j < self.ncols);
            if c >= 0.0 {
                min_act += c * self.orig_lo[j];
                max_act += c * self.orig_hi[j];
            } else {
                min_act += c * self.orig_hi[j];
                max_act += c * self.orig_lo[j];
            }
        }
        let (slo, shi) = match sense {
            Sense::Le => (0.0, rhs - min_act),
            Sense::Ge => (rhs - max_act, 0.0),
            Sense::Eq => (0.0, 0.0),
        };

        // grow binv: new last row is -(a_B . Binv) with 1 in the corner
        let mut a_b = vec![0.0; m_old];
        for &(j, c) in terms {
            if let VarState::Basic(i) = self.state[j] {
                a_b[i as usize] += c;
            }
        }
        let mut new_binv = vec![0.0; (m_old + 1) * (m_old + 1)];
        for i in 0..m_old {
            new_binv[i * (m_old + 1)..i * (m_old + 1) + m_old]
                .copy_from_slice(&self.binv[i * m_old..(i + 1) * m_old]);
        }
        for k in 0..m_old {
            let mut acc = 0.0;
            for i in 0..m_old {
                acc += a_b[i] * self.binv[i * m_old + k];
            }
            new_binv[m_old * (m_old + 1) + k] = -acc;
        }
        new_binv[m_old * (m_old + 1) + m_old] = 1.0;
        self.binv = new_binv;

        for &(j, c) in terms {
            if c != 0.0 {
                self.cols[j].push((m_old as u32, c));
            }
        }
        self.rhs.push(rhs);
        self.lo.push(slo);
        self.hi.push(shi);
        self.state.push(VarState::Basic(m_old as u32));
        self.basic.push((self.ncols + m_old) as u32);
        self.x.push(0.0);
        self.dirty = true;
    }

    pub fn add_constraint(&mut self, c: &LinearConstraint) {
        let (terms, sense, rhs) = constraint_row(c);
        self.add_row(&terms, sense, rhs);
    }

    /// Changes one structural column's bounds (within its original box).
    pub fn set_col_bounds(&mut self, j: usize, lo: f64, hi: f64) {
        debug_assert!(j < self.ncols);
        debug_assert!(lo >= self.orig_lo[j] - FEAS_TOL && hi <= self.orig_hi[j] + FEAS_TOL);
        self.lo[j] = lo;
        self.hi[j] = hi;
        self.dirty = true;
    }

    pub fn col_bounds(&self, j: usize) -> (f64, f64) {
        (self.lo[j], self.hi[j])
    }

    pub fn snapshot(&self) -> LpBasis {
        let states = self
            .state
            .iter()
            .map(|s| match s {
                VarState::AtLower => 0u8,
                VarState::AtUpper => 1,
                VarState::Basic(_) => 2,
            })
            .collect();
        LpBasis { states, basic: self.basic.clone() }
    }

    /// Restores a snapshot if its shape matches; silently keeps the current
    /// basis otherwise.
    pub fn load_basis(&mut self, b: &LpBasis) {
        if b.states.len() != self.nvars() || b.basic.len() != self.m() {
            return;
        }
        for (j, &s) in b.states.iter().enumerate() {
            self.state[j] = match s {
                0 => VarState::AtLower,
                1 => VarState::AtUpper,
                _ => VarState::Basic(0),
            };
        }
        for (i, &v) in b.basic.iter().enumerate() {
            self.basic[i] = v;
            self.state[v as usize] = VarState::Basic(i as u32);
        }
        if self.refactor().is_err() {
            self.reset_to_slack_basis();
        }
        self.dirty = true;
    }

    fn reset_to_slack_basis(&mut self) {
        let m = self.m();
        for j in 0..self.ncols {
            self.state[j] = VarState::AtLower;
        }
        for i in 0..m {
            self.basic[i] = (self.ncols + i) as u32;
            self.state[self.ncols + i] = VarState::Basic(i as u32);
        }
        self.binv = vec![0.0; m * m];
        for i in 0..m {
            self.binv[i * m + i] = 1.0;
        }
        self.pivots_since_refactor = 0;
        self.dirty = true;
    }

    /// Rebuilds the basis inverse by Gauss-Jordan with partial pivoting.
    fn refactor(&mut self) -> Result<(), LpError> {
        let m = self.m();
        let mut mat = vec![0.0; m * m];
        for (i, &v) in self.basic.iter().enumerate() {
            let v = v as usize;
            if v < self.ncols {
                for &(r, c) in &self.cols[v] {
                    mat[r as usize * m + i] = c;
                }
            } else {
                mat[(v - self.ncols) * m + i] = 1.0;
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for k in 0..m {
            let mut p = k;
            for r in (k + 1)..m {
                if fabs(mat[r * m + k]) > fabs(mat[p * m + k]) {
                    p = r;
                }
            }
            if fabs(mat[p * m + k]) < PIVOT_EPS {
                return Err(LpError::Singular);
            }
            if p != k {
                for c in 0..m {
                    mat.swap(p * m + c, k * m + c);
                    inv.swap(p * m + c, k * m + c);
                }
            }
            let piv = mat[k * m + k];
            for c in 0..m {
                mat[k * m + c] /= piv;
                inv[k * m + c] /= piv;
            }
            for r in 0..m {
                if r == k {
                    continue;
                }
                let f = mat[r * m + k];
                if f != 0.0 {
                    for c in 0..m {
                        mat[r * m + c] -= f * mat[k * m + c];
                        inv[r * m + c] -= f * inv[k * m + c];
                    }
                }
            }
        }
        self.binv = inv;
        self.pivots_since_refactor = 0;
        Ok(())
    }

    fn snap_nonbasics(&mut self) {
        for j in 0..self.nvars() {
            match self.state[j] {
                VarState::AtLower => self.x[j] = self.lo[j],
                VarState::AtUpper => self.x[j] = self.hi[j],
                VarState::Basic(_) => {}
            }
        }
    }

    /// x_B = Binv (b - N x_N).
    fn recompute_basics(&mut self) {
        let m = self.m();
        let mut r = self.rhs.clone();
        for j in 0..self.nvars() {
            if matches!(self.state[j], VarState::Basic(_)) {
                continue;
            }
            let xj = self.x[j];
            if xj == 0.0 {
                continue;
            }
            if j < self.ncols {
                for &(row, c) in &self.cols[j] {
                    r[row as usize] -= c * xj;
                }
            } else {
                r[j - self.ncols] -= xj;
            }
        }
        for i in 0..m {
            let mut acc = 0.0;
            let row = &self.binv[i * m..(i + 1) * m];
            for (k, rk) in r.iter().enumerate() {
                acc += row[k] * rk;
            }
            self.x[self.basic[i] as usize] = acc;
        }
    }

    /// y = cb . Binv.
    fn btran(&self, cb: &[f64]) -> Vec<f64> {
        let m = self.m();
        let mut y = vec![0.0; m];
        for i in 0..m {
            let c = cb[i];
            if c == 0.0 {
                continue;
            }
            let row = &self.binv[i * m..(i + 1) * m];
            for k in 0..m {
                y[k] += c * row[k];
            }
        }
        y
    }

    /// w = Binv A_j.
    fn ftran(&self, j: usize) -> Vec<f64> {
        let m = self.m();
        let mut w = vec![0.0; m];
        if j < self.ncols {
            for &(row, c) in &self.cols[j] {
                let r = row as usize;
                for i in 0..m {
                    w[i] += c * self.binv[i * m + r];
                }
            }
        } else {
            let r = j - self.ncols;
            for i in 0..m {
                w[i] = self.binv[i * m + r];
            }
        }
        w
    }

    fn reduced_cost(&self, j: usize, y: &[f64], phase1: bool) -> f64 {
        let mut d = if phase1 || j >= self.ncols {
            0.0
        } else {
            self.obj[j]
        };
        if j < self.ncols {
            for &(row, c) in &self.cols[j] {
                d -= c * y[row as usize];
            }
        } else {
            d -= y[j - self.ncols];
        }
        d
    }

    /// Solves to optimality or proves infeasibility. Statuses are returned;
    /// numerical breakdown is an explicit error.
    pub fn solve(&mut self) -> Result<LpStatus, LpError> {
        self.last_iterations = 0;
        for j in 0..self.nvars() {
            if self.lo[j] > self.hi[j] + FEAS_TOL {
                return Ok(LpStatus::Infeasible);
            }
        }
        if self.binv.len() != self.m() * self.m() {
            self.reset_to_slack_basis();
        }
        if self.dirty {
            // bound edits and row additions keep the inverse valid; only
            // the variable values need recomputing
            self.snap_nonbasics();
            self.recompute_basics();
            self.dirty = false;
        }

        let m = self.m();
        let cap = 5000 + 50 * (m + self.ncols);
        let bland_after = 3 * (m + self.ncols);
        let mut bland = false;
        let mut degen_streak = 0usize;
        let mut refreshed = false;

        loop {
            if self.last_iterations as usize > cap {
                return Err(LpError::IterationLimit);
            }

            // phase detection and pricing objective
            let mut cb = vec![0.0; m];
            let mut phase1 = false;
            for i in 0..m {
                let v = self.basic[i] as usize;
                if self.x[v] < self.lo[v] - FEAS_TOL {
                    cb[i] = 1.0;
                    phase1 = true;
                } else if self.x[v] > self.hi[v] + FEAS_TOL {
                    cb[i] = -1.0;
                    phase1 = true;
                }
            }
            if !phase1 {
                for i in 0..m {
                    let v = self.basic[i] as usize;
                    cb[i] = if v < self.ncols { self.obj[v] } else { 0.0 };
                }
            }
            let y = self.btran(&cb);

            // entering variable
            let mut enter = usize::MAX;
            let mut best = 0.0;
            for j in 0..self.nvars() {
                let score = match self.state[j] {
                    VarState::Basic(_) => None,
                    VarState::AtLower => {
                        if self.hi[j] - self.lo[j] <= RATIO_EPS {
                            None
                        } else {
                            let d = self.reduced_cost(j, &y, phase1);
                            (d > COST_TOL).then_some(d)
                        }
                    }
                    VarState::AtUpper => {
                        let d = self.reduced_cost(j, &y, phase1);
                        (d < -COST_TOL).then_some(-d)
                    }
                };
                if let Some(score) = score {
                    if bland {
                        enter = j;
                        break;
                    }
                    if score > best {
                        best = score;
                        enter = j;
                    }
                }
            }

            if enter == usize::MAX {
                // answer only from a freshly factorized basis, so that the
                // reported point (or the infeasibility verdict) is free of
                // accumulated update drift
                if refreshed {
                    return Ok(if phase1 {
                        LpStatus::Infeasible
                    } else {
                        LpStatus::Optimal
                    });
                }
                self.refactor()?;
                self.recompute_basics();
                refreshed = true;
                continue;
            }

            let sigma = if matches!(self.state[enter], VarState::AtLower) {
                1.0
            } else {
                -1.0
            };
            let w = self.ftran(enter);

            // ratio test; in phase 1 infeasible basics block only when they
            // come back to the violated bound
            let mut t_best = self.hi[enter] - self.lo[enter];
            let mut leave: Option<(usize, bool)> = None; // (row, leaves at upper)
            let mut leave_w = 0.0;
            for i in 0..m {
                let v = self.basic[i] as usize;
                let delta = -sigma * w[i];
                if fabs(delta) <= RATIO_EPS {
                    continue;
                }
                let xv = self.x[v];
                let (blo, bhi) = (self.lo[v], self.hi[v]);
                let cand: Option<(f64, bool)> = if xv < blo - FEAS_TOL {
                    (delta > 0.0).then(|| ((blo - xv) / delta, false))
                } else if xv > bhi + FEAS_TOL {
                    (delta < 0.0).then(|| ((xv - bhi) / -delta, true))
                } else if delta < 0.0 {
                    Some(((xv - blo) / -delta, false))
                } else {
                    Some(((bhi - xv) / delta, true))
                };
                if let Some((t_raw, to_upper)) = cand {
                    let t = if t_raw > 0.0 { t_raw } else { 0.0 };
                    let take = if t < t_best - RATIO_EPS {
                        true
                    } else if t < t_best + RATIO_EPS && leave.is_some() {
                        if bland {
                            leave.is_some_and(|(r, _)| self.basic[i] < self.basic[r])
                        } else {
                            fabs(w[i]) > leave_w
                        }
                    } else {
                        leave.is_none() && t <= t_best
                    };
                    if take {
                        t_best = t.min(t_best);
                        leave = Some((i, to_upper));
                        leave_w = fabs(w[i]);
                    }
                }
            }
            let t = t_best;

            self.last_iterations += 1;
            match leave {
                None => {
                    // bound flip
                    self.x[enter] = if sigma > 0.0 { self.hi[enter] } else { self.lo[enter] };
                    self.state[enter] = if sigma > 0.0 {
                        VarState::AtUpper
                    } else {
                        VarState::AtLower
                    };
                    for i in 0..m {
                        let v = self.basic[i] as usize;
                        self.x[v] += -sigma * w[i] * t;
                    }
                    degen_streak = 0;
                }
                Some((r, to_upper)) => {
                    // pivot
                    self.x[enter] += sigma * t;
                    for i in 0..m {
                        let v = self.basic[i] as usize;
                        self.x[v] += -sigma * w[i] * t;
                    }
                    let leaving = self.basic[r] as usize;
                    self.x[leaving] = if to_upper { self.hi[leaving] } else { self.lo[leaving] };
                    self.state[leaving] = if to_upper {
                        VarState::AtUpper
                    } else {
                        VarState::AtLower
                    };
                    self.basic[r] = enter as u32;
                    self.state[enter] = VarState::Basic(r as u32);

                    // product-form update of the inverse
                    let piv = w[r];
                    debug_assert!(fabs(piv) > PIVOT_EPS, "pivot too small");
                    let pivot_row: Vec<f64> =
                        self.binv[r * m..(r + 1) * m].iter().map(|c| c / piv).collect();
                    for i in 0..m {
                        if i == r {
                            continue;
                        }
                        let f = w[i];
                        if f != 0.0 {
                            for (k, pr) in pivot_row.iter().enumerate() {
                                self.binv[i * m + k] -= f * pr;
                            }
                        }
                    }
                    self.binv[r * m..(r + 1) * m].copy_from_slice(&pivot_row);

                    self.pivots_since_refactor += 1;
                    if self.pivots_since_refactor >= REFACTOR_EVERY {
                        self.refactor()?;
                        self.recompute_basics();
                    }
                    if t <= DEGEN_EPS {
                        degen_streak += 1;
                        if degen_streak > bland_after {
                            bland = true;
                        }
                    } else {
                        degen_streak = 0;
                        bland = false;
                    }
                }
            }
            refreshed = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple(obj: &[f64], rows: &[(&[(usize, f64)], Sense, f64)]) -> LpProblem {
        let mut p = LpProblem::new();
        for &o in obj {
            p.add_col(o, 0.0, 1.0);
        }
        for (terms, sense, rhs) in rows {
            p.add_row(terms.to_vec(), *sense, *rhs);
        }
        p
    }

    #[test]
    fn maximize_single_column() {
        let p = simple(&[1.0], &[]);
        let s = solve_lp(&p, None).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 1.0).abs() < 1e-9);
        assert!((s.x[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn knapsack_row_binds() {
        let p = simple(&[1.0, 1.0], &[(&[(0, 1.0), (1, 1.0)][..], Sense::Le, 1.5)]);
        let s = solve_lp(&p, None).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 1.5).abs() < 1e-8);
    }

    #[test]
    fn ge_row_forces_phase_one() {
        // start at x = 0 violates x0 + x1 >= 1
        let p = simple(
            &[-1.0, -2.0],
            &[(&[(0, 1.0), (1, 1.0)][..], Sense::Ge, 1.0)],
        );
        let s = solve_lp(&p, None).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value + 1.0).abs() < 1e-8); // cheapest fix: x0 = 1
        assert!((s.x[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn conflicting_rows_are_infeasible() {
        let p = simple(
            &[1.0, 1.0],
            &[
                (&[(0, 1.0), (1, 1.0)][..], Sense::Ge, 1.9),
                (&[(0, 1.0), (1, 1.0)][..], Sense::Le, 0.5),
            ],
        );
        let s = solve_lp(&p, None).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn conflicting_bounds_are_infeasible() {
        let mut p = LpProblem::new();
        p.add_col(1.0, 0.0, 1.0);
        p.set_col_bounds(0, 0.8, 0.2);
        let s = solve_lp(&p, None).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
    }

    #[test]
    fn equality_row() {
        let p = simple(
            &[1.0, -1.0],
            &[(&[(0, 1.0), (1, 1.0)][..], Sense::Eq, 1.0)],
        );
        let s = solve_lp(&p, None).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 1.0).abs() < 1e-8);
        assert!((s.x[0] - 1.0).abs() < 1e-8 && s.x[1].abs() < 1e-8);
    }

    #[test]
    fn fixed_columns_give_that_point() {
        let mut p = LpProblem::new();
        p.add_col(1.0, 1.0, 1.0);
        p.add_col(1.0, 0.0, 0.0);
        p.add_row(vec![(0, 1.0), (1, 1.0)], Sense::Le, 1.0);
        let s = solve_lp(&p, None).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn engine_row_addition_cuts_value() {
        let p = simple(&[1.0, 1.0], &[(&[(0, 1.0), (1, 1.0)][..], Sense::Le, 2.0)]);
        let mut e = SimplexEngine::new(&p);
        assert_eq!(e.solve().unwrap(), LpStatus::Optimal);
        let v0 = e.objective_value();
        assert!((v0 - 2.0).abs() < 1e-8);
        // a binding cut never increases the value
        e.add_row(&[(0, 1.0), (1, 1.0)], Sense::Le, 1.2);
        assert_eq!(e.solve().unwrap(), LpStatus::Optimal);
        let v1 = e.objective_value();
        assert!(v1 <= v0 + 1e-9);
        assert!((v1 - 1.2).abs() < 1e-8);
        assert!(e.last_iterations <= 4, "warm resolve took {}", e.last_iterations);
    }

    #[test]
    fn engine_bound_changes_branch_like() {
        let p = simple(
            &[3.0, 2.0, 1.0],
            &[(&[(0, 1.0), (1, 1.0), (2, 1.0)][..], Sense::Le, 2.0)],
        );
        let mut e = SimplexEngine::new(&p);
        assert_eq!(e.solve().unwrap(), LpStatus::Optimal);
        assert!((e.objective_value() - 5.0).abs() < 1e-8);
        e.set_col_bounds(0, 0.0, 0.0); // branch x0 = 0
        assert_eq!(e.solve().unwrap(), LpStatus::Optimal);
        assert!((e.objective_value() - 3.0).abs() < 1e-8);
        e.set_col_bounds(0, 0.0, 1.0); // back
        e.set_col_bounds(1, 1.0, 1.0); // branch x1 = 1
        assert_eq!(e.solve().unwrap(), LpStatus::Optimal);
        assert!((e.objective_value() - 5.0).abs() < 1e-8);
    }

    #[test]
    fn warm_start_from_optimum_stays_put() {
        let mut p = LpProblem::new();
        for _ in 0..8 {
            p.add_col(1.0, 0.0, 1.0);
        }
        for j in 0..7 {
            p.add_row(vec![(j, 1.0), (j + 1, 1.0)], Sense::Le, 1.0);
        }
        let cold = solve_lp(&p, None).unwrap();
        assert_eq!(cold.status, LpStatus::Optimal);
        let warm = solve_lp(&p, Some(&cold.basis)).unwrap();
        assert_eq!(warm.status, LpStatus::Optimal);
        assert!((warm.value - cold.value).abs() < 1e-9);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // heavily degenerate rows through the origin
        let mut p = LpProblem::new();
        for o in [10.0, -57.0, -9.0, -24.0] {
            p.add_col(o, 0.0, 1.0);
        }
        p.add_row(vec![(0, 0.5), (1, -5.5), (2, -2.5), (3, 9.0)], Sense::Le, 0.0);
        p.add_row(vec![(0, 0.5), (1, -1.5), (2, -0.5), (3, 1.0)], Sense::Le, 0.0);
        p.add_row(vec![(0, 1.0)], Sense::Le, 1.0);
        let s = solve_lp(&p, None).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.value - 1.0).abs() < 1e-7);
    }

    #[test]
    fn rows_satisfied_at_optimum() {
        // random-ish dense problem; verify row feasibility of the solution
        let mut p = LpProblem::new();
        for j in 0..6 {
            p.add_col(((j * 7 + 3) % 5) as f64 - 2.0, 0.0, 1.0);
        }
        let rows: Vec<(Vec<(usize, f64)>, Sense, f64)> = vec![
            (vec![(0, 1.0), (1, 2.0), (2, -1.0)], Sense::Le, 1.5),
            (vec![(1, 1.0), (3, 1.0), (4, 1.0)], Sense::Ge, 1.0),
            (vec![(2, 1.0), (5, 1.0)], Sense::Eq, 0.7),
            (vec![(0, -1.0), (4, 2.0), (5, 1.0)], Sense::Le, 1.1),
        ];
        for (t, s, r) in &rows {
            p.add_row(t.clone(), *s, *r);
        }
        let s = solve_lp(&p, None).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        for (t, sense, r) in &rows {
            let act: f64 = t.iter().map(|&(j, c)| c * s.x[j]).sum();
            match sense {
                Sense::Le => assert!(act <= r + 1e-7),
                Sense::Ge => assert!(act >= r - 1e-7),
                Sense::Eq => assert!((act - r).abs() <= 1e-7),
            }
        }
        for (j, &v) in s.x.iter().enumerate() {
            assert!(v >= -1e-7 && v <= 1.0 + 1e-7, "x[{j}] = {v} out of box");
        }
    }
}
