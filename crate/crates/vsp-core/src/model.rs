//! Separator MILP models and their valid inequalities.
//!
//! Two formulations share one representation:
//!
//! * the ab-fixed model, with variables `x_ia`, `x_ib` over the free
//!   vertices `V \ {a, b}` for a given non-adjacent pair: edge exclusion,
//!   one-side-per-vertex, and `sum <= beta - 1` size rows, with the columns
//!   of neighbors of `a` (resp. `b`) on the opposite side fixed to zero;
//! * the fictitious model, with `a`, `b` artificial and edgeless, `2n`
//!   columns, the `sum(x_ia + x_ib) <= n - alpha_min` row, and the
//!   `|A| <= |B|` symmetry-breaking bounds.
//!
//! Both maximize the cost kept out of the separator. On top of the base
//! rows, three cut families are generated and separated: chain inequalities
//! (some interior vertex of every a-b chain lies in `C`), alpha-pair
//! inequalities (putting non-adjacent `i`, `j` on opposite sides forces
//! `|C| >= alpha_ij`), and connected-subgraph inequalities.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::Ratio;
use num_traits::Zero;

use crate::alpha::AlphaTable;
use crate::graph::{Graph, VertexPartition};

pub type Coef = Ratio<i64>;

fn coef(v: i64) -> Coef {
    Coef::from_integer(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// Which generator a constraint came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CutOrigin {
    Base,
    Chain,
    AlphaPair,
    Subgraph,
    Bound,
}

/// A linear row over model columns with exact rational coefficients.
/// Zero coefficients are never stored; terms are sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    terms: Vec<(usize, Coef)>,
    pub sense: Sense,
    pub rhs: Coef,
    pub origin: CutOrigin,
}

impl LinearConstraint {
    pub fn new(mut terms: Vec<(usize, Coef)>, sense: Sense, rhs: Coef, origin: CutOrigin) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_unstable_by_key(|&(col, _)| col);
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0), "duplicate column");
        LinearConstraint { terms, sense, rhs, origin }
    }

    pub fn terms(&self) -> &[(usize, Coef)] {
        &self.terms
    }

    /// Exact left-hand side on a 0/1 point.
    pub fn lhs_binary(&self, x: &IncidenceVector) -> Coef {
        self.terms
            .iter()
            .filter(|&&(col, _)| x.get(col))
            .map(|&(_, c)| c)
            .sum()
    }

    /// Exact satisfaction on a 0/1 point.
    pub fn satisfied_by(&self, x: &IncidenceVector) -> bool {
        let lhs = self.lhs_binary(x);
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }

    /// Violation at a fractional point: positive means violated.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs: f64 = self
            .terms
            .iter()
            .map(|&(col, c)| to_f64(c) * x[col])
            .sum();
        let rhs = to_f64(self.rhs);
        match self.sense {
            Sense::Le => lhs - rhs,
            Sense::Ge => rhs - lhs,
            Sense::Eq => {
                let d = lhs - rhs;
                if d < 0.0 {
                    -d
                } else {
                    d
                }
            }
        }
    }

    /// Dedup key: normalized terms, sense and right-hand side (origin
    /// intentionally excluded).
    pub fn signature(&self) -> Signature {
        let terms: Vec<(usize, (i64, i64))> = self
            .terms
            .iter()
            .map(|&(col, c)| (col, (*c.numer(), *c.denom())))
            .collect();
        let sense = match self.sense {
            Sense::Le => 0u8,
            Sense::Ge => 1,
            Sense::Eq => 2,
        };
        (terms, sense, (*self.rhs.numer(), *self.rhs.denom()))
    }
}

pub type Signature = (Vec<(usize, (i64, i64))>, u8, (i64, i64));

pub fn to_f64(c: Coef) -> f64 {
    *c.numer() as f64 / *c.denom() as f64
}

/// A 0/1 assignment to all model columns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IncidenceVector {
    bits: Vec<u8>,
}

impl IncidenceVector {
    pub fn new(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        IncidenceVector { bits }
    }

    pub fn zeros(dim: usize) -> Self {
        IncidenceVector { bits: vec![0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    pub fn get(&self, col: usize) -> bool {
        self.bits[col] == 1
    }

    pub fn set(&mut self, col: usize, on: bool) {
        self.bits[col] = on as u8;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.bits.iter().map(|&b| b as f64).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelMode {
    /// Real vertices `a`, `b` fixed to their sides; columns over `V \ {a,b}`.
    AbFixed { a: usize, b: usize },
    /// Fictitious edgeless `a`, `b`; columns over all of `V`.
    Fictitious,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelError {
    AdjacentPair(usize, usize),
    BadBeta(usize),
    NotAColumn(usize),
    WrongMode,
    DegeneratePath,
    SubgraphTooSmall { size: usize, beta: usize },
    NotNonAdjacent(usize, usize),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::AdjacentPair(a, b) => write!(f, "vertices {a}, {b} are adjacent or equal"),
            ModelError::BadBeta(b) => write!(f, "beta = {b} out of range"),
            ModelError::NotAColumn(v) => write!(f, "vertex {v} has no column in this mode"),
            ModelError::WrongMode => write!(f, "operation requires the other model mode"),
            ModelError::DegeneratePath => write!(f, "path has no internal vertex"),
            ModelError::SubgraphTooSmall { size, beta } => {
                write!(f, "subgraph of size {size} does not exceed beta = {beta}")
            }
            ModelError::NotNonAdjacent(i, j) => {
                write!(f, "pair ({i}, {j}) is not a stored non-adjacent pair")
            }
        }
    }
}

/// One of the two separator MILP formulations plus its cut pool.
#[derive(Clone, Debug)]
pub struct VspModel {
    pub mode: ModelMode,
    n: usize,
    /// Vertex owning each a-block position (the b-block mirrors it).
    position_vertex: Vec<usize>,
    /// Vertex id -> a-block position; `usize::MAX` for `a`, `b` in ab mode.
    vertex_position: Vec<usize>,
    pub objective: Vec<Coef>,
    pub col_lower: Vec<Coef>,
    pub col_upper: Vec<Coef>,
    base: Vec<LinearConstraint>,
    /// Rows `base[..eager_count]` are structural (per-vertex and
    /// cardinality); the rest are the per-edge exclusion rows, which LP
    /// drivers may activate lazily.
    eager_count: usize,
    pool: CutPool,
    pub beta: usize,
    pub alpha_min: Option<u32>,
}

impl VspModel {
    /// Number of a-block positions (free vertices, or all of `V`).
    pub fn width(&self) -> usize {
        self.position_vertex.len()
    }

    pub fn num_cols(&self) -> usize {
        2 * self.width()
    }

    pub fn graph_vertex_count(&self) -> usize {
        self.n
    }

    pub fn col(&self, v: usize, side: Side) -> Option<usize> {
        let p = *self.vertex_position.get(v)?;
        if p == usize::MAX {
            return None;
        }
        Some(match side {
            Side::A => p,
            Side::B => self.width() + p,
        })
    }

    /// Vertex and side owning a column.
    pub fn col_owner(&self, col: usize) -> (usize, Side) {
        let w = self.width();
        if col < w {
            (self.position_vertex[col], Side::A)
        } else {
            (self.position_vertex[col - w], Side::B)
        }
    }

    pub fn base_constraints(&self) -> &[LinearConstraint] {
        &self.base
    }

    /// Per-vertex and cardinality rows; always in the LP.
    pub fn eager_rows(&self) -> &[LinearConstraint] {
        &self.base[..self.eager_count]
    }

    /// Per-edge exclusion rows; equivalent to keep in the LP from the
    /// start or to activate on violation.
    pub fn lazy_rows(&self) -> &[LinearConstraint] {
        &self.base[self.eager_count..]
    }

    pub fn pool(&self) -> &CutPool {
        &self.pool
    }

    pub fn pool_mut(&mut self) -> &mut CutPool {
        &mut self.pool
    }

    pub fn objective_of(&self, x: &IncidenceVector) -> Coef {
        (0..self.num_cols())
            .filter(|&c| x.get(c))
            .map(|c| self.objective[c])
            .sum()
    }

    /// Every base row plus every pooled cut, satisfied exactly?
    pub fn all_rows_satisfied(&self, x: &IncidenceVector) -> bool {
        self.base.iter().chain(self.pool.iter()).all(|c| c.satisfied_by(x))
    }

    /// Encodes a partition as a 0/1 point. In ab mode `a` must lie in `A`
    /// and `b` in `B`; returns `None` otherwise.
    pub fn encode(&self, p: &VertexPartition) -> Option<IncidenceVector> {
        let mut x = IncidenceVector::zeros(self.num_cols());
        if let ModelMode::AbFixed { a, b } = self.mode {
            if !p.a.contains(&a) || !p.b.contains(&b) {
                return None;
            }
        }
        for &v in &p.a {
            if let Some(c) = self.col(v, Side::A) {
                x.set(c, true);
            } else if !matches!(self.mode, ModelMode::AbFixed { a, .. } if a == v) {
                return None;
            }
        }
        for &v in &p.b {
            if let Some(c) = self.col(v, Side::B) {
                x.set(c, true);
            } else if !matches!(self.mode, ModelMode::AbFixed { b, .. } if b == v) {
                return None;
            }
        }
        Some(x)
    }

    /// Decodes an integral point: `A = {x_ia = 1}`, `B = {x_ib = 1}`,
    /// `C` the rest; in ab mode `a`, `b` rejoin their sides.
    pub fn decode(&self, x: &IncidenceVector) -> VertexPartition {
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut c = Vec::new();
        for v in 0..self.n {
            match (self.col(v, Side::A), self.col(v, Side::B)) {
                (Some(ca), Some(cb)) => {
                    if x.get(ca) {
                        a.push(v);
                    } else if x.get(cb) {
                        b.push(v);
                    } else {
                        c.push(v);
                    }
                }
                _ => match self.mode {
                    ModelMode::AbFixed { a: av, b: bv } => {
                        if v == av {
                            a.push(v);
                        } else if v == bv {
                            b.push(v);
                        }
                    }
                    ModelMode::Fictitious => unreachable!("all vertices have columns"),
                },
            }
        }
        VertexPartition::new(a, b, c)
    }
}

/// The ab-fixed formulation for a non-adjacent pair.
pub fn build_ab_model(
    g: &Graph,
    a: usize,
    b: usize,
    beta: usize,
) -> Result<VspModel, ModelError> {
    let n = g.vertex_count();
    if a == b || g.has_edge(a, b) {
        return Err(ModelError::AdjacentPair(a, b));
    }
    if beta < 1 || beta > n {
        return Err(ModelError::BadBeta(beta));
    }
    let mut vertex_position = vec![usize::MAX; n];
    let mut position_vertex = Vec::with_capacity(n - 2);
    for v in 0..n {
        if v != a && v != b {
            vertex_position[v] = position_vertex.len();
            position_vertex.push(v);
        }
    }
    let f = position_vertex.len();
    let mut objective = vec![coef(0); 2 * f];
    for (p, &v) in position_vertex.iter().enumerate() {
        objective[p] = g.cost(v);
        objective[f + p] = g.cost(v);
    }
    let col_lower = vec![coef(0); 2 * f];
    let mut col_upper = vec![coef(1); 2 * f];
    // minimal-description equalities: neighbors of a cannot sit in B,
    // neighbors of b cannot sit in A
    for &v in g.neighbors(a) {
        if v != b {
            col_upper[f + vertex_position[v]] = coef(0);
        }
    }
    for &v in g.neighbors(b) {
        if v != a {
            col_upper[vertex_position[v]] = coef(0);
        }
    }

    let mut base = Vec::new();
    for p in 0..f {
        base.push(LinearConstraint::new(
            vec![(p, coef(1)), (f + p, coef(1))],
            Sense::Le,
            coef(1),
            CutOrigin::Base,
        ));
    }
    let side_cap = coef(beta as i64 - 1);
    base.push(LinearConstraint::new(
        (0..f).map(|p| (p, coef(1))).collect(),
        Sense::Le,
        side_cap,
        CutOrigin::Base,
    ));
    base.push(LinearConstraint::new(
        (0..f).map(|p| (f + p, coef(1))).collect(),
        Sense::Le,
        side_cap,
        CutOrigin::Base,
    ));
    let eager_count = base.len();
    for &(i, j) in g.edges() {
        if i == a || i == b || j == a || j == b {
            continue;
        }
        let (pi, pj) = (vertex_position[i], vertex_position[j]);
        base.push(LinearConstraint::new(
            vec![(pi, coef(1)), (f + pj, coef(1))],
            Sense::Le,
            coef(1),
            CutOrigin::Base,
        ));
        base.push(LinearConstraint::new(
            vec![(pj, coef(1)), (f + pi, coef(1))],
            Sense::Le,
            coef(1),
            CutOrigin::Base,
        ));
    }

    Ok(VspModel {
        mode: ModelMode::AbFixed { a, b },
        n,
        position_vertex,
        vertex_position,
        objective,
        col_lower,
        col_upper,
        base,
        eager_count,
        pool: CutPool::new(),
        beta,
        alpha_min: None,
    })
}

/// The fictitious-vertex formulation covering all partitions at once.
pub fn build_full_model(
    g: &Graph,
    beta: usize,
    alpha_min: u32,
) -> Result<VspModel, ModelError> {
    let n = g.vertex_count();
    if beta < 1 || beta > n {
        return Err(ModelError::BadBeta(beta));
    }
    let position_vertex: Vec<usize> = (0..n).collect();
    let vertex_position: Vec<usize> = (0..n).collect();
    let mut objective = vec![coef(0); 2 * n];
    for v in 0..n {
        objective[v] = g.cost(v);
        objective[n + v] = g.cost(v);
    }

    let mut base = Vec::new();
    for v in 0..n {
        base.push(LinearConstraint::new(
            vec![(v, coef(1)), (n + v, coef(1))],
            Sense::Le,
            coef(1),
            CutOrigin::Base,
        ));
    }
    // |A| + |B| <= n - alpha_min
    base.push(LinearConstraint::new(
        (0..2 * n).map(|c| (c, coef(1))).collect(),
        Sense::Le,
        coef(n as i64 - alpha_min as i64),
        CutOrigin::Bound,
    ));
    // 1 <= |A| <= floor((n - alpha_min) / 2), breaking the A/B symmetry
    base.push(LinearConstraint::new(
        (0..n).map(|c| (c, coef(1))).collect(),
        Sense::Ge,
        coef(1),
        CutOrigin::Bound,
    ));
    base.push(LinearConstraint::new(
        (0..n).map(|c| (c, coef(1))).collect(),
        Sense::Le,
        coef((n as i64 - alpha_min as i64) / 2),
        CutOrigin::Bound,
    ));
    // 1 <= |B| <= beta and |A| <= beta
    base.push(LinearConstraint::new(
        (n..2 * n).map(|c| (c, coef(1))).collect(),
        Sense::Ge,
        coef(1),
        CutOrigin::Bound,
    ));
    base.push(LinearConstraint::new(
        (n..2 * n).map(|c| (c, coef(1))).collect(),
        Sense::Le,
        coef(beta as i64),
        CutOrigin::Bound,
    ));
    base.push(LinearConstraint::new(
        (0..n).map(|c| (c, coef(1))).collect(),
        Sense::Le,
        coef(beta as i64),
        CutOrigin::Bound,
    ));
    let eager_count = base.len();
    for &(i, j) in g.edges() {
        base.push(LinearConstraint::new(
            vec![(i, coef(1)), (n + j, coef(1))],
            Sense::Le,
            coef(1),
            CutOrigin::Base,
        ));
        base.push(LinearConstraint::new(
            vec![(j, coef(1)), (n + i, coef(1))],
            Sense::Le,
            coef(1),
            CutOrigin::Base,
        ));
    }

    Ok(VspModel {
        mode: ModelMode::Fictitious,
        n,
        position_vertex,
        vertex_position,
        objective,
        col_lower: vec![coef(0); 2 * n],
        col_upper: vec![coef(1); 2 * n],
        base,
        eager_count,
        pool: CutPool::new(),
        beta,
        alpha_min: Some(alpha_min),
    })
}

/// A simple path with fixed endpoints, used for chain inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbPath {
    vertices: Vec<usize>,
}

impl AbPath {
    /// Validates that consecutive vertices are adjacent and all distinct.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Option<AbPath> {
        if vertices.len() < 2 {
            return None;
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &vertices {
            if v >= g.vertex_count() || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        if !vertices.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return None;
        }
        Some(AbPath { vertices })
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }

    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

impl VspModel {
    /// Chain inequality for an a-b path: the interior cannot avoid `C`
    /// entirely, so `sum over interior of (x_ia + x_ib) <= |interior| - 1`.
    /// Requires the ab-fixed mode with matching endpoints.
    pub fn chain_inequality(&self, path: &AbPath) -> Result<LinearConstraint, ModelError> {
        let (pa, pb) = path.endpoints();
        match self.mode {
            ModelMode::AbFixed { a, b } if (a, b) == (pa, pb) || (a, b) == (pb, pa) => {}
            ModelMode::AbFixed { .. } | ModelMode::Fictitious => return Err(ModelError::WrongMode),
        }
        let interior = path.interior();
        if interior.is_empty() {
            return Err(ModelError::DegeneratePath);
        }
        let mut terms = Vec::with_capacity(2 * interior.len());
        for &v in interior {
            terms.push((self.col(v, Side::A).ok_or(ModelError::NotAColumn(v))?, coef(1)));
            terms.push((self.col(v, Side::B).ok_or(ModelError::NotAColumn(v))?, coef(1)));
        }
        Ok(LinearConstraint::new(
            terms,
            Sense::Le,
            coef(interior.len() as i64 - 1),
            CutOrigin::Chain,
        ))
    }

    /// The two alpha-pair inequalities for a stored non-adjacent pair, in
    /// the normalized form
    /// `sum_k (x_ka + x_kb) + alpha * x_ia + alpha * x_jb <= n + alpha`
    /// (and the mirrored one), where the sum ranges over this mode's
    /// columns and `n` is the graph order.
    pub fn alpha_pair_inequalities(
        &self,
        at: &AlphaTable,
        i: usize,
        j: usize,
    ) -> Result<[LinearConstraint; 2], ModelError> {
        let alpha = at.get(i, j).ok_or(ModelError::NotNonAdjacent(i, j))? as i64;
        let (cia, cib) = (
            self.col(i, Side::A).ok_or(ModelError::NotAColumn(i))?,
            self.col(i, Side::B).ok_or(ModelError::NotAColumn(i))?,
        );
        let (cja, cjb) = (
            self.col(j, Side::A).ok_or(ModelError::NotAColumn(j))?,
            self.col(j, Side::B).ok_or(ModelError::NotAColumn(j))?,
        );
        let rhs = coef(self.n as i64 + alpha);
        let build = |act1: usize, act2: usize| {
            let mut terms: Vec<(usize, Coef)> =
                (0..self.num_cols()).map(|c| (c, coef(1))).collect();
            terms[act1].1 += coef(alpha);
            terms[act2].1 += coef(alpha);
            LinearConstraint::new(terms, Sense::Le, rhs, CutOrigin::AlphaPair)
        };
        Ok([build(cia, cjb), build(cja, cib)])
    }

    /// Connected-subgraph inequality:
    /// `sum over V' of (x_ia + x_ib) <= |V'| - min(alpha_0, |V'| - beta)`.
    /// Caller guarantees `vs` induces a connected subgraph and supplies its
    /// `alpha_0`.
    pub fn subgraph_inequality(
        &self,
        vs: &[usize],
        alpha_0: u32,
    ) -> Result<LinearConstraint, ModelError> {
        if vs.len() <= self.beta {
            return Err(ModelError::SubgraphTooSmall { size: vs.len(), beta: self.beta });
        }
        let mut terms = Vec::new();
        for &v in vs {
            if let (Some(ca), Some(cb)) = (self.col(v, Side::A), self.col(v, Side::B)) {
                terms.push((ca, coef(1)));
                terms.push((cb, coef(1)));
            }
            // a or b inside V' contribute no columns in ab mode; the bound
            // on |C intersect V'| holds regardless.
        }
        let cut = (alpha_0 as i64).min(vs.len() as i64 - self.beta as i64);
        Ok(LinearConstraint::new(
            terms,
            Sense::Le,
            coef(vs.len() as i64 - cut),
            CutOrigin::Subgraph,
        ))
    }
}

/// Exact separation of chain inequalities: give each free vertex weight
/// `max(0, 1 - x_ia - x_ib)` and look for an a-b path of interior weight
/// below `1 - tol` (Dijkstra, so minimum over all chains).
pub fn separate_chain(
    model: &VspModel,
    g: &Graph,
    x: &[f64],
    tol: f64,
) -> Result<Option<LinearConstraint>, ModelError> {
    let (a, b) = match model.mode {
        ModelMode::AbFixed { a, b } => (a, b),
        ModelMode::Fictitious => return Err(ModelError::WrongMode),
    };
    let n = g.vertex_count();
    let mut weight = vec![0.0f64; n];
    for v in 0..n {
        if v == a || v == b {
            continue;
        }
        let w = 1.0
            - x[model.col(v, Side::A).unwrap()]
            - x[model.col(v, Side::B).unwrap()];
        weight[v] = if w > 0.0 { w } else { 0.0 };
    }

    // Dijkstra from a; cost of entering v is weight[v] (0 for b itself)
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[a] = 0.0;
    loop {
        // deterministic extraction: smallest dist, then smallest id
        let mut u = usize::MAX;
        for v in 0..n {
            if !done[v] && dist[v].is_finite() && (u == usize::MAX || dist[v] < dist[u]) {
                u = v;
            }
        }
        if u == usize::MAX {
            break;
        }
        done[u] = true;
        if u == b {
            break;
        }
        for &w in g.neighbors(u) {
            if done[w] {
                continue;
            }
            let step = if w == b { 0.0 } else { weight[w] };
            let nd = dist[u] + step;
            if nd < dist[w] {
                dist[w] = nd;
                parent[w] = u;
            }
        }
    }

    if !dist[b].is_finite() || dist[b] >= 1.0 - tol {
        return Ok(None);
    }
    let mut rev = vec![b];
    let mut v = b;
    while v != a {
        v = parent[v];
        rev.push(v);
    }
    rev.reverse();
    let path = AbPath::new(g, rev).expect("Dijkstra yields a simple path");
    model.chain_inequality(&path).map(Some)
}

/// Evaluates both alpha-pair inequalities on every stored pair and returns
/// up to `max_cuts` most violated, ordered by violation then pair.
pub fn separate_alpha_pairs(
    model: &VspModel,
    at: &AlphaTable,
    x: &[f64],
    max_cuts: usize,
    tol: f64,
) -> Vec<LinearConstraint> {
    let total: f64 = (0..model.num_cols()).map(|c| x[c]).sum();
    let n = model.graph_vertex_count() as f64;
    let mut found: Vec<(f64, usize, usize, u8)> = Vec::new();
    for (i, j, alpha) in at.pairs() {
        let cols = (
            model.col(i, Side::A),
            model.col(i, Side::B),
            model.col(j, Side::A),
            model.col(j, Side::B),
        );
        let (Some(cia), Some(cib), Some(cja), Some(cjb)) = cols else {
            continue; // pair touches a/b in ab mode
        };
        let af = alpha as f64;
        let v1 = total + af * (x[cia] + x[cjb]) - (n + af);
        let v2 = total + af * (x[cja] + x[cib]) - (n + af);
        if v1 > tol {
            found.push((v1, i, j, 0));
        }
        if v2 > tol {
            found.push((v2, i, j, 1));
        }
    }
    found.sort_by(|l, r| {
        r.0.partial_cmp(&l.0)
            .unwrap_or(Ordering::Equal)
            .then(l.1.cmp(&r.1))
            .then(l.2.cmp(&r.2))
            .then(l.3.cmp(&r.3))
    });
    found.truncate(max_cuts);
    found
        .into_iter()
        .map(|(_, i, j, which)| {
            let [c1, c2] = model
                .alpha_pair_inequalities(at, i, j)
                .expect("pair from table is valid");
            if which == 0 {
                c1
            } else {
                c2
            }
        })
        .collect()
}

/// A candidate vertex set for subgraph inequalities, with its `alpha_0`.
#[derive(Clone, Debug)]
pub struct SubgraphCandidate {
    pub vertices: Vec<usize>,
    pub alpha_0: u32,
}

/// Candidate `V'` sets: the whole vertex set, then BFS balls grown from
/// each vertex until they exceed `beta`, deduplicated, capped at `2n`.
/// Every candidate induces a connected subgraph and carries its `alpha_0`.
pub fn subgraph_candidates(g: &Graph, beta: usize, at: &AlphaTable) -> Vec<SubgraphCandidate> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    if n > beta {
        let all: Vec<usize> = (0..n).collect();
        seen.insert(all.clone());
        out.push(SubgraphCandidate { vertices: all, alpha_0: at.alpha_min() });
    }
    for root in 0..n {
        if out.len() >= 2 * n {
            break;
        }
        // BFS ball until the candidate exceeds beta
        let mut order = vec![root];
        let mut mark = vec![false; n];
        mark[root] = true;
        let mut head = 0;
        while head < order.len() && order.len() <= beta {
            let u = order[head];
            head += 1;
            for &w in g.neighbors(u) {
                if !mark[w] {
                    mark[w] = true;
                    order.push(w);
                }
            }
        }
        if order.len() <= beta || order.len() >= n {
            continue; // ball never exceeded beta, or it is the whole graph
        }
        let mut vs = order;
        vs.sort_unstable();
        if !seen.insert(vs.clone()) {
            continue;
        }
        if let Ok(a0) = crate::alpha::alpha_subgraph(g, &vs) {
            out.push(SubgraphCandidate { vertices: vs, alpha_0: a0 });
        }
    }
    out
}

/// Evaluates the subgraph inequality of every candidate and returns up to
/// `max_cuts` most violated.
pub fn separate_subgraph(
    model: &VspModel,
    candidates: &[SubgraphCandidate],
    x: &[f64],
    max_cuts: usize,
    tol: f64,
) -> Vec<LinearConstraint> {
    let mut found: Vec<(f64, usize)> = Vec::new();
    for (idx, cand) in candidates.iter().enumerate() {
        let Ok(c) = model.subgraph_inequality(&cand.vertices, cand.alpha_0) else {
            continue;
        };
        let v = c.violation(x);
        if v > tol {
            found.push((v, idx));
        }
    }
    found.sort_by(|l, r| {
        r.0.partial_cmp(&l.0)
            .unwrap_or(Ordering::Equal)
            .then(l.1.cmp(&r.1))
    });
    found.truncate(max_cuts);
    found
        .into_iter()
        .map(|(_, idx)| {
            model
                .subgraph_inequality(&candidates[idx].vertices, candidates[idx].alpha_0)
                .expect("candidate already passed")
        })
        .collect()
}

/// Deduplicating store of generated cuts, ordered by insertion.
#[derive(Clone, Debug, Default)]
pub struct CutPool {
    cuts: Vec<LinearConstraint>,
    seen: BTreeSet<Signature>,
}

impl CutPool {
    pub fn new() -> Self {
        CutPool::default()
    }

    /// Returns true when the cut is new.
    pub fn insert(&mut self, c: LinearConstraint) -> bool {
        if self.seen.insert(c.signature()) {
            self.cuts.push(c);
            true
        } else {
            false
        }
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, LinearConstraint> {
        self.cuts.iter()
    }

    pub fn as_slice(&self) -> &[LinearConstraint] {
        &self.cuts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::alpha_table;

    fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).unwrap()
    }

    #[test]
    fn ab_model_shape_on_path3() {
        // a=0, c=1, b=2
        let g = path(3);
        let m = build_ab_model(&g, 0, 2, 2).unwrap();
        assert_eq!(m.num_cols(), 2);
        // c is adjacent to both a and b: both its columns are fixed to 0
        assert_eq!(m.col_upper, vec![coef(0), coef(0)]);
        // only point is (0,0); objective 0
        let x = IncidenceVector::zeros(2);
        assert!(m.all_rows_satisfied(&x));
        assert_eq!(m.objective_of(&x), coef(0));
    }

    #[test]
    fn ab_model_rejects_adjacent() {
        let g = path(3);
        assert!(matches!(
            build_ab_model(&g, 0, 1, 2),
            Err(ModelError::AdjacentPair(0, 1))
        ));
    }

    #[test]
    fn full_model_on_path3() {
        let g = path(3);
        let m = build_full_model(&g, 2, 1).unwrap();
        assert_eq!(m.num_cols(), 6);
        // A={0}, B={2}, C={1}: objective 2 = n - alpha_min
        let p = VertexPartition::new(vec![0], vec![2], vec![1]);
        let x = m.encode(&p).unwrap();
        assert!(m.all_rows_satisfied(&x));
        assert_eq!(m.objective_of(&x), coef(2));
        assert_eq!(m.decode(&x), p);
        // empty B violates its lower bound row
        let bad = m
            .encode(&VertexPartition::new(vec![0, 2], vec![], vec![1]))
            .unwrap();
        assert!(!m.all_rows_satisfied(&bad));
    }

    #[test]
    fn chain_inequality_forms() {
        // a - c - b: x_ca + x_cb <= 0
        let g = path(3);
        let m = build_ab_model(&g, 0, 2, 2).unwrap();
        let p = AbPath::new(&g, vec![0, 1, 2]).unwrap();
        let c = m.chain_inequality(&p).unwrap();
        assert_eq!(c.rhs, coef(0));
        assert_eq!(c.terms().len(), 2);
        // a - u - v - b: four terms, rhs 1
        let g4 = path(4);
        let m4 = build_ab_model(&g4, 0, 3, 2).unwrap();
        let p4 = AbPath::new(&g4, vec![0, 1, 2, 3]).unwrap();
        let c4 = m4.chain_inequality(&p4).unwrap();
        assert_eq!(c4.rhs, coef(1));
        assert_eq!(c4.terms().len(), 4);
        assert_eq!(c4.origin, CutOrigin::Chain);
    }

    #[test]
    fn chain_needs_interior_and_mode() {
        let g = path(4);
        let m = build_ab_model(&g, 0, 3, 2).unwrap();
        let side = AbPath::new(&g, vec![1, 2, 3]).unwrap();
        assert!(matches!(m.chain_inequality(&side), Err(ModelError::WrongMode)));
        let full = build_full_model(&g, 2, 1).unwrap();
        let p = AbPath::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(full.chain_inequality(&p), Err(ModelError::WrongMode)));
    }

    #[test]
    fn separate_chain_finds_forced_vertex() {
        let g = path(3);
        let m = build_ab_model(&g, 0, 2, 2).unwrap();
        // x = 0 everywhere: min path weight 1, no cut
        assert_eq!(separate_chain(&m, &g, &[0.0, 0.0], 1e-6).unwrap(), None);
        // x_ca = x_cb = 0.6: clamped weight 0 < 1, violated
        let cut = separate_chain(&m, &g, &[0.6, 0.6], 1e-6).unwrap().unwrap();
        assert_eq!(cut.rhs, coef(0));
        assert!(cut.violation(&[0.6, 0.6]) > 1.0);
    }

    #[test]
    fn alpha_pair_reduces_to_cardinality_bound() {
        // 4-cycle plus chord: pair (0,2) non-adjacent
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]).unwrap();
        let at = alpha_table(&g).unwrap();
        let m = build_full_model(&g, 2, at.alpha_min()).unwrap();
        let [c1, _c2] = m.alpha_pair_inequalities(&at, 0, 2).unwrap();
        // integral point with 0 in A and 2 in B: 1,3 must sit in C
        let p = VertexPartition::new(vec![0], vec![2], vec![1, 3]);
        let x = m.encode(&p).unwrap();
        assert!(c1.satisfied_by(&x));
        // lhs = |A|+|B| + 2 alpha = 2 + 2a; rhs = n + a => |C| >= a
        let alpha = at.get(0, 2).unwrap();
        assert_eq!(c1.lhs_binary(&x), coef(2 + 2 * alpha as i64));
        assert_eq!(c1.rhs, coef(4 + alpha as i64));
        // adjacent pair is refused
        assert!(m.alpha_pair_inequalities(&at, 0, 1).is_err());
    }

    #[test]
    fn alpha_pair_deactivated_case_is_slack() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]).unwrap();
        let at = alpha_table(&g).unwrap();
        let m = build_full_model(&g, 2, at.alpha_min()).unwrap();
        let [c1, _] = m.alpha_pair_inequalities(&at, 0, 2).unwrap();
        // x_ia = x_jb = 0: the activation terms vanish, the row is implied
        // by sum(x) <= n
        let p = VertexPartition::new(vec![1], vec![3], vec![0, 2]);
        let x = m.encode(&p).unwrap();
        let alpha = at.get(0, 2).unwrap() as i64;
        assert!(c1.lhs_binary(&x) <= coef(4));
        assert!(c1.rhs >= coef(4) && c1.rhs == coef(4 + alpha));
        assert!(c1.satisfied_by(&x));
    }

    #[test]
    fn alpha_pair_separation_orders_by_violation() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)]).unwrap();
        let at = alpha_table(&g).unwrap();
        let m = build_full_model(&g, 2, at.alpha_min()).unwrap();
        // integral feasible point: nothing violated
        let p = VertexPartition::new(vec![0], vec![2], vec![1, 3]);
        let x = m.encode(&p).unwrap().to_f64();
        assert!(separate_alpha_pairs(&m, &at, &x, 10, 1e-6).is_empty());
        // uniform one-half point: total = 4, alpha_02 = 2 gives
        // 4 + 2*(0.5+0.5) - (4+2) = 0, not violated; push the pair columns up
        let mut xf = vec![0.5; 8];
        xf[0] = 1.0; // x_0a
        xf[4 + 2] = 1.0; // x_2b
        let cuts = separate_alpha_pairs(&m, &at, &xf, 10, 1e-6);
        assert!(!cuts.is_empty());
        for c in &cuts {
            assert!(c.violation(&xf) > 1e-6);
        }
        // K=1 returns the single most violated
        let top = separate_alpha_pairs(&m, &at, &xf, 1, 1e-6);
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].signature(), cuts[0].signature());
    }

    #[test]
    fn subgraph_inequality_seven_cycle() {
        // 7-cycle, beta = 4, V' = all, alpha_0 = 2: sum <= 7 - min(2,3) = 5
        let edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        let g = Graph::new(7, &edges).unwrap();
        let at = alpha_table(&g).unwrap();
        assert_eq!(at.alpha_min(), 2);
        let m = build_full_model(&g, 4, 2).unwrap();
        let vs: Vec<usize> = (0..7).collect();
        let c = m.subgraph_inequality(&vs, 2).unwrap();
        assert_eq!(c.rhs, coef(5));
        assert_eq!(c.origin, CutOrigin::Subgraph);
        // |V'| <= beta refused
        assert!(m.subgraph_inequality(&[0, 1, 2], 1).is_err());
    }

    #[test]
    fn pool_dedups_by_signature() {
        let g = path(4);
        let m = build_ab_model(&g, 0, 3, 2).unwrap();
        let p = AbPath::new(&g, vec![0, 1, 2, 3]).unwrap();
        let c = m.chain_inequality(&p).unwrap();
        let mut pool = CutPool::new();
        assert!(pool.insert(c.clone()));
        assert!(!pool.insert(c));
        assert_eq!(pool.len(), 1);
    }

    #[test]
    fn candidates_cover_whole_graph() {
        let edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        let g = Graph::new(7, &edges).unwrap();
        let at = alpha_table(&g).unwrap();
        let cands = subgraph_candidates(&g, 4, &at);
        assert!(!cands.is_empty());
        assert_eq!(cands[0].vertices.len(), 7);
        assert_eq!(cands[0].alpha_0, at.alpha_min());
        for c in &cands {
            assert!(c.vertices.len() > 4);
        }
    }
}
