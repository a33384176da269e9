//! Simple undirected graphs with vertex costs, instance metadata, and
//! partition validation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

/// Vertex costs and objective values are exact rationals; they only become
/// floating point at the LP boundary.
pub type Cost = Ratio<i64>;

/// Default balance bound `floor(2n/3)`.
pub fn default_beta(n: usize) -> usize {
    2 * n / 3
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange { v: usize, n: usize },
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    NegativeCost(usize),
    CostLenMismatch { got: usize, n: usize },
    Disconnected,
    TooSmall(usize),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { v, n } => {
                write!(f, "vertex {v} out of range for graph on {n} vertices")
            }
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::DuplicateEdge(u, v) => write!(f, "duplicate edge ({u}, {v})"),
            GraphError::NegativeCost(v) => write!(f, "negative cost at vertex {v}"),
            GraphError::CostLenMismatch { got, n } => {
                write!(f, "{got} costs supplied for {n} vertices")
            }
            GraphError::Disconnected => write!(f, "graph is not connected"),
            GraphError::TooSmall(n) => write!(f, "graph on {n} vertices is too small"),
        }
    }
}

/// A simple undirected graph on vertices `0..n` with per-vertex costs.
///
/// No self-loops, no duplicate edges. Connectivity is not an invariant of the
/// type; callers that require it (the solver does) check [`Graph::is_connected`].
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    /// Sorted adjacency lists.
    adj: Vec<Vec<usize>>,
    /// Adjacency matrix as bit rows, `words` u64 words per vertex.
    bits: Vec<u64>,
    words: usize,
    cost: Vec<Cost>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, e={}, edges={:?})", self.n, self.edges.len(), self.edges)
    }
}

impl Graph {
    /// Builds a graph with unit costs, rejecting loops, duplicates and
    /// out-of-range endpoints. Edge orientation is normalized.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adj,
            bits,
            words,
            cost: vec![Cost::from_integer(1); n],
        })
    }

    /// Same as [`Graph::new`] but collapsing duplicate edges (both
    /// orientations and repeated lines) instead of rejecting them.
    pub fn new_dedup(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        Self::new(n, &edges)
    }

    /// Replaces all vertex costs. Costs must be nonnegative.
    pub fn set_costs(&mut self, costs: Vec<Cost>) -> Result<(), GraphError> {
        if costs.len() != self.n {
            return Err(GraphError::CostLenMismatch { got: costs.len(), n: self.n });
        }
        if let Some(v) = costs.iter().position(|c| *c < Cost::from_integer(0)) {
            return Err(GraphError::NegativeCost(v));
        }
        self.cost = costs;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn cost(&self, v: usize) -> Cost {
        self.cost[v]
    }

    pub fn costs(&self) -> &[Cost] {
        &self.cost
    }

    /// True when every vertex cost is exactly 1.
    pub fn unit_costs(&self) -> bool {
        self.cost.iter().all(|c| *c == Cost::from_integer(1))
    }

    /// True when every vertex cost is an integer.
    pub fn integer_costs(&self) -> bool {
        self.cost.iter().all(|c| c.is_integer())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.reach_count(0, &[]) == self.n
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n - 1) / 2
    }

    /// Number of vertices reachable from `start` in `G - removed`.
    fn reach_count(&self, start: usize, removed: &[bool]) -> usize {
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] && !removed.get(w).copied().unwrap_or(false) {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count
    }

    /// Connected components of `G - removed` as sorted vertex lists, ordered
    /// by smallest member.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        debug_assert_eq!(removed.len(), self.n);
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] || removed[s] {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] && !removed[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `vs` plus the map from new ids to original ids.
    /// `vs` must be sorted, distinct, in range. Costs carry over.
    pub fn induced(&self, vs: &[usize]) -> (Graph, Vec<usize>) {
        debug_assert!(vs.windows(2).all(|w| w[0] < w[1]));
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in vs.iter().enumerate() {
            back[old] = new;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if back[u] != usize::MAX && back[v] != usize::MAX {
                edges.push((back[u], back[v]));
            }
        }
        let mut g = Graph::new(vs.len(), &edges).expect("induced subgraph of a valid graph");
        g.cost = vs.iter().map(|&v| self.cost[v]).collect();
        (g, vs.to_vec())
    }

    /// Relabels vertices by `perm` (new id of vertex `v` is `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let mut g = Graph::new(self.n, &edges).expect("permutation of a valid graph");
        for v in 0..self.n {
            g.cost[perm[v]] = self.cost[v];
        }
        g
    }

    /// Instance metadata: density and the default balance bound.
    pub fn meta(&self) -> Result<InstanceMeta, GraphError> {
        if self.n < 2 {
            return Err(GraphError::TooSmall(self.n));
        }
        let e = self.edges.len();
        Ok(InstanceMeta {
            n: self.n,
            e,
            d: 2.0 * e as f64 / (self.n as f64 * (self.n as f64 - 1.0)),
            beta: default_beta(self.n),
        })
    }
}

/// Instance characteristics: vertex count, edge count, density `2e/(n(n-1))`
/// and the balance bound `beta = floor(2n/3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InstanceMeta {
    pub n: usize,
    pub e: usize,
    pub d: f64,
    pub beta: usize,
}

/// A partition of `V` into classes `A`, `B`, `C` (each stored sorted).
///
/// `C` is the separator candidate; feasibility means no `A`-`B` edge, both
/// `A` and `B` nonempty, and `max(|A|, |B|) <= beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl VertexPartition {
    pub fn new(mut a: Vec<usize>, mut b: Vec<usize>, mut c: Vec<usize>) -> Self {
        a.sort_unstable();
        b.sort_unstable();
        c.sort_unstable();
        VertexPartition { a, b, c }
    }

    pub fn separator_cost(&self, g: &Graph) -> Cost {
        self.c.iter().map(|&v| g.cost(v)).sum()
    }

    /// Cost of `A union B`, the objective the models maximize.
    pub fn kept_cost(&self, g: &Graph) -> Cost {
        self.a.iter().chain(self.b.iter()).map(|&v| g.cost(v)).sum()
    }
}

/// First violated feasibility condition of a candidate partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyA,
    EmptyB,
    CrossingEdge(usize, usize),
    ATooLarge { size: usize, beta: usize },
    BTooLarge { size: usize, beta: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible(Violation),
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotAPartition;

impl fmt::Display for NotAPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "classes do not partition the vertex set")
    }
}

/// Checks that `p` partitions `V` and reports the first violated feasibility
/// condition, if any. Condition order: nonempty sides, no crossing edge (in
/// edge order), then the size bound.
pub fn validate_partition(
    g: &Graph,
    p: &VertexPartition,
    beta: usize,
) -> Result<Verdict, NotAPartition> {
    let n = g.vertex_count();
    let mut tag = vec![0u8; n];
    for (mark, class) in [(1u8, &p.a), (2, &p.b), (3, &p.c)] {
        for &v in class {
            if v >= n || tag[v] != 0 {
                return Err(NotAPartition);
            }
            tag[v] = mark;
        }
    }
    if tag.iter().any(|&t| t == 0) {
        return Err(NotAPartition);
    }
    if p.a.is_empty() {
        return Ok(Verdict::Infeasible(Violation::EmptyA));
    }
    if p.b.is_empty() {
        return Ok(Verdict::Infeasible(Violation::EmptyB));
    }
    for &(u, v) in g.edges() {
        let (tu, tv) = (tag[u], tag[v]);
        if (tu == 1 && tv == 2) || (tu == 2 && tv == 1) {
            return Ok(Verdict::Infeasible(Violation::CrossingEdge(u, v)));
        }
    }
    if p.a.len() > beta {
        return Ok(Verdict::Infeasible(Violation::ATooLarge { size: p.a.len(), beta }));
    }
    if p.b.len() > beta {
        return Ok(Verdict::Infeasible(Violation::BTooLarge { size: p.b.len(), beta }));
    }
    Ok(Verdict::Feasible)
}
