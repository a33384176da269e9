//! Vertex-disjoint path counts: `alpha_ij` over non-adjacent pairs, the
//! global `alpha_min`, and the same quantity restricted to induced
//! subgraphs. `alpha_min` lower-bounds the size of every separator, which is
//! what makes these numbers worth a quadratic number of max-flow calls.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::flow::{build_split_network, FlowOutcome};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaError {
    /// `alpha` is only defined for distinct non-adjacent pairs.
    AdjacentPair(usize, usize),
    /// A complete graph has no non-adjacent pair (and no separator with
    /// nonempty `A`, `B`).
    CompleteGraph,
    /// The induced subgraph must be connected.
    DisconnectedSubgraph,
    /// The induced subgraph is a clique: no pair to take a minimum over.
    CliqueSubgraph,
}

impl fmt::Display for AlphaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaError::AdjacentPair(i, j) => {
                write!(f, "alpha undefined for adjacent or equal pair ({i}, {j})")
            }
            AlphaError::CompleteGraph => write!(f, "complete graph has no non-adjacent pair"),
            AlphaError::DisconnectedSubgraph => write!(f, "induced subgraph is disconnected"),
            AlphaError::CliqueSubgraph => write!(f, "induced subgraph is a clique"),
        }
    }
}

/// `alpha_ij` for every non-adjacent unordered pair, plus the minimum.
#[derive(Clone, Debug)]
pub struct AlphaTable {
    n: usize,
    /// Flat upper-triangular storage: entry for `(i, j)`, `i < j`, at
    /// `i * n + j`; `None` on adjacent pairs and the diagonal.
    values: Vec<Option<u32>>,
    alpha_min: u32,
}

impl AlphaTable {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `alpha` for an unordered non-adjacent pair, `None` otherwise.
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return None;
        }
        let (i, j) = (i.min(j), i.max(j));
        self.values[i * self.n + j]
    }

    pub fn alpha_min(&self) -> u32 {
        self.alpha_min
    }

    /// Stored pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            ((i + 1)..n).filter_map(move |j| self.values[i * n + j].map(|a| (i, j, a)))
        })
    }

    pub fn pair_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    /// Rebuilds a table from externally computed `(i, j, alpha)` entries
    /// (e.g. a parallel driver); entries may arrive in any order.
    pub fn from_entries(n: usize, entries: &[(usize, usize, u32)]) -> Self {
        let mut values = vec![None; n * n];
        let mut alpha_min = u32::MAX;
        for &(i, j, a) in entries {
            let (i, j) = (i.min(j), i.max(j));
            values[i * n + j] = Some(a);
            alpha_min = alpha_min.min(a);
        }
        AlphaTable { n, values, alpha_min }
    }
}

/// Maximum number of vertex-disjoint chains between non-adjacent `i`, `j`.
pub fn alpha_pair(g: &Graph, i: usize, j: usize) -> Result<u32, AlphaError> {
    alpha_pair_with_cut(g, i, j).map(|o| o.value as u32)
}

/// Same as [`alpha_pair`] but also returning the canonical minimum vertex
/// cut realizing the bound.
pub fn alpha_pair_with_cut(g: &Graph, i: usize, j: usize) -> Result<FlowOutcome, AlphaError> {
    let net = build_split_network(g, i, j).map_err(|e| AlphaError::AdjacentPair(e.s, e.t))?;
    Ok(net.max_flow())
}

/// The non-adjacent unordered pairs of `g` in lexicographic order.
pub fn non_adjacent_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !g.has_edge(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `alpha_ij` for every non-adjacent pair of a connected, non-complete
/// graph. Pairs are processed in lexicographic order.
pub fn alpha_table(g: &Graph) -> Result<AlphaTable, AlphaError> {
    let n = g.vertex_count();
    let pairs = non_adjacent_pairs(g);
    if pairs.is_empty() {
        return Err(AlphaError::CompleteGraph);
    }
    let mut values = vec![None; n * n];
    let mut alpha_min = u32::MAX;
    for (i, j) in pairs {
        let a = alpha_pair(g, i, j).expect("pair list is non-adjacent");
        debug_assert!(
            !g.is_connected() || (1..=(n as u32 - 2)).contains(&a),
            "alpha out of range on a connected graph"
        );
        values[i * n + j] = Some(a);
        alpha_min = alpha_min.min(a);
    }
    Ok(AlphaTable { n, values, alpha_min })
}

/// Minimum `alpha_ij` only. Stops early when a pair with `alpha = 1` turns
/// up, since 1 is the least possible value on a connected graph.
pub fn alpha_min_only(g: &Graph) -> Result<u32, AlphaError> {
    let pairs = non_adjacent_pairs(g);
    if pairs.is_empty() {
        return Err(AlphaError::CompleteGraph);
    }
    let mut best = u32::MAX;
    for (i, j) in pairs {
        let a = alpha_pair(g, i, j).expect("pair list is non-adjacent");
        best = best.min(a);
        if best <= 1 {
            break;
        }
    }
    Ok(best)
}

/// `alpha_0` of the subgraph induced by `vs`: the minimum over non-adjacent
/// pairs inside `vs` of disjoint-path counts computed within the subgraph.
/// `vs` must be sorted and induce a connected non-clique subgraph.
pub fn alpha_subgraph(g: &Graph, vs: &[usize]) -> Result<u32, AlphaError> {
    let (sub, _) = g.induced(vs);
    if !sub.is_connected() {
        return Err(AlphaError::DisconnectedSubgraph);
    }
    match alpha_min_only(&sub) {
        Ok(a) => Ok(a),
        Err(AlphaError::CompleteGraph) => Err(AlphaError::CliqueSubgraph),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_and_cycle_pairs() {
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(alpha_pair(&star, 1, 2), Ok(1));
        let cycle4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(alpha_pair(&cycle4, 0, 2), Ok(2));
        assert_eq!(
            alpha_pair(&cycle4, 0, 1),
            Err(AlphaError::AdjacentPair(0, 1))
        );
    }

    #[test]
    fn table_on_five_cycle() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let t = alpha_table(&g).unwrap();
        assert_eq!(t.pair_count(), 5);
        assert_eq!(t.alpha_min(), 2);
        for (_, _, a) in t.pairs() {
            assert_eq!(a, 2);
        }
        assert_eq!(t.get(0, 2), Some(2));
        assert_eq!(t.get(2, 0), Some(2));
        assert_eq!(t.get(0, 1), None);
        assert_eq!(alpha_min_only(&g), Ok(2));
    }

    #[test]
    fn complete_graph_is_rejected() {
        let k3 = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(matches!(alpha_table(&k3), Err(AlphaError::CompleteGraph)));
        assert!(matches!(alpha_min_only(&k3), Err(AlphaError::CompleteGraph)));
    }

    #[test]
    fn subgraph_alpha() {
        // 5-cycle: whole cycle is 2-connected
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(alpha_subgraph(&g, &[0, 1, 2, 3, 4]), Ok(2));
        // a path inside it has a cut vertex
        assert_eq!(alpha_subgraph(&g, &[0, 1, 2]), Ok(1));
        // disconnected induced subgraph
        assert_eq!(
            alpha_subgraph(&g, &[0, 2]),
            Err(AlphaError::DisconnectedSubgraph)
        );
        // clique subgraph
        assert_eq!(alpha_subgraph(&g, &[0, 1]), Err(AlphaError::CliqueSubgraph));
    }

    #[test]
    fn whole_graph_subgraph_equals_alpha_min() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        let all: alloc::vec::Vec<usize> = (0..6).collect();
        assert_eq!(
            alpha_subgraph(&g, &all).unwrap(),
            alpha_table(&g).unwrap().alpha_min()
        );
    }

    #[test]
    fn table_from_entries_merges() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let seq = alpha_table(&g).unwrap();
        let entries: alloc::vec::Vec<_> = seq.pairs().collect();
        let merged = AlphaTable::from_entries(4, &entries);
        assert_eq!(merged.alpha_min(), seq.alpha_min());
        assert_eq!(merged.get(0, 2), seq.get(0, 2));
    }
}
