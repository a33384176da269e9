//! Vertex-splitting flow networks and push-relabel maximum flow.
//!
//! To count vertex-disjoint paths between non-adjacent `s` and `t`, every
//! edge becomes two opposite arcs and every other vertex `x` splits into
//! `x'` and `x''` joined by a unit-capacity arc; arcs into `x` enter `x'`,
//! arcs out of `x` leave `x''`. The maximum `s`-`t` flow then equals the
//! maximum number of vertex-disjoint `s`-`t` paths, and the saturated split
//! arcs on the cut boundary form a minimum vertex separator (Menger).

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Directed flow network from splitting the internal vertices of a graph
/// for one `(source, sink)` pair.
///
/// Node ids: `0` = source, `1` = sink, internal vertex with rank `k` (in
/// increasing original id) has in-node `2 + 2k` and out-node `3 + 2k`.
pub struct SplitNetwork {
    node_count: usize,
    source: usize,
    sink: usize,
    /// CSR arc storage: arcs `arc_start[v]..arc_start[v+1]` leave `v`.
    arc_start: Vec<u32>,
    arc_to: Vec<u32>,
    arc_rev: Vec<u32>,
    /// Residual capacities; forward/reverse arcs are stored pairwise via
    /// `arc_rev`.
    arc_cap: Vec<i32>,
    /// Original vertex id per internal rank.
    internal_vertex: Vec<usize>,
    /// Capacity standing in for "infinite" (any value > max possible flow).
    big: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacentEndpoints {
    pub s: usize,
    pub t: usize,
}

/// Max-flow value together with the canonical minimum vertex cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowOutcome {
    pub value: usize,
    /// Original vertex ids whose split arc crosses the source-side boundary
    /// of the final residual graph, sorted ascending.
    pub min_cut: Vec<usize>,
}

/// Builds the split network for non-adjacent `s != t`.
pub fn build_split_network(
    g: &Graph,
    s: usize,
    t: usize,
) -> Result<SplitNetwork, AdjacentEndpoints> {
    assert!(s < g.vertex_count() && t < g.vertex_count());
    if s == t || g.has_edge(s, t) {
        return Err(AdjacentEndpoints { s, t });
    }
    let n = g.vertex_count();
    let big = n as i32;

    let mut rank = vec![usize::MAX; n];
    let mut internal_vertex = Vec::with_capacity(n - 2);
    for v in 0..n {
        if v != s && v != t {
            rank[v] = internal_vertex.len();
            internal_vertex.push(v);
        }
    }
    let node_count = 2 + 2 * internal_vertex.len();
    // entry point of a vertex (where arcs toward it land)
    let enter = |v: usize| -> usize {
        if v == s {
            0
        } else if v == t {
            1
        } else {
            2 + 2 * rank[v]
        }
    };
    // exit point of a vertex (where arcs leaving it start)
    let exit = |v: usize| -> usize {
        if v == s {
            0
        } else if v == t {
            1
        } else {
            3 + 2 * rank[v]
        }
    };

    // Split arcs first (rank order), then two opposite arcs per edge.
    let mut raw: Vec<(usize, usize, i32)> =
        Vec::with_capacity(internal_vertex.len() + 2 * g.edge_count());
    for &v in &internal_vertex {
        raw.push((enter(v), exit(v), 1));
    }
    for &(u, v) in g.edges() {
        raw.push((exit(u), enter(v), big));
        raw.push((exit(v), enter(u), big));
    }

    // CSR with paired reverse arcs (residual capacity 0)
    let mut deg = vec![0u32; node_count];
    for &(a, b, _) in &raw {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut arc_start = vec![0u32; node_count + 1];
    for v in 0..node_count {
        arc_start[v + 1] = arc_start[v] + deg[v];
    }
    let total = arc_start[node_count] as usize;
    let mut arc_to = vec![0u32; total];
    let mut arc_rev = vec![0u32; total];
    let mut arc_cap = vec![0i32; total];
    let mut fill = arc_start.clone();
    for &(a, b, cap) in &raw {
        let fa = fill[a];
        let fb = fill[b];
        fill[a] += 1;
        fill[b] += 1;
        arc_to[fa as usize] = b as u32;
        arc_cap[fa as usize] = cap;
        arc_rev[fa as usize] = fb;
        arc_to[fb as usize] = a as u32;
        arc_cap[fb as usize] = 0;
        arc_rev[fb as usize] = fa;
    }

    Ok(SplitNetwork {
        node_count,
        source: 0,
        sink: 1,
        arc_start,
        arc_to,
        arc_rev,
        arc_cap,
        internal_vertex,
        big,
    })
}

impl SplitNetwork {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Forward arcs (split arcs plus two per edge).
    pub fn arc_count(&self) -> usize {
        self.arc_to.len() / 2
    }

    pub fn big_capacity(&self) -> i32 {
        self.big
    }

    /// FIFO push-relabel with the gap heuristic and a global relabeling
    /// every `node_count` relabel operations. Runs to completion, so the
    /// final residual graph yields the canonical minimum cut.
    pub fn max_flow(mut self) -> FlowOutcome {
        let n = self.node_count;
        let (s, t) = (self.source, self.sink);
        let mut height = vec![0u32; n];
        let mut excess = vec![0i64; n];
        let mut count = vec![0u32; 2 * n + 2];
        let mut queue: Vec<u32> = Vec::with_capacity(n);
        let mut in_queue = vec![false; n];
        let mut head = 0usize;
        let mut relabels = 0usize;

        self.global_relabel(&mut height, &mut count);

        // saturate all source arcs
        for a in self.arc_start[s] as usize..self.arc_start[s + 1] as usize {
            let cap = self.arc_cap[a];
            if cap > 0 {
                let to = self.arc_to[a] as usize;
                self.arc_cap[a] = 0;
                self.arc_cap[self.arc_rev[a] as usize] += cap;
                excess[to] += cap as i64;
                if to != t && to != s && !in_queue[to] {
                    in_queue[to] = true;
                    queue.push(to as u32);
                }
            }
        }

        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            in_queue[u] = false;
            if excess[u] <= 0 {
                continue;
            }
            // discharge u: alternate push sweeps and relabels
            'discharge: loop {
                let hu = height[u];
                for a in self.arc_start[u] as usize..self.arc_start[u + 1] as usize {
                    let cap = self.arc_cap[a];
                    if cap <= 0 {
                        continue;
                    }
                    let v = self.arc_to[a] as usize;
                    if hu != height[v] + 1 {
                        continue;
                    }
                    let delta = (cap as i64).min(excess[u]) as i32;
                    self.arc_cap[a] -= delta;
                    self.arc_cap[self.arc_rev[a] as usize] += delta;
                    excess[u] -= delta as i64;
                    excess[v] += delta as i64;
                    if v != s && v != t && !in_queue[v] {
                        in_queue[v] = true;
                        queue.push(v as u32);
                    }
                    if excess[u] == 0 {
                        break 'discharge;
                    }
                }
                // still in excess: relabel
                let old = height[u];
                let mut best = 2 * n as u32 + 1;
                for a in self.arc_start[u] as usize..self.arc_start[u + 1] as usize {
                    if self.arc_cap[a] > 0 {
                        best = best.min(height[self.arc_to[a] as usize] + 1);
                    }
                }
                debug_assert!(best <= 2 * n as u32, "active node with no residual arc");
                count[old as usize] -= 1;
                height[u] = best;
                count[best as usize] += 1;
                // gap heuristic: heights strictly between the gap and n are
                // cut off from the sink
                if count[old as usize] == 0 && (old as usize) < n {
                    for v in 0..n {
                        if v != s && height[v] > old && height[v] < n as u32 {
                            count[height[v] as usize] -= 1;
                            height[v] = n as u32 + 1;
                            count[n + 1] += 1;
                        }
                    }
                }
                relabels += 1;
                if relabels >= n {
                    relabels = 0;
                    self.global_relabel(&mut height, &mut count);
                }
            }
        }

        let value = excess[t].max(0) as usize;

        // canonical min cut: residual-reachable set from the source
        let mut reach = vec![false; n];
        reach[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for a in self.arc_start[u] as usize..self.arc_start[u + 1] as usize {
                let v = self.arc_to[a] as usize;
                if self.arc_cap[a] > 0 && !reach[v] {
                    reach[v] = true;
                    stack.push(v);
                }
            }
        }
        debug_assert!(!reach[t], "sink residual-reachable after max flow");
        let mut min_cut = Vec::new();
        for (k, &v) in self.internal_vertex.iter().enumerate() {
            if reach[2 + 2 * k] && !reach[3 + 2 * k] {
                min_cut.push(v);
            }
        }
        debug_assert_eq!(min_cut.len(), value, "cut size must equal flow value");

        FlowOutcome { value, min_cut }
    }

    /// Exact residual distance labels: `d(v, sink)` on the sink side,
    /// `n + d(v, source)` elsewhere. Both parts never decrease a valid
    /// height, so the labeling stays valid across calls.
    fn global_relabel(&self, height: &mut [u32], count: &mut [u32]) {
        let n = self.node_count;
        let unset = u32::MAX;
        for h in height.iter_mut() {
            *h = unset;
        }
        for c in count.iter_mut() {
            *c = 0;
        }

        // distances to the sink over reverse residual arcs
        height[self.sink] = 0;
        let mut bfs = vec![self.sink as u32];
        let mut head = 0;
        while head < bfs.len() {
            let v = bfs[head] as usize;
            head += 1;
            for a in self.arc_start[v] as usize..self.arc_start[v + 1] as usize {
                let u = self.arc_to[a] as usize;
                if self.arc_cap[self.arc_rev[a] as usize] > 0
                    && height[u] == unset
                    && u != self.source
                {
                    height[u] = height[v] + 1;
                    bfs.push(u as u32);
                }
            }
        }

        // remaining nodes: n + distance to the source
        height[self.source] = n as u32;
        bfs.clear();
        bfs.push(self.source as u32);
        head = 0;
        while head < bfs.len() {
            let v = bfs[head] as usize;
            head += 1;
            for a in self.arc_start[v] as usize..self.arc_start[v + 1] as usize {
                let u = self.arc_to[a] as usize;
                if self.arc_cap[self.arc_rev[a] as usize] > 0 && height[u] == unset {
                    height[u] = height[v] + 1;
                    bfs.push(u as u32);
                }
            }
        }
        // nodes reaching neither side carry no useful excess; park them high
        for h in height.iter_mut() {
            if *h == unset {
                *h = 2 * n as u32;
            }
        }
        for v in 0..n {
            count[height[v] as usize] += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn flow_between(g: &Graph, s: usize, t: usize) -> FlowOutcome {
        build_split_network(g, s, t).unwrap().max_flow()
    }

    #[test]
    fn path_through_single_vertex() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let out = flow_between(&g, 0, 2);
        assert_eq!(out.value, 1);
        assert_eq!(out.min_cut, vec![1]);
    }

    #[test]
    fn four_cycle_has_two_disjoint_chains() {
        // s=0, u=1, t=2, v=3 around a cycle
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let out = flow_between(&g, 0, 2);
        assert_eq!(out.value, 2);
        assert_eq!(out.min_cut, vec![1, 3]);
    }

    #[test]
    fn k23_center_pair() {
        // degree-3 vertices 0 and 1; middles 2,3,4
        let g = Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let out = flow_between(&g, 0, 1);
        assert_eq!(out.value, 3);
        assert_eq!(out.min_cut, vec![2, 3, 4]);
    }

    #[test]
    fn star_leaves_meet_at_center() {
        let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let out = flow_between(&g, 1, 2);
        assert_eq!(out.value, 1);
        assert_eq!(out.min_cut, vec![0]);
    }

    #[test]
    fn adjacency_is_rejected() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(build_split_network(&g, 0, 1).is_err());
        assert!(build_split_network(&g, 1, 1).is_err());
    }

    #[test]
    fn network_shape_matches_construction() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let net = build_split_network(&g, 0, 2).unwrap();
        assert_eq!(net.node_count(), 2 + 2 * 2);
        // one split arc per internal vertex, two opposite arcs per edge
        assert_eq!(net.arc_count(), 2 + 2 * 4);
        assert_eq!(net.big_capacity(), 4);
    }

    #[test]
    fn disconnected_pair_has_zero_flow() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let out = flow_between(&g, 0, 3);
        assert_eq!(out.value, 0);
        assert!(out.min_cut.is_empty());
    }
}
