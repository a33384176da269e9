//! Naive reference implementations used only to cross-check the optimized
//! paths. Everything here is deliberately independent of the code it
//! verifies: different algorithms, different data structures, no shared
//! helpers beyond [`Graph`] accessors.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;

/// Maximum number of internally vertex-disjoint `s`-`t` paths, computed by
/// BFS augmenting paths on a dense matrix form of the split network.
///
/// Cross-checks the push-relabel engine. `s` and `t` must be distinct and
/// non-adjacent.
pub fn max_vertex_disjoint_paths(g: &Graph, s: usize, t: usize) -> usize {
    assert!(s != t && !g.has_edge(s, t));
    let n = g.vertex_count();
    // node 2v = v-in, 2v+1 = v-out; source/sink use their own pair fused
    let nn = 2 * n;
    let big = n as i32;
    let mut cap = vec![0i32; nn * nn];
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        cap[(2 * v) * nn + 2 * v + 1] = c;
    }
    for &(u, v) in g.edges() {
        cap[(2 * u + 1) * nn + 2 * v] = big;
        cap[(2 * v + 1) * nn + 2 * u] = big;
    }
    let (src, dst) = (2 * s, 2 * t + 1);
    let mut total = 0usize;
    loop {
        // BFS for a shortest augmenting path
        let mut prev = vec![usize::MAX; nn];
        let mut q = vec![src];
        prev[src] = src;
        let mut head = 0;
        while head < q.len() && prev[dst] == usize::MAX {
            let u = q[head];
            head += 1;
            for v in 0..nn {
                if prev[v] == usize::MAX && cap[u * nn + v] > 0 {
                    prev[v] = u;
                    q.push(v);
                }
            }
        }
        if prev[dst] == usize::MAX {
            return total;
        }
        let mut bottleneck = i32::MAX;
        let mut v = dst;
        while v != src {
            bottleneck = bottleneck.min(cap[prev[v] * nn + v]);
            v = prev[v];
        }
        let mut v = dst;
        while v != src {
            cap[prev[v] * nn + v] -= bottleneck;
            cap[v * nn + prev[v]] += bottleneck;
            v = prev[v];
        }
        total += bottleneck as usize;
    }
}

/// Size of a minimum vertex set `S` (disjoint from `{s, t}`) whose removal
/// disconnects `s` from `t`, by subset enumeration in increasing size.
/// Returns `None` when no such set exists (only when `s`, `t` adjacent).
///
/// Guarded to `n <= 24`.
pub fn min_vertex_cut(g: &Graph, s: usize, t: usize) -> Option<usize> {
    let n = g.vertex_count();
    assert!(n <= 24, "brute-force vertex cut limited to n <= 24");
    assert!(s != t);
    let internal: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let k = internal.len();
    for size in 0..=k {
        let mut chosen = vec![0usize; size];
        if pick_cut(g, s, t, &internal, &mut chosen, 0, 0, size) {
            return Some(size);
        }
    }
    None
}

fn pick_cut(
    g: &Graph,
    s: usize,
    t: usize,
    internal: &[usize],
    chosen: &mut [usize],
    depth: usize,
    start: usize,
    size: usize,
) -> bool {
    if depth == size {
        let mut removed = vec![false; g.vertex_count()];
        for &v in chosen.iter() {
            removed[v] = true;
        }
        return !reaches(g, s, t, &removed);
    }
    for idx in start..internal.len() {
        chosen[depth] = internal[idx];
        if pick_cut(g, s, t, internal, chosen, depth + 1, idx + 1, size) {
            return true;
        }
    }
    false
}

fn reaches(g: &Graph, s: usize, t: usize, removed: &[bool]) -> bool {
    if removed[s] || removed[t] {
        return false;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        if u == t {
            return true;
        }
        for &w in g.neighbors(u) {
            if !seen[w] && !removed[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// All feasible ab-separator incidence vectors by flat ternary enumeration
/// over the free vertices (0 = C, 1 = A, 2 = B per trit).
///
/// Layout matches the ab-fixed models: free vertices in increasing id order,
/// the `x_ia` block followed by the `x_ib` block. Guarded to `n <= 14`.
pub fn enumerate_incidence_vectors_ternary(
    g: &Graph,
    a: usize,
    b: usize,
    beta: usize,
) -> Vec<Vec<u8>> {
    let n = g.vertex_count();
    assert!(n <= 14, "ternary enumeration limited to n <= 14");
    assert!(a != b && !g.has_edge(a, b));
    let free: Vec<usize> = (0..n).filter(|&v| v != a && v != b).collect();
    let f = free.len();
    let mut out = Vec::new();
    let total = 3usize.pow(f as u32);
    let mut side = vec![0u8; n]; // 0 = C, 1 = A, 2 = B
    for code in 0..total {
        let mut c = code;
        for &v in &free {
            side[v] = (c % 3) as u8;
            c /= 3;
        }
        side[a] = 1;
        side[b] = 2;
        let size_a = 1 + free.iter().filter(|&&v| side[v] == 1).count();
        let size_b = 1 + free.iter().filter(|&&v| side[v] == 2).count();
        if size_a.max(size_b) > beta {
            continue;
        }
        if g.edges()
            .iter()
            .any(|&(u, v)| side[u] + side[v] == 3 && side[u] != 0 && side[v] != 0)
        {
            continue;
        }
        let mut x = vec![0u8; 2 * f];
        for (pos, &v) in free.iter().enumerate() {
            if side[v] == 1 {
                x[pos] = 1;
            } else if side[v] == 2 {
                x[f + pos] = 1;
            }
        }
        out.push(x);
    }
    out
}
