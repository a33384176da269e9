//! Deterministic instance generators.
//!
//! The Mycielski tower and the queens graphs reproduce the standard DIMACS
//! coloring instances of the same names (vertex counts, edge counts, and
//! all isomorphism-invariant quantities; labels may differ). The random
//! generator builds connected graphs from a random spanning tree plus
//! density-tuned extra edges.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vsp_core::graph::Graph;

/// `myciel(k)`: start from a single edge and apply the Mycielski
/// construction `k - 1` times. Sizes follow `n -> 2n + 1`,
/// `e -> 3e + n`: k = 3 gives 11/20, k = 4 gives 23/71, up to
/// k = 7 with 191/2360.
pub fn mycielski(k: usize) -> Graph {
    assert!(k >= 1, "mycielski tower starts at k = 1 (a single edge)");
    let mut n = 2usize;
    let mut edges: Vec<(usize, usize)> = vec![(0, 1)];
    for _ in 1..k {
        // copy 0..n, shadows n..2n, apex 2n
        let mut next: Vec<(usize, usize)> = Vec::with_capacity(3 * edges.len() + n);
        for &(u, v) in &edges {
            next.push((u, v));
            next.push((u, n + v));
            next.push((v, n + u));
        }
        for w in 0..n {
            next.push((n + w, 2 * n));
        }
        edges = next;
        n = 2 * n + 1;
    }
    Graph::new(n, &edges).expect("construction yields a simple graph")
}

/// Queens graph on an `r x c` board: one vertex per square, edges between
/// squares sharing a row, column, or diagonal.
pub fn queen(r: usize, c: usize) -> Graph {
    let n = r * c;
    let mut edges = Vec::new();
    for a in 0..n {
        let (ra, ca) = (a / c, a % c);
        for b in (a + 1)..n {
            let (rb, cb) = (b / c, b % c);
            let dr = ra.abs_diff(rb);
            let dc = ca.abs_diff(cb);
            if ra == rb || ca == cb || dr == dc {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, &edges).expect("board graph is simple")
}

/// Connected random graph: spanning tree plus independent extra edges
/// tuned so the expected density is close to `density`. Deterministic in
/// `(n, density, seed)`.
pub fn random_connected(n: usize, density: f64, seed: u64) -> Graph {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        edges.push((parent, v));
    }
    let pairs = n * (n - 1) / 2;
    let target = density * pairs as f64;
    let extra_pairs = (pairs - (n - 1)) as f64;
    let p = if extra_pairs > 0.0 {
        ((target - (n - 1) as f64) / extra_pairs).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let tree: std::collections::BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    for u in 0..n {
        for v in (u + 1)..n {
            if !tree.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new_dedup(n, &edges).expect("generator yields a simple graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mycielski_tower_sizes() {
        // (n, e) of the DIMACS myciel instances
        let expect = [(3, 11, 20), (4, 23, 71), (5, 47, 236), (6, 95, 755), (7, 191, 2360)];
        for (k, n, e) in expect {
            let g = mycielski(k);
            assert_eq!(g.vertex_count(), n, "myciel{k} vertex count");
            assert_eq!(g.edge_count(), e, "myciel{k} edge count");
            assert!(g.is_connected());
        }
    }

    #[test]
    fn queen_sizes() {
        // (r, c, n, e) of the DIMACS queen instances
        let expect = [
            (6, 6, 36, 290),
            (7, 7, 49, 476),
            (8, 8, 64, 728),
            (8, 12, 96, 1368),
            (9, 9, 81, 1056),
            (10, 10, 100, 1470),
            (11, 11, 121, 1980),
            (12, 12, 144, 2596),
        ];
        for (r, c, n, e) in expect {
            let g = queen(r, c);
            assert_eq!(g.vertex_count(), n, "queen{r}_{c} vertex count");
            assert_eq!(g.edge_count(), e, "queen{r}_{c} edge count");
            assert!(g.is_connected());
        }
    }

    #[test]
    fn random_graphs_are_connected_and_reproducible() {
        for seed in 0..5 {
            let g1 = random_connected(10, 0.3, seed);
            let g2 = random_connected(10, 0.3, seed);
            assert!(g1.is_connected());
            assert_eq!(g1.edges(), g2.edges());
        }
        let sparse = random_connected(12, 0.15, 7);
        let dense = random_connected(12, 0.7, 7);
        assert!(sparse.edge_count() < dense.edge_count());
    }
}
