//! MatrixMarket coordinate reader and the column intersection graph.
//!
//! Only the sparsity pattern matters here: every listed entry counts as a
//! structural nonzero regardless of its value, and symmetric storage is
//! expanded. The intersection graph has one vertex per column and an edge
//! between two columns exactly when they share a row with structural
//! nonzeros in both.

use std::collections::BTreeSet;

use thiserror::Error;
use vsp_core::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum MmError {
    #[error("missing or malformed `%%MatrixMarket` header")]
    BadHeader,
    #[error("only `matrix coordinate` objects are supported, got `{0}`")]
    Unsupported(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: entry ({i}, {j}) outside {rows} x {cols}")]
    EntryRange { line: usize, i: i64, j: i64, rows: usize, cols: usize },
    #[error("empty pattern")]
    EmptyPattern,
    #[error("bad graph: {0}")]
    Graph(String),
}

impl From<GraphError> for MmError {
    fn from(e: GraphError) -> Self {
        MmError::Graph(format!("{e}"))
    }
}

/// Structural nonzero positions of a sparse matrix (0-based, deduplicated,
/// symmetric storage already expanded).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePattern {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize)>,
}

pub fn parse_matrix_market(text: &str) -> Result<SparsePattern, MmError> {
    let mut lines = text.lines().enumerate();

    // header: %%MatrixMarket matrix coordinate <field> <symmetry>
    let (_, header) = lines.next().ok_or(MmError::BadHeader)?;
    let toks: Vec<String> = header.split_whitespace().map(|t| t.to_lowercase()).collect();
    if toks.len() < 4 || toks[0] != "%%matrixmarket" {
        return Err(MmError::BadHeader);
    }
    if toks[1] != "matrix" || toks[2] != "coordinate" {
        return Err(MmError::Unsupported(format!("{} {}", toks[1], toks[2])));
    }
    let symmetry = toks.last().cloned().unwrap_or_default();
    let symmetric = matches!(symmetry.as_str(), "symmetric" | "skew-symmetric" | "hermitian");

    // size line: rows cols nnz (after any % comments)
    let mut size: Option<(usize, usize, usize)> = None;
    let mut entries: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let mut it = t.split_whitespace();
        if size.is_none() {
            let mut next = |what: &str| -> Result<usize, MmError> {
                it.next()
                    .and_then(|s| s.parse().ok())
                    .ok_or(MmError::Syntax { line, msg: format!("bad {what} in size line") })
            };
            let r = next("row count")?;
            let c = next("column count")?;
            let _nnz = next("entry count")?;
            size = Some((r, c, _nnz));
            continue;
        }
        let (rows, cols, _) = size.unwrap();
        let i: i64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(MmError::Syntax { line, msg: "bad row index".into() })?;
        let j: i64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(MmError::Syntax { line, msg: "bad column index".into() })?;
        if i < 1 || i as usize > rows || j < 1 || j as usize > cols {
            return Err(MmError::EntryRange { line, i, j, rows, cols });
        }
        let (i, j) = (i as usize - 1, j as usize - 1);
        entries.insert((i, j));
        if symmetric && i != j {
            entries.insert((j, i));
        }
    }
    let (rows, cols, _) = size.ok_or(MmError::BadHeader)?;
    Ok(SparsePattern { rows, cols, entries: entries.into_iter().collect() })
}

/// Column intersection graph: vertex per column, edge when two columns
/// share at least one row index with structural nonzeros in both.
pub fn intersection_graph(pattern: &SparsePattern) -> Result<Graph, MmError> {
    if pattern.entries.is_empty() {
        return Err(MmError::EmptyPattern);
    }
    let mut row_cols: Vec<Vec<usize>> = vec![Vec::new(); pattern.rows];
    for &(i, j) in &pattern.entries {
        row_cols[i].push(j);
    }
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for cols in &mut row_cols {
        cols.sort_unstable();
        cols.dedup();
        for a in 0..cols.len() {
            for b in (a + 1)..cols.len() {
                edges.insert((cols[a], cols[b]));
            }
        }
    }
    let edge_list: Vec<(usize, usize)> = edges.into_iter().collect();
    Ok(Graph::new(pattern.cols, &edge_list)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_pattern() {
        let text = "%%MatrixMarket matrix coordinate real general\n3 3 3\n1 1 1.0\n2 2 1.0\n3 3 1.0\n";
        let p = parse_matrix_market(text).unwrap();
        assert_eq!(p.entries.len(), 3);
        // diagonal-only: edgeless intersection graph
        let g = intersection_graph(&p).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(!g.is_connected());
    }

    #[test]
    fn symmetric_storage_expands() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n3 3 4\n1 1 2.0\n2 1 -1.0\n3 1 0.5\n3 3 1.0\n";
        let p = parse_matrix_market(text).unwrap();
        // one diagonal + two off-diagonal pairs + one more diagonal
        assert_eq!(p.entries.len(), 2 + 2 * 2);
        assert!(p.entries.contains(&(0, 1)) && p.entries.contains(&(1, 0)));
    }

    #[test]
    fn shared_row_makes_an_edge() {
        let text = "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n1 2 1.0\n";
        let p = parse_matrix_market(text).unwrap();
        let g = intersection_graph(&p).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn pattern_field_supported() {
        let text = "%%MatrixMarket matrix coordinate pattern symmetric\n% comment\n3 3 2\n2 1\n3 2\n";
        let p = parse_matrix_market(text).unwrap();
        let g = intersection_graph(&p).unwrap();
        // rows: {r1: c0? ...}: entries (1,0),(0,1),(2,1),(1,2)
        // row 0: cols {1}; row 1: cols {0, 2}; row 2: cols {1}
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_matrix_market(""), Err(MmError::BadHeader)));
        assert!(matches!(
            parse_matrix_market("%%MatrixMarket matrix array real general\n2 2\n"),
            Err(MmError::Unsupported(_))
        ));
        assert!(matches!(
            parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n"),
            Err(MmError::EntryRange { .. })
        ));
        let empty = SparsePattern { rows: 2, cols: 2, entries: vec![] };
        assert!(matches!(intersection_graph(&empty), Err(MmError::EmptyPattern)));
    }

    #[test]
    fn column_permutation_permutes_vertices() {
        // pattern and its column-swapped twin give isomorphic graphs
        let base = "%%MatrixMarket matrix coordinate real general\n3 3 4\n1 1 1\n1 2 1\n2 2 1\n2 3 1\n";
        let swapped = "%%MatrixMarket matrix coordinate real general\n3 3 4\n1 3 1\n1 2 1\n2 2 1\n2 1 1\n";
        let g1 = intersection_graph(&parse_matrix_market(base).unwrap()).unwrap();
        let g2 = intersection_graph(&parse_matrix_market(swapped).unwrap()).unwrap();
        // swap columns 1 and 3 (0-based 0 and 2)
        let perm = [2, 1, 0];
        assert_eq!(g1.permuted(&perm).edges(), g2.edges());
    }
}
