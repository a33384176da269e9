//! DIMACS COLOR (`.col`) reader and writer.
//!
//! Grammar: comment lines `c ...`, one problem line `p edge N M`, edge
//! lines `e i j` with 1-based vertex ids. Repeated edge lines and both
//! orientations collapse to a single undirected edge.

use thiserror::Error;
use vsp_core::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing problem line `p edge N M`")]
    MissingHeader,
    #[error("line {line}: vertex id {id} out of range 1..={n}")]
    VertexRange { line: usize, id: i64, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("bad graph: {0}")]
    Graph(String),
}

impl From<GraphError> for ParseError {
    fn from(e: GraphError) -> Self {
        ParseError::Graph(format!("{e}"))
    }
}

pub fn parse_dimacs_col(text: &str) -> Result<Graph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        let mut it = t.split_whitespace();
        match it.next() {
            Some("p") => {
                if n.is_some() {
                    return Err(ParseError::Syntax { line, msg: "second problem line".into() });
                }
                let kind = it.next().unwrap_or("");
                if !matches!(kind, "edge" | "edges" | "col") {
                    return Err(ParseError::Syntax {
                        line,
                        msg: format!("unknown problem kind `{kind}`"),
                    });
                }
                let nv: usize = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or(ParseError::Syntax { line, msg: "bad vertex count".into() })?;
                let _declared_edges: Option<usize> = it.next().and_then(|s| s.parse().ok());
                n = Some(nv);
            }
            Some("e") => {
                let nv = n.ok_or(ParseError::MissingHeader)?;
                let id = |tok: Option<&str>| -> Result<usize, ParseError> {
                    let raw: i64 = tok
                        .and_then(|s| s.parse().ok())
                        .ok_or(ParseError::Syntax { line, msg: "bad edge line".into() })?;
                    if raw < 1 || raw as usize > nv {
                        return Err(ParseError::VertexRange { line, id: raw, n: nv });
                    }
                    Ok(raw as usize - 1)
                };
                let u = id(it.next())?;
                let v = id(it.next())?;
                edges.push((u, v));
            }
            // node lines (vertex weights in some variants) are ignored
            Some("n") => {}
            Some(other) => {
                return Err(ParseError::Syntax {
                    line,
                    msg: format!("unknown line type `{other}`"),
                });
            }
            None => {}
        }
    }
    let n = n.ok_or(ParseError::MissingHeader)?;
    Ok(Graph::new_dedup(n, &edges)?)
}

/// Serializes with 1-based ids, one `e` line per undirected edge.
pub fn write_dimacs_col(g: &Graph, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("c {name}\n"));
    out.push_str(&format!("p edge {} {}\n", g.vertex_count(), g.edge_count()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_graph() {
        let g = parse_dimacs_col("p edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(0, 1));
    }

    #[test]
    fn duplicates_and_orientations_collapse() {
        let g = parse_dimacs_col("c demo\np edge 3 4\ne 1 2\ne 2 1\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn missing_header_is_an_error() {
        assert!(matches!(
            parse_dimacs_col("e 1 2\n"),
            Err(ParseError::MissingHeader)
        ));
        assert!(matches!(
            parse_dimacs_col("c only comments\n"),
            Err(ParseError::MissingHeader)
        ));
    }

    #[test]
    fn out_of_range_vertex() {
        assert!(matches!(
            parse_dimacs_col("p edge 2 1\ne 1 3\n"),
            Err(ParseError::VertexRange { id: 3, .. })
        ));
        assert!(matches!(
            parse_dimacs_col("p edge 2 1\ne 0 1\n"),
            Err(ParseError::VertexRange { id: 0, .. })
        ));
    }

    #[test]
    fn round_trip_preserves_edges() {
        let text = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
        let g = parse_dimacs_col(text).unwrap();
        let again = parse_dimacs_col(&write_dimacs_col(&g, "roundtrip")).unwrap();
        assert_eq!(g.edges(), again.edges());
    }
}
