//! Vertex-cost side files: lines `vertex_id cost` with 1-based ids and
//! decimal costs. Unlisted vertices keep the default cost 1.

use thiserror::Error;
use vsp_core::graph::{Cost, Graph};

#[derive(Debug, Error)]
pub enum CostError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: vertex id {id} out of range 1..={n}")]
    VertexRange { line: usize, id: i64, n: usize },
    #[error("line {line}: negative cost")]
    Negative { line: usize },
}

pub fn parse_cost_file(text: &str, n: usize) -> Result<Vec<Cost>, CostError> {
    let mut costs = vec![Cost::from_integer(1); n];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') || t.starts_with('c') {
            continue;
        }
        let mut it = t.split_whitespace();
        let id: i64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(CostError::Syntax { line, msg: "bad vertex id".into() })?;
        if id < 1 || id as usize > n {
            return Err(CostError::VertexRange { line, id, n });
        }
        let tok = it
            .next()
            .ok_or(CostError::Syntax { line, msg: "missing cost".into() })?;
        let c = parse_decimal(tok).ok_or(CostError::Syntax { line, msg: "bad cost".into() })?;
        if c < Cost::from_integer(0) {
            return Err(CostError::Negative { line });
        }
        costs[id as usize - 1] = c;
    }
    Ok(costs)
}

/// Decimal literal to an exact rational (`1.25` becomes `5/4`).
pub fn parse_decimal(tok: &str) -> Option<Cost> {
    let neg = tok.starts_with('-');
    let body = tok.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits: String = format!("{int_part}{frac_part}");
    let numer: i64 = digits.parse().ok()?;
    let denom = 10i64.checked_pow(frac_part.len() as u32)?;
    let v = Cost::new(numer, denom);
    Some(if neg { -v } else { v })
}

pub fn apply_cost_file(g: &mut Graph, text: &str) -> Result<(), CostError> {
    let costs = parse_cost_file(text, g.vertex_count())?;
    g.set_costs(costs)
        .map_err(|e| CostError::Syntax { line: 0, msg: format!("{e}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_decimal("3"), Some(Cost::from_integer(3)));
        assert_eq!(parse_decimal("0.5"), Some(Cost::new(1, 2)));
        assert_eq!(parse_decimal("1.25"), Some(Cost::new(5, 4)));
        assert_eq!(parse_decimal("x"), None);
        assert_eq!(parse_decimal(""), None);
    }

    #[test]
    fn cost_file_round_trip() {
        let mut g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        apply_cost_file(&mut g, "# header\n1 2.5\n3 0\n").unwrap();
        assert_eq!(g.cost(0), Cost::new(5, 2));
        assert_eq!(g.cost(1), Cost::from_integer(1));
        assert_eq!(g.cost(2), Cost::from_integer(0));
        assert!(apply_cost_file(&mut g, "4 1\n").is_err());
        assert!(apply_cost_file(&mut g, "1 -2\n").is_err());
    }
}
