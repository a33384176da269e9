//! Run records: one row per solved (or measured) instance, mirroring the
//! result-table columns plus the objective, emitted as JSON lines or CSV
//! with a fixed column order.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub instance: String,
    pub n: usize,
    pub e: usize,
    pub d: f64,
    pub beta: usize,
    pub alpha_min: Option<u32>,
    pub objective: Option<f64>,
    pub separator_size: Option<usize>,
    pub bound: Option<f64>,
    pub nodes: u64,
    pub cuts_chain: u64,
    pub cuts_alpha_pair: u64,
    pub cuts_subgraph: u64,
    pub wall_secs: f64,
    pub status: String,
    pub config_hash: String,
}

pub const CSV_HEADER: &str = "instance,n,e,d,beta,alpha_min,objective,separator_size,bound,nodes,cuts_chain,cuts_alpha_pair,cuts_subgraph,wall_secs,status,config_hash";

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

impl RunRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.4},{},{},{},{},{},{},{},{},{},{:.3},{},{}",
            self.instance,
            self.n,
            self.e,
            self.d,
            self.beta,
            opt(&self.alpha_min),
            opt(&self.objective),
            opt(&self.separator_size),
            opt(&self.bound),
            self.nodes,
            self.cuts_chain,
            self.cuts_alpha_pair,
            self.cuts_subgraph,
            self.wall_secs,
            self.status,
            self.config_hash
        )
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }
}

/// Aggregate row with the means of the numeric columns, labeled `mean`,
/// mirroring the result tables' closing rows.
pub fn mean_row(records: &[RunRecord]) -> Option<RunRecord> {
    if records.is_empty() {
        return None;
    }
    let k = records.len() as f64;
    let mean_u64 = |f: &dyn Fn(&RunRecord) -> u64| (records.iter().map(f).sum::<u64>() as f64 / k) as u64;
    let mean_f = |f: &dyn Fn(&RunRecord) -> f64| records.iter().map(f).sum::<f64>() / k;
    let objective = {
        let vals: Vec<f64> = records.iter().filter_map(|r| r.objective).collect();
        if vals.is_empty() {
            None
        } else {
            Some(vals.iter().sum::<f64>() / vals.len() as f64)
        }
    };
    Some(RunRecord {
        instance: "mean".into(),
        n: (records.iter().map(|r| r.n).sum::<usize>() as f64 / k) as usize,
        e: (records.iter().map(|r| r.e).sum::<usize>() as f64 / k) as usize,
        d: mean_f(&|r| r.d),
        beta: (records.iter().map(|r| r.beta).sum::<usize>() as f64 / k) as usize,
        alpha_min: None,
        objective,
        separator_size: None,
        bound: None,
        nodes: mean_u64(&|r| r.nodes),
        cuts_chain: mean_u64(&|r| r.cuts_chain),
        cuts_alpha_pair: mean_u64(&|r| r.cuts_alpha_pair),
        cuts_subgraph: mean_u64(&|r| r.cuts_subgraph),
        wall_secs: mean_f(&|r| r.wall_secs),
        status: "mean".into(),
        config_hash: records[0].config_hash.clone(),
    })
}

/// Stable fingerprint of everything that shapes a run except wall time.
pub fn config_hash(parts: &[(&str, String)]) -> String {
    let mut hasher = Sha256::new();
    for (key, value) in parts {
        hasher.update(key.as_bytes());
        hasher.update(b"=");
        hasher.update(value.as_bytes());
        hasher.update(b";");
    }
    let digest = hasher.finalize();
    let mut out = String::with_capacity(12);
    for b in digest.iter().take(6) {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunRecord {
        RunRecord {
            instance: "demo".into(),
            n: 10,
            e: 20,
            d: 0.4444,
            beta: 6,
            alpha_min: Some(2),
            objective: Some(8.0),
            separator_size: Some(2),
            bound: Some(8.0),
            nodes: 3,
            cuts_chain: 0,
            cuts_alpha_pair: 5,
            cuts_subgraph: 1,
            wall_secs: 0.123,
            status: "optimal".into(),
            config_hash: "abc123".into(),
        }
    }

    #[test]
    fn csv_matches_header_arity() {
        let row = sample().csv_row();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
    }

    #[test]
    fn json_is_schema_stable() {
        let line = sample().json_line();
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        for key in [
            "instance", "n", "e", "d", "beta", "alpha_min", "objective", "separator_size",
            "bound", "nodes", "cuts_chain", "cuts_alpha_pair", "cuts_subgraph", "wall_secs",
            "status", "config_hash",
        ] {
            assert!(v.get(key).is_some(), "missing key {key}");
        }
    }

    #[test]
    fn hash_ignores_nothing_it_is_given() {
        let h1 = config_hash(&[("beta", "auto".into()), ("seed", "0".into())]);
        let h2 = config_hash(&[("beta", "auto".into()), ("seed", "1".into())]);
        assert_ne!(h1, h2);
        assert_eq!(h1.len(), 12);
        assert_eq!(h1, config_hash(&[("beta", "auto".into()), ("seed", "0".into())]));
    }

    #[test]
    fn mean_row_averages() {
        let mut a = sample();
        let mut b = sample();
        a.nodes = 10;
        b.nodes = 20;
        a.wall_secs = 1.0;
        b.wall_secs = 3.0;
        let m = mean_row(&[a, b]).unwrap();
        assert_eq!(m.nodes, 15);
        assert!((m.wall_secs - 2.0).abs() < 1e-9);
        assert_eq!(m.instance, "mean");
        assert!(mean_row(&[]).is_none());
    }
}
