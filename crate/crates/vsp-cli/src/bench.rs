//! Benchmark driver: a manifest of instances, one run record each, plus a
//! closing mean row. Missing files are reported and skipped.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::records::{mean_row, RunRecord};
use crate::run::{alpha_table_jobs, load_graph, run_solve, CliError, Format, SolveArgs, WallClock};
use vsp_core::solver::Stopwatch;

#[derive(Clone, Debug)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub format: Option<Format>,
    pub beta: Option<usize>,
}

/// Manifest grammar: one instance per line, `path [format] [beta]`;
/// `#`-lines are comments.
pub fn parse_manifest(text: &str, base: &Path) -> Vec<ManifestEntry> {
    let mut out = Vec::new();
    for raw in text.lines() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut it = t.split_whitespace();
        let Some(p) = it.next() else { continue };
        let mut path = PathBuf::from(p);
        if path.is_relative() {
            path = base.join(path);
        }
        let mut format = None;
        let mut beta = None;
        for tok in it {
            if let Some(f) = Format::parse(tok) {
                format = Some(f);
            } else if let Ok(b) = tok.parse::<usize>() {
                beta = Some(b);
            }
        }
        out.push(ManifestEntry { path, format, beta });
    }
    out
}

/// Runs every manifest entry. `alpha_only` skips the solve and records the
/// connectivity numbers only; `jobs` parallelizes across instances, each
/// solve staying single-threaded for determinism.
pub fn run_bench(
    entries: &[ManifestEntry],
    args: &SolveArgs,
    jobs: usize,
    alpha_only: bool,
) -> Vec<RunRecord> {
    let work = |entry: &ManifestEntry| -> Option<RunRecord> {
        match bench_one(entry, args, alpha_only) {
            Ok(rec) => Some(rec),
            Err(e) => {
                eprintln!("warning: {}: {e}", entry.path.display());
                None
            }
        }
    };
    let mut records: Vec<RunRecord> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool construction");
        pool.install(|| entries.par_iter().filter_map(work).collect())
    } else {
        entries.iter().filter_map(work).collect()
    };
    records.sort_by(|l, r| l.instance.cmp(&r.instance));
    if let Some(mean) = mean_row(&records) {
        records.push(mean);
    }
    records
}

fn bench_one(
    entry: &ManifestEntry,
    args: &SolveArgs,
    alpha_only: bool,
) -> Result<RunRecord, CliError> {
    let (g, name) = load_graph(entry.path.as_path(), entry.format, None, false)?;
    let mut args = args.clone();
    if let Some(b) = entry.beta {
        args.beta_override = Some(b);
    }
    if alpha_only {
        let clock = WallClock::start();
        let meta = g
            .meta()
            .map_err(|e| CliError::Parse { path: name.clone(), msg: e.to_string() })?;
        let alpha_min = alpha_table_jobs(&g, 1).ok().map(|t| t.alpha_min());
        return Ok(RunRecord {
            instance: name,
            n: meta.n,
            e: meta.e,
            d: meta.d,
            beta: args.beta_override.unwrap_or(meta.beta),
            alpha_min,
            objective: None,
            separator_size: None,
            bound: None,
            nodes: 0,
            cuts_chain: 0,
            cuts_alpha_pair: 0,
            cuts_subgraph: 0,
            wall_secs: clock.elapsed_secs(),
            status: "alpha_only".into(),
            config_hash: args.hash(),
        });
    }
    if !g.is_connected() {
        return Err(CliError::Parse { path: name, msg: "graph is disconnected".into() });
    }
    run_solve(&g, &name, &args, 1).map(|(rec, _)| rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn manifest_parsing() {
        let text = "# comment\nfoo.col\nbar.mtx mm 12\nbaz.col dimacs\n";
        let entries = parse_manifest(text, Path::new("/tmp"));
        assert_eq!(entries.len(), 3);
        assert_eq!(entries[0].path, Path::new("/tmp/foo.col"));
        assert_eq!(entries[1].format, Some(Format::MatrixMarket));
        assert_eq!(entries[1].beta, Some(12));
        assert_eq!(entries[2].format, Some(Format::Dimacs));
    }

    #[test]
    fn bench_skips_missing_and_aggregates() {
        let dir = tempfile::tempdir().unwrap();
        let p1 = dir.path().join("a.col");
        let mut f = std::fs::File::create(&p1).unwrap();
        writeln!(f, "p edge 3 2\ne 1 2\ne 2 3").unwrap();
        let manifest = format!("{}\nmissing.col\n", p1.display());
        let entries = parse_manifest(&manifest, dir.path());
        let recs = run_bench(&entries, &SolveArgs::default(), 1, false);
        // one real record plus the mean row
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].instance, "a");
        assert_eq!(recs[1].instance, "mean");
        assert_eq!(recs[0].objective, Some(2.0));
    }

    #[test]
    fn alpha_only_mode() {
        let dir = tempfile::tempdir().unwrap();
        let p1 = dir.path().join("c5.col");
        std::fs::write(&p1, "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
        let entries = parse_manifest(&format!("{}\n", p1.display()), dir.path());
        let recs = run_bench(&entries, &SolveArgs::default(), 2, true);
        assert_eq!(recs[0].alpha_min, Some(2));
        assert_eq!(recs[0].status, "alpha_only");
        assert_eq!(recs[0].objective, None);
    }
}
