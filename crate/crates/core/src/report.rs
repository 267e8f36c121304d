//! Run reports rendered as a text table, TSV or JSON.
//!
//! The JSON document has the same fields for every run; benchmark-only
//! values are `null` outside benchmark mode. Reals are rounded to six
//! decimals.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use crate::relation::Relation;
use crate::search::{LevelStats, SearchConfig, SearchStats};
use crate::topk::ScoredAfd;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Tsv,
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

fn millis(d: Duration) -> f64 {
    round6(d.as_secs_f64() * 1e3)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedAfd {
    pub rank: usize,
    pub lhs: Vec<String>,
    pub rhs: String,
    pub score: f64,
    pub rho: f64,
    pub pdep_cond: f64,
    pub pdep_marg: f64,
    pub distinct_lhs: u64,
    pub valid_count: u64,
}

impl RankedAfd {
    pub fn from_scored(rel: &Relation, rank: usize, afd: &ScoredAfd) -> Self {
        let schema = rel.schema();
        let d = &afd.diagnostics;
        RankedAfd {
            rank,
            lhs: afd.lhs.iter().map(|&a| schema.name(a).to_owned()).collect(),
            rhs: schema.name(afd.rhs).to_owned(),
            score: round6(afd.score),
            rho: round6(d.rho),
            pdep_cond: round6(d.pdep_cond),
            pdep_marg: round6(d.pdep_marg),
            distinct_lhs: d.distinct_lhs,
            valid_count: d.valid_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub lhs_nodes: u64,
    pub candidates: u64,
    pub evaluated: u64,
    pub elapsed_ms: f64,
}

impl From<&LevelStats> for LevelReport {
    fn from(l: &LevelStats) -> Self {
        LevelReport {
            level: l.level,
            lhs_nodes: l.lhs_nodes,
            candidates: l.candidates,
            evaluated: l.evaluated,
            elapsed_ms: millis(l.elapsed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    pub evaluated_candidates: u64,
    pub exact_fd_count: u64,
    pub pruned_by_exact_fd: u64,
    pub pruned_by_upper_bound: u64,
    pub degenerate_skipped: u64,
    pub levels: Vec<LevelReport>,
    pub elapsed_ms: f64,
}

impl From<&SearchStats> for StatsReport {
    fn from(s: &SearchStats) -> Self {
        StatsReport {
            evaluated_candidates: s.evaluated_candidates,
            exact_fd_count: s.exact_fd_count,
            pruned_by_exact_fd: s.pruned_by_exact_fd,
            pruned_by_upper_bound: s.pruned_by_upper_bound,
            degenerate_skipped: s.degenerate_skipped,
            levels: s.levels.iter().map(LevelReport::from).collect(),
            elapsed_ms: millis(s.elapsed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub dataset: String,
    pub rows: usize,
    pub attributes: usize,
    pub k: usize,
    pub max_lhs: usize,
    /// `base`, `opt`, or `bench` (ranked list and `stats` from `opt`).
    pub algorithm: String,
    pub ub_pruning: bool,
    pub fd_pruning: bool,
    pub theoretical_candidates: Option<u128>,
    pub ranked: Vec<RankedAfd>,
    pub stats: StatsReport,
    pub baseline_stats: Option<StatsReport>,
    /// `1 - #ECN_opt / #ECN_base`.
    pub pruning_ratio: Option<f64>,
    /// `time_base / time_opt`, engine calls only.
    pub speedup: Option<f64>,
    pub identical: Option<bool>,
}

impl RunReport {
    pub fn new(
        dataset: impl Into<String>,
        rel: &Relation,
        cfg: &SearchConfig,
        algorithm: &str,
        ranked: &[ScoredAfd],
        stats: &SearchStats,
    ) -> Self {
        let m = rel.attribute_count();
        let max_lhs = cfg.effective_max_lhs(m);
        RunReport {
            dataset: dataset.into(),
            rows: rel.row_count(),
            attributes: m,
            k: cfg.k,
            max_lhs,
            algorithm: algorithm.to_owned(),
            ub_pruning: cfg.ub_pruning,
            fd_pruning: cfg.fd_pruning,
            theoretical_candidates: crate::search::theoretical_candidate_count(m, max_lhs).ok(),
            ranked: ranked
                .iter()
                .enumerate()
                .map(|(i, a)| RankedAfd::from_scored(rel, i + 1, a))
                .collect(),
            stats: StatsReport::from(stats),
            baseline_stats: None,
            pruning_ratio: None,
            speedup: None,
            identical: None,
        }
    }

    /// Attaches the baseline run of a benchmark; `self` holds the pruned run.
    pub fn with_baseline(mut self, base: &SearchStats, opt: &SearchStats, identical: bool) -> Self {
        self.algorithm = "bench".to_owned();
        self.baseline_stats = Some(StatsReport::from(base));
        self.pruning_ratio = Some(pruning_ratio(base.evaluated_candidates, opt.evaluated_candidates));
        let opt_secs = opt.elapsed.as_secs_f64();
        self.speedup = (opt_secs > 0.0).then(|| round6(base.elapsed.as_secs_f64() / opt_secs));
        self.identical = Some(identical);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Tsv => self.render_tsv(),
            Format::Table => self.render_table(),
        }
    }

    fn render_tsv(&self) -> String {
        let mut out = String::from("rank\tlhs\trhs\tscore\trho\tpdep_cond\tpdep_marg\tdistinct_lhs\tvalid_count\n");
        for r in &self.ranked {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{}\t{}",
                r.rank,
                r.lhs.join(","),
                r.rhs,
                r.score,
                r.rho,
                r.pdep_cond,
                r.pdep_marg,
                r.distinct_lhs,
                r.valid_count
            );
        }
        out
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "dataset {}  rows {}  attributes {}  k {}  max-lhs {}  algorithm {}",
            self.dataset, self.rows, self.attributes, self.k, self.max_lhs, self.algorithm
        );
        let deps: Vec<String> = self
            .ranked
            .iter()
            .map(|r| format!("{{{}}} -> {}", r.lhs.join(", "), r.rhs))
            .collect();
        let width = deps.iter().map(String::len).max().unwrap_or(0).max(10);
        let _ = writeln!(out, "{:>4}  {:<width$}  {:>8}  {:>8}  {:>8}  {:>8}", "rank", "dependency", "mu+", "d_X", "n'", "pdep");
        for (r, dep) in self.ranked.iter().zip(&deps) {
            let _ = writeln!(
                out,
                "{:>4}  {:<width$}  {:>8.6}  {:>8}  {:>8}  {:>8.6}",
                r.rank, dep, r.score, r.distinct_lhs, r.valid_count, r.pdep_cond
            );
        }
        if self.ranked.is_empty() {
            let _ = writeln!(out, "(no approximate dependencies)");
        }
        write_stats(&mut out, "stats", &self.stats);
        if let Some(base) = &self.baseline_stats {
            write_stats(&mut out, "baseline stats", base);
        }
        if let Some(p) = self.pruning_ratio {
            let _ = writeln!(out, "pruning ratio {:.2}%", p * 100.0);
        }
        if let Some(s) = self.speedup {
            let _ = writeln!(out, "speedup {s:.2}x");
        }
        if let Some(same) = self.identical {
            let _ = writeln!(out, "identical results {same}");
        }
        out
    }
}

fn write_stats(out: &mut String, title: &str, s: &StatsReport) {
    let _ = writeln!(
        out,
        "{title}: evaluated {}  exact {}  fd-pruned {}  ub-pruned {}  degenerate {}  {:.3} ms",
        s.evaluated_candidates, s.exact_fd_count, s.pruned_by_exact_fd, s.pruned_by_upper_bound, s.degenerate_skipped, s.elapsed_ms
    );
    for l in &s.levels {
        let _ = writeln!(
            out,
            "  level {}: lhs {}  candidates {}  evaluated {}  {:.3} ms",
            l.level, l.lhs_nodes, l.candidates, l.evaluated, l.elapsed_ms
        );
    }
}

/// `1 - opt / base`; 0 when the baseline evaluated nothing.
pub fn pruning_ratio(base_evaluated: u64, opt_evaluated: u64) -> f64 {
    if base_evaluated == 0 {
        0.0
    } else {
        1.0 - opt_evaluated as f64 / base_evaluated as f64
    }
}

/// Element-wise equality of two ranked lists: same dependencies in the same
/// order, scores within `tolerance`.
pub fn same_ranking(a: &[ScoredAfd], b: &[ScoredAfd], tolerance: f64) -> bool {
    a.len() == b.len()
        && a
            .iter()
            .zip(b)
            .all(|(x, y)| x.same_dependency(y) && (x.score - y.score).abs() <= tolerance)
}
