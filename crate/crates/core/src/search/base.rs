//! Exhaustive level-wise search.

use std::time::Instant;

use crate::relation::Relation;
use crate::topk::{ScoredAfd, TopKHeap};

use super::eval::{CandidateOutcome, Evaluator};
use super::{theoretical_candidate_count, Combinations, LevelStats, SearchConfig, SearchStats};

/// Scores every `X -> A` with `1 <= |X| <= L` and returns the top-k non-exact
/// dependencies, best first.
///
/// LHS sets are visited in lexicographic order within each level and RHS
/// attributes in ascending order. Each candidate is grouped from scratch.
pub fn run_base(rel: &Relation, cfg: &SearchConfig) -> (Vec<ScoredAfd>, SearchStats) {
    let start = Instant::now();
    let m = rel.attribute_count();
    let max_lhs = cfg.effective_max_lhs(m);
    let mut heap = TopKHeap::new(cfg.k);
    let mut stats = SearchStats::default();
    let mut evaluator = Evaluator::new();

    for level in 1..=max_lhs {
        let level_start = Instant::now();
        let mut level_stats = LevelStats {
            level,
            ..LevelStats::default()
        };
        for lhs in Combinations::new(m, level) {
            level_stats.lhs_nodes += 1;
            for rhs in (0..m).filter(|a| !lhs.contains(a)) {
                level_stats.candidates += 1;
                evaluator.prepare_lhs(rel, &lhs);
                match evaluator.score(rel, rhs) {
                    CandidateOutcome::Degenerate => stats.degenerate_skipped += 1,
                    CandidateOutcome::Scored { result, .. } => {
                        level_stats.evaluated += 1;
                        if result.is_exact {
                            stats.exact_fd_count += 1;
                        } else {
                            heap.offer(ScoredAfd::new(lhs.clone(), rhs, result));
                        }
                    }
                }
            }
        }
        level_stats.elapsed = level_start.elapsed();
        stats.evaluated_candidates += level_stats.evaluated;
        stats.levels.push(level_stats);
    }
    stats.elapsed = start.elapsed();

    debug_assert_eq!(
        (stats.evaluated_candidates + stats.degenerate_skipped) as u128,
        theoretical_candidate_count(m, max_lhs).unwrap_or(u128::MAX)
    );
    (heap.into_sorted(), stats)
}
