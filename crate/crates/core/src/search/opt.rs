//! Pruned search: prefix-join candidate generation, per-LHS grouping reuse,
//! exact-FD pruning and optimistic upper-bound pruning.

use std::time::Instant;

use crate::relation::Relation;
use crate::topk::{ScoredAfd, TopKHeap};

use super::eval::{CandidateOutcome, Evaluator};
use super::lattice::{apriori_join, level1_nodes, LhsNode};
use super::{LevelStats, SearchConfig, SearchStats};

/// Rounding allowance on the bound comparison. A descendant that meets the
/// bound exactly is computed along a different float path than the bound,
/// so the cut-off is held back by a few ulps.
const BOUND_SLACK: f64 = 1e-12;

/// Pruned discovery. Returns the same ranked list as
/// [`run_base`](super::run_base) on NULL-free relations, and on any relation
/// when upper-bound pruning is disabled.
pub fn run_opt(rel: &Relation, cfg: &SearchConfig) -> (Vec<ScoredAfd>, SearchStats) {
    let start = Instant::now();
    let m = rel.attribute_count();
    let max_lhs = cfg.effective_max_lhs(m);
    let mut heap = TopKHeap::new(cfg.k);
    let mut stats = SearchStats::default();
    let mut evaluator = Evaluator::new();

    let mut level_nodes = level1_nodes(m);
    for level in 1..=max_lhs {
        let level_start = Instant::now();
        let mut level_stats = LevelStats {
            level,
            lhs_nodes: level_nodes.len() as u64,
            candidates: level_nodes.iter().map(|n| n.rhs.len() as u64).sum(),
            ..LevelStats::default()
        };
        let before = stats.evaluated_candidates;
        for node in &mut level_nodes {
            evaluate_lhs(rel, node, &mut heap, cfg, &mut stats, &mut evaluator);
        }
        level_stats.evaluated = stats.evaluated_candidates - before;
        if level < max_lhs {
            level_nodes = apriori_join(&level_nodes);
        }
        level_stats.elapsed = level_start.elapsed();
        stats.levels.push(level_stats);
        if level_nodes.is_empty() {
            break;
        }
    }
    stats.elapsed = start.elapsed();
    (heap.into_sorted(), stats)
}

/// Evaluates every RHS still in `S(X)` for one LHS node, clearing bits that
/// no descendant needs:
///
/// * exact `X -> A` (with FD pruning on): every `X' ⊃ X` is exact for `A`;
/// * non-exact `X -> A` whose μ⁺_opt is at most τ of a full heap (with
///   upper-bound pruning on): no descendant can rank ahead of the heap.
///
/// Candidates with fewer than two valid tuples are skipped and keep their bit.
pub fn evaluate_lhs(
    rel: &Relation,
    node: &mut LhsNode,
    heap: &mut TopKHeap,
    cfg: &SearchConfig,
    stats: &mut SearchStats,
    evaluator: &mut Evaluator,
) {
    if node.rhs.is_empty() {
        return;
    }
    evaluator.prepare_lhs(rel, &node.attrs);
    let rhs_list: Vec<usize> = node.rhs.iter().collect();
    for rhs in rhs_list {
        let (result, summary) = match evaluator.score(rel, rhs) {
            CandidateOutcome::Degenerate => {
                stats.degenerate_skipped += 1;
                continue;
            }
            CandidateOutcome::Scored { result, summary } => (result, summary),
        };
        stats.evaluated_candidates += 1;

        if result.is_exact {
            stats.exact_fd_count += 1;
            if cfg.fd_pruning {
                node.rhs.remove(rhs);
                stats.pruned_by_exact_fd += 1;
            }
            continue;
        }

        heap.offer(ScoredAfd::new(node.attrs.clone(), rhs, result));

        // τ is only a valid cut-off once k entries exist; before that even
        // zero-score descendants may be needed to fill the result.
        if cfg.ub_pruning && heap.is_full() {
            // The bound covers 1 - ρ and may be negative while descendants
            // score max(0, 1 - ρ). A zero descendant still cannot enter a
            // heap whose τ is 0: every entry then scores 0 with a smaller
            // LHS, which ranks ahead.
            let bound = summary.upper_bound().expect("non-exact candidate has a finite bound");
            if bound + BOUND_SLACK <= heap.threshold() {
                node.rhs.remove(rhs);
                stats.pruned_by_upper_bound += 1;
            }
        }
    }
}
