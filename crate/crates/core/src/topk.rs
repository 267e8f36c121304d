//! Bounded top-k selection of scored AFDs.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::measure::MeasureResult;

/// A non-exact dependency `lhs -> rhs` with its μ⁺ score.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredAfd {
    /// Strictly increasing attribute indices.
    pub lhs: Vec<usize>,
    pub rhs: usize,
    pub score: f64,
    pub diagnostics: MeasureResult,
}

impl ScoredAfd {
    pub fn new(lhs: Vec<usize>, rhs: usize, diagnostics: MeasureResult) -> Self {
        debug_assert!(lhs.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!lhs.contains(&rhs));
        ScoredAfd {
            lhs,
            rhs,
            score: diagnostics.mu_plus,
            diagnostics,
        }
    }

    pub fn same_dependency(&self, other: &ScoredAfd) -> bool {
        self.lhs == other.lhs && self.rhs == other.rhs
    }
}

/// Result order: score descending, then LHS size ascending, then LHS
/// lexicographic, then RHS ascending. `Less` means `a` ranks first.
pub fn rank_order(a: &ScoredAfd, b: &ScoredAfd) -> Ordering {
    b.score
        .total_cmp(&a.score)
        .then_with(|| a.lhs.len().cmp(&b.lhs.len()))
        .then_with(|| a.lhs.cmp(&b.lhs))
        .then_with(|| a.rhs.cmp(&b.rhs))
}

/// Max-heap wrapper whose top is the worst-ranked entry.
#[derive(Debug)]
struct Ranked(ScoredAfd);

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        rank_order(&self.0, &other.0) == Ordering::Equal
    }
}

impl Eq for Ranked {}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        rank_order(&self.0, &other.0)
    }
}

/// Capacity-k min-heap on μ⁺. The root is the current k-th best entry and
/// its score is the pruning threshold τ once the heap is full.
#[derive(Debug)]
pub struct TopKHeap {
    capacity: usize,
    entries: BinaryHeap<Ranked>,
}

impl TopKHeap {
    /// # Panics
    ///
    /// If `k` is zero.
    pub fn new(k: usize) -> Self {
        assert!(k > 0, "top-k capacity must be positive");
        TopKHeap {
            capacity: k,
            entries: BinaryHeap::with_capacity(k.min(1 << 16)),
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.entries.len() >= self.capacity
    }

    /// Offers a candidate. An underfull heap always accepts; a full heap
    /// replaces its root only when the candidate ranks strictly ahead of it,
    /// which for distinct scores means `score > τ`.
    pub fn offer(&mut self, candidate: ScoredAfd) -> bool {
        debug_assert!(candidate.score < 1.0, "exact FDs are not ranked");
        if !self.is_full() {
            self.entries.push(Ranked(candidate));
            return true;
        }
        let mut root = self.entries.peek_mut().expect("full heap has a root");
        if rank_order(&candidate, &root.0) == Ordering::Less {
            *root = Ranked(candidate);
            true
        } else {
            false
        }
    }

    /// τ: the root score when full, otherwise 0.
    pub fn threshold(&self) -> f64 {
        if self.is_full() {
            self.entries.peek().map_or(0.0, |r| r.0.score)
        } else {
            0.0
        }
    }

    /// Entries best-first.
    pub fn into_sorted(self) -> Vec<ScoredAfd> {
        self.entries.into_sorted_vec().into_iter().map(|r| r.0).collect()
    }
}
