//! Level-wise discovery engines.

mod base;
mod eval;
mod lattice;
mod opt;

use std::time::Duration;

use crate::error::{Error, Result};

pub use base::run_base;
pub use eval::{CandidateOutcome, Evaluator};
pub use lattice::{apriori_join, level1_nodes, LhsNode, RhsSet};
pub use opt::{evaluate_lhs, run_opt};

/// Default `k`.
pub const DEFAULT_K: usize = 20;
/// Default maximum LHS size `L`.
pub const DEFAULT_MAX_LHS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub k: usize,
    /// `L`; clamped to `m - 1` at run time.
    pub max_lhs: usize,
    pub ub_pruning: bool,
    pub fd_pruning: bool,
}

impl SearchConfig {
    pub fn new(k: usize) -> Self {
        SearchConfig {
            k,
            ..Self::default()
        }
    }

    pub fn with_max_lhs(mut self, max_lhs: usize) -> Self {
        self.max_lhs = max_lhs;
        self
    }

    pub fn with_ub_pruning(mut self, enabled: bool) -> Self {
        self.ub_pruning = enabled;
        self
    }

    pub fn with_fd_pruning(mut self, enabled: bool) -> Self {
        self.fd_pruning = enabled;
        self
    }

    /// `min(L, m - 1)`.
    pub fn effective_max_lhs(&self, attributes: usize) -> usize {
        self.max_lhs.min(attributes.saturating_sub(1))
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        if self.max_lhs == 0 {
            return Err(Error::InvalidArgument("maximum LHS size must be positive".into()));
        }
        Ok(())
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            k: DEFAULT_K,
            max_lhs: DEFAULT_MAX_LHS,
            ub_pruning: true,
            fd_pruning: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub level: usize,
    /// LHS sets visited at this level.
    pub lhs_nodes: u64,
    /// `(X, A)` pairs considered at this level.
    pub candidates: u64,
    /// Pairs whose μ⁺ was computed.
    pub evaluated: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// #ECN: candidates whose μ⁺ was computed.
    pub evaluated_candidates: u64,
    /// Evaluated candidates that were exact FDs.
    pub exact_fd_count: u64,
    /// RHS bits cleared by exact-FD pruning.
    pub pruned_by_exact_fd: u64,
    /// RHS bits cleared by upper-bound pruning.
    pub pruned_by_upper_bound: u64,
    /// Candidates skipped with at most one valid tuple.
    pub degenerate_skipped: u64,
    pub levels: Vec<LevelStats>,
    pub elapsed: Duration,
}

/// `C = Σ_{ℓ=1..L} C(m, ℓ) · (m - ℓ)`, the number of `(X, A)` candidates with
/// `1 <= |X| <= L`. `L` is clamped to `m - 1`.
pub fn theoretical_candidate_count(attributes: usize, max_lhs: usize) -> Result<u128> {
    let overflow = || Error::Overflow {
        attributes,
        max_lhs,
    };
    let m = attributes as u128;
    let top = max_lhs.min(attributes.saturating_sub(1));
    let mut binom: u128 = 1; // C(m, 0)
    let mut total: u128 = 0;
    for l in 1..=top as u128 {
        // C(m, l) = C(m, l-1) * (m - l + 1) / l, exact at every step
        binom = binom.checked_mul(m - l + 1).ok_or_else(overflow)? / l;
        let level = binom.checked_mul(m - l).ok_or_else(overflow)?;
        total = total.checked_add(level).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Strictly increasing index combinations of size `size` from `0..m`, in
/// lexicographic order.
pub(crate) struct Combinations {
    m: usize,
    current: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(m: usize, size: usize) -> Self {
        Combinations {
            m,
            current: (0..size).collect(),
            done: size == 0 || size > m,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.m - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
