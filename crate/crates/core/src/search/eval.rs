//! Candidate evaluation shared by both engines.

use crate::measure::{mu_plus, FrequencySummary, MeasureResult};
use crate::relation::{Grouper, LhsGrouping, Relation, NULL_CODE};

/// Result of scoring one `X -> A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CandidateOutcome {
    /// At most one tuple is non-NULL on `X ∪ {A}`; the candidate is skipped.
    Degenerate,
    Scored {
        result: MeasureResult,
        summary: FrequencySummary,
    },
}

/// Holds the cached grouping of the current LHS plus scratch buffers for the
/// per-RHS frequency scan.
#[derive(Debug, Default)]
pub struct Evaluator {
    grouper: Grouper,
    grouping: LhsGrouping,
    counts: FrequencyScratch,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Computes group ids and validity for `attrs`; later calls to
    /// [`score`](Self::score) reuse them.
    pub fn prepare_lhs(&mut self, rel: &Relation, attrs: &[usize]) {
        self.grouper.group_into(rel, attrs, &mut self.grouping);
    }

    pub fn grouping(&self) -> &LhsGrouping {
        &self.grouping
    }

    /// Scores `X -> rhs` for the prepared `X`, restricted to tuples valid on
    /// `X` whose `rhs` cell is non-NULL.
    pub fn score(&mut self, rel: &Relation, rhs: usize) -> CandidateOutcome {
        let summary = self.counts.summarize(rel, &self.grouping, rhs);
        if summary.valid_count <= 1 {
            return CandidateOutcome::Degenerate;
        }
        let result = mu_plus(&summary).expect("summary of two or more tuples is scoreable");
        CandidateOutcome::Scored { result, summary }
    }
}

/// Per-RHS counting buffers indexed by RHS value code, zeroed after each
/// scan.
#[derive(Debug, Default)]
struct FrequencyScratch {
    in_group: Vec<u64>,
    group_values: Vec<u32>,
    marginal: Vec<u64>,
}

impl FrequencyScratch {
    fn summarize(&mut self, rel: &Relation, grouping: &LhsGrouping, rhs: usize) -> FrequencySummary {
        let column = rel.column(rhs);
        let cardinality = rel.cardinality(rhs);
        if self.marginal.len() < cardinality {
            self.marginal.resize(cardinality, 0);
            self.in_group.resize(cardinality, 0);
        }
        let mut summary = FrequencySummary::default();

        let order = grouping.order();
        for bounds in grouping.offsets().windows(2) {
            let members = &order[bounds[0] as usize..bounds[1] as usize];
            if let [row] = members {
                let value = column[*row as usize];
                if value != NULL_CODE {
                    summary.add_group(1, 1);
                    self.count_marginal(value);
                }
                continue;
            }
            let mut size = 0u64;
            let mut square = 0u64;
            for &row in members {
                let value = column[row as usize];
                if value == NULL_CODE {
                    continue;
                }
                let c = self.in_group[value as usize];
                if c == 0 {
                    self.group_values.push(value);
                }
                self.in_group[value as usize] = c + 1;
                // (c + 1)² - c² = 2c + 1
                square += 2 * c + 1;
                size += 1;
                self.count_marginal(value);
            }
            for &v in &self.group_values {
                self.in_group[v as usize] = 0;
            }
            self.group_values.clear();
            summary.add_group(size, square);
        }

        for c in &mut self.marginal[..cardinality] {
            summary.marginal_square_sum += *c * *c;
            *c = 0;
        }
        summary
    }

    #[inline]
    fn count_marginal(&mut self, value: u32) {
        self.marginal[value as usize] += 1;
    }
}
