//! Exact LHS grouping.
//!
//! Tuples are mapped to dense group ids such that two tuples share an id iff
//! their codes agree on every LHS attribute. Ids are built one attribute at a
//! time by partition refinement: the valid rows are kept ordered by group,
//! and inside each group the next attribute's codes are renumbered through a
//! value-indexed stamp table. Nothing is hashed, so distinct value
//! combinations cannot merge.

use super::{Relation, ValidityMask, NULL_CODE};

/// Group ids for the tuples of a relation on one attribute set.
#[derive(Debug, Clone, Default)]
pub struct LhsGrouping {
    keys: Vec<u32>,
    valid: ValidityMask,
    groups: usize,
    order: Vec<u32>,
    offsets: Vec<u32>,
}

impl LhsGrouping {
    /// Group id per tuple; meaningless where [`valid`](Self::valid) is false.
    pub fn keys(&self) -> &[u32] {
        &self.keys
    }

    /// True iff the tuple is non-NULL on every grouped attribute.
    pub fn valid(&self) -> &ValidityMask {
        &self.valid
    }

    /// Number of distinct ids among valid tuples; ids are `0..group_count()`.
    pub fn group_count(&self) -> usize {
        self.groups
    }

    /// Valid rows of group `g`, ascending.
    pub fn members(&self, g: usize) -> &[u32] {
        &self.order[self.offsets[g] as usize..self.offsets[g + 1] as usize]
    }

    /// All valid rows ordered by group id, ascending within a group.
    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// Group `g` occupies `order()[offsets()[g]..offsets()[g + 1]]`.
    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    /// Rebuilds `order` and `offsets` from `keys` by counting sort.
    fn sort_rows(&mut self) {
        self.offsets.clear();
        self.offsets.resize(self.groups + 1, 0);
        let mut valid_rows = 0;
        for (i, &k) in self.keys.iter().enumerate() {
            if self.valid.get(i) {
                self.offsets[k as usize + 1] += 1;
                valid_rows += 1;
            }
        }
        for g in 0..self.groups {
            self.offsets[g + 1] += self.offsets[g];
        }
        self.order.clear();
        self.order.resize(valid_rows, 0);
        // Borrow the start offsets as write cursors, then shift them back.
        for (i, &k) in self.keys.iter().enumerate() {
            if self.valid.get(i) {
                let cursor = &mut self.offsets[k as usize];
                self.order[*cursor as usize] = i as u32;
                *cursor += 1;
            }
        }
        for g in (1..=self.groups).rev() {
            self.offsets[g] = self.offsets[g - 1];
        }
        self.offsets[0] = 0;
    }
}

/// Reusable scratch space for [`LhsGrouping`] construction.
#[derive(Debug, Default)]
pub struct Grouper {
    stamp: Vec<u32>,
    renumbered: Vec<u32>,
}

impl Grouper {
    pub fn new() -> Self {
        Self::default()
    }

    /// Groups `rel` on `attrs` (non-empty) into `out`, reusing its buffers.
    pub fn group_into(&mut self, rel: &Relation, attrs: &[usize], out: &mut LhsGrouping) {
        assert!(!attrs.is_empty(), "grouping needs at least one attribute");
        let n = rel.row_count();
        let first = rel.column(attrs[0]);

        out.keys.clear();
        out.keys.extend_from_slice(first);
        out.valid.reset(n, true);
        for (i, &code) in first.iter().enumerate() {
            if code == NULL_CODE {
                out.valid.set(i, false);
            }
        }
        out.groups = rel.cardinality(attrs[0]);
        out.sort_rows();

        for &attr in &attrs[1..] {
            self.refine(rel.column(attr), rel.cardinality(attr), out);
        }
    }

    fn refine(&mut self, column: &[u32], cardinality: usize, out: &mut LhsGrouping) {
        // Stamps hold `group + 1`, so 0 means unseen in the current group.
        self.stamp.clear();
        self.stamp.resize(cardinality, 0);
        self.renumbered.resize(cardinality, 0);
        let mut next: u32 = 0;

        for g in 0..out.groups {
            let (start, end) = (out.offsets[g] as usize, out.offsets[g + 1] as usize);
            let tag = g as u32 + 1;
            for &row in &out.order[start..end] {
                let row = row as usize;
                let code = column[row];
                if code == NULL_CODE {
                    out.valid.set(row, false);
                    continue;
                }
                let c = code as usize;
                if self.stamp[c] != tag {
                    self.stamp[c] = tag;
                    self.renumbered[c] = next;
                    next += 1;
                }
                out.keys[row] = self.renumbered[c];
            }
        }
        out.groups = next as usize;
        out.sort_rows();
    }
}

/// One-shot LHS grouping.
pub fn group_lhs(rel: &Relation, attrs: &[usize]) -> LhsGrouping {
    let mut out = LhsGrouping::default();
    Grouper::new().group_into(rel, attrs, &mut out);
    out
}
