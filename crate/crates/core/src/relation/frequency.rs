use std::collections::BTreeMap;

use super::{Relation, NULL_CODE};

/// Per-tuple flag: non-NULL on every attribute of some attribute set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidityMask {
    bits: Vec<bool>,
}

impl ValidityMask {
    pub fn all(n: usize) -> Self {
        ValidityMask { bits: vec![true; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        ValidityMask { bits }
    }

    pub(crate) fn reset(&mut self, n: usize, value: bool) {
        self.bits.clear();
        self.bits.resize(n, value);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of valid tuples, `|r'|`.
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }
}

/// Mask of tuples that are non-NULL on all of `attrs`.
///
/// # Panics
///
/// If `attrs` is empty or holds an index `>= m`.
pub fn validity_mask(rel: &Relation, attrs: &[usize]) -> ValidityMask {
    assert!(!attrs.is_empty(), "validity mask needs at least one attribute");
    let mut mask = ValidityMask::all(rel.row_count());
    for &attr in attrs {
        for (i, &code) in rel.column(attr).iter().enumerate() {
            if code == NULL_CODE {
                mask.bits[i] = false;
            }
        }
    }
    mask
}

/// One LHS group: its size `|g|` and the RHS value counts `f_{g,a}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFrequency {
    pub key: u32,
    pub size: u64,
    pub counts: BTreeMap<u32, u64>,
}

/// Grouped LHS-to-RHS frequency table over the masked-in tuples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupedFrequencies {
    /// Non-empty groups, ordered by key.
    pub groups: Vec<GroupFrequency>,
    /// RHS code -> count over all masked-in tuples.
    pub marginal: BTreeMap<u32, u64>,
    pub total: u64,
}

impl GroupedFrequencies {
    pub fn group(&self, key: u32) -> Option<&GroupFrequency> {
        self.groups
            .binary_search_by_key(&key, |g| g.key)
            .ok()
            .map(|i| &self.groups[i])
    }

    /// `d_X` over the masked-in tuples.
    pub fn distinct_lhs(&self) -> u64 {
        self.groups.len() as u64
    }
}

/// Builds the frequency table of `rhs` grouped by `lhs_keys`, restricted to
/// tuples where `mask` is true and `rhs` is non-NULL.
pub fn group_frequencies(rel: &Relation, lhs_keys: &[u32], rhs: usize, mask: &ValidityMask) -> GroupedFrequencies {
    let column = rel.column(rhs);
    let mut groups: BTreeMap<u32, GroupFrequency> = BTreeMap::new();
    let mut marginal = BTreeMap::new();
    let mut total = 0;
    for (i, &code) in column.iter().enumerate() {
        if !mask.get(i) || code == NULL_CODE {
            continue;
        }
        let key = lhs_keys[i];
        let group = groups.entry(key).or_insert_with(|| GroupFrequency {
            key,
            size: 0,
            counts: BTreeMap::new(),
        });
        group.size += 1;
        *group.counts.entry(code).or_insert(0) += 1;
        *marginal.entry(code).or_insert(0) += 1;
        total += 1;
    }
    GroupedFrequencies {
        groups: groups.into_values().collect(),
        marginal,
        total,
    }
}
