//! LHS lattice nodes, RHS candidate bit vectors and the prefix join.

/// `S(X)`: a bit per attribute, set while the attribute is still a candidate
/// RHS for `X` and its descendants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RhsSet {
    words: Vec<u64>,
}

impl RhsSet {
    pub fn empty(m: usize) -> Self {
        RhsSet {
            words: vec![0; m.div_ceil(64)],
        }
    }

    /// All of `0..m`.
    pub fn full(m: usize) -> Self {
        let mut s = Self::empty(m);
        for i in 0..m {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersection(&self, other: &RhsSet) -> RhsSet {
        RhsSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Set bits in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }
}

/// An LHS candidate `X` with its RHS candidate set `S(X)`.
///
/// Grouping arrays for `X` are not stored on the node; the evaluator builds
/// them when the node is processed and reuses one buffer for every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LhsNode {
    pub attrs: Vec<usize>,
    pub rhs: RhsSet,
}

/// `{A_i}` with `S = R \ {A_i}` for every attribute. Empty when `m < 2`.
pub fn level1_nodes(m: usize) -> Vec<LhsNode> {
    if m < 2 {
        return Vec::new();
    }
    (0..m)
        .map(|i| {
            let mut rhs = RhsSet::full(m);
            rhs.remove(i);
            LhsNode {
                attrs: vec![i],
                rhs,
            }
        })
        .collect()
}

/// Joins lexicographically sorted level-ℓ nodes that share their first
/// `ℓ - 1` attributes. The child of `X1 < X2` is `X1 ∪ X2` with
/// `S = S(X1) ∩ S(X2)`; children with an empty `S` are dropped. Output is
/// lexicographically sorted.
pub fn apriori_join(level: &[LhsNode]) -> Vec<LhsNode> {
    let mut next = Vec::new();
    let Some(first) = level.first() else {
        return next;
    };
    let size = first.attrs.len();
    debug_assert!(level.iter().all(|n| n.attrs.len() == size));
    debug_assert!(level.windows(2).all(|w| w[0].attrs < w[1].attrs));

    fn prefix(n: &LhsNode) -> &[usize] {
        &n.attrs[..n.attrs.len() - 1]
    }
    let mut start = 0;
    while start < level.len() {
        let mut end = start + 1;
        while end < level.len() && prefix(&level[end]) == prefix(&level[start]) {
            end += 1;
        }
        let group = &level[start..end];
        for (i, left) in group.iter().enumerate() {
            if left.rhs.is_empty() {
                continue;
            }
            for right in &group[i + 1..] {
                let rhs = left.rhs.intersection(&right.rhs);
                if rhs.is_empty() {
                    continue;
                }
                let mut attrs = left.attrs.clone();
                attrs.push(right.attrs[size - 1]);
                next.push(LhsNode { attrs, rhs });
            }
        }
        start = end;
    }
    next
}
