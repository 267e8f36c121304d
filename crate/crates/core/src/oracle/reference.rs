//! Brute-force reference scoring in exact rational arithmetic.
//!
//! pdep is computed from its pair interpretation: for every valid tuple `t`,
//! the fraction of tuples `u` (with replacement) sharing `t[X]` that also
//! share `t[A]`. Averaging over `t` gives `Σ_g Σ_a f_{g,a}² / |g| / n`
//! without ever materialising groups. O(n²) per candidate.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::relation::{Relation, NULL_CODE};

fn ratio(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn valid_rows(rel: &Relation, lhs: &[usize], rhs: usize) -> Vec<usize> {
    (0..rel.row_count())
        .filter(|&row| lhs.iter().chain(std::iter::once(&rhs)).all(|&a| rel.code(a, row) != NULL_CODE))
        .collect()
}

fn agree(rel: &Relation, attrs: &[usize], t: usize, u: usize) -> bool {
    attrs.iter().all(|&a| rel.code(a, t) == rel.code(a, u))
}

/// `pdep(X -> A)` on tuples non-NULL over `X ∪ {A}`.
pub fn oracle_pdep(rel: &Relation, lhs: &[usize], rhs: usize) -> Result<BigRational> {
    let rows = valid_rows(rel, lhs, rhs);
    pdep_on(rel, &rows, lhs, rhs)
}

/// `pdep(A)` on tuples non-NULL over `X ∪ {A}`.
pub fn oracle_pdep_marginal(rel: &Relation, lhs: &[usize], rhs: usize) -> Result<BigRational> {
    let rows = valid_rows(rel, lhs, rhs);
    pdep_on(rel, &rows, &[], rhs)
}

fn pdep_on(rel: &Relation, rows: &[usize], lhs: &[usize], rhs: usize) -> Result<BigRational> {
    if rows.is_empty() {
        return Err(Error::UndefinedMeasure("no valid tuples"));
    }
    let mut sum = BigRational::zero();
    for &t in rows {
        let mut same_lhs = 0;
        let mut same_both = 0;
        for &u in rows {
            if agree(rel, lhs, t, u) {
                same_lhs += 1;
                if rel.code(rhs, t) == rel.code(rhs, u) {
                    same_both += 1;
                }
            }
        }
        sum += ratio(same_both, same_lhs);
    }
    Ok(sum / BigInt::from(rows.len()))
}

/// Exact μ⁺ of one candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleScore {
    pub mu_plus: BigRational,
    pub pdep_cond: BigRational,
    pub pdep_marg: BigRational,
    pub valid_count: usize,
    pub distinct_lhs: usize,
}

impl OracleScore {
    pub fn score(&self) -> f64 {
        self.mu_plus.to_f64().expect("finite rational")
    }

    pub fn is_exact(&self) -> bool {
        self.mu_plus.is_one()
    }
}

/// μ⁺ transcribed literally from its definition; `None` when at most one
/// tuple is valid.
pub fn oracle_mu_plus(rel: &Relation, lhs: &[usize], rhs: usize) -> Option<OracleScore> {
    let rows = valid_rows(rel, lhs, rhs);
    let n = rows.len();
    if n <= 1 {
        return None;
    }
    let pdep_cond = pdep_on(rel, &rows, lhs, rhs).ok()?;
    let pdep_marg = pdep_on(rel, &rows, &[], rhs).ok()?;
    let distinct_lhs = rows
        .iter()
        .enumerate()
        .filter(|&(i, &t)| !rows[..i].iter().any(|&u| agree(rel, lhs, t, u)))
        .count();

    let one = BigRational::one();
    let mu_plus = if distinct_lhs == n || pdep_marg == one {
        one
    } else {
        let rho = (&one - &pdep_cond) / (&one - &pdep_marg) * ratio(n - 1, n - distinct_lhs);
        let score = &one - rho;
        if score < BigRational::zero() {
            BigRational::zero()
        } else {
            score
        }
    };
    Some(OracleScore {
        mu_plus,
        pdep_cond,
        pdep_marg,
        valid_count: n,
        distinct_lhs,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleAfd {
    pub lhs: Vec<usize>,
    pub rhs: usize,
    pub score: f64,
    pub exact: OracleScore,
}

fn oracle_order(a: &OracleAfd, b: &OracleAfd) -> Ordering {
    b.exact
        .mu_plus
        .cmp(&a.exact.mu_plus)
        .then_with(|| a.lhs.len().cmp(&b.lhs.len()))
        .then_with(|| a.lhs.cmp(&b.lhs))
        .then_with(|| a.rhs.cmp(&b.rhs))
}

/// Every non-exact, non-degenerate `X -> A` with `1 <= |X| <= max_lhs`,
/// ranked best first.
///
/// # Panics
///
/// If the relation has more than 24 attributes.
pub fn oracle_candidates(rel: &Relation, max_lhs: usize) -> Vec<OracleAfd> {
    let m = rel.attribute_count();
    assert!(m <= 24, "oracle enumeration is limited to 24 attributes");
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << m) {
        if mask.count_ones() as usize > max_lhs {
            continue;
        }
        let lhs: Vec<usize> = (0..m).filter(|&a| mask & (1 << a) != 0).collect();
        for rhs in (0..m).filter(|&a| mask & (1 << a) == 0) {
            if let Some(exact) = oracle_mu_plus(rel, &lhs, rhs) {
                if !exact.is_exact() {
                    out.push(OracleAfd {
                        lhs: lhs.clone(),
                        rhs,
                        score: exact.score(),
                        exact,
                    });
                }
            }
        }
    }
    out.sort_by(oracle_order);
    out
}

/// The global top-k: the first `min(k, |F|)` of [`oracle_candidates`].
pub fn oracle_topk(rel: &Relation, k: usize, max_lhs: usize) -> Vec<OracleAfd> {
    let mut all = oracle_candidates(rel, max_lhs);
    all.truncate(k);
    all
}
