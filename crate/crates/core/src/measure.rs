//! The μ⁺ measure and its optimistic upper bound.
//!
//! All functions start from integer frequency statistics. The disagreement
//! terms `1 - pdep` are formed from integer numerators so that near-exact
//! dependencies do not lose precision to cancellation, and exactness is
//! decided on integers rather than by comparing a float against 1.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relation::GroupedFrequencies;

/// Integer-exact statistics of one candidate `X -> A` on its valid tuples.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FrequencySummary {
    /// `n = |r'|`.
    pub valid_count: u64,
    /// `d_X` among the valid tuples.
    pub distinct_lhs: u64,
    /// Number of unordered tuple pairs that agree on `X` but not on `A`.
    pub violating_pairs: u64,
    /// `Σ_g (|g|² - Σ_a f_{g,a}²) / |g|`, i.e. `n · (1 - pdep(X -> A))`.
    pub disagreement_mass: f64,
    /// `Σ_a c_a²` over the marginal RHS counts.
    pub marginal_square_sum: u64,
}

impl FrequencySummary {
    /// Accumulates a summary from per-group `(size, Σ_a f²)` pairs and the
    /// marginal counts.
    pub fn from_parts<G, M>(groups: G, marginal: M) -> Self
    where
        G: IntoIterator<Item = (u64, u64)>,
        M: IntoIterator<Item = u64>,
    {
        let mut s = FrequencySummary::default();
        for (size, square_sum) in groups {
            s.add_group(size, square_sum);
        }
        s.marginal_square_sum = marginal.into_iter().map(|c| c * c).sum();
        s
    }

    /// Adds one LHS group of `size` tuples whose RHS counts square-sum to
    /// `square_sum`. Empty groups are ignored.
    #[inline]
    pub fn add_group(&mut self, size: u64, square_sum: u64) {
        if size == 0 {
            return;
        }
        self.valid_count += size;
        self.distinct_lhs += 1;
        let gap = size * size - square_sum;
        if gap > 0 {
            self.violating_pairs += gap / 2;
            self.disagreement_mass += gap as f64 / size as f64;
        }
    }

    pub fn from_table(table: &GroupedFrequencies) -> Self {
        Self::from_parts(
            table
                .groups
                .iter()
                .map(|g| (g.size, g.counts.values().map(|f| f * f).sum())),
            table.marginal.values().copied(),
        )
    }

    /// Every group is homogeneous in `A`.
    pub fn is_homogeneous(&self) -> bool {
        self.violating_pairs == 0
    }

    /// The RHS takes a single value on the valid tuples.
    pub fn is_constant_rhs(&self) -> bool {
        let n = self.valid_count as u128;
        self.marginal_square_sum as u128 == n * n
    }

    pub fn pdep_conditional(&self) -> Result<f64> {
        if self.valid_count == 0 {
            return Err(Error::UndefinedMeasure("pdep over zero tuples"));
        }
        Ok(1.0 - self.conditional_gap())
    }

    pub fn pdep_marginal(&self) -> Result<f64> {
        if self.valid_count == 0 {
            return Err(Error::UndefinedMeasure("pdep over zero tuples"));
        }
        let n = self.valid_count as f64;
        Ok(self.marginal_square_sum as f64 / (n * n))
    }

    /// `1 - pdep(X -> A)`.
    fn conditional_gap(&self) -> f64 {
        self.disagreement_mass / self.valid_count as f64
    }

    /// `1 - pdep(A)`, from the integer numerator `n² - Σ c²`.
    fn marginal_gap(&self) -> f64 {
        let n = self.valid_count as u128;
        let numerator = n * n - self.marginal_square_sum as u128;
        numerator as f64 / (n * n) as f64
    }

    /// μ⁺_opt for this candidate, using its own `n`, `d_X` and `pdep(A)`.
    pub fn upper_bound(&self) -> Result<f64> {
        if self.valid_count == 0 || self.is_constant_rhs() {
            return Err(Error::DegenerateBound("pdep(A) = 1"));
        }
        bound_from_gap(self.marginal_gap(), self.valid_count, self.distinct_lhs)
    }
}

/// Score and diagnostics of one candidate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureResult {
    pub mu_plus: f64,
    pub rho: f64,
    pub pdep_cond: f64,
    pub pdep_marg: f64,
    pub distinct_lhs: u64,
    pub valid_count: u64,
    pub is_exact: bool,
}

/// `pdep(X -> A) = Σ_g |g|/n Σ_a (f_{g,a}/|g|)²`.
pub fn pdep_conditional(table: &GroupedFrequencies) -> Result<f64> {
    FrequencySummary::from_table(table).pdep_conditional()
}

/// `pdep(A) = Σ_a (c_a/n)²`.
pub fn pdep_marginal<I: IntoIterator<Item = u64>>(counts: I) -> Result<f64> {
    let counts: Vec<u64> = counts.into_iter().collect();
    let n: u64 = counts.iter().sum();
    if n == 0 {
        return Err(Error::UndefinedMeasure("pdep over zero tuples"));
    }
    let nf = n as f64;
    Ok(counts.iter().map(|&c| (c * c) as f64).sum::<f64>() / (nf * nf))
}

/// μ⁺ of a candidate.
///
/// A candidate is exact when `d_X = n`, the RHS is constant, or every group
/// is homogeneous; its score is then 1 and `rho` is 0. Otherwise
/// `rho = (1 - pdep(X->A)) / (1 - pdep(A)) · (n - 1) / (n - d_X)` and the
/// score is `max(0, 1 - rho)`.
pub fn mu_plus(summary: &FrequencySummary) -> Result<MeasureResult> {
    let n = summary.valid_count;
    if n <= 1 {
        return Err(Error::UndefinedMeasure("fewer than two valid tuples"));
    }
    let d = summary.distinct_lhs;
    if d == 0 || d > n {
        return Err(Error::UndefinedMeasure("distinct LHS count outside 1..=n"));
    }
    let pdep_cond = summary.pdep_conditional()?;
    let pdep_marg = summary.pdep_marginal()?;
    let exact = d == n || summary.is_constant_rhs() || summary.is_homogeneous();
    if exact {
        return Ok(MeasureResult {
            mu_plus: 1.0,
            rho: 0.0,
            pdep_cond,
            pdep_marg,
            distinct_lhs: d,
            valid_count: n,
            is_exact: true,
        });
    }
    let correction = (n - 1) as f64 / (n - d) as f64;
    let rho = summary.conditional_gap() / summary.marginal_gap() * correction;
    Ok(MeasureResult {
        mu_plus: (1.0 - rho).max(0.0),
        rho,
        pdep_cond,
        pdep_marg,
        distinct_lhs: d,
        valid_count: n,
        is_exact: false,
    })
}

/// μ⁺_opt(X -> A) `= 1 - (n - 1) / (n · (1 - pdep(A)) · (n - d_X))`.
///
/// Bounds μ⁺ of every non-exact `X' -> A` with `X' ⊃ X` on NULL-free
/// relations. May be negative; callers compare it against a threshold.
pub fn mu_plus_opt(pdep_marg: f64, n: u64, distinct_lhs: u64) -> Result<f64> {
    if pdep_marg >= 1.0 {
        return Err(Error::DegenerateBound("pdep(A) = 1"));
    }
    bound_from_gap(1.0 - pdep_marg, n, distinct_lhs)
}

fn bound_from_gap(marginal_gap: f64, n: u64, distinct_lhs: u64) -> Result<f64> {
    if distinct_lhs >= n {
        return Err(Error::DegenerateBound("d_X = n"));
    }
    let nf = n as f64;
    Ok(1.0 - (nf - 1.0) / (nf * marginal_gap * (n - distinct_lhs) as f64))
}
