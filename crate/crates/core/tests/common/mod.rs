//! Seeded relation corpora and result comparisons shared by the
//! integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topk_afd::oracle::{generate, oracle_mu_plus, OracleAfd, PlantedDependency, SynthSpec};
use topk_afd::{Relation, ScoredAfd, SearchConfig};

/// Scores closer than this are treated as tied when comparing against the
/// exact oracle ranking.
pub const SCORE_TOLERANCE: f64 = 1e-12;

pub const K_CHOICES: [usize; 3] = [1, 3, 10];

/// One corpus instance with the search parameters to run it under.
pub struct Case {
    pub seed: u64,
    pub relation: Relation,
    pub config: SearchConfig,
}

/// Parameters of corpus instance `seed`: `rows <= max_rows`,
/// `2 <= attrs <= max_attrs`, cardinalities mixing tiny and near-unique
/// columns, and a planted dependency every third instance.
pub fn corpus_spec(seed: u64, max_rows: usize, max_attrs: usize, null_probability: f64) -> SynthSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    let rows = rng.gen_range(2..=max_rows);
    let attrs = rng.gen_range(2..=max_attrs);
    let cardinalities = (0..attrs)
        .map(|_| match rng.gen_range(0..4) {
            0 => rng.gen_range(1..=2),
            1 => rng.gen_range(2..=4),
            2 => rng.gen_range(3..=(rows as u32 / 3).max(3)),
            _ => rng.gen_range((rows as u32 / 2).max(1)..=rows as u32),
        })
        .collect();
    let planted = (seed % 3 == 0).then(|| {
        let rhs = rng.gen_range(0..attrs);
        let lhs: Vec<usize> = (0..attrs).filter(|&a| a != rhs && rng.gen_bool(0.4)).collect();
        let lhs = if lhs.is_empty() { vec![(rhs + 1) % attrs] } else { lhs };
        PlantedDependency {
            lhs,
            rhs,
            noise_rate: [0.0, 0.05, 0.2][rng.gen_range(0..3)],
        }
    });
    SynthSpec {
        rows,
        cardinalities,
        null_probability,
        seed,
        planted,
    }
}

pub fn corpus(count: u64, max_rows: usize, max_attrs: usize, max_lhs: usize, null_probability: f64) -> Vec<Case> {
    (0..count)
        .map(|seed| {
            let spec = corpus_spec(seed, max_rows, max_attrs, null_probability);
            let relation = generate(&spec).expect("corpus spec is valid");
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let k = K_CHOICES[rng.gen_range(0..K_CHOICES.len())];
            let config = SearchConfig::new(k).with_max_lhs(rng.gen_range(1..=max_lhs));
            Case {
                seed,
                relation,
                config,
            }
        })
        .collect()
}

/// The no-NULL corpus of the oracle and differential checks.
pub fn standard_corpus() -> Vec<Case> {
    corpus(240, 60, 7, 4, 0.0)
}

/// The same shapes with NULL cells.
pub fn null_corpus() -> Vec<Case> {
    corpus(120, 60, 7, 4, 0.15)
}

/// Checks an engine result against the exact oracle ranking. Positions may
/// hold different dependencies only where the exact scores tie within
/// [`SCORE_TOLERANCE`]; every engine entry must be a genuine non-exact
/// candidate with the oracle's score.
pub fn compare_with_oracle(rel: &Relation, engine: &[ScoredAfd], oracle: &[OracleAfd]) -> Result<(), String> {
    if engine.len() != oracle.len() {
        return Err(format!("length {} vs oracle {}", engine.len(), oracle.len()));
    }
    for (i, (e, o)) in engine.iter().zip(oracle).enumerate() {
        if (e.score - o.score).abs() > SCORE_TOLERANCE {
            return Err(format!(
                "rank {i}: {:?}->{} scores {} but oracle rank holds {:?}->{} at {}",
                e.lhs, e.rhs, e.score, o.lhs, o.rhs, o.score
            ));
        }
        if e.lhs != o.lhs || e.rhs != o.rhs {
            let exact = oracle_mu_plus(rel, &e.lhs, e.rhs).ok_or_else(|| format!("rank {i}: degenerate candidate returned"))?;
            if exact.is_exact() || (exact.score() - e.score).abs() > SCORE_TOLERANCE {
                return Err(format!("rank {i}: {:?}->{} has oracle score {}", e.lhs, e.rhs, exact.score()));
            }
        }
    }
    Ok(())
}

/// Element-wise identity of two engine results, scores bit-for-bit.
pub fn compare_engines(base: &[ScoredAfd], opt: &[ScoredAfd]) -> Result<(), String> {
    if base.len() != opt.len() {
        return Err(format!("length {} vs {}", base.len(), opt.len()));
    }
    for (i, (b, o)) in base.iter().zip(opt).enumerate() {
        if b.lhs != o.lhs || b.rhs != o.rhs || b.score.to_bits() != o.score.to_bits() {
            return Err(format!(
                "rank {i}: base {:?}->{} {} vs opt {:?}->{} {}",
                b.lhs, b.rhs, b.score, o.lhs, o.rhs, o.score
            ));
        }
    }
    Ok(())
}

/// All subsets of `0..m` not containing `excluded`, as sorted index lists.
pub fn subsets_without(m: usize, excluded: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << m))
        .filter(|mask| mask & (1 << excluded) == 0)
        .map(|mask| (0..m).filter(|&a| mask & (1 << a) != 0).collect())
        .collect()
}
