//! Seeded synthetic relations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::relation::{Relation, RelationBuilder, Schema};

/// `lhs -> rhs` planted into generated data; a row is corrupted with
/// probability `noise_rate` by giving `rhs` a value different from the one
/// the LHS determines.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedDependency {
    pub lhs: Vec<usize>,
    pub rhs: usize,
    pub noise_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub rows: usize,
    /// Distinct values per attribute; its length is the attribute count.
    pub cardinalities: Vec<u32>,
    pub null_probability: f64,
    pub seed: u64,
    pub planted: Option<PlantedDependency>,
}

impl SynthSpec {
    pub fn uniform(rows: usize, attributes: usize, cardinality: u32, seed: u64) -> Self {
        SynthSpec {
            rows,
            cardinalities: vec![cardinality; attributes],
            null_probability: 0.0,
            seed,
            planted: None,
        }
    }

    pub fn with_nulls(mut self, probability: f64) -> Self {
        self.null_probability = probability;
        self
    }

    pub fn with_planted(mut self, planted: PlantedDependency) -> Self {
        self.planted = Some(planted);
        self
    }

    pub fn attributes(&self) -> usize {
        self.cardinalities.len()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.cardinalities.is_empty() {
            return bad("at least one attribute is required".into());
        }
        if self.cardinalities.contains(&0) {
            return bad("cardinalities must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.null_probability) {
            return bad(format!("null probability {} outside [0, 1]", self.null_probability));
        }
        if let Some(p) = &self.planted {
            let m = self.attributes();
            if !(0.0..=1.0).contains(&p.noise_rate) {
                return bad(format!("noise rate {} outside [0, 1]", p.noise_rate));
            }
            if p.lhs.is_empty() || p.rhs >= m || p.lhs.iter().any(|&a| a >= m || a == p.rhs) {
                return bad("planted dependency needs a non-empty LHS of valid attributes disjoint from its RHS".into());
            }
        }
        Ok(())
    }
}

/// Generates a relation; identical specs yield identical relations.
///
/// Values are `v<code>`. The planted RHS value is a fixed mix of the LHS
/// codes; NULLs are applied last, independently per cell.
pub fn generate(spec: &SynthSpec) -> Result<Relation> {
    spec.validate()?;
    let m = spec.attributes();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut builder = RelationBuilder::new(Schema::new((0..m).map(|i| format!("a{i}"))));
    let mut codes = vec![0u32; m];
    let mut cells: Vec<Option<String>> = vec![None; m];

    for _ in 0..spec.rows {
        for (attr, code) in codes.iter_mut().enumerate() {
            *code = rng.gen_range(0..spec.cardinalities[attr]);
        }
        if let Some(p) = &spec.planted {
            let card = spec.cardinalities[p.rhs];
            let determined = p
                .lhs
                .iter()
                .fold(0u64, |acc, &a| acc.wrapping_mul(1_000_003).wrapping_add(codes[a] as u64 + 1))
                % card as u64;
            let mut value = determined as u32;
            if card > 1 && rng.gen_bool(p.noise_rate) {
                value = (value + rng.gen_range(1..card)) % card;
            }
            codes[p.rhs] = value;
        }
        for attr in 0..m {
            let null = spec.null_probability > 0.0 && rng.gen_bool(spec.null_probability);
            cells[attr] = (!null).then(|| format!("v{}", codes[attr]));
        }
        builder.push_row(cells.iter().map(|c| c.as_deref()))?;
    }
    Ok(builder.finish())
}
