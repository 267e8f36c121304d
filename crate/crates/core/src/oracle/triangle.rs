//! A relation on which the global top-2 must contain a non-minimal AFD.
//!
//! Attributes are `x, c, a, y, b`. `a` is mostly `x`, shifted to a second
//! value range when the rare flag `c` is set, and occasionally replaced by a
//! fresh unique value. So `{x} -> a` is good, `{x, c} -> a` is better, and
//! `{y} -> b` is a weaker dependency on disjoint attributes. Parameters are
//! drawn at random and the candidate relation is accepted only after the
//! oracle confirms the required score order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::relation::{Relation, RelationBuilder, Schema};

use super::reference::{oracle_candidates, OracleAfd};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dependency {
    pub lhs: Vec<usize>,
    pub rhs: usize,
}

impl Dependency {
    fn new(lhs: &[usize], rhs: usize) -> Self {
        Dependency {
            lhs: lhs.to_vec(),
            rhs,
        }
    }

    pub fn matches(&self, lhs: &[usize], rhs: usize) -> bool {
        self.lhs == lhs && self.rhs == rhs
    }
}

#[derive(Debug, Clone)]
pub struct TriangleFixture {
    pub relation: Relation,
    /// Minimal `{x} -> a`.
    pub f1: Dependency,
    /// Non-minimal `{x, c} -> a`, scoring above `f1`.
    pub f2: Dependency,
    /// `{y} -> b`, scoring strictly between 0 and `f1`.
    pub f3: Dependency,
    /// Oracle scores of `f1`, `f2`, `f3`.
    pub scores: [f64; 3],
    /// Largest LHS size the validation enumerated.
    pub max_lhs: usize,
}

const X: usize = 0;
const C: usize = 1;
const A: usize = 2;
const Y: usize = 3;
const B: usize = 4;
const ATTEMPTS: u64 = 400;

pub fn build_triangle_fixture() -> Result<TriangleFixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e1a_2026);
    for _ in 0..ATTEMPTS {
        let relation = candidate_relation(&mut rng)?;
        if let Some(fixture) = validate(relation) {
            return Ok(fixture);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no triangle fixture validated after {ATTEMPTS} attempts"
    )))
}

fn candidate_relation(rng: &mut ChaCha8Rng) -> Result<Relation> {
    let rows = rng.gen_range(60..=140);
    let x_card = rng.gen_range(3..=6);
    let flag_rate = rng.gen_range(0.05..0.25);
    let noise_rate = rng.gen_range(0.01..0.08);
    let y_card = rng.gen_range(rows / 4..=rows / 2);
    let b_agree = rng.gen_range(0.3..0.8);

    let mut builder = RelationBuilder::new(Schema::new(["x", "c", "a", "y", "b"]));
    for row in 0..rows {
        let x: u32 = rng.gen_range(0..x_card);
        let c = rng.gen_bool(flag_rate);
        let a = if rng.gen_bool(noise_rate) {
            format!("n{row}")
        } else if c {
            format!("s{x}")
        } else {
            format!("p{x}")
        };
        let y: u32 = rng.gen_range(0..y_card);
        let b = if rng.gen_bool(b_agree) { y } else { rng.gen_range(0..y_card) };
        let cells = [x.to_string(), u8::from(c).to_string(), a, y.to_string(), b.to_string()];
        builder.push_row(cells.iter().map(|s| Some(s.as_str())))?;
    }
    Ok(builder.finish())
}

fn validate(relation: Relation) -> Option<TriangleFixture> {
    let max_lhs = relation.attribute_count() - 1;
    let ranked = oracle_candidates(&relation, max_lhs);
    let f1 = Dependency::new(&[X], A);
    let f2 = Dependency::new(&[X, C], A);
    let f3 = Dependency::new(&[Y], B);
    let find = |d: &Dependency| ranked.iter().position(|r: &OracleAfd| d.matches(&r.lhs, r.rhs));

    let (p1, p2, p3) = (find(&f1)?, find(&f2)?, find(&f3)?);
    if p2 != 0 || p1 != 1 || ranked.len() < 3 {
        return None;
    }
    let (s1, s2, s3) = (&ranked[p1].exact.mu_plus, &ranked[p2].exact.mu_plus, &ranked[p3].exact.mu_plus);
    let zero = num_rational::BigRational::from_integer(0.into());
    let strictly_ordered = s2 > s1 && *s1 > ranked[2].exact.mu_plus && s1 > s3 && *s3 > zero;
    if !strictly_ordered {
        return None;
    }
    Some(TriangleFixture {
        scores: [ranked[p1].score, ranked[p2].score, ranked[p3].score],
        relation,
        f1,
        f2,
        f3,
        max_lhs,
    })
}
