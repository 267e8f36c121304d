//! Independent reference implementations and test-data generators.
//!
//! Nothing here shares arithmetic with [`crate::measure`] or
//! [`crate::search`]: scores are computed by pair enumeration in exact
//! rational arithmetic and candidates by bitmask enumeration.

mod reference;
mod synth;
mod triangle;

pub use reference::{oracle_candidates, oracle_mu_plus, oracle_pdep, oracle_pdep_marginal, oracle_topk, OracleAfd, OracleScore};
pub use synth::{generate, PlantedDependency, SynthSpec};
pub use triangle::{build_triangle_fixture, Dependency, TriangleFixture};
