//! Global top-k approximate functional dependency (AFD) discovery.
//!
//! Candidates `X -> A` are scored with the logical-entropy measure μ⁺ and the
//! `k` strongest non-exact dependencies over all LHS sets of size at most `L`
//! are returned. Two engines are provided:
//!
//! * [`search::run_base`] evaluates every candidate level by level;
//! * [`search::run_opt`] generates LHS sets with a prefix join, reuses LHS
//!   grouping across right-hand sides and prunes RHS attributes with exact-FD
//!   monotonicity and an optimistic upper bound on μ⁺.
//!
//! Both engines return the same ranked list on NULL-free relations; with
//! NULLs the upper-bound rule is heuristic and can be switched off.
//!
//! ```
//! use topk_afd::relation::{load_csv, LoadOptions};
//! use topk_afd::search::{run_opt, SearchConfig};
//!
//! let data = "x,y,z\n1,a,p\n1,a,q\n2,b,p\n2,c,q\n3,c,p\n";
//! let rel = load_csv(data.as_bytes(), &LoadOptions::default()).unwrap();
//! let (ranked, stats) = run_opt(&rel, &SearchConfig::new(3));
//! assert!(ranked.len() <= 3);
//! assert!(stats.evaluated_candidates > 0);
//! ```

pub mod error;
pub mod measure;
pub mod oracle;
pub mod relation;
pub mod report;
pub mod search;
pub mod topk;

pub use error::{Error, Result};
pub use measure::MeasureResult;
pub use relation::{Relation, Schema};
pub use search::{run_base, run_opt, SearchConfig, SearchStats};
pub use topk::{ScoredAfd, TopKHeap};
