//! Full runs on public datasets. Slow, so ignored by default:
//!
//! ```text
//! cargo test --release -p topk-afd --test datasets -- --ignored --nocapture
//! ```

use std::path::PathBuf;

use topk_afd::relation::{load_csv_path, LoadOptions};
use topk_afd::report::pruning_ratio;
use topk_afd::{run_base, run_opt, SearchConfig};

fn dataset(name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os("TOPK_AFD_DATASETS")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../datasets"));
    Some(dir.join(name)).filter(|p| p.is_file())
}

#[test]
#[ignore = "runs both engines on the full Adult data"]
fn adult_full_run() {
    let Some(path) = dataset("adult.csv") else {
        eprintln!("adult.csv not found, skipping");
        return;
    };
    let options = LoadOptions {
        null_token: "?".into(),
        ..LoadOptions::default()
    };
    let rel = load_csv_path(path, &options).unwrap();
    assert_eq!(rel.attribute_count(), 15);
    let cfg = SearchConfig::new(20).with_max_lhs(5);
    let (base, base_stats) = run_base(&rel, &cfg);
    let (opt, opt_stats) = run_opt(&rel, &cfg);
    eprintln!(
        "adult: base #ECN {} in {:?}, opt #ECN {} in {:?} (reference 48200), pruning ratio {:.2}%, exact FDs {}",
        base_stats.evaluated_candidates,
        base_stats.elapsed,
        opt_stats.evaluated_candidates,
        opt_stats.elapsed,
        100.0 * pruning_ratio(base_stats.evaluated_candidates, opt_stats.evaluated_candidates),
        base_stats.exact_fd_count,
    );
    assert_eq!(base_stats.evaluated_candidates + base_stats.degenerate_skipped, 52080);
    assert_eq!(base.len(), opt.len());
    for (b, o) in base.iter().zip(&opt) {
        assert_eq!((&b.lhs, b.rhs), (&o.lhs, o.rhs));
        assert_eq!(b.score.to_bits(), o.score.to_bits());
    }
}
