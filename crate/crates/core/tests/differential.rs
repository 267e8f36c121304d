mod common;

use common::{compare_engines, compare_with_oracle, null_corpus, standard_corpus};
use topk_afd::oracle::{generate, oracle_topk, SynthSpec};
use topk_afd::search::{apriori_join, level1_nodes, theoretical_candidate_count, LhsNode, RhsSet};
use topk_afd::{run_base, run_opt, SearchConfig};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn base_matches_oracle() {
    for case in standard_corpus() {
        let (ranked, _) = run_base(&case.relation, &case.config);
        let oracle = oracle_topk(&case.relation, case.config.k, case.config.max_lhs);
        if let Err(e) = compare_with_oracle(&case.relation, &ranked, &oracle) {
            panic!("seed {}: {e}", case.seed);
        }
    }
}

#[test]
fn opt_matches_base_without_nulls() {
    for case in standard_corpus() {
        let (base, base_stats) = run_base(&case.relation, &case.config);
        let (opt, opt_stats) = run_opt(&case.relation, &case.config);
        if let Err(e) = compare_engines(&base, &opt) {
            panic!("seed {}: {e}", case.seed);
        }
        assert!(opt_stats.evaluated_candidates <= base_stats.evaluated_candidates, "seed {}", case.seed);
    }
}

#[test]
fn opt_matches_base_with_nulls_and_no_bound_pruning() {
    for case in null_corpus() {
        let cfg = case.config.with_ub_pruning(false);
        let (base, _) = run_base(&case.relation, &cfg);
        let (opt, _) = run_opt(&case.relation, &cfg);
        if let Err(e) = compare_engines(&base, &opt) {
            panic!("seed {}: {e}", case.seed);
        }
    }
}

/// With NULLs the bound is a heuristic; divergences are counted, not
/// asserted.
#[test]
fn bound_pruning_with_nulls_is_reported() {
    let cases = null_corpus();
    let diverged = cases
        .iter()
        .filter(|case| {
            let (base, _) = run_base(&case.relation, &case.config);
            let (opt, _) = run_opt(&case.relation, &case.config);
            compare_engines(&base, &opt).is_err()
        })
        .count();
    eprintln!("bound pruning with NULLs: {diverged} of {} instances differ from the exhaustive result", cases.len());
}

#[test]
fn evaluation_counts() {
    for case in standard_corpus().into_iter().chain(null_corpus()) {
        let m = case.relation.attribute_count();
        let (_, base) = run_base(&case.relation, &case.config);
        let (_, opt) = run_opt(&case.relation, &case.config);
        let theoretical = theoretical_candidate_count(m, case.config.max_lhs).unwrap() as u64;
        assert_eq!(base.evaluated_candidates + base.degenerate_skipped, theoretical, "seed {}", case.seed);
        assert!(opt.evaluated_candidates <= base.evaluated_candidates, "seed {}", case.seed);

        let unpruned = case.config.with_ub_pruning(false).with_fd_pruning(false);
        let (_, opt_all) = run_opt(&case.relation, &unpruned);
        assert_eq!(opt_all.evaluated_candidates, base.evaluated_candidates, "seed {}", case.seed);
        assert_eq!(opt_all.pruned_by_exact_fd + opt_all.pruned_by_upper_bound, 0);
    }
}

#[test]
fn exact_fds_never_returned() {
    let spec = SynthSpec::uniform(80, 5, 4, 17).with_planted(topk_afd::oracle::PlantedDependency {
        lhs: vec![0, 1],
        rhs: 4,
        noise_rate: 0.0,
    });
    let rel = generate(&spec).unwrap();
    for (ranked, _) in [run_base(&rel, &SearchConfig::new(50)), run_opt(&rel, &SearchConfig::new(50))] {
        assert!(ranked.iter().all(|a| !a.diagnostics.is_exact && a.score < 1.0));
        assert!(!ranked.iter().any(|a| a.rhs == 4 && a.lhs.starts_with(&[0, 1])));
    }
}

fn random_level(rng: &mut ChaCha8Rng, m: usize, size: usize) -> Vec<LhsNode> {
    let mut level = level1_nodes(m);
    for _ in 1..size {
        level = apriori_join(&level);
    }
    for node in &mut level {
        for a in 0..m {
            if rng.gen_bool(0.3) {
                node.rhs.remove(a);
            }
        }
    }
    level.retain(|n| !n.rhs.is_empty() && rng.gen_bool(0.9));
    level
}

#[test]
fn cleared_bits_stay_cleared_in_children() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let m = rng.gen_range(3..=9);
        let size = rng.gen_range(1..m - 1);
        let level = random_level(&mut rng, m, size);
        let children = apriori_join(&level);
        for child in &children {
            let parents: Vec<&LhsNode> = level
                .iter()
                .filter(|p| {
                    let mut without_last = child.attrs.clone();
                    let last = without_last.pop().unwrap();
                    let mut without_second = child.attrs.clone();
                    without_second.remove(size - 1);
                    p.attrs == without_last || (p.attrs == without_second && last == child.attrs[size])
                })
                .collect();
            assert_eq!(parents.len(), 2, "child {:?} has generating parents", child.attrs);
            for p in parents {
                for a in 0..m {
                    assert!(!child.rhs.contains(a) || p.rhs.contains(a), "bit {a} revived in {:?}", child.attrs);
                }
            }
            assert!(!child.rhs.is_empty());
        }
        // Every pair sharing a prefix with a non-empty intersection yields a child.
        let expected = level
            .iter()
            .enumerate()
            .flat_map(|(i, x)| level[i + 1..].iter().map(move |y| (x, y)))
            .filter(|(x, y)| x.attrs[..size - 1] == y.attrs[..size - 1] && !x.rhs.intersection(&y.rhs).is_empty())
            .count();
        assert_eq!(children.len(), expected);
    }
}

#[test]
fn join_of_full_sets_enumerates_every_combination() {
    let m = 7;
    let mut level = level1_nodes(m);
    for size in 2..m {
        level = apriori_join(&level);
        let count = level.len();
        let binom = (0..size).fold(1usize, |acc, i| acc * (m - i) / (i + 1));
        assert_eq!(count, binom);
        for node in &level {
            let mut outside = RhsSet::full(m);
            node.attrs.iter().for_each(|&a| outside.remove(a));
            assert_eq!(node.rhs, outside);
        }
    }
}
