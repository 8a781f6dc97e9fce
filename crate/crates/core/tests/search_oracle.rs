use std::collections::HashSet;

use spexlab_core::canon::canonical_form;
use spexlab_core::graph::graph6;
use spexlab_core::oracle;
use spexlab_core::patterns::{self, PatternSpec};
use spexlab_core::search::{self, Mode, SearchConfig};
use spexlab_core::spectral::{self, BoundSpec};
use spexlab_core::{families, Graph};

fn config(m: usize, n_max: usize, connected: bool) -> SearchConfig {
    let mut cfg = SearchConfig::new(m).with_n_max(n_max);
    cfg.n_min = 1;
    cfg.connected_only = connected;
    cfg
}

#[test]
fn enumeration_matches_edge_subsets() {
    for m in 1..=6 {
        for connected in [true, false] {
            let cfg = config(m, 7, connected);
            let fast = search::enumerate(&cfg).unwrap();
            let forms: HashSet<_> = fast.iter().map(canonical_form).collect();
            assert_eq!(forms.len(), fast.len(), "duplicates at m={m}");
            let slow: HashSet<_> = oracle::graphs_with_edges_brute(m, 1, 7, connected)
                .iter()
                .map(canonical_form)
                .collect();
            assert_eq!(forms, slow, "m={m} connected={connected}");
        }
    }
}

#[test]
fn triangle_free_enumeration_matches_filtered_subsets() {
    let triangle = families::complete(3).unwrap();
    for m in 1..=6 {
        let cfg = config(m, 7, true).with_pattern(PatternSpec::Clique(3));
        let fast: HashSet<_> = search::enumerate(&cfg)
            .unwrap()
            .iter()
            .map(canonical_form)
            .collect();
        let slow: HashSet<_> = oracle::graphs_with_edges_brute(m, 1, 7, true)
            .into_iter()
            .filter(|g| patterns::generic_subiso(g, &triangle).unwrap().is_none())
            .map(|g| canonical_form(&g))
            .collect();
        assert_eq!(fast, slow, "m={m}");
    }
}

#[test]
fn every_reported_graph_passes_the_filter() {
    let grid = [
        PatternSpec::Fan(4),
        PatternSpec::Friendship(2),
        PatternSpec::Book(1),
        PatternSpec::Cycle(4),
    ];
    for p in grid {
        let cfg = config(8, 9, true).with_pattern(p.clone());
        let pattern = p.graph().unwrap().unwrap();
        for g in search::enumerate(&cfg).unwrap() {
            assert_eq!(g.size(), 8);
            assert!(g.is_connected());
            assert!(
                patterns::generic_subiso(&g, &pattern).unwrap().is_none(),
                "{p} in {}",
                graph6::encode(&g)
            );
        }
    }
}

#[test]
fn all_graphs_matches_brute_force() {
    for n in 0..=6 {
        let fast: HashSet<_> = search::all_graphs(n)
            .unwrap()
            .iter()
            .map(canonical_form)
            .collect();
        let slow: HashSet<_> = oracle::all_graphs_brute(n)
            .iter()
            .map(canonical_form)
            .collect();
        assert_eq!(fast, slow, "n={n}");
    }
}

#[test]
fn argmax_attains_best_lambda() {
    let cfg = config(9, 10, true).with_pattern(PatternSpec::Clique(3));
    let report = search::extremal_search(&cfg).unwrap();
    let best = report.best_lambda.unwrap();
    let all = search::enumerate(&cfg).unwrap();
    let max = all
        .iter()
        .map(|g| spectral::lambda_max(g).unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    assert!((best - max).abs() < 1e-9);
    assert!((best - 3.0).abs() < 1e-9);
    assert!(report.argmax.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(report.census.passed, all.len());
}

#[test]
fn bounds_hold_where_claimed() {
    for m in 6..=12 {
        let base = SearchConfig::new(m).with_n_max(9);
        let nosal = search::verify_bound(BoundSpec::Nosal { m }, &base).unwrap();
        assert!(!nosal.bound.unwrap().violated, "nosal m={m}");
        let bh = search::verify_bound(BoundSpec::BrualdiHoffman { m }, &base).unwrap();
        let check = bh.bound.unwrap();
        assert!(!check.violated, "bh m={m}");
        if !bh.n_capped {
            assert!(check.gap.abs() < 1e-8, "bh is attained at m={m}");
        }
    }
}

#[test]
fn hill_climb_respects_constraints() {
    for seed in 0..5 {
        let mut cfg = SearchConfig::new(10).with_pattern(PatternSpec::Clique(3));
        cfg.mode = Mode::HillClimb;
        cfg.seed = seed;
        cfg.budget = 2_000;
        let start = families::complete_bipartite(1, 10).unwrap();
        let report = search::hill_climb(&cfg, &start).unwrap();
        assert!(report.best_lambda.unwrap() >= 10f64.sqrt() - 1e-9);
        for form in &report.argmax {
            let g: Graph = graph6::decode(form.as_str()).unwrap();
            assert_eq!(g.size(), 10);
            assert!(patterns::is_free(&g, &PatternSpec::Clique(3)).unwrap());
        }
        let again = search::hill_climb(&cfg, &start).unwrap();
        assert_eq!(report, again, "seeded run is reproducible");
    }
}

#[test]
fn guard_rails_reject_large_runs() {
    assert!(search::enumerate(&SearchConfig::new(20)).is_err());
    assert!(search::enumerate(&config(10, 12, true)).is_err());
    assert!(search::all_graphs(search::ALL_GRAPHS_MAX_N + 1).is_err());
}
