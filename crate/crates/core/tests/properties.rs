use proptest::prelude::*;

use spexlab_core::canon::{canonical_form, isomorphic};
use spexlab_core::core_eta::{self, k_core, k_core_with_priority, JClass};
use spexlab_core::graph::{graph6, Graph, VertexSet};
use spexlab_core::oracle;
use spexlab_core::patterns::{self, PatternSpec};
use spexlab_core::spectral;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn graphs(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.45), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Random spanning tree (parent of v is below v) plus random extra edges.
fn connected_graphs(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<proptest::sample::Index>(), n.saturating_sub(1)),
            proptest::collection::vec(proptest::bool::weighted(0.3), n * n.saturating_sub(1) / 2),
        )
            .prop_map(move |(parents, bits)| {
                let mut g = graph_from_bits(n, &bits);
                for (i, p) in parents.iter().enumerate() {
                    let v = i + 1;
                    let u = p.index(v);
                    if !g.has_edge(u, v) {
                        g = g.add_edge(u, v).unwrap();
                    }
                }
                g
            })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graphs(0, 20)) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_matches_permutation_oracle(g in graphs(1, 7), h in graphs(1, 7)) {
        prop_assert_eq!(isomorphic(&g, &h), oracle::isomorphic_brute(&g, &h));
    }

    #[test]
    fn canonical_form_is_relabelling_invariant(
        (g, perm) in graphs(1, 12).prop_flat_map(|g| { let n = g.order(); (Just(g), permutation(n)) })
    ) {
        let h = g.relabel(&perm).unwrap();
        prop_assert!(g.order() > 9 || oracle::isomorphic_brute(&g, &h));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn join_and_union_laws(a in graphs(0, 5), b in graphs(0, 5), c in graphs(0, 5)) {
        let left = a.join(&b).unwrap().join(&c).unwrap();
        let right = a.join(&b.join(&c).unwrap()).unwrap();
        prop_assert_eq!(canonical_form(&left), canonical_form(&right));
        prop_assert_eq!(
            canonical_form(&a.disjoint_union(&b).unwrap()),
            canonical_form(&b.disjoint_union(&a).unwrap())
        );
        let j = a.join(&b).unwrap();
        prop_assert_eq!(j.size(), a.size() + b.size() + a.order() * b.order());
    }

    #[test]
    fn spectral_radius_matches_dense_spectrum(g in connected_graphs(2, 12)) {
        let r = spectral::spectral_radius(&g).unwrap();
        let spec = spectral::full_spectrum(&g).unwrap();
        prop_assert!((r.lambda1 - spec[0]).abs() <= 1e-8);
        prop_assert!(r.perron.iter().all(|&x| x > 0.0));
        let sum: f64 = spec.iter().sum();
        let sq: f64 = spec.iter().map(|l| l * l).sum();
        prop_assert!(sum.abs() <= 1e-8);
        prop_assert!((sq - 2.0 * g.size() as f64).abs() <= 1e-6);
    }

    #[test]
    fn adding_an_edge_raises_lambda(g in connected_graphs(3, 12), pick in any::<proptest::sample::Index>()) {
        let non_edges: Vec<(usize, usize)> = g.complement().edges();
        prop_assume!(!non_edges.is_empty());
        let (u, v) = non_edges[pick.index(non_edges.len())];
        let before = spectral::lambda_max(&g).unwrap();
        let after = spectral::lambda_max(&g.add_edge(u, v).unwrap()).unwrap();
        prop_assert!(after > before + 1e-10);
    }

    #[test]
    fn rayleigh_quotients_stay_below_lambda(
        (g, y) in graphs(1, 12).prop_flat_map(|g| {
            let n = g.order();
            (Just(g), proptest::collection::vec(0.0f64..1.0, n))
        })
    ) {
        let norm: f64 = y.iter().map(|v| v * v).sum();
        prop_assume!(norm > 1e-6);
        let quad: f64 = g.edges().iter().map(|&(a, b)| 2.0 * y[a] * y[b]).sum();
        prop_assert!(quad / norm <= spectral::lambda_max(&g).unwrap() + 1e-8);
    }

    #[test]
    fn fan_three_way_agreement(g in graphs(1, 9), k in 1usize..=3) {
        let p = PatternSpec::Fan(2 * k + 2);
        let fast = patterns::contains(&g, &p).unwrap();
        let by_paths = (0..g.order()).any(|u| patterns::neighborhood_longest_path(&g, u).unwrap() > 2 * k);
        let generic = patterns::generic_subiso(&g, &p.graph().unwrap().unwrap()).unwrap();
        prop_assert_eq!(fast.is_some(), by_paths);
        prop_assert_eq!(fast.is_some(), generic.is_some());
        if let Some(w) = fast {
            prop_assert!(w.is_valid(&g));
        }
    }

    #[test]
    fn friendship_three_way_agreement(g in graphs(1, 9), k in 1usize..=4) {
        let p = PatternSpec::Friendship(k);
        let fast = patterns::contains(&g, &p).unwrap();
        let by_matching = (0..g.order()).any(|u| patterns::neighborhood_max_matching(&g, u).unwrap() >= k);
        let generic = patterns::generic_subiso(&g, &p.graph().unwrap().unwrap()).unwrap();
        prop_assert_eq!(fast.is_some(), by_matching);
        prop_assert_eq!(fast.is_some(), generic.is_some());
    }

    #[test]
    fn book_width_agrees_with_generic(g in graphs(2, 9), r in 0usize..=4) {
        prop_assume!(g.size() > 0);
        let generic = patterns::generic_subiso(&g, &spexlab_core::families::book(r).unwrap()).unwrap();
        prop_assert_eq!(patterns::book_width(&g).unwrap() > r, generic.is_some());
    }

    #[test]
    fn containment_is_monotone(g in graphs(3, 9), extra in proptest::collection::vec(any::<proptest::sample::Index>(), 1..6)) {
        let mut h = g.clone();
        for e in extra {
            let non = h.complement().edges();
            if non.is_empty() { break; }
            let (u, v) = non[e.index(non.len())];
            h = h.add_edge(u, v).unwrap();
        }
        for p in oracle::pattern_grid() {
            if patterns::contains(&g, &p).unwrap().is_some() {
                let w = patterns::contains(&h, &p).unwrap();
                prop_assert!(w.is_some_and(|w| w.is_valid(&h)), "{} lost after adding edges", p);
            }
        }
    }

    #[test]
    fn k_core_is_order_independent(g in graphs(1, 14), k in 0usize..5, orders in proptest::collection::vec(permutation(14), 10)) {
        let core = k_core(&g, k);
        for order in orders {
            let order: Vec<usize> = order.into_iter().filter(|&v| v < g.order()).collect();
            prop_assert_eq!(k_core_with_priority(&g, g.vertices(), k, &order).core, core.core);
        }
        prop_assert!(core.core.iter().all(|v| g.degree_in(v, core.core) >= k));
    }

    #[test]
    fn k_core_matches_subset_oracle(g in graphs(1, 9), k in 0usize..5) {
        prop_assert_eq!(k_core(&g, k).core, oracle::k_core_brute(&g, k));
    }

    #[test]
    fn eta_machinery(g in connected_graphs(2, 12), k in 2usize..=4, picks in proptest::collection::vec(any::<u64>(), 5)) {
        let ctx = core_eta::decompose(&g, k).unwrap();
        prop_assert!(ctx.x.iter().all(|&x| x > 0.0 && x <= 1.0));
        prop_assert_eq!(ctx.x[ctx.u_star], 1.0);
        prop_assert_eq!(ctx.r.union(ctx.s).with(ctx.u_star), g.vertices());
        let slack = core_eta::slack_report(&ctx).unwrap();
        prop_assert!(slack.identity_residual <= 1e-6);
        prop_assert!(slack.eta_slack >= -1e-9);
        for mask in picks {
            let l = VertexSet(ctx.r.0 & mask);
            let cmp = core_eta::eta_core_inequality(&ctx, l).unwrap();
            prop_assert!(cmp.holds);
            prop_assert!(cmp.equality_consistent);
        }
        let rc = ctx.core_of(ctx.r).core;
        let classes = core_eta::classify_components(&ctx).unwrap();
        let covered = classes.iter().fold(VertexSet::EMPTY, |acc, c| {
            assert!(acc.intersection(c.component).is_empty());
            acc.union(c.component)
        });
        prop_assert_eq!(covered, rc);
        for c in &classes {
            prop_assert!(c.component.iter().all(|v| g.degree_in(v, c.component) + 1 >= k));
            let big = c.component.len() > 2 * k;
            prop_assert_eq!(c.class == JClass::J1, big);
            if c.class == JClass::J5 {
                prop_assert!(c.eta > 0.0);
            }
            prop_assert_eq!(c.t_j.is_some(), c.class.is_j4());
        }
    }
}
