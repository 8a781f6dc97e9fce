//! Brute-force reference implementations and the self-test that compares the
//! fast code paths against them.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::{canonical_form, isomorphic, CanonicalForm};
use crate::core_eta::k_core;
use crate::error::{Error, Result};
use crate::graph::{graph6, Graph, VertexSet};
use crate::patterns::{self, PatternSpec};
use crate::random;
use crate::search::{self, SearchConfig};

/// Isomorphism by trying every permutation (n ≤ 9).
pub fn isomorphic_brute(g: &Graph, h: &Graph) -> bool {
    let n = g.order();
    assert!(n <= 9, "permutation oracle is for tiny graphs");
    if n != h.order() || g.size() != h.size() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(g: &Graph, h: &Graph, perm: &mut Vec<usize>, i: usize) -> bool {
        let n = perm.len();
        if i == n {
            return true;
        }
        for j in i..n {
            perm.swap(i, j);
            // vertex i of g goes to perm[i]; check edges back to earlier vertices
            if (0..i).all(|a| g.has_edge(a, i) == h.has_edge(perm[a], perm[i]))
                && rec(g, h, perm, i + 1)
            {
                return true;
            }
            perm.swap(i, j);
        }
        false
    }
    rec(g, h, &mut perm, 0)
}

/// k-core as the union of all vertex subsets with internal minimum degree ≥ k.
pub fn k_core_brute(g: &Graph, k: usize) -> VertexSet {
    let n = g.order();
    assert!(n <= 16, "subset oracle is for small graphs");
    let mut union = VertexSet::EMPTY;
    for mask in 1u64..(1 << n) {
        let s = VertexSet(mask);
        if s.iter().all(|v| g.degree_in(v, s) >= k) {
            union = union.union(s);
        }
    }
    union
}

fn dedup(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    graphs
        .into_iter()
        .filter(|g| seen.insert(canonical_form(g)))
        .collect()
}

/// Graphs with `m` edges and no isolated vertices, `n_min ≤ n ≤ n_max`, by
/// edge-subset enumeration and canonical deduplication.
pub fn graphs_with_edges_brute(
    m: usize,
    n_min: usize,
    n_max: usize,
    connected: bool,
) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in n_min..=n_max {
        let all = crate::families::complete(n)
            .map(|k| k.edges())
            .unwrap_or_default();
        if all.len() < m {
            continue;
        }
        let mut chosen = Vec::new();
        crate::core_eta::for_each_combination(all.len(), m, &mut chosen, &mut |idx| {
            let edges: Vec<(usize, usize)> = idx.iter().map(|&i| all[i]).collect();
            let g = Graph::from_edges(n, &edges).expect("valid edges");
            if g.isolated_vertices().is_empty() && (!connected || g.is_connected()) {
                out.push(g);
            }
            true
        });
    }
    dedup(out)
}

/// Every graph on `n` vertices up to isomorphism, by enumerating all edge sets (n ≤ 6).
pub fn all_graphs_brute(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "2^C(n,2) enumeration is for n <= 6");
    let all = crate::families::complete(n)
        .map(|k| k.edges())
        .unwrap_or_default();
    dedup((0u64..1 << all.len()).map(|mask| {
        let edges: Vec<(usize, usize)> = (0..all.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| all[i])
            .collect();
        Graph::from_edges(n, &edges).expect("valid edges")
    }))
}

/// Specialised detector and generic oracle agree on `g`.
pub fn pattern_agrees(g: &Graph, p: &PatternSpec) -> Result<bool> {
    let pattern = p
        .graph()?
        .ok_or_else(|| Error::Argument(format!("{p} has no single pattern graph")))?;
    let fast = patterns::contains(g, p)?;
    if let Some(w) = &fast {
        if !w.is_valid(g) {
            return Ok(false);
        }
    }
    Ok(fast.is_some() == patterns::generic_subiso(g, &pattern)?.is_some())
}

/// The pattern grid exercised by the self-test and the acceptance suite.
pub fn pattern_grid() -> Vec<PatternSpec> {
    let mut grid = Vec::new();
    // F_3 .. F_10 covers F_{2k+2} for k <= 4
    for k in 3..=10 {
        grid.push(PatternSpec::Fan(k));
    }
    for k in 1..=4 {
        grid.push(PatternSpec::Friendship(k));
    }
    for r in 0..=4 {
        grid.push(PatternSpec::Book(r));
    }
    for t in 1..=4 {
        for p in t.max(2)..=8 {
            for q in p..=8 {
                if t + p + q - 1 <= 9 {
                    grid.push(PatternSpec::Theta(t, p, q));
                }
            }
        }
    }
    for t in 3..=9 {
        grid.push(PatternSpec::Cycle(t));
    }
    grid
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Compare fast paths with the brute-force references on seeded random input.
pub fn selftest(seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let mut c = Check {
        name: "canonical_form_vs_permutations",
        cases: 0,
        failures: 0,
    };
    for _ in 0..200 {
        let n = rng.random_range(1..8);
        let g = random::gnp(n, 0.4, &mut rng);
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let h = if rng.random_bool(0.5) {
            g.relabel(&perm)?
        } else {
            random::gnp(n, 0.4, &mut rng)
        };
        c.cases += 1;
        if isomorphic(&g, &h) != isomorphic_brute(&g, &h) {
            c.failures += 1;
        }
    }
    checks.push(c);

    let mut c = Check {
        name: "k_core_vs_subsets",
        cases: 0,
        failures: 0,
    };
    for _ in 0..100 {
        let n = rng.random_range(1..10);
        let g = random::gnp(n, 0.4, &mut rng);
        let k = rng.random_range(0..4);
        c.cases += 1;
        if k_core(&g, k).core != k_core_brute(&g, k) {
            c.failures += 1;
        }
    }
    checks.push(c);

    let mut c = Check {
        name: "enumeration_vs_edge_subsets",
        cases: 0,
        failures: 0,
    };
    for m in 1..=5 {
        for connected in [true, false] {
            let mut cfg = SearchConfig::new(m).with_n_max(7);
            cfg.connected_only = connected;
            cfg.n_min = 1;
            let fast: HashSet<_> = search::enumerate(&cfg)?
                .iter()
                .map(canonical_form)
                .collect();
            let slow: HashSet<_> = graphs_with_edges_brute(m, 1, 7, connected)
                .iter()
                .map(canonical_form)
                .collect();
            c.cases += 1;
            if fast != slow {
                c.failures += 1;
            }
        }
    }
    checks.push(c);

    let mut c = Check {
        name: "detectors_vs_generic_oracle",
        cases: 0,
        failures: 0,
    };
    let grid = pattern_grid();
    for _ in 0..60 {
        let n = rng.random_range(3..9);
        let g = random::gnp(n, rng.random_range(0.3..0.8), &mut rng);
        for p in &grid {
            c.cases += 1;
            if !pattern_agrees(&g, p)? {
                c.failures += 1;
            }
        }
    }
    checks.push(c);

    let mut c = Check {
        name: "graph6_round_trip",
        cases: 0,
        failures: 0,
    };
    for _ in 0..200 {
        let n = rng.random_range(0..20);
        let g = random::gnp(n, 0.5, &mut rng);
        c.cases += 1;
        if graph6::decode(&graph6::encode(&g)).ok().as_ref() != Some(&g) {
            c.failures += 1;
        }
    }
    checks.push(c);

    Ok(checks)
}
