//! Exhaustive and local search for graphs of a given size maximising λ.
//!
//! Exhaustive mode walks a canonical-augmentation tree: a graph with `j + 1`
//! edges is generated from a parent with `j` edges by adding one edge, and is
//! kept only when deleting the last edge of its canonical form gives back the
//! parent's isomorphism class. Every isomorphism class appears exactly once.
//! All graphs live on `n_max` vertices, so graphs on fewer vertices show up
//! padded with isolated vertices.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form, canonical_labeling, CanonicalForm};
use crate::error::{arg, Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::patterns::{self, PatternSpec};
use crate::spectral::{self, BoundSpec, EQUALITY_TOLERANCE, STRICT_MARGIN};

/// Exhaustive mode limits.
pub const EXHAUSTIVE_MAX_M: usize = 14;
pub const EXHAUSTIVE_MAX_N: usize = 11;
/// Below this many vertices one more edge is allowed.
const SMALL_N: usize = 9;
/// Frontier size at which the tree is split between workers.
const SPLIT_FRONTIER: usize = 64;
/// Largest order accepted by [`all_graphs`].
pub const ALL_GRAPHS_MAX_N: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    HillClimb,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub m: usize,
    pub pattern: Option<PatternSpec>,
    /// Bounds on the number of non-isolated vertices.
    pub n_min: usize,
    pub n_max: usize,
    /// The non-isolated part must be connected.
    pub connected_only: bool,
    /// Report graphs without isolated vertices; otherwise graphs are padded to `n_max`.
    pub forbid_isolated: bool,
    pub non_bipartite_only: bool,
    pub mode: Mode,
    pub seed: u64,
    /// Move evaluations allowed in hill-climb mode.
    pub budget: usize,
}

impl SearchConfig {
    /// Defaults: connected, `n` from the clique lower bound to `m + 1`
    /// (clamped to the exhaustive limit).
    pub fn new(m: usize) -> Self {
        SearchConfig {
            m,
            pattern: None,
            n_min: min_order(m),
            n_max: (m + 1).min(EXHAUSTIVE_MAX_N),
            connected_only: true,
            forbid_isolated: true,
            non_bipartite_only: false,
            mode: Mode::Exhaustive,
            seed: 0,
            budget: 100_000,
        }
    }

    pub fn with_pattern(mut self, p: PatternSpec) -> Self {
        self.pattern = Some(p);
        self
    }

    pub fn with_n_max(mut self, n_max: usize) -> Self {
        self.n_max = n_max;
        self
    }

    /// Whether the `n` cap can hide graphs: trees need `m + 1` vertices,
    /// matchings `2m`.
    pub fn n_capped(&self) -> bool {
        let widest = if self.connected_only {
            self.m + 1
        } else {
            2 * self.m
        };
        self.n_max < widest
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::Config("m must be at least 1".into()));
        }
        if self.n_max > MAX_VERTICES {
            return Err(Error::Config(format!(
                "n_max {} exceeds {MAX_VERTICES}",
                self.n_max
            )));
        }
        if self.n_min > self.n_max {
            return Err(Error::Config(format!(
                "empty vertex range {}..={}",
                self.n_min, self.n_max
            )));
        }
        if let Some(p) = &self.pattern {
            p.validate().map_err(|e| Error::Config(e.to_string()))?;
        }
        if self.mode == Mode::Exhaustive {
            let m_cap = if self.n_max <= SMALL_N {
                EXHAUSTIVE_MAX_M + 1
            } else {
                EXHAUSTIVE_MAX_M
            };
            if self.n_max > EXHAUSTIVE_MAX_N || self.m > m_cap {
                return Err(Error::Config(format!(
                    "exhaustive search limited to n_max <= {EXHAUSTIVE_MAX_N} and m <= {EXHAUSTIVE_MAX_M} \
                     (m <= {} when n_max <= {SMALL_N}); got m={}, n_max={}",
                    EXHAUSTIVE_MAX_M + 1,
                    self.m,
                    self.n_max
                )));
            }
        }
        Ok(())
    }

    fn admits_structure(&self, g: &Graph) -> Option<Graph> {
        let core = g.without_isolated();
        let n = core.order();
        if n < self.n_min || n > self.n_max {
            return None;
        }
        if self.connected_only && !core.is_connected() {
            return None;
        }
        if self.forbid_isolated || self.connected_only {
            Some(core)
        } else {
            Some(g.clone())
        }
    }

    fn admits_filter(&self, g: &Graph) -> Result<bool> {
        if self.non_bipartite_only && g.is_bipartite() {
            return Ok(false);
        }
        match &self.pattern {
            Some(p) => patterns::is_free(g, p),
            None => Ok(true),
        }
    }
}

/// Smallest `n` with `C(n, 2) >= m`.
pub fn min_order(m: usize) -> usize {
    let mut n = 1;
    while n * (n - 1) / 2 < m {
        n += 1;
    }
    n
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    /// Size-`m` graphs meeting the structural constraints.
    pub enumerated: usize,
    /// Of those, graphs that also pass the pattern and bipartiteness filters.
    pub passed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub value: f64,
    /// `value − best_lambda`.
    pub gap: f64,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub best_lambda: Option<f64>,
    /// Canonical forms attaining `best_lambda` within tolerance, sorted.
    pub argmax: Vec<CanonicalForm>,
    pub census: Census,
    pub bound: Option<BoundCheck>,
    /// Vertex cap in force; exhaustiveness is conditional when below `m + 1`.
    pub n_max: usize,
    pub n_capped: bool,
    pub note: Option<String>,
}

struct Node {
    g: Graph,
    canon: Vec<u64>,
}

struct Tree<'a> {
    cfg: &'a SearchConfig,
    /// Edge count at which generation stops.
    depth: usize,
    /// Drop subtrees containing the pattern (containment survives adding edges).
    prune_pattern: bool,
}

impl Tree<'_> {
    fn root(n: usize) -> Result<Node> {
        let g = Graph::empty(n)?;
        Ok(Node {
            canon: g.rows().to_vec(),
            g,
        })
    }

    fn children(&self, node: &Node) -> Result<Vec<Node>> {
        let g = &node.g;
        let n = g.order();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if g.has_edge(u, v) {
                    continue;
                }
                let child = g.toggled(u, v);
                let lab = canonical_labeling(&child);
                let rows = lab.graph.rows().to_vec();
                if seen.contains(&rows) {
                    continue;
                }
                let (a, b) = *lab.graph.edges().last().expect("child has an edge");
                let mut inv = vec![0; n];
                for (old, &new) in lab.labeling.iter().enumerate() {
                    inv[new] = old;
                }
                let (x, y) = (inv[a], inv[b]);
                let accept = (x.min(y), x.max(y)) == (u, v)
                    || canonical_labeling(&child.toggled(x, y)).graph.rows()
                        == node.canon.as_slice();
                seen.insert(rows.clone());
                if !accept || !self.viable(&child)? {
                    continue;
                }
                out.push(Node {
                    g: child,
                    canon: rows,
                });
            }
        }
        Ok(out)
    }

    fn viable(&self, g: &Graph) -> Result<bool> {
        if self.cfg.connected_only {
            let pieces = g.components().into_iter().filter(|c| c.len() > 1).count();
            if pieces > 1 && pieces - 1 > self.depth - g.size() {
                return Ok(false);
            }
        }
        if self.prune_pattern {
            if let Some(p) = &self.cfg.pattern {
                return patterns::is_free(g, p);
            }
        }
        Ok(true)
    }

    /// Depth-first walk below `node`, calling `leaf` on graphs with `depth` edges.
    fn walk(&self, node: &Node, leaf: &mut dyn FnMut(&Graph) -> Result<()>) -> Result<()> {
        if node.g.size() == self.depth {
            return leaf(&node.g);
        }
        for child in self.children(node)? {
            self.walk(&child, leaf)?;
        }
        Ok(())
    }

    /// Split the tree near the root, fold every subtree independently, and
    /// return the per-subtree results in a fixed order.
    fn fold<T, I, V>(&self, n: usize, init: I, visit: V) -> Result<Vec<T>>
    where
        T: Send,
        I: Fn() -> T + Sync,
        V: Fn(&mut T, &Graph) -> Result<()> + Sync,
    {
        let mut frontier = vec![Tree::root(n)?];
        while frontier.len() < SPLIT_FRONTIER && frontier.iter().any(|f| f.g.size() < self.depth) {
            let mut next = Vec::new();
            for node in frontier {
                if node.g.size() == self.depth {
                    next.push(node);
                } else {
                    next.extend(self.children(&node)?);
                }
            }
            frontier = next;
        }
        frontier
            .par_iter()
            .map(|node| {
                let mut acc = init();
                self.walk(node, &mut |g| visit(&mut acc, g))?;
                Ok(acc)
            })
            .collect()
    }
}

/// One representative per isomorphism class of the size-`m` graphs meeting the
/// configuration (structure, pattern and bipartiteness filters).
pub fn enumerate(cfg: &SearchConfig) -> Result<Vec<Graph>> {
    cfg.validate()?;
    let tree = Tree {
        cfg,
        depth: cfg.m,
        prune_pattern: true,
    };
    let parts = tree.fold(cfg.n_max, Vec::new, |acc: &mut Vec<Graph>, g| {
        if let Some(h) = cfg.admits_structure(g) {
            if cfg.admits_filter(&h)? {
                acc.push(h);
            }
        }
        Ok(())
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// Every graph on exactly `n` vertices up to isomorphism.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > ALL_GRAPHS_MAX_N {
        return Err(Error::Config(format!(
            "all_graphs is limited to n <= {ALL_GRAPHS_MAX_N}, got {n}"
        )));
    }
    let mut cfg = SearchConfig::new(1);
    cfg.connected_only = false;
    let mut out = vec![Graph::empty(n)?];
    let top = n * n.saturating_sub(1) / 2;
    if top == 0 {
        return Ok(out);
    }
    // a single walk to full depth, collecting every level
    let tree = Tree {
        cfg: &cfg,
        depth: top,
        prune_pattern: false,
    };
    fn collect(tree: &Tree, node: &Node, out: &mut Vec<Graph>) -> Result<()> {
        for child in tree.children(node)? {
            out.push(child.g.clone());
            if child.g.size() < tree.depth {
                collect(tree, &child, out)?;
            }
        }
        Ok(())
    }
    collect(&tree, &Tree::root(n)?, &mut out)?;
    Ok(out)
}

#[derive(Default)]
struct Best {
    census: Census,
    best: Option<f64>,
    /// Candidates within tolerance of the best value seen when recorded.
    ties: Vec<(f64, Graph)>,
}

impl Best {
    fn offer(&mut self, lambda: f64, g: &Graph) {
        match self.best {
            Some(b) if lambda < b - EQUALITY_TOLERANCE => return,
            Some(b) if lambda > b => self.best = Some(lambda),
            None => self.best = Some(lambda),
            _ => {}
        }
        self.ties.push((lambda, g.clone()));
        let b = self.best.unwrap();
        self.ties.retain(|(l, _)| *l >= b - EQUALITY_TOLERANCE);
    }

    fn merge(mut self, other: Best) -> Best {
        self.census.enumerated += other.census.enumerated;
        self.census.passed += other.census.passed;
        for (l, g) in other.ties {
            self.offer(l, &g);
        }
        self
    }

    fn into_report(self, cfg: &SearchConfig) -> SearchReport {
        let mut argmax: Vec<CanonicalForm> =
            self.ties.iter().map(|(_, g)| canonical_form(g)).collect();
        argmax.sort();
        argmax.dedup();
        SearchReport {
            best_lambda: self.best,
            argmax,
            census: self.census,
            bound: None,
            n_max: cfg.n_max,
            n_capped: cfg.n_capped(),
            note: None,
        }
    }
}

/// Maximum λ over the configured family.
pub fn extremal_search(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    if cfg.mode == Mode::HillClimb {
        let start = default_start(cfg)?;
        return hill_climb(cfg, &start);
    }
    let tree = Tree {
        cfg,
        depth: cfg.m,
        prune_pattern: true,
    };
    let parts = tree.fold(cfg.n_max, Best::default, |acc: &mut Best, g| {
        let Some(h) = cfg.admits_structure(g) else {
            return Ok(());
        };
        acc.census.enumerated += 1;
        if !cfg.admits_filter(&h)? {
            return Ok(());
        }
        acc.census.passed += 1;
        acc.offer(spectral::lambda_max(&h)?, &h);
        Ok(())
    })?;
    let best = parts.into_iter().fold(Best::default(), Best::merge);
    Ok(best.into_report(cfg))
}

/// The forbidden pattern and extra constraints under which each bound is claimed.
pub fn bound_setting(spec: BoundSpec, base: &SearchConfig) -> Result<SearchConfig> {
    let mut cfg = base.clone();
    cfg.m = spec.m();
    match spec {
        BoundSpec::Nosal { .. } => cfg.pattern = Some(PatternSpec::Clique(3)),
        BoundSpec::Lnw { .. } => {
            cfg.pattern = Some(PatternSpec::Clique(3));
            cfg.non_bipartite_only = true;
        }
        BoundSpec::Fan { k, .. } => cfg.pattern = Some(PatternSpec::Fan(2 * k + 2)),
        BoundSpec::FriendshipF23 { .. } => cfg.pattern = Some(PatternSpec::Friendship(2)),
        BoundSpec::BrualdiHoffman { .. } => {
            cfg.pattern = None;
            cfg.forbid_isolated = true;
            cfg.connected_only = false;
        }
        BoundSpec::Nikiforov { r, .. } => cfg.pattern = Some(PatternSpec::Clique(r + 1)),
    }
    Ok(cfg)
}

/// Run the search the bound speaks about and compare.
pub fn verify_bound(spec: BoundSpec, base: &SearchConfig) -> Result<SearchReport> {
    if base.m != spec.m() {
        return arg(format!(
            "bound is stated for m={}, search configured for m={}",
            spec.m(),
            base.m
        ));
    }
    let value = spectral::bound_value(spec)?;
    let cfg = bound_setting(spec, base)?;
    let mut report = extremal_search(&cfg)?;
    if let Some(best) = report.best_lambda {
        let violated = best > value + EQUALITY_TOLERANCE;
        report.bound = Some(BoundCheck {
            value,
            gap: value - best,
            violated,
        });
        if violated {
            report.note = Some(
                "bound exceeded at this size; the bound is only claimed for sufficiently large m, \
                 so this is not a counterexample to it"
                    .into(),
            );
        }
    }
    Ok(report)
}

fn default_start(cfg: &SearchConfig) -> Result<Graph> {
    if cfg.m + 1 > cfg.n_max {
        return arg("hill climbing needs a start graph when n_max < m + 1");
    }
    let star = crate::families::complete_bipartite(1, cfg.m)?;
    let n = if cfg.forbid_isolated || cfg.connected_only {
        cfg.m + 1
    } else {
        cfg.n_max
    };
    star.disjoint_union(&Graph::empty(n - cfg.m - 1)?)
}

fn passes(cfg: &SearchConfig, g: &Graph) -> Result<bool> {
    if g.size() != cfg.m {
        return Ok(false);
    }
    if cfg.forbid_isolated && !g.isolated_vertices().is_empty() {
        return Ok(false);
    }
    if cfg.connected_only && !g.without_isolated().is_connected() {
        return Ok(false);
    }
    cfg.admits_filter(g)
}

/// First-improvement local search over edge rotations `uv → uw`.
///
/// Moves are visited in a seeded random order; a move is taken when it
/// raises λ by more than [`STRICT_MARGIN`]. Stops at a local maximum or when
/// `budget` move evaluations are used up.
pub fn hill_climb(cfg: &SearchConfig, start: &Graph) -> Result<SearchReport> {
    if !passes(cfg, start)? {
        return arg("start graph does not satisfy the search constraints");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut current = start.clone();
    let mut lambda = spectral::lambda_max(&current)?;
    let mut census = Census {
        enumerated: 0,
        passed: 1,
    };
    let n = current.order();
    let mut exhausted = false;
    'climb: loop {
        let mut moves: Vec<(usize, usize, usize)> = Vec::new();
        for (a, b) in current.edges() {
            for (u, v) in [(a, b), (b, a)] {
                for w in 0..n {
                    if w != u && w != v && !current.has_edge(u, w) {
                        moves.push((u, v, w));
                    }
                }
            }
        }
        moves.shuffle(&mut rng);
        for (u, v, w) in moves {
            if census.enumerated >= cfg.budget {
                exhausted = true;
                break 'climb;
            }
            census.enumerated += 1;
            let next = current.toggled(u, v).toggled(u, w);
            if !passes(cfg, &next)? {
                continue;
            }
            census.passed += 1;
            let l = spectral::lambda_max(&next)?;
            if l > lambda + STRICT_MARGIN {
                current = next;
                lambda = l;
                continue 'climb;
            }
        }
        break;
    }
    Ok(SearchReport {
        best_lambda: Some(lambda),
        argmax: vec![canonical_form(&current.without_isolated())],
        census,
        bound: None,
        n_max: n,
        n_capped: false,
        note: Some(if exhausted {
            "move budget exhausted".into()
        } else {
            "local maximum under edge rotations".into()
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn forms(gs: &[Graph]) -> Vec<CanonicalForm> {
        let mut v: Vec<_> = gs.iter().map(canonical_form).collect();
        v.sort();
        v
    }

    #[test]
    fn tiny_enumerations() {
        let gs = enumerate(&SearchConfig::new(3)).unwrap();
        let mut expect = forms(&[
            path(4).unwrap(),
            complete(3).unwrap(),
            complete_bipartite(1, 3).unwrap(),
        ]);
        expect.sort();
        assert_eq!(forms(&gs), expect);
        let gs = enumerate(&SearchConfig::new(1)).unwrap();
        assert_eq!(forms(&gs), forms(&[complete(2).unwrap()]));
    }

    #[test]
    fn all_graph_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn min_order_values() {
        assert_eq!(min_order(1), 2);
        assert_eq!(min_order(3), 3);
        assert_eq!(min_order(4), 4);
        assert_eq!(min_order(10), 5);
        assert_eq!(min_order(11), 6);
    }

    #[test]
    fn guard_rails() {
        assert!(matches!(
            SearchConfig::new(15).validate(),
            Err(Error::Config(_))
        ));
        assert!(SearchConfig::new(15).with_n_max(9).validate().is_ok());
        assert!(matches!(
            SearchConfig::new(10).with_n_max(12).validate(),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn small_maxima() {
        let rep = extremal_search(&SearchConfig::new(10)).unwrap();
        assert!((rep.best_lambda.unwrap() - 4.0).abs() < 1e-9);
        assert_eq!(rep.argmax, vec![canonical_form(&complete(5).unwrap())]);

        let rep = extremal_search(&SearchConfig::new(7)).unwrap();
        assert_eq!(rep.argmax, vec![canonical_form(&bh_graph(4, 1).unwrap())]);

        // triangle-free with m = 5: the star is the complete bipartite equality case
        let mut cfg = SearchConfig::new(5).with_pattern(PatternSpec::Clique(3));
        let rep = extremal_search(&cfg).unwrap();
        assert!((rep.best_lambda.unwrap() - 5f64.sqrt()).abs() < 1e-9);
        assert_eq!(
            rep.argmax,
            vec![canonical_form(&complete_bipartite(1, 5).unwrap())]
        );
        cfg.non_bipartite_only = true;
        let rep = extremal_search(&cfg).unwrap();
        assert!((rep.best_lambda.unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(rep.argmax, vec![canonical_form(&cycle(5).unwrap())]);
    }

    #[test]
    fn hill_climb_behaviour() {
        let ext = extremal(3, 4).unwrap().graph;
        let cfg = SearchConfig::new(ext.size()).with_pattern(PatternSpec::Fan(8));
        let rep = hill_climb(&cfg, &ext).unwrap();
        assert_eq!(rep.argmax, vec![canonical_form(&ext)]);

        let p = path(11).unwrap();
        let cfg = SearchConfig::new(10);
        let rep = hill_climb(&cfg, &p).unwrap();
        assert!(rep.best_lambda.unwrap() > spectral::lambda_max(&p).unwrap() + 0.5);
        assert_eq!(hill_climb(&cfg, &p).unwrap(), rep);
    }
}
