//! Forbidden-subgraph detection.
//!
//! Each pattern family has a specialised checker built on the structure that
//! defines it (a fan is a long path inside one neighbourhood, a friendship
//! graph a matching inside one neighbourhood, a book a large common
//! neighbourhood of an edge). [`generic_subiso`] is the exhaustive oracle the
//! specialised checkers are validated against. Containment is always
//! non-induced.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::families;
use crate::graph::{graph6, Graph, VertexSet};
use crate::matching::max_matching_within;
use crate::paths;

/// Largest pattern the generic oracle accepts.
pub const GENERIC_PATTERN_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternSpec {
    /// `F_k = K_1 ∨ P_{k-1}`, `k >= 3`.
    Fan(usize),
    /// `F_{k,3}`, `k >= 1`.
    Friendship(usize),
    /// `θ_{t,p,q}`.
    Theta(usize, usize, usize),
    /// `B_{r+1}`: `r + 1` triangles on a common edge.
    Book(usize),
    /// `C_t`, `t >= 3`.
    Cycle(usize),
    /// `K_r`, `r >= 1`.
    Clique(usize),
    /// Any odd cycle of length at most `2k + 1`, `k >= 1`.
    OddCyclesUpTo(usize),
    Generic(Graph),
}

impl PatternSpec {
    /// Check parameters against the constructor preconditions.
    pub fn validate(&self) -> Result<()> {
        match *self {
            PatternSpec::Fan(k) => families::fan(k).map(|_| ()),
            PatternSpec::Friendship(k) => families::friendship(k).map(|_| ()),
            PatternSpec::Theta(t, p, q) => families::theta(t, p, q).map(|_| ()),
            PatternSpec::Book(r) => families::book(r).map(|_| ()),
            PatternSpec::Cycle(t) => families::cycle(t).map(|_| ()),
            PatternSpec::Clique(r) if r >= 1 => Ok(()),
            PatternSpec::OddCyclesUpTo(k) if k >= 1 => Ok(()),
            PatternSpec::Generic(_) => Ok(()),
            _ => Err(Error::Argument(format!(
                "invalid pattern parameters: {self}"
            ))),
        }
    }

    /// The pattern as a graph; `None` for the odd-cycle family.
    pub fn graph(&self) -> Result<Option<Graph>> {
        Ok(Some(match *self {
            PatternSpec::Fan(k) => families::fan(k)?.graph,
            PatternSpec::Friendship(k) => families::friendship(k)?.graph,
            PatternSpec::Theta(t, p, q) => families::theta(t, p, q)?,
            PatternSpec::Book(r) => families::book(r)?,
            PatternSpec::Cycle(t) => families::cycle(t)?,
            PatternSpec::Clique(r) => families::complete(r)?,
            PatternSpec::OddCyclesUpTo(_) => return Ok(None),
            PatternSpec::Generic(ref g) => g.clone(),
        }))
    }
}

impl fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternSpec::Fan(k) => write!(f, "fan:{k}"),
            PatternSpec::Friendship(k) => write!(f, "fr:{k}"),
            PatternSpec::Theta(t, p, q) => write!(f, "theta:{t},{p},{q}"),
            PatternSpec::Book(r) => write!(f, "book:{r}"),
            PatternSpec::Cycle(t) => write!(f, "cycle:{t}"),
            PatternSpec::Clique(r) => write!(f, "clique:{r}"),
            PatternSpec::OddCyclesUpTo(k) => write!(f, "oddfree:{k}"),
            PatternSpec::Generic(g) => write!(f, "g6:{}", graph6::encode(g)),
        }
    }
}

impl FromStr for PatternSpec {
    type Err = Error;

    /// `fan:k | fr:k | theta:t,p,q | book:r | cycle:t | clique:r | oddfree:k | g6:<string>`
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("unrecognised pattern '{s}'"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let nums = || -> Result<Vec<usize>> {
            rest.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        let one = || -> Result<usize> {
            match nums()?.as_slice() {
                [x] => Ok(*x),
                _ => Err(bad()),
            }
        };
        let spec = match kind {
            "fan" => PatternSpec::Fan(one()?),
            "fr" => PatternSpec::Friendship(one()?),
            "theta" => match nums()?.as_slice() {
                [t, p, q] => PatternSpec::Theta(*t, *p, *q),
                _ => return Err(bad()),
            },
            "book" => PatternSpec::Book(one()?),
            "cycle" => PatternSpec::Cycle(one()?),
            "clique" => PatternSpec::Clique(one()?),
            "oddfree" => PatternSpec::OddCyclesUpTo(one()?),
            "g6" => PatternSpec::Generic(graph6::decode(rest)?),
            _ => return Err(bad()),
        };
        spec.validate()
            .map_err(|e| Error::Format(format!("pattern '{s}': {e}")))?;
        Ok(spec)
    }
}

/// Embedding of `pattern` into a host: `map[i]` is the image of pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub pattern: Graph,
    pub map: Vec<usize>,
}

impl Witness {
    /// Injective and edge-preserving.
    pub fn is_valid(&self, host: &Graph) -> bool {
        if self.map.len() != self.pattern.order() {
            return false;
        }
        if self.map.iter().any(|&v| v >= host.order()) {
            return false;
        }
        if VertexSet::from_iter(self.map.iter().copied()).len() != self.map.len() {
            return false;
        }
        self.pattern
            .edges()
            .iter()
            .all(|&(a, b)| host.has_edge(self.map[a], self.map[b]))
    }
}

/// `Some(witness)` iff `g` contains the pattern as a subgraph.
pub fn contains(g: &Graph, p: &PatternSpec) -> Result<Option<Witness>> {
    p.validate()?;
    Ok(match *p {
        PatternSpec::Fan(k) => find_fan(g, k)?,
        PatternSpec::Friendship(k) => find_friendship(g, k)?,
        PatternSpec::Theta(t, pp, q) => find_theta(g, t, pp, q)?,
        PatternSpec::Book(r) => find_book(g, r)?,
        PatternSpec::Cycle(t) => paths::find_cycle(g, t).map(|c| Witness {
            pattern: families::cycle(t).expect("validated"),
            map: c,
        }),
        PatternSpec::Clique(r) => find_clique(g, r).map(|c| Witness {
            pattern: families::complete(r).expect("validated"),
            map: c,
        }),
        PatternSpec::OddCyclesUpTo(k) => match paths::odd_girth(g) {
            Some(len) if len <= 2 * k + 1 => {
                let c = paths::find_cycle(g, len).expect("odd girth is attained");
                Some(Witness {
                    pattern: families::cycle(len)?,
                    map: c,
                })
            }
            _ => None,
        },
        PatternSpec::Generic(ref h) => generic_subiso(g, h)?,
    })
}

/// Whether `g` avoids the pattern.
pub fn is_free(g: &Graph, p: &PatternSpec) -> Result<bool> {
    contains(g, p).map(|w| w.is_none())
}

fn by_degree_desc(g: &Graph, min_degree: usize) -> Vec<usize> {
    let mut vs: Vec<usize> = (0..g.order())
        .filter(|&u| g.degree(u) >= min_degree)
        .collect();
    vs.sort_by_key(|&u| (std::cmp::Reverse(g.degree(u)), u));
    vs
}

fn find_fan(g: &Graph, k: usize) -> Result<Option<Witness>> {
    let need = k - 1;
    for u in by_degree_desc(g, need) {
        if let Some(path) = paths::find_path(g, g.neighbors(u), need) {
            let mut map = vec![u];
            map.extend(path);
            return Ok(Some(Witness {
                pattern: families::fan(k)?.graph,
                map,
            }));
        }
    }
    Ok(None)
}

fn find_friendship(g: &Graph, k: usize) -> Result<Option<Witness>> {
    for u in by_degree_desc(g, 2 * k) {
        let m = max_matching_within(g, g.neighbors(u));
        if m.len() >= k {
            let mut map = vec![u];
            for &(a, b) in &m[..k] {
                map.extend([a, b]);
            }
            return Ok(Some(Witness {
                pattern: families::friendship(k)?.graph,
                map,
            }));
        }
    }
    Ok(None)
}

fn find_book(g: &Graph, r: usize) -> Result<Option<Witness>> {
    for (u, v) in g.edges() {
        let common = g.neighbors(u).intersection(g.neighbors(v));
        if common.len() > r {
            let mut map = vec![u, v];
            map.extend(common.iter().take(r + 1));
            return Ok(Some(Witness {
                pattern: families::book(r)?,
                map,
            }));
        }
    }
    Ok(None)
}

/// Order of a longest path in `G[N(u)]`, by the exact subset DP.
pub fn neighborhood_longest_path(g: &Graph, u: usize) -> Result<usize> {
    check_vertex(g, u)?;
    paths::longest_path_order(g, g.neighbors(u))
}

/// Size of a maximum matching in `G[N(u)]`.
pub fn neighborhood_max_matching(g: &Graph, u: usize) -> Result<usize> {
    check_vertex(g, u)?;
    Ok(max_matching_within(g, g.neighbors(u)).len())
}

fn check_vertex(g: &Graph, u: usize) -> Result<()> {
    if u >= g.order() {
        return Err(Error::Argument(format!("vertex {u} out of range")));
    }
    Ok(())
}

/// Largest `|N(u) ∩ N(v)|` over edges `uv`.
pub fn book_width(g: &Graph) -> Result<usize> {
    if g.size() == 0 {
        return Err(Error::Argument("book width needs at least one edge".into()));
    }
    Ok(g.edges()
        .into_iter()
        .map(|(u, v)| g.neighbors(u).intersection(g.neighbors(v)).len())
        .max()
        .unwrap_or(0))
}

/// Circumference, exact (subset DP, at most 24 vertices).
pub fn longest_cycle(g: &Graph) -> Result<usize> {
    paths::longest_cycle(g)
}

/// True iff `g` has no odd cycle of length `<= 2k + 1`.
pub fn odd_girth_check(g: &Graph, k: usize) -> bool {
    paths::odd_girth(g).is_none_or(|len| len > 2 * k + 1)
}

fn find_clique(g: &Graph, r: usize) -> Option<Vec<usize>> {
    fn rec(g: &Graph, clique: &mut Vec<usize>, cand: VertexSet, r: usize) -> bool {
        if clique.len() == r {
            return true;
        }
        if clique.len() + cand.len() < r {
            return false;
        }
        for v in cand {
            if g.degree(v) + 1 < r {
                continue;
            }
            clique.push(v);
            let above = VertexSet(cand.0 & !((2u64 << v) - 1));
            if rec(g, clique, above.intersection(g.neighbors(v)), r) {
                return true;
            }
            clique.pop();
        }
        false
    }
    let mut clique = Vec::new();
    rec(g, &mut clique, g.vertices(), r).then_some(clique)
}

/// Theta search: fix the branch vertices, then look for three internally
/// disjoint paths of the required lengths.
fn find_theta(g: &Graph, t: usize, p: usize, q: usize) -> Result<Option<Witness>> {
    let n = t + p + q - 1;
    if g.order() < n {
        return Ok(None);
    }
    let twins = g.twin_classes();
    let branch = by_degree_desc(g, 3);
    let mut tried_a = Vec::new();
    for &a in &branch {
        if tried_a.contains(&twins[a]) {
            continue;
        }
        tried_a.push(twins[a]);
        let mut tried_b = Vec::new();
        for &b in &branch {
            if b == a || tried_b.contains(&twins[b]) {
                continue;
            }
            tried_b.push(twins[b]);
            if t == 1 && !g.has_edge(a, b) {
                continue;
            }
            let mut ts = ThetaSearch {
                g,
                twins: &twins,
                a,
                b,
                lengths: [q, p, t],
                paths: Vec::new(),
            };
            let used = VertexSet::from_iter([a, b]);
            if ts.route(0, used) {
                // paths were found longest first: [q, p, t]
                let mut map = vec![a, b];
                for idx in [2, 1, 0] {
                    let path = &ts.paths[idx];
                    map.extend_from_slice(&path[1..path.len() - 1]);
                }
                return Ok(Some(Witness {
                    pattern: families::theta(t, p, q)?,
                    map,
                }));
            }
        }
    }
    Ok(None)
}

struct ThetaSearch<'a> {
    g: &'a Graph,
    twins: &'a [usize],
    a: usize,
    b: usize,
    lengths: [usize; 3],
    paths: Vec<Vec<usize>>,
}

impl ThetaSearch<'_> {
    fn route(&mut self, idx: usize, used: VertexSet) -> bool {
        if idx == 3 {
            return true;
        }
        let len = self.lengths[idx];
        let mut path = vec![self.a];
        self.walk(idx, len, &mut path, used)
    }

    fn walk(&mut self, idx: usize, len: usize, path: &mut Vec<usize>, used: VertexSet) -> bool {
        let last = *path.last().unwrap();
        let steps_left = len + 1 - path.len();
        if steps_left == 1 {
            if !self.g.has_edge(last, self.b) {
                return false;
            }
            path.push(self.b);
            self.paths.push(path.clone());
            if self.route(idx + 1, used) {
                return true;
            }
            self.paths.pop();
            path.pop();
            return false;
        }
        let mut tried = Vec::new();
        for c in self.g.neighbors(last).difference(used) {
            if tried.contains(&self.twins[c]) {
                continue;
            }
            tried.push(self.twins[c]);
            path.push(c);
            if self.walk(idx, len, path, used.with(c)) {
                return true;
            }
            path.pop();
        }
        false
    }
}

/// Exhaustive subgraph-isomorphism oracle (non-induced).
///
/// Pattern vertices are matched in a connectivity-first order; host
/// candidates must be adjacent to the images of all earlier pattern
/// neighbours and have large enough degree. Among interchangeable host
/// vertices (twins) only one is tried at each step.
pub fn generic_subiso(g: &Graph, pattern: &Graph) -> Result<Option<Witness>> {
    let k = pattern.order();
    if k > GENERIC_PATTERN_CAP {
        return Err(Error::Capability(format!(
            "generic oracle supports patterns up to {GENERIC_PATTERN_CAP} vertices, got {k}"
        )));
    }
    if k > g.order() || pattern.size() > g.size() || pattern.max_degree() > g.max_degree() {
        return Ok(None);
    }
    if k == 0 {
        return Ok(Some(Witness {
            pattern: pattern.clone(),
            map: Vec::new(),
        }));
    }
    // matching order: greedily most-connected to the already ordered prefix
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut placed = VertexSet::EMPTY;
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed.contains(v))
            .max_by_key(|&v| {
                (
                    pattern.degree_in(v, placed),
                    pattern.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        order.push(next);
        placed = placed.with(next);
    }
    let s = Subiso {
        g,
        h: pattern,
        order: &order,
        twins: g.twin_classes(),
    };
    let mut map = vec![usize::MAX; k];
    Ok(s.extend(0, &mut map, VertexSet::EMPTY).then(|| Witness {
        pattern: pattern.clone(),
        map,
    }))
}

struct Subiso<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: &'a [usize],
    twins: Vec<usize>,
}

impl Subiso<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: VertexSet) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let pv = self.order[depth];
        let mut cand = self.g.vertices().difference(used);
        for pw in self.h.neighbors(pv) {
            if map[pw] != usize::MAX {
                cand = cand.intersection(self.g.neighbors(map[pw]));
            }
        }
        let need = self.h.degree(pv);
        let mut tried = Vec::new();
        for c in cand {
            if self.g.degree(c) < need || tried.contains(&self.twins[c]) {
                continue;
            }
            tried.push(self.twins[c]);
            map[pv] = c;
            if self.extend(depth + 1, map, used.with(c)) {
                return true;
            }
            map[pv] = usize::MAX;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn check(g: &Graph, p: &PatternSpec) -> bool {
        let w = contains(g, p).unwrap();
        if let Some(w) = &w {
            assert!(w.is_valid(g), "invalid witness for {p} in {g:?}");
        }
        w.is_some()
    }

    #[test]
    fn grammar_round_trip() {
        for s in [
            "fan:8",
            "fr:3",
            "theta:1,3,4",
            "book:2",
            "cycle:5",
            "clique:3",
            "oddfree:2",
            "g6:Bw",
        ] {
            let p: PatternSpec = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        for s in [
            "fan",
            "fan:x",
            "fan:2",
            "theta:1,1,3",
            "cycle:2",
            "wheel:5",
            "g6:~",
            "theta:1,2",
        ] {
            assert!(s.parse::<PatternSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn containment_examples() {
        let wheel6 = Graph::empty(1).unwrap().join(&cycle(6).unwrap()).unwrap();
        assert!(check(&wheel6, &PatternSpec::Fan(6)));
        let ext = extremal(3, 4).unwrap().graph;
        assert!(!check(&ext, &PatternSpec::Fan(8)));
        assert!(check(&complete(7).unwrap(), &PatternSpec::Friendship(3)));
        assert!(!check(&complete(3).unwrap(), &PatternSpec::Fan(5)));
    }

    #[test]
    fn neighbourhood_quantities() {
        for k in 1..6 {
            let f = friendship(k).unwrap().graph;
            assert_eq!(neighborhood_longest_path(&f, 0).unwrap(), 2);
            assert_eq!(neighborhood_max_matching(&f, 0).unwrap(), k);
        }
        for k in [3, 4] {
            for t in k..k + 4 {
                let g = extremal(k, t).unwrap().graph;
                assert_eq!(neighborhood_longest_path(&g, 0).unwrap(), 2 * k - 1);
            }
        }
        for k in 1..6 {
            for t in 1..6 {
                // N(0) = K_{k-1} ∨ tK_1; the independent side only matches into the clique
                let g = extremal(k, t).unwrap().graph;
                let expect = (k - 1).min((k - 1 + t) / 2);
                assert_eq!(
                    neighborhood_max_matching(&g, 0).unwrap(),
                    expect,
                    "k={k} t={t}"
                );
                if t + 1 >= k {
                    assert_eq!(expect, k - 1);
                }
            }
        }
        let c5 = cycle(5).unwrap();
        assert_eq!(neighborhood_longest_path(&c5, 0).unwrap(), 1);
        let p = path(6).unwrap();
        assert_eq!(neighborhood_max_matching(&p, 2).unwrap(), 0);
        assert!(neighborhood_longest_path(&c5, 9).is_err());
    }

    #[test]
    fn book_width_examples() {
        assert_eq!(book_width(&complete(4).unwrap()).unwrap(), 2);
        for r in 0..6 {
            assert_eq!(book_width(&book(r).unwrap()).unwrap(), r + 1);
        }
        assert_eq!(book_width(&cycle(5).unwrap()).unwrap(), 0);
        assert!(book_width(&Graph::empty(3).unwrap()).is_err());
    }

    #[test]
    fn odd_girth_examples() {
        assert!(odd_girth_check(&complete_bipartite(3, 3).unwrap(), 5));
        assert!(odd_girth_check(&cycle(7).unwrap(), 2));
        assert!(!odd_girth_check(&cycle(7).unwrap(), 3));
        assert!(!odd_girth_check(&friendship(2).unwrap().graph, 1));
        assert!(check(&cycle(7).unwrap(), &PatternSpec::OddCyclesUpTo(3)));
        assert!(!check(&cycle(7).unwrap(), &PatternSpec::OddCyclesUpTo(2)));
    }

    #[test]
    fn generic_examples() {
        let c5 = cycle(5).unwrap();
        assert!(generic_subiso(&c5, &path(5).unwrap()).unwrap().is_some());
        assert!(generic_subiso(&c5, &complete(3).unwrap())
            .unwrap()
            .is_none());
        assert!(matches!(
            generic_subiso(&complete(13).unwrap(), &complete(13).unwrap()),
            Err(Error::Capability(_))
        ));
        let w = generic_subiso(&complete(6).unwrap(), &theta(1, 2, 3).unwrap())
            .unwrap()
            .unwrap();
        assert!(w.is_valid(&complete(6).unwrap()));
    }

    #[test]
    fn theta_and_cycle_witnesses() {
        let host = theta(1, 3, 4).unwrap();
        assert!(check(&host, &PatternSpec::Theta(1, 3, 4)));
        assert!(!check(&host, &PatternSpec::Theta(2, 3, 3)));
        assert!(check(&host, &PatternSpec::Cycle(7)));
        assert!(check(&host, &PatternSpec::Cycle(4)));
        assert!(!check(&host, &PatternSpec::Cycle(6)));
        assert!(check(&complete(5).unwrap(), &PatternSpec::Theta(2, 2, 2)));
    }
}
