//! Immutable simple undirected graphs on at most [`MAX_VERTICES`] vertices.
//!
//! Adjacency is stored as one `u64` bitmask per vertex, so neighborhoods,
//! vertex subsets and intersections are single-word operations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};

/// Hard vertex cap: one adjacency row per machine word, short-form graph6.
pub const MAX_VERTICES: usize = 62;

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity {
            requested: n,
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// A subset of `{0, .., n-1}` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Serialized as the sorted vertex list.
impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        VertexSet(it.into_iter().fold(0u64, |acc, v| acc | (1u64 << v)))
    }
}

/// Iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Simple undirected graph. Every mutator returns a new value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_capacity(n)?;
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return arg(format!("edge ({u},{v}) out of range for n={n}"));
            }
            if u == v {
                return arg(format!("self-loop at {u}"));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Rows must already be symmetric and loop-free.
    pub(crate) fn from_rows_unchecked(adj: Vec<u64>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Graph { n: adj.len(), adj }
    }

    pub fn from_rows(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        check_capacity(n)?;
        let valid = VertexSet::full(n).0;
        for (u, &row) in adj.iter().enumerate() {
            if row & !valid != 0 || row >> u & 1 == 1 {
                return arg(format!("row {u} has out-of-range bits or a loop"));
            }
            for v in VertexSet(row) {
                if adj[v] >> u & 1 == 0 {
                    return arg(format!("adjacency not symmetric at ({u},{v})"));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.adj[u])
    }

    #[inline]
    pub fn closed_neighbors(&self, u: usize) -> VertexSet {
        VertexSet(self.adj[u] | 1 << u)
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    /// Number of neighbours of `u` inside `set`.
    #[inline]
    pub fn degree_in(&self, u: usize, set: VertexSet) -> usize {
        (self.adj[u] & set.0).count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] & !((2u64 << u) - 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|u| self.degree(u)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// `e(S)`: number of edges with both ends in `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        s.iter().map(|u| self.degree_in(u, s)).sum::<usize>() / 2
    }

    /// `e(S, T)` for disjoint `s`, `t`.
    pub fn edges_between(&self, s: VertexSet, t: VertexSet) -> usize {
        s.iter().map(|u| self.degree_in(u, t)).sum()
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return arg(format!("edge ({u},{v}) already present"));
        }
        let mut g = self.clone();
        g.adj[u] |= 1 << v;
        g.adj[v] |= 1 << u;
        Ok(g)
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return arg(format!("edge ({u},{v}) not present"));
        }
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        Ok(g)
    }

    pub(crate) fn toggled(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.adj[u] ^= 1 << v;
        g.adj[v] ^= 1 << u;
        g
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return arg(format!("vertex out of range: ({u},{v}) with n={}", self.n));
        }
        if u == v {
            return arg(format!("u = v = {u}"));
        }
        Ok(())
    }

    /// `G ∨ H`: vertices of `h` are shifted by `|G|`.
    pub fn join(&self, h: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(h)?;
        let left = VertexSet::full(self.n).0;
        let right = VertexSet::full(h.n).0 << self.n;
        for u in 0..self.n {
            g.adj[u] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// `G ∪ H` with no cross edges.
    pub fn disjoint_union(&self, h: &Graph) -> Result<Graph> {
        let n = self.n + h.n;
        check_capacity(n)?;
        let mut adj = self.adj.clone();
        adj.extend(h.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// `G[S]` together with the index map `new -> old` (ascending old order).
    pub fn induced(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        if !s.is_subset(self.vertices()) {
            return arg(format!("vertex set {s:?} not contained in 0..{}", self.n));
        }
        let map = s.to_vec();
        Ok((self.induced_unchecked(&map), map))
    }

    pub(crate) fn induced_unchecked(&self, map: &[usize]) -> Graph {
        let adj = map
            .iter()
            .map(|&old_u| {
                let row = self.adj[old_u];
                map.iter()
                    .enumerate()
                    .filter(|&(_, &old_v)| row >> old_v & 1 == 1)
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Graph { n: map.len(), adj }
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return arg("permutation length differs from order");
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return arg("not a permutation");
            }
            seen |= 1 << p;
        }
        Ok(self.relabel_unchecked(perm))
    }

    pub(crate) fn relabel_unchecked(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = 0u64;
            for v in VertexSet(self.adj[u]) {
                row |= 1 << perm[v];
            }
            adj[perm[u]] = row;
        }
        Graph { n: self.n, adj }
    }

    /// Complement graph.
    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n).0;
        let adj = (0..self.n)
            .map(|u| !self.adj[u] & full & !(1 << u))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Connected components as vertex sets, ordered by their lowest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Components of `G[within]`.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within;
        let mut out = Vec::new();
        while let Some(s) = left.first() {
            let comp = self.reach(s, within);
            out.push(comp);
            left = left.difference(comp);
        }
        out
    }

    fn reach(&self, s: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(s);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u64;
            for u in frontier {
                next |= self.adj[u];
            }
            let next = VertexSet(next).intersection(within).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.reach(0, self.vertices()) == self.vertices()
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&u| self.adj[u] == 0).collect()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        stack.push(v);
                    } else if side[v] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Partition into classes of mutually interchangeable vertices.
    ///
    /// Two vertices share a class when they have the same open neighbourhood
    /// or the same closed neighbourhood; swapping any two members of a class
    /// is an automorphism fixing every other vertex. Returned as a class id
    /// per vertex, ids numbered by first occurrence.
    pub fn twin_classes(&self) -> Vec<usize> {
        let mut class = vec![usize::MAX; self.n];
        let mut next = 0;
        for u in 0..self.n {
            if class[u] != usize::MAX {
                continue;
            }
            class[u] = next;
            for v in u + 1..self.n {
                if class[v] == usize::MAX
                    && (self.adj[u] == self.adj[v] || self.adj[u] | 1 << u == self.adj[v] | 1 << v)
                {
                    class[v] = next;
                }
            }
            next += 1;
        }
        class
    }

    /// Drop isolated vertices, keeping the relative order of the rest.
    pub fn without_isolated(&self) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| self.adj[u] != 0).collect();
        self.induced_unchecked(&keep)
    }
}

/// Edge-list JSON interchange: `{"n": int, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for EdgeList {
    fn from(g: &Graph) -> Self {
        EdgeList {
            n: g.order(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<&EdgeList> for Graph {
    type Error = Error;
    fn try_from(e: &EdgeList) -> Result<Graph> {
        let pairs: Vec<(usize, usize)> = e.edges.iter().map(|&[u, v]| (u, v)).collect();
        Graph::from_edges(e.n, &pairs)
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&EdgeList::from(self)).expect("edge list serializes")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let e: EdgeList =
            serde_json::from_str(s).map_err(|e| Error::Format(format!("edge-list JSON: {e}")))?;
        Graph::try_from(&e).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Short-form graph6 (`n <= 62`).
pub mod graph6 {
    use super::*;

    pub fn encode(g: &Graph) -> String {
        let n = g.order();
        let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
        out.push((n as u8 + 63) as char);
        let mut chunk = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                chunk = chunk << 1 | g.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push((chunk + 63) as char);
                    chunk = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((chunk << (6 - filled)) + 63) as char);
        }
        out
    }

    pub fn decode(s: &str) -> Result<Graph> {
        let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
        let (&head, body) = bytes
            .split_first()
            .ok_or_else(|| Error::Format("empty graph6 string".into()))?;
        if head == b'~' {
            return Err(Error::Format(
                "long-form graph6 (n >= 63) unsupported".into(),
            ));
        }
        if !(63..=126).contains(&head) {
            return Err(Error::Format(format!("bad graph6 header byte {head:#x}")));
        }
        let n = (head - 63) as usize;
        if n > MAX_VERTICES {
            return Err(Error::Format(format!(
                "graph6 order {n} exceeds {MAX_VERTICES}"
            )));
        }
        let bits = n * n.saturating_sub(1) / 2;
        let need = bits.div_ceil(6);
        if body.len() != need {
            return Err(Error::Format(format!(
                "graph6 body has {} bytes, expected {need}",
                body.len()
            )));
        }
        let mut adj = vec![0u64; n];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let b = body[k / 6];
                if !(63..=126).contains(&b) {
                    return Err(Error::Format(format!("bad graph6 byte {b:#x}")));
                }
                if (b - 63) >> (5 - k % 6) & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
                k += 1;
            }
        }
        if let Some(&last) = body.last() {
            if !(63..=126).contains(&last) {
                return Err(Error::Format(format!("bad graph6 byte {last:#x}")));
            }
            let pad = need * 6 - bits;
            if (last - 63) & ((1u8 << pad) - 1) != 0 {
                return Err(Error::Format("non-zero graph6 padding".into()));
            }
        }
        Ok(Graph::from_rows_unchecked(adj))
    }
}
