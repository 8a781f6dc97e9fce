//! Constructors for the named graph families.
//!
//! Vertex layouts are fixed so that designated vertices (fan centre, hub,
//! dominating clique, book spine) always come first.

use std::collections::HashSet;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{arg, Result};
use crate::graph::{Graph, VertexSet};

/// Role of a designated vertex set inside a [`FamilyInstance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// Centre of a fan, degree `k - 1`.
    Central,
    /// Common vertex of the friendship triangles.
    Hub,
    /// The `K_k` side of `K_k ∨ tK_1`.
    Dominating,
    /// The independent side of `K_k ∨ tK_1`.
    Independent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub graph: Graph,
    pub roles: Vec<(Role, VertexSet)>,
}

impl FamilyInstance {
    fn new(graph: Graph, roles: Vec<(Role, VertexSet)>) -> Self {
        FamilyInstance { graph, roles }
    }

    pub fn role(&self, role: Role) -> Option<VertexSet> {
        self.roles.iter().find(|(r, _)| *r == role).map(|&(_, s)| s)
    }
}

pub fn empty(n: usize) -> Result<Graph> {
    Graph::empty(n)
}

pub fn path(n: usize) -> Result<Graph> {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &e)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return arg(format!("cycle needs n >= 3, got {n}"));
    }
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &e)
}

pub fn complete(n: usize) -> Result<Graph> {
    let e: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::from_edges(n, &e)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    Graph::empty(a)?.join(&Graph::empty(b)?)
}

/// Fan `F_k = K_1 ∨ P_{k-1}`; vertex 0 is the centre.
pub fn fan(k: usize) -> Result<FamilyInstance> {
    if k < 3 {
        return arg(format!("fan needs k >= 3, got {k}"));
    }
    let g = Graph::empty(1)?.join(&path(k - 1)?)?;
    Ok(FamilyInstance::new(
        g,
        vec![(Role::Central, VertexSet::singleton(0))],
    ))
}

/// Friendship graph `F_{k,3}`: hub 0, triangles `{0, 2i+1, 2i+2}`.
pub fn friendship(k: usize) -> Result<FamilyInstance> {
    if k < 1 {
        return arg("friendship graph needs k >= 1");
    }
    let mut e = Vec::with_capacity(3 * k);
    for i in 0..k {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        e.extend([(0, a), (0, b), (a, b)]);
    }
    let g = Graph::from_edges(2 * k + 1, &e)?;
    Ok(FamilyInstance::new(
        g,
        vec![(Role::Hub, VertexSet::singleton(0))],
    ))
}

/// Theta graph: branch vertices 0 and 1 joined by internally disjoint paths
/// of lengths `t <= p <= q`.
pub fn theta(t: usize, p: usize, q: usize) -> Result<Graph> {
    if !(1 <= t && t <= p && p <= q && p >= 2) {
        return arg(format!(
            "theta needs 1 <= t <= p <= q with p >= 2, got ({t},{p},{q})"
        ));
    }
    let n = t + p + q - 1;
    let mut e = Vec::with_capacity(t + p + q);
    let mut next = 2;
    for len in [t, p, q] {
        let mut prev = 0;
        for _ in 1..len {
            e.push((prev, next));
            prev = next;
            next += 1;
        }
        e.push((prev, 1));
    }
    Graph::from_edges(n, &e)
}

/// Book `B_{r+1}`: `r + 1` triangles on the spine edge `01`.
pub fn book(r: usize) -> Result<Graph> {
    let mut e = vec![(0, 1)];
    for i in 0..=r {
        e.extend([(0, i + 2), (1, i + 2)]);
    }
    Graph::from_edges(r + 3, &e)
}

/// `S_{n,k} = K_k ∨ (n - k)K_1`; the clique is `0..k`.
pub fn split_like(n: usize, k: usize) -> Result<FamilyInstance> {
    if !(n > k && k >= 1) {
        return arg(format!("S_(n,k) needs n > k >= 1, got ({n},{k})"));
    }
    let g = complete(k)?.join(&Graph::empty(n - k)?)?;
    Ok(FamilyInstance::new(
        g,
        vec![
            (Role::Dominating, VertexSet::full(k)),
            (
                Role::Independent,
                VertexSet::full(n).difference(VertexSet::full(k)),
            ),
        ],
    ))
}

/// `S⁺_{n,k}`: `S_{n,k}` plus the edge `{k, k+1}` inside the independent set.
pub fn s_plus(n: usize, k: usize) -> Result<FamilyInstance> {
    if !(k >= 1 && n >= k + 2) {
        return arg(format!(
            "S+_(n,k) needs n >= k + 2 and k >= 1, got ({n},{k})"
        ));
    }
    let mut inst = split_like(n, k)?;
    inst.graph = inst.graph.add_edge(k, k + 1)?;
    Ok(inst)
}

/// Pairwise non-isomorphic graphs obtained from `S⁺_{n,k}` by deleting one edge.
pub fn l_family(n: usize, k: usize) -> Result<Vec<Graph>> {
    let base = s_plus(n, k)?.graph;
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut out = Vec::new();
    for (u, v) in base.edges() {
        let g = base.delete_edge(u, v)?;
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    Ok(out)
}

/// `K_k ∨ tK_1`, the equality graph of the fan/friendship bound.
pub fn extremal(k: usize, t: usize) -> Result<FamilyInstance> {
    if k < 1 || t < 1 {
        return arg(format!("extremal graph needs k, t >= 1, got ({k},{t})"));
    }
    split_like(k + t, k)
}

/// `M_t`: `⌊t/2⌋` disjoint edges plus an isolated vertex when `t` is odd.
pub fn matching_graph(t: usize) -> Result<Graph> {
    let e: Vec<_> = (0..t / 2).map(|i| (2 * i, 2 * i + 1)).collect();
    Graph::from_edges(t, &e)
}

/// `SK_{2,q}`: `K_{2,q}` with the edge `{0, 2}` subdivided by vertex `q + 2`.
pub fn subdivided_kb(q: usize) -> Result<Graph> {
    if q < 1 {
        return arg("SK_(2,q) needs q >= 1");
    }
    let s = q + 2;
    complete_bipartite(2, q)?
        .disjoint_union(&Graph::empty(1)?)?
        .delete_edge(0, 2)?
        .add_edge(0, s)?
        .add_edge(s, 2)
}

/// `RK_{2,q}`: `K_{2,q}` with the edge `{0, 2}` replaced by a path `P_5`.
pub fn rk(q: usize) -> Result<Graph> {
    if q < 1 {
        return arg("RK_(2,q) needs q >= 1");
    }
    let (a, b, c) = (q + 2, q + 3, q + 4);
    complete_bipartite(2, q)?
        .disjoint_union(&Graph::empty(3)?)?
        .delete_edge(0, 2)?
        .add_edge(0, a)?
        .add_edge(a, b)?
        .add_edge(b, c)?
        .add_edge(c, 2)
}

/// `K_b ∨ (K_{a-b} ∪ K_1)`, the Brualdi–Hoffman extremal graph for
/// `m = C(a,2) + b`. The `K_1` is the last vertex.
pub fn bh_graph(a: usize, b: usize) -> Result<Graph> {
    if b >= a {
        return arg(format!("bh_graph needs 0 <= b < a, got ({a},{b})"));
    }
    complete(b)?.join(&complete(a - b)?.disjoint_union(&Graph::empty(1)?)?)
}

/// Unique `(a, b)` with `m = C(a,2) + b`, `0 <= b < a`.
pub fn bh_parameters(m: usize) -> (usize, usize) {
    let mut a = 1;
    while (a + 1) * a / 2 <= m {
        a += 1;
    }
    (a, m - a * (a - 1) / 2)
}
