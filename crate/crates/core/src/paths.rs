//! Paths and cycles: exact subset DPs (capped) and bounded-length searches.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Vertex cap of the subset dynamic programs (`2^24` states).
pub const DP_CAP: usize = 24;

fn check_cap(n: usize, what: &str) -> Result<()> {
    if n > DP_CAP {
        Err(Error::Capability(format!(
            "{what} on {n} vertices exceeds the exact DP cap of {DP_CAP}"
        )))
    } else {
        Ok(())
    }
}

/// Number of vertices of a longest path in `G[within]` (0 when empty).
pub fn longest_path_order(g: &Graph, within: VertexSet) -> Result<usize> {
    let k = within.len();
    check_cap(k, "longest path")?;
    if k == 0 {
        return Ok(0);
    }
    let h = g.induced_unchecked(&within.to_vec());
    let rows: Vec<u32> = h.rows().iter().map(|&r| r as u32).collect();
    // ends[mask]: endpoints of paths whose vertex set is exactly `mask`
    let mut ends = vec![0u32; 1usize << k];
    for v in 0..k {
        ends[1 << v] = 1 << v;
    }
    let mut best = 1;
    for mask in 1usize..(1 << k) {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
        let mut reach = 0u32;
        let mut it = e;
        while it != 0 {
            let v = it.trailing_zeros() as usize;
            it &= it - 1;
            reach |= rows[v];
        }
        reach &= !(mask as u32);
        while reach != 0 {
            let w = reach.trailing_zeros();
            reach &= reach - 1;
            let next = mask | 1 << w;
            if rows[w as usize] & e != 0 {
                ends[next] |= 1 << w;
            }
        }
    }
    Ok(best)
}

/// Circumference of `g`: length of a longest cycle, 0 for forests.
pub fn longest_cycle(g: &Graph) -> Result<usize> {
    let n = g.order();
    check_cap(n, "longest cycle")?;
    let rows: Vec<u32> = g.rows().iter().map(|&r| r as u32).collect();
    let mut best = 0;
    let mut ends: Vec<u32> = Vec::new();
    // cycles are rooted at their lowest vertex s; the DP runs over vertices > s
    for s in 0..n {
        let rest = n - s - 1;
        if rest < 2 || rest < best {
            continue;
        }
        let shift = s + 1;
        let local = |r: u32| r >> shift;
        let start_nbrs = local(rows[s]);
        ends.clear();
        ends.resize(1usize << rest, 0);
        for v in 0..rest {
            if start_nbrs >> v & 1 == 1 {
                ends[1 << v] = 1 << v;
            }
        }
        for mask in 1usize..(1 << rest) {
            let e = ends[mask];
            if e == 0 {
                continue;
            }
            let len = mask.count_ones() as usize + 1;
            if len >= 3 && e & start_nbrs != 0 {
                best = best.max(len);
            }
            let mut reach = 0u32;
            let mut it = e;
            while it != 0 {
                let v = it.trailing_zeros() as usize;
                it &= it - 1;
                reach |= local(rows[v + shift]);
            }
            reach &= !(mask as u32);
            while reach != 0 {
                let w = reach.trailing_zeros() as usize;
                reach &= reach - 1;
                if local(rows[w + shift]) & e != 0 {
                    ends[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    Ok(best)
}

/// Depth-first path search in `G[within]` with twin symmetry breaking.
struct PathSearch<'a> {
    g: &'a Graph,
    within: VertexSet,
    twins: Vec<usize>,
}

impl<'a> PathSearch<'a> {
    fn new(g: &'a Graph, within: VertexSet) -> Self {
        // twin classes of G[within], lifted back to host indices
        let map = within.to_vec();
        let h = g.induced_unchecked(&map);
        let local = h.twin_classes();
        let mut twins = vec![usize::MAX; g.order()];
        for (i, &v) in map.iter().enumerate() {
            twins[v] = local[i];
        }
        PathSearch { g, within, twins }
    }

    fn reachable(&self, from: usize, avail: VertexSet) -> usize {
        let mut seen = VertexSet::singleton(from);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(self.g.neighbors(u));
            }
            let next = next.intersection(avail).difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen.len()
    }

    fn extend(&self, path: &mut Vec<usize>, used: VertexSet, order: usize) -> bool {
        if path.len() == order {
            return true;
        }
        let last = *path.last().unwrap();
        let avail = self.within.difference(used);
        if path.len() - 1 + self.reachable(last, avail) < order {
            return false;
        }
        let mut tried = Vec::new();
        for c in self.g.neighbors(last).intersection(avail) {
            if tried.contains(&self.twins[c]) {
                continue;
            }
            tried.push(self.twins[c]);
            path.push(c);
            if self.extend(path, used.with(c), order) {
                return true;
            }
            path.pop();
        }
        false
    }
}

/// A path on exactly `order` vertices in `G[within]`, if any.
pub fn find_path(g: &Graph, within: VertexSet, order: usize) -> Option<Vec<usize>> {
    if order == 0 {
        return Some(Vec::new());
    }
    if within.len() < order {
        return None;
    }
    let s = PathSearch::new(g, within);
    let mut tried = Vec::new();
    for v in within {
        if tried.contains(&s.twins[v]) {
            continue;
        }
        tried.push(s.twins[v]);
        let mut path = vec![v];
        if s.extend(&mut path, VertexSet::singleton(v), order) {
            return Some(path);
        }
    }
    None
}

/// A path on exactly `order` vertices in `G[within]` starting at `start`.
pub fn find_path_from(
    g: &Graph,
    within: VertexSet,
    start: usize,
    order: usize,
) -> Option<Vec<usize>> {
    if !within.contains(start) || order == 0 {
        return (order == 0).then(Vec::new);
    }
    let s = PathSearch::new(g, within);
    let mut path = vec![start];
    s.extend(&mut path, VertexSet::singleton(start), order)
        .then_some(path)
}

/// A cycle of exactly `len` vertices, listed in cyclic order.
pub fn find_cycle(g: &Graph, len: usize) -> Option<Vec<usize>> {
    if len < 3 || g.order() < len {
        return None;
    }
    let twins = g.twin_classes();
    for s in 0..g.order() {
        let above = VertexSet(g.vertices().0 & !((2u64 << s) - 1));
        if above.len() + 1 < len || g.degree(s) < 2 {
            continue;
        }
        let mut path = vec![s];
        if cycle_extend(g, &twins, s, above, &mut path, len) {
            return Some(path);
        }
    }
    None
}

fn cycle_extend(
    g: &Graph,
    twins: &[usize],
    s: usize,
    avail: VertexSet,
    path: &mut Vec<usize>,
    len: usize,
) -> bool {
    let last = *path.last().unwrap();
    if path.len() == len {
        return g.has_edge(last, s);
    }
    let mut tried = Vec::new();
    for c in g.neighbors(last).intersection(avail) {
        if tried.contains(&twins[c]) {
            continue;
        }
        tried.push(twins[c]);
        path.push(c);
        if cycle_extend(g, twins, s, avail.without(c), path, len) {
            return true;
        }
        path.pop();
    }
    false
}

/// Shortest odd cycle length, `None` for bipartite graphs.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let n = g.order();
    let mut best: Option<usize> = None;
    let mut level = vec![usize::MAX; n];
    for r in 0..n {
        level.fill(usize::MAX);
        level[r] = 0;
        let mut queue = vec![r];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if best.is_some_and(|b| 2 * level[u] + 1 >= b) {
                break;
            }
            for v in g.neighbors(u) {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push(v);
                } else if level[v] == level[u] {
                    let len = 2 * level[u] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    /// Exhaustive simple-cycle enumeration.
    fn brute_circumference(g: &Graph) -> usize {
        fn dfs(g: &Graph, s: usize, last: usize, used: VertexSet, len: usize, best: &mut usize) {
            for w in g.neighbors(last) {
                if w == s && len >= 3 {
                    *best = (*best).max(len);
                } else if w > s && !used.contains(w) {
                    dfs(g, s, w, used.with(w), len + 1, best);
                }
            }
        }
        let mut best = 0;
        for s in 0..g.order() {
            dfs(g, s, s, VertexSet::singleton(s), 1, &mut best);
        }
        best
    }

    fn brute_longest_path(g: &Graph, within: VertexSet) -> usize {
        fn dfs(g: &Graph, within: VertexSet, last: usize, used: VertexSet) -> usize {
            let mut best = used.len();
            for w in g.neighbors(last).intersection(within).difference(used) {
                best = best.max(dfs(g, within, w, used.with(w)));
            }
            best
        }
        within
            .iter()
            .map(|v| dfs(g, within, v, VertexSet::singleton(v)))
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn circumference_examples() {
        assert_eq!(longest_cycle(&path(6).unwrap()).unwrap(), 0);
        assert_eq!(longest_cycle(&theta(1, 3, 4).unwrap()).unwrap(), 7);
        assert_eq!(brute_circumference(&theta(1, 3, 4).unwrap()), 7);
        assert_eq!(longest_cycle(&complete(5).unwrap()).unwrap(), 5);
        // K_2 ∨ 4K_1: independent vertices need both clique vertices
        assert_eq!(longest_cycle(&split_like(6, 2).unwrap().graph).unwrap(), 4);
        assert!(matches!(
            longest_cycle(&Graph::empty(25).unwrap()),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn dp_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(1..10);
            let g = crate::random::gnp(n, rng.random_range(0.15..0.8), &mut rng);
            assert_eq!(longest_cycle(&g).unwrap(), brute_circumference(&g), "{g:?}");
            let w = crate::random::subset(n, 0.7, &mut rng);
            let lp = longest_path_order(&g, w).unwrap();
            assert_eq!(lp, brute_longest_path(&g, w));
            for order in 1..=w.len() {
                let found = find_path(&g, w, order);
                assert_eq!(found.is_some(), order <= lp, "{g:?} {w:?} {order}");
                if let Some(p) = found {
                    assert_eq!(p.len(), order);
                    assert!(p.windows(2).all(|x| g.has_edge(x[0], x[1])));
                    assert!(p.iter().all(|&v| w.contains(v)));
                    assert_eq!(VertexSet::from_iter(p.iter().copied()).len(), order);
                }
            }
            let circ = longest_cycle(&g).unwrap();
            if circ >= 3 {
                let c = find_cycle(&g, circ).unwrap();
                assert_eq!(c.len(), circ);
                assert!((0..circ).all(|i| g.has_edge(c[i], c[(i + 1) % circ])));
            }
            assert!(find_cycle(&g, circ + 1).is_none());
        }
    }

    #[test]
    fn odd_girth_examples() {
        assert_eq!(odd_girth(&cycle(7).unwrap()), Some(7));
        assert_eq!(odd_girth(&complete_bipartite(3, 4).unwrap()), None);
        assert_eq!(odd_girth(&friendship(2).unwrap().graph), Some(3));
        assert_eq!(odd_girth(&rk(3).unwrap()), Some(7));
    }

    #[test]
    fn large_symmetric_neighbourhoods() {
        // N(dominating vertex) of K_5 ∨ 30K_1 is K_4 ∨ 30K_1: longest path 9
        let g = extremal(5, 30).unwrap().graph;
        let nb = g.neighbors(0);
        assert!(find_path(&g, nb, 9).is_some());
        assert!(find_path(&g, nb, 10).is_none());
        assert!(find_cycle(&g, 10).is_some());
        assert!(find_cycle(&g, 11).is_none());
    }
}
