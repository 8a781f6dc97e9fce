//! Maximum matching in general graphs (Edmonds' blossom algorithm).

use crate::graph::{Graph, VertexSet};

const NONE: usize = usize::MAX;

/// Maximum matching of `G[within]` as a list of edges.
pub fn max_matching_within(g: &Graph, within: VertexSet) -> Vec<(usize, usize)> {
    let map = within.to_vec();
    let h = g.induced_unchecked(&map);
    max_matching(&h)
        .into_iter()
        .map(|(a, b)| (map[a], map[b]))
        .collect()
}

pub fn max_matching(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut b = Blossom {
        g,
        n,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: Vec::with_capacity(n),
    };
    // greedy warm start
    for v in 0..n {
        if b.mate[v] == NONE {
            if let Some(w) = g.neighbors(v).iter().find(|&w| b.mate[w] == NONE) {
                b.mate[v] = w;
                b.mate[w] = v;
            }
        }
    }
    for root in 0..n {
        if b.mate[root] != NONE {
            continue;
        }
        let mut v = b.find_augmenting(root);
        while v != NONE {
            let pv = b.parent[v];
            let ppv = b.mate[pv];
            b.mate[v] = pv;
            b.mate[pv] = v;
            v = ppv;
        }
    }
    (0..n)
        .filter(|&v| b.mate[v] != NONE && v < b.mate[v])
        .map(|v| (v, b.mate[v]))
        .collect()
}

struct Blossom<'a> {
    g: &'a Graph,
    n: usize,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting(&mut self, root: usize) -> usize {
        self.used.fill(false);
        self.parent.fill(NONE);
        for i in 0..self.n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..self.n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        NONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn brute(g: &Graph) -> usize {
        fn rec(edges: &[(usize, usize)], used: u64) -> usize {
            match edges.split_first() {
                None => 0,
                Some((&(a, b), rest)) => {
                    let skip = rec(rest, used);
                    if used >> a & 1 == 0 && used >> b & 1 == 0 {
                        skip.max(1 + rec(rest, used | 1 << a | 1 << b))
                    } else {
                        skip
                    }
                }
            }
        }
        rec(&g.edges(), 0)
    }

    fn is_matching(g: &Graph, m: &[(usize, usize)]) -> bool {
        let mut used = 0u64;
        m.iter().all(|&(a, b)| {
            let ok = g.has_edge(a, b) && used >> a & 1 == 0 && used >> b & 1 == 0;
            used |= 1 << a | 1 << b;
            ok
        })
    }

    #[test]
    fn odd_cycles_need_blossoms() {
        for n in 3..12 {
            let c = families::cycle(n).unwrap();
            let m = max_matching(&c);
            assert!(is_matching(&c, &m));
            assert_eq!(m.len(), n / 2);
        }
        // two triangles joined by a path: classic blossom case
        let g = Graph::from_edges(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 5),
            ],
        )
        .unwrap();
        assert_eq!(max_matching(&g).len(), 4);
    }

    #[test]
    fn agrees_with_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.random_range(1..11);
            let p: f64 = rng.random_range(0.1..0.7);
            let g = crate::random::gnp(n, p, &mut rng);
            let m = max_matching(&g);
            assert!(is_matching(&g, &m));
            assert_eq!(m.len(), brute(&g), "{g:?}");
        }
    }
}
