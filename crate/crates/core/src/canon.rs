//! Canonical labelling by partition refinement and a pruned search tree.
//!
//! The search individualises vertices of the first non-singleton cell of an
//! equitable ordered partition. Two prunings keep it small on the highly
//! symmetric graphs this crate deals with (stars, `K_k ∨ tK_1`, isolated
//! padding): twins in a target cell are tried once, and children already
//! covered by an automorphism fixing the current prefix are skipped. The leaf
//! whose relabelled adjacency rows are lexicographically smallest wins.

use std::fmt;

use crate::graph::{graph6, Graph, VertexSet};

/// graph6 string of the canonically relabelled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl serde::Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({:?})", self.0)
    }
}

/// Result of canonical labelling: `labeling[v]` is the new index of `v`.
#[derive(Debug, Clone)]
pub struct Labeling {
    pub labeling: Vec<usize>,
    pub graph: Graph,
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(graph6::encode(&canonical_labeling(g).graph))
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let n = g.order();
    if n <= 1 {
        return Labeling {
            labeling: (0..n).collect(),
            graph: g.clone(),
        };
    }
    let mut s = Search {
        g,
        twins: g.twin_classes(),
        best: None,
        automorphisms: Vec::new(),
    };
    let cells = initial_partition(g);
    s.visit(cells, &mut Vec::new());
    let (rows, labeling) = s.best.expect("search tree has at least one leaf");
    Labeling {
        labeling,
        graph: Graph::from_rows_unchecked(rows),
    }
}

/// Whether `g` and `h` are isomorphic, via canonical forms.
pub fn isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.size() == h.size()
        && g.degree_sequence() == h.degree_sequence()
        && canonical_labeling(g).graph == canonical_labeling(h).graph
}

fn initial_partition(g: &Graph) -> Vec<Vec<usize>> {
    let mut by_degree: Vec<(usize, usize)> = (0..g.order()).map(|v| (g.degree(v), v)).collect();
    by_degree.sort_unstable();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut last = usize::MAX;
    for (d, v) in by_degree {
        if d != last {
            cells.push(Vec::new());
            last = d;
        }
        cells.last_mut().unwrap().push(v);
    }
    cells
}

/// Refine to the coarsest equitable partition finer than `cells`.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    'outer: loop {
        for si in 0..cells.len() {
            let splitter = VertexSet::from_iter(cells[si].iter().copied()).0;
            for ci in 0..cells.len() {
                if cells[ci].len() == 1 {
                    continue;
                }
                let cell = &cells[ci];
                let first = (g.rows()[cell[0]] & splitter).count_ones();
                if cell
                    .iter()
                    .all(|&v| (g.rows()[v] & splitter).count_ones() == first)
                {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cell
                    .iter()
                    .map(|&v| ((g.rows()[v] & splitter).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                let mut parts: Vec<Vec<usize>> = Vec::new();
                let mut last = u32::MAX;
                for (k, v) in keyed {
                    if k != last {
                        parts.push(Vec::new());
                        last = k;
                    }
                    parts.last_mut().unwrap().push(v);
                }
                cells.splice(ci..=ci, parts);
                continue 'outer;
            }
        }
        break;
    }
}

struct Search<'a> {
    g: &'a Graph,
    twins: Vec<usize>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, mut cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut target_cell = cells[target].clone();
        target_cell.sort_unstable();

        let mut tried: Vec<usize> = Vec::new();
        let mut tried_twins: Vec<usize> = Vec::new();
        for &v in &target_cell {
            if tried_twins.contains(&self.twins[v]) {
                continue;
            }
            if !tried.is_empty() && self.same_orbit_as_tried(v, &tried, prefix) {
                continue;
            }
            tried.push(v);
            tried_twins.push(self.twins[v]);

            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            prefix.push(v);
            self.visit(child, prefix);
            prefix.pop();
        }
    }

    fn same_orbit_as_tried(&self, v: usize, tried: &[usize], prefix: &[usize]) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.automorphisms {
            if prefix.iter().all(|&p| a[p] == p) {
                any = true;
                for x in 0..n {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, a[x]));
                    if rx != ry {
                        parent[rx.max(ry)] = rx.min(ry);
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.g.order();
        let mut labeling = vec![0usize; n];
        for (i, c) in cells.iter().enumerate() {
            labeling[c[0]] = i;
        }
        let h = self.g.relabel_unchecked(&labeling);
        let rows = h.rows().to_vec();
        match &self.best {
            None => self.best = Some((rows, labeling)),
            Some((best_rows, best_lab)) => match rows.cmp(best_rows) {
                std::cmp::Ordering::Less => self.best = Some((rows, labeling)),
                std::cmp::Ordering::Equal => {
                    // best_lab^{-1} ∘ labeling is an automorphism
                    let mut inv = vec![0usize; n];
                    for (v, &i) in best_lab.iter().enumerate() {
                        inv[i] = v;
                    }
                    let auto: Vec<usize> = (0..n).map(|v| inv[labeling[v]]).collect();
                    if auto.iter().enumerate().any(|(i, &a)| i != a) {
                        self.automorphisms.push(auto);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn cycle_relabelings_agree() {
        let c5 = cycle(5);
        let c = canonical_form(&c5);
        for perm in [
            [1, 2, 3, 4, 0],
            [4, 3, 2, 1, 0],
            [0, 2, 4, 1, 3],
            [3, 0, 4, 2, 1],
        ] {
            assert_eq!(canonical_form(&c5.relabel(&perm).unwrap()), c);
        }
    }

    #[test]
    fn p4_and_star_differ() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_form(&p4), canonical_form(&star));
        assert!(!isomorphic(&p4, &star));
    }

    #[test]
    fn labeling_is_an_isomorphism() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap();
        let l = canonical_labeling(&g);
        assert_eq!(g.relabel(&l.labeling).unwrap(), l.graph);
    }

    #[test]
    fn highly_symmetric_graphs_are_fast() {
        // K_5 ∨ 50K_1 plus isolated padding: the twin pruning keeps this tiny.
        let k5 = Graph::from_edges(
            5,
            &(0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let g = k5.join(&Graph::empty(50).unwrap()).unwrap();
        let g = g.disjoint_union(&Graph::empty(7).unwrap()).unwrap();
        let a = canonical_form(&g);
        let mut perm: Vec<usize> = (0..62).collect();
        perm.reverse();
        assert_eq!(canonical_form(&g.relabel(&perm).unwrap()), a);
        // vertex-transitive: relies on automorphism pruning
        let c = cycle(40);
        let mut perm: Vec<usize> = (0..40).map(|i| (i * 7) % 40).collect();
        perm.rotate_left(3);
        assert_eq!(
            canonical_form(&c.relabel(&perm).unwrap()),
            canonical_form(&c)
        );
    }
}
