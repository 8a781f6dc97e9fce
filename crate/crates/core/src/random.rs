//! Uniform random graphs for tests, the self-test and search restarts.

use rand::Rng;

use crate::graph::Graph;

/// `G(n, p)`: each pair independently present with probability `p`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut rows = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
    }
    Graph::from_rows_unchecked(rows)
}

/// Connected `G(n, p)` sample: a random spanning tree plus independent edges.
pub fn connected_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut rows = vec![0u64; n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    for i in 0..n {
        for j in i + 1..n {
            if rows[i] >> j & 1 == 0 && rng.random_bool(p) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
    }
    Graph::from_rows_unchecked(rows)
}

/// Random subset of the vertex range `0..n`, each vertex kept with probability `p`.
pub fn subset<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> crate::graph::VertexSet {
    (0..n).filter(|_| rng.random_bool(p)).collect()
}
