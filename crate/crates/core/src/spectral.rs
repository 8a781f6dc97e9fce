//! Adjacency spectra: shifted power iteration for the spectral radius and
//! Perron vector, cyclic Jacobi for the full spectrum, walk-counting traces
//! and the closed-form bounds.

use serde::Serialize;

use crate::error::{arg, Error, Result};
use crate::families;
use crate::graph::{Graph, VertexSet};

/// Residual tolerance of the power iteration (infinity norm).
pub const POWER_TOLERANCE: f64 = 1e-12;
pub const POWER_MAX_ITERATIONS: usize = 1_000_000;
/// Largest off-diagonal magnitude accepted by the Jacobi sweeps.
pub const JACOBI_THRESHOLD: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Tolerance for every asserted equality between spectral quantities.
pub const EQUALITY_TOLERANCE: f64 = 1e-8;
/// Margin above which a numerical increase of `λ` counts as strict.
pub const STRICT_MARGIN: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub lambda1: f64,
    /// Max coordinate 1, zero outside the component attaining `lambda1`.
    pub perron: Vec<f64>,
    /// `None` for the single-vertex graph.
    pub lambda2: Option<f64>,
    pub residual: f64,
    pub iterations: usize,
    /// Extremal vertex: argmax of `perron`, lowest index on ties.
    pub u_star: usize,
}

/// Spectral radius plus Perron vector of one component.
#[derive(Debug, Clone)]
pub struct PerronPair {
    pub lambda: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

pub fn spectral_radius(g: &Graph) -> Result<SpectralResult> {
    let pair = perron(g)?;
    let spectrum = full_spectrum(g)?;
    let lambda2 = spectrum.get(1).copied();
    let u_star = argmax_lowest(&pair.vector);
    Ok(SpectralResult {
        lambda1: pair.lambda,
        perron: pair.vector,
        lambda2,
        residual: pair.residual,
        iterations: pair.iterations,
        u_star,
    })
}

/// Largest adjacency eigenvalue only.
pub fn lambda_max(g: &Graph) -> Result<f64> {
    perron(g).map(|p| p.lambda)
}

/// Perron pair on the component with the largest radius (first such
/// component on ties).
pub fn perron(g: &Graph) -> Result<PerronPair> {
    let n = g.order();
    if n == 0 {
        return arg("spectral radius of the empty graph is undefined");
    }
    let mut best: Option<PerronPair> = None;
    for comp in g.components() {
        let pair = component_perron(g, comp)?;
        if best
            .as_ref()
            .is_none_or(|b| pair.lambda > b.lambda + EQUALITY_TOLERANCE)
        {
            best = Some(pair);
        }
    }
    Ok(best.expect("n >= 1 implies a component"))
}

fn component_perron(g: &Graph, comp: VertexSet) -> Result<PerronPair> {
    let n = g.order();
    let idx = comp.to_vec();
    let mut vector = vec![0.0; n];
    if idx.len() == 1 {
        vector[idx[0]] = 1.0;
        return Ok(PerronPair {
            lambda: 0.0,
            vector,
            residual: 0.0,
            iterations: 0,
        });
    }
    let (lambda, x, residual, iterations) = shifted_power(g, &idx)?;
    for (i, &v) in idx.iter().enumerate() {
        vector[v] = x[i];
    }
    Ok(PerronPair {
        lambda,
        vector,
        residual,
        iterations,
    })
}

/// Power iteration on `A + I` restricted to `idx` (a connected vertex set).
fn shifted_power(g: &Graph, idx: &[usize]) -> Result<(f64, Vec<f64>, f64, usize)> {
    let k = idx.len();
    let mut pos = vec![usize::MAX; g.order()];
    for (i, &v) in idx.iter().enumerate() {
        pos[v] = i;
    }
    let nbrs: Vec<Vec<usize>> = idx
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|w| pos[w]).collect())
        .collect();

    let mut x = vec![1.0f64; k];
    let mut ax = vec![0.0f64; k];
    let mut residual = f64::INFINITY;
    for it in 1..=POWER_MAX_ITERATIONS {
        for i in 0..k {
            ax[i] = nbrs[i].iter().map(|&j| x[j]).sum();
        }
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..k {
            num += x[i] * ax[i];
            den += x[i] * x[i];
        }
        let lambda = num / den;
        residual = (0..k)
            .map(|i| (ax[i] - lambda * x[i]).abs())
            .fold(0.0, f64::max);
        if residual <= POWER_TOLERANCE {
            return Ok((lambda, x, residual, it));
        }
        let mut top = 0.0f64;
        for i in 0..k {
            ax[i] += x[i];
            top = top.max(ax[i]);
        }
        for i in 0..k {
            x[i] = ax[i] / top;
        }
    }
    Err(Error::NonConvergence {
        iterations: POWER_MAX_ITERATIONS,
        residual,
        iterate: x,
    })
}

pub(crate) fn argmax_lowest(x: &[f64]) -> usize {
    let top = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    x.iter()
        .position(|&v| v >= top - 1e-9)
        .expect("non-empty vector")
}

/// All adjacency eigenvalues, descending, by cyclic Jacobi rotations.
pub fn full_spectrum(g: &Graph) -> Result<Vec<f64>> {
    let n = g.order();
    let mut a = vec![vec![0.0f64; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    let mut ev = jacobi_eigenvalues(a)?;
    ev.sort_by(|x, y| y.total_cmp(x));
    Ok(ev)
}

/// Eigenvalues of a dense symmetric matrix (unsorted).
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let n = a.len();
    let off = |a: &Vec<Vec<f64>>| {
        let mut m = 0.0f64;
        for p in 0..n {
            for q in p + 1..n {
                m = m.max(a[p][q].abs());
            }
        }
        m
    };
    let mut sweeps = 0;
    loop {
        let largest = off(&a);
        if largest <= JACOBI_THRESHOLD {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NonConvergence {
                iterations: sweeps,
                residual: largest,
                iterate: (0..n).map(|i| a[i][i]).collect(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
            }
        }
    }
    Ok((0..n).map(|i| a[i][i]).collect())
}

/// Tr(A^p) computed two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerTrace {
    pub power: u32,
    /// Exact count of closed walks of length `p`.
    pub walks: u128,
    /// `Σ λ_i^p` from the Jacobi spectrum.
    pub spectral: f64,
}

impl PowerTrace {
    pub fn value(&self) -> f64 {
        self.walks as f64
    }

    pub fn discrepancy(&self) -> f64 {
        (self.walks as f64 - self.spectral).abs()
    }
}

pub fn power_trace(g: &Graph, p: u32) -> Result<PowerTrace> {
    if p < 2 || !p.is_multiple_of(2) || p > 12 {
        return arg(format!("power must be even with 2 <= p <= 12, got {p}"));
    }
    let spectrum = full_spectrum(g)?;
    let spectral = spectrum.iter().map(|l| l.powi(p as i32)).sum();
    Ok(PowerTrace {
        power: p,
        walks: closed_walks(g, p),
        spectral,
    })
}

/// `Tr(A^p)` by exact integer matrix powers (repeated squaring).
pub fn closed_walks(g: &Graph, p: u32) -> u128 {
    let n = g.order();
    type M = Vec<Vec<u128>>;
    let mul = |x: &M, y: &M| -> M {
        let mut z = vec![vec![0u128; n]; n];
        for i in 0..n {
            for k in 0..n {
                if x[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    z[i][j] += x[i][k] * y[k][j];
                }
            }
        }
        z
    };
    let mut base: M = (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(i, j) as u128).collect())
        .collect();
    let mut acc: M = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as u128).collect())
        .collect();
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    (0..n).map(|i| acc[i][i]).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceInequality {
    pub k: u32,
    /// `λ₁^{2k} + λ₂^{2k}`.
    pub lhs: f64,
    /// `Tr(A^{2k}) / 2`.
    pub rhs: f64,
    pub holds: bool,
}

/// `λ₁^{2k} + λ₂^{2k} <= Tr(A^{2k})/2` for `{C_3, .., C_{2k+1}}`-free graphs.
pub fn trace_inequality(g: &Graph, k: u32, tolerance: f64) -> Result<TraceInequality> {
    if !(1..=6).contains(&k) {
        return arg(format!("k must lie in 1..=6, got {k}"));
    }
    // on K_2 the second eigenvalue is -λ₁ itself and the inequality fails
    if g.order() < 3 {
        return arg("trace inequality needs at least three vertices");
    }
    if !crate::patterns::odd_girth_check(g, k as usize) {
        return arg(format!(
            "graph contains an odd cycle of length <= {}",
            2 * k + 1
        ));
    }
    let spectrum = full_spectrum(g)?;
    let p = 2 * k as i32;
    let lhs = spectrum[0].powi(p) + spectrum[1].powi(p);
    let rhs = closed_walks(g, 2 * k) as f64 / 2.0;
    Ok(TraceInequality {
        k,
        lhs,
        rhs,
        holds: lhs <= rhs + tolerance,
    })
}

/// Closed-form spectral bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundSpec {
    /// `√m` for triangle-free graphs.
    Nosal { m: usize },
    /// `√(m-1)` for non-bipartite triangle-free graphs.
    Lnw { m: usize },
    /// `(k - 1 + √(4m - k² + 1)) / 2` for `F_{2k+2}`- and `F_{k,3}`-free graphs.
    Fan { k: usize, m: usize },
    /// `(1 + √(4m - 3)) / 2` for `F_{2,3}`-free graphs.
    FriendshipF23 { m: usize },
    /// `λ(K_b ∨ (K_{a-b} ∪ K_1))` with `m = C(a,2) + b`.
    BrualdiHoffman { m: usize },
    /// `√(2m(1 - 1/r))` for `K_{r+1}`-free graphs.
    Nikiforov { r: usize, m: usize },
}

impl BoundSpec {
    pub fn m(&self) -> usize {
        match *self {
            BoundSpec::Nosal { m }
            | BoundSpec::Lnw { m }
            | BoundSpec::Fan { m, .. }
            | BoundSpec::FriendshipF23 { m }
            | BoundSpec::BrualdiHoffman { m }
            | BoundSpec::Nikiforov { m, .. } => m,
        }
    }

    pub fn with_m(self, m: usize) -> Self {
        match self {
            BoundSpec::Nosal { .. } => BoundSpec::Nosal { m },
            BoundSpec::Lnw { .. } => BoundSpec::Lnw { m },
            BoundSpec::Fan { k, .. } => BoundSpec::Fan { k, m },
            BoundSpec::FriendshipF23 { .. } => BoundSpec::FriendshipF23 { m },
            BoundSpec::BrualdiHoffman { .. } => BoundSpec::BrualdiHoffman { m },
            BoundSpec::Nikiforov { r, .. } => BoundSpec::Nikiforov { r, m },
        }
    }
}

pub fn bound_value(spec: BoundSpec) -> Result<f64> {
    let v = match spec {
        BoundSpec::Nosal { m } => (m as f64).sqrt(),
        BoundSpec::Lnw { m } => {
            if m < 1 {
                return arg("Lin-Ning-Wu bound needs m >= 1");
            }
            ((m - 1) as f64).sqrt()
        }
        BoundSpec::Fan { k, m } => {
            if k < 1 || 4 * m + 1 < k * k {
                return arg(format!(
                    "fan bound needs k >= 1 and 4m >= k^2 - 1, got k={k}, m={m}"
                ));
            }
            let disc = (4 * m + 1 - k * k) as f64;
            ((k - 1) as f64 + disc.sqrt()) / 2.0
        }
        BoundSpec::FriendshipF23 { m } => {
            if m < 1 {
                return arg("F_(2,3) bound needs m >= 1");
            }
            (1.0 + ((4 * m - 3) as f64).sqrt()) / 2.0
        }
        BoundSpec::BrualdiHoffman { m } => {
            if m < 1 {
                return arg("Brualdi-Hoffman bound needs m >= 1");
            }
            let (a, b) = families::bh_parameters(m);
            bh_quotient_radius(a, b)?
        }
        BoundSpec::Nikiforov { r, m } => {
            if r < 1 {
                return arg("Nikiforov bound needs r >= 1");
            }
            (2.0 * m as f64 * (1.0 - 1.0 / r as f64)).sqrt()
        }
    };
    Ok(v)
}

/// Largest root of the equitable-partition quotient of `K_b ∨ (K_{a-b} ∪ K_1)`.
fn bh_quotient_radius(a: usize, b: usize) -> Result<f64> {
    // parts: B (size b), C (size a-b), D (size 1); entries are neighbour counts
    let sizes = [b as f64, (a - b) as f64, 1.0];
    let counts = [
        [b as f64 - 1.0, (a - b) as f64, 1.0],
        [b as f64, (a - b) as f64 - 1.0, 0.0],
        [b as f64, 0.0, 0.0],
    ];
    let live: Vec<usize> = (0..3).filter(|&i| sizes[i] > 0.0).collect();
    let sym: Vec<Vec<f64>> = live
        .iter()
        .map(|&i| {
            live.iter()
                .map(|&j| (counts[i][j] * counts[j][i]).sqrt())
                .collect()
        })
        .collect();
    let ev = jacobi_eigenvalues(sym)?;
    Ok(ev.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EqualityReport {
    pub k: usize,
    pub t: usize,
    pub m: usize,
    pub lambda: f64,
    pub bound: f64,
    /// `bound - lambda`.
    pub gap: f64,
    pub holds: bool,
}

/// Compares `λ(K_k ∨ tK_1)` with the fan bound at `m = C(k,2) + kt`.
pub fn equality_check(k: usize, t: usize) -> Result<EqualityReport> {
    let g = families::extremal(k, t)?.graph;
    let m = g.size();
    let lambda = lambda_max(&g)?;
    let bound = bound_value(BoundSpec::Fan { k, m })?;
    let gap = bound - lambda;
    Ok(EqualityReport {
        k,
        t,
        m,
        lambda,
        bound,
        gap,
        holds: gap.abs() <= EQUALITY_TOLERANCE,
    })
}
