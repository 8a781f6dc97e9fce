//! k-cores, the η functional and the decomposition around the extremal vertex.
//!
//! For a connected graph with Perron vector `x` scaled so that `x[u*] = 1`,
//! `R = N(u*)` and `S = V \ N[u*]`. For `L ⊆ R`,
//! `η(L) = Σ_{u∈L} (d_L(u) − k + 1)·x_u − e(L)`.

use num_traits::{FromPrimitive, Num};
use serde::Serialize;

use crate::error::{arg, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::paths;
use crate::spectral;

/// Slack used when comparing floating-point η values.
pub const ETA_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreResult {
    pub core: VertexSet,
    /// `(vertex, degree at removal)` in removal order.
    pub peel_order: Vec<(usize, usize)>,
}

/// k-core of `g`, peeling the lowest-index eligible vertex first.
pub fn k_core(g: &Graph, k: usize) -> CoreResult {
    k_core_within(g, g.vertices(), k)
}

/// k-core of `G[within]`.
pub fn k_core_within(g: &Graph, within: VertexSet, k: usize) -> CoreResult {
    let order: Vec<usize> = within.to_vec();
    k_core_with_priority(g, within, k, &order)
}

/// k-core of `G[within]`; whenever several vertices are eligible for removal,
/// the one appearing first in `priority` goes first. The resulting core does
/// not depend on `priority`, only the certificate does.
pub fn k_core_with_priority(
    g: &Graph,
    within: VertexSet,
    k: usize,
    priority: &[usize],
) -> CoreResult {
    let mut alive = within;
    let mut peel_order = Vec::new();
    'outer: loop {
        for &v in priority {
            if alive.contains(v) {
                let d = g.degree_in(v, alive);
                if d < k {
                    alive = alive.without(v);
                    peel_order.push((v, d));
                    continue 'outer;
                }
            }
        }
        break;
    }
    // vertices missing from `priority` are peeled in index order
    while let Some(v) = alive.iter().find(|&v| g.degree_in(v, alive) < k) {
        peel_order.push((v, g.degree_in(v, alive)));
        alive = alive.without(v);
    }
    CoreResult {
        core: alive,
        peel_order,
    }
}

/// η over an arbitrary weight type (floating point or exact rationals).
pub fn eta_generic<T>(g: &Graph, k: usize, x: &[T], l: VertexSet) -> T
where
    T: Num + Copy + FromPrimitive,
{
    let int = |v: i64| T::from_i64(v).expect("small integers are representable");
    let mut total = T::zero();
    for u in l {
        let coeff = g.degree_in(u, l) as i64 - k as i64 + 1;
        total = total + int(coeff) * x[u];
    }
    total - int(g.edges_within(l) as i64)
}

#[derive(Debug, Clone, Serialize)]
pub struct CoreEtaContext {
    pub k: usize,
    #[serde(skip)]
    pub host: Graph,
    /// Perron vector with `x[u_star] = 1`, all coordinates in `(0, 1]`.
    pub x: Vec<f64>,
    pub lambda: f64,
    pub u_star: usize,
    pub r: VertexSet,
    pub s: VertexSet,
    pub s0: VertexSet,
    pub s1: VertexSet,
    /// `−k(k−1)/2`, always an integer.
    pub gamma: i64,
}

/// Perron data and the `R`/`S` split around the extremal vertex.
///
/// Rejects disconnected graphs: the split is only meaningful on the
/// component carrying the Perron vector.
pub fn decompose(g: &Graph, k: usize) -> Result<CoreEtaContext> {
    if k == 0 {
        return arg("k must be at least 1");
    }
    if !g.is_connected() {
        return arg("decompose needs a connected graph; extract a component first");
    }
    let pair = spectral::perron(g)?;
    let u_star = spectral::argmax_lowest(&pair.vector);
    let top = pair.vector[u_star];
    let x: Vec<f64> = pair.vector.iter().map(|&v| (v / top).min(1.0)).collect();
    let r = g.neighbors(u_star);
    let s = g.vertices().difference(r).without(u_star);
    let s0: VertexSet = s.iter().filter(|&w| g.degree_in(w, s) == 0).collect();
    let k_i = k as i64;
    Ok(CoreEtaContext {
        k,
        host: g.clone(),
        x,
        lambda: pair.lambda,
        u_star,
        r,
        s,
        s0,
        s1: s.difference(s0),
        gamma: -(k_i * (k_i - 1) / 2),
    })
}

impl CoreEtaContext {
    fn check_subset(&self, l: VertexSet) -> Result<()> {
        if !l.is_subset(self.r) {
            return Err(Error::Argument(format!(
                "L = {:?} is not contained in R = {:?}",
                l.to_vec(),
                self.r.to_vec()
            )));
        }
        Ok(())
    }

    pub fn eta(&self, l: VertexSet) -> Result<f64> {
        self.check_subset(l)?;
        Ok(eta_generic(&self.host, self.k, &self.x, l))
    }

    /// `L^c`: the (k−1)-core of `G[L]`.
    pub fn core_of(&self, l: VertexSet) -> CoreResult {
        k_core_within(&self.host, l, self.k - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaComparison {
    pub eta_l: f64,
    pub eta_core: f64,
    pub core: VertexSet,
    /// `η(L) ≤ η(L^c)` up to [`ETA_TOLERANCE`].
    pub holds: bool,
    /// `|η(L) − η(L^c)|` within tolerance.
    pub equal: bool,
    /// Equality occurs exactly when `L` is already its own core.
    pub equality_consistent: bool,
}

pub fn eta_core_inequality(ctx: &CoreEtaContext, l: VertexSet) -> Result<EtaComparison> {
    let eta_l = ctx.eta(l)?;
    let core = ctx.core_of(l).core;
    let eta_core = ctx.eta(core)?;
    let equal = (eta_l - eta_core).abs() <= ETA_TOLERANCE;
    Ok(EtaComparison {
        eta_l,
        eta_core,
        core,
        holds: eta_l <= eta_core + ETA_TOLERANCE,
        equal,
        equality_consistent: equal == (core == l),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum JClass {
    J1,
    J2,
    J3,
    J4,
    /// Members of J4 with positive η.
    J5,
}

impl JClass {
    /// J5 is a subfamily of J4.
    pub fn is_j4(self) -> bool {
        matches!(self, JClass::J4 | JClass::J5)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentClass {
    pub component: VertexSet,
    pub class: JClass,
    pub circumference: Option<usize>,
    /// Edges missing from `K_{2k}`; set for J4/J5 only.
    pub t_j: Option<usize>,
    pub eta: f64,
}

/// Classify the components of `G[R^c]` where `R^c` is the (k−1)-core of `G[R]`.
pub fn classify_components(ctx: &CoreEtaContext) -> Result<Vec<ComponentClass>> {
    let k = ctx.k;
    let g = &ctx.host;
    let rc = ctx.core_of(ctx.r).core;
    let mut out = Vec::new();
    for comp in g.components_within(rc) {
        let eta = ctx.eta(comp)?;
        if comp.len() > 2 * k {
            out.push(ComponentClass {
                component: comp,
                class: JClass::J1,
                circumference: None,
                t_j: None,
                eta,
            });
            continue;
        }
        let (h, _) = g.induced(comp)?;
        let circ = paths::longest_cycle(&h)?;
        let class = if circ + 2 <= 2 * k {
            JClass::J2
        } else if circ + 1 == 2 * k {
            JClass::J3
        } else if eta > ETA_TOLERANCE {
            JClass::J5
        } else {
            JClass::J4
        };
        let t_j = class
            .is_j4()
            .then(|| k * (2 * k - 1) - g.edges_within(comp));
        out.push(ComponentClass {
            component: comp,
            class,
            circumference: Some(circ),
            t_j,
            eta,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlackReport {
    /// `λ² − (k−1)λ − m − γ`.
    pub excess: f64,
    /// `λ² − (k−1)λ`.
    pub identity_lhs: f64,
    /// `d(u*) + Σ_R (d_R(u) − k + 1) x_u + Σ_S d_R(w) x_w`.
    pub identity_rhs: f64,
    pub identity_residual: f64,
    /// `η(R) + m − e(S) − (λ² − (k−1)λ)`; nonnegative whenever `x ≤ 1`.
    pub eta_slack: f64,
    /// `η(R) − e(S) − γ`. Only guaranteed nonnegative for extremal graphs.
    pub eta_gamma_slack: f64,
}

pub fn slack_report(ctx: &CoreEtaContext) -> Result<SlackReport> {
    let g = &ctx.host;
    let k = ctx.k as f64;
    let lambda = ctx.lambda;
    let m = g.size() as f64;
    let gamma = ctx.gamma as f64;
    let lhs = lambda * lambda - (k - 1.0) * lambda;
    let from_r: f64 = ctx
        .r
        .iter()
        .map(|u| (g.degree_in(u, ctx.r) as f64 - k + 1.0) * ctx.x[u])
        .sum();
    let from_s: f64 = ctx
        .s
        .iter()
        .map(|w| g.degree_in(w, ctx.r) as f64 * ctx.x[w])
        .sum();
    let rhs = g.degree(ctx.u_star) as f64 + from_r + from_s;
    let eta_r = ctx.eta(ctx.r)?;
    let e_s = g.edges_within(ctx.s) as f64;
    Ok(SlackReport {
        excess: lhs - m - gamma,
        identity_lhs: lhs,
        identity_rhs: rhs,
        identity_residual: (lhs - rhs).abs(),
        eta_slack: eta_r + m - e_s - lhs,
        eta_gamma_slack: eta_r - e_s - gamma,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathLemmaReport {
    pub s: usize,
    /// Deleted edge sets examined.
    pub cases: usize,
    pub holds: bool,
    /// First failure: deleted edges (as pairs in `K_{2s−1}`) and start vertex.
    pub counterexample: Option<(Vec<(usize, usize)>, usize)>,
}

/// For every way of deleting `s` edges from `K_{2s−1}` (giving `H`) and every
/// vertex `v` of `H`, check that `K_1 ∨ H` has a path on `2s` vertices
/// starting at `v`.
pub fn verify_path_lemma(s: usize) -> Result<PathLemmaReport> {
    if !(2..=4).contains(&s) {
        return arg(format!("path lemma check supports 2 <= s <= 4, got {s}"));
    }
    let h_order = 2 * s - 1;
    let base = crate::families::complete(h_order)?;
    let edges = base.edges();
    let mut cases = 0;
    let mut chosen = Vec::with_capacity(s);
    let mut failure = None;
    for_each_combination(edges.len(), s, &mut chosen, &mut |idx| {
        cases += 1;
        let mut h = base.clone();
        for &i in idx {
            let (a, b) = edges[i];
            h = h.delete_edge(a, b).expect("edge present");
        }
        let g = Graph::empty(1)
            .expect("one vertex")
            .join(&h)
            .expect("small");
        for v in 0..h_order {
            if paths::find_path_from(&g, g.vertices(), v + 1, 2 * s).is_none() {
                failure = Some((idx.iter().map(|&i| edges[i]).collect(), v));
                return false;
            }
        }
        true
    });
    Ok(PathLemmaReport {
        s,
        cases,
        holds: failure.is_none(),
        counterexample: failure,
    })
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it returns false.
pub(crate) fn for_each_combination(
    n: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if chosen.len() == k {
        return f(chosen);
    }
    let start = chosen.last().map_or(0, |&c| c + 1);
    for i in start..n {
        if n - i < k - chosen.len() {
            break;
        }
        chosen.push(i);
        let go_on = for_each_combination(n, k, chosen, f);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;
    use num_rational::Ratio;

    #[test]
    fn core_examples() {
        assert!(k_core(&path(7).unwrap(), 2).core.is_empty());
        assert_eq!(k_core(&cycle(5).unwrap(), 2).core.len(), 5);
        assert_eq!(k_core(&s_plus(8, 2).unwrap().graph, 2).core.len(), 8);
        let g = complete(4)
            .unwrap()
            .disjoint_union(&path(3).unwrap())
            .unwrap();
        let c = k_core(&g, 3);
        assert_eq!(c.core, VertexSet::full(4));
        assert!(c.peel_order.iter().all(|&(_, d)| d < 3));
        assert_eq!(k_core(&g, 0).core, g.vertices());
    }

    #[test]
    fn eta_examples() {
        let g = complete(6).unwrap();
        let ones = vec![1.0; 6];
        assert_eq!(eta_generic(&g, 3, &ones, VertexSet::EMPTY), 0.0);
        assert_eq!(eta_generic(&g, 3, &ones, VertexSet::singleton(2)), -2.0);
        assert_eq!(eta_generic(&g, 3, &ones, g.vertices()), 3.0);
        let half = vec![Ratio::new(1i64, 2); 6];
        let tri = VertexSet::full(3);
        // (2 − 2)·½·3 − 3
        assert_eq!(eta_generic(&g, 3, &half, tri), Ratio::from_integer(-3));
    }

    #[test]
    fn decompose_examples() {
        let star = complete_bipartite(1, 5).unwrap();
        let ctx = decompose(&star, 2).unwrap();
        assert_eq!(ctx.u_star, 0);
        assert_eq!(ctx.r.len(), 5);
        assert!(ctx.s.is_empty());
        assert!(classify_components(&ctx).unwrap().is_empty());

        let ext = extremal(3, 4).unwrap();
        let ctx = decompose(&ext.graph, 3).unwrap();
        assert!(ext.role(Role::Dominating).unwrap().contains(ctx.u_star));
        assert_eq!(ctx.r.len(), 6);
        assert!(ctx.s.is_empty());
        assert_eq!(ctx.gamma, -3);

        let c5 = cycle(5).unwrap();
        let ctx = decompose(&c5, 2).unwrap();
        assert_eq!((ctx.r.len(), ctx.s.len()), (2, 2));
        assert_eq!(c5.edges_within(ctx.s), 1);
        assert!(ctx.s0.is_empty());

        let two = complete(3)
            .unwrap()
            .disjoint_union(&complete(2).unwrap())
            .unwrap();
        assert!(matches!(decompose(&two, 2), Err(Error::Argument(_))));
    }

    #[test]
    fn classification_examples() {
        // G[R] = K_2 ∨ 4K_1 has circumference 4 = 2k − 2
        let ctx = decompose(&extremal(3, 4).unwrap().graph, 3).unwrap();
        let classes = classify_components(&ctx).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].component, ctx.r);
        assert_eq!(classes[0].circumference, Some(4));
        assert_eq!(classes[0].class, JClass::J2);

        let host = Graph::empty(1)
            .unwrap()
            .join(&s_plus(9, 2).unwrap().graph)
            .unwrap();
        let ctx = decompose(&host, 3).unwrap();
        assert_eq!(ctx.u_star, 0);
        let classes = classify_components(&ctx).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].class, JClass::J1);

        // K_1 ∨ K_6 with k = 3: R induces K_6, circumference 6 = 2k, η = 3 > 0
        let ctx = decompose(&complete(7).unwrap(), 3).unwrap();
        let classes = classify_components(&ctx).unwrap();
        assert_eq!(classes[0].class, JClass::J5);
        assert_eq!(classes[0].t_j, Some(0));
        assert!((classes[0].eta - 3.0).abs() < 1e-9);

        // K_1 ∨ K_5 with k = 3: circumference 5 = 2k − 1
        let ctx = decompose(&complete(6).unwrap(), 3).unwrap();
        assert_eq!(classify_components(&ctx).unwrap()[0].class, JClass::J3);
    }

    #[test]
    fn core_inequality_examples() {
        let g = Graph::empty(1)
            .unwrap()
            .join(
                &complete(4)
                    .unwrap()
                    .disjoint_union(&Graph::empty(1).unwrap())
                    .unwrap(),
            )
            .unwrap();
        let ctx = decompose(&g, 3).unwrap();
        let core = VertexSet::from_iter([1, 2, 3, 4]);
        let cmp = eta_core_inequality(&ctx, core).unwrap();
        assert!(cmp.equal && cmp.holds && cmp.equality_consistent);
        let cmp = eta_core_inequality(&ctx, core.with(5)).unwrap();
        assert!(cmp.holds && !cmp.equal && cmp.equality_consistent);
        assert!(eta_core_inequality(&ctx, VertexSet::singleton(0)).is_err());
    }

    #[test]
    fn slack_examples() {
        let ctx = decompose(&extremal(3, 4).unwrap().graph, 3).unwrap();
        let rep = slack_report(&ctx).unwrap();
        assert!(rep.identity_residual <= 1e-6);
        assert!(rep.excess.abs() <= 1e-8);
        let rep = slack_report(&decompose(&cycle(5).unwrap(), 2).unwrap()).unwrap();
        assert!(rep.identity_residual <= 1e-6);
        let star = complete_bipartite(1, 4).unwrap();
        let ctx = decompose(&star, 1).unwrap();
        assert!((ctx.lambda - 2.0).abs() < 1e-10);
        let rep = slack_report(&ctx).unwrap();
        assert!(rep.identity_residual <= 1e-6);
        assert!(rep.eta_slack >= -1e-9);
    }

    #[test]
    fn path_lemma_small() {
        let r = verify_path_lemma(2).unwrap();
        assert!(r.holds);
        assert_eq!(r.cases, 3);
        let r = verify_path_lemma(3).unwrap();
        assert!(r.holds);
        assert_eq!(r.cases, 120);
        assert!(verify_path_lemma(1).is_err());
    }
}
