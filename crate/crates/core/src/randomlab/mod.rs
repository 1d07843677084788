//! Random clique hypergraphs and the tight-path accounting on them.
//!
//! The asymptotic constants are carried as configuration. Every report
//! records the value the formulas give next to the value actually used.

mod pipeline;
mod procedure;

pub use pipeline::{pipeline, ColoringScheme, ColorRun, PipelineConfig, PipelineReport};
pub use procedure::{grow_monochromatic_tight_path, iterated_procedure, AccountingReport, ProcedureState, ProcedureStatus, RoundReport, StepCounters, TrashEvent};

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{binomial, k_cliques, rng_from_seed};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    pub n: usize,
    /// Clique size of the hypergraph built on top of the graph.
    pub k: usize,
    /// Edge probability; `None` means the formula `d (log2 n / n)^beta`.
    pub p: Option<f64>,
    pub seed: u64,
    pub d: f64,
    pub c: Option<f64>,
    pub beta: Option<f64>,
    pub alpha: Option<f64>,
}

impl GnpParams {
    pub fn new(n: usize, k: usize, seed: u64) -> Self {
        GnpParams {
            n,
            k,
            p: None,
            seed,
            d: 0.6,
            c: None,
            beta: None,
            alpha: None,
        }
    }

    pub fn with_p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    /// `1 / (C(k-1,2) + 1)` unless overridden.
    pub fn beta(&self) -> f64 {
        self.beta
            .unwrap_or_else(|| 1.0 / (binomial(self.k.saturating_sub(1), 2) as f64 + 1.0))
    }

    /// `(k-2) beta` unless overridden.
    pub fn alpha(&self) -> f64 {
        self.alpha.unwrap_or_else(|| self.k.saturating_sub(2) as f64 * self.beta())
    }

    /// `3^(-3k)` unless overridden.
    pub fn c(&self) -> f64 {
        self.c.unwrap_or_else(|| 3f64.powi(-3 * self.k as i32))
    }

    pub fn formula_p(&self) -> f64 {
        let n = self.n as f64;
        self.d * (n.log2() / n).powf(self.beta())
    }

    pub fn effective_p(&self) -> f64 {
        self.p.unwrap_or_else(|| self.formula_p())
    }

    /// `(3/2)^k d^C(k,2) / ((k-1)(k-2))`.
    pub fn nu(&self) -> f64 {
        let k = self.k as f64;
        1.5f64.powf(k) * self.d.powf(binomial(self.k, 2) as f64) / ((k - 1.0) * (k - 2.0))
    }

    /// `(1/2)^(k-1) d^C(k,2) / ((k-1)(k-2))`.
    pub fn lambda(&self) -> f64 {
        let k = self.k as f64;
        0.5f64.powf(k - 1.0) * self.d.powf(binomial(self.k, 2) as f64) / ((k - 1.0) * (k - 2.0))
    }

    /// `nu n^(k-1-alpha) (log2 n)^(1+alpha)`.
    pub fn clique_count_bound(&self) -> f64 {
        let n = self.n as f64;
        self.nu() * n.powf(self.k as f64 - 1.0 - self.alpha()) * n.log2().powf(1.0 + self.alpha())
    }
}

/// Seeded `G(n,p)`; pairs are visited in lexicographic order.
pub fn gnp(params: &GnpParams) -> Result<Hypergraph> {
    let p = params.effective_p();
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::ProbabilityOutOfRange(p));
    }
    let mut rng = rng_from_seed(params.seed);
    let n = params.n;
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen::<f64>() < p {
                edges.push(vec![a, b]);
            }
        }
    }
    Hypergraph::new(2, n, edges)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueStatsReport {
    pub k: usize,
    /// `t_ell[l]` is the number of `l`-cliques, for `l` in `0..=k`.
    pub t_ell: Vec<usize>,
    /// Number of k-cliques through each vertex.
    pub deg_k: Vec<usize>,
    pub t_k: usize,
    pub x_ab: usize,
    pub y_ab: usize,
    pub z_c: usize,
}

fn adjacency(g: &Hypergraph) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; g.n()]; g.n()];
    for e in g.edges() {
        adj[e[0]][e[1]] = true;
        adj[e[1]][e[0]] = true;
    }
    adj
}

fn check_family(g: &Hypergraph, k: usize, a: &[Vertex], b: &[Vec<Vertex>]) -> Result<()> {
    let adj = adjacency(g);
    let mut seen = BTreeSet::new();
    for member in b {
        if member.len() + 1 != k || member.iter().any(|&v| v >= g.n()) {
            return Err(Error::InvalidSubset {
                subset: member.clone(),
                reason: format!("trash members must be {}-sets of vertices", k - 1),
            });
        }
        for (i, &x) in member.iter().enumerate() {
            if member[i + 1..].iter().any(|&y| x == y || !adj[x][y]) {
                return Err(Error::NonCliqueMember(member.clone()));
            }
            if !seen.insert(x) {
                return Err(Error::Overlap(format!("vertex {x} lies in two trash members")));
            }
        }
    }
    if let Some(v) = a.iter().find(|v| seen.contains(v)) {
        return Err(Error::Overlap(format!("vertex {v} lies in A and in a trash member")));
    }
    Ok(())
}

/// x/y/z statistics of the k-cliques of a graph.
pub fn clique_stats(g: &Hypergraph, k: usize, a: &[Vertex], b: &[Vec<Vertex>], c: &[Vertex]) -> Result<CliqueStatsReport> {
    if g.k() != 2 {
        return Err(Error::UniformityMismatch(2, g.k()));
    }
    if k < 2 {
        return Err(Error::InvalidParameters("clique size must be at least 2".into()));
    }
    check_family(g, k, a, b)?;
    let mut t_ell = vec![1, g.n(), g.edge_count()];
    for l in 3..=k {
        t_ell.push(k_cliques(g, l).len());
    }
    t_ell.truncate(k + 1);
    let cliques = k_cliques(g, k);
    let mut deg_k = vec![0; g.n()];
    for q in &cliques {
        for &v in q {
            deg_k[v] += 1;
        }
    }
    let (x_ab, y_ab) = count_xy(&cliques, g.n(), a, b);
    let in_c = membership(g.n(), c);
    let z_c = cliques.iter().filter(|q| q.iter().any(|&v| in_c[v])).count();
    Ok(CliqueStatsReport {
        k,
        t_k: cliques.len(),
        t_ell,
        deg_k,
        x_ab,
        y_ab,
        z_c,
    })
}

pub(crate) fn membership(n: usize, s: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in s {
        m[v] = true;
    }
    m
}

/// Among `edges` (sorted k-sets), those containing a member of `b`, split
/// by whether the remaining vertex lies outside `A + V(B)` (x) or inside
/// (y). Returns the indices of each kind.
pub(crate) fn split_xy<'a>(
    edges: impl Iterator<Item = (usize, &'a [Vertex])>,
    n: usize,
    a: &[Vertex],
    b: &[Vec<Vertex>],
) -> (Vec<usize>, Vec<usize>) {
    let members: BTreeSet<&[Vertex]> = b.iter().map(Vec::as_slice).collect();
    let mut used = membership(n, a);
    for m in b {
        for &v in m {
            used[v] = true;
        }
    }
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut sub: Vec<Vertex> = Vec::new();
    for (i, e) in edges {
        let mut outside = false;
        let mut hit = false;
        for skip in 0..e.len() {
            sub.clear();
            sub.extend(e.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
            if members.contains(sub.as_slice()) {
                hit = true;
                outside |= !used[e[skip]];
            }
        }
        if hit {
            if outside {
                xs.push(i);
            } else {
                ys.push(i);
            }
        }
    }
    (xs, ys)
}

fn count_xy(cliques: &[Vec<Vertex>], n: usize, a: &[Vertex], b: &[Vec<Vertex>]) -> (usize, usize) {
    let mut sorted_b: Vec<Vec<Vertex>> = b.to_vec();
    for m in &mut sorted_b {
        m.sort_unstable();
    }
    let (xs, ys) = split_xy(cliques.iter().map(Vec::as_slice).enumerate(), n, a, &sorted_b);
    (xs.len(), ys.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    Random,
    Adversarial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertySample {
    pub kind: SampleKind,
    pub a_size: usize,
    pub b_size: usize,
    pub c_size: usize,
    pub x_ab: usize,
    pub y_ab: usize,
    pub z_c: usize,
    /// `(k+1) y <= x`.
    pub first_holds: bool,
    /// `4k z_C <= t_k`.
    pub second_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub c: f64,
    pub t_k: usize,
    pub samples: Vec<PropertySample>,
    pub first_pass_fraction: f64,
    pub second_pass_fraction: f64,
    pub clique_count_bound: f64,
    /// `t_k` against `nu n^(k-1-alpha) (log2 n)^(1+alpha)`.
    pub third_holds: bool,
}

/// Samples the three clique-count properties. `adversarial` supplies
/// `(A, B)` pairs, typically path and trash sets of procedure runs; their
/// `C` is the union of the trash members. Random samples draw `|A| = cn`,
/// up to `cn` disjoint (k-1)-cliques, and the `(k-1)cn` vertices of largest
/// k-clique degree as `C`.
pub fn property_check(
    g: &Hypergraph,
    params: &GnpParams,
    trials: usize,
    seed: u64,
    adversarial: &[(Vec<Vertex>, Vec<Vec<Vertex>>)],
) -> Result<PropertyReport> {
    let k = params.k;
    let n = g.n();
    let c = params.c();
    let a_size = (c * n as f64).floor() as usize;
    let c_size = ((k - 1) as f64 * c * n as f64).floor() as usize;
    let base = clique_stats(g, k, &[], &[], &[])?;
    let t_k = base.t_k;
    let mut by_degree: Vec<Vertex> = (0..n).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(base.deg_k[v]), v));
    let greedy_c: Vec<Vertex> = by_degree[..c_size.min(n)].to_vec();
    let small_cliques = if k >= 2 { k_cliques(g, k - 1) } else { Vec::new() };

    let mut rng = rng_from_seed(seed);
    let mut samples = Vec::new();
    for _ in 0..trials {
        let mut order: Vec<Vertex> = (0..n).collect();
        order.shuffle(&mut rng);
        let a: Vec<Vertex> = order[..a_size.min(n)].to_vec();
        let in_a = membership(n, &a);
        let mut taken = in_a.clone();
        let mut pool = small_cliques.clone();
        pool.shuffle(&mut rng);
        let mut b = Vec::new();
        for q in pool {
            if b.len() == a_size {
                break;
            }
            if q.iter().all(|&v| !taken[v]) {
                for &v in &q {
                    taken[v] = true;
                }
                b.push(q);
            }
        }
        samples.push(sample(g, k, t_k, SampleKind::Random, &a, &b, &greedy_c)?);
    }
    for (a, b) in adversarial {
        let cset: Vec<Vertex> = b.iter().flatten().copied().collect();
        samples.push(sample(g, k, t_k, SampleKind::Adversarial, a, b, &cset)?);
    }
    let frac = |f: fn(&PropertySample) -> bool| {
        if samples.is_empty() {
            1.0
        } else {
            samples.iter().filter(|s| f(s)).count() as f64 / samples.len() as f64
        }
    };
    let bound = params.clique_count_bound();
    Ok(PropertyReport {
        c,
        t_k,
        first_pass_fraction: frac(|s| s.first_holds),
        second_pass_fraction: frac(|s| s.second_holds),
        samples,
        clique_count_bound: bound,
        third_holds: (t_k as f64) <= bound,
    })
}

fn sample(
    g: &Hypergraph,
    k: usize,
    t_k: usize,
    kind: SampleKind,
    a: &[Vertex],
    b: &[Vec<Vertex>],
    c: &[Vertex],
) -> Result<PropertySample> {
    let s = clique_stats(g, k, a, b, c)?;
    Ok(PropertySample {
        kind,
        a_size: a.len(),
        b_size: b.len(),
        c_size: c.len(),
        x_ab: s.x_ab,
        y_ab: s.y_ab,
        z_c: s.z_c,
        first_holds: (k + 1) * s.y_ab <= s.x_ab,
        second_holds: 4 * k * s.z_c <= t_k,
    })
}
