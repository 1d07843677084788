//! Generators for the pattern and host hypergraphs.

mod gadget;

pub use gadget::{binary_three_tree, gadget, gadget_family, leaves, Gadget, GadgetFamily, GadgetSpec, DEFAULT_FAMILY_TRIES};

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The ℓ-path on `n` vertices: edge `i` (0-based) is the interval
/// `i(k-ℓ) .. i(k-ℓ)+k-1`, giving `(n-ℓ)/(k-ℓ)` edges.
pub fn ell_path(k: usize, ell: usize, n: usize) -> Result<Hypergraph> {
    if ell == 0 || ell >= k {
        return Err(Error::InvalidParameters(format!("ell={ell} must lie in [1, {}]", k - 1)));
    }
    if n < k || !(n - ell).is_multiple_of(k - ell) {
        return Err(Error::InvalidParameters(format!(
            "n={n} must satisfy n >= k and n ≡ ell (mod k-ell) for k={k}, ell={ell}"
        )));
    }
    let m = (n - ell) / (k - ell);
    let edges = (0..m).map(|i| (i * (k - ell)..i * (k - ell) + k).collect::<Vec<_>>());
    Hypergraph::new(k, n, edges)
}

/// The complete k-graph on `n` vertices.
pub fn clique(k: usize, n: usize) -> Result<Hypergraph> {
    if n < k {
        return Err(Error::InvalidParameters(format!("clique needs n >= k, got n={n}, k={k}")));
    }
    Hypergraph::new(k, n, (0..n).combinations(k))
}

/// An ℓ-tree together with an edge order witnessing the definition: every
/// edge after the first meets the union of its predecessors in at most ℓ
/// vertices, all inside one earlier edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllTree {
    pub graph: Hypergraph,
    /// Indices into `graph.edges()`.
    pub order: Vec<usize>,
    pub ell: usize,
}

impl EllTree {
    /// Wraps `graph`, deriving an order with [`verify_ell_tree`].
    pub fn from_ordered(graph: Hypergraph, ell: usize) -> Result<Self> {
        match verify_ell_tree(&graph, ell, DEFAULT_TREE_BUDGET)? {
            Some(order) => Ok(EllTree { graph, order, ell }),
            None => Err(Error::InvalidParameters(format!("not a {ell}-tree"))),
        }
    }

    /// Checks the stored order against the definition.
    pub fn order_is_valid(&self) -> bool {
        order_is_valid(&self.graph, self.ell, &self.order)
    }
}

pub const DEFAULT_TREE_BUDGET: u64 = 1_000_000;

fn reachable(k: usize, ell: usize, r: usize) -> bool {
    // r = sum of m' steps, each adding between k-ell and k fresh vertices
    r == 0 || (1..=r / (k - ell)).any(|m| m * (k - ell) <= r && r <= m * k)
}

/// Random ℓ-tree of order exactly `n`. Each new edge picks a uniformly
/// random earlier edge, an overlap size drawn uniformly from `[0, ℓ]` (moved
/// to the nearest size that keeps order `n` reachable), a random subset of
/// that size, and fresh vertices for the rest.
pub fn random_ell_tree(k: usize, ell: usize, n: usize, seed: u64) -> Result<EllTree> {
    if ell == 0 || ell >= k {
        return Err(Error::InvalidParameters(format!("ell={ell} must lie in [1, {}]", k - 1)));
    }
    if n < k || !reachable(k, ell, n - k) {
        return Err(Error::UnreachableOrder { k, ell, n });
    }
    let mut rng = rng_from_seed(seed);
    let mut edges: Vec<Vec<Vertex>> = vec![(0..k).collect()];
    let mut next = k;
    while next < n {
        let remaining = n - next;
        let drawn = rng.gen_range(0..=ell);
        let s = (0..=ell)
            .filter(|&s| k - s <= remaining && reachable(k, ell, remaining - (k - s)))
            .min_by_key(|&s| (s.abs_diff(drawn), s))
            .ok_or(Error::UnreachableOrder { k, ell, n })?;
        let base = &edges[rng.gen_range(0..edges.len())];
        let mut e: Vec<Vertex> = base.choose_multiple(&mut rng, s).copied().collect();
        e.extend(next..next + (k - s));
        next += k - s;
        edges.push(e);
    }
    let graph = Hypergraph::new(k, n, edges.iter().cloned())?;
    let order = edges
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.sort_unstable();
            graph.edge_index(&e).expect("edge present")
        })
        .collect();
    Ok(EllTree { graph, order, ell })
}

fn order_is_valid(h: &Hypergraph, ell: usize, order: &[usize]) -> bool {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..h.edge_count()).collect::<Vec<_>>() {
        return false;
    }
    let mut covered = vec![false; h.n()];
    for (j, &ei) in order.iter().enumerate() {
        if j > 0 && !can_follow(h, ell, &covered, &order[..j], ei) {
            return false;
        }
        for &v in h.edge(ei) {
            covered[v] = true;
        }
    }
    true
}

fn can_follow(h: &Hypergraph, ell: usize, covered: &[bool], placed: &[usize], ei: usize) -> bool {
    let meet: Vec<Vertex> = h.edge(ei).iter().copied().filter(|&v| covered[v]).collect();
    meet.len() <= ell
        && (meet.is_empty()
            || placed
                .iter()
                .any(|&p| crate::hypergraph::is_subset(&meet, h.edge(p))))
}

/// Searches for an edge order satisfying the ℓ-tree conditions. Edges with
/// the largest attachment are tried first; failed partial orders are
/// memoized by their edge set, so the search is exhaustive within budget.
pub fn verify_ell_tree(h: &Hypergraph, ell: usize, budget: u64) -> Result<Option<Vec<usize>>> {
    let m = h.edge_count();
    if m == 0 {
        return Ok(Some(Vec::new()));
    }
    struct Dfs<'a> {
        h: &'a Hypergraph,
        ell: usize,
        order: Vec<usize>,
        placed: Vec<bool>,
        cover: Vec<usize>,
        dead: HashSet<Vec<bool>>,
        nodes: u64,
        budget: u64,
    }
    impl Dfs<'_> {
        fn go(&mut self) -> Result<bool> {
            let m = self.h.edge_count();
            if self.order.len() == m {
                return Ok(true);
            }
            if self.dead.contains(&self.placed) {
                return Ok(false);
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    what: "ell-tree order search",
                    limit: self.budget,
                });
            }
            let covered: Vec<bool> = self.cover.iter().map(|&c| c > 0).collect();
            let mut cands: Vec<(usize, usize)> = (0..m)
                .filter(|&e| !self.placed[e])
                .filter(|&e| self.order.is_empty() || can_follow(self.h, self.ell, &covered, &self.order, e))
                .map(|e| (self.h.edge(e).iter().filter(|&&v| covered[v]).count(), e))
                .collect();
            cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            for (_, e) in cands {
                self.placed[e] = true;
                self.order.push(e);
                for &v in self.h.edge(e) {
                    self.cover[v] += 1;
                }
                if self.go()? {
                    return Ok(true);
                }
                for &v in self.h.edge(e) {
                    self.cover[v] -= 1;
                }
                self.order.pop();
                self.placed[e] = false;
            }
            self.dead.insert(self.placed.clone());
            Ok(false)
        }
    }
    let mut dfs = Dfs {
        h,
        ell,
        order: Vec::new(),
        placed: vec![false; m],
        cover: vec![0; h.n()],
        dead: HashSet::new(),
        nodes: 0,
        budget,
    };
    Ok(if dfs.go()? { Some(dfs.order) } else { None })
}

/// Star-like tree: a center `0` with `(n-1)/(2k-2)` two-edge arms
/// `{0, w1..w_{k-1}}`, `{w_{k-1}, w_k..w_{2k-2}}` on fresh vertices.
pub fn star_tree(k: usize, n: usize) -> Result<Hypergraph> {
    let arm = 2 * k - 2;
    if n < 1 || !(n - 1).is_multiple_of(arm) {
        return Err(Error::InvalidParameters(format!("2k-2={arm} must divide n-1={}", n.saturating_sub(1))));
    }
    let mut edges = Vec::new();
    for i in 0..(n - 1) / arm {
        let w: Vec<Vertex> = (1 + i * arm..1 + (i + 1) * arm).collect();
        let mut first = vec![0];
        first.extend_from_slice(&w[..k - 1]);
        edges.push(first);
        edges.push(w[k - 2..].to_vec());
    }
    Hypergraph::new(k, n, edges)
}

/// Blow-up of a graph: each vertex becomes an ℓ-tuple and each edge
/// `{v, w}` the k-set of both tuples plus `k-2ℓ` private vertices.
/// Tuple vertices come first (`v*ℓ ..`), then private vertices per edge.
pub fn blowup_path_host(g: &Hypergraph, k: usize, ell: usize) -> Result<Hypergraph> {
    if g.k() != 2 {
        return Err(Error::UniformityMismatch(2, g.k()));
    }
    if ell == 0 || 2 * ell > k {
        return Err(Error::InvalidParameters(format!("ell={ell} must lie in [1, k/2] for k={k}")));
    }
    let private = k - 2 * ell;
    let base = ell * g.n();
    let edges = g.edges().iter().enumerate().map(|(j, e)| {
        let mut out: Vec<Vertex> = Vec::with_capacity(k);
        for &v in e {
            out.extend(v * ell..(v + 1) * ell);
        }
        out.extend(base + j * private..base + (j + 1) * private);
        out
    });
    Hypergraph::new(k, base + private * g.edge_count(), edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerParams {
    pub t: usize,
    pub k: usize,
    pub n: usize,
    pub seed: u64,
}

/// A partial Steiner system with its measured density.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteinerPacking {
    pub graph: Hypergraph,
    /// `|E| / (C(N,t) / C(k,t))`, the fraction of the packing upper bound.
    pub density: f64,
}

/// Random greedy packing: all k-subsets in seeded random order, each kept
/// iff it shares no t-subset with an edge kept before it.
pub fn greedy_partial_steiner(p: &SteinerParams) -> Result<SteinerPacking> {
    let SteinerParams { t, k, n, seed } = *p;
    if !(2 <= t && t <= k && k <= n) {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= t <= k <= N, got t={t}, k={k}, N={n}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut all: Vec<Vec<Vertex>> = (0..n).combinations(k).collect();
    all.shuffle(&mut rng);
    let mut taken: HashSet<Vec<Vertex>> = HashSet::new();
    let mut edges = Vec::new();
    for e in all {
        let subs: Vec<Vec<Vertex>> = e.iter().copied().combinations(t).collect();
        if subs.iter().any(|s| taken.contains(s)) {
            continue;
        }
        taken.extend(subs);
        edges.push(e);
    }
    let graph = Hypergraph::new(k, n, edges)?;
    let ceiling = binomial(n, t) as f64 / binomial(k, t) as f64;
    Ok(SteinerPacking {
        density: graph.edge_count() as f64 / ceiling,
        graph,
    })
}

/// The k-graph whose edges are the k-cliques of the graph `g`.
pub fn clique_hypergraph(g: &Hypergraph, k: usize) -> Result<Hypergraph> {
    if g.k() != 2 {
        return Err(Error::UniformityMismatch(2, g.k()));
    }
    if k < 2 {
        return Err(Error::InvalidParameters("clique size must be at least 2".into()));
    }
    Hypergraph::new(k, g.n(), k_cliques(g, k))
}

/// All k-cliques of a graph, each listed ascending, by extending cliques
/// with common higher-indexed neighbours.
pub fn k_cliques(g: &Hypergraph, k: usize) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut higher: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for e in g.edges() {
        higher[e[0]].push(e[1]);
    }
    let mut adj = vec![vec![false; n]; n];
    for e in g.edges() {
        adj[e[0]][e[1]] = true;
        adj[e[1]][e[0]] = true;
    }
    fn extend(k: usize, adj: &[Vec<bool>], clique: &mut Vec<Vertex>, cands: &[Vertex], out: &mut Vec<Vec<Vertex>>) {
        if clique.len() == k {
            out.push(clique.clone());
            return;
        }
        for (i, &v) in cands.iter().enumerate() {
            if clique.len() + (cands.len() - i) < k {
                break;
            }
            let next: Vec<Vertex> = cands[i + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
            clique.push(v);
            extend(k, adj, clique, &next, out);
            clique.pop();
        }
    }
    let mut out = Vec::new();
    if k == 1 {
        return (0..n).map(|v| vec![v]).collect();
    }
    for (v, up) in higher.iter().enumerate() {
        let mut c = vec![v];
        extend(k, &adj, &mut c, up, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic;

    #[test]
    fn ell_path_examples() {
        let p = ell_path(3, 2, 6).unwrap();
        assert_eq!(p.edges(), &[vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]]);
        let loose = ell_path(3, 1, 5).unwrap();
        assert_eq!(loose.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
        assert_eq!(ell_path(4, 2, 4).unwrap().edges(), &[vec![0, 1, 2, 3]]);
        assert!(ell_path(3, 1, 6).is_err());
        assert!(ell_path(3, 3, 6).is_err());
    }

    #[test]
    fn clique_counts() {
        assert_eq!(clique(2, 3).unwrap().edge_count(), 3);
        assert_eq!(clique(3, 4).unwrap().edge_count(), 4);
        assert_eq!(clique(3, 6).unwrap().edge_count(), 20);
    }

    #[test]
    fn ell_tree_examples() {
        let single = random_ell_tree(3, 1, 3, 99).unwrap();
        assert_eq!(single.graph.edge_count(), 1);
        for seed in 0..20 {
            let t = random_ell_tree(3, 2, 6, seed).unwrap();
            assert_eq!(t.graph.n(), 6);
            assert!(t.order_is_valid());
            assert!(verify_ell_tree(&t.graph, 2, DEFAULT_TREE_BUDGET).unwrap().is_some());
        }
        assert!(matches!(random_ell_tree(4, 1, 5, 0), Err(Error::UnreachableOrder { .. })));
    }

    #[test]
    fn verify_rejects_clique() {
        let k4 = clique(3, 4).unwrap();
        assert_eq!(verify_ell_tree(&k4, 1, DEFAULT_TREE_BUDGET).unwrap(), None);
        // the last edge of any order lies inside the union of the others
        assert_eq!(verify_ell_tree(&k4, 2, DEFAULT_TREE_BUDGET).unwrap(), None);
        assert!(verify_ell_tree(&ell_path(3, 2, 7).unwrap(), 2, DEFAULT_TREE_BUDGET).unwrap().is_some());
        assert!(verify_ell_tree(&clique(3, 3).unwrap(), 1, DEFAULT_TREE_BUDGET).unwrap().is_some());
    }

    #[test]
    fn star_tree_examples() {
        let s = star_tree(3, 5).unwrap();
        assert_eq!((s.n(), s.edge_count()), (5, 2));
        let s9 = star_tree(3, 9).unwrap();
        assert_eq!(s9.edge_count(), 4);
        assert_eq!(s9.degree(0), 2);
        let g = star_tree(2, 5).unwrap();
        assert_eq!(g.edges(), &[vec![0, 1], vec![0, 3], vec![1, 2], vec![3, 4]]);
        assert!(star_tree(3, 6).is_err());
        assert!(verify_ell_tree(&s9, 1, DEFAULT_TREE_BUDGET).unwrap().is_some());
    }

    #[test]
    fn blowup_examples() {
        let edge = clique(2, 2).unwrap();
        let b = blowup_path_host(&edge, 3, 1).unwrap();
        assert_eq!((b.n(), b.edges()), (3, &[vec![0, 1, 2]][..]));
        let p3 = ell_path(2, 1, 3).unwrap();
        let b = blowup_path_host(&p3, 4, 2).unwrap();
        assert_eq!(b.n(), 6);
        assert_eq!(b.edges(), &[vec![0, 1, 2, 3], vec![2, 3, 4, 5]]);
        assert!(blowup_path_host(&p3, 3, 2).is_err());
        let g = clique(2, 4).unwrap();
        let b = blowup_path_host(&g, 5, 2).unwrap();
        assert_eq!(b.n(), 2 * 4 + 6);
        assert_eq!(b.edge_count(), g.edge_count());
    }

    #[test]
    fn blowup_of_graph_path_is_ell_path() {
        for (k, ell) in [(3, 1), (4, 1), (4, 2), (5, 2), (6, 3)] {
            for n in 2..6 {
                let g = ell_path(2, 1, n).unwrap();
                let b = blowup_path_host(&g, k, ell).unwrap();
                let target = ell_path(k, ell, ell + (n - 1) * (k - ell)).unwrap();
                assert!(are_isomorphic(&b, &target, u64::MAX).unwrap().is_some(), "k={k} ell={ell} n={n}");
            }
        }
    }

    #[test]
    fn steiner_examples() {
        let full = greedy_partial_steiner(&SteinerParams { t: 3, k: 3, n: 6, seed: 1 }).unwrap();
        assert_eq!(full.graph, clique(3, 6).unwrap());
        for seed in 0..10 {
            let s = greedy_partial_steiner(&SteinerParams { t: 2, k: 3, n: 7, seed }).unwrap();
            assert!(s.graph.edge_count() <= 7);
            for (_, d) in s.graph.ell_degrees(2).unwrap() {
                assert_eq!(d, 1);
            }
        }
    }

    #[test]
    fn steiner_s_tuple_bound() {
        for (t, k, n) in [(2, 3, 15), (3, 4, 12), (2, 4, 13)] {
            let s = greedy_partial_steiner(&SteinerParams { t, k, n, seed: 5 }).unwrap();
            for sz in 1..t {
                let cap = binomial(n - sz, t - sz) / binomial(k - sz, t - sz);
                for (_, d) in s.graph.ell_degrees(sz).unwrap() {
                    assert!(d as u128 <= cap);
                }
            }
        }
    }

    #[test]
    fn clique_hypergraph_examples() {
        let k4 = clique(2, 4).unwrap();
        assert_eq!(clique_hypergraph(&k4, 3).unwrap(), clique(3, 4).unwrap());
        let c5 = Hypergraph::new(2, 5, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]]).unwrap();
        assert!(clique_hypergraph(&c5, 3).unwrap().is_empty());
        let k4_minus = k4.filter_edges(|_, e| e != [0, 1]);
        assert_eq!(clique_hypergraph(&k4_minus, 3).unwrap().edge_count(), 2);
    }
}
