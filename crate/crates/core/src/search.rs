//! Small Ramsey numbers, size-Ramsey upper bounds from explicit hosts, and
//! exact size-Ramsey numbers for tiny patterns.

use std::collections::HashMap;

use itertools::Itertools;
use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::arrow::{arrows, ArrowOptions, ArrowResult};
use crate::constructions::{binomial, blowup_path_host, clique, ell_path, greedy_partial_steiner, rng_from_seed, verify_ell_tree, SteinerParams, DEFAULT_TREE_BUDGET};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::iso::are_isomorphic;

/// Least `N <= cap` with `K_N -> g`. `None` if there is none up to `cap`
/// or an arrow search ran out of budget.
pub fn ramsey_number_small(g: &Hypergraph, cap: usize, opts: ArrowOptions) -> Result<Option<usize>> {
    let start = g.n().max(g.k());
    for n in start..=cap {
        match arrows(&clique(g.k(), n)?, g, opts)?.result {
            ArrowResult::Arrows => return Ok(Some(n)),
            ArrowResult::NotArrows => {}
            ArrowResult::Unknown => return Ok(None),
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    CliqueHost,
    SteinerHost,
    BlowupHost,
    RandomHost,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::CliqueHost, Strategy::SteinerHost, Strategy::BlowupHost, Strategy::RandomHost];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    /// `|E(G)|`, or `2|E(G)|-1`: with fewer edges, split them into two
    /// color classes each too small to hold a copy.
    Pigeonhole,
    CliqueHost,
    SteinerHost,
    BlowupHost,
    RandomHost,
    /// Every host up to the caps was checked.
    Exhaustive,
}

impl From<Strategy> for BoundMethod {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::CliqueHost => BoundMethod::CliqueHost,
            Strategy::SteinerHost => BoundMethod::SteinerHost,
            Strategy::BlowupHost => BoundMethod::BlowupHost,
            Strategy::RandomHost => BoundMethod::RandomHost,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCaps {
    pub vcap: usize,
    pub ecap: usize,
}

/// What one strategy produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyAttempt {
    pub strategy: Strategy,
    /// Edge count of the verified host, if any.
    pub host_edges: Option<usize>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRamseyBound {
    pub pattern: Hypergraph,
    pub lower: usize,
    pub lower_method: BoundMethod,
    pub upper: usize,
    pub upper_method: BoundMethod,
    pub witness_host: Hypergraph,
    /// Present for exact results: exactness holds only within these caps.
    pub caps: Option<SearchCaps>,
    pub attempts: Vec<StrategyAttempt>,
}

impl SizeRamseyBound {
    /// Re-checks the bound ordering and that the witness arrows the pattern.
    pub fn verify(&self, opts: ArrowOptions) -> Result<bool> {
        Ok(self.lower <= self.upper
            && self.lower >= self.pattern.edge_count()
            && self.witness_host.edge_count() == self.upper
            && arrows(&self.witness_host, &self.pattern, opts)?.result == ArrowResult::Arrows)
    }
}

/// `2|E(G)| - 1` for nonempty patterns.
pub fn pigeonhole_lower(g: &Hypergraph) -> usize {
    (2 * g.edge_count()).saturating_sub(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperConfig {
    pub arrow: ArrowOptions,
    pub seed: u64,
    /// Largest clique order tried when computing `R(G)`.
    pub ramsey_cap: usize,
    /// Hosts with more edges are not tested by the Steiner and random
    /// strategies.
    pub max_host_edges: usize,
    /// Random hosts sampled per (vertex count, edge count) pair.
    pub random_tries: usize,
}

impl Default for UpperConfig {
    fn default() -> Self {
        UpperConfig {
            arrow: ArrowOptions::default(),
            seed: 0,
            ramsey_cap: 8,
            max_host_edges: 20,
            random_tries: 20,
        }
    }
}

/// Runs the chosen strategies and keeps the verified host with the fewest
/// edges (earlier strategy wins ties).
pub fn size_ramsey_upper(g: &Hypergraph, strategies: &[Strategy], cfg: &UpperConfig) -> Result<SizeRamseyBound> {
    let lower = pigeonhole_lower(g);
    let mut attempts = Vec::new();
    let mut best: Option<(Hypergraph, Strategy)> = None;
    for &s in strategies {
        let limit = best.as_ref().map_or(usize::MAX, |(h, _)| h.edge_count());
        let (host, note) = match s {
            Strategy::CliqueHost => clique_strategy(g, cfg)?,
            Strategy::SteinerHost => steiner_strategy(g, cfg, limit)?,
            Strategy::BlowupHost => blowup_strategy(g, cfg)?,
            Strategy::RandomHost => random_strategy(g, cfg, lower, limit)?,
        };
        attempts.push(StrategyAttempt {
            strategy: s,
            host_edges: host.as_ref().map(Hypergraph::edge_count),
            note,
        });
        if let Some(h) = host {
            if h.edge_count() < limit {
                best = Some((h, s));
            }
        }
    }
    let Some((witness_host, s)) = best else {
        return Err(Error::NoStrategySucceeded { lower });
    };
    Ok(SizeRamseyBound {
        pattern: g.clone(),
        lower,
        lower_method: BoundMethod::Pigeonhole,
        upper: witness_host.edge_count(),
        upper_method: s.into(),
        witness_host,
        caps: None,
        attempts,
    })
}

fn verified(host: &Hypergraph, g: &Hypergraph, opts: ArrowOptions) -> Result<bool> {
    Ok(arrows(host, g, opts)?.result == ArrowResult::Arrows)
}

fn clique_strategy(g: &Hypergraph, cfg: &UpperConfig) -> Result<(Option<Hypergraph>, String)> {
    Ok(match ramsey_number_small(g, cfg.ramsey_cap, cfg.arrow)? {
        Some(r) => (Some(clique(g.k(), r)?), format!("R(G) = {r}")),
        None => (None, format!("R(G) not found up to {}", cfg.ramsey_cap)),
    })
}

/// Least `ell` for which `g` is an ℓ-tree.
fn tree_ell(g: &Hypergraph) -> Result<Option<usize>> {
    for ell in 1..g.k() {
        match verify_ell_tree(g, ell, DEFAULT_TREE_BUDGET) {
            Ok(Some(_)) => return Ok(Some(ell)),
            Ok(None) => {}
            Err(e) if e.is_budget() => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Linear hosts `S(ell+1, k, N)` for growing `N`, as in the tree embedding
/// argument, tested directly.
fn steiner_strategy(g: &Hypergraph, cfg: &UpperConfig, limit: usize) -> Result<(Option<Hypergraph>, String)> {
    let Some(ell) = tree_ell(g)? else {
        return Ok((None, "pattern is not an ℓ-tree".into()));
    };
    let t = ell + 1;
    let cap = cfg.max_host_edges.min(limit.saturating_sub(1));
    for n in g.n().max(g.k())..=g.n() * 4 {
        let packing = greedy_partial_steiner(&SteinerParams { t, k: g.k(), n, seed: cfg.seed })?;
        if packing.graph.edge_count() > cap {
            break;
        }
        if verified(&packing.graph, g, cfg.arrow)? {
            return Ok((Some(packing.graph), format!("S({t},{},{n})", g.k())));
        }
    }
    Ok((None, format!("no S({t},{},N) with at most {cap} edges arrows", g.k())))
}

/// For an ℓ-path with `ell <= k/2`: blow up a graph host of the graph
/// path with the same number of edges.
fn blowup_strategy(g: &Hypergraph, cfg: &UpperConfig) -> Result<(Option<Hypergraph>, String)> {
    let k = g.k();
    if k == 2 || g.is_empty() {
        return Ok((None, "needs a nontrivial path with k >= 3".into()));
    }
    let Some(ell) = (1..=k / 2).find(|&ell| {
        g.n() >= k
            && (g.n() - ell).is_multiple_of(k - ell)
            && ell_path(k, ell, g.n())
                .ok()
                .and_then(|p| are_isomorphic(g, &p, cfg.arrow.copy_budget).ok().flatten())
                .is_some()
    }) else {
        return Ok((None, "pattern is not an ℓ-path with ℓ <= k/2".into()));
    };
    let graph_path = ell_path(2, 1, g.edge_count() + 1)?;
    let inner = match size_ramsey_upper(&graph_path, &[Strategy::CliqueHost, Strategy::RandomHost], cfg) {
        Ok(b) => b,
        Err(Error::NoStrategySucceeded { .. }) => return Ok((None, "no graph host for the graph path".into())),
        Err(e) => return Err(e),
    };
    let host = blowup_path_host(&inner.witness_host, k, ell)?;
    if verified(&host, g, cfg.arrow)? {
        Ok((Some(host), format!("blow-up of a {}-edge graph host", inner.upper)))
    } else {
        Ok((None, "blow-up did not verify".into()))
    }
}

/// Seeded random hosts by increasing edge count.
fn random_strategy(g: &Hypergraph, cfg: &UpperConfig, lower: usize, limit: usize) -> Result<(Option<Hypergraph>, String)> {
    let mut rng = rng_from_seed(cfg.seed);
    let k = g.k();
    let top = cfg.max_host_edges.min(limit.saturating_sub(1));
    for e in lower.max(1)..=top {
        for extra in 0..=4 {
            let n = g.n().max(k) + extra;
            let total = binomial(n, k);
            if total < e as u128 || total > 1 << 20 {
                continue;
            }
            let all: Vec<Vec<Vertex>> = (0..n).combinations(k).collect();
            for _ in 0..cfg.random_tries {
                let picked = sample(&mut rng, all.len(), e);
                let host = Hypergraph::new(k, n, picked.iter().map(|i| all[i].clone()))?;
                if verified(&host, g, cfg.arrow)? {
                    return Ok((Some(host), format!("random host on {n} vertices")));
                }
            }
        }
    }
    Ok((None, format!("no random host with at most {top} edges arrows")))
}

/// Number of distinct isomorphism classes generated per edge count, for
/// reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactSearchStats {
    pub classes_per_level: Vec<usize>,
}

/// The least `e` such that some host with `e <= ecap` edges on `vcap`
/// vertices arrows `g`. Hosts with fewer vertices are covered by padding
/// with isolated vertices, which never affects arrowing.
pub fn size_ramsey_exact_tiny(g: &Hypergraph, vcap: usize, ecap: usize, opts: ArrowOptions) -> Result<SizeRamseyBound> {
    size_ramsey_exact_tiny_with_stats(g, vcap, ecap, opts).map(|(b, _)| b)
}

pub fn size_ramsey_exact_tiny_with_stats(
    g: &Hypergraph,
    vcap: usize,
    ecap: usize,
    opts: ArrowOptions,
) -> Result<(SizeRamseyBound, ExactSearchStats)> {
    let k = g.k();
    let caps = SearchCaps { vcap, ecap };
    if vcap < g.n() || vcap < k {
        return Err(Error::CapsTooSmall { vcap, ecap });
    }
    let lower = pigeonhole_lower(g);
    let all: Vec<Vec<Vertex>> = (0..vcap).combinations(k).collect();
    let mut level = vec![Hypergraph::empty(k, vcap)?];
    let mut stats = ExactSearchStats {
        classes_per_level: vec![1],
    };
    let mut generated = 0u64;
    for e in 0..=ecap.min(all.len()) {
        if e >= lower {
            for host in &level {
                match arrows(host, g, opts)?.result {
                    ArrowResult::Arrows => {
                        let bound = SizeRamseyBound {
                            pattern: g.clone(),
                            lower: e,
                            lower_method: BoundMethod::Exhaustive,
                            upper: e,
                            upper_method: BoundMethod::Exhaustive,
                            witness_host: host.clone(),
                            caps: Some(caps),
                            attempts: Vec::new(),
                        };
                        return Ok((bound, stats));
                    }
                    ArrowResult::NotArrows => {}
                    ArrowResult::Unknown => {
                        return Err(Error::BudgetExceeded {
                            what: "arrow search",
                            limit: opts.node_budget,
                        })
                    }
                }
            }
        }
        if e == ecap {
            break;
        }
        level = next_level(&level, &all, &mut generated, opts)?;
        stats.classes_per_level.push(level.len());
    }
    Err(Error::CapsTooSmall { vcap, ecap })
}

type Invariant = (Vec<usize>, Vec<Vec<usize>>);

fn invariant(h: &Hypergraph) -> Invariant {
    let deg = h.degrees();
    let mut edge_profiles: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|&v| deg[v]).sorted_unstable().collect())
        .collect();
    edge_profiles.sort_unstable();
    (deg.into_iter().sorted_unstable().collect(), edge_profiles)
}

/// All one-edge extensions of `level`, one per isomorphism class.
fn next_level(level: &[Hypergraph], all: &[Vec<Vertex>], generated: &mut u64, opts: ArrowOptions) -> Result<Vec<Hypergraph>> {
    let mut buckets: HashMap<Invariant, Vec<usize>> = HashMap::new();
    let mut out: Vec<Hypergraph> = Vec::new();
    for h in level {
        for f in all {
            if h.contains_edge(f) {
                continue;
            }
            *generated += 1;
            if *generated > opts.node_budget {
                return Err(Error::BudgetExceeded {
                    what: "host enumeration",
                    limit: opts.node_budget,
                });
            }
            let cand = Hypergraph::new(h.k(), h.n(), h.edges().iter().cloned().chain([f.clone()]))?;
            let bucket = buckets.entry(invariant(&cand)).or_default();
            let mut fresh = true;
            for &i in bucket.iter() {
                if are_isomorphic(&out[i], &cand, opts.copy_budget)?.is_some() {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                bucket.push(out.len());
                out.push(cand);
            }
        }
    }
    Ok(out)
}
