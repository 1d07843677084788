//! Copies of a pattern inside a host, ℓ-degree peeling and greedy ℓ-tree
//! embedding.
//!
//! [`CopyFinder`] is the backtracking engine shared by the arrow search,
//! isomorphism tests and the gadget coloring. It maps pattern vertices in a
//! connectivity-first order; a vertex with an already-mapped neighbour only
//! tries host vertices lying on an allowed host edge through the images of
//! that neighbour's edge, and every pattern edge is checked as soon as its
//! last vertex is mapped. Copies are not required to be induced.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::ops::ControlFlow;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::coloring::{Color, EdgeColoring};
use crate::constructions::EllTree;
use crate::error::{Error, Result};
use crate::hypergraph::{is_subset, Hypergraph, Vertex};

const UNMAPPED: usize = usize::MAX;

/// Injective vertex map witnessing a copy of a pattern inside a host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<Vertex>,
    pub color_filter: Option<Color>,
}

impl Embedding {
    /// Checks injectivity, that every pattern edge lands on a host edge and,
    /// with a color filter, that every image edge has that color.
    pub fn is_valid(&self, pattern: &Hypergraph, host: &Hypergraph, coloring: Option<&EdgeColoring>) -> bool {
        if self.map.len() != pattern.n() || self.map.iter().any(|&v| v >= host.n()) {
            return false;
        }
        if self.map.iter().collect::<HashSet<_>>().len() != self.map.len() {
            return false;
        }
        pattern.edges().iter().all(|e| {
            let mut img: Vec<Vertex> = e.iter().map(|&v| self.map[v]).collect();
            img.sort_unstable();
            match host.edge_index(&img) {
                None => false,
                Some(i) => match (self.color_filter, coloring) {
                    (Some(c), Some(col)) => col.get(i) == c,
                    (Some(_), None) => false,
                    _ => true,
                },
            }
        })
    }

    /// Host edge indices of the images of the pattern edges, ascending.
    pub fn image_edges(&self, pattern: &Hypergraph, host: &Hypergraph) -> Vec<usize> {
        let mut out: Vec<usize> = pattern
            .edges()
            .iter()
            .filter_map(|e| {
                let mut img: Vec<Vertex> = e.iter().map(|&v| self.map[v]).collect();
                img.sort_unstable();
                host.edge_index(&img)
            })
            .collect();
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug)]
struct Plan {
    order: Vec<Vertex>,
    /// Pattern edges whose last vertex (in `order`) is mapped at this step.
    closing: Vec<Vec<usize>>,
    /// A pattern edge through this step's vertex and some earlier vertex.
    anchor: Vec<Option<usize>>,
}

impl Plan {
    fn new(pattern: &Hypergraph, inc: &[Vec<usize>], prefix: &[Vertex]) -> Plan {
        let n = pattern.n();
        let deg: Vec<usize> = inc.iter().map(Vec::len).collect();
        let mut placed = vec![false; n];
        let mut order: Vec<Vertex> = Vec::with_capacity(n);
        // number of edges through v that already contain a placed vertex
        let mut links = vec![0usize; n];
        let place = |v: Vertex, order: &mut Vec<Vertex>, placed: &mut Vec<bool>, links: &mut Vec<usize>| {
            placed[v] = true;
            order.push(v);
            for &ei in &inc[v] {
                for &w in pattern.edge(ei) {
                    if !placed[w] {
                        links[w] += 1;
                    }
                }
            }
        };
        for &v in prefix {
            place(v, &mut order, &mut placed, &mut links);
        }
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| !placed[v])
                .max_by(|&a, &b| {
                    (links[a], deg[a])
                        .cmp(&(links[b], deg[b]))
                        .then(b.cmp(&a))
                })
                .expect("unplaced vertex remains");
            place(next, &mut order, &mut placed, &mut links);
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut closing = vec![Vec::new(); n];
        for (ei, e) in pattern.edges().iter().enumerate() {
            let last = e.iter().map(|&v| pos[v]).max().expect("edge is nonempty");
            closing[last].push(ei);
        }
        let anchor = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                inc[v]
                    .iter()
                    .copied()
                    .filter(|&ei| pattern.edge(ei).iter().any(|&w| pos[w] < i))
                    .max_by_key(|&ei| pattern.edge(ei).iter().filter(|&&w| pos[w] < i).count())
            })
            .collect();
        Plan { order, closing, anchor }
    }
}

/// Reusable copy search of one pattern in one host. The set of usable host
/// edges is supplied per query as a boolean mask over the host edge list.
pub struct CopyFinder<'a> {
    pattern: &'a Hypergraph,
    host: &'a Hypergraph,
    pattern_deg: Vec<usize>,
    host_inc: Vec<Vec<usize>>,
    plan: Plan,
    edge_plans: Vec<Plan>,
    classes: Option<(Vec<u32>, Vec<u32>)>,
}

struct Search<'f, 'a> {
    finder: &'f CopyFinder<'a>,
    plan: &'f Plan,
    allowed: &'f [bool],
    allowed_deg: Vec<usize>,
    map: Vec<Vertex>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl<'a> CopyFinder<'a> {
    pub fn new(pattern: &'a Hypergraph, host: &'a Hypergraph) -> Result<Self> {
        if pattern.k() != host.k() {
            return Err(Error::UniformityMismatch(pattern.k(), host.k()));
        }
        let pinc = pattern.incidence();
        let plan = Plan::new(pattern, &pinc, &[]);
        let edge_plans = pattern
            .edges()
            .iter()
            .map(|e| Plan::new(pattern, &pinc, e))
            .collect();
        Ok(CopyFinder {
            pattern,
            host,
            pattern_deg: pinc.iter().map(Vec::len).collect(),
            host_inc: host.incidence(),
            plan,
            edge_plans,
            classes: None,
        })
    }

    /// Restricts pattern vertex `p` to host vertices `h` with
    /// `pattern_classes[p] == host_classes[h]`.
    pub fn with_vertex_classes(mut self, pattern_classes: Vec<u32>, host_classes: Vec<u32>) -> Self {
        self.classes = Some((pattern_classes, host_classes));
        self
    }

    pub fn pattern(&self) -> &Hypergraph {
        self.pattern
    }

    pub fn host(&self) -> &Hypergraph {
        self.host
    }

    fn search<'f>(&'f self, plan: &'f Plan, allowed: &'f [bool], budget: u64) -> Search<'f, 'a> {
        let allowed_deg = self
            .host_inc
            .iter()
            .map(|inc| inc.iter().filter(|&&e| allowed[e]).count())
            .collect();
        Search {
            finder: self,
            plan,
            allowed,
            allowed_deg,
            map: vec![UNMAPPED; self.pattern.n()],
            used: vec![false; self.host.n()],
            nodes: 0,
            budget,
        }
    }

    fn trivially_absent(&self, allowed: &[bool]) -> bool {
        self.pattern.n() > self.host.n()
            || allowed.iter().filter(|&&a| a).count() < self.pattern.edge_count()
    }

    /// First copy using only allowed host edges, or `None`.
    pub fn find(&self, allowed: &[bool], budget: u64) -> Result<Option<Vec<Vertex>>> {
        assert_eq!(allowed.len(), self.host.edge_count());
        if self.trivially_absent(allowed) {
            return Ok(None);
        }
        let mut found = None;
        let mut s = self.search(&self.plan, allowed, budget);
        let _ = s.step(0, &mut |m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        })?;
        Ok(found)
    }

    /// First copy that uses host edge `through` as the image of some pattern
    /// edge. Useful when every copy avoiding `through` is known to be absent.
    pub fn find_through(&self, allowed: &[bool], through: usize, budget: u64) -> Result<Option<Vec<Vertex>>> {
        assert_eq!(allowed.len(), self.host.edge_count());
        if !allowed[through] || self.trivially_absent(allowed) {
            return Ok(None);
        }
        let target = self.host.edge(through);
        let k = self.pattern.k();
        let mut spent = 0u64;
        for plan in &self.edge_plans {
            for perm in target.iter().copied().permutations(k) {
                let mut s = self.search(plan, allowed, budget.saturating_sub(spent));
                let ok = plan.order[..k].iter().zip(&perm).all(|(&p, &h)| s.admissible(p, h));
                if !ok {
                    continue;
                }
                for (&p, &h) in plan.order[..k].iter().zip(&perm) {
                    s.map[p] = h;
                    s.used[h] = true;
                }
                let mut found = None;
                let _ = s.step(k, &mut |m| {
                    found = Some(m.to_vec());
                    ControlFlow::Break(())
                })?;
                spent += s.nodes;
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    /// Visits every copy (as a vertex map) until `visit` breaks. Returns the
    /// number of maps visited.
    pub fn for_each(
        &self,
        allowed: &[bool],
        budget: u64,
        mut visit: impl FnMut(&[Vertex]) -> ControlFlow<()>,
    ) -> Result<u64> {
        assert_eq!(allowed.len(), self.host.edge_count());
        if self.trivially_absent(allowed) {
            return Ok(0);
        }
        let mut count = 0u64;
        let mut s = self.search(&self.plan, allowed, budget);
        let _ = s.step(0, &mut |m| {
            count += 1;
            visit(m)
        })?;
        Ok(count)
    }
}

impl Search<'_, '_> {
    fn admissible(&self, p: Vertex, h: Vertex) -> bool {
        if self.used[h] || self.allowed_deg[h] < self.finder.pattern_deg[p] {
            return false;
        }
        match &self.finder.classes {
            Some((pc, hc)) => pc[p] == hc[h],
            None => true,
        }
    }

    fn candidates(&self, i: usize, p: Vertex) -> Vec<Vertex> {
        let finder = self.finder;
        let mut cands: Vec<Vertex> = match self.plan.anchor[i] {
            Some(ae) => {
                let mapped: SmallVec<[Vertex; 8]> = finder
                    .pattern
                    .edge(ae)
                    .iter()
                    .filter(|&&w| self.map[w] != UNMAPPED)
                    .map(|&w| self.map[w])
                    .sorted_unstable()
                    .collect();
                let pivot = *mapped
                    .iter()
                    .min_by_key(|&&h| self.allowed_deg[h])
                    .expect("anchor edge has a mapped vertex");
                let mut out = Vec::new();
                for &f in &finder.host_inc[pivot] {
                    if self.allowed[f] && is_subset(&mapped, finder.host.edge(f)) {
                        out.extend(finder.host.edge(f).iter().copied().filter(|&y| !self.used[y]));
                    }
                }
                out.sort_unstable();
                out.dedup();
                out
            }
            None => (0..finder.host.n()).collect(),
        };
        cands.retain(|&h| self.admissible(p, h));
        cands
    }

    fn closes(&self, i: usize) -> bool {
        let finder = self.finder;
        self.plan.closing[i].iter().all(|&ei| {
            let mut img: SmallVec<[Vertex; 8]> = finder.pattern.edge(ei).iter().map(|&v| self.map[v]).collect();
            img.sort_unstable();
            matches!(finder.host.edge_index(&img), Some(f) if self.allowed[f])
        })
    }

    fn step(&mut self, i: usize, visit: &mut dyn FnMut(&[Vertex]) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        if i == self.plan.order.len() {
            return Ok(visit(&self.map));
        }
        let p = self.plan.order[i];
        for h in self.candidates(i, p) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded {
                    what: "copy search",
                    limit: self.budget,
                });
            }
            self.map[p] = h;
            self.used[h] = true;
            let flow = if self.closes(i) {
                self.step(i + 1, visit)?
            } else {
                ControlFlow::Continue(())
            };
            self.used[h] = false;
            self.map[p] = UNMAPPED;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Finds a copy of `pattern` in `host`, optionally restricted to the edges
/// of one color under `coloring`.
pub fn find_copy(
    pattern: &Hypergraph,
    host: &Hypergraph,
    filter: Option<(&EdgeColoring, Color)>,
    budget: u64,
) -> Result<Option<Embedding>> {
    let allowed = match filter {
        Some((coloring, color)) => {
            coloring.check(host)?;
            coloring.mask(color)
        }
        None => vec![true; host.edge_count()],
    };
    let finder = CopyFinder::new(pattern, host)?;
    Ok(finder.find(&allowed, budget)?.map(|map| Embedding {
        map,
        color_filter: filter.map(|(_, c)| c),
    }))
}

/// All distinct copies of `pattern` in `host` restricted to `allowed`,
/// each given by its sorted list of host edge indices.
pub fn distinct_copies(
    pattern: &Hypergraph,
    host: &Hypergraph,
    allowed: &[bool],
    budget: u64,
) -> Result<BTreeSet<Vec<usize>>> {
    let finder = CopyFinder::new(pattern, host)?;
    let mut seen = BTreeSet::new();
    finder.for_each(allowed, budget, |map| {
        let e = Embedding {
            map: map.to_vec(),
            color_filter: None,
        };
        seen.insert(e.image_edges(pattern, host));
        ControlFlow::Continue(())
    })?;
    Ok(seen)
}

/// Result of [`peel_to_min_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peeled {
    pub graph: Hypergraph,
    pub removed_edges: usize,
}

/// Repeatedly deletes every edge through the lexicographically least
/// `ell`-set whose degree is positive but below `threshold`, until none is
/// left. Vertices are kept (possibly isolated) so indices stay stable.
pub fn peel_to_min_degree(h: &Hypergraph, ell: usize, threshold: usize) -> Result<Peeled> {
    if ell == 0 || ell >= h.k() {
        return Err(Error::InvalidParameters(format!("ell={ell} must lie in [1, {}]", h.k() - 1)));
    }
    let mut alive = vec![true; h.edge_count()];
    let mut holders: BTreeMap<Vec<Vertex>, Vec<usize>> = BTreeMap::new();
    for (i, e) in h.edges().iter().enumerate() {
        for sub in e.iter().copied().combinations(ell) {
            holders.entry(sub).or_default().push(i);
        }
    }
    let mut degree: BTreeMap<Vec<Vertex>, usize> = holders.iter().map(|(s, v)| (s.clone(), v.len())).collect();
    let mut removed = 0;
    loop {
        let low = degree
            .iter()
            .find(|(_, &d)| d > 0 && d < threshold)
            .map(|(s, _)| s.clone());
        let Some(set) = low else { break };
        for &ei in &holders[&set] {
            if !alive[ei] {
                continue;
            }
            alive[ei] = false;
            removed += 1;
            for sub in h.edge(ei).iter().copied().combinations(ell) {
                *degree.get_mut(&sub).expect("sub-set was indexed") -= 1;
            }
        }
    }
    Ok(Peeled {
        graph: h.filter_edges(|i, _| alive[i]),
        removed_edges: removed,
    })
}

/// Embeds the edges of `tree` one by one, in its stored order, into `host`.
///
/// For each edge the attachment set `U` (its vertices already embedded) is
/// mapped; when `|U| < ℓ` it is first extended by unused vertices `W` to an
/// ℓ-set lying in some host edge. The new edge's image is the least host
/// edge containing `U ∪ W` that meets the used vertices exactly in `U`.
/// Ties are broken lexicographically throughout.
pub fn greedy_tree_embed(tree: &EllTree, host: &Hypergraph) -> Result<Embedding> {
    let t = &tree.graph;
    if t.k() != host.k() {
        return Err(Error::UniformityMismatch(t.k(), host.k()));
    }
    let ell = tree.ell;
    let inc = host.incidence();
    let mut map = vec![UNMAPPED; t.n()];
    let mut used = vec![false; host.n()];

    for (step, &ei) in tree.order.iter().enumerate() {
        let e = t.edge(ei);
        let mut attach: Vec<Vertex> = e.iter().filter(|&&v| map[v] != UNMAPPED).map(|&v| map[v]).collect();
        attach.sort_unstable();
        if attach.len() > ell {
            return Err(Error::InvalidParameters(format!(
                "edge {e:?} meets earlier edges in {} > ell vertices",
                attach.len()
            )));
        }
        let image = extension_edge(host, &inc, &used, &attach, ell).ok_or(Error::EmbeddingStuck {
            step,
            attachment: attach.clone(),
        })?;
        let fresh_pattern: Vec<Vertex> = e.iter().copied().filter(|&v| map[v] == UNMAPPED).collect();
        let fresh_host = image.iter().filter(|v| attach.binary_search(v).is_err());
        for (&p, &h) in fresh_pattern.iter().zip(fresh_host) {
            map[p] = h;
            used[h] = true;
        }
    }
    // vertices outside every edge go to the smallest unused host vertices
    let mut spare = (0..host.n()).filter(|&h| !used[h]);
    for slot in map.iter_mut().filter(|m| **m == UNMAPPED) {
        *slot = spare.next().ok_or(Error::EmbeddingStuck {
            step: tree.order.len(),
            attachment: Vec::new(),
        })?;
    }
    Ok(Embedding {
        map,
        color_filter: None,
    })
}

/// Host edges containing the sorted set `s`, in index order.
fn edges_containing<'h>(host: &'h Hypergraph, inc: &'h [Vec<usize>], s: &'h [Vertex]) -> Box<dyn Iterator<Item = usize> + 'h> {
    match s.first() {
        Some(&v) => Box::new(inc[v].iter().copied().filter(move |&f| is_subset(s, host.edge(f)))),
        None => Box::new(0..host.edge_count()),
    }
}

fn extension_edge(host: &Hypergraph, inc: &[Vec<usize>], used: &[bool], attach: &[Vertex], ell: usize) -> Option<Vec<Vertex>> {
    let meets_exactly = |f: usize| {
        host.edge(f)
            .iter()
            .all(|&v| !used[v] || attach.binary_search(&v).is_ok())
    };
    if attach.len() >= ell {
        return edges_containing(host, inc, attach)
            .find(|&f| meets_exactly(f))
            .map(|f| host.edge(f).to_vec());
    }
    let need = ell - attach.len();
    // candidate W sets in lexicographic order
    let mut targets: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    for g in edges_containing(host, inc, attach) {
        let free: Vec<Vertex> = host.edge(g).iter().copied().filter(|&v| !used[v]).collect();
        for w in free.into_iter().combinations(need) {
            targets.insert(w);
        }
    }
    for w in targets {
        let mut target: Vec<Vertex> = attach.iter().copied().chain(w).collect();
        target.sort_unstable();
        let found = edges_containing(host, inc, &target).find(|&f| meets_exactly(f));
        if let Some(f) = found {
            return Some(host.edge(f).to_vec());
        }
    }
    None
}
