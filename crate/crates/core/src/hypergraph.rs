//! Canonical k-uniform hypergraphs on dense vertex indices.
//!
//! Vertices are `0..n`. Every edge is stored sorted ascending and the edge
//! list is kept strictly increasing in lexicographic order, so the position
//! of an edge in [`Hypergraph::edges`] is a stable index that colorings and
//! certificates can refer to.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

/// Wire form: `{"k": int, "n": int, "edges": [[int, ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct RawHypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<Vertex>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.k, raw.n, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(h: Hypergraph) -> Self {
        RawHypergraph {
            k: h.k,
            n: h.n,
            edges: h.edges,
        }
    }
}

impl Hypergraph {
    /// Builds a hypergraph from edges in any order; each edge is sorted and
    /// the list canonicalized. Duplicate edges are rejected.
    pub fn new<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        if k < 2 {
            return Err(Error::InvalidParameters(format!("uniformity k={k} must be at least 2")));
        }
        let mut list: Vec<Vec<Vertex>> = Vec::new();
        for e in edges {
            let mut e: Vec<Vertex> = e.into();
            e.sort_unstable();
            if e.len() != k {
                return Err(Error::InvalidEdge {
                    reason: format!("expected {k} vertices, found {}", e.len()),
                    edge: e,
                });
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge {
                    edge: e,
                    reason: "repeated vertex".into(),
                });
            }
            if e[k - 1] >= n {
                return Err(Error::InvalidEdge {
                    edge: e,
                    reason: format!("vertex out of range for n={n}"),
                });
            }
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].clone()));
        }
        Ok(Hypergraph { k, n, edges: list })
    }

    /// Like [`Hypergraph::new`] but silently merges duplicate edges.
    pub fn new_dedup<I, E>(k: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: Into<Vec<Vertex>>,
    {
        let mut list: Vec<Vec<Vertex>> = edges
            .into_iter()
            .map(|e| {
                let mut e: Vec<Vertex> = e.into();
                e.sort_unstable();
                e
            })
            .collect();
        list.sort_unstable();
        list.dedup();
        Hypergraph::new(k, n, list)
    }

    pub fn empty(k: usize, n: usize) -> Result<Self> {
        Hypergraph::new(k, n, Vec::<Vec<Vertex>>::new())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.edges[i]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Index of `e` in the canonical edge list; `e` must be sorted.
    pub fn edge_index(&self, e: &[Vertex]) -> Option<usize> {
        self.edges.binary_search_by(|x| x.as_slice().cmp(e)).ok()
    }

    pub fn contains_edge(&self, e: &[Vertex]) -> bool {
        let mut sorted = e.to_vec();
        sorted.sort_unstable();
        self.edge_index(&sorted).is_some()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                deg[v] += 1;
            }
        }
        deg
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    /// For every vertex, the indices of the edges containing it (ascending).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    fn check_subset(&self, u: &[Vertex]) -> Result<Vec<Vertex>> {
        let mut s = u.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != u.len() {
            return Err(Error::InvalidSubset {
                subset: u.to_vec(),
                reason: "repeated vertex".into(),
            });
        }
        if let Some(&v) = s.iter().find(|&&v| v >= self.n) {
            return Err(Error::InvalidSubset {
                subset: u.to_vec(),
                reason: format!("vertex {v} out of range for n={}", self.n),
            });
        }
        Ok(s)
    }

    /// Number of edges containing `u`, for `1 <= |u| < k`.
    pub fn set_degree(&self, u: &[Vertex]) -> Result<usize> {
        let s = self.check_subset(u)?;
        if s.is_empty() || s.len() >= self.k {
            return Err(Error::InvalidSubset {
                subset: u.to_vec(),
                reason: format!("size must lie in [1, {}]", self.k - 1),
            });
        }
        Ok(self.edges.iter().filter(|e| is_subset(&s, e)).count())
    }

    /// Degrees of all `ell`-sets that lie inside at least one edge.
    pub fn ell_degrees(&self, ell: usize) -> Result<BTreeMap<Vec<Vertex>, usize>> {
        if ell == 0 || ell >= self.k {
            return Err(Error::InvalidParameters(format!(
                "ell={ell} must lie in [1, {}]",
                self.k - 1
            )));
        }
        let mut map = BTreeMap::new();
        for e in &self.edges {
            for sub in e.iter().copied().combinations(ell) {
                *map.entry(sub).or_insert(0) += 1;
            }
        }
        Ok(map)
    }

    /// Minimum non-zero `ell`-degree; `None` when there are no edges.
    pub fn min_nonzero_ell_degree(&self, ell: usize) -> Result<Option<usize>> {
        Ok(self.ell_degrees(ell)?.into_values().min())
    }

    /// Induced subhypergraph on `s`, re-indexed in increasing vertex order.
    pub fn induced(&self, s: &[Vertex]) -> Result<Hypergraph> {
        let s = self.check_subset(s)?;
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in s.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| pos[v] != usize::MAX))
            .map(|e| e.iter().map(|&v| pos[v]).collect::<Vec<_>>());
        Hypergraph::new(self.k, s.len(), edges)
    }

    /// Same vertex set, keeping the edges whose index satisfies `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, &[Vertex]) -> bool) -> Hypergraph {
        Hypergraph {
            k: self.k,
            n: self.n,
            edges: self
                .edges
                .iter()
                .enumerate()
                .filter(|(i, e)| keep(*i, e))
                .map(|(_, e)| e.clone())
                .collect(),
        }
    }

    /// Vertex-disjoint union; the i-th part is shifted by the sum of the
    /// vertex counts of the parts before it.
    pub fn disjoint_union(parts: &[Hypergraph]) -> Result<Hypergraph> {
        let k = match parts.first() {
            Some(h) => h.k,
            None => return Err(Error::InvalidParameters("empty union".into())),
        };
        let mut offset = 0;
        let mut edges = Vec::new();
        for h in parts {
            if h.k != k {
                return Err(Error::UniformityMismatch(k, h.k));
            }
            edges.extend(h.edges.iter().map(|e| e.iter().map(|&v| v + offset).collect::<Vec<_>>()));
            offset += h.n;
        }
        Hypergraph::new(k, offset, edges)
    }

    /// Vertices lying in at least one edge.
    pub fn covered_vertices(&self) -> Vec<Vertex> {
        let mut seen = vec![false; self.n];
        for e in &self.edges {
            for &v in e {
                seen[v] = true;
            }
        }
        (0..self.n).filter(|&v| seen[v]).collect()
    }

    /// Connected components (vertex lists, ascending) including singletons.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            for w in e.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// `a ⊆ b` for sorted slices.
pub fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{clique, ell_path};

    #[test]
    fn set_degree_examples() {
        let single = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(single.set_degree(&[0, 1]).unwrap(), 1);
        assert_eq!(clique(3, 4).unwrap().set_degree(&[0, 1]).unwrap(), 2);
        let tight = ell_path(3, 2, 6).unwrap();
        assert_eq!(tight.set_degree(&[2, 3]).unwrap(), 2);
    }

    #[test]
    fn set_degree_rejects_bad_sizes() {
        let h = clique(3, 4).unwrap();
        assert!(matches!(h.set_degree(&[]), Err(Error::InvalidSubset { .. })));
        assert!(matches!(h.set_degree(&[0, 1, 2]), Err(Error::InvalidSubset { .. })));
        assert!(matches!(h.set_degree(&[0, 9]), Err(Error::InvalidSubset { .. })));
    }

    #[test]
    fn min_ell_degree_examples() {
        assert_eq!(Hypergraph::empty(3, 5).unwrap().min_nonzero_ell_degree(2).unwrap(), None);
        assert_eq!(clique(3, 4).unwrap().min_nonzero_ell_degree(2).unwrap(), Some(2));
        assert_eq!(ell_path(3, 2, 6).unwrap().min_nonzero_ell_degree(2).unwrap(), Some(1));
    }

    #[test]
    fn induced_examples() {
        let k5 = clique(3, 5).unwrap();
        assert_eq!(k5.induced(&[0, 1, 2, 3]).unwrap(), clique(3, 4).unwrap());
        let tight = ell_path(3, 2, 6).unwrap();
        let sub = tight.induced(&[0, 1, 2, 3]).unwrap();
        assert_eq!(sub.edges(), &[vec![0, 1, 2], vec![1, 2, 3]]);
        let none = k5.induced(&[]).unwrap();
        assert_eq!((none.n(), none.edge_count()), (0, 0));
        assert!(k5.induced(&[0, 7]).is_err());
    }

    #[test]
    fn constructor_validates() {
        assert!(matches!(
            Hypergraph::new(3, 4, vec![vec![0, 1]]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 4, vec![vec![0, 1, 1]]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 3, vec![vec![0, 1, 3]]),
            Err(Error::InvalidEdge { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![2, 1, 0]]),
            Err(Error::DuplicateEdge(_))
        ));
    }

    #[test]
    fn json_round_trip_canonicalizes() {
        let h = Hypergraph::from_json(r#"{"k":2,"n":3,"edges":[[2,1],[0,1]]}"#).unwrap();
        assert_eq!(h.to_json(), r#"{"k":2,"n":3,"edges":[[0,1],[1,2]]}"#);
        assert!(Hypergraph::from_json(r#"{"k":2,"n":2,"edges":[[0,5]]}"#).is_err());
    }

    #[test]
    fn components_include_isolates() {
        let h = Hypergraph::new(2, 5, vec![vec![0, 1], vec![3, 4]]).unwrap();
        assert_eq!(h.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }
}
