//! Binary 3-trees and the tree-plus-leaf-path gadgets built on them.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::rng_from_seed;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};
use crate::iso::are_isomorphic;

/// Binary 3-tree of depth `t` in heap order: vertex `i` has children
/// `2i+1, 2i+2`, and every non-leaf contributes the edge
/// `{i, 2i+1, 2i+2}`. The root is `0`; the leaves are the last `2^t`
/// vertices.
pub fn binary_three_tree(t: usize) -> Result<Hypergraph> {
    if t == 0 {
        return Err(Error::InvalidParameters("tree depth t must be at least 1".into()));
    }
    let n = (1usize << (t + 1)) - 1;
    let internal = (1usize << t) - 1;
    Hypergraph::new(3, n, (0..internal).map(|i| vec![i, 2 * i + 1, 2 * i + 2]))
}

pub fn leaves(t: usize) -> std::ops::Range<Vertex> {
    (1usize << t) - 1..(1usize << (t + 1)) - 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetSpec {
    pub t: usize,
    /// Order in which the `2^t` leaves (numbered `0..2^t` left to right)
    /// are visited by the tight path.
    pub leaf_permutation: Vec<usize>,
}

impl GadgetSpec {
    pub fn identity(t: usize) -> Self {
        GadgetSpec {
            t,
            leaf_permutation: (0..1usize << t).collect(),
        }
    }
}

/// A gadget with its distinguished root edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub spec: GadgetSpec,
    pub graph: Hypergraph,
    pub root: Vertex,
    pub root_edge: Vec<Vertex>,
}

/// Binary 3-tree of depth `t` plus the 3-uniform tight path laid over its
/// leaves in `leaf_permutation` order.
pub fn gadget(spec: &GadgetSpec) -> Result<Gadget> {
    let t = spec.t;
    if t < 2 {
        return Err(Error::TooFewLeaves(t));
    }
    let leaf_count = 1usize << t;
    let mut check = spec.leaf_permutation.clone();
    check.sort_unstable();
    if check != (0..leaf_count).collect::<Vec<_>>() {
        return Err(Error::InvalidParameters(format!(
            "leaf_permutation must be a permutation of 0..{leaf_count}"
        )));
    }
    let tree = binary_three_tree(t)?;
    let first_leaf = leaves(t).start;
    let path: Vec<Vertex> = spec.leaf_permutation.iter().map(|&i| first_leaf + i).collect();
    let mut edges: Vec<Vec<Vertex>> = tree.edges().to_vec();
    edges.extend(path.windows(3).map(|w| w.to_vec()));
    Ok(Gadget {
        spec: spec.clone(),
        graph: Hypergraph::new(3, tree.n(), edges)?,
        root: 0,
        root_edge: vec![0, 1, 2],
    })
}

/// Pairwise non-isomorphic gadgets and their vertex-disjoint union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetFamily {
    pub gadgets: Vec<Gadget>,
    pub union: Hypergraph,
    /// Root edge of each gadget inside `union`.
    pub union_root_edges: Vec<Vec<Vertex>>,
}

pub const DEFAULT_FAMILY_TRIES: usize = 2000;

/// Samples leaf permutations with the seed and keeps those whose gadget is
/// not isomorphic to any kept so far, until `q` are found.
pub fn gadget_family(t: usize, q: usize, seed: u64, max_tries: usize) -> Result<GadgetFamily> {
    let mut rng = rng_from_seed(seed);
    let mut gadgets: Vec<Gadget> = Vec::new();
    let mut tries = 0;
    let leaf_count = 1usize << t;
    while gadgets.len() < q {
        if tries == max_tries {
            return Err(Error::ExhaustedPermutations {
                wanted: q,
                found: gadgets.len(),
                tries,
            });
        }
        tries += 1;
        let mut perm: Vec<usize> = (0..leaf_count).collect();
        if tries > 1 {
            perm.shuffle(&mut rng);
        }
        let g = gadget(&GadgetSpec { t, leaf_permutation: perm })?;
        let mut fresh = true;
        for other in &gadgets {
            if are_isomorphic(&g.graph, &other.graph, crate::DEFAULT_COPY_BUDGET)?.is_some() {
                fresh = false;
                break;
            }
        }
        if fresh {
            gadgets.push(g);
        }
    }
    let parts: Vec<Hypergraph> = gadgets.iter().map(|g| g.graph.clone()).collect();
    let union = Hypergraph::disjoint_union(&parts)?;
    let mut offset = 0;
    let union_root_edges = gadgets
        .iter()
        .map(|g| {
            let e = g.root_edge.iter().map(|&v| v + offset).collect();
            offset += g.graph.n();
            e
        })
        .collect();
    Ok(GadgetFamily {
        gadgets,
        union,
        union_root_edges,
    })
}
