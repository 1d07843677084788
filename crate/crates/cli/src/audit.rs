//! Structural audit of binary 3-trees and gadget families.

use anyhow::Result;
use serde::Serialize;

use hyperramsey::constructions::{binary_three_tree, gadget_family, GadgetSpec, DEFAULT_FAMILY_TRIES};
use hyperramsey::independence::{independence_number, DEFAULT_INDEPENDENCE_BUDGET};
use hyperramsey::iso::{are_isomorphic, automorphism_count, automorphism_count_fixing};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GadgetAudit {
    pub t: usize,
    pub q: usize,
    pub tree_vertices: usize,
    pub tree_edges: usize,
    /// Automorphisms fixing the root.
    pub tree_automorphisms: u64,
    /// All automorphisms, root not fixed.
    pub tree_automorphisms_unrooted: u64,
    /// `2^(2^t - 1)`.
    pub expected_automorphisms: u64,
    pub gadgets: Vec<GadgetSpec>,
    pub gadget_max_degrees: Vec<usize>,
    /// `isomorphic[i][j]` for every pair of gadgets.
    pub isomorphic: Vec<Vec<bool>>,
    pub union_vertices: usize,
    pub union_edges: usize,
    pub independence_number: usize,
    /// `(8/9) |V(union)|`.
    pub independence_bound: f64,
    pub independence_within_bound: bool,
}

pub fn gadget_audit(t: usize, q: usize, seed: u64) -> Result<GadgetAudit> {
    let tree = binary_three_tree(t)?;
    let budget = hyperramsey::DEFAULT_COPY_BUDGET;
    let tree_automorphisms = automorphism_count_fixing(&tree, &[0], budget)?;
    let tree_automorphisms_unrooted = automorphism_count(&tree, budget)?;
    let family = gadget_family(t, q, seed, DEFAULT_FAMILY_TRIES)?;
    let isomorphic = family
        .gadgets
        .iter()
        .map(|a| {
            family
                .gadgets
                .iter()
                .map(|b| Ok(are_isomorphic(&a.graph, &b.graph, budget)?.is_some()))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let alpha = independence_number(&family.union, DEFAULT_INDEPENDENCE_BUDGET)?;
    let bound = 8.0 * family.union.n() as f64 / 9.0;
    Ok(GadgetAudit {
        t,
        q,
        tree_vertices: tree.n(),
        tree_edges: tree.edge_count(),
        tree_automorphisms,
        tree_automorphisms_unrooted,
        expected_automorphisms: 1u64 << ((1u64 << t) - 1),
        gadgets: family.gadgets.iter().map(|g| g.spec.clone()).collect(),
        gadget_max_degrees: family.gadgets.iter().map(|g| g.graph.max_degree()).collect(),
        isomorphic,
        union_vertices: family.union.n(),
        union_edges: family.union.edge_count(),
        independence_number: alpha,
        independence_bound: bound,
        // compare 9 alpha <= 8 |V| exactly
        independence_within_bound: 9 * alpha <= 8 * family.union.n(),
    })
}
