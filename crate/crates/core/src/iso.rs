//! Isomorphism and automorphism counting for small hypergraphs.
//!
//! Vertices are first split into classes by iterated refinement (degree,
//! then the multiset of neighbour classes seen through each incident edge),
//! computed jointly on both inputs so class ids are comparable. The
//! backtracking search then only maps vertices within a class.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::embedding::CopyFinder;
use crate::error::Result;
use crate::hypergraph::{Hypergraph, Vertex};

type Signature = (u32, Vec<Vec<u32>>);

/// Joint refinement of the given graphs, each with an initial coloring.
fn refine(graphs: &[(&Hypergraph, Vec<u32>)]) -> Vec<Vec<u32>> {
    let incs: Vec<Vec<Vec<usize>>> = graphs.iter().map(|(h, _)| h.incidence()).collect();
    let initial: Vec<Vec<Signature>> = graphs
        .iter()
        .zip(&incs)
        .map(|((_, init), inc)| init.iter().zip(inc).map(|(&c, i)| (c, vec![vec![i.len() as u32]])).collect())
        .collect();
    let mut colors = relabel(&initial);
    loop {
        let classes_before = count_classes(&colors);
        let sigs: Vec<Vec<Signature>> = graphs
            .iter()
            .zip(&incs)
            .zip(&colors)
            .map(|(((h, _), inc), col)| {
                (0..h.n())
                    .map(|v| {
                        let mut around: Vec<Vec<u32>> = inc[v]
                            .iter()
                            .map(|&e| {
                                let mut c: Vec<u32> = h.edge(e).iter().filter(|&&w| w != v).map(|&w| col[w]).collect();
                                c.sort_unstable();
                                c
                            })
                            .collect();
                        around.sort_unstable();
                        (col[v], around)
                    })
                    .collect()
            })
            .collect();
        colors = relabel(&sigs);
        if count_classes(&colors) == classes_before {
            return colors;
        }
    }
}

fn relabel(sigs: &[Vec<Signature>]) -> Vec<Vec<u32>> {
    let mut ids: BTreeMap<&Signature, u32> = BTreeMap::new();
    for s in sigs.iter().flatten() {
        ids.entry(s).or_insert(0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i as u32;
    }
    sigs.iter().map(|g| g.iter().map(|s| ids[s]).collect()).collect()
}

fn count_classes(colors: &[Vec<u32>]) -> usize {
    let mut all: Vec<u32> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(c: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

/// A vertex bijection `a -> b` mapping edges onto edges, if one exists.
pub fn are_isomorphic(a: &Hypergraph, b: &Hypergraph, budget: u64) -> Result<Option<Vec<Vertex>>> {
    if a.k() != b.k() || a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let mut cols = refine(&[(a, vec![0; a.n()]), (b, vec![0; b.n()])]);
    let cb = cols.pop().expect("two colorings");
    let ca = cols.pop().expect("two colorings");
    if histogram(&ca) != histogram(&cb) {
        return Ok(None);
    }
    // an injective edge map between equal-size edge sets is a bijection
    let finder = CopyFinder::new(a, b)?.with_vertex_classes(ca, cb);
    finder.find(&vec![true; b.edge_count()], budget)
}

/// Order of the automorphism group.
pub fn automorphism_count(h: &Hypergraph, budget: u64) -> Result<u64> {
    automorphism_count_fixing(h, &[], budget)
}

/// Order of the group of automorphisms fixing each vertex of `fixed`
/// (e.g. the root of a rooted tree).
pub fn automorphism_count_fixing(h: &Hypergraph, fixed: &[Vertex], budget: u64) -> Result<u64> {
    let mut init = vec![0u32; h.n()];
    for (i, &v) in fixed.iter().enumerate() {
        init[v] = i as u32 + 1;
    }
    let mut cols = refine(&[(h, init)]);
    let c = cols.pop().expect("one coloring");
    let finder = CopyFinder::new(h, h)?.with_vertex_classes(c.clone(), c);
    finder.for_each(&vec![true; h.edge_count()], budget, |_| ControlFlow::Continue(()))
}
