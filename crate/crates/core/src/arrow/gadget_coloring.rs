//! Coloring that blocks red gadget copies: edges at high-degree vertices
//! and the root edges of the rarest gadget go blue, everything else red.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::constructions::GadgetFamily;
use crate::embedding::{CopyFinder, Embedding};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetCopyCount {
    pub gadget: usize,
    /// Distinct copies (as edge sets) inside the low-degree part.
    pub copies: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VhighReport {
    pub threshold: f64,
    pub v_high: Vec<Vertex>,
    pub copy_counts: Vec<GadgetCopyCount>,
    pub selected: usize,
    /// Host edges forced blue as root edges of copies of the selected gadget.
    pub root_edges: Vec<Vec<Vertex>>,
    /// Number of vertices covered by `root_edges`.
    pub root_vertices: usize,
}

/// `V_high` is every vertex of degree at least `d`.
pub fn vhigh_vlow_coloring(h: &Hypergraph, d: f64, family: &GadgetFamily, budget: u64) -> Result<(EdgeColoring, VhighReport)> {
    if family.gadgets.is_empty() {
        return Err(Error::InvalidParameters("empty gadget family".into()));
    }
    let deg = h.degrees();
    let (v_high, v_low): (Vec<Vertex>, Vec<Vertex>) = (0..h.n()).partition(|&v| deg[v] as f64 >= d);
    let low = h.induced(&v_low)?;

    let mut per_gadget: Vec<(usize, BTreeSet<Vec<Vertex>>)> = Vec::with_capacity(family.gadgets.len());
    for g in &family.gadgets {
        let finder = CopyFinder::new(&g.graph, &low)?;
        let mut copies: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut roots: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        finder.for_each(&vec![true; low.edge_count()], budget, |map| {
            let emb = Embedding {
                map: map.to_vec(),
                color_filter: None,
            };
            copies.insert(emb.image_edges(&g.graph, &low));
            let mut root: Vec<Vertex> = g.root_edge.iter().map(|&p| v_low[map[p]]).collect();
            root.sort_unstable();
            roots.insert(root);
            ControlFlow::Continue(())
        })?;
        per_gadget.push((copies.len(), roots));
    }
    let selected = (0..per_gadget.len())
        .min_by_key(|&i| (per_gadget[i].0, i))
        .expect("nonempty family");
    let roots = per_gadget[selected].1.clone();

    let mut high = vec![false; h.n()];
    for &v in &v_high {
        high[v] = true;
    }
    let colors = h
        .edges()
        .iter()
        .map(|e| {
            if e.iter().any(|&v| high[v]) || roots.contains(e) {
                Color::Blue
            } else {
                Color::Red
            }
        })
        .collect();
    let root_vertices = roots.iter().flatten().collect::<BTreeSet<_>>().len();
    let report = VhighReport {
        threshold: d,
        v_high,
        copy_counts: per_gadget
            .iter()
            .enumerate()
            .map(|(gadget, (copies, _))| GadgetCopyCount { gadget, copies: *copies })
            .collect(),
        selected,
        root_edges: roots.into_iter().collect(),
        root_vertices,
    };
    Ok((EdgeColoring::from_colors(colors), report))
}
