//! One step of the clique lower-bound induction for 3-graphs: merge `v`
//! into `u`, color the smaller graph, and lift the coloring back.

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::constructions::clique;
use crate::embedding::find_copy;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

/// `H_u` on `V(H) - {v}`, vertices above `v` shifted down by one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contracted {
    pub graph: Hypergraph,
    pub u: Vertex,
    pub v: Vertex,
}

impl Contracted {
    /// Index in the contracted graph of an original vertex other than `v`.
    pub fn to_new(&self, x: Vertex) -> Vertex {
        debug_assert_ne!(x, self.v);
        if x > self.v {
            x - 1
        } else {
            x
        }
    }

    pub fn to_old(&self, y: Vertex) -> Vertex {
        if y >= self.v {
            y + 1
        } else {
            y
        }
    }

    fn image(&self, e: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = e.iter().map(|&x| self.to_new(x)).collect();
        out.sort_unstable();
        out
    }
}

/// Edges avoiding `v` are kept; `{v,x,y}` becomes `{u,x,y}` unless that is
/// already an edge; edges containing both `u` and `v` are dropped.
pub fn contract_pair(h: &Hypergraph, u: Vertex, v: Vertex) -> Result<Contracted> {
    check_pair(h, u, v)?;
    let mut c = Contracted {
        graph: Hypergraph::empty(3, h.n() - 1)?,
        u: 0,
        v,
    };
    c.u = c.to_new(u);
    let mut edges = Vec::new();
    for e in h.edges() {
        if !e.contains(&v) {
            edges.push(c.image(e));
        } else if !e.contains(&u) {
            let moved = replace(e, v, u);
            if !h.contains_edge(&moved) {
                edges.push(c.image(&moved));
            }
        }
    }
    c.graph = Hypergraph::new(3, h.n() - 1, edges)?;
    Ok(c)
}

fn check_pair(h: &Hypergraph, u: Vertex, v: Vertex) -> Result<()> {
    if h.k() != 3 {
        return Err(Error::UniformityMismatch(3, h.k()));
    }
    if u == v || u >= h.n() || v >= h.n() {
        return Err(Error::InvalidParameters(format!("need two distinct vertices, got {u} and {v}")));
    }
    Ok(())
}

fn replace(e: &[Vertex], from: Vertex, to: Vertex) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = e.iter().map(|&x| if x == from { to } else { x }).collect();
    out.sort_unstable();
    out
}

/// A set `S` (original labels) such that `S + u` spans a complete,
/// single-colored clique of `H_u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftBlock {
    pub vertices: Vec<Vertex>,
    /// `None` when `S + u` spans no edge at all.
    pub color: Option<Color>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftPartition {
    /// `N_H(u,v)`, original labels.
    pub neighbourhood: Vec<Vertex>,
    pub blocks: Vec<LiftBlock>,
    pub remainder: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedColoring {
    pub coloring: EdgeColoring,
    pub partition: LiftPartition,
    /// Set when `32 deg(u,v) >= n^2`, where the lift carries no guarantee.
    pub degree_warning: bool,
}

/// Lifts a coloring of `contract_pair(h, u, v)` with no monochromatic
/// `K_n` to a coloring of `h`.
pub fn clique_lift_coloring(h: &Hypergraph, u: Vertex, v: Vertex, base: &EdgeColoring, n: usize) -> Result<LiftedColoring> {
    let c = contract_pair(h, u, v)?;
    let hu = &c.graph;
    base.check(hu)?;
    let kn = clique(3, n)?;
    for color in Color::BOTH {
        if let Some(e) = find_copy(&kn, hu, Some((base, color)), crate::DEFAULT_COPY_BUDGET)? {
            let mut vs: Vec<Vertex> = e.map.iter().map(|&y| c.to_old(y)).collect();
            vs.sort_unstable();
            return Err(Error::InvalidBase(n, vs));
        }
    }
    let neighbourhood: Vec<Vertex> = (0..h.n())
        .filter(|&x| x != u && x != v && h.contains_edge(&sorted3(u, v, x)))
        .collect();
    let degree_warning = 32 * neighbourhood.len() >= n * n;
    let partition = partition(&c, base, &neighbourhood, n);

    let base_color = |e: &[Vertex]| -> Color {
        let idx = hu.edge_index(&c.image(e)).expect("edge of the contracted graph");
        base.get(idx)
    };
    let colors = h
        .edges()
        .iter()
        .map(|e| {
            if !e.contains(&v) {
                base_color(e)
            } else if !e.contains(&u) {
                base_color(&replace(e, v, u))
            } else {
                let x = *e.iter().find(|&&x| x != u && x != v).expect("3-edge");
                match partition.blocks.iter().find(|b| b.vertices.contains(&x)) {
                    // an edgeless block counts as red
                    Some(b) => b.color.unwrap_or(Color::Red).other(),
                    None => Color::Red,
                }
            }
        })
        .collect();
    Ok(LiftedColoring {
        coloring: EdgeColoring::from_colors(colors),
        partition,
        degree_warning,
    })
}

fn sorted3(a: Vertex, b: Vertex, c: Vertex) -> Vec<Vertex> {
    let mut e = vec![a, b, c];
    e.sort_unstable();
    e
}

/// Repeatedly removes the largest block of size at least `n/4`
/// (lexicographically least among equals) until none is left.
fn partition(c: &Contracted, base: &EdgeColoring, t: &[Vertex], n: usize) -> LiftPartition {
    let hu = &c.graph;
    let u = c.u;
    let mut rest: Vec<Vertex> = t.iter().map(|&x| c.to_new(x)).collect();
    let mut blocks = Vec::new();
    loop {
        let best = largest_block(hu, base, u, &rest);
        match best {
            Some((s, color)) if 4 * s.len() >= n && !s.is_empty() => {
                rest.retain(|x| !s.contains(x));
                blocks.push(LiftBlock {
                    vertices: s.iter().map(|&y| c.to_old(y)).collect(),
                    color,
                });
            }
            _ => break,
        }
    }
    LiftPartition {
        neighbourhood: t.to_vec(),
        blocks,
        remainder: rest.iter().map(|&y| c.to_old(y)).collect(),
    }
}

/// Largest `S` within `pool` with `S + u` a single-colored clique of `hu`.
fn largest_block(hu: &Hypergraph, base: &EdgeColoring, u: Vertex, pool: &[Vertex]) -> Option<(Vec<Vertex>, Option<Color>)> {
    let color_of = |a: Vertex, b: Vertex, d: Vertex| hu.edge_index(&sorted3(a, b, d)).map(|i| base.get(i));
    let mut best: Option<(Vec<Vertex>, Option<Color>)> = None;
    let mut cur: Vec<Vertex> = Vec::new();
    fn grow(
        i: usize,
        pool: &[Vertex],
        u: Vertex,
        cur: &mut Vec<Vertex>,
        color: Option<Color>,
        color_of: &dyn Fn(Vertex, Vertex, Vertex) -> Option<Color>,
        best: &mut Option<(Vec<Vertex>, Option<Color>)>,
    ) {
        if best.as_ref().is_none_or(|(b, _)| cur.len() > b.len()) {
            *best = Some((cur.clone(), color));
        }
        for j in i..pool.len() {
            if cur.len() + pool.len() - j <= best.as_ref().map_or(0, |(b, _)| b.len()) {
                return;
            }
            let x = pool[j];
            // every new triple must exist and agree with the clique color
            let mut col = color;
            let mut ok = true;
            let mut others: Vec<Vertex> = cur.clone();
            others.push(u);
            'pairs: for a in 0..others.len() {
                for b in a + 1..others.len() {
                    match color_of(others[a], others[b], x) {
                        None => {
                            ok = false;
                            break 'pairs;
                        }
                        Some(cc) if col.is_some_and(|c0| c0 != cc) => {
                            ok = false;
                            break 'pairs;
                        }
                        Some(cc) => col = Some(cc),
                    }
                }
            }
            if ok {
                cur.push(x);
                grow(j + 1, pool, u, cur, col, color_of, best);
                cur.pop();
            }
        }
    }
    grow(0, pool, u, &mut cur, None, &color_of, &mut best);
    best
}
