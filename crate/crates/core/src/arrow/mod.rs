//! Exact arrow checks `H -> G` and the explicit colorings that avoid
//! monochromatic copies.

mod gadget_coloring;
mod lift;

pub use gadget_coloring::{vhigh_vlow_coloring, GadgetCopyCount, VhighReport};
pub use lift::{clique_lift_coloring, contract_pair, Contracted, LiftBlock, LiftPartition, LiftedColoring};

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, EdgeColoring};
use crate::embedding::CopyFinder;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArrowResult {
    Arrows,
    NotArrows,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowVerdict {
    pub result: ArrowResult,
    /// A coloring with no monochromatic copy, present iff `NotArrows`.
    pub certificate: Option<EdgeColoring>,
    /// Search-tree nodes visited.
    pub nodes: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowOptions {
    pub node_budget: u64,
    /// Budget of each individual copy search.
    pub copy_budget: u64,
    /// Cut a branch as soon as the colored edges contain a monochromatic
    /// copy, instead of only checking complete colorings.
    pub prune: bool,
}

impl Default for ArrowOptions {
    fn default() -> Self {
        ArrowOptions {
            node_budget: crate::DEFAULT_ARROWS_BUDGET,
            copy_budget: crate::DEFAULT_COPY_BUDGET,
            prune: true,
        }
    }
}

impl ArrowOptions {
    pub fn with_budget(node_budget: u64) -> Self {
        ArrowOptions {
            node_budget,
            ..Self::default()
        }
    }
}

/// Decides whether every red/blue coloring of `host` contains a
/// monochromatic copy of `pattern`.
pub fn arrows(host: &Hypergraph, pattern: &Hypergraph, opts: ArrowOptions) -> Result<ArrowVerdict> {
    if host.k() != pattern.k() {
        return Err(Error::UniformityMismatch(host.k(), pattern.k()));
    }
    let finder = CopyFinder::new(pattern, host)?;
    let m = host.edge_count();
    if pattern.n() > host.n() || pattern.edge_count() > m {
        return Ok(not_arrows(EdgeColoring::uniform(host, Color::Red), 0));
    }
    if pattern.is_empty() {
        return Ok(ArrowVerdict {
            result: ArrowResult::Arrows,
            certificate: None,
            nodes: 0,
        });
    }
    let mut dfs = Dfs {
        finder: &finder,
        opts,
        colors: Vec::with_capacity(m),
        masks: [vec![false; m], vec![false; m]],
        nodes: 0,
    };
    let outcome = dfs.run();
    let nodes = dfs.nodes;
    match outcome {
        Ok(Some(colors)) => {
            let cert = EdgeColoring::from_colors(colors);
            // re-check the certificate from scratch
            for c in Color::BOTH {
                match finder.find(&cert.mask(c), opts.copy_budget) {
                    Ok(None) => {}
                    Ok(Some(_)) => panic!("arrow search produced an invalid certificate"),
                    Err(e) if e.is_budget() => return Ok(unknown(nodes)),
                    Err(e) => return Err(e),
                }
            }
            Ok(not_arrows(cert, nodes))
        }
        Ok(None) => Ok(ArrowVerdict {
            result: ArrowResult::Arrows,
            certificate: None,
            nodes,
        }),
        Err(e) if e.is_budget() => Ok(unknown(nodes)),
        Err(e) => Err(e),
    }
}

fn not_arrows(cert: EdgeColoring, nodes: u64) -> ArrowVerdict {
    ArrowVerdict {
        result: ArrowResult::NotArrows,
        certificate: Some(cert),
        nodes,
    }
}

fn unknown(nodes: u64) -> ArrowVerdict {
    ArrowVerdict {
        result: ArrowResult::Unknown,
        certificate: None,
        nodes,
    }
}

fn slot(c: Color) -> usize {
    match c {
        Color::Red => 0,
        Color::Blue => 1,
    }
}

struct Dfs<'f, 'a> {
    finder: &'f CopyFinder<'a>,
    opts: ArrowOptions,
    colors: Vec<Color>,
    /// Per color, the edges colored so far with it.
    masks: [Vec<bool>; 2],
    nodes: u64,
}

impl Dfs<'_, '_> {
    /// A complete coloring with no monochromatic copy, if one exists.
    fn run(&mut self) -> Result<Option<Vec<Color>>> {
        // swapping colors maps solutions to solutions, so edge 0 stays red
        if self.finder.host().is_empty() {
            return Ok(Some(Vec::new()));
        }
        self.extend(Color::Red)
    }

    fn extend(&mut self, c: Color) -> Result<Option<Vec<Color>>> {
        self.nodes += 1;
        if self.nodes > self.opts.node_budget {
            return Err(Error::BudgetExceeded {
                what: "arrow search",
                limit: self.opts.node_budget,
            });
        }
        let i = self.colors.len();
        self.colors.push(c);
        self.masks[slot(c)][i] = true;
        let result = self.after_push(i, c);
        self.masks[slot(c)][i] = false;
        self.colors.pop();
        result
    }

    fn after_push(&mut self, i: usize, c: Color) -> Result<Option<Vec<Color>>> {
        let m = self.finder.host().edge_count();
        if self.opts.prune {
            // only copies through the new edge can be new
            if self.finder.find_through(&self.masks[slot(c)], i, self.opts.copy_budget)?.is_some() {
                return Ok(None);
            }
        }
        if i + 1 == m {
            if !self.opts.prune {
                for c in Color::BOTH {
                    if self.finder.find(&self.masks[slot(c)], self.opts.copy_budget)?.is_some() {
                        return Ok(None);
                    }
                }
            }
            return Ok(Some(self.colors.clone()));
        }
        for next in Color::BOTH {
            if let Some(found) = self.extend(next)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// Red iff every vertex of the edge has degree below `(n-1)/(2k-2)`,
/// compared exactly as `deg * (2k-2) < n-1`.
pub fn degree_threshold_coloring(h: &Hypergraph, k: usize, n: usize) -> EdgeColoring {
    let deg = h.degrees();
    let scale = 2 * k - 2;
    let colors = h
        .edges()
        .iter()
        .map(|e| {
            if e.iter().all(|&v| deg[v] * scale + 1 < n) {
                Color::Red
            } else {
                Color::Blue
            }
        })
        .collect();
    EdgeColoring::from_colors(colors)
}
