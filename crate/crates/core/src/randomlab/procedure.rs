//! Greedy growth of a monochromatic tight path with a trash set of
//! retired (k-1)-tuples, and the round-by-round edge accounting built on
//! repeated runs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{membership, split_xy};
use crate::coloring::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::hypergraph::{is_subset, Hypergraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProcedureStatus {
    /// The path reached `m` vertices.
    PathFound,
    /// `m` tuples were trashed.
    TrashFull,
    /// No edge of the color lies inside the unused vertices.
    NoSeed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCounters {
    pub seeds: usize,
    pub extensions: usize,
    pub trashings: usize,
}

/// One trashed tuple with the state that justified it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrashEvent {
    pub tuple: Vec<Vertex>,
    /// Unused vertices when the tuple failed to extend.
    pub unused: Vec<Vertex>,
    pub path_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcedureState {
    pub status: ProcedureStatus,
    /// Path labels `v_1, v_2, ...` in order.
    pub path: Vec<Vertex>,
    /// Trashed tuples, each sorted, in trashing order.
    pub trash: Vec<Vec<Vertex>>,
    pub unused: Vec<Vertex>,
    pub steps: StepCounters,
    pub log: Vec<TrashEvent>,
}

/// Runs the procedure on all edges of `h`.
pub fn grow_monochromatic_tight_path(h: &Hypergraph, coloring: &EdgeColoring, color: Color, m: usize) -> Result<ProcedureState> {
    coloring.check(h)?;
    if m == 0 {
        return Err(Error::InvalidParameters("path length m must be at least 1".into()));
    }
    Ok(run(h, &h.incidence(), &coloring.mask(color), m))
}

/// `usable[i]` marks the edges that are alive and of the sought color.
fn run(h: &Hypergraph, inc: &[Vec<usize>], usable: &[bool], m: usize) -> ProcedureState {
    let k = h.k();
    let n = h.n();
    let mut in_u = vec![true; n];
    let mut path: Vec<Vertex> = Vec::new();
    let mut trash: Vec<Vec<Vertex>> = Vec::new();
    let mut log = Vec::new();
    let mut steps = StepCounters::default();
    let unused = |in_u: &[bool]| (0..n).filter(|&v| in_u[v]).collect::<Vec<_>>();
    let finish = |status, path, trash, in_u: &[bool], steps, log| ProcedureState {
        status,
        path,
        trash,
        unused: unused(in_u),
        steps,
        log,
    };
    loop {
        // seed: least usable edge inside U
        let seed = (0..h.edge_count()).find(|&i| usable[i] && h.edge(i).iter().all(|&v| in_u[v]));
        let Some(seed) = seed else {
            return finish(ProcedureStatus::NoSeed, path, trash, &in_u, steps, log);
        };
        steps.seeds += 1;
        for &v in h.edge(seed) {
            in_u[v] = false;
            path.push(v);
        }
        loop {
            if path.len() >= m {
                return finish(ProcedureStatus::PathFound, path, trash, &in_u, steps, log);
            }
            let mut tail: Vec<Vertex> = path[path.len() - (k - 1)..].to_vec();
            tail.sort_unstable();
            let next = inc[tail[0]]
                .iter()
                .filter(|&&f| usable[f] && is_subset(&tail, h.edge(f)))
                .filter_map(|&f| h.edge(f).iter().copied().find(|v| tail.binary_search(v).is_err()))
                .filter(|&u| in_u[u])
                .min();
            match next {
                Some(u) => {
                    steps.extensions += 1;
                    in_u[u] = false;
                    path.push(u);
                }
                None => {
                    steps.trashings += 1;
                    log.push(TrashEvent {
                        tuple: tail.clone(),
                        unused: unused(&in_u),
                        path_len: path.len(),
                    });
                    path.truncate(path.len() - (k - 1));
                    trash.push(tail);
                    if trash.len() == m {
                        return finish(ProcedureStatus::TrashFull, path, trash, &in_u, steps, log);
                    }
                    if path.len() < k {
                        for v in path.drain(..) {
                            in_u[v] = true;
                        }
                        break;
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundReport {
    pub state: ProcedureState,
    /// Path vertex set when the round stopped (`A`).
    pub a: Vec<Vertex>,
    /// Alive edges completing a trash tuple outside `A + V(B)`.
    pub x: usize,
    /// Alive edges completing a trash tuple inside `A + V(B)`.
    pub y: usize,
    /// Of the `x` edges, those of the sought color.
    pub x_same_color: usize,
    /// Sought-color edges removed after the round.
    pub removed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AccountingReport {
    pub color: Color,
    pub m: usize,
    pub t_r: usize,
    pub t_b: usize,
    pub t_k: usize,
    pub rounds: Vec<RoundReport>,
    pub final_status: ProcedureStatus,
    pub sum_x: usize,
    pub sum_y: usize,
    /// Vertices of the last round's trash.
    pub c: Vec<Vertex>,
    /// Edges of the input meeting `c`.
    pub z_c: usize,
    /// Largest number of rounds in which a single edge is counted in `x`.
    pub max_x_multiplicity: usize,
    pub trash_disjoint_across_rounds: bool,
    /// `t_sought <= sum_y + z_c`.
    pub sought_bound_holds: bool,
    /// `sum_x <= k * t_other`.
    pub other_bound_holds: bool,
    /// More edges of the other color than of the sought one.
    pub other_majority: bool,
    pub round_cap: usize,
    pub round_cap_hit: bool,
    /// Set when some round found the path.
    pub path: Option<Vec<Vertex>>,
}

impl AccountingReport {
    pub fn t_sought(&self) -> usize {
        match self.color {
            Color::Red => self.t_r,
            Color::Blue => self.t_b,
        }
    }

    pub fn t_other(&self) -> usize {
        self.t_k - self.t_sought()
    }
}

/// Repeats the procedure, deleting after each full-trash round the
/// sought-color edges through that round's tuples, until a round ends
/// without a seed, finds the path, or the cap of `4km` rounds is hit.
pub fn iterated_procedure(h: &Hypergraph, coloring: &EdgeColoring, color: Color, m: usize) -> Result<AccountingReport> {
    coloring.check(h)?;
    if m == 0 {
        return Err(Error::InvalidParameters("path length m must be at least 1".into()));
    }
    let k = h.k();
    let n = h.n();
    let inc = h.incidence();
    let same = coloring.mask(color);
    let mut alive = vec![true; h.edge_count()];
    let round_cap = 4 * k * m;
    let mut rounds = Vec::new();
    let mut x_count: BTreeMap<usize, usize> = BTreeMap::new();
    let mut all_tuples: BTreeSet<Vec<Vertex>> = BTreeSet::new();
    let mut disjoint = true;
    let mut c: Vec<Vertex> = Vec::new();
    let mut path = None;
    let mut final_status = ProcedureStatus::NoSeed;
    let mut cap_hit = true;
    for _ in 0..round_cap {
        let usable: Vec<bool> = alive.iter().zip(&same).map(|(&a, &s)| a && s).collect();
        let state = run(h, &inc, &usable, m);
        final_status = state.status;
        let a = state.path.clone();
        let alive_edges = (0..h.edge_count()).filter(|&i| alive[i]).map(|i| (i, h.edge(i)));
        let (xs, ys) = split_xy(alive_edges, n, &a, &state.trash);
        for t in &state.trash {
            disjoint &= all_tuples.insert(t.clone());
        }
        let mut report = RoundReport {
            a,
            x: xs.len(),
            y: ys.len(),
            x_same_color: xs.iter().filter(|&&i| same[i]).count(),
            removed: 0,
            state,
        };
        match report.state.status {
            ProcedureStatus::TrashFull => {
                for &i in &xs {
                    *x_count.entry(i).or_default() += 1;
                }
                let tuples: BTreeSet<&[Vertex]> = report.state.trash.iter().map(Vec::as_slice).collect();
                for i in 0..h.edge_count() {
                    if usable[i] && contains_tuple(h.edge(i), &tuples) {
                        alive[i] = false;
                        report.removed += 1;
                    }
                }
                rounds.push(report);
            }
            ProcedureStatus::NoSeed => {
                c = report.state.trash.iter().flatten().copied().collect();
                c.sort_unstable();
                rounds.push(report);
                cap_hit = false;
                break;
            }
            ProcedureStatus::PathFound => {
                path = Some(report.state.path.clone());
                rounds.push(report);
                cap_hit = false;
                break;
            }
        }
    }
    let in_c = membership(n, &c);
    let z_c = h.edges().iter().filter(|e| e.iter().any(|&v| in_c[v])).count();
    let t_r = coloring.count(Color::Red);
    let t_b = coloring.count(Color::Blue);
    // only full-trash rounds enter the sums
    let full = || rounds.iter().filter(|r| r.state.status == ProcedureStatus::TrashFull);
    let sum_x = full().map(|r| r.x).sum();
    let sum_y = full().map(|r| r.y).sum();
    let mut report = AccountingReport {
        color,
        m,
        t_r,
        t_b,
        t_k: h.edge_count(),
        final_status,
        sum_x,
        sum_y,
        c,
        z_c,
        max_x_multiplicity: x_count.values().copied().max().unwrap_or(0),
        trash_disjoint_across_rounds: disjoint,
        sought_bound_holds: false,
        other_bound_holds: false,
        other_majority: false,
        round_cap,
        round_cap_hit: cap_hit,
        path,
        rounds,
    };
    report.sought_bound_holds = report.t_sought() <= sum_y + z_c;
    report.other_bound_holds = sum_x <= k * report.t_other();
    report.other_majority = report.t_other() > report.t_sought();
    Ok(report)
}

fn contains_tuple(e: &[Vertex], tuples: &BTreeSet<&[Vertex]>) -> bool {
    let mut sub = Vec::with_capacity(e.len());
    (0..e.len()).any(|skip| {
        sub.clear();
        sub.extend(e.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
        tuples.contains(sub.as_slice())
    })
}
