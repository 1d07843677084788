//! Exact independence number by branch and bound.
//!
//! The hypergraph is split into connected components, each solved
//! separately. Inside a component vertices are branched in decreasing
//! degree order (include, then exclude); a vertex becomes blocked once some
//! edge through it has all of its other vertices included. The bound is
//! `|chosen| + |undecided and unblocked|`.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

pub const DEFAULT_INDEPENDENCE_BUDGET: u64 = 50_000_000;

/// A largest vertex set spanning no edge.
pub fn maximum_independent_set(h: &Hypergraph, budget: u64) -> Result<Vec<Vertex>> {
    let mut result = Vec::new();
    let mut spent = 0u64;
    for comp in h.components() {
        if comp.len() == 1 {
            result.push(comp[0]);
            continue;
        }
        let sub = h.induced(&comp)?;
        let mut solver = Solver::new(&sub, budget.saturating_sub(spent));
        solver.branch(0)?;
        spent += solver.nodes;
        result.extend(solver.best.iter().map(|&v| comp[v]));
    }
    result.sort_unstable();
    Ok(result)
}

pub fn independence_number(h: &Hypergraph, budget: u64) -> Result<usize> {
    Ok(maximum_independent_set(h, budget)?.len())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Undecided,
    In,
    Out,
}

struct Solver<'a> {
    h: &'a Hypergraph,
    inc: Vec<Vec<usize>>,
    order: Vec<Vertex>,
    state: Vec<State>,
    inside: Vec<usize>,
    chosen: Vec<Vertex>,
    best: Vec<Vertex>,
    nodes: u64,
    budget: u64,
}

impl<'a> Solver<'a> {
    fn new(h: &'a Hypergraph, budget: u64) -> Self {
        let inc = h.incidence();
        let mut order: Vec<Vertex> = (0..h.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(inc[v].len()), v));
        Solver {
            h,
            inc,
            order,
            state: vec![State::Undecided; h.n()],
            inside: vec![0; h.edge_count()],
            chosen: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            budget,
        }
    }

    fn blocked(&self, v: Vertex) -> bool {
        let k = self.h.k();
        self.inc[v].iter().any(|&e| self.inside[e] == k - 1)
    }

    fn branch(&mut self, i: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                what: "independence number",
                limit: self.budget,
            });
        }
        let open = self.order[i..]
            .iter()
            .filter(|&&v| self.state[v] == State::Undecided && !self.blocked(v))
            .count();
        if self.chosen.len() + open <= self.best.len() {
            return Ok(());
        }
        let Some(pos) = (i..self.order.len()).find(|&j| !self.blocked(self.order[j])) else {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
            return Ok(());
        };
        let v = self.order[pos];
        // everything skipped over is blocked, hence excluded
        for &w in &self.order[i..pos] {
            self.state[w] = State::Out;
        }
        self.state[v] = State::In;
        self.chosen.push(v);
        for &e in &self.inc[v] {
            self.inside[e] += 1;
        }
        self.branch(pos + 1)?;
        for &e in &self.inc[v] {
            self.inside[e] -= 1;
        }
        self.chosen.pop();
        self.state[v] = State::Out;
        self.branch(pos + 1)?;
        for &w in &self.order[i..=pos] {
            self.state[w] = State::Undecided;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        Ok(())
    }
}
