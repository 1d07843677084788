//! End-to-end run: random graph, clique hypergraph, a coloring, the
//! accounting in both colors and the sampled clique-count properties.

use serde::{Deserialize, Serialize};

use super::{clique_stats, gnp, iterated_procedure, property_check, AccountingReport, CliqueStatsReport, GnpParams, PropertyReport};
use crate::coloring::{Color, EdgeColoring};
use crate::constructions::{clique_hypergraph, ell_path, rng_from_seed};
use crate::embedding::find_copy;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "scheme")]
pub enum ColoringScheme {
    /// Independent fair coin per edge.
    Random { seed: u64 },
    /// Red iff most vertices of the edge lie below `n/2`.
    Majority,
    Given { coloring: EdgeColoring },
}

impl ColoringScheme {
    pub fn apply(&self, h: &Hypergraph) -> Result<EdgeColoring> {
        match self {
            ColoringScheme::Random { seed } => Ok(EdgeColoring::random(h, &mut rng_from_seed(*seed))),
            ColoringScheme::Majority => {
                let half = h.n() / 2;
                let colors = h
                    .edges()
                    .iter()
                    .map(|e| {
                        if 2 * e.iter().filter(|&&v| v < half).count() > e.len() {
                            Color::Red
                        } else {
                            Color::Blue
                        }
                    })
                    .collect();
                Ok(EdgeColoring::from_colors(colors))
            }
            ColoringScheme::Given { coloring } => {
                coloring.check(h)?;
                Ok(coloring.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub gnp: GnpParams,
    /// Sought path length (vertices).
    pub m: usize,
    pub coloring: ColoringScheme,
    /// Random samples for the clique-count properties.
    pub trials: usize,
    pub copy_budget: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColorRun {
    pub color: Color,
    pub accounting: AccountingReport,
    /// Whether a copy search finds the tight path in this color; `None`
    /// when it ran out of budget.
    pub copy_search_found: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub config: PipelineConfig,
    pub formula_p: f64,
    pub used_p: f64,
    pub beta: f64,
    pub alpha: f64,
    pub c: f64,
    pub nu: f64,
    pub lambda: f64,
    pub graph_edges: usize,
    pub hyperedges: usize,
    pub red_edges: usize,
    pub blue_edges: usize,
    /// Statistics for the first full-trash round found (or empty sets).
    pub stats: CliqueStatsReport,
    pub runs: Vec<ColorRun>,
    pub properties: PropertyReport,
    /// Color and vertex labels of a monochromatic tight path, if found.
    pub monochromatic_path: Option<(Color, Vec<Vertex>)>,
}

pub fn pipeline(cfg: &PipelineConfig) -> Result<PipelineReport> {
    let params = &cfg.gnp;
    if params.k < 2 {
        return Err(Error::InvalidParameters("k must be at least 2".into()));
    }
    let g = gnp(params)?;
    let h = clique_hypergraph(&g, params.k)?;
    let coloring = cfg.coloring.apply(&h)?;
    let tight = if cfg.m >= params.k {
        Some(ell_path(params.k, params.k - 1, cfg.m)?)
    } else {
        None
    };

    let mut runs = Vec::new();
    let mut adversarial: Vec<(Vec<Vertex>, Vec<Vec<Vertex>>)> = Vec::new();
    let mut monochromatic_path = None;
    for color in Color::BOTH {
        let accounting = iterated_procedure(&h, &coloring, color, cfg.m)?;
        for r in &accounting.rounds {
            if !r.state.trash.is_empty() {
                adversarial.push((r.a.clone(), r.state.trash.clone()));
            }
        }
        let copy_search_found = match (&accounting.path, &tight) {
            (Some(p), _) => {
                monochromatic_path.get_or_insert((color, p.clone()));
                Some(true)
            }
            (None, Some(t)) => match find_copy(t, &h, Some((&coloring, color)), cfg.copy_budget) {
                Ok(found) => {
                    if let Some(e) = &found {
                        monochromatic_path.get_or_insert((color, e.map.clone()));
                    }
                    Some(found.is_some())
                }
                Err(e) if e.is_budget() => None,
                Err(e) => return Err(e),
            },
            (None, None) => Some(false),
        };
        runs.push(ColorRun {
            color,
            accounting,
            copy_search_found,
        });
    }
    let (a, b) = adversarial.first().cloned().unwrap_or_default();
    let c: Vec<Vertex> = b.iter().flatten().copied().collect();
    let stats = clique_stats(&g, params.k, &a, &b, &c)?;
    let properties = property_check(&g, params, cfg.trials, params.seed ^ 0x5eed, &adversarial)?;
    Ok(PipelineReport {
        config: cfg.clone(),
        formula_p: params.formula_p(),
        used_p: params.effective_p(),
        beta: params.beta(),
        alpha: params.alpha(),
        c: params.c(),
        nu: params.nu(),
        lambda: params.lambda(),
        graph_edges: g.edge_count(),
        hyperedges: h.edge_count(),
        red_edges: coloring.count(Color::Red),
        blue_edges: coloring.count(Color::Blue),
        stats,
        runs,
        properties,
        monochromatic_path,
    })
}
