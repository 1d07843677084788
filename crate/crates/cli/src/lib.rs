//! Seeded experiment runner over the `hyperramsey` library.
//!
//! Every subcommand reads and writes the JSON hypergraph and coloring
//! formats and wraps its result in a deterministic report envelope.

pub mod audit;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperramsey::arrow::{arrows, clique_lift_coloring, degree_threshold_coloring, vhigh_vlow_coloring, ArrowOptions, ArrowResult};
use hyperramsey::constructions::{
    binary_three_tree, blowup_path_host, clique, clique_hypergraph, ell_path, gadget, gadget_family, greedy_partial_steiner,
    random_ell_tree, star_tree, GadgetSpec, SteinerParams, DEFAULT_FAMILY_TRIES,
};
use hyperramsey::embedding::{find_copy, greedy_tree_embed};
use hyperramsey::randomlab::{pipeline, ColoringScheme, GnpParams, PipelineConfig, PipelineReport};
use hyperramsey::search::{ramsey_number_small, size_ramsey_exact_tiny_with_stats, size_ramsey_upper, Strategy, UpperConfig};
use hyperramsey::{Color, EdgeColoring, Hypergraph};

use crate::report::{emit, read_json, to_pretty, Envelope};

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

#[derive(Debug, Parser, Serialize)]
#[command(name = "hyperramsey", version, about = "Size-Ramsey experiments on k-uniform hypergraphs")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "RF_SEED")]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build a hypergraph and write it as JSON.
    Construct(ConstructArgs),
    /// Decide whether every 2-coloring of the host has a monochromatic pattern.
    Arrows(ArrowsArgs),
    /// Find one copy of a pattern in a host.
    Embed(EmbedArgs),
    /// Least clique order that arrows the pattern.
    Ramsey(RamseyArgs),
    /// Bounds on the size-Ramsey number of a pattern.
    #[command(subcommand)]
    SizeRamsey(SizeRamseyCommand),
    /// Produce an edge coloring of a host.
    Color(ColorArgs),
    /// Random-graph experiments.
    #[command(subcommand)]
    Randomlab(RandomlabCommand),
    /// Automorphisms, isomorphism and independence of gadget families.
    GadgetAudit(AuditArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: ConstructKind,
    /// Output file for the hypergraph (stdout if absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write a report with construction metadata.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructKind {
    EllPath {
        #[arg(long)]
        k: usize,
        #[arg(long = "l", visible_alias = "ell")]
        ell: usize,
        #[arg(long)]
        n: usize,
    },
    Clique {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    EllTree {
        #[arg(long)]
        k: usize,
        #[arg(long = "l", visible_alias = "ell")]
        ell: usize,
        #[arg(long)]
        n: usize,
    },
    StarTree {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    BinaryTree {
        #[arg(long)]
        t: usize,
    },
    Gadget {
        #[arg(long)]
        t: usize,
        /// Leaf visiting order, comma separated; identity if absent.
        #[arg(long, value_delimiter = ',')]
        perm: Option<Vec<usize>>,
    },
    GadgetFamily {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        q: usize,
    },
    Steiner {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    Blowup {
        /// Graph (2-uniform) to blow up.
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long = "l", visible_alias = "ell")]
        ell: usize,
    },
    CliqueHypergraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct ArrowsArgs {
    #[arg(long)]
    pub host: PathBuf,
    #[arg(long)]
    pub pattern: PathBuf,
    /// Search-tree node budget.
    #[arg(long, default_value_t = hyperramsey::DEFAULT_ARROWS_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = hyperramsey::DEFAULT_COPY_BUDGET)]
    pub copy_budget: u64,
    /// Only check complete colorings.
    #[arg(long)]
    pub no_prune: bool,
    /// Write the certificate coloring here when the host does not arrow.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct EmbedArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub host: PathBuf,
    #[arg(long, requires = "color")]
    pub coloring: Option<PathBuf>,
    #[arg(long, requires = "coloring")]
    pub color: Option<String>,
    /// Embed the pattern as an ℓ-tree with the greedy procedure.
    #[arg(long, conflicts_with = "coloring")]
    pub greedy_ell: Option<usize>,
    #[arg(long, default_value_t = hyperramsey::DEFAULT_COPY_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct RamseyArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub cap: usize,
    #[arg(long, default_value_t = hyperramsey::DEFAULT_ARROWS_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SizeRamseyCommand {
    Upper {
        #[arg(long)]
        pattern: PathBuf,
        /// Strategies to run, comma separated; all if absent.
        #[arg(long, value_delimiter = ',', value_parser = parse_strategy)]
        strategies: Option<Vec<Strategy>>,
        #[arg(long, default_value_t = 8)]
        ramsey_cap: usize,
        #[arg(long, default_value_t = 20)]
        max_host_edges: usize,
        #[arg(long, default_value_t = 20)]
        random_tries: usize,
        #[arg(long, default_value_t = hyperramsey::DEFAULT_ARROWS_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Exact {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        vcap: usize,
        #[arg(long)]
        ecap: usize,
        #[arg(long, default_value_t = hyperramsey::DEFAULT_ARROWS_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| format!("unknown strategy {s:?} (clique-host, steiner-host, blowup-host, random-host)"))
}

#[derive(Debug, Args, Serialize)]
pub struct ColorArgs {
    #[command(subcommand)]
    pub scheme: ColorScheme,
    /// Output file for the coloring (stdout if absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write a report with the scheme's details.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColorScheme {
    /// Red iff every vertex of the edge has low degree.
    DegreeThreshold {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Lift a coloring of the contracted host back to the host.
    Lift {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        v: usize,
        /// Coloring of the contracted host.
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Blue on high-degree vertices and selected gadget roots, Red elsewhere.
    Vhigh {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = hyperramsey::DEFAULT_COPY_BUDGET)]
        budget: u64,
    },
    Random {
        #[arg(long)]
        host: PathBuf,
    },
    Majority {
        #[arg(long)]
        host: PathBuf,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RandomlabCommand {
    Pipeline(PipelineArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeArg {
    Random,
    Majority,
}

#[derive(Debug, Args, Serialize)]
pub struct PipelineArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Edge probability; the formula value is used if absent.
    #[arg(long)]
    pub p: Option<f64>,
    /// Sought tight path length.
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0.6)]
    pub d: f64,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Coloring file aligned with the clique hypergraph.
    #[arg(long, conflicts_with = "coloring_scheme")]
    pub coloring: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub coloring_scheme: Option<SchemeArg>,
    #[arg(long, default_value_t = hyperramsey::DEFAULT_COPY_BUDGET)]
    pub copy_budget: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-round accounting table.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct AuditArgs {
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = 2)]
    pub q: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Arrow verdict as written to reports.
#[derive(Debug, Serialize)]
struct ArrowsOutcome {
    result: ArrowResult,
    nodes: u64,
    certificate: Option<EdgeColoring>,
}

/// Runs one parsed command, writing to `out` whatever is not sent to a
/// file. Returns the exit code for outcomes that are not errors.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let seed = cli.seed.unwrap_or(0);
    match &cli.command {
        Command::Construct(a) => construct(a, cli, seed, out),
        Command::Arrows(a) => {
            let host = load_graph(&a.host)?;
            let pattern = load_graph(&a.pattern)?;
            let opts = ArrowOptions {
                node_budget: a.budget,
                copy_budget: a.copy_budget,
                prune: !a.no_prune,
            };
            let v = arrows(&host, &pattern, opts)?;
            if let (Some(path), Some(cert)) = (&a.certificate, &v.certificate) {
                emit(&compact(cert)?, Some(path), out)?;
            }
            let code = if v.result == ArrowResult::Unknown { EXIT_UNKNOWN } else { EXIT_OK };
            let outcome = ArrowsOutcome {
                result: v.result,
                nodes: v.nodes,
                certificate: v.certificate,
            };
            emit(&to_pretty(&Envelope::new("arrows", None, cli, outcome))?, a.out.as_deref(), out)?;
            Ok(code)
        }
        Command::Embed(a) => {
            let pattern = load_graph(&a.pattern)?;
            let host = load_graph(&a.host)?;
            let found = if let Some(ell) = a.greedy_ell {
                let tree = hyperramsey::constructions::EllTree::from_ordered(pattern, ell)?;
                match greedy_tree_embed(&tree, &host) {
                    Ok(e) => Some(e),
                    Err(hyperramsey::Error::EmbeddingStuck { .. }) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                let coloring = match &a.coloring {
                    Some(p) => Some(read_json::<EdgeColoring>(p)?),
                    None => None,
                };
                let color: Option<Color> = a.color.as_deref().map(str::parse).transpose()?;
                let filter = coloring.as_ref().zip(color);
                find_copy(&pattern, &host, filter, a.budget)?
            };
            match found {
                Some(e) => writeln!(out, "{}", serde_json::to_string(&e.map)?)?,
                None => writeln!(out, "none")?,
            }
            Ok(EXIT_OK)
        }
        Command::Ramsey(a) => {
            let pattern = load_graph(&a.pattern)?;
            let r = ramsey_number_small(&pattern, a.cap, ArrowOptions::with_budget(a.budget))?;
            #[derive(Serialize)]
            struct Outcome {
                ramsey_number: Option<usize>,
            }
            emit(
                &to_pretty(&Envelope::new("ramsey", None, cli, Outcome { ramsey_number: r }))?,
                a.out.as_deref(),
                out,
            )?;
            Ok(if r.is_some() { EXIT_OK } else { EXIT_UNKNOWN })
        }
        Command::SizeRamsey(sr) => size_ramsey(sr, cli, seed, out),
        Command::Color(a) => color(a, cli, seed, out),
        Command::Randomlab(RandomlabCommand::Pipeline(a)) => {
            let report = run_pipeline(a, seed)?;
            if let Some(path) = &a.csv {
                write_rounds_csv(&report, path)?;
            }
            emit(
                &to_pretty(&Envelope::new("randomlab pipeline", Some(seed), cli, &report))?,
                a.out.as_deref(),
                out,
            )?;
            Ok(EXIT_OK)
        }
        Command::GadgetAudit(a) => {
            let result = audit::gadget_audit(a.t, a.q, seed)?;
            emit(
                &to_pretty(&Envelope::new("gadget-audit", Some(seed), cli, result))?,
                a.out.as_deref(),
                out,
            )?;
            Ok(EXIT_OK)
        }
    }
}

/// Maps an error to its exit code: budget exhaustion and failed searches
/// give [`EXIT_UNKNOWN`], everything else [`EXIT_INPUT`].
pub fn exit_code_for(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<hyperramsey::Error>() {
            if e.is_budget() || matches!(e, hyperramsey::Error::NoStrategySucceeded { .. }) {
                return EXIT_UNKNOWN;
            }
        }
    }
    EXIT_INPUT
}

pub fn load_graph(path: &Path) -> Result<Hypergraph> {
    read_json(path)
}

fn compact<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

fn construct(a: &ConstructArgs, cli: &Cli, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let mut meta = serde_json::Map::new();
    let graph = match &a.kind {
        ConstructKind::EllPath { k, ell, n } => ell_path(*k, *ell, *n)?,
        ConstructKind::Clique { k, n } => clique(*k, *n)?,
        ConstructKind::EllTree { k, ell, n } => {
            let tree = random_ell_tree(*k, *ell, *n, seed)?;
            meta.insert("order".into(), serde_json::to_value(&tree.order)?);
            tree.graph
        }
        ConstructKind::StarTree { k, n } => star_tree(*k, *n)?,
        ConstructKind::BinaryTree { t } => binary_three_tree(*t)?,
        ConstructKind::Gadget { t, perm } => {
            let spec = match perm {
                Some(p) => GadgetSpec {
                    t: *t,
                    leaf_permutation: p.clone(),
                },
                None => GadgetSpec::identity(*t),
            };
            let g = gadget(&spec)?;
            meta.insert("root_edge".into(), serde_json::to_value(&g.root_edge)?);
            g.graph
        }
        ConstructKind::GadgetFamily { t, q } => {
            let fam = gadget_family(*t, *q, seed, DEFAULT_FAMILY_TRIES)?;
            let specs: Vec<&GadgetSpec> = fam.gadgets.iter().map(|g| &g.spec).collect();
            meta.insert("gadgets".into(), serde_json::to_value(specs)?);
            meta.insert("root_edges".into(), serde_json::to_value(&fam.union_root_edges)?);
            fam.union
        }
        ConstructKind::Steiner { t, k, n } => {
            let p = greedy_partial_steiner(&SteinerParams {
                t: *t,
                k: *k,
                n: *n,
                seed,
            })?;
            meta.insert("density".into(), serde_json::to_value(p.density)?);
            p.graph
        }
        ConstructKind::Blowup { graph, k, ell } => blowup_path_host(&load_graph(graph)?, *k, *ell)?,
        ConstructKind::CliqueHypergraph { graph, k } => clique_hypergraph(&load_graph(graph)?, *k)?,
    };
    emit(&compact(&graph)?, a.out.as_deref(), out)?;
    if let Some(path) = &a.report {
        meta.insert("edges".into(), graph.edge_count().into());
        meta.insert("vertices".into(), graph.n().into());
        emit(&to_pretty(&Envelope::new("construct", Some(seed), cli, meta))?, Some(path), out)?;
    }
    Ok(EXIT_OK)
}

fn size_ramsey(sr: &SizeRamseyCommand, cli: &Cli, seed: u64, out: &mut dyn Write) -> Result<i32> {
    #[derive(Serialize)]
    struct Outcome<B, S> {
        bound: B,
        verified: bool,
        stats: Option<S>,
    }
    match sr {
        SizeRamseyCommand::Upper {
            pattern,
            strategies,
            ramsey_cap,
            max_host_edges,
            random_tries,
            budget,
            out: path,
        } => {
            let g = load_graph(pattern)?;
            let cfg = UpperConfig {
                arrow: ArrowOptions::with_budget(*budget),
                seed,
                ramsey_cap: *ramsey_cap,
                max_host_edges: *max_host_edges,
                random_tries: *random_tries,
            };
            let strategies = strategies.clone().unwrap_or_else(|| Strategy::ALL.to_vec());
            let bound = size_ramsey_upper(&g, &strategies, &cfg)?;
            let verified = bound.verify(cfg.arrow)?;
            let outcome: Outcome<_, ()> = Outcome {
                bound,
                verified,
                stats: None,
            };
            emit(&to_pretty(&Envelope::new("size-ramsey upper", Some(seed), cli, outcome))?, path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        SizeRamseyCommand::Exact {
            pattern,
            vcap,
            ecap,
            budget,
            out: path,
        } => {
            let g = load_graph(pattern)?;
            let opts = ArrowOptions::with_budget(*budget);
            let (bound, stats) = size_ramsey_exact_tiny_with_stats(&g, *vcap, *ecap, opts)?;
            let verified = bound.verify(opts)?;
            let outcome = Outcome {
                bound,
                verified,
                stats: Some(stats),
            };
            emit(&to_pretty(&Envelope::new("size-ramsey exact", None, cli, outcome))?, path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
    }
}

fn color(a: &ColorArgs, cli: &Cli, seed: u64, out: &mut dyn Write) -> Result<i32> {
    let (coloring, details, used_seed) = match &a.scheme {
        ColorScheme::DegreeThreshold { host, n } => {
            let h = load_graph(host)?;
            (degree_threshold_coloring(&h, h.k(), *n), serde_json::Value::Null, None)
        }
        ColorScheme::Lift { host, u, v, base, n } => {
            let h = load_graph(host)?;
            let base: EdgeColoring = read_json(base)?;
            let lifted = clique_lift_coloring(&h, *u, *v, &base, *n)?;
            let details = serde_json::json!({
                "partition": lifted.partition,
                "degree_warning": lifted.degree_warning,
            });
            (lifted.coloring, details, None)
        }
        ColorScheme::Vhigh { host, d, t, q, budget } => {
            let h = load_graph(host)?;
            let fam = gadget_family(*t, *q, seed, DEFAULT_FAMILY_TRIES)?;
            let (c, report) = vhigh_vlow_coloring(&h, *d, &fam, *budget)?;
            (c, serde_json::to_value(report)?, Some(seed))
        }
        ColorScheme::Random { host } => {
            let h = load_graph(host)?;
            (ColoringScheme::Random { seed }.apply(&h)?, serde_json::Value::Null, Some(seed))
        }
        ColorScheme::Majority { host } => {
            let h = load_graph(host)?;
            (ColoringScheme::Majority.apply(&h)?, serde_json::Value::Null, None)
        }
    };
    emit(&compact(&coloring)?, a.out.as_deref(), out)?;
    if let Some(path) = &a.report {
        let result = serde_json::json!({
            "red": coloring.count(Color::Red),
            "blue": coloring.count(Color::Blue),
            "details": details,
        });
        emit(&to_pretty(&Envelope::new("color", used_seed, cli, result))?, Some(path), out)?;
    }
    Ok(EXIT_OK)
}

fn run_pipeline(a: &PipelineArgs, seed: u64) -> Result<PipelineReport> {
    let mut gnp = GnpParams::new(a.n, a.k, seed);
    gnp.p = a.p;
    gnp.d = a.d;
    gnp.c = a.c;
    gnp.beta = a.beta;
    gnp.alpha = a.alpha;
    let coloring = match (&a.coloring, a.coloring_scheme) {
        (Some(path), _) => ColoringScheme::Given {
            coloring: read_json(path)?,
        },
        (None, Some(SchemeArg::Majority)) => ColoringScheme::Majority,
        (None, _) => ColoringScheme::Random { seed },
    };
    if a.m == 0 {
        bail!("--m must be at least 1");
    }
    let cfg = PipelineConfig {
        gnp,
        m: a.m,
        coloring,
        trials: a.trials,
        copy_budget: a.copy_budget,
    };
    Ok(pipeline(&cfg)?)
}

#[derive(Serialize)]
struct RoundRow {
    color: Color,
    round: usize,
    status: String,
    path_len: usize,
    trash_tuples: usize,
    a_size: usize,
    x: usize,
    y: usize,
    x_same_color: usize,
    removed: usize,
}

fn write_rounds_csv(report: &PipelineReport, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    for run in &report.runs {
        for (i, r) in run.accounting.rounds.iter().enumerate() {
            w.serialize(RoundRow {
                color: run.color,
                round: i,
                status: serde_json::to_value(r.state.status)?.as_str().unwrap_or_default().to_string(),
                path_len: r.state.path.len(),
                trash_tuples: r.state.trash.len(),
                a_size: r.a.len(),
                x: r.x,
                y: r.y,
                x_same_color: r.x_same_color,
                removed: r.removed,
            })?;
        }
    }
    w.flush()?;
    Ok(())
}
