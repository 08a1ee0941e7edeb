use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use cubecone::graph::NamedSet;
use cubecone::hypdiag::{
    bigon_thinness, cone_off, coneoff_bigon_bound, contracting, cycle_probe, delta, fineness_certificate, max_grid,
    max_thick_rectangle, rectangle_diameter_bound, sandwich_holds, ConeKind, ConeOffGraph, DeltaOptions, Grid, Provenance,
};
use cubecone::mediancore::{MedianGraph, Metric};
use serde_json::{json, Value};

use crate::common::{convex_family, load_graph, load_median, load_sets, method, names, pass, vertex};
use crate::median::MetricArg;
use crate::report::{quantity, Inputs, Outcome};
use crate::{CliError, Ctx};

#[derive(Subcommand)]
pub enum DiagCmd {
    /// Maximal grids of hyperplanes and the grid thinness.
    Grid {
        graph: PathBuf,
        /// Search node budget; overrides --seed-cap.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Thickest flat rectangle.
    Rectangle {
        graph: PathBuf,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Four-point hyperbolicity constant.
    Delta {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = MetricArg::L1)]
        metric: MetricArg,
        /// Largest vertex count scanned exhaustively.
        #[arg(long, default_value_t = 200)]
        max_exact: usize,
        /// Above --max-exact, scan this many random 4-tuples instead.
        #[arg(long)]
        sample: Option<u64>,
        #[arg(long, default_value_t = 0)]
        sample_seed: u64,
    },
    /// Largest Hausdorff distance between geodesics with common endpoints.
    Bigon {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = MetricArg::L1)]
        metric: MetricArg,
        #[arg(long, default_value_t = 400)]
        max_vertices: usize,
    },
    /// n-contracting hyperplanes and the contracting graph.
    Contracting {
        graph: PathBuf,
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Fineness data for a family of convex sets, with an optional cycle probe.
    Fineness {
        graph: PathBuf,
        sets: PathBuf,
        /// Count simple cycles of this length in the apex cone-off.
        #[arg(long, requires = "edge")]
        probe_length: Option<usize>,
        /// The edge the probe cycles pass through.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        edge: Option<Vec<String>>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Clique,
    Apex,
}

#[derive(Args)]
pub struct ConeoffArgs {
    graph: PathBuf,
    sets: PathBuf,
    #[arg(long, value_enum, default_value_t = KindArg::Clique)]
    kind: KindArg,
    /// Also check that base bigons are max(2L, C)-thin in the cone-off.
    #[arg(long, value_name = "L")]
    bound: Option<usize>,
    /// Write the derived graph here in the graph text format.
    #[arg(long)]
    export: Option<PathBuf>,
    #[arg(long)]
    cap: Option<u64>,
}

pub fn grid_json(grid: &Grid) -> Value {
    json!({ "verticals": grid.verticals, "horizontals": grid.horizontals })
}

fn kind_name(k: KindArg) -> &'static str {
    match k {
        KindArg::Clique => "clique",
        KindArg::Apex => "apex",
    }
}

pub fn run(cmd: DiagCmd, ctx: &Ctx, inputs: &mut Inputs) -> Result<(&'static str, Outcome), CliError> {
    match cmd {
        DiagCmd::Grid { graph, cap } => {
            let m = load_median(inputs, &graph)?;
            let cap = cap.unwrap_or(ctx.seed_cap);
            let r = max_grid(&m, cap);
            let witness = r.witness.as_ref().map_or(Value::Null, grid_json);
            let pareto: Vec<Value> = r
                .pareto
                .iter()
                .zip(&r.witnesses)
                .map(|(&(p, q), g)| json!({ "p": p, "q": q, "grid": grid_json(g) }))
                .collect();
            let results = json!({
                "thinness": quantity("grid_thinness", r.thinness, witness, method(r.exact)),
                "pareto": pareto,
                "nodes": r.nodes,
            });
            Ok(("diag grid", Outcome::new(results).param("cap", cap)))
        }
        DiagCmd::Rectangle { graph, cap } => {
            let m = load_median(inputs, &graph)?;
            let cap = cap.unwrap_or(ctx.seed_cap);
            let r = max_thick_rectangle(&m, cap);
            let witness = r.witness.as_ref().map_or(Value::Null, |w| {
                let rows: Vec<Value> =
                    (0..=w.a).map(|i| names(m.graph(), &(0..=w.b).map(|j| w.at(i, j)).collect::<Vec<_>>())).collect();
                json!({ "a": w.a, "b": w.b, "rows": rows, "isometric": w.is_isometric(m.distances()) })
            });
            let results = json!({
                "thickness": quantity("rectangle_thickness", r.thickness, witness, method(r.exact)),
                "nodes": r.nodes,
            });
            Ok(("diag rectangle", Outcome::new(results).param("cap", cap)))
        }
        DiagCmd::Delta { graph, metric, max_exact, sample, sample_seed } => {
            let opts = DeltaOptions { max_exact, sampling: sample.map(|s| (s, sample_seed)) };
            let (report, g) = match metric {
                MetricArg::L1 => {
                    let g = load_graph(inputs, &graph)?;
                    (delta(&g.distances(), opts), g)
                }
                MetricArg::Linf => {
                    let m = load_median(inputs, &graph)?;
                    (delta(m.linf_matrix(), opts), m.graph().clone())
                }
            };
            let r = report.map_err(|e| CliError(e.to_string()))?;
            let witness = r.witness.map_or(Value::Null, |w| names(&g, &w));
            let results = json!({
                "delta": quantity("delta", r.value(), witness, method(r.exact)),
                "twice_delta": r.twice_delta,
            });
            let mut out = Outcome::new(results).param("metric", metric.name()).param("max_exact", max_exact);
            if let Some(s) = sample {
                out = out.param("sample", s).param("sample_seed", sample_seed);
            }
            Ok(("diag delta", out))
        }
        DiagCmd::Bigon { graph, metric, max_vertices } => {
            let (report, g) = match metric {
                MetricArg::L1 => {
                    let g = load_graph(inputs, &graph)?;
                    let d = g.distances();
                    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
                    (bigon_thinness(&adj, &d, &d, max_vertices), g)
                }
                MetricArg::Linf => {
                    let m = load_median(inputs, &graph)?;
                    let d = m.metric_matrix(Metric::LInf);
                    (bigon_thinness(&m.cube_coneoff(), d, d, max_vertices), m.graph().clone())
                }
            };
            let r = report.map_err(|e| CliError(e.to_string()))?;
            let witness = r.witness.as_ref().map_or(Value::Null, |w| {
                json!({
                    "x": g.name(w.x),
                    "y": g.name(w.y),
                    "far": g.name(w.far),
                    "first": names(&g, &w.first),
                    "second": names(&g, &w.second),
                })
            });
            let results = json!({ "thinness": quantity("bigon_thinness", r.thinness, witness, "exact") });
            Ok(("diag bigon", Outcome::new(results).param("metric", metric.name())))
        }
        DiagCmd::Contracting { graph, n, cap } => {
            if n == 0 {
                return Err(CliError("n must be at least 1".into()));
            }
            let m = load_median(inputs, &graph)?;
            let cap = cap.unwrap_or(ctx.seed_cap);
            let r = contracting(&m, n, cap);
            let verdicts: Vec<Value> = r
                .verdicts
                .iter()
                .map(|v| {
                    json!({
                        "hyperplane": v.hyperplane,
                        "dimension": v.dimension,
                        "contracting": v.contracting,
                        "grid": v.grid.as_ref().map_or(Value::Null, grid_json),
                        "method": method(v.exact),
                    })
                })
                .collect();
            let bound = rectangle_diameter_bound(&m, &r.gamma, n as u32, cap);
            let results = json!({
                "verdicts": verdicts,
                "contracting_count": r.verdicts.iter().filter(|v| v.contracting).count(),
                "gamma": { "vertices": r.gamma.graph.n(), "edges": r.gamma.graph.m(), "added_edges": r.gamma.provenance.len() },
                "rectangle_diameter": {
                    "side": bound.side,
                    "diameter": bound.diameter,
                    "bound": bound.bound,
                    "check": pass(bound.holds),
                    "method": method(bound.exact),
                },
                "note": "dimension = largest maximal cube containing a dual edge",
            });
            Ok(("diag contracting", Outcome::new(results).param("n", n).param("cap", cap)))
        }
        DiagCmd::Fineness { graph, sets, probe_length, edge } => {
            let m = load_median(inputs, &graph)?;
            let family = load_sets(inputs, &sets, m.graph())?;
            let convex = convex_family(&m, &family)?;
            let cert = fineness_certificate(&m, &convex);
            let g = m.graph();
            let mut results = json!({
                "multiplicity": quantity(
                    "edge_multiplicity",
                    cert.multiplicity,
                    cert.multiplicity_edge.map_or(Value::Null, |(u, v)| names(g, &[u, v])),
                    "exact",
                ),
                "common_crossings": quantity(
                    "common_crossings",
                    cert.common_crossings,
                    cert.witness_pair.map_or(Value::Null, |(i, j)| json!([family[i].name, family[j].name])),
                    "exact",
                ),
            });
            let mut out = Outcome::new(Value::Null);
            if let (Some(len), Some(e)) = (probe_length, edge) {
                let (u, v) = (vertex(g, &e[0])?, vertex(g, &e[1])?);
                let apex = cone_off(&m, &family, ConeKind::Apex).map_err(|e| CliError(e.to_string()))?;
                let p = cycle_probe(&apex.graph, u, v, len).map_err(|e| CliError(e.to_string()))?;
                results["probe"] = quantity("simple_cycles", p.count, json!([e[0], e[1]]), method(!p.capped));
                out = out.param("probe_length", len);
            }
            out.results = results;
            Ok(("diag fineness", out))
        }
    }
}

fn cone(m: &MedianGraph, family: &[NamedSet], kind: ConeKind) -> Result<ConeOffGraph, CliError> {
    cone_off(m, family, kind).map_err(|e| CliError(e.to_string()))
}

pub fn coneoff(a: ConeoffArgs, ctx: &Ctx, inputs: &mut Inputs) -> Result<(&'static str, Outcome), CliError> {
    let m = load_median(inputs, &a.graph)?;
    let family = load_sets(inputs, &a.sets, m.graph())?;
    convex_family(&m, &family)?;
    let clique = cone(&m, &family, ConeKind::Clique)?;
    let apex = cone(&m, &family, ConeKind::Apex)?;
    let y = match a.kind {
        KindArg::Clique => &clique,
        KindArg::Apex => &apex,
    };
    let g = &y.graph;
    let provenance: Vec<Value> = y
        .provenance
        .iter()
        .map(|p| match *p {
            Provenance::Edge { u, v, member } => json!({ "edge": [g.name(u), g.name(v)], "member": y.member_names[member] }),
            Provenance::Apex { apex, member } => json!({ "apex": g.name(apex), "member": y.member_names[member] }),
        })
        .collect();
    let d = y.base_distances();
    let mut results = json!({
        "vertices": g.n(),
        "edges": g.m(),
        "base_diameter": quantity("coneoff_diameter", d.diameter(), Value::Null, "exact"),
        "provenance": provenance,
        "sandwich": pass(sandwich_holds(&clique, &apex)),
    });
    let mut out = Outcome::new(Value::Null).param("kind", kind_name(a.kind));
    if let Some(l) = a.bound {
        let cap = a.cap.unwrap_or(ctx.seed_cap);
        let b = coneoff_bigon_bound(&m, y, l, cap, 400).map_err(|e| CliError(e.to_string()))?;
        results["bigon_bound"] = json!({
            "l": b.l,
            "c": b.c,
            "thinness": b.thinness,
            "bound": b.c.max(2 * b.l as u32),
            "check": pass(b.holds),
            "method": method(b.exact),
        });
        out = out.param("bound", l).param("cap", cap).negative(!b.holds);
    }
    if let Some(path) = &a.export {
        std::fs::write(path, g.to_text()).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        results["exported"] = json!(path.display().to_string());
    }
    out.results = results;
    Ok(("coneoff", out))
}
