use std::path::PathBuf;

use clap::{Subcommand, ValueEnum};
use cubecone::mediancore::{is_median, Metric};
use serde_json::{json, Value};

use crate::common::{convex_family, edge_names, load_graph, load_median, load_sets, median_error, names, vertex};
use crate::report::{quantity, Inputs, Outcome};
use crate::{CliError, Ctx};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MetricArg {
    L1,
    Linf,
}

impl MetricArg {
    pub fn name(self) -> &'static str {
        match self {
            MetricArg::L1 => "l1",
            MetricArg::Linf => "linf",
        }
    }
}

#[derive(Subcommand)]
pub enum MedianCmd {
    /// Decide whether a graph is median; exit 1 with a witness triple if not.
    Check { graph: PathBuf },
    /// Hyperplanes, halfspaces, dimensions and transverse pairs.
    Hyperplanes { graph: PathBuf },
    /// Maximal cubes.
    Cubes { graph: PathBuf },
    /// Distance between two vertices.
    Dist {
        graph: PathBuf,
        x: String,
        y: String,
        #[arg(long, value_enum, default_value_t = MetricArg::L1)]
        metric: MetricArg,
    },
    /// The median of three vertices.
    Median { graph: PathBuf, x: String, y: String, z: String },
    /// Convexity of each set in a `sub <name> : <ids>` file; exit 1 if any fails.
    Convex { graph: PathBuf, sets: PathBuf },
    /// Gate projection onto a convex set, of a vertex or of another set.
    Project {
        graph: PathBuf,
        sets: PathBuf,
        /// The set projected onto.
        #[arg(long)]
        onto: String,
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        vertex: Option<String>,
        #[arg(long)]
        set: Option<String>,
    },
}

pub fn run(cmd: MedianCmd, _ctx: &Ctx, inputs: &mut Inputs) -> Result<(&'static str, Outcome), CliError> {
    match cmd {
        MedianCmd::Check { graph } => {
            let g = load_graph(inputs, &graph)?;
            let verdict = is_median(&g).map_err(|e| median_error(&graph, e))?;
            let witness = verdict.witness.as_ref().map_or(Value::Null, |w| {
                json!({ "triple": names(&g, &w.triple), "medians": names(&g, &w.medians) })
            });
            let results = json!({
                "median": verdict.median,
                "vertices": g.n(),
                "edges": g.m(),
                "witness": witness,
                "method": "exact",
            });
            Ok(("median check", Outcome::new(results).negative(!verdict.median)))
        }
        MedianCmd::Hyperplanes { graph } => {
            let m = load_median(inputs, &graph)?;
            let g = m.graph();
            let hyps: Vec<Value> = m
                .hyperplanes()
                .iter()
                .map(|h| {
                    let sides: Vec<Value> =
                        h.sides.iter().map(|s| names(g, &s.ones().collect::<Vec<_>>())).collect();
                    json!({
                        "id": h.id,
                        "dimension": h.dimension,
                        "dual_edges": edge_names(g, &h.dual_edges),
                        "halfspaces": sides,
                    })
                })
                .collect();
            let k = m.hyperplanes().len();
            let transverse: Vec<[usize; 2]> =
                (0..k).flat_map(|a| (a + 1..k).map(move |b| [a, b])).filter(|&[a, b]| m.is_transverse(a, b)).collect();
            let convex = m.verify_halfspaces_convex().is_ok();
            let results = json!({
                "count": k,
                "hyperplanes": hyps,
                "transverse_pairs": transverse,
                "halfspaces_convex": convex,
                "note": "dimension = largest maximal cube containing a dual edge",
            });
            Ok(("median hyperplanes", Outcome::new(results)))
        }
        MedianCmd::Cubes { graph } => {
            let m = load_median(inputs, &graph)?;
            let cubes: Vec<Value> = m
                .cubes()
                .iter()
                .map(|c| json!({ "dim": c.dim, "vertices": names(m.graph(), &c.vertices), "hyperplanes": c.hyperplanes }))
                .collect();
            let max_dim = m.cubes().iter().map(|c| c.dim).max().unwrap_or(0);
            Ok(("median cubes", Outcome::new(json!({ "count": cubes.len(), "max_dim": max_dim, "cubes": cubes }))))
        }
        MedianCmd::Dist { graph, x, y, metric } => {
            let m = load_median(inputs, &graph)?;
            let (a, b) = (vertex(m.graph(), &x)?, vertex(m.graph(), &y)?);
            let results = match metric {
                MetricArg::L1 => {
                    let sep = m.separating(a, b);
                    let bfs = m.dist(Metric::L1, a, b);
                    assert_eq!(bfs as usize, sep.len(), "distance counts separating hyperplanes");
                    json!({ "distance": quantity("l1", bfs, json!({ "separating": sep }), "exact") })
                }
                MetricArg::Linf => {
                    let (cone, chain_len) = m.linf_both(a, b);
                    let chain = m.disjoint_chain(a, b);
                    json!({
                        "distance": quantity("linf", cone, json!({ "disjoint_chain": chain }), "exact"),
                        "cube_coneoff_bfs": cone,
                        "disjoint_chain_length": chain_len,
                        "agree": cone == chain_len,
                    })
                }
            };
            Ok(("median dist", Outcome::new(results).param("metric", metric.name()).param("x", x).param("y", y)))
        }
        MedianCmd::Median { graph, x, y, z } => {
            let m = load_median(inputs, &graph)?;
            let vs = [vertex(m.graph(), &x)?, vertex(m.graph(), &y)?, vertex(m.graph(), &z)?];
            let med = m.median(vs[0], vs[1], vs[2]);
            let out = Outcome::new(json!({ "median": m.graph().name(med) }));
            Ok(("median median", out.param("x", x).param("y", y).param("z", z)))
        }
        MedianCmd::Convex { graph, sets } => {
            let m = load_median(inputs, &graph)?;
            let family = load_sets(inputs, &sets, m.graph())?;
            let mut all = true;
            let verdicts: Vec<Value> = family
                .iter()
                .map(|s| match m.convex_set(&s.vertices) {
                    Ok(_) => json!({ "set": s.name, "convex": true }),
                    Err(cubecone::mediancore::ConvexError::Violation { a, b, outside, geodesic }) => {
                        all = false;
                        let g = m.graph();
                        json!({
                            "set": s.name,
                            "convex": false,
                            "violation": { "a": g.name(a), "b": g.name(b), "outside": g.name(outside), "geodesic": names(g, &geodesic) },
                        })
                    }
                    Err(e) => {
                        all = false;
                        json!({ "set": s.name, "convex": false, "error": e.to_string() })
                    }
                })
                .collect();
            Ok(("median convex", Outcome::new(json!({ "all_convex": all, "sets": verdicts })).negative(!all)))
        }
        MedianCmd::Project { graph, sets, onto, vertex: v, set } => {
            let m = load_median(inputs, &graph)?;
            let family = load_sets(inputs, &sets, m.graph())?;
            let find = |name: &str| {
                let s = family.iter().find(|s| s.name == name).ok_or_else(|| CliError(format!("no set named `{name}`")))?;
                Ok(convex_family(&m, std::slice::from_ref(s))?.remove(0))
            };
            let c = find(&onto)?;
            let g = m.graph();
            let out = if let Some(v) = v {
                let x = vertex(g, &v)?;
                let p = m.project(&c, x);
                let separated = m.projection_separation_holds(&c, x);
                Outcome::new(json!({
                    "projection": g.name(p),
                    "distance": m.dist(Metric::L1, x, p),
                    "separation_holds": separated,
                }))
                .param("vertex", v)
            } else {
                let name = set.expect("clap requires --vertex or --set");
                let s2 = find(&name)?;
                let gate = m.project_set(&c, &s2);
                Outcome::new(json!({ "image": names(g, gate.image.vertices()), "crossing": gate.crossing })).param("set", name)
            };
            Ok(("median project", out.param("onto", onto)))
        }
    }
}
