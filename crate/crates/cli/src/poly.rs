use std::path::{Path, PathBuf};

use clap::Subcommand;
use cubecone::hypdiag::max_grid;
use cubecone::polygonal::{
    classify_maximal_cubes, dual_cube_complex, dual_projection, hypergraphs, lemma_intersection_check, parse_complex,
    polygon_separation_check, sc_check, separation_transfer, wall_crossings, CubeTag, DualCubeComplex, PolygonalComplex,
    Wall, XPoint, DEFAULT_MAX_DUAL,
};
use serde_json::{json, Value};

use crate::common::{method, pass};
use crate::report::{quantity, Inputs, Outcome};
use crate::sc::parse_ratio;
use crate::{CliError, Ctx};

#[derive(Subcommand)]
pub enum PolyCmd {
    /// Check polygons and build vertex links; exit 1 if the complex is invalid.
    Validate { file: PathBuf },
    /// C'(lambda), C(n) and T(n); exit 1 if any fails.
    Sc {
        file: PathBuf,
        #[arg(long, default_value = "1/4")]
        lambda: String,
        #[arg(long = "c", default_value_t = 4)]
        n_c: usize,
        #[arg(long = "t", default_value_t = 4)]
        n_t: usize,
    },
    /// Hypergraphs, their hypercarriers and sides.
    Walls { file: PathBuf },
    /// The dual cube complex of the wallspace.
    Dual {
        file: PathBuf,
        /// Write the dual graph here in the graph text format.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Write `edge-wall u v wall` lines here.
        #[arg(long)]
        walls_out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_DUAL)]
        max_vertices: usize,
    },
    /// Tag each maximal cube of the dual; exit 1 if one is unmatched.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_DUAL)]
        max_vertices: usize,
    },
    /// Project the dual back to the complex and check separation transfer.
    Project {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        /// Largest pairwise-intersecting polygon family checked for a common vertex.
        #[arg(long, default_value_t = 5)]
        family_size: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DUAL)]
        max_vertices: usize,
    },
}

fn load(inputs: &mut Inputs, path: &Path) -> Result<PolygonalComplex, CliError> {
    let text = inputs.read(path)?;
    let raw = parse_complex(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    raw.validate().map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn build(x: &PolygonalComplex, max_vertices: usize) -> Result<(Vec<Wall>, DualCubeComplex), CliError> {
    let walls = hypergraphs(x);
    let dual = dual_cube_complex(x, &walls, max_vertices).map_err(|e| CliError(e.to_string()))?;
    Ok((walls, dual))
}

fn vnames(x: &PolygonalComplex, vs: &[usize]) -> Value {
    vs.iter().map(|&v| Value::from(x.vertices[v].as_str())).collect()
}

fn enames(x: &PolygonalComplex, es: &[usize]) -> Value {
    es.iter().map(|&e| Value::from(x.edges[e].name.as_str())).collect()
}

fn pnames(x: &PolygonalComplex, ps: &[usize]) -> Value {
    ps.iter().map(|&p| Value::from(x.polygons[p].name.as_str())).collect()
}

fn point(x: &PolygonalComplex, p: &XPoint) -> Value {
    match p {
        XPoint::Vertex(v) => json!({ "vertex": x.vertices[*v] }),
        XPoint::EdgeMidpoint(e) => json!({ "edge_midpoint": x.edges[*e].name }),
        XPoint::SegmentMidpoint(path) => json!({ "segment_midpoint": vnames(x, path) }),
        XPoint::PolygonCenter(q) => json!({ "polygon_center": x.polygons[*q].name }),
    }
}

pub fn run(cmd: PolyCmd, ctx: &Ctx, inputs: &mut Inputs) -> Result<(&'static str, Outcome), CliError> {
    match cmd {
        PolyCmd::Validate { file } => {
            let text = inputs.read(&file)?;
            let raw = parse_complex(&text).map_err(|e| CliError(format!("{}: {e}", file.display())))?;
            let out = match raw.validate() {
                Ok(x) => {
                    let links: Vec<Value> = (0..x.n())
                        .map(|v| {
                            let l = &x.links[v];
                            json!({ "vertex": x.vertices[v], "nodes": l.nodes.len(), "edges": l.edges.len() })
                        })
                        .collect();
                    let sides: Vec<Value> =
                        x.polygons.iter().map(|p| json!({ "polygon": p.name, "sides": p.len() })).collect();
                    Outcome::new(json!({
                        "valid": true,
                        "vertices": x.n(),
                        "edges": x.edges.len(),
                        "polygons": sides,
                        "links": links,
                    }))
                }
                Err(e) => Outcome::new(json!({ "valid": false, "error": e.to_string() })).negative(true),
            };
            Ok(("poly validate", out))
        }
        PolyCmd::Sc { file, lambda, n_c, n_t } => {
            let lam = parse_ratio(&lambda)?;
            let x = load(inputs, &file)?;
            let v = sc_check(&x, lam, n_c, n_t);
            let pieces: Vec<Value> = v
                .pieces
                .iter()
                .map(|p| json!({ "polygons": pnames(&x, &[p.polygons.0, p.polygons.1]), "edges": enames(&x, &p.edges), "length": p.len() }))
                .collect();
            let cw = v.cprime.witness.map_or(Value::Null, |(k, p)| {
                json!({ "piece": enames(&x, &v.pieces[k].edges), "polygon": x.polygons[p].name, "sides": x.polygons[p].len() })
            });
            let covers: Vec<Value> = x
                .polygons
                .iter()
                .zip(&v.cover.min_cover)
                .map(|(p, c)| json!({ "polygon": p.name, "min_cover": c }))
                .collect();
            let covw = v.cover.witness.as_ref().map_or(Value::Null, |(p, ks)| {
                let cover: Vec<Value> = ks.iter().map(|&k| enames(&x, &v.pieces[k].edges)).collect();
                json!({ "polygon": x.polygons[*p].name, "cover": cover })
            });
            let tw = v.t.shortest.as_ref().map_or(Value::Null, |c| {
                json!({ "vertex": x.vertices[c.vertex], "edges": enames(&x, &c.edges), "length": c.edges.len() })
            });
            let ok = v.cprime.pass && v.cover.pass && v.t.pass;
            let results = json!({
                "Cprime": pass(v.cprime.pass),
                "C": pass(v.cover.pass),
                "T": pass(v.t.pass),
                "pieces": pieces,
                "max_ratio": v.cprime.max_ratio.to_string(),
                "cprime_witness": cw,
                "covers": covers,
                "cover_witness": covw,
                "shortest_link_cycle": tw,
                "link_two_cycles": v.t.two_cycles,
                "method": "exact",
            });
            let out = Outcome::new(results).param("lambda", lam.to_string()).param("c", n_c).param("t", n_t);
            Ok(("poly sc", out.negative(!ok)))
        }
        PolyCmd::Walls { file } => {
            let x = load(inputs, &file)?;
            let walls = hypergraphs(&x);
            let crossings = wall_crossings(&x, &walls);
            let list: Vec<Value> = walls
                .iter()
                .map(|w| {
                    let sides: Vec<Value> = w.components.iter().map(|c| vnames(&x, c)).collect();
                    json!({
                        "id": w.id,
                        "edges": enames(&x, &w.edges),
                        "hypercarrier": pnames(&x, &w.polygons),
                        "sides": sides,
                        "two_sided": w.two_sided(),
                        "self_crossing": w.self_crossing,
                        "crosses": crossings[w.id].ones().collect::<Vec<_>>(),
                    })
                })
                .collect();
            let degenerate: Vec<usize> = walls.iter().filter(|w| !w.two_sided()).map(|w| w.id).collect();
            let results = json!({ "count": walls.len(), "walls": list, "not_two_sided": degenerate });
            Ok(("poly walls", Outcome::new(results)))
        }
        PolyCmd::Dual { file, graph_out, walls_out, max_vertices } => {
            let x = load(inputs, &file)?;
            let (_, dual) = build(&x, max_vertices)?;
            let g = dual.median.graph();
            let principal: Vec<Value> =
                (0..x.n()).map(|v| json!([x.vertices[v], g.name(dual.principal[v])])).collect();
            let mut results = json!({
                "vertices": g.n(),
                "edges": g.m(),
                "median": true,
                "hyperplanes": dual.median.hyperplanes().len(),
                "wall_of_hyperplane": dual.wall_of_hyperplane,
                "principal": principal,
            });
            for (path, body, key) in [(&graph_out, g.to_text(), "graph_out"), (&walls_out, dual.sidecar(), "walls_out")] {
                if let Some(p) = path {
                    std::fs::write(p, body).map_err(|e| CliError(format!("{}: {e}", p.display())))?;
                    results[key] = json!(p.display().to_string());
                }
            }
            Ok(("poly dual", Outcome::new(results).param("max_vertices", max_vertices)))
        }
        PolyCmd::Classify { file, max_vertices } => {
            let x = load(inputs, &file)?;
            let (walls, dual) = build(&x, max_vertices)?;
            let classes = classify_maximal_cubes(&x, &walls, &dual);
            let g = dual.median.graph();
            let mut unmatched = 0;
            let list: Vec<Value> = classes
                .iter()
                .map(|c| {
                    let tag = match c.tag {
                        CubeTag::EdgeCube { edge } => json!({ "edge_cube": x.edges[edge].name }),
                        CubeTag::CellCube { polygon } => json!({ "cell_cube": x.polygons[polygon].name }),
                        CubeTag::Unmatched => {
                            unmatched += 1;
                            json!("unmatched")
                        }
                    };
                    let verts: Vec<&str> = dual.median.cubes()[c.cube].vertices.iter().map(|&v| g.name(v)).collect();
                    json!({ "dim": c.dim, "tag": tag, "vertices": verts })
                })
                .collect();
            let grid = max_grid(&dual.median, ctx.seed_cap);
            let results = json!({
                "cubes": list,
                "unmatched": unmatched,
                "grid_thinness": quantity("grid_thinness", grid.thinness, Value::Null, method(grid.exact)),
            });
            Ok(("poly classify", Outcome::new(results).negative(unmatched > 0)))
        }
        PolyCmd::Project { file, r_max, family_size, max_vertices } => {
            let x = load(inputs, &file)?;
            let (walls, dual) = build(&x, max_vertices)?;
            let classes = classify_maximal_cubes(&x, &walls, &dual);
            let g = dual.median.graph();
            let mut points = Vec::new();
            let mut rows = Vec::new();
            let mut errors = Vec::new();
            for v in 0..g.n() {
                match dual_projection(&x, &dual, &classes, v) {
                    Ok(p) => {
                        let mut row = json!({ "dual_vertex": g.name(v), "point": point(&x, &p.point), "family": pnames(&x, &p.family) });
                        if let Some(e) = p.edge_cube {
                            row["edge_cube"] = json!(x.edges[e].name);
                        }
                        if matches!(p.point, XPoint::Vertex(_)) && p.edge_cube.is_none() {
                            row["note"] = json!("intersection is a single vertex; projected to it");
                        }
                        rows.push(row);
                        points.push(p.point);
                    }
                    Err(e) => errors.push(json!({ "dual_vertex": g.name(v), "error": e.to_string() })),
                }
            }
            let transfer: Vec<Value> = if errors.is_empty() {
                separation_transfer(&x, &walls, &dual, &points, r_max)
                    .iter()
                    .map(|c| {
                        let failures: Vec<Value> = c
                            .failures
                            .iter()
                            .map(|&(u, w, k, xk)| json!({ "u": g.name(u), "w": g.name(w), "dual_disjoint": k, "wall_disjoint": xk }))
                            .collect();
                        json!({ "r": c.r, "pairs": c.pairs, "check": pass(c.holds()), "failures": failures })
                    })
                    .collect()
            } else {
                Vec::new()
            };
            let lemma = lemma_intersection_check(&x, family_size);
            let separation = polygon_separation_check(&x, &walls);
            let transfer_ok = transfer.iter().all(|c| c["check"] == "pass");
            let ok = errors.is_empty() && transfer_ok && lemma.is_none() && separation.is_none();
            let results = json!({
                "projections": rows,
                "projection_errors": errors,
                "transfer": transfer,
                "intersection_lemma": {
                    "check": pass(lemma.is_none()),
                    "witness": lemma.as_deref().map_or(Value::Null, |ps| pnames(&x, ps)),
                },
                "polygon_separation": {
                    "check": pass(separation.is_none()),
                    "witness": separation.map_or(Value::Null, |(p, q)| pnames(&x, &[p, q])),
                },
                "method": "exact",
            });
            let out = Outcome::new(results).param("r_max", r_max).param("family_size", family_size);
            Ok(("poly project", out.negative(!ok)))
        }
    }
}
