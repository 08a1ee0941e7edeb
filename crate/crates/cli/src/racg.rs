use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use cubecone::racg::{
    ball, ball_grid_checks, contracting_generators, cp, induced_squares, j_infinity, normal_form, relhyp_report,
    square_vertices, DefiningGraph, Mask, Seed, Violation,
};
use serde_json::{json, Value};

use crate::common::{load_graph, method};
use crate::diag::grid_json;
use crate::report::{Inputs, Outcome};
use crate::{CliError, Ctx};

const DEFAULT_BALL_CAP: usize = 50_000;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SeedArg {
    Squares,
    Joins,
}

#[derive(Subcommand)]
pub enum RacgCmd {
    /// Shortlex normal form of a word (letters separated by spaces or dots).
    Nf { graph: PathBuf, word: String },
    /// Ball about the identity in the Cayley graph.
    Ball {
        graph: PathBuf,
        #[arg(short, long)]
        r: usize,
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        ball_cap: usize,
        /// Write the ball here in the graph text format.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Vertices on induced squares.
    Squares { graph: PathBuf },
    /// Contracting generators, with an optional one-sided grid check in a ball.
    Contracting {
        graph: PathBuf,
        /// Radius of the ball searched for (n,n)-grids through each generator's hyperplane.
        #[arg(long)]
        ball: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        ball_cap: usize,
    },
    /// Canonical join decomposition with its full trace.
    Jdecomp {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = SeedArg::Squares)]
        seed: SeedArg,
    },
    /// Relative hyperbolicity verdict and peripheral subgraphs.
    Relhyp { graph: PathBuf },
    /// One application of the cp closure to a vertex set.
    Cp { graph: PathBuf, vertices: Vec<String> },
}

fn defining(inputs: &mut Inputs, path: &Path) -> Result<DefiningGraph, CliError> {
    let g = load_graph(inputs, path)?;
    DefiningGraph::new(g).map_err(|e| CliError(e.to_string()))
}

fn masks(dg: &DefiningGraph, ms: &[Mask]) -> Value {
    ms.iter().map(|&m| Value::from(dg.mask_names(m))).collect()
}

fn violation(dg: &DefiningGraph, v: &Violation) -> Value {
    match *v {
        Violation::UncoveredLargeJoin(j) => json!({ "uncovered_large_join": dg.mask_names(j) }),
        Violation::IncompleteIntersection(a, b) => {
            json!({ "incomplete_intersection": [dg.mask_names(a), dg.mask_names(b)] })
        }
        Violation::Link { vertex, member } => {
            json!({ "link": { "vertex": dg.graph().name(vertex), "member": dg.mask_names(member) } })
        }
    }
}

pub fn run(cmd: RacgCmd, ctx: &Ctx, inputs: &mut Inputs) -> Result<(&'static str, Outcome), CliError> {
    match cmd {
        RacgCmd::Nf { graph, word } => {
            let dg = defining(inputs, &graph)?;
            let w = dg.parse_word(&word).map_err(|e| CliError(e.to_string()))?;
            let nf = normal_form(&dg, &w);
            let results = json!({ "normal_form": dg.word_name(&nf), "length": nf.len() });
            Ok(("racg nf", Outcome::new(results).param("word", word)))
        }
        RacgCmd::Ball { graph, r, ball_cap, export } => {
            let dg = defining(inputs, &graph)?;
            let b = ball(&dg, r, ball_cap).map_err(|e| CliError(e.to_string()))?;
            let mut sphere = vec![0usize; r + 1];
            for w in &b.words {
                sphere[w.len()] += 1;
            }
            let classes = b.buffer_classes.as_ref().map(|c| c.iter().max().map_or(0, |&k| k + 1));
            let mut results = json!({
                "vertices": b.graph.n(),
                "edges": b.graph.m(),
                "sphere_sizes": sphere,
                "median": b.median,
                "hyperplane_classes": classes,
                "hyperplanes": "ball-approximate: classes from the radius r + 2 ball restricted to radius r",
            });
            if let Some(path) = &export {
                std::fs::write(path, b.graph.to_text()).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
                results["exported"] = json!(path.display().to_string());
            }
            Ok(("racg ball", Outcome::new(results).param("r", r).param("ball_cap", ball_cap)))
        }
        RacgCmd::Squares { graph } => {
            let dg = defining(inputs, &graph)?;
            let results = json!({
                "square_vertices": dg.mask_names(square_vertices(&dg)),
                "induced_squares": masks(&dg, &induced_squares(&dg)),
            });
            Ok(("racg squares", Outcome::new(results)))
        }
        RacgCmd::Contracting { graph, ball: radius, max_n, ball_cap } => {
            let dg = defining(inputs, &graph)?;
            let c = contracting_generators(&dg);
            let per: Vec<Value> = (0..dg.n())
                .map(|v| json!({ "generator": dg.graph().name(v), "contracting": c.contracting[v] }))
                .collect();
            let mut results = json!({
                "generators": per,
                "square_vertices": dg.mask_names(c.square_vertices),
                "star_peripherals": masks(&dg, &c.stars),
                "large_join_peripherals": c.maximal_large_joins.as_ref().map_or(Value::Null, |j| masks(&dg, j)),
            });
            let mut out = Outcome::new(Value::Null);
            if let Some(r) = radius {
                // A generator with a neighbour always lies in a (1,1)-grid, so n = 1 says nothing.
                let ns: Vec<usize> = (2..=max_n.max(2)).collect();
                let checks =
                    ball_grid_checks(&dg, r, &ns, ball_cap, ctx.seed_cap).map_err(|e| CliError(e.to_string()))?;
                let mut consistent = true;
                let rows: Vec<Value> = checks
                    .iter()
                    .map(|k| {
                        if c.contracting[k.generator] && k.grid.is_some() {
                            consistent = false;
                        }
                        json!({
                            "generator": dg.graph().name(k.generator),
                            "n": k.n,
                            "grid": k.grid.as_ref().map_or(Value::Null, grid_json),
                            "method": method(k.exact),
                        })
                    })
                    .collect();
                results["ball_grids"] = json!({ "checks": rows, "consistent": consistent, "method": "one_sided" });
                out = out.param("ball", r).param("max_n", max_n).negative(!consistent);
            }
            out.results = results;
            Ok(("racg contracting", out))
        }
        RacgCmd::Jdecomp { graph, seed } => {
            let dg = defining(inputs, &graph)?;
            let s = match seed {
                SeedArg::Squares => Seed::Squares,
                SeedArg::Joins => Seed::LargeJoins,
            };
            let j = j_infinity(&dg, s).map_err(|e| CliError(e.to_string()))?;
            let trace: Vec<Value> = j.trace.iter().map(|stage| masks(&dg, stage)).collect();
            let results = json!({ "members": masks(&dg, &j.members), "trace": trace, "steps": j.trace.len() - 1 });
            let name = match seed {
                SeedArg::Squares => "squares",
                SeedArg::Joins => "joins",
            };
            Ok(("racg jdecomp", Outcome::new(results).param("seed", name)))
        }
        RacgCmd::Relhyp { graph } => {
            let dg = defining(inputs, &graph)?;
            let r = relhyp_report(&dg);
            let trace: Vec<Value> = r.trace.iter().map(|stage| masks(&dg, stage)).collect();
            let results = json!({
                "relatively_hyperbolic": r.relatively_hyperbolic,
                "peripherals": masks(&dg, &r.peripherals),
                "trace": trace,
                "decomposition_violations": r.violations.as_ref().map_or(Value::Null, |vs| vs.iter().map(|v| violation(&dg, v)).collect()),
                "meaning": "the group is hyperbolic relative to the special subgroups generated by the peripherals",
            });
            Ok(("racg relhyp", Outcome::new(results)))
        }
        RacgCmd::Cp { graph, vertices } => {
            let dg = defining(inputs, &graph)?;
            let mut mask: Mask = 0;
            for v in &vertices {
                let i = dg.graph().vertex(v).ok_or_else(|| CliError(format!("unknown vertex `{v}`")))?;
                mask |= 1 << i;
            }
            let closed = cp(&dg, mask);
            let results = json!({ "cp": dg.mask_names(closed), "added": dg.mask_names(closed & !mask) });
            Ok(("racg cp", Outcome::new(results).param("set", vertices)))
        }
    }
}
