use std::path::Path;

use cubecone::graph::{parse_graph, parse_subsets, Graph, NamedSet};
use cubecone::mediancore::{ConvexError, ConvexSet, MedianError, MedianGraph};
use serde_json::Value;

use crate::report::Inputs;
use crate::CliError;

pub fn load_graph(inputs: &mut Inputs, path: &Path) -> Result<Graph, CliError> {
    let text = inputs.read(path)?;
    parse_graph(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

pub fn load_median(inputs: &mut Inputs, path: &Path) -> Result<MedianGraph, CliError> {
    let g = load_graph(inputs, path)?;
    MedianGraph::new(g).map_err(|e| median_error(path, e))
}

pub fn median_error(path: &Path, e: MedianError) -> CliError {
    CliError(format!("{}: {e}", path.display()))
}

pub fn load_sets(inputs: &mut Inputs, path: &Path, g: &Graph) -> Result<Vec<NamedSet>, CliError> {
    let text = inputs.read(path)?;
    parse_subsets(&text, g).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

pub fn vertex(g: &Graph, name: &str) -> Result<usize, CliError> {
    g.vertex(name).ok_or_else(|| CliError(format!("unknown vertex `{name}`")))
}

pub fn names(g: &Graph, vs: &[usize]) -> Value {
    vs.iter().map(|&v| Value::from(g.name(v))).collect()
}

pub fn edge_names(g: &Graph, es: &[usize]) -> Value {
    es.iter().map(|&e| {
        let (u, v) = g.edges()[e];
        Value::from(vec![g.name(u), g.name(v)])
    }).collect()
}

pub fn method(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "lower_bound"
    }
}

pub fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Convexity of every set, with violations reported by vertex name.
pub fn convex_family(m: &MedianGraph, family: &[NamedSet]) -> Result<Vec<ConvexSet>, CliError> {
    let g = m.graph();
    family
        .iter()
        .map(|s| {
            m.convex_set(&s.vertices).map_err(|e| match e {
                ConvexError::Violation { a, b, outside, .. } => CliError(format!(
                    "set `{}` is not convex: `{}` lies on a geodesic from `{}` to `{}`",
                    s.name,
                    g.name(outside),
                    g.name(a),
                    g.name(b)
                )),
                other => CliError(format!("set `{}`: {other}", s.name)),
            })
        })
        .collect()
}
