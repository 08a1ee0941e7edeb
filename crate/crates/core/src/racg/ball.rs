use std::collections::HashMap;

use super::word::right_multiply;
use super::{DefiningGraph, RacgError};
use crate::graph::Graph;
use crate::hypdiag::{grid_through, Grid};
use crate::mediancore::{is_median, MedianGraph};

#[derive(Debug, Clone)]
pub struct Ball {
    pub radius: usize,
    /// Vertices in breadth-first order; vertex 0 is the identity.
    pub graph: Graph,
    pub words: Vec<Vec<usize>>,
    /// Edge classes of the radius `r + 2` ball restricted to this one,
    /// numbered densely by first edge. `None` if that ball exceeds the cap.
    pub buffer_classes: Option<Vec<usize>>,
    pub median: bool,
}

/// The ball of radius `r` about the identity in the Cayley graph.
pub fn ball(dg: &DefiningGraph, r: usize, cap: usize) -> Result<Ball, RacgError> {
    let (graph, words) = ball_graph(dg, r, cap)?;
    let buffer_classes = ball_graph(dg, r + 2, cap).ok().map(|(big, _)| {
        let classes = crate::mediancore::edge_classes(&big);
        let mut dense = HashMap::new();
        graph
            .edges()
            .iter()
            .map(|&(u, v)| {
                let c = classes[big.edge_id(u, v).expect("restricted edge")];
                let next = dense.len();
                *dense.entry(c).or_insert(next)
            })
            .collect()
    });
    let median = is_median(&graph).map(|v| v.median).unwrap_or(false);
    Ok(Ball { radius: r, graph, words, buffer_classes, median })
}

fn ball_graph(dg: &DefiningGraph, r: usize, cap: usize) -> Result<(Graph, Vec<Vec<usize>>), RacgError> {
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(Vec::new(), 0)]);
    let mut edges = Vec::new();
    let mut i = 0;
    while i < words.len() {
        if words[i].len() < r {
            for s in 0..dg.n() {
                let ws = right_multiply(dg, &words[i], s);
                if ws.len() < words[i].len() {
                    continue;
                }
                let j = match index.get(&ws) {
                    Some(&j) => j,
                    None => {
                        if words.len() >= cap {
                            return Err(RacgError::BallCap { cap });
                        }
                        index.insert(ws.clone(), words.len());
                        words.push(ws);
                        words.len() - 1
                    }
                };
                edges.push((i, j));
            }
        }
        i += 1;
    }
    let mut graph = Graph::new();
    let identity = if dg.graph().vertex("1").is_some() { "()" } else { "1" };
    for w in &words {
        let name = if w.is_empty() { identity.to_string() } else { dg.word_name(w) };
        graph.add_vertex(&name).expect("normal forms have distinct names");
    }
    for (u, v) in edges {
        graph.add_edge(u, v).expect("each edge is generated once, from its shorter end");
    }
    Ok((graph, words))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallGridCheck {
    pub generator: usize,
    pub n: usize,
    /// An `(n, n)`-grid in the ball through the hyperplane dual to the edge
    /// from the identity to the generator.
    pub grid: Option<Grid>,
    pub exact: bool,
}

/// Searches the radius-`r` ball for `(n, n)`-grids through each hyperplane
/// at the identity, for each `n` in `ns`.
pub fn ball_grid_checks(dg: &DefiningGraph, r: usize, ns: &[usize], cap: usize, node_cap: u64) -> Result<Vec<BallGridCheck>, RacgError> {
    let b = ball(dg, r, cap)?;
    if !b.median {
        return Err(RacgError::BallNotMedian(r));
    }
    let mg = MedianGraph::from_checked(b.graph).map_err(|_| RacgError::BallNotMedian(r))?;
    let mut out = Vec::new();
    for u in 0..dg.n() {
        let j = mg.hyperplane_between(0, 1 + u).expect("generators label the first sphere in order");
        for &n in ns {
            let s = grid_through(&mg, j, n, node_cap);
            out.push(BallGridCheck { generator: u, n, grid: s.grid, exact: s.exact });
        }
    }
    Ok(out)
}
