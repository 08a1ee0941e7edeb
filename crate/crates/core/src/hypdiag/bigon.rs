use rayon::prelude::*;

use super::DiagError;
use crate::graph::{DistMatrix, UNREACHABLE};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigonWitness {
    pub x: usize,
    pub y: usize,
    /// A vertex of `first` far from every vertex of `second`.
    pub far: usize,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigonReport {
    /// Largest Hausdorff distance, under the measuring metric, between two
    /// geodesics with common endpoints.
    pub thinness: u32,
    pub witness: Option<BigonWitness>,
}

/// Geodesics are taken in the graph `adj` (with distance table `geo`) and
/// compared under `measure`, which may be a cone-off metric on the same
/// vertices.
///
/// The maximum over bigons of the Hausdorff distance equals the maximum over
/// `x, y`, over `z` in the interval `I(x, y)` and over geodesics `γ` from `x`
/// to `y` of `measure(z, γ)`. For fixed `z` the best `γ` is a widest path in
/// the geodesic DAG, found by a max-min sweep.
pub fn bigon_thinness(adj: &[Vec<usize>], geo: &DistMatrix, measure: &DistMatrix, max_vertices: usize) -> Result<BigonReport, DiagError> {
    let n = adj.len();
    if geo.n() != n || measure.n() != n {
        return Err(DiagError::SizeMismatch);
    }
    if n > max_vertices {
        return Err(DiagError::TooLarge { n, limit: max_vertices });
    }
    if (0..n).any(|u| geo.row(u).contains(&UNREACHABLE)) {
        return Err(DiagError::Disconnected);
    }
    let best = (0..n)
        .into_par_iter()
        .filter_map(|x| {
            let mut scratch = vec![0u32; n];
            let mut best: Option<(u32, [usize; 3])> = None;
            for y in x + 1..n {
                let interval = interval(geo, x, y);
                for &z in &interval {
                    let bound = measure.get(z, x).min(measure.get(z, y));
                    if bound <= best.map_or(0, |b| b.0) {
                        continue;
                    }
                    let v = widest(adj, geo, measure, &interval, x, y, z, &mut scratch);
                    if v > best.map_or(0, |b| b.0) {
                        best = Some((v, [x, y, z]));
                    }
                }
            }
            best
        })
        .max_by_key(|&(v, t)| (v, std::cmp::Reverse(t)));
    let Some((thinness, [x, y, z])) = best else {
        return Ok(BigonReport { thinness: 0, witness: None });
    };
    let mut first = geodesic(adj, geo, x, z);
    first.extend(geodesic(adj, geo, z, y).into_iter().skip(1));
    let second = widest_path(adj, geo, measure, x, y, z);
    Ok(BigonReport { thinness, witness: Some(BigonWitness { x, y, far: z, first, second }) })
}

/// Vertices on geodesics from `x` to `y`, by distance from `x`.
fn interval(geo: &DistMatrix, x: usize, y: usize) -> Vec<usize> {
    let dxy = geo.get(x, y);
    let mut vs: Vec<usize> = (0..geo.n()).filter(|&v| geo.get(x, v) + geo.get(v, y) == dxy).collect();
    vs.sort_by_key(|&v| (geo.get(x, v), v));
    vs
}

#[allow(clippy::too_many_arguments)]
fn widest(
    adj: &[Vec<usize>],
    geo: &DistMatrix,
    measure: &DistMatrix,
    interval: &[usize],
    x: usize,
    y: usize,
    z: usize,
    best: &mut [u32],
) -> u32 {
    for &v in interval {
        best[v] = if v == x {
            measure.get(z, x)
        } else {
            let dv = geo.get(x, v);
            // Neighbours one step closer to x are automatically in the interval.
            let through = adj[v].iter().filter(|&&u| geo.get(x, u) + 1 == dv).map(|&u| best[u]).max().expect("predecessor");
            through.min(measure.get(z, v))
        };
    }
    best[y]
}

fn widest_path(adj: &[Vec<usize>], geo: &DistMatrix, measure: &DistMatrix, x: usize, y: usize, z: usize) -> Vec<usize> {
    let interval = interval(geo, x, y);
    let mut best = vec![0u32; adj.len()];
    widest(adj, geo, measure, &interval, x, y, z, &mut best);
    let mut path = vec![y];
    let mut cur = y;
    while cur != x {
        let dv = geo.get(x, cur);
        let target = best[cur];
        cur = *adj[cur]
            .iter()
            .find(|&&u| geo.get(x, u) + 1 == dv && best[u].min(measure.get(z, cur)) == target)
            .expect("argmax predecessor");
        path.push(cur);
    }
    path.reverse();
    path
}

fn geodesic(adj: &[Vec<usize>], geo: &DistMatrix, a: usize, b: usize) -> Vec<usize> {
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        cur = *adj[cur].iter().find(|&&w| geo.get(w, b) + 1 == geo.get(cur, b)).expect("connected");
        path.push(cur);
    }
    path
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::graph::Graph;

    fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
        (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect()
    }

    fn l1(g: &Graph) -> BigonReport {
        let d = g.distances();
        bigon_thinness(&adjacency(g), &d, &d, 1000).unwrap()
    }

    #[test]
    fn bigon_examples() {
        assert_eq!(l1(&build::random_tree(25, 4)).thinness, 0);
        let r = l1(&build::grid(2, 2));
        assert_eq!(r.thinness, 2);
        let w = r.witness.unwrap();
        let d = build::grid(2, 2).distances();
        assert!(w.second.iter().all(|&v| d.get(w.far, v) >= 2));
        assert_eq!(w.first.len(), w.second.len());
        assert_eq!(l1(&build::hypercube(3)).thinness, 1);
    }
}
