//! Finite median graphs: recognition, hyperplanes, the cube inventory,
//! ℓ¹/ℓ∞ metrics, medians, convexity and gate projections.

mod convex;
mod cubes;
mod families;
mod hyperplanes;

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{DistMatrix, Graph, UNREACHABLE};

pub use convex::{ConvexError, ConvexSet, GateImage};
pub use cubes::Cube;
pub use families::{max_disjoint_family, max_transverse_family, ram_bound};
pub(crate) use families::max_clique;
pub use hyperplanes::Hyperplane;
pub(crate) use hyperplanes::edge_classes;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianWitness {
    pub triple: [usize; 3],
    /// All medians of the triple (zero or at least two of them).
    pub medians: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MedianError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("not a median graph: triple {triple:?} has {} medians", medians.len())]
    NotMedian { triple: [String; 3], medians: Vec<String>, witness: Box<MedianWitness> },
    #[error("edge class {0} does not cut the graph into exactly two parts")]
    BadHyperplane(usize),
    #[error("cube completion failed at vertex `{0}`")]
    BadCube(String),
}

/// Outcome of [`is_median`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MedianVerdict {
    pub median: bool,
    pub witness: Option<MedianWitness>,
}

/// Exhaustive triple scan. Disconnected or empty input is an error.
pub fn is_median(g: &Graph) -> Result<MedianVerdict, MedianError> {
    if g.n() == 0 {
        return Err(MedianError::Empty);
    }
    if !g.is_connected() {
        return Err(MedianError::Disconnected);
    }
    let dist = g.distances();
    Ok(median_scan(&dist))
}

fn medians_of(dist: &DistMatrix, [x, y, z]: [usize; 3]) -> Vec<usize> {
    (0..dist.n())
        .filter(|&m| {
            dist.get(x, m) + dist.get(m, y) == dist.get(x, y)
                && dist.get(y, m) + dist.get(m, z) == dist.get(y, z)
                && dist.get(x, m) + dist.get(m, z) == dist.get(x, z)
        })
        .collect()
}

/// For a base vertex `x`, the medians of `(x,y,z)` are the vertices of
/// `I(x,y) ∩ I(x,z)` at distance `(d(x,y)+d(x,z)-d(y,z))/2` from `x`, so one
/// bitset row per `y` and one sphere per radius answer every triple.
fn median_scan(dist: &DistMatrix) -> MedianVerdict {
    let n = dist.n();
    let words = n.div_ceil(64);
    let failing = (0..n).into_par_iter().find_map_first(|x| {
        let dx = dist.row(x);
        let maxd = dx.iter().copied().max().unwrap_or(0) as usize;
        let mut spheres = vec![0u64; (maxd + 1) * words];
        for (v, &d) in dx.iter().enumerate() {
            spheres[d as usize * words + v / 64] |= 1 << (v % 64);
        }
        let rows_len = n - x;
        let mut rows = vec![0u64; rows_len * words];
        for y in x + 1..n {
            let row = &mut rows[(y - x) * words..(y - x + 1) * words];
            let dy = dist.row(y);
            for v in 0..n {
                if dx[v] + dy[v] == dx[y] {
                    row[v / 64] |= 1 << (v % 64);
                }
            }
        }
        for y in x + 1..n {
            let ry = &rows[(y - x) * words..(y - x + 1) * words];
            for z in y + 1..n {
                let s = dx[y] + dx[z];
                let dyz = dist.get(y, z);
                if s < dyz || (s - dyz) % 2 == 1 {
                    return Some([x, y, z]);
                }
                let k = ((s - dyz) / 2) as usize;
                let rz = &rows[(z - x) * words..(z - x + 1) * words];
                let sk = &spheres[k * words..(k + 1) * words];
                let mut count = 0u32;
                for i in 0..words {
                    count += (ry[i] & rz[i] & sk[i]).count_ones();
                    if count > 1 {
                        break;
                    }
                }
                if count != 1 {
                    return Some([x, y, z]);
                }
            }
        }
        None
    });
    match failing {
        None => MedianVerdict { median: true, witness: None },
        Some(triple) => MedianVerdict {
            median: false,
            witness: Some(MedianWitness { triple, medians: medians_of(dist, triple) }),
        },
    }
}

/// A validated median graph with its hyperplanes, transversality relation
/// and maximal-cube inventory.
#[derive(Debug)]
pub struct MedianGraph {
    graph: Graph,
    dist: DistMatrix,
    edge_hyperplane: Vec<usize>,
    hyperplanes: Vec<Hyperplane>,
    transverse: Vec<FixedBitSet>,
    /// Per vertex, `(hyperplane, neighbour across it)` sorted by hyperplane.
    crossings: Vec<Vec<(usize, usize)>>,
    cubes: Vec<Cube>,
    linf: OnceLock<DistMatrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    L1,
    LInf,
}

impl MedianGraph {
    /// Runs the median check, then computes hyperplanes and cubes.
    pub fn new(graph: Graph) -> Result<Self, MedianError> {
        let verdict = is_median(&graph)?;
        if let Some(w) = verdict.witness {
            let name = |v: usize| graph.name(v).to_string();
            return Err(MedianError::NotMedian {
                triple: w.triple.map(name),
                medians: w.medians.iter().map(|&m| name(m)).collect(),
                witness: Box::new(w),
            });
        }
        Self::from_checked(graph)
    }

    /// Skips the triple scan; hyperplane and cube construction still fail on
    /// most non-median inputs, but not all of them.
    pub fn from_checked(graph: Graph) -> Result<Self, MedianError> {
        if graph.n() == 0 {
            return Err(MedianError::Empty);
        }
        if !graph.is_connected() {
            return Err(MedianError::Disconnected);
        }
        let dist = graph.distances();
        let edge_hyperplane = hyperplanes::edge_classes(&graph);
        let mut hyps = hyperplanes::build(&graph, &edge_hyperplane)?;
        let transverse = hyperplanes::transversality(&hyps);
        let crossings = hyperplanes::crossings(&graph, &edge_hyperplane);
        let cubes = cubes::maximal_cubes(&graph, &crossings)?;
        for cube in &cubes {
            for &h in &cube.hyperplanes {
                hyps[h].dimension = hyps[h].dimension.max(cube.dim);
            }
        }
        Ok(MedianGraph {
            graph,
            dist,
            edge_hyperplane,
            hyperplanes: hyps,
            transverse,
            crossings,
            cubes,
            linf: OnceLock::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn distances(&self) -> &DistMatrix {
        &self.dist
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, id: usize) -> &Hyperplane {
        &self.hyperplanes[id]
    }

    pub fn hyperplane_of_edge(&self, edge: usize) -> usize {
        self.edge_hyperplane[edge]
    }

    /// Hyperplane dual to the edge `u -- v`, if it is an edge.
    pub fn hyperplane_between(&self, u: usize, v: usize) -> Option<usize> {
        self.graph.edge_id(u, v).map(|e| self.edge_hyperplane[e])
    }

    pub fn is_transverse(&self, a: usize, b: usize) -> bool {
        self.transverse[a].contains(b)
    }

    pub fn transverse_set(&self, a: usize) -> &FixedBitSet {
        &self.transverse[a]
    }

    /// Neighbour of `v` across hyperplane `h`, if `v` lies on its carrier.
    pub fn cross(&self, v: usize, h: usize) -> Option<usize> {
        let list = &self.crossings[v];
        list.binary_search_by_key(&h, |&(hh, _)| hh).ok().map(|i| list[i].1)
    }

    /// `(hyperplane, neighbour)` pairs at `v`, sorted by hyperplane.
    pub fn crossing_list(&self, v: usize) -> &[(usize, usize)] {
        &self.crossings[v]
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    /// The unique median of `x, y, z`.
    pub fn median(&self, x: usize, y: usize, z: usize) -> usize {
        let d = &self.dist;
        (0..self.n())
            .find(|&m| {
                d.get(x, m) + d.get(m, y) == d.get(x, y)
                    && d.get(y, m) + d.get(m, z) == d.get(y, z)
                    && d.get(x, m) + d.get(m, z) == d.get(x, z)
            })
            .expect("median graphs have medians")
    }

    /// Hyperplanes separating `x` from `y`, ascending.
    pub fn separating(&self, x: usize, y: usize) -> Vec<usize> {
        self.hyperplanes.iter().filter(|h| h.separates(x, y)).map(|h| h.id).collect()
    }

    pub fn dist(&self, metric: Metric, x: usize, y: usize) -> u32 {
        match metric {
            Metric::L1 => self.dist.get(x, y),
            Metric::LInf => {
                let v = self.linf_matrix().get(x, y);
                debug_assert_eq!(v as usize, self.disjoint_chain(x, y).len());
                v
            }
        }
    }

    pub fn metric_matrix(&self, metric: Metric) -> &DistMatrix {
        match metric {
            Metric::L1 => &self.dist,
            Metric::LInf => self.linf_matrix(),
        }
    }

    /// BFS distances in the cube cone-off (edges between any two vertices of
    /// a common cube).
    pub fn linf_matrix(&self) -> &DistMatrix {
        self.linf.get_or_init(|| {
            let cone = self.cube_coneoff();
            let rows: Vec<Vec<u32>> = (0..self.n()).into_par_iter().map(|s| bfs_adj(&cone, s)).collect();
            DistMatrix::from_rows(rows)
        })
    }

    /// Adjacency lists of the cube cone-off.
    pub fn cube_coneoff(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(self.n()); self.n()];
        for cube in &self.cubes {
            for &u in &cube.vertices {
                for &v in &cube.vertices {
                    if u != v {
                        adj[u].insert(v);
                    }
                }
            }
        }
        adj.into_iter().map(|s| s.ones().collect()).collect()
    }

    /// A longest family of pairwise disjoint hyperplanes separating `x` and
    /// `y`, ordered from `x` towards `y`.
    pub fn disjoint_chain(&self, x: usize, y: usize) -> Vec<usize> {
        let mut sep = self.separating(x, y);
        // Disjoint separating hyperplanes are nested, so the halfspace
        // containing x grows along any chain.
        let size = |h: usize| self.hyperplanes[h].side_containing(x).count_ones(..);
        sep.sort_by_key(|&h| (size(h), h));
        let k = sep.len();
        let mut len = vec![1usize; k];
        let mut prev = vec![usize::MAX; k];
        for i in 0..k {
            for j in 0..i {
                if !self.is_transverse(sep[i], sep[j]) && len[j] + 1 > len[i] {
                    len[i] = len[j] + 1;
                    prev[i] = j;
                }
            }
        }
        let Some(mut best) = (0..k).max_by_key(|&i| (len[i], std::cmp::Reverse(i))) else {
            return Vec::new();
        };
        let mut chain = vec![sep[best]];
        while prev[best] != usize::MAX {
            best = prev[best];
            chain.push(sep[best]);
        }
        chain.reverse();
        chain
    }

    /// Both ℓ∞ characterisations: `(cone-off BFS, longest disjoint chain)`.
    pub fn linf_both(&self, x: usize, y: usize) -> (u32, u32) {
        (self.linf_matrix().get(x, y), self.disjoint_chain(x, y).len() as u32)
    }

    /// Every halfspace is convex; checked by interval scans.
    pub fn verify_halfspaces_convex(&self) -> Result<(), (usize, ConvexError)> {
        for h in &self.hyperplanes {
            for side in &h.sides {
                let verts: Vec<usize> = side.ones().collect();
                self.convex_set(&verts).map_err(|e| (h.id, e))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn bfs_adj(adj: &[Vec<usize>], src: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; adj.len()];
    let mut queue = std::collections::VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}
