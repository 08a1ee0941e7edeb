use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use super::walls::wall_crossings;
use super::{PolygonalComplex, Wall};
use crate::graph::Graph;
use crate::mediancore::{max_clique, MedianError, MedianGraph};

/// Default cap on the number of dual vertices.
pub const DEFAULT_MAX_DUAL: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualError {
    #[error("wall {wall} cuts the complex into {components} component(s), not 2")]
    Sides { wall: usize, components: usize },
    #[error("the dual has more than {limit} vertices")]
    TooLarge { limit: usize },
    #[error("the dual graph is not median: {0}")]
    NotMedian(MedianError),
    #[error("dual hyperplanes do not match the walls one to one")]
    WallMismatch,
}

/// The cubulation of the wallspace of a polygonal complex.
#[derive(Debug)]
pub struct DualCubeComplex {
    pub median: MedianGraph,
    /// Per dual vertex, the walls oriented towards component 1.
    pub orientations: Vec<FixedBitSet>,
    /// Per vertex of the complex, its principal orientation.
    pub principal: Vec<usize>,
    pub wall_of_hyperplane: Vec<usize>,
    pub hyperplane_of_wall: Vec<usize>,
}

impl DualCubeComplex {
    /// `edge-wall u v wall` lines for every dual edge.
    pub fn sidecar(&self) -> String {
        let g = self.median.graph();
        let mut s = String::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let w = self.wall_of_hyperplane[self.median.hyperplane_of_edge(e)];
            let _ = writeln!(s, "edge-wall {} {} {}", g.name(u), g.name(v), w);
        }
        s
    }
}

/// Orientations reachable from the principal ones by flipping one wall at a
/// time while every two chosen halfspaces still meet.
pub fn dual_cube_complex(x: &PolygonalComplex, walls: &[Wall], max_vertices: usize) -> Result<DualCubeComplex, DualError> {
    if let Some(w) = walls.iter().find(|w| !w.two_sided()) {
        return Err(DualError::Sides { wall: w.id, components: w.components.len() });
    }
    let k = walls.len();
    let half: Vec<FixedBitSet> = walls
        .iter()
        .flat_map(|w| {
            w.components.iter().map(|c| {
                let mut b = FixedBitSet::with_capacity(x.n());
                c.iter().for_each(|&v| b.insert(v));
                b
            })
        })
        .collect();
    // meets[a][b]: halfspaces a = 2w + s and b intersect.
    let meets: Vec<FixedBitSet> = (0..2 * k)
        .map(|a| {
            let mut row = FixedBitSet::with_capacity(2 * k);
            for b in 0..2 * k {
                if !half[a].is_disjoint(&half[b]) {
                    row.insert(b);
                }
            }
            row
        })
        .collect();
    let chosen = |o: &FixedBitSet, w: usize| 2 * w + usize::from(o.contains(w));

    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut orientations: Vec<FixedBitSet> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut principal = Vec::with_capacity(x.n());
    for v in 0..x.n() {
        let mut o = FixedBitSet::with_capacity(k);
        for w in walls {
            o.set(w.id, w.side_of(v) == 1);
        }
        let id = *index.entry(o.clone()).or_insert_with(|| {
            orientations.push(o);
            names.push(format!("p:{}", x.vertices[v]));
            orientations.len() - 1
        });
        principal.push(id);
    }
    let mut edges = Vec::new();
    let mut queue: VecDeque<usize> = (0..orientations.len()).collect();
    let mut fresh = 0;
    while let Some(i) = queue.pop_front() {
        for w in 0..k {
            let mut o = orientations[i].clone();
            o.toggle(w);
            let h = chosen(&o, w);
            if !(0..k).all(|u| u == w || meets[h].contains(chosen(&o, u))) {
                continue;
            }
            let j = match index.get(&o) {
                Some(&j) => j,
                None => {
                    if orientations.len() >= max_vertices {
                        return Err(DualError::TooLarge { limit: max_vertices });
                    }
                    orientations.push(o.clone());
                    names.push(format!("q{fresh}"));
                    fresh += 1;
                    index.insert(o, orientations.len() - 1);
                    queue.push_back(orientations.len() - 1);
                    orientations.len() - 1
                }
            };
            if i < j {
                edges.push((i, j));
            }
        }
    }
    let mut g = Graph::new();
    for name in &names {
        g.add_vertex(name).expect("distinct names");
    }
    for &(a, b) in &edges {
        g.ensure_edge(a, b);
    }
    let median = MedianGraph::new(g).map_err(DualError::NotMedian)?;
    let mut wall_of_hyperplane = Vec::with_capacity(median.hyperplanes().len());
    for h in median.hyperplanes() {
        let (a, b) = median.graph().edges()[h.dual_edges[0]];
        let mut diff = orientations[a].clone();
        diff.symmetric_difference_with(&orientations[b]);
        wall_of_hyperplane.push(diff.ones().next().expect("adjacent orientations differ"));
    }
    let mut hyperplane_of_wall = vec![usize::MAX; k];
    for (h, &w) in wall_of_hyperplane.iter().enumerate() {
        if hyperplane_of_wall[w] != usize::MAX {
            return Err(DualError::WallMismatch);
        }
        hyperplane_of_wall[w] = h;
    }
    if hyperplane_of_wall.contains(&usize::MAX) {
        return Err(DualError::WallMismatch);
    }
    Ok(DualCubeComplex { median, orientations, principal, wall_of_hyperplane, hyperplane_of_wall })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeTag {
    EdgeCube { edge: usize },
    CellCube { polygon: usize },
    Unmatched,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeClass {
    /// Index into the dual's maximal cubes.
    pub cube: usize,
    pub dim: usize,
    pub tag: CubeTag,
}

/// Matches each maximal cube to an isolated edge (a 1-cube on its wall) or
/// to the polygon whose half-sides carry exactly the cube's walls.
pub fn classify_maximal_cubes(x: &PolygonalComplex, walls: &[Wall], dual: &DualCubeComplex) -> Vec<CubeClass> {
    let wall_of_edge = edge_walls(x, walls);
    let poly_walls: Vec<Vec<usize>> = x
        .polygons
        .iter()
        .map(|p| {
            let mut ws: Vec<usize> = (0..p.len() / 2).map(|i| wall_of_edge[p.edge_at(i)]).collect();
            ws.sort_unstable();
            ws
        })
        .collect();
    dual.median
        .cubes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut ws: Vec<usize> = c.hyperplanes.iter().map(|&h| dual.wall_of_hyperplane[h]).collect();
            ws.sort_unstable();
            let tag = if c.dim == 1 && walls[ws[0]].is_isolated_edge(x) {
                CubeTag::EdgeCube { edge: walls[ws[0]].edges[0] }
            } else {
                (0..x.polygons.len())
                    .find(|&p| poly_walls[p] == ws && 2 * c.dim == x.polygons[p].len())
                    .map_or(CubeTag::Unmatched, |p| CubeTag::CellCube { polygon: p })
            };
            CubeClass { cube: i, dim: c.dim, tag }
        })
        .collect()
}

fn edge_walls(x: &PolygonalComplex, walls: &[Wall]) -> Vec<usize> {
    let mut out = vec![0; x.edges.len()];
    for w in walls {
        for &e in &w.edges {
            out[e] = w.id;
        }
    }
    out
}

/// A point of the complex, named combinatorially.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum XPoint {
    Vertex(usize),
    EdgeMidpoint(usize),
    /// Midpoint of a path of length at least 2, given by its vertices.
    SegmentMidpoint(Vec<usize>),
    PolygonCenter(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    pub point: XPoint,
    /// Polygons of the maximal cubes containing the vertex.
    pub family: Vec<usize>,
    /// The isolated edge used, when the vertex lies in an edge-cube.
    pub edge_cube: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("dual vertex {vertex}: polygons {polygons:?} pairwise meet but have empty intersection")]
    EmptyIntersection { vertex: usize, polygons: Vec<usize> },
    #[error("dual vertex {vertex}: the common intersection of its polygons is not a path")]
    NotSegment { vertex: usize },
    #[error("dual vertex {vertex} lies in an unclassified maximal cube {cube}")]
    Unclassified { vertex: usize, cube: usize },
}

/// Sends dual vertex `v` to the complex. In an edge-cube, to the matching end
/// of the isolated edge; otherwise to the centre of the common intersection
/// of the polygons of all maximal cubes at `v` (a polygon or a path).
pub fn dual_projection(
    x: &PolygonalComplex,
    dual: &DualCubeComplex,
    classes: &[CubeClass],
    v: usize,
) -> Result<Projection, ProjectionError> {
    let cubes = dual.median.cubes();
    let mut family = Vec::new();
    for class in classes {
        if cubes[class.cube].vertices.binary_search(&v).is_err() {
            continue;
        }
        match class.tag {
            CubeTag::EdgeCube { edge } => {
                let [a, b] = x.edges[edge].ends;
                let end = if dual.principal[a] == v { a } else { b };
                return Ok(Projection { point: XPoint::Vertex(end), family: Vec::new(), edge_cube: Some(edge) });
            }
            CubeTag::CellCube { polygon } => family.push(polygon),
            CubeTag::Unmatched => return Err(ProjectionError::Unclassified { vertex: v, cube: class.cube }),
        }
    }
    family.sort_unstable();
    if family.len() == 1 {
        return Ok(Projection { point: XPoint::PolygonCenter(family[0]), family, edge_cube: None });
    }
    let common: Vec<usize> =
        (0..x.n()).filter(|&u| family.iter().all(|&p| x.polygons[p].has_vertex(u))).collect();
    let common_edges: Vec<usize> = (0..x.edges.len())
        .filter(|&e| family.iter().all(|&p| x.polygons[p].position_of_edge(e).is_some()))
        .collect();
    if common.is_empty() {
        return Err(ProjectionError::EmptyIntersection { vertex: v, polygons: family });
    }
    let path = order_path(x, &common, &common_edges).ok_or(ProjectionError::NotSegment { vertex: v })?;
    let point = match path.len() {
        1 => XPoint::Vertex(path[0]),
        2 => XPoint::EdgeMidpoint(common_edges[0]),
        _ => XPoint::SegmentMidpoint(path),
    };
    Ok(Projection { point, family, edge_cube: None })
}

/// Orders `vs` along `es` when they form a single path.
fn order_path(x: &PolygonalComplex, vs: &[usize], es: &[usize]) -> Option<Vec<usize>> {
    if es.len() + 1 != vs.len() {
        return None;
    }
    let deg = |u: usize| es.iter().filter(|&&e| x.edges[e].ends.contains(&u)).count();
    let start = vs.iter().copied().find(|&u| deg(u) <= 1)?;
    let mut path = vec![start];
    let mut used = vec![false; es.len()];
    while path.len() < vs.len() {
        let cur = *path.last().expect("nonempty");
        let k = (0..es.len()).find(|&k| !used[k] && x.edges[es[k]].ends.contains(&cur))?;
        used[k] = true;
        let [a, b] = x.edges[es[k]].ends;
        path.push(if a == cur { b } else { a });
    }
    Some(path)
}

/// Side of a point relative to a wall, or `None` when the wall passes
/// through it.
fn point_side(x: &PolygonalComplex, wall: &Wall, wall_of_edge: &[usize], p: &XPoint) -> Option<usize> {
    match p {
        XPoint::Vertex(v) => Some(wall.side_of(*v)),
        XPoint::EdgeMidpoint(e) => (wall_of_edge[*e] != wall.id).then(|| wall.side_of(x.edges[*e].ends[0])),
        XPoint::SegmentMidpoint(path) => {
            let l = path.len() - 1;
            if l % 2 == 0 {
                Some(wall.side_of(path[l / 2]))
            } else {
                let (a, b) = (path[l / 2], path[l / 2 + 1]);
                (wall.side_of(a) == wall.side_of(b)).then(|| wall.side_of(a))
            }
        }
        XPoint::PolygonCenter(p) => {
            (!wall.polygons.contains(p)).then(|| wall.side_of(x.polygons[*p].vertices[0]))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferCheck {
    pub r: usize,
    /// Dual vertex pairs separated by at least `r + 2` disjoint hyperplanes.
    pub pairs: usize,
    /// `(u, w, disjoint dual hyperplanes, disjoint walls)` for failures.
    pub failures: Vec<(usize, usize, usize, usize)>,
}

impl TransferCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every pair of dual vertices separated by at least `R + 2` pairwise
/// disjoint hyperplanes, checks that their projections are separated by at
/// least `R` pairwise disjoint walls, for each `R <= r_max`.
pub fn separation_transfer(
    x: &PolygonalComplex,
    walls: &[Wall],
    dual: &DualCubeComplex,
    points: &[XPoint],
    r_max: usize,
) -> Vec<TransferCheck> {
    let crossings = wall_crossings(x, walls);
    let wall_of_edge = edge_walls(x, walls);
    let sides: Vec<Vec<Option<usize>>> =
        points.iter().map(|p| walls.iter().map(|w| point_side(x, w, &wall_of_edge, p)).collect()).collect();
    let mut checks: Vec<TransferCheck> = (0..=r_max).map(|r| TransferCheck { r, pairs: 0, failures: Vec::new() }).collect();
    let n = dual.median.n();
    for u in 0..n {
        for w in u + 1..n {
            let sep = dual.median.separating(u, w);
            let k = crate::mediancore::max_disjoint_family(&dual.median, &sep).len();
            if k < 2 {
                continue;
            }
            let xs: Vec<usize> = (0..walls.len())
                .filter(|&i| matches!((sides[u][i], sides[w][i]), (Some(a), Some(b)) if a != b))
                .collect();
            let xk = max_clique(&xs, |a, b| !crossings[a].contains(b)).len();
            for c in checks.iter_mut().filter(|c| k >= c.r + 2) {
                c.pairs += 1;
                if xk < c.r {
                    c.failures.push((u, w, k, xk));
                }
            }
        }
    }
    checks
}

/// Looks for pairwise intersecting polygons, at most `max_size` of them,
/// with empty common intersection.
pub fn lemma_intersection_check(x: &PolygonalComplex, max_size: usize) -> Option<Vec<usize>> {
    let np = x.polygons.len();
    let verts: Vec<FixedBitSet> = x
        .polygons
        .iter()
        .map(|p| {
            let mut b = FixedBitSet::with_capacity(x.n());
            p.vertices.iter().for_each(|&v| b.insert(v));
            b
        })
        .collect();
    let meets = |a: usize, b: usize| !verts[a].is_disjoint(&verts[b]);
    fn grow(
        chosen: &mut Vec<usize>,
        common: &FixedBitSet,
        from: usize,
        np: usize,
        max_size: usize,
        verts: &[FixedBitSet],
        meets: &dyn Fn(usize, usize) -> bool,
    ) -> Option<Vec<usize>> {
        if common.count_ones(..) == 0 {
            return Some(chosen.clone());
        }
        if chosen.len() == max_size {
            return None;
        }
        for q in from..np {
            if chosen.iter().all(|&p| meets(p, q)) {
                let mut c = common.clone();
                c.intersect_with(&verts[q]);
                chosen.push(q);
                let found = grow(chosen, &c, q + 1, np, max_size, verts, meets);
                chosen.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }
    (0..np).find_map(|p| grow(&mut vec![p], &verts[p], p + 1, np, max_size, &verts, &meets))
}

/// Looks for two disjoint polygons that no wall separates.
pub fn polygon_separation_check(x: &PolygonalComplex, walls: &[Wall]) -> Option<(usize, usize)> {
    let np = x.polygons.len();
    let side = |w: &Wall, p: usize| {
        let s = w.side_of(x.polygons[p].vertices[0]);
        x.polygons[p].vertices.iter().all(|&v| w.side_of(v) == s).then_some(s)
    };
    for p in 0..np {
        for q in p + 1..np {
            let disjoint = !x.polygons[p].vertices.iter().any(|&v| x.polygons[q].has_vertex(v));
            if disjoint && !walls.iter().any(|w| matches!((side(w, p), side(w, q)), (Some(a), Some(b)) if a != b)) {
                return Some((p, q));
            }
        }
    }
    None
}
