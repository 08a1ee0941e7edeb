use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;

use super::PolygonalComplex;

/// A hypergraph: an equivalence class of edges under "opposite in a polygon".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub id: usize,
    /// Dual edges, ascending.
    pub edges: Vec<usize>,
    /// The hypercarrier: polygons containing a dual edge.
    pub polygons: Vec<usize>,
    /// Vertex sets left after cutting the dual edges, ordered by least vertex.
    pub components: Vec<Vec<usize>>,
    /// Whether some polygon meets the wall in two pairs of opposite sides.
    pub self_crossing: bool,
}

impl Wall {
    pub fn two_sided(&self) -> bool {
        self.components.len() == 2
    }

    /// Side of vertex `v`: the index of its component.
    pub fn side_of(&self, v: usize) -> usize {
        self.components.iter().position(|c| c.binary_search(&v).is_ok()).expect("every vertex lies in a component")
    }

    /// A single edge lying in no polygon.
    pub fn is_isolated_edge(&self, x: &PolygonalComplex) -> bool {
        self.edges.len() == 1 && x.is_isolated(self.edges[0])
    }
}

/// Walls via union-find over opposite sides, ordered by least dual edge.
pub fn hypergraphs(x: &PolygonalComplex) -> Vec<Wall> {
    let ne = x.edges.len();
    let mut uf = UnionFind::<usize>::new(ne);
    for p in &x.polygons {
        let half = p.len() / 2;
        for i in 0..half {
            uf.union(p.edge_at(i), p.edge_at(i + half));
        }
    }
    let labels = uf.into_labeling();
    let mut roots: Vec<usize> = Vec::new();
    let mut class = vec![0; ne];
    for e in 0..ne {
        let r = labels[e];
        class[e] = match roots.iter().position(|&q| q == r) {
            Some(k) => k,
            None => {
                roots.push(r);
                roots.len() - 1
            }
        };
    }
    let adj = x.adjacency();
    (0..roots.len())
        .map(|w| {
            let edges: Vec<usize> = (0..ne).filter(|&e| class[e] == w).collect();
            let mut polygons: Vec<usize> = edges.iter().flat_map(|&e| x.incidence[e].iter().map(|&(p, _)| p)).collect();
            polygons.sort_unstable();
            polygons.dedup();
            let self_crossing = polygons.iter().any(|&p| {
                let poly = &x.polygons[p];
                (0..poly.len() / 2).filter(|&i| class[poly.edge_at(i)] == w).count() > 1
            });
            let components = cut(x.n(), &adj, |e| class[e] == w);
            Wall { id: w, edges, polygons, components, self_crossing }
        })
        .collect()
}

fn cut(n: usize, adj: &[Vec<(usize, usize)>], removed: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for &(w, e) in &adj[v] {
                if !removed(e) && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// `crossings[a]` holds the walls meeting wall `a` inside some polygon.
pub fn wall_crossings(x: &PolygonalComplex, walls: &[Wall]) -> Vec<FixedBitSet> {
    let mut of_edge = vec![0; x.edges.len()];
    for w in walls {
        for &e in &w.edges {
            of_edge[e] = w.id;
        }
    }
    let mut out = vec![FixedBitSet::with_capacity(walls.len()); walls.len()];
    for p in &x.polygons {
        let through: Vec<usize> = (0..p.len() / 2).map(|i| of_edge[p.edge_at(i)]).collect();
        for &a in &through {
            for &b in &through {
                if a != b {
                    out[a].insert(b);
                }
            }
        }
    }
    out
}
