//! Fixtures and brute-force oracles shared by the integration tests. The
//! oracles only use graph adjacency and hyperplane sides, never the search
//! code they are compared against.
#![allow(dead_code)]

use std::collections::VecDeque;

use cubecone::build;
use cubecone::graph::{Graph, NamedSet};
use cubecone::mediancore::MedianGraph;
use cubecone::polygonal::{self, fixtures, PolygonalComplex, DEFAULT_MAX_DUAL};

pub fn bfs(g: &Graph, s: usize) -> Vec<u32> {
    bfs_adj(&adjacency(g), s)
}

pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect()
}

pub fn bfs_adj(adj: &[Vec<usize>], s: usize) -> Vec<u32> {
    let mut d = vec![u32::MAX; adj.len()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in &adj[u] {
            if d[w] == u32::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

pub fn all_pairs(g: &Graph) -> Vec<Vec<u32>> {
    (0..g.n()).map(|s| bfs(g, s)).collect()
}

/// Every vertex lying on a geodesic between each two of `x, y, z`.
pub fn brute_medians(d: &[Vec<u32>], [x, y, z]: [usize; 3]) -> Vec<usize> {
    (0..d.len())
        .filter(|&m| {
            d[x][m] + d[m][y] == d[x][y] && d[y][m] + d[m][z] == d[y][z] && d[x][m] + d[m][z] == d[x][z]
        })
        .collect()
}

/// First triple (in lexicographic order) without a unique median.
pub fn brute_median_violation(g: &Graph) -> Option<[usize; 3]> {
    let d = all_pairs(g);
    let n = g.n();
    for x in 0..n {
        for y in x..n {
            for z in y..n {
                if brute_medians(&d, [x, y, z]).len() != 1 {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

/// The 50 cube-complex skeletons used for median recognition.
pub fn median_skeletons() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for i in 0..10 {
        let n = 5 + 4 * i;
        out.push((format!("tree{n}#{i}"), build::random_tree(n, 100 + i as u64)));
    }
    for i in 0..10 {
        let (a, b) = (3 + i % 5, 4 + (i * 3) % 7);
        let g = build::product(&build::random_tree(a, 200 + i as u64), &build::random_tree(b, 300 + i as u64));
        out.push((format!("tree{a}xtree{b}#{i}"), g));
    }
    for (a, b) in [(1, 1), (1, 5), (2, 2), (2, 7), (3, 3), (3, 9), (4, 4), (5, 6), (6, 6), (9, 9)] {
        out.push((format!("grid{a}x{b}"), build::grid(a, b)));
    }
    for n in 1..=5 {
        out.push((format!("cube{n}"), build::hypercube(n)));
    }
    for i in 0..5 {
        let g = build::product(&build::random_tree(4 + 2 * i, 400 + i as u64), &build::hypercube(1 + i % 3));
        out.push((format!("tree x cube#{i}"), g));
    }
    for (a, b, c) in [(1, 1, 1), (2, 2, 2), (3, 2, 1), (4, 3, 2), (5, 5, 3)] {
        out.push((format!("grid{a}x{b}x{c}"), build::product(&build::grid(a, b), &build::path(c))));
    }
    for i in 0..5 {
        let t = build::random_tree(3 + i, 500 + i as u64);
        let g = build::product(&build::product(&t, &build::star(2 + i % 2)), &build::path(1));
        out.push((format!("tree x star x edge#{i}"), g));
    }
    assert_eq!(out.len(), 50);
    for (name, g) in &out {
        assert!(g.n() <= 200, "{name} has {} vertices", g.n());
    }
    out
}

/// Smaller median graphs (at most 120 vertices) for the quadratic and
/// quartic diagnostics.
pub fn small_fixtures() -> Vec<(String, MedianGraph)> {
    let mut gs: Vec<(String, Graph)> = vec![
        ("path6".into(), build::path(6)),
        ("star4".into(), build::star(4)),
        ("grid2x2".into(), build::grid(2, 2)),
        ("grid3x2".into(), build::grid(3, 2)),
        ("grid4x4".into(), build::grid(4, 4)),
        ("grid5x5".into(), build::grid(5, 5)),
        ("grid6x3".into(), build::grid(6, 3)),
        ("grid3x3x2".into(), build::product(&build::grid(3, 3), &build::path(2))),
        ("star3xstar3".into(), build::product(&build::star(3), &build::star(3))),
        ("path2xcube3".into(), build::product(&build::path(2), &build::hypercube(3))),
    ];
    for n in 2..=6 {
        gs.push((format!("cube{n}"), build::hypercube(n)));
    }
    for i in 0..3 {
        gs.push((format!("tree15#{i}"), build::random_tree(15, 600 + i)));
        let t = build::product(&build::random_tree(5 + i as usize, 700 + i), &build::random_tree(6, 800 + i));
        gs.push((format!("tree x tree#{i}"), t));
    }
    let mut out: Vec<(String, MedianGraph)> =
        gs.into_iter().map(|(name, g)| (name, MedianGraph::new(g).expect("fixture is median"))).collect();
    for (name, x) in fixtures::sc_fixtures() {
        let walls = polygonal::hypergraphs(&x);
        let dual = polygonal::dual_cube_complex(&x, &walls, DEFAULT_MAX_DUAL).expect("dual");
        if dual.median.n() <= 120 {
            out.push((format!("dual({name})"), dual.median));
        }
    }
    for (name, m) in &out {
        assert!(m.n() <= 120, "{name}");
    }
    out
}

/// Duals of the small-cancellation polygonal fixtures.
pub fn polygonal_duals() -> Vec<(String, PolygonalComplex)> {
    fixtures::sc_fixtures()
}

/// Interval `I(u, v)` under a distance table.
pub fn interval(d: &[Vec<u32>], u: usize, v: usize) -> Vec<usize> {
    (0..d.len()).filter(|&w| d[u][w] + d[w][v] == d[u][v]).collect()
}

/// ℓ∞ distances from an independently built cube cone-off: in a median
/// graph, `u` and `v` lie in a common cube exactly when the interval
/// between them has `2^d(u,v)` vertices.
pub fn linf_oracle(g: &Graph) -> Vec<Vec<u32>> {
    let d = all_pairs(g);
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            (0..n)
                .filter(|&v| v != u && d[u][v] < 30 && interval(&d, u, v).len() == 1usize << d[u][v])
                .collect()
        })
        .collect();
    (0..n).map(|s| bfs_adj(&adj, s)).collect()
}

// ---------------------------------------------------------------------
// Grid oracle: brute force over hyperplane subsets.

/// Side of hyperplane `h` holding every vertex of the carrier of `k`, if
/// there is one.
fn carrier_side(m: &MedianGraph, h: usize, k: usize) -> Option<usize> {
    let hp = m.hyperplane(h);
    let carrier = m.hyperplane(k).carrier(m.graph());
    let s = hp.side_of(carrier[0]);
    carrier.iter().all(|&v| hp.side_of(v) == s).then_some(s)
}

fn quarters_meet(m: &MedianGraph, a: usize, b: usize) -> bool {
    let (ha, hb) = (m.hyperplane(a), m.hyperplane(b));
    (0..m.n()).fold([false; 4], |mut q, v| {
        q[2 * ha.side_of(v) + hb.side_of(v)] = true;
        q
    }) == [true; 4]
}

pub struct GridOracle {
    pub thinness: usize,
    /// Maximal `(p, q)` with `p >= q`, descending in `p`.
    pub pareto: Vec<(usize, usize)>,
}

/// Enumerates every subset of hyperplanes that can serve as one family of
/// a grid: pairwise disjoint, and among any three one separates the other
/// two (so they can be ordered consecutively separating).
pub fn grid_oracle(m: &MedianGraph) -> GridOracle {
    let k = m.hyperplanes().len();
    assert!(k <= 16, "oracle limited to 16 hyperplanes");
    let transverse: Vec<Vec<bool>> = (0..k).map(|a| (0..k).map(|b| a != b && quarters_meet(m, a, b)).collect()).collect();
    let side: Vec<Vec<Option<usize>>> =
        (0..k).map(|h| (0..k).map(|j| if transverse[h][j] || h == j { None } else { carrier_side(m, h, j) }).collect()).collect();
    let separates = |h: usize, a: usize, b: usize| matches!((side[h][a], side[h][b]), (Some(x), Some(y)) if x != y);
    let is_chain = |mask: u32| {
        let items: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        for (i, &a) in items.iter().enumerate() {
            for &b in &items[i + 1..] {
                if transverse[a][b] {
                    return false;
                }
            }
        }
        for (i, &a) in items.iter().enumerate() {
            for (j, &b) in items.iter().enumerate().skip(i + 1) {
                for &c in &items[j + 1..] {
                    if !(separates(a, b, c) || separates(b, a, c) || separates(c, a, b)) {
                        return false;
                    }
                }
            }
        }
        true
    };
    let chains: Vec<u32> = (1u32..1 << k).filter(|&s| is_chain(s)).collect();
    let mut best_q = vec![0usize; k + 1];
    for &v in &chains {
        let t: u32 = (0..k)
            .filter(|&h| (0..k).all(|a| v >> a & 1 == 0 || transverse[a][h]))
            .fold(0, |acc, h| acc | 1 << h);
        let q = chains.iter().filter(|&&h| h & !t == 0).map(|h| h.count_ones() as usize).max().unwrap_or(0);
        let p = v.count_ones() as usize;
        best_q[p] = best_q[p].max(q);
    }
    let mut pairs: Vec<(usize, usize)> = (1..=k)
        .filter(|&p| best_q[p] > 0)
        .map(|p| (p.max(best_q[p]), p.min(best_q[p])))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut pareto: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|&(p, q)| !pairs.iter().any(|&(a, b)| (a, b) != (p, q) && a >= p && b >= q))
        .collect();
    pareto.sort_by(|a, b| b.cmp(a));
    GridOracle { thinness: pareto.iter().map(|p| p.1).max().unwrap_or(0), pareto }
}

// ---------------------------------------------------------------------
// Flat-rectangle oracle: exhaustive embedding enumeration.

/// Whether some map of the `side x side` grid into `g` preserves all
/// pairwise distances. Points are placed in row-major order and every
/// candidate is checked against every placed point.
pub fn square_embeds(d: &[Vec<u32>], side: usize) -> bool {
    let pts: Vec<(usize, usize)> = (0..=side).flat_map(|i| (0..=side).map(move |j| (i, j))).collect();
    let mut phi = Vec::with_capacity(pts.len());
    fn place(d: &[Vec<u32>], pts: &[(usize, usize)], phi: &mut Vec<usize>) -> bool {
        let k = phi.len();
        if k == pts.len() {
            return true;
        }
        let (i, j) = pts[k];
        for v in 0..d.len() {
            let ok = phi.iter().zip(pts).all(|(&w, &(a, b))| d[v][w] as usize == i.abs_diff(a) + j.abs_diff(b));
            if ok {
                phi.push(v);
                if place(d, pts, phi) {
                    return true;
                }
                phi.pop();
            }
        }
        false
    }
    place(d, &pts, &mut phi)
}

/// Largest `L` with an isometric `L x L` square.
pub fn rectangle_oracle(g: &Graph) -> usize {
    let d = all_pairs(g);
    let mut l = 0;
    while square_embeds(&d, l + 1) {
        l += 1;
    }
    l
}

// ---------------------------------------------------------------------
// Convex families for cone-off fixtures.

/// Intervals between the given vertex pairs; intervals are convex in a
/// median graph.
pub fn interval_family(m: &MedianGraph, pairs: &[(usize, usize)]) -> Vec<NamedSet> {
    let d = all_pairs(m.graph());
    pairs
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| NamedSet { name: format!("I{i}"), vertices: interval(&d, u, v) })
        .collect()
}

/// Every vertex lying on a geodesic between two vertices of `set`.
pub fn is_convex_oracle(d: &[Vec<u32>], set: &[usize]) -> bool {
    set.iter().all(|&a| set.iter().all(|&b| interval(d, a, b).iter().all(|w| set.contains(w))))
}
