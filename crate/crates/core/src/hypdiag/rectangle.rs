use fixedbitset::FixedBitSet;

use crate::graph::DistMatrix;
use crate::mediancore::MedianGraph;

/// An isometric copy of the grid `[0,a] x [0,b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatRectangle {
    pub a: usize,
    pub b: usize,
    /// Row-major: point `(i, j)` sits at index `i * (b + 1) + j`.
    pub embedding: Vec<usize>,
}

impl FlatRectangle {
    pub fn at(&self, i: usize, j: usize) -> usize {
        self.embedding[i * (self.b + 1) + j]
    }

    pub fn thickness(&self) -> usize {
        self.a.min(self.b)
    }

    /// Checks `d(φ(p), φ(q)) = |p - q|₁` for every pair of grid points.
    pub fn is_isometric(&self, d: &DistMatrix) -> bool {
        let pts: Vec<(usize, usize)> = (0..=self.a).flat_map(|i| (0..=self.b).map(move |j| (i, j))).collect();
        pts.iter().enumerate().all(|(s, &(i, j))| {
            pts[s + 1..].iter().all(|&(k, l)| d.get(self.at(i, j), self.at(k, l)) as usize == i.abs_diff(k) + j.abs_diff(l))
        })
    }

    /// Largest distance between two of its vertices under `d`.
    pub fn diameter_in(&self, d: &DistMatrix) -> u32 {
        let vs = &self.embedding;
        vs.iter().flat_map(|&u| vs.iter().map(move |&v| d.get(u, v))).max().unwrap_or(0)
    }

    fn square(k: usize, phi: &[Vec<usize>]) -> Self {
        FlatRectangle { a: k, b: k, embedding: phi.iter().flat_map(|row| row.iter().copied()).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectangleSearch {
    /// Largest `L` admitting an `L`-thick flat rectangle.
    pub thickness: usize,
    /// An `L x L` witness.
    pub witness: Option<FlatRectangle>,
    pub exact: bool,
    pub nodes: u64,
}

/// Grows flat squares one row and column at a time from every corner. A
/// square of side `k + 1` is fixed by a side-`k` square plus one new edge at
/// each far corner of its two base sides; the rest follows by square
/// completion. New edges must cross hyperplanes not yet used, which keeps
/// every row and column geodesic.
pub fn max_thick_rectangle(g: &MedianGraph, cap: u64) -> RectangleSearch {
    let limit = (g.distances().diameter() / 2) as usize;
    let mut s = SquareSearch { g, limit, best: None, nodes: 0, cap, capped: false };
    for o in 0..g.n() {
        if s.capped || s.best.as_ref().is_some_and(|r| r.a >= limit) {
            break;
        }
        let used = FixedBitSet::with_capacity(g.hyperplanes().len());
        s.grow(&[vec![o]], &used);
    }
    let witness = s.best;
    RectangleSearch {
        thickness: witness.as_ref().map_or(0, |r| r.a),
        witness,
        exact: !s.capped,
        nodes: s.nodes,
    }
}

struct SquareSearch<'a> {
    g: &'a MedianGraph,
    limit: usize,
    best: Option<FlatRectangle>,
    nodes: u64,
    cap: u64,
    capped: bool,
}

impl SquareSearch<'_> {
    fn grow(&mut self, phi: &[Vec<usize>], used: &FixedBitSet) {
        let k = phi.len() - 1;
        if k > 0 && self.best.as_ref().is_none_or(|r| r.a < k) {
            self.best = Some(FlatRectangle::square(k, phi));
        }
        if k >= self.limit {
            return;
        }
        let g = self.g;
        for &(hv, x) in g.crossing_list(phi[k][0]) {
            for &(hh, y) in g.crossing_list(phi[0][k]) {
                if self.capped || self.best.as_ref().is_some_and(|r| r.a >= self.limit) {
                    return;
                }
                if used.contains(hv) || used.contains(hh) || hv == hh || (k == 0 && hv >= hh) {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.cap {
                    self.capped = true;
                    return;
                }
                if let Some(next) = extend(g, phi, hv, x, hh, y) {
                    let mut used2 = used.clone();
                    used2.insert(hv);
                    used2.insert(hh);
                    self.grow(&next, &used2);
                }
            }
        }
    }
}

/// Adds row `k + 1` across `hv` and column `k + 1` across `hh`.
fn extend(g: &MedianGraph, phi: &[Vec<usize>], hv: usize, x: usize, hh: usize, y: usize) -> Option<Vec<Vec<usize>>> {
    let k = phi.len() - 1;
    let mut next: Vec<Vec<usize>> = phi
        .iter()
        .map(|row| row.iter().copied().chain([usize::MAX]).collect())
        .collect();
    next.push(vec![usize::MAX; k + 2]);
    next[k + 1][0] = x;
    next[0][k + 1] = y;
    let graph = g.graph();
    // Column entry `j` of the new row needs the new column's entry at row
    // `j - 1`, so the two are filled in lockstep.
    for j in 1..=k + 1 {
        let c = g.cross(next[k][j], hv).filter(|&c| graph.has_edge(c, next[k + 1][j - 1]))?;
        next[k + 1][j] = c;
        if j <= k {
            let i = j;
            let c = g.cross(next[i][k], hh).filter(|&c| graph.has_edge(c, next[i - 1][k + 1]))?;
            next[i][k + 1] = c;
        }
    }
    Some(next)
}

/// Calls `visit` on every flat rectangle with both sides at least
/// `min_side`, once per corner and orientation. Returns false if `cap`
/// stopped the enumeration.
pub fn for_each_flat_rectangle(g: &MedianGraph, min_side: usize, cap: u64, mut visit: impl FnMut(&FlatRectangle)) -> bool {
    let mut nodes = 0u64;
    for o in 0..g.n() {
        let used = FixedBitSet::with_capacity(g.hyperplanes().len());
        if !rows(g, &mut vec![o], &used, min_side.max(1), cap, &mut nodes, &mut visit) {
            return false;
        }
    }
    true
}

/// Extends the bottom row `path` (a geodesic), then hands over to `columns`.
fn rows(
    g: &MedianGraph,
    path: &mut Vec<usize>,
    used: &FixedBitSet,
    min_side: usize,
    cap: u64,
    nodes: &mut u64,
    visit: &mut impl FnMut(&FlatRectangle),
) -> bool {
    if path.len() > min_side {
        let layers = vec![path.clone()];
        if !columns(g, &layers, used, min_side, cap, nodes, visit) {
            return false;
        }
    }
    let end = *path.last().expect("nonempty");
    for &(h, w) in g.crossing_list(end) {
        if used.contains(h) {
            continue;
        }
        *nodes += 1;
        if *nodes > cap {
            return false;
        }
        let mut used2 = used.clone();
        used2.insert(h);
        path.push(w);
        let ok = rows(g, path, &used2, min_side, cap, nodes, visit);
        path.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// `layers[j]` is row `j` of the rectangle, indexed by the first coordinate.
fn columns(
    g: &MedianGraph,
    layers: &[Vec<usize>],
    used: &FixedBitSet,
    min_side: usize,
    cap: u64,
    nodes: &mut u64,
    visit: &mut impl FnMut(&FlatRectangle),
) -> bool {
    let b = layers.len() - 1;
    let a = layers[0].len() - 1;
    if b >= min_side {
        let embedding = (0..=a).flat_map(|i| layers.iter().map(move |row| row[i])).collect();
        visit(&FlatRectangle { a, b, embedding });
    }
    let last = &layers[b];
    for &(h, y) in g.crossing_list(last[0]) {
        if used.contains(h) {
            continue;
        }
        *nodes += 1;
        if *nodes > cap {
            return false;
        }
        let mut row = vec![y];
        for i in 1..=a {
            match g.cross(last[i], h).filter(|&c| g.graph().has_edge(c, row[i - 1])) {
                Some(c) => row.push(c),
                None => break,
            }
        }
        if row.len() != a + 1 {
            continue;
        }
        let mut used2 = used.clone();
        used2.insert(h);
        let mut next = layers.to_vec();
        next.push(row);
        if !columns(g, &next, &used2, min_side, cap, nodes, visit) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn rectangle_examples() {
        let g = MedianGraph::new(build::grid(5, 4)).unwrap();
        let r = max_thick_rectangle(&g, u64::MAX);
        assert_eq!(r.thickness, 4);
        assert!(r.witness.unwrap().is_isometric(g.distances()));

        let t = MedianGraph::new(build::random_tree(20, 9)).unwrap();
        assert_eq!(max_thick_rectangle(&t, u64::MAX).thickness, 0);

        let q = MedianGraph::new(build::hypercube(4)).unwrap();
        let r = max_thick_rectangle(&q, u64::MAX);
        assert_eq!(r.thickness, 2);
        assert!(r.witness.unwrap().is_isometric(q.distances()));
    }

    #[test]
    fn rectangle_enumeration_counts() {
        // A 2x1 grid has one 2x1 and two 1x1 rectangles; each appears once per
        // corner and orientation, so 8 times.
        let g = MedianGraph::new(build::grid(2, 1)).unwrap();
        let mut seen = Vec::new();
        assert!(for_each_flat_rectangle(&g, 1, u64::MAX, |r| {
            assert!(r.is_isometric(g.distances()));
            seen.push((r.a.max(r.b), r.a.min(r.b)));
        }));
        assert_eq!(seen.iter().filter(|&&p| p == (1, 1)).count(), 16);
        assert_eq!(seen.iter().filter(|&&p| p == (2, 1)).count(), 8);
    }
}
