use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;

use super::MedianError;
use crate::graph::Graph;

/// An edge class of the square-opposition closure, with its two halfspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub id: usize,
    pub dual_edges: Vec<usize>,
    /// `sides[0]` contains the lower-indexed endpoint of the first dual edge.
    pub sides: [FixedBitSet; 2],
    /// Largest dimension of an inventory cube containing a dual edge.
    pub dimension: usize,
}

impl Hyperplane {
    pub fn side_of(&self, v: usize) -> usize {
        usize::from(!self.sides[0].contains(v))
    }

    pub fn separates(&self, x: usize, y: usize) -> bool {
        self.sides[0].contains(x) != self.sides[0].contains(y)
    }

    pub fn side_containing(&self, v: usize) -> &FixedBitSet {
        &self.sides[self.side_of(v)]
    }

    /// Endpoints of the dual edges, ascending.
    pub fn carrier(&self, g: &Graph) -> Vec<usize> {
        let mut vs = FixedBitSet::with_capacity(g.n());
        for &e in &self.dual_edges {
            let (u, v) = g.edges()[e];
            vs.insert(u);
            vs.insert(v);
        }
        vs.ones().collect()
    }

    /// Whether both halfspaces meet `set`.
    pub fn crosses(&self, set: &FixedBitSet) -> bool {
        !self.sides[0].is_disjoint(set) && !self.sides[1].is_disjoint(set)
    }
}

/// Union of opposite sides over every square; returns a dense class id per
/// edge, classes numbered by their smallest edge id.
pub(crate) fn edge_classes(g: &Graph) -> Vec<usize> {
    let mut uf = UnionFind::<usize>::new(g.m());
    let eid = |a: usize, b: usize| g.edge_id(a, b).expect("edge");
    for a in 0..g.n() {
        let nb = g.neighbors(a);
        for (i, &b) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                for d in common_neighbors(g.neighbors(b), g.neighbors(c)) {
                    if d != a {
                        uf.union(eid(a, b), eid(c, d));
                        uf.union(eid(a, c), eid(b, d));
                    }
                }
            }
        }
    }
    let mut dense = vec![usize::MAX; g.m()];
    let mut class = Vec::with_capacity(g.m());
    let mut next = 0;
    for e in 0..g.m() {
        let r = uf.find(e);
        if dense[r] == usize::MAX {
            dense[r] = next;
            next += 1;
        }
        class.push(dense[r]);
    }
    class
}

fn common_neighbors<'a>(a: &'a [usize], b: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    return Some(a[i - 1]);
                }
            }
        }
        None
    })
}

pub(super) fn build(g: &Graph, class: &[usize]) -> Result<Vec<Hyperplane>, MedianError> {
    let count = class.iter().copied().max().map_or(0, |c| c + 1);
    let mut dual: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (e, &c) in class.iter().enumerate() {
        dual[c].push(e);
    }
    let mut out = Vec::with_capacity(count);
    for (id, edges) in dual.into_iter().enumerate() {
        let (u, v) = g.edges()[edges[0]];
        let side_a = flood(g, u, class, id);
        let side_b = flood(g, v, class, id);
        let mut union = side_a.clone();
        union.union_with(&side_b);
        if !side_a.is_disjoint(&side_b) || union.count_ones(..) != g.n() {
            return Err(MedianError::BadHyperplane(id));
        }
        for &e in &edges {
            let (x, y) = g.edges()[e];
            if side_a.contains(x) == side_a.contains(y) {
                return Err(MedianError::BadHyperplane(id));
            }
        }
        out.push(Hyperplane { id, dual_edges: edges, sides: [side_a, side_b], dimension: 1 });
    }
    Ok(out)
}

/// Vertices reachable from `src` without crossing edges of class `cut`.
fn flood(g: &Graph, src: usize, class: &[usize], cut: usize) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(g.n());
    let mut queue = VecDeque::from([src]);
    seen.insert(src);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if !seen.contains(y) && class[g.edge_id(x, y).expect("edge")] != cut {
                seen.insert(y);
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Four-quarter-space test for every pair.
pub(super) fn transversality(hyps: &[Hyperplane]) -> Vec<FixedBitSet> {
    let k = hyps.len();
    let mut t = vec![FixedBitSet::with_capacity(k); k];
    for a in 0..k {
        for b in a + 1..k {
            let quarters = hyps[a].sides.iter().all(|sa| hyps[b].sides.iter().all(|sb| !sa.is_disjoint(sb)));
            if quarters {
                t[a].insert(b);
                t[b].insert(a);
            }
        }
    }
    t
}

pub(super) fn crossings(g: &Graph, class: &[usize]) -> Vec<Vec<(usize, usize)>> {
    (0..g.n())
        .map(|v| {
            let mut list: Vec<(usize, usize)> =
                g.neighbors(v).iter().map(|&w| (class[g.edge_id(v, w).expect("edge")], w)).collect();
            list.sort_unstable();
            list
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn classes_of_a_grid() {
        let g = build::grid(2, 1);
        let c = edge_classes(&g);
        assert_eq!(c.iter().max(), Some(&2));
        let hyps = build_all(&g);
        assert_eq!(hyps.iter().map(|h| h.dual_edges.len()).collect::<Vec<_>>(), vec![2, 3, 2]);
    }

    #[test]
    fn non_median_class_is_rejected() {
        // In a 6-cycle opposite edges are never related by squares, so each
        // class is a single edge that fails to disconnect.
        let g = build::cycle(6);
        assert!(matches!(build(&g, &edge_classes(&g)), Err(MedianError::BadHyperplane(_))));
    }

    fn build_all(g: &Graph) -> Vec<Hyperplane> {
        build(g, &edge_classes(g)).unwrap()
    }
}
