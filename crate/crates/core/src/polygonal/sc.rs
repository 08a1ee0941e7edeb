use std::collections::{BTreeSet, VecDeque};

use num_rational::Ratio;

use super::PolygonalComplex;

/// A maximal path in the intersection of two distinct polygons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyPiece {
    pub polygons: (usize, usize),
    /// Edges in order along the first polygon.
    pub edges: Vec<usize>,
    /// Side position of the first edge in each polygon.
    pub starts: (usize, usize),
}

impl PolyPiece {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Pieces of positive length. Common edges of two embedded cycles with
/// different boundaries split into paths; each run along the first polygon
/// is one piece.
pub fn pieces(x: &PolygonalComplex) -> Vec<PolyPiece> {
    let mut pairs = BTreeSet::new();
    for inc in &x.incidence {
        for (i, &(p, _)) in inc.iter().enumerate() {
            for &(q, _) in &inc[i + 1..] {
                pairs.insert((p.min(q), p.max(q)));
            }
        }
    }
    let mut out = Vec::new();
    for (p, q) in pairs {
        let (pp, qq) = (&x.polygons[p], &x.polygons[q]);
        let m = pp.len();
        let common: Vec<bool> = (0..m).map(|i| qq.position_of_edge(pp.edge_at(i)).is_some()).collect();
        let gap = common.iter().position(|&c| !c).expect("distinct boundaries");
        let mut i = gap + 1;
        while i <= gap + m {
            if !common[i % m] {
                i += 1;
                continue;
            }
            let start = i;
            while i <= gap + m && common[i % m] {
                i += 1;
            }
            let edges: Vec<usize> = (start..i).map(|k| pp.edge_at(k)).collect();
            // The run is a path in Q too; its first edge there is whichever
            // end Q reaches first.
            let a = qq.position_of_edge(edges[0]).expect("common");
            let b = qq.position_of_edge(*edges.last().expect("nonempty")).expect("common");
            let q_start = if edges.len() == 1 || (b + 1) % qq.len() == (a + edges.len()) % qq.len() { a } else { b };
            out.push(PolyPiece { polygons: (p, q), edges, starts: (start % m, q_start) });
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPrimeCheck {
    pub pass: bool,
    pub max_ratio: Ratio<i64>,
    /// Piece index and the polygon it is measured against.
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub pass: bool,
    /// Per polygon, the fewest pieces covering its boundary; `None` when
    /// some side lies in no piece.
    pub min_cover: Vec<Option<usize>>,
    /// A polygon with a cover by fewer than `n` pieces, and that cover.
    pub witness: Option<(usize, Vec<usize>)>,
}

/// A shortest cycle of length at least 3 in a vertex link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkCycle {
    pub vertex: usize,
    /// Edges of the complex at `vertex`, in cyclic order.
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TCheck {
    pub pass: bool,
    /// Shortest cycle of length at least 3 over all links.
    pub shortest: Option<LinkCycle>,
    /// Pairs of parallel link edges (cycles of length two, always allowed).
    pub two_cycles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScVerdicts {
    pub pieces: Vec<PolyPiece>,
    pub cprime: CPrimeCheck,
    pub cover: CoverCheck,
    pub t: TCheck,
}

/// `C′(λ)`, `C(n_c)` and `T(n_t)` for a complex.
pub fn sc_check(x: &PolygonalComplex, lambda: Ratio<i64>, n_c: usize, n_t: usize) -> ScVerdicts {
    let ps = pieces(x);
    let mut best: Option<(Ratio<i64>, usize, usize)> = None;
    for (k, piece) in ps.iter().enumerate() {
        for p in [piece.polygons.0, piece.polygons.1] {
            let ratio = Ratio::new(piece.len() as i64, x.polygons[p].len() as i64);
            if best.is_none_or(|b| ratio > b.0) {
                best = Some((ratio, k, p));
            }
        }
    }
    let cprime = CPrimeCheck {
        pass: best.is_none_or(|b| b.0 < lambda),
        max_ratio: best.map_or(Ratio::from_integer(0), |b| b.0),
        witness: best.map(|b| (b.1, b.2)),
    };

    let covers: Vec<Option<Vec<usize>>> = (0..x.polygons.len()).map(|p| min_piece_cover(x, &ps, p)).collect();
    let witness = covers
        .iter()
        .enumerate()
        .filter_map(|(p, c)| c.as_ref().filter(|c| c.len() < n_c).map(|c| (p, c.clone())))
        .min_by_key(|(_, c)| c.len());
    let cover = CoverCheck {
        pass: witness.is_none(),
        min_cover: covers.iter().map(|c| c.as_ref().map(Vec::len)).collect(),
        witness,
    };

    let mut shortest: Option<LinkCycle> = None;
    let mut two_cycles = 0;
    for (v, link) in x.links.iter().enumerate() {
        let mut pairs: Vec<(usize, usize)> = link.edges.iter().map(|&(a, b, _)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        two_cycles += pairs.windows(2).filter(|w| w[0] == w[1]).count();
        pairs.dedup();
        if let Some(cycle) = shortest_cycle(link.nodes.len(), &pairs) {
            if shortest.as_ref().is_none_or(|s| cycle.len() < s.edges.len()) {
                shortest = Some(LinkCycle { vertex: v, edges: cycle.into_iter().map(|i| link.nodes[i]).collect() });
            }
        }
    }
    let t = TCheck { pass: shortest.as_ref().is_none_or(|s| s.edges.len() >= n_t), shortest, two_cycles };
    ScVerdicts { pieces: ps, cprime, cover, t }
}

/// Girth of a simple graph with a shortest cycle, by BFS from every node.
fn shortest_cycle(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut best: Option<Vec<usize>> = None;
    for root in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w && dist[w] >= dist[u] {
                    let len = dist[u] + dist[w] + 1;
                    if best.as_ref().is_none_or(|b| len < b.len()) {
                        let up = |mut z: usize| {
                            let mut path = vec![z];
                            while z != root {
                                z = parent[z];
                                path.push(z);
                            }
                            path
                        };
                        let (pu, pw) = (up(u), up(w));
                        // A shortest cycle is simple exactly when the two tree
                        // paths meet only at the root.
                        if pu.iter().rev().skip(1).all(|z| !pw.contains(z)) {
                            let mut cycle: Vec<usize> = pu.into_iter().rev().collect();
                            cycle.extend(pw.into_iter().take(dist[w]));
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
    }
    best
}

/// Fewest pieces covering every side of polygon `p`, as piece indices.
/// Pieces are arcs of the boundary cycle; the cover is exact: for each arc
/// taken as the first one, greedy extension is optimal on the remaining line.
pub fn min_piece_cover(x: &PolygonalComplex, ps: &[PolyPiece], p: usize) -> Option<Vec<usize>> {
    let m = x.polygons[p].len();
    let arcs: Vec<(usize, usize, usize)> = ps
        .iter()
        .enumerate()
        .filter_map(|(k, piece)| {
            if piece.polygons.0 == p {
                Some((piece.starts.0, piece.len(), k))
            } else if piece.polygons.1 == p {
                Some((piece.starts.1, piece.len(), k))
            } else {
                None
            }
        })
        .collect();
    let mut covered = vec![false; m];
    for &(s, l, _) in &arcs {
        for i in s..s + l {
            covered[i % m] = true;
        }
    }
    if covered.iter().any(|&c| !c) {
        return None;
    }
    let mut best: Option<Vec<usize>> = None;
    for &(s0, l0, k0) in &arcs {
        let target = s0 + m;
        let mut reach = s0 + l0;
        let mut chosen = vec![k0];
        while reach < target {
            // Arcs starting at or before `reach`, unrolled past s0.
            let next = arcs
                .iter()
                .filter_map(|&(s, l, k)| {
                    let s = if s < s0 { s + m } else { s };
                    let s = if s > reach { s.checked_sub(m)? } else { s };
                    (s + l > reach).then_some((s + l, k))
                })
                .max();
            let Some((end, k)) = next else { break };
            reach = end;
            chosen.push(k);
            if best.as_ref().is_some_and(|b| chosen.len() >= b.len()) {
                break;
            }
        }
        if reach >= target && best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
            best = Some(chosen);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;

    fn quarter() -> Ratio<i64> {
        Ratio::new(1, 4)
    }

    #[test]
    fn sc_examples() {
        for n in [2, 3, 4] {
            let v = sc_check(&fixtures::polygon(2 * n), Ratio::new(1, 100), 4, 4);
            assert!(v.pieces.is_empty() && v.cprime.pass && v.cover.pass && v.t.pass);
        }
        let v = sc_check(&fixtures::hexagon_pair(), quarter(), 4, 4);
        assert_eq!(v.pieces.len(), 1);
        assert_eq!(v.pieces[0].len(), 1);
        assert!(v.cprime.pass && v.t.pass);
        assert_eq!(v.cprime.max_ratio, Ratio::new(1, 6));

        let v = sc_check(&fixtures::three_squares(), quarter(), 4, 4);
        assert!(!v.t.pass);
        assert_eq!(v.t.shortest.unwrap().edges.len(), 3);

        let v = sc_check(&fixtures::octagon_flower(), quarter(), 4, 4);
        assert!(v.cprime.pass && v.t.pass, "{:?} {:?}", v.cprime, v.t);
        assert_eq!(v.t.shortest.unwrap().edges.len(), 4);
    }

    #[test]
    fn covers() {
        // The middle squares of a chain have two pieces and two free sides.
        let x = fixtures::square_chain(3);
        let v = sc_check(&x, quarter(), 4, 4);
        assert!(!v.cprime.pass);
        assert_eq!(v.cover.min_cover, vec![None, None, None]);

        // A square whose every side is shared: four neighbours.
        let mut b = fixtures::ComplexBuilder::new();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        b.polygon("C", &s(&["a", "b", "c", "d"]));
        b.polygon("N1", &s(&["b", "a", "p", "q"]));
        b.polygon("N2", &s(&["c", "b", "r", "t"]));
        b.polygon("N3", &s(&["d", "c", "u", "w"]));
        b.polygon("N4", &s(&["a", "d", "y", "z"]));
        let x = b.build();
        let v = sc_check(&x, quarter(), 4, 4);
        assert_eq!(v.cover.min_cover[0], Some(4));
        assert!(v.cover.pass);
        assert!(!sc_check(&x, quarter(), 5, 4).cover.pass);
    }

    #[test]
    fn cover_oracle_on_long_pieces() {
        // An octagon sharing overlapping arcs with three others.
        let mut b = fixtures::ComplexBuilder::new();
        let ring: Vec<String> = (0..8).map(|i| format!("r{i}")).collect();
        b.polygon("R", &ring);
        let arc = |from: usize, len: usize, tag: &str| {
            let mut c: Vec<String> = (0..=len).map(|i| ring[(from + len - i) % 8].clone()).collect();
            c.extend((0..(8 - len - 1)).map(|i| format!("{tag}{i}")));
            c
        };
        b.polygon("A", &arc(0, 3, "a"));
        b.polygon("B", &arc(3, 3, "b"));
        b.polygon("C", &arc(5, 3, "c"));
        let x = b.build();
        let ps = pieces(&x);
        let cover = min_piece_cover(&x, &ps, 0).unwrap();
        // Brute force over subsets of pieces at R.
        let at_r: Vec<usize> = (0..ps.len()).filter(|&k| ps[k].polygons.0 == 0).collect();
        let mut brute = usize::MAX;
        for mask in 1u32..1 << at_r.len() {
            let mut covered = BTreeSet::new();
            for (bit, &k) in at_r.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    covered.extend(ps[k].edges.iter().copied());
                }
            }
            if covered.len() == 8 {
                brute = brute.min(mask.count_ones() as usize);
            }
        }
        assert_eq!(cover.len(), brute);
        assert_eq!(brute, 3);
    }
}
