use petgraph::unionfind::UnionFind;

use super::{ones, DefiningGraph, Mask, RacgError};

/// Largest defining graph for which large joins are enumerated.
pub const MAX_JOIN_VERTICES: usize = 20;

/// Vertex sets of the induced 4-cycles, in canonical order.
pub fn induced_squares(dg: &DefiningGraph) -> Vec<Mask> {
    let n = dg.n();
    let mut out = Vec::new();
    for a in 0..n {
        for c in a + 1..n {
            if dg.commute(a, c) {
                continue;
            }
            let common: Vec<usize> = ones(dg.link(a) & dg.link(c)).collect();
            for (i, &b) in common.iter().enumerate() {
                for &d in &common[i + 1..] {
                    if !dg.commute(b, d) {
                        out.push(1 << a | 1 << b | 1 << c | 1 << d);
                    }
                }
            }
        }
    }
    canonical(out)
}

pub fn square_vertices(dg: &DefiningGraph) -> Mask {
    induced_squares(dg).into_iter().fold(0, |m, s| m | s)
}

/// `s` spans a join of two non-complete subgraphs: the complement of the
/// induced subgraph has at least two components with two or more vertices.
pub fn is_large_join(dg: &DefiningGraph, s: Mask) -> bool {
    let mut left = s;
    let mut big = 0;
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = 1u64 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = s & !dg.link(v) & !comp & !(1 << v);
            comp |= fresh;
            frontier |= fresh;
        }
        left &= !comp;
        if comp.count_ones() >= 2 {
            big += 1;
        }
    }
    big >= 2
}

/// Inclusion-maximal large joins by exhaustive subset scan.
pub fn maximal_large_joins(dg: &DefiningGraph) -> Result<Vec<Mask>, RacgError> {
    let n = dg.n();
    if n > MAX_JOIN_VERTICES {
        return Err(RacgError::TooManyForJoins { n, limit: MAX_JOIN_VERTICES });
    }
    let mut masks: Vec<Mask> = (0..1u64 << n).filter(|&m| m.count_ones() >= 4).collect();
    masks.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut kept: Vec<Mask> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&k| m & k == m) && is_large_join(dg, m) {
            kept.push(m);
        }
    }
    Ok(canonical(kept))
}

/// `l` together with every vertex whose link meets `l` in a non-complete set.
pub fn cp(dg: &DefiningGraph, l: Mask) -> Mask {
    (0..dg.n()).filter(|&v| !dg.is_complete(dg.link(v) & l)).fold(l, |m, v| m | 1 << v)
}

/// Sorted by vertex lists, duplicates removed.
fn canonical(mut v: Vec<Mask>) -> Vec<Mask> {
    v.sort_by_key(|&m| ones(m).collect::<Vec<_>>());
    v.dedup();
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seed {
    Squares,
    LargeJoins,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JInfinity {
    pub members: Vec<Mask>,
    /// Every stage from the seed to the fixed point.
    pub trace: Vec<Vec<Mask>>,
}

/// Merges members whose intersection is not complete, closes each merged
/// union under `cp` once, and repeats until nothing changes.
pub fn j_infinity(dg: &DefiningGraph, seed: Seed) -> Result<JInfinity, RacgError> {
    let start = match seed {
        Seed::Squares => induced_squares(dg),
        Seed::LargeJoins => maximal_large_joins(dg)?,
    };
    let mut trace = vec![start];
    loop {
        let cur = trace.last().expect("seeded");
        let next = step(dg, cur);
        if &next == cur {
            break;
        }
        trace.push(next);
    }
    Ok(JInfinity { members: trace.last().expect("seeded").clone(), trace })
}

fn step(dg: &DefiningGraph, cur: &[Mask]) -> Vec<Mask> {
    let k = cur.len();
    let mut uf = UnionFind::<usize>::new(k);
    for i in 0..k {
        for j in i + 1..k {
            if !dg.is_complete(cur[i] & cur[j]) {
                uf.union(i, j);
            }
        }
    }
    let mut unions = vec![0u64; k];
    for (i, &m) in cur.iter().enumerate() {
        unions[uf.find(i)] |= m;
    }
    canonical((0..k).filter(|&i| uf.find(i) == i).map(|i| cp(dg, unions[i])).collect())
}

/// A failed join-decomposition condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UncoveredLargeJoin(Mask),
    IncompleteIntersection(Mask, Mask),
    Link { vertex: usize, member: Mask },
}

/// Checks the three join-decomposition conditions; empty means valid.
pub fn validate_decomposition(dg: &DefiningGraph, members: &[Mask]) -> Result<Vec<Violation>, RacgError> {
    let mut out = Vec::new();
    for j in maximal_large_joins(dg)? {
        if !members.iter().any(|&m| j & m == j) {
            out.push(Violation::UncoveredLargeJoin(j));
        }
    }
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !dg.is_complete(a & b) {
                out.push(Violation::IncompleteIntersection(a, b));
            }
        }
    }
    for &m in members {
        for v in 0..dg.n() {
            if m >> v & 1 == 0 && !dg.is_complete(dg.link(v) & m) {
                out.push(Violation::Link { vertex: v, member: m });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelHypReport {
    pub relatively_hyperbolic: bool,
    pub peripherals: Vec<Mask>,
    pub trace: Vec<Vec<Mask>>,
    /// Join-decomposition check of the result; `None` above the large-join
    /// enumeration limit.
    pub violations: Option<Vec<Violation>>,
}

/// The group is relatively hyperbolic exactly when the canonical join
/// decomposition is not the whole graph; its members are the peripherals.
pub fn relhyp_report(dg: &DefiningGraph) -> RelHypReport {
    let j = j_infinity(dg, Seed::Squares).expect("square seeding has no size limit");
    let violations = validate_decomposition(dg, &j.members).ok();
    RelHypReport {
        relatively_hyperbolic: j.members != [dg.all()],
        peripherals: j.members,
        trace: j.trace,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractingGenerators {
    pub square_vertices: Mask,
    /// Per generator: contracting iff it lies on no induced square.
    pub contracting: Vec<bool>,
    /// Stars of the generators on induced squares.
    pub stars: Vec<Mask>,
    /// `None` above the enumeration limit.
    pub maximal_large_joins: Option<Vec<Mask>>,
}

pub fn contracting_generators(dg: &DefiningGraph) -> ContractingGenerators {
    let sq = square_vertices(dg);
    ContractingGenerators {
        square_vertices: sq,
        contracting: (0..dg.n()).map(|v| sq >> v & 1 == 0).collect(),
        stars: canonical(ones(sq).map(|v| dg.star(v)).collect()),
        maximal_large_joins: maximal_large_joins(dg).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    fn cycle(n: usize) -> DefiningGraph {
        DefiningGraph::new(build::cycle(n)).unwrap()
    }

    /// Squares `0123` and `6789` joined by the path `3 - 4 - 5 - 6`.
    fn two_squares() -> DefiningGraph {
        let names: Vec<String> = (0..10).map(|i| i.to_string()).collect();
        let vs: Vec<&str> = names.iter().map(String::as_str).collect();
        let es = [(0, 1), (1, 2), (2, 3), (3, 0), (6, 7), (7, 8), (8, 9), (9, 6), (3, 4), (4, 5), (5, 6)];
        let es: Vec<(&str, &str)> = es.iter().map(|&(a, b)| (vs[a], vs[b])).collect();
        DefiningGraph::new(build::named(&vs, &es)).unwrap()
    }

    #[test]
    fn squares_and_joins() {
        assert_eq!(square_vertices(&cycle(4)), 0b1111);
        assert_eq!(square_vertices(&cycle(5)), 0);
        let pendant = DefiningGraph::new(build::named(
            &["a", "b", "c", "d", "p"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "p")],
        ))
        .unwrap();
        assert_eq!(square_vertices(&pendant), 0b01111);
        assert_eq!(maximal_large_joins(&cycle(4)).unwrap(), vec![0b1111]);
        assert!(maximal_large_joins(&cycle(5)).unwrap().is_empty());
        assert!(!is_large_join(&cycle(4), 0b0111));
    }

    #[test]
    fn cp_examples() {
        let pendant = DefiningGraph::new(build::named(
            &["a", "b", "c", "d", "p"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "p")],
        ))
        .unwrap();
        assert_eq!(cp(&pendant, 0b01111), 0b01111);
        let cone = DefiningGraph::new(build::named(
            &["a", "b", "c", "d", "v"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("v", "a"), ("v", "c")],
        ))
        .unwrap();
        assert_eq!(cp(&cone, 0b01111), 0b11111);
        assert_eq!(cp(&cone, cone.all()), cone.all());
    }

    #[test]
    fn decomposition_examples() {
        let c5 = cycle(5);
        assert!(j_infinity(&c5, Seed::Squares).unwrap().members.is_empty());
        assert!(relhyp_report(&c5).relatively_hyperbolic);

        let c4 = cycle(4);
        let r = relhyp_report(&c4);
        assert_eq!(r.peripherals, vec![0b1111]);
        assert!(!r.relatively_hyperbolic);

        let g = two_squares();
        let r = relhyp_report(&g);
        assert_eq!(r.peripherals, vec![0b1111, 0b11_1100_0000]);
        assert!(r.relatively_hyperbolic);
        assert_eq!(r.violations, Some(vec![]));
        assert_eq!(j_infinity(&g, Seed::LargeJoins).unwrap().members, r.peripherals);
    }

    #[test]
    fn violations_are_reported() {
        let g = two_squares();
        let v = validate_decomposition(&g, &[0b1111]).unwrap();
        assert!(v.contains(&Violation::UncoveredLargeJoin(0b11_1100_0000)));
        let v = validate_decomposition(&g, &[0b1111, 0b1110]).unwrap();
        assert!(v.iter().any(|x| matches!(x, Violation::IncompleteIntersection(..))));
    }
}
