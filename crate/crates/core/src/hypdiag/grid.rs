use fixedbitset::FixedBitSet;

use super::halfspaces::{hyp, Halfspaces};
use crate::mediancore::MedianGraph;

/// Two families of hyperplanes, every vertical transverse to every
/// horizontal, each family pairwise disjoint and consecutively separating.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub verticals: Vec<usize>,
    pub horizontals: Vec<usize>,
}

impl Grid {
    pub fn thinness(&self) -> usize {
        self.verticals.len().min(self.horizontals.len())
    }

    pub fn transposed(&self) -> Grid {
        Grid { verticals: self.horizontals.clone(), horizontals: self.verticals.clone() }
    }

    /// Re-checks every grid condition from the hyperplane data.
    pub fn check(&self, g: &MedianGraph) -> Result<(), String> {
        if self.verticals.is_empty() || self.horizontals.is_empty() {
            return Err("empty family".into());
        }
        for &v in &self.verticals {
            for &h in &self.horizontals {
                if !g.is_transverse(v, h) {
                    return Err(format!("hyperplanes {v} and {h} are not transverse"));
                }
            }
        }
        check_family(g, &self.verticals)?;
        check_family(g, &self.horizontals)
    }
}

fn check_family(g: &MedianGraph, fam: &[usize]) -> Result<(), String> {
    for (i, &a) in fam.iter().enumerate() {
        for &b in &fam[i + 1..] {
            if a == b || g.is_transverse(a, b) {
                return Err(format!("hyperplanes {a} and {b} are not disjoint"));
            }
        }
    }
    for w in fam.windows(3) {
        let h = g.hyperplane(w[1]);
        let side = |k: usize| {
            let carrier = g.hyperplane(k).carrier(g.graph());
            let s = h.side_of(carrier[0]);
            carrier.iter().all(|&v| h.side_of(v) == s).then_some(s)
        };
        match (side(w[0]), side(w[2])) {
            (Some(a), Some(b)) if a != b => {}
            _ => return Err(format!("hyperplane {} does not separate {} from {}", w[1], w[0], w[2])),
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSearch {
    /// Maximal realisable `(p, q)` with `p >= q`, descending in `p`.
    pub pareto: Vec<(usize, usize)>,
    /// One witness per Pareto pair, with `p` verticals.
    pub witnesses: Vec<Grid>,
    /// Largest `min(p, q)` over all grids; zero without transverse pairs.
    pub thinness: usize,
    pub witness: Option<Grid>,
    /// False when the node cap stopped the search.
    pub exact: bool,
    pub nodes: u64,
}

struct Search<'a> {
    g: &'a MedianGraph,
    hs: &'a Halfspaces,
    /// `best_q[p]`: longest horizontal chain found against `p` verticals.
    best_q: Vec<usize>,
    witness: Vec<Option<Grid>>,
    nodes: u64,
    cap: u64,
    capped: bool,
}

impl Search<'_> {
    fn record(&mut self, chain: &[usize], horizontal: &[usize]) {
        let q = horizontal.len();
        let horizontals: Vec<usize> = horizontal.iter().map(|&a| hyp(a)).collect();
        for p in 1..=chain.len() {
            if self.best_q[p] < q {
                self.best_q[p] = q;
                self.witness[p] = Some(Grid {
                    verticals: chain[..p].iter().map(|&a| hyp(a)).collect(),
                    horizontals: horizontals.clone(),
                });
            }
        }
    }

    /// Explores decreasing chains extending `chain`; `t` holds the
    /// hyperplanes transverse to all of it.
    fn visit(&mut self, chain: &mut Vec<usize>, t: &FixedBitSet, horizontal: &[usize]) {
        self.nodes += 1;
        if self.nodes > self.cap {
            self.capped = true;
            return;
        }
        self.record(chain, horizontal);
        let last = *chain.last().expect("nonempty chain");
        let mut kids: Vec<usize> = self.hs.below[last].ones().collect();
        kids.sort_by_key(|&a| (std::cmp::Reverse(self.hs.ext[a]), a));
        for a in kids {
            if self.capped {
                return;
            }
            self.try_child(chain, t, a);
        }
    }

    fn try_child(&mut self, chain: &mut Vec<usize>, t: &FixedBitSet, a: usize) {
        let mut t2 = t.clone();
        t2.intersect_with(self.g.transverse_set(hyp(a)));
        let reach = (chain.len() + self.hs.ext[a]).min(self.best_q.len() - 1);
        if t2.count_ones(..) <= self.best_q[reach] {
            return;
        }
        let horizontal = self.hs.longest_chain(&t2);
        if horizontal.len() <= self.best_q[reach] {
            return;
        }
        chain.push(a);
        self.visit(chain, &t2, &horizontal);
        chain.pop();
    }
}

/// Exhaustive search for maximal grids by branch and bound over vertical
/// chains; the horizontal family is a longest chain among the hyperplanes
/// transverse to every vertical. `cap` bounds the number of search nodes.
pub fn max_grid(g: &MedianGraph, cap: u64) -> GridSearch {
    let hs = Halfspaces::new(g);
    let k = g.hyperplanes().len();
    let mut s = Search {
        g,
        hs: &hs,
        best_q: vec![0; k + 1],
        witness: vec![None; k + 1],
        nodes: 0,
        cap,
        capped: false,
    };
    let mut roots: Vec<usize> = (0..hs.count()).collect();
    roots.sort_by_key(|&a| (std::cmp::Reverse(hs.ext[a]), a));
    let everything = super::halfspaces::full_set(k);
    let mut chain = Vec::new();
    for a in roots {
        if s.capped {
            break;
        }
        s.try_child(&mut chain, &everything, a);
    }

    let mut found: Vec<((usize, usize), Grid)> = Vec::new();
    for p in 1..=k {
        let q = s.best_q[p];
        if q > 0 && (p == k || s.best_q[p + 1] < q) {
            let grid = s.witness[p].clone().expect("witness recorded");
            let (pair, grid) = if p >= q { ((p, q), grid) } else { ((q, p), grid.transposed()) };
            if !found.iter().any(|(other, _)| *other == pair) {
                found.push((pair, grid));
            }
        }
    }
    found.sort_by_key(|(pair, _)| std::cmp::Reverse(*pair));
    // Transposition can leave a pair dominated by another one.
    let kept: Vec<((usize, usize), Grid)> = found
        .iter()
        .filter(|(pair, _)| !found.iter().any(|(o, _)| o != pair && o.0 >= pair.0 && o.1 >= pair.1))
        .cloned()
        .collect();
    let best = kept.iter().max_by_key(|(pair, _)| (pair.1, std::cmp::Reverse(pair.0)));
    GridSearch {
        thinness: best.map_or(0, |(pair, _)| pair.1),
        witness: best.map(|(_, grid)| grid.clone()),
        pareto: kept.iter().map(|(pair, _)| *pair).collect(),
        witnesses: kept.into_iter().map(|(_, grid)| grid).collect(),
        exact: !s.capped,
        nodes: s.nodes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThroughSearch {
    /// An `(n, n)`-grid with the hyperplane among its verticals.
    pub grid: Option<Grid>,
    pub exact: bool,
    pub nodes: u64,
}

/// Looks for an `(n, n)`-grid containing hyperplane `j`. The vertical chain
/// grows downwards from a halfspace of `j` first, then upwards, so each
/// chain is generated once.
pub fn grid_through(g: &MedianGraph, j: usize, n: usize, cap: u64) -> ThroughSearch {
    let hs = Halfspaces::new(g);
    let mut state = Through { hs: &hs, g, n, nodes: 0, cap, capped: false };
    let start = 2 * j;
    let t = g.transverse_set(j).clone();
    let grid = state.visit(&mut vec![start], &mut Vec::new(), &t, true);
    ThroughSearch { grid, exact: !state.capped, nodes: state.nodes }
}

struct Through<'a> {
    hs: &'a Halfspaces,
    g: &'a MedianGraph,
    n: usize,
    nodes: u64,
    cap: u64,
    capped: bool,
}

impl Through<'_> {
    /// `downs` starts with the halfspace of `j`; `ups` lists larger
    /// halfspaces, nearest first.
    fn visit(&mut self, downs: &mut Vec<usize>, ups: &mut Vec<usize>, t: &FixedBitSet, going_down: bool) -> Option<Grid> {
        self.nodes += 1;
        if self.nodes > self.cap {
            self.capped = true;
            return None;
        }
        if t.count_ones(..) < self.n {
            return None;
        }
        let horizontal = self.hs.longest_chain(t);
        if horizontal.len() < self.n {
            return None;
        }
        if downs.len() + ups.len() == self.n {
            let verticals = ups.iter().rev().chain(downs.iter()).map(|&a| hyp(a)).collect();
            let horizontals = horizontal[..self.n].iter().map(|&a| hyp(a)).collect();
            return Some(Grid { verticals, horizontals });
        }
        if going_down {
            let bottom = *downs.last().expect("nonempty");
            for a in self.hs.below[bottom].ones().collect::<Vec<_>>() {
                let t2 = restrict(self.g, t, a);
                downs.push(a);
                let found = self.visit(downs, ups, &t2, true);
                downs.pop();
                if found.is_some() || self.capped {
                    return found;
                }
            }
        }
        let top = ups.last().copied().unwrap_or(downs[0]);
        for a in self.hs.above[top].ones().collect::<Vec<_>>() {
            let t2 = restrict(self.g, t, a);
            ups.push(a);
            let found = self.visit(downs, ups, &t2, false);
            ups.pop();
            if found.is_some() || self.capped {
                return found;
            }
        }
        None
    }
}

fn restrict(g: &MedianGraph, t: &FixedBitSet, a: usize) -> FixedBitSet {
    let mut t2 = t.clone();
    t2.intersect_with(g.transverse_set(hyp(a)));
    t2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn grid_examples() {
        let g = MedianGraph::new(build::grid(3, 2)).unwrap();
        let r = max_grid(&g, u64::MAX);
        assert_eq!(r.pareto, vec![(3, 2)]);
        assert_eq!(r.thinness, 2);
        assert!(r.exact);
        r.witnesses[0].check(&g).unwrap();

        let t = MedianGraph::new(build::random_tree(15, 3)).unwrap();
        let r = max_grid(&t, u64::MAX);
        assert!(r.pareto.is_empty());
        assert_eq!(r.thinness, 0);

        let q = MedianGraph::new(build::hypercube(3)).unwrap();
        let r = max_grid(&q, u64::MAX);
        assert_eq!(r.pareto, vec![(1, 1)]);
        assert_eq!(r.thinness, 1);
    }

    #[test]
    fn cap_marks_lower_bound() {
        let g = MedianGraph::new(build::grid(4, 4)).unwrap();
        let r = max_grid(&g, 2);
        assert!(!r.exact);
        assert!(r.thinness <= 4);
    }

    #[test]
    fn through_search() {
        let g = MedianGraph::new(build::grid(3, 3)).unwrap();
        for j in 0..g.hyperplanes().len() {
            let r = grid_through(&g, j, 3, u64::MAX);
            let grid = r.grid.expect("every hyperplane of a 3x3 grid lies in a (3,3)-grid");
            grid.check(&g).unwrap();
            assert!(grid.verticals.contains(&j));
            assert!(grid_through(&g, j, 4, u64::MAX).grid.is_none());
        }
    }

    #[test]
    fn check_rejects_bad_grids() {
        let g = MedianGraph::new(build::grid(2, 2)).unwrap();
        let r = max_grid(&g, u64::MAX);
        let mut bad = r.witness.clone().unwrap();
        bad.horizontals = bad.verticals.clone();
        assert!(bad.check(&g).is_err());
    }
}
