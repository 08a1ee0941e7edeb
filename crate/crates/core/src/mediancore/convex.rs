use fixedbitset::FixedBitSet;
use thiserror::Error;

use super::MedianGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvexError {
    #[error("empty vertex set")]
    Empty,
    #[error("vertex {outside} lies on a geodesic between {a} and {b} but not in the set")]
    Violation {
        a: usize,
        b: usize,
        outside: usize,
        /// A geodesic from `a` to `b` through `outside`.
        geodesic: Vec<usize>,
    },
}

/// A combinatorially convex vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexSet {
    bits: FixedBitSet,
    vertices: Vec<usize>,
}

impl ConvexSet {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Result of projecting one convex set onto another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateImage {
    pub image: ConvexSet,
    /// Hyperplanes crossing the image; equal to those crossing both sets.
    pub crossing: Vec<usize>,
}

impl MedianGraph {
    /// Interval-closure test. On failure reports a geodesic leaving the set.
    pub fn convex_set(&self, vertices: &[usize]) -> Result<ConvexSet, ConvexError> {
        if vertices.is_empty() {
            return Err(ConvexError::Empty);
        }
        let mut bits = FixedBitSet::with_capacity(self.n());
        for &v in vertices {
            bits.insert(v);
        }
        let d = self.distances();
        let members: Vec<usize> = bits.ones().collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                let dab = d.get(a, b);
                for v in 0..self.n() {
                    if !bits.contains(v) && d.get(a, v) + d.get(v, b) == dab {
                        let mut geodesic = self.geodesic(a, v);
                        geodesic.extend(self.geodesic(v, b).into_iter().skip(1));
                        return Err(ConvexError::Violation { a, b, outside: v, geodesic });
                    }
                }
            }
        }
        Ok(ConvexSet { bits, vertices: members })
    }

    pub fn is_convex(&self, vertices: &[usize]) -> Result<bool, ConvexError> {
        match self.convex_set(vertices) {
            Ok(_) => Ok(true),
            Err(ConvexError::Violation { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Lexicographically first shortest path from `a` to `b`.
    pub fn geodesic(&self, a: usize, b: usize) -> Vec<usize> {
        let d = self.distances();
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = *self
                .graph()
                .neighbors(cur)
                .iter()
                .find(|&&w| d.get(w, b) + 1 == d.get(cur, b))
                .expect("connected");
            path.push(cur);
        }
        path
    }

    /// Gate projection of a vertex onto a convex set: the unique nearest vertex.
    pub fn project(&self, c: &ConvexSet, x: usize) -> usize {
        let d = self.distances();
        let best = c.vertices.iter().copied().min_by_key(|&v| (d.get(x, v), v)).expect("nonempty");
        debug_assert_eq!(
            c.vertices.iter().filter(|&&v| d.get(x, v) == d.get(x, best)).count(),
            1,
            "nearest point is unique on median graphs"
        );
        best
    }

    /// Every hyperplane separating `x` from its projection separates `x` from `c`.
    pub fn projection_separation_holds(&self, c: &ConvexSet, x: usize) -> bool {
        let p = self.project(c, x);
        self.separating(x, p).into_iter().all(|h| {
            let hx = self.hyperplane(h).side_of(x);
            c.vertices.iter().all(|&v| self.hyperplane(h).side_of(v) != hx)
        })
    }

    /// Hyperplanes with both halfspaces meeting `set`.
    pub fn crossing_hyperplanes(&self, set: &FixedBitSet) -> Vec<usize> {
        self.hyperplanes().iter().filter(|h| h.crosses(set)).map(|h| h.id).collect()
    }

    /// Projection of a convex set `s2` onto `c`.
    pub fn project_set(&self, c: &ConvexSet, s2: &ConvexSet) -> GateImage {
        let mut image: Vec<usize> = s2.vertices.iter().map(|&x| self.project(c, x)).collect();
        image.sort_unstable();
        image.dedup();
        let image = self.convex_set(&image).expect("projections of convex sets are convex");
        let crossing = self.crossing_hyperplanes(&image.bits);
        debug_assert_eq!(crossing, {
            let both: Vec<usize> = self.crossing_hyperplanes(&c.bits);
            let other = self.crossing_hyperplanes(&s2.bits);
            both.into_iter().filter(|h| other.contains(h)).collect::<Vec<_>>()
        });
        GateImage { image, crossing }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    fn grid(a: usize, b: usize) -> (MedianGraph, impl Fn(usize, usize) -> usize) {
        (MedianGraph::new(build::grid(a, b)).unwrap(), move |i: usize, j: usize| i * (b + 1) + j)
    }

    #[test]
    fn convexity_examples() {
        let (g, at) = grid(3, 3);
        let row: Vec<usize> = (0..=3).map(|i| at(i, 0)).collect();
        assert!(g.is_convex(&row).unwrap());
        assert_eq!(g.convex_set(&[]), Err(ConvexError::Empty));

        let (g, at) = grid(1, 1);
        match g.convex_set(&[at(0, 0), at(1, 0), at(1, 1)]) {
            Err(ConvexError::Violation { outside, geodesic, .. }) => {
                assert_eq!(outside, at(0, 1));
                assert_eq!(geodesic.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn projection_examples() {
        let (g, at) = grid(3, 3);
        let row0 = g.convex_set(&(0..=3).map(|i| at(i, 0)).collect::<Vec<_>>()).unwrap();
        let row3 = g.convex_set(&(0..=3).map(|i| at(i, 3)).collect::<Vec<_>>()).unwrap();
        assert_eq!(g.project(&row0, at(2, 3)), at(2, 0));
        assert_eq!(g.project(&row0, at(1, 0)), at(1, 0));
        let gate = g.project_set(&row0, &row3);
        assert_eq!(gate.image, row0);
        assert_eq!(gate.crossing.len(), 3);
        assert!(gate.crossing.iter().all(|&h| g.hyperplane(h).separates(at(0, 0), at(1, 0))
            || g.hyperplane(h).separates(at(1, 0), at(2, 0))
            || g.hyperplane(h).separates(at(2, 0), at(3, 0))));
        for x in 0..g.n() {
            assert!(g.projection_separation_holds(&row0, x));
        }
    }
}
