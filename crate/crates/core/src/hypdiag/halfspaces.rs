use fixedbitset::FixedBitSet;

use crate::mediancore::MedianGraph;

/// Halfspace `2h + s` is side `s` of hyperplane `h`. Chains of strictly
/// decreasing halfspaces are exactly the consecutively separating families
/// of pairwise disjoint hyperplanes.
pub(crate) struct Halfspaces {
    /// `below[a]`: halfspaces of other hyperplanes strictly inside `a`.
    pub below: Vec<FixedBitSet>,
    pub above: Vec<FixedBitSet>,
    pub size: Vec<usize>,
    /// Ascending by size.
    pub order: Vec<usize>,
    /// Longest decreasing chain starting at each halfspace.
    pub ext: Vec<usize>,
}

pub(crate) fn hyp(a: usize) -> usize {
    a / 2
}

impl Halfspaces {
    pub fn new(g: &MedianGraph) -> Self {
        let hyps = g.hyperplanes();
        let k = 2 * hyps.len();
        let sets: Vec<&FixedBitSet> = hyps.iter().flat_map(|h| h.sides.iter()).collect();
        let size: Vec<usize> = sets.iter().map(|s| s.count_ones(..)).collect();
        let mut below = vec![FixedBitSet::with_capacity(k); k];
        let mut above = vec![FixedBitSet::with_capacity(k); k];
        for a in 0..k {
            for b in 0..k {
                if hyp(a) != hyp(b) && size[a] < size[b] && sets[a].is_subset(sets[b]) {
                    below[b].insert(a);
                    above[a].insert(b);
                }
            }
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&a| (size[a], a));
        let mut hs = Halfspaces { below, above, size, order, ext: Vec::new() };
        hs.ext = hs.chain_lengths(&full_set(hyps.len()));
        hs
    }

    pub fn count(&self) -> usize {
        self.size.len()
    }

    /// Longest decreasing chain starting at each halfspace, using only
    /// hyperplanes in `allowed`; zero outside it.
    fn chain_lengths(&self, allowed: &FixedBitSet) -> Vec<usize> {
        let mut best = vec![0usize; self.count()];
        for &a in &self.order {
            if allowed.contains(hyp(a)) {
                best[a] = 1 + self.below[a].ones().map(|b| best[b]).max().unwrap_or(0);
            }
        }
        best
    }

    /// A longest chain of halfspaces over `allowed`, outermost first.
    pub fn longest_chain(&self, allowed: &FixedBitSet) -> Vec<usize> {
        let best = self.chain_lengths(allowed);
        let Some(mut cur) = (0..self.count()).filter(|&a| best[a] > 0).max_by_key(|&a| (best[a], std::cmp::Reverse(a)))
        else {
            return Vec::new();
        };
        let mut chain = vec![cur];
        while best[cur] > 1 {
            cur = self.below[cur].ones().find(|&b| best[b] + 1 == best[cur]).expect("dp predecessor");
            chain.push(cur);
        }
        chain
    }
}

pub(crate) fn full_set(k: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(k);
    s.insert_range(..);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn chains_in_a_path() {
        let g = MedianGraph::new(build::path(4)).unwrap();
        let hs = Halfspaces::new(&g);
        assert_eq!(hs.count(), 8);
        assert_eq!(hs.ext.iter().max(), Some(&4));
        assert_eq!(hs.longest_chain(&full_set(4)).len(), 4);
        let mut two = FixedBitSet::with_capacity(4);
        two.insert(0);
        two.insert(3);
        assert_eq!(hs.longest_chain(&two).len(), 2);
    }
}
