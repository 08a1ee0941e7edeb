use super::MedianGraph;

/// Upper bound `binomial(2d, d)` for the two-colour Ramsey number with
/// monochromatic cliques of size `d + 1`.
pub fn ram_bound(d: u32) -> u64 {
    (1..=u64::from(d)).fold(1u64, |acc, i| acc * (u64::from(d) + i) / i)
}

/// Largest subfamily of `hyps` whose members are pairwise disjoint.
pub fn max_disjoint_family(g: &MedianGraph, hyps: &[usize]) -> Vec<usize> {
    max_clique(hyps, |a, b| !g.is_transverse(a, b))
}

/// Largest subfamily of `hyps` whose members are pairwise transverse.
pub fn max_transverse_family(g: &MedianGraph, hyps: &[usize]) -> Vec<usize> {
    max_clique(hyps, |a, b| g.is_transverse(a, b))
}

pub(crate) fn max_clique(items: &[usize], adjacent: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let k = items.len();
    let adj: Vec<Vec<bool>> =
        (0..k).map(|i| (0..k).map(|j| i != j && adjacent(items[i], items[j])).collect()).collect();
    let mut best = Vec::new();
    let mut current = Vec::new();
    extend(&adj, &mut current, (0..k).collect(), &mut best);
    let mut out: Vec<usize> = best.into_iter().map(|i| items[i]).collect();
    out.sort_unstable();
    out
}

fn extend(adj: &[Vec<bool>], current: &mut Vec<usize>, candidates: Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    for (pos, &v) in candidates.iter().enumerate() {
        if current.len() + candidates.len() - pos <= best.len() {
            return;
        }
        let next: Vec<usize> = candidates[pos + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
        current.push(v);
        extend(adj, current, next, best);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn ram_bound_values() {
        assert_eq!((0..5).map(ram_bound).collect::<Vec<_>>(), vec![1, 2, 6, 20, 70]);
    }

    #[test]
    fn families_in_a_grid() {
        let g = MedianGraph::new(build::grid(4, 2)).unwrap();
        let all: Vec<usize> = (0..g.hyperplanes().len()).collect();
        assert_eq!(max_disjoint_family(&g, &all).len(), 4);
        assert_eq!(max_transverse_family(&g, &all).len(), 2);
    }
}
