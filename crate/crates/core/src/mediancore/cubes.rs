use std::collections::BTreeSet;

use super::MedianError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cube {
    pub dim: usize,
    /// Sorted, `2^dim` entries.
    pub vertices: Vec<usize>,
    /// Sorted, `dim` pairwise transverse hyperplanes.
    pub hyperplanes: Vec<usize>,
}

/// Maximal cubes correspond to maximal cliques of the "spans a square"
/// relation on the edges at any one of their corners.
#[allow(clippy::needless_range_loop)]
pub(super) fn maximal_cubes(g: &Graph, crossings: &[Vec<(usize, usize)>]) -> Result<Vec<Cube>, MedianError> {
    let cross = |v: usize, h: usize| -> Option<usize> {
        let list = &crossings[v];
        list.binary_search_by_key(&h, |&(hh, _)| hh).ok().map(|i| list[i].1)
    };
    let mut found = BTreeSet::new();
    for v in 0..g.n() {
        let nb = g.neighbors(v);
        if nb.is_empty() {
            found.insert(Cube { dim: 0, vertices: vec![v], hyperplanes: Vec::new() });
            continue;
        }
        let k = nb.len();
        let mut link = vec![vec![false; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let spans = g.neighbors(nb[i]).iter().any(|&d| d != v && g.has_edge(d, nb[j]));
                link[i][j] = spans;
                link[j][i] = spans;
            }
        }
        let mut cliques = Vec::new();
        bron_kerbosch(&link, Vec::new(), (0..k).collect(), Vec::new(), &mut cliques);
        for clique in cliques {
            let hyps: Vec<usize> = clique
                .iter()
                .map(|&i| crossings[v].iter().find(|&&(_, w)| w == nb[i]).expect("neighbour").0)
                .collect();
            let dim = hyps.len();
            let mut corners = vec![v; 1 << dim];
            for mask in 1usize..1 << dim {
                let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
                let from = corners[mask & !(1 << top)];
                corners[mask] = cross(from, hyps[top]).ok_or_else(|| MedianError::BadCube(g.name(v).to_string()))?;
            }
            let mut vertices = corners;
            vertices.sort_unstable();
            vertices.dedup();
            if vertices.len() != 1 << dim {
                return Err(MedianError::BadCube(g.name(v).to_string()));
            }
            let mut hyperplanes = hyps;
            hyperplanes.sort_unstable();
            found.insert(Cube { dim, vertices, hyperplanes });
        }
    }
    Ok(found.into_iter().collect())
}

fn bron_kerbosch(adj: &[Vec<bool>], r: Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = p.iter().chain(&x).copied().max_by_key(|&u| p.iter().filter(|&&w| adj[u][w]).count());
    let pivot = pivot.expect("nonempty");
    let candidates: Vec<usize> = p.iter().copied().filter(|&w| !adj[pivot][w]).collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().copied().filter(|&w| adj[v][w]).collect();
        let x2 = x.iter().copied().filter(|&w| adj[v][w]).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p.retain(|&w| w != v);
        x.push(v);
    }
}
