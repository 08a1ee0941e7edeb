use super::coneoff::{cone_off, ConeKind, ConeOffGraph};
use super::grid::{grid_through, Grid};
use crate::graph::NamedSet;
use crate::mediancore::MedianGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneVerdict {
    pub hyperplane: usize,
    pub dimension: usize,
    pub contracting: bool,
    /// An `(n, n)`-grid through the hyperplane, when one was found.
    pub grid: Option<Grid>,
    /// False if the grid search hit its cap without finding a grid.
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct ContractingReport {
    pub n: usize,
    pub verdicts: Vec<HyperplaneVerdict>,
    /// Clique cone-off over the carriers of the non-contracting hyperplanes.
    pub gamma: ConeOffGraph,
}

/// A hyperplane is `n`-contracting when its dimension is below `n` and no
/// `(n, n)`-grid contains it.
pub fn contracting(g: &MedianGraph, n: usize, cap: u64) -> ContractingReport {
    assert!(n >= 1, "n must be positive");
    let verdicts: Vec<HyperplaneVerdict> = g
        .hyperplanes()
        .iter()
        .map(|h| {
            // The grid is searched for even when the dimension already
            // decides, so that reports carry a witness.
            let r = grid_through(g, h.id, n, cap);
            let decided = h.dimension >= n || r.grid.is_some();
            HyperplaneVerdict {
                hyperplane: h.id,
                dimension: h.dimension,
                contracting: !decided,
                exact: decided || r.exact,
                grid: r.grid,
            }
        })
        .collect();
    let family: Vec<NamedSet> = verdicts
        .iter()
        .filter(|v| !v.contracting)
        .map(|v| NamedSet { name: format!("N{}", v.hyperplane), vertices: g.hyperplane(v.hyperplane).carrier(g.graph()) })
        .collect();
    let gamma = cone_off(g, &family, ConeKind::Clique).expect("hyperplane carriers are convex");
    ContractingReport { n, verdicts, gamma }
}
