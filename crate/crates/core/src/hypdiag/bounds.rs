//! Quantitative checks tying flat rectangles to cone-off geometry.

use super::bigon::bigon_thinness;
use super::coneoff::ConeOffGraph;
use super::rectangle::for_each_flat_rectangle;
use super::DiagError;
use crate::mediancore::{ram_bound, MedianGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeOffBound {
    pub l: usize,
    /// Largest cone-off diameter of an `l`-thick flat rectangle.
    pub c: u32,
    /// Bigon thinness of base geodesics measured in the cone-off.
    pub thinness: u32,
    /// `thinness <= max(2l, c)`.
    pub holds: bool,
    pub exact: bool,
}

/// If every `l`-thick flat rectangle has diameter at most `c` in the
/// cone-off, base bigons are `max(2l, c)`-thin there.
pub fn coneoff_bigon_bound(g: &MedianGraph, y: &ConeOffGraph, l: usize, cap: u64, max_vertices: usize) -> Result<ConeOffBound, DiagError> {
    let dy = y.base_distances();
    let mut c = 0;
    let exact = for_each_flat_rectangle(g, l, cap, |r| c = c.max(r.diameter_in(&dy)));
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.graph().neighbors(v).to_vec()).collect();
    let thinness = bigon_thinness(&adj, g.distances(), &dy, max_vertices)?.thinness;
    let holds = thinness <= c.max(2 * l as u32);
    Ok(ConeOffBound { l, c, thinness, holds, exact })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterBound {
    pub side: usize,
    /// Largest cone-off diameter over flat rectangles with both sides at
    /// least `side`; zero if there are none.
    pub diameter: u32,
    pub bound: u64,
    pub holds: bool,
    pub exact: bool,
}

/// `RamBound(n)`-thick flat rectangles have diameter at most
/// `4 RamBound(n) + 3` in the contracting graph `gamma`.
pub fn rectangle_diameter_bound(g: &MedianGraph, gamma: &ConeOffGraph, n: u32, cap: u64) -> DiameterBound {
    let side = ram_bound(n) as usize;
    let d = gamma.base_distances();
    let mut diameter = 0;
    let exact = for_each_flat_rectangle(g, side, cap, |r| diameter = diameter.max(r.diameter_in(&d)));
    let bound = 4 * ram_bound(n) + 3;
    DiameterBound { side, diameter, bound, holds: u64::from(diameter) <= bound, exact }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::graph::NamedSet;
    use crate::hypdiag::{cone_off, contracting, ConeKind};

    #[test]
    fn bounds_on_a_grid() {
        let g = MedianGraph::new(build::grid(4, 4)).unwrap();
        let rows: Vec<NamedSet> =
            (0..5).map(|j| NamedSet { name: format!("r{j}"), vertices: (0..5).map(|i| i * 5 + j).collect() }).collect();
        let y = cone_off(&g, &rows, ConeKind::Clique).unwrap();
        for l in 1..=3 {
            let b = coneoff_bigon_bound(&g, &y, l, u64::MAX, 1000).unwrap();
            assert!(b.holds, "{b:?}");
            assert!(b.exact);
        }
        let gamma = contracting(&g, 1, u64::MAX).gamma;
        let b = rectangle_diameter_bound(&g, &gamma, 1, u64::MAX);
        assert_eq!(b.side, 2);
        assert!(b.holds && b.exact);
    }
}
