use super::DiagError;
use crate::graph::{DistMatrix, Graph, NamedSet};
use crate::mediancore::{ConvexSet, MedianGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    /// Join every two vertices of a common member.
    Clique,
    /// Add one apex per member, adjacent to all of its vertices.
    Apex,
}

/// Why a vertex or edge of a cone-off exists beyond the base graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Added for the first member containing both endpoints.
    Edge { u: usize, v: usize, member: usize },
    Apex { apex: usize, member: usize },
}

#[derive(Debug, Clone)]
pub struct ConeOffGraph {
    pub kind: ConeKind,
    /// Base vertices keep their indices `0..base_n`; apexes follow.
    pub base_n: usize,
    pub graph: Graph,
    pub member_names: Vec<String>,
    pub members: Vec<ConvexSet>,
    pub provenance: Vec<Provenance>,
}

impl ConeOffGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.graph.n()).map(|v| self.graph.neighbors(v).to_vec()).collect()
    }

    pub fn distances(&self) -> DistMatrix {
        self.graph.distances()
    }

    /// Distances between base vertices.
    pub fn base_distances(&self) -> DistMatrix {
        self.distances().truncate(self.base_n)
    }

    pub fn apex_of(&self, member: usize) -> Option<usize> {
        self.provenance.iter().find_map(|p| match *p {
            Provenance::Apex { apex, member: m } if m == member => Some(apex),
            _ => None,
        })
    }
}

/// Cones off `family` over `g`. Every member must be convex.
pub fn cone_off(g: &MedianGraph, family: &[NamedSet], kind: ConeKind) -> Result<ConeOffGraph, DiagError> {
    let members = family
        .iter()
        .map(|s| {
            g.convex_set(&s.vertices)
                .map_err(|violation| DiagError::NonConvex { member: s.name.clone(), violation })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut graph = g.graph().clone();
    let mut provenance = Vec::new();
    match kind {
        ConeKind::Clique => {
            for (i, c) in members.iter().enumerate() {
                let vs = c.vertices();
                for (k, &u) in vs.iter().enumerate() {
                    for &v in &vs[k + 1..] {
                        if !graph.has_edge(u, v) {
                            graph.add_edge(u, v).expect("fresh edge");
                            provenance.push(Provenance::Edge { u, v, member: i });
                        }
                    }
                }
            }
        }
        ConeKind::Apex => {
            for (i, (c, s)) in members.iter().zip(family).enumerate() {
                let mut name = format!("apex:{}", s.name);
                while graph.vertex(&name).is_some() {
                    name.push('\'');
                }
                let apex = graph.add_vertex(&name).expect("fresh apex name");
                for &v in c.vertices() {
                    graph.add_edge(apex, v).expect("fresh edge");
                }
                provenance.push(Provenance::Apex { apex, member: i });
            }
        }
    }
    Ok(ConeOffGraph {
        kind,
        base_n: g.n(),
        graph,
        member_names: family.iter().map(|s| s.name.clone()).collect(),
        members,
        provenance,
    })
}

/// `d_clique <= d_apex <= 2 d_clique` on every pair of base vertices.
pub fn sandwich_holds(clique: &ConeOffGraph, apex: &ConeOffGraph) -> bool {
    let (c, a) = (clique.base_distances(), apex.base_distances());
    (0..c.n()).all(|u| (0..c.n()).all(|v| c.get(u, v) <= a.get(u, v) && a.get(u, v) <= 2 * c.get(u, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    fn rows(n: usize) -> Vec<NamedSet> {
        (0..=n)
            .map(|j| NamedSet { name: format!("row{j}"), vertices: (0..=n).map(|i| i * (n + 1) + j).collect() })
            .collect()
    }

    #[test]
    fn coneoff_examples() {
        let g = MedianGraph::new(build::grid(2, 1)).unwrap();
        let all = NamedSet { name: "all".into(), vertices: (0..g.n()).collect() };
        let y = cone_off(&g, &[all], ConeKind::Clique).unwrap();
        assert_eq!(y.distances().diameter(), 1);

        let g = MedianGraph::new(build::grid(3, 3)).unwrap();
        let clique = cone_off(&g, &rows(3), ConeKind::Clique).unwrap();
        let d = clique.base_distances();
        // One clique hop along a row, three steps across rows.
        assert_eq!(d.get(0, 15), 4);
        let apex = cone_off(&g, &rows(3), ConeKind::Apex).unwrap();
        assert_eq!(apex.graph.n(), 16 + 4);
        for m in 0..4 {
            assert_eq!(apex.graph.degree(apex.apex_of(m).unwrap()), 4);
        }
        assert!(sandwich_holds(&clique, &apex));
    }

    #[test]
    fn non_convex_member_is_reported() {
        let g = MedianGraph::new(build::grid(1, 1)).unwrap();
        let bad = NamedSet { name: "ell".into(), vertices: vec![0, 2, 3] };
        match cone_off(&g, &[bad], ConeKind::Apex) {
            Err(DiagError::NonConvex { member, .. }) => assert_eq!(member, "ell"),
            other => panic!("{other:?}"),
        }
    }
}
