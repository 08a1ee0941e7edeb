//! Finite polygonal complexes with even-sided cells: small-cancellation
//! conditions, hypergraphs (walls), the dual cube complex obtained by
//! cubulating the wallspace, and the projection back onto the complex.

mod dual;
pub mod fixtures;
mod sc;
mod walls;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::parse::{lines, ParseError};

pub use dual::{
    classify_maximal_cubes, dual_cube_complex, dual_projection, lemma_intersection_check, polygon_separation_check,
    separation_transfer, CubeClass, CubeTag, DualCubeComplex, DualError, Projection, ProjectionError, TransferCheck,
    XPoint, DEFAULT_MAX_DUAL,
};
pub use sc::{min_piece_cover, pieces, sc_check, CPrimeCheck, CoverCheck, LinkCycle, PolyPiece, ScVerdicts, TCheck};
pub use walls::{hypergraphs, wall_crossings, Wall};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: unknown edge `{name}`")]
    DanglingEdge { line: usize, name: String },
    #[error("line {line}: duplicate name `{name}`")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: edge `{name}` is a loop")]
    Loop { line: usize, name: String },
    #[error("polygon `{polygon}` has {sides} sides; polygons need an even number, at least 4")]
    OddPolygon { polygon: String, sides: usize },
    #[error("polygon `{polygon}`: side {position} does not start where the previous one ends")]
    NotClosed { polygon: String, position: usize },
    #[error("polygon `{polygon}` does not embed: vertex `{vertex}` repeats on its boundary")]
    NotEmbedded { polygon: String, vertex: String },
    #[error("polygons `{0}` and `{1}` have the same boundary")]
    DuplicateCell(String, String),
    #[error("the complex has no vertices")]
    Empty,
    #[error("the 1-skeleton is disconnected")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub ends: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pub name: String,
    /// `(edge, forward)`; a forward side runs from `ends[0]` to `ends[1]`.
    pub sides: Vec<(usize, bool)>,
    /// `vertices[i]` is where side `i` starts.
    pub vertices: Vec<usize>,
}

impl Polygon {
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    pub fn edge_at(&self, i: usize) -> usize {
        self.sides[i % self.sides.len()].0
    }

    pub fn position_of_edge(&self, e: usize) -> Option<usize> {
        self.sides.iter().position(|&(f, _)| f == e)
    }

    pub fn has_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

/// The link of a vertex: a node per incident edge, a link edge per corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    /// Incident edges; link nodes are indices into this list.
    pub nodes: Vec<usize>,
    /// `(node, node, polygon)`; parallel link edges are kept.
    pub edges: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonalComplex {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub polygons: Vec<Polygon>,
    /// Per edge, the polygons containing it with the side position.
    pub incidence: Vec<Vec<(usize, usize)>>,
    pub links: Vec<Link>,
}

impl PolygonalComplex {
    /// Checks polygons and builds links. Names are assumed distinct.
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>, polygons: Vec<(String, Vec<(usize, bool)>)>) -> Result<Self, PolyError> {
        if vertices.is_empty() {
            return Err(PolyError::Empty);
        }
        let mut cells = Vec::new();
        let mut boundaries: HashMap<BTreeSet<usize>, String> = HashMap::new();
        for (name, sides) in polygons {
            if sides.len() < 4 || sides.len() % 2 == 1 {
                return Err(PolyError::OddPolygon { polygon: name, sides: sides.len() });
            }
            let oriented = |&(e, fwd): &(usize, bool)| {
                let [a, b] = edges[e].ends;
                if fwd {
                    (a, b)
                } else {
                    (b, a)
                }
            };
            let mut verts = Vec::with_capacity(sides.len());
            for i in 0..sides.len() {
                let (start, _) = oriented(&sides[i]);
                let (_, prev_end) = oriented(&sides[(i + sides.len() - 1) % sides.len()]);
                if start != prev_end {
                    return Err(PolyError::NotClosed { polygon: name, position: i + 1 });
                }
                if verts.contains(&start) {
                    return Err(PolyError::NotEmbedded { polygon: name, vertex: vertices[start].clone() });
                }
                verts.push(start);
            }
            let boundary: BTreeSet<usize> = sides.iter().map(|s| s.0).collect();
            if let Some(other) = boundaries.get(&boundary) {
                return Err(PolyError::DuplicateCell(other.clone(), name));
            }
            boundaries.insert(boundary, name.clone());
            cells.push(Polygon { name, sides, vertices: verts });
        }
        let mut x = PolygonalComplex {
            incidence: vec![Vec::new(); edges.len()],
            links: Vec::new(),
            vertices,
            edges,
            polygons: cells,
        };
        if !x.is_connected() {
            return Err(PolyError::Disconnected);
        }
        for (p, poly) in x.polygons.iter().enumerate() {
            for (i, &(e, _)) in poly.sides.iter().enumerate() {
                x.incidence[e].push((p, i));
            }
        }
        x.links = (0..x.vertices.len()).map(|v| x.link(v)).collect();
        Ok(x)
    }

    fn link(&self, v: usize) -> Link {
        let nodes: Vec<usize> = (0..self.edges.len()).filter(|&e| self.edges[e].ends.contains(&v)).collect();
        let node = |e: usize| nodes.binary_search(&e).expect("incident edge");
        let mut edges = Vec::new();
        for (p, poly) in self.polygons.iter().enumerate() {
            if let Some(i) = poly.vertices.iter().position(|&w| w == v) {
                let before = poly.edge_at(i + poly.len() - 1);
                let after = poly.edge_at(i);
                edges.push((node(before), node(after), p));
            }
        }
        Link { nodes, edges }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Edges lying in no polygon.
    pub fn is_isolated(&self, e: usize) -> bool {
        self.incidence[e].is_empty()
    }

    /// Vertex adjacency of the 1-skeleton (multi-edges collapse).
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n()];
        for (e, edge) in self.edges.iter().enumerate() {
            let [a, b] = edge.ends;
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
        adj
    }

    fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            let _ = writeln!(s, "vertex {v}");
        }
        for e in &self.edges {
            let _ = writeln!(s, "edge {} {} {}", e.name, self.vertices[e.ends[0]], self.vertices[e.ends[1]]);
        }
        for p in &self.polygons {
            let _ = write!(s, "polygon {} :", p.name);
            for &(e, fwd) in &p.sides {
                let _ = write!(s, " {}{}", if fwd { '+' } else { '-' }, self.edges[e].name);
            }
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Named {
    name: String,
    line: usize,
}

/// A syntactically valid complex file whose references are not yet resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawComplex {
    vertices: Vec<Named>,
    edges: Vec<(Named, String, String)>,
    polygons: Vec<(Named, Vec<(String, bool)>)>,
}

/// Parses `vertex v`, `edge e v1 v2` and `polygon P : +e1 -e2 ...` lines.
pub fn parse_complex(text: &str) -> Result<RawComplex, ParseError> {
    let mut raw = RawComplex { vertices: Vec::new(), edges: Vec::new(), polygons: Vec::new() };
    for line in lines(text) {
        let t = &line.tokens;
        let named = |i: usize| Named { name: t[i].text.to_string(), line: line.number };
        match t[0].text {
            "vertex" if t.len() == 2 => raw.vertices.push(named(1)),
            "vertex" => return Err(line.error_at(&t[0], "expected `vertex <id>`")),
            "edge" if t.len() == 4 => raw.edges.push((named(1), t[2].text.to_string(), t[3].text.to_string())),
            "edge" => return Err(line.error_at(&t[0], "expected `edge <id> <vertex> <vertex>`")),
            "polygon" => {
                if t.len() < 3 || t[2].text != ":" {
                    let col = t.get(2).map_or(line.end_column(), |x| x.column);
                    return Err(line.error(col, "expected `polygon <id> : <±edge> ...`"));
                }
                let mut sides = Vec::new();
                for tok in &t[3..] {
                    let (fwd, name) = match tok.text.as_bytes()[0] {
                        b'+' => (true, &tok.text[1..]),
                        b'-' => (false, &tok.text[1..]),
                        _ => (true, tok.text),
                    };
                    if name.is_empty() {
                        return Err(line.error_at(tok, "missing edge name after sign"));
                    }
                    sides.push((name.to_string(), fwd));
                }
                raw.polygons.push((named(1), sides));
            }
            other => return Err(line.error_at(&t[0], format!("unknown keyword `{other}`"))),
        }
    }
    Ok(raw)
}

impl RawComplex {
    /// Resolves names and checks every cell; see [`PolygonalComplex::new`].
    pub fn validate(&self) -> Result<PolygonalComplex, PolyError> {
        let mut vindex = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vindex.insert(v.name.as_str(), i).is_some() {
                return Err(PolyError::Duplicate { line: v.line, name: v.name.clone() });
            }
        }
        let mut eindex = HashMap::new();
        let mut edges = Vec::new();
        for (i, (e, a, b)) in self.edges.iter().enumerate() {
            if eindex.insert(e.name.as_str(), i).is_some() {
                return Err(PolyError::Duplicate { line: e.line, name: e.name.clone() });
            }
            let look = |n: &str| vindex.get(n).copied().ok_or(PolyError::UnknownVertex { line: e.line, name: n.to_string() });
            let ends = [look(a)?, look(b)?];
            if ends[0] == ends[1] {
                return Err(PolyError::Loop { line: e.line, name: e.name.clone() });
            }
            edges.push(Edge { name: e.name.clone(), ends });
        }
        let mut seen = BTreeSet::new();
        let mut polygons = Vec::new();
        for (p, sides) in &self.polygons {
            if !seen.insert(p.name.as_str()) {
                return Err(PolyError::Duplicate { line: p.line, name: p.name.clone() });
            }
            let resolved = sides
                .iter()
                .map(|(n, fwd)| {
                    eindex.get(n.as_str()).map(|&e| (e, *fwd)).ok_or(PolyError::DanglingEdge { line: p.line, name: n.clone() })
                })
                .collect::<Result<Vec<_>, _>>()?;
            polygons.push((p.name.clone(), resolved));
        }
        PolygonalComplex::new(self.vertices.iter().map(|v| v.name.clone()).collect(), edges, polygons)
    }
}
