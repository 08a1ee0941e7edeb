//! Small complexes used by the tests, the acceptance suite and the CLI.

use std::collections::HashMap;

use super::{Edge, PolygonalComplex};

/// Builds complexes from vertex cycles, reusing the edge between two
/// vertices when one exists.
#[derive(Debug, Default)]
pub struct ComplexBuilder {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    between: HashMap<(usize, usize), usize>,
    polygons: Vec<(String, Vec<(usize, bool)>)>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: &str) -> usize {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        self.vertices.push(name.to_string());
        self.index.insert(name.to_string(), self.vertices.len() - 1);
        self.vertices.len() - 1
    }

    /// Returns the edge and whether it runs from `a` to `b`.
    pub fn edge(&mut self, a: &str, b: &str) -> (usize, bool) {
        let (u, v) = (self.vertex(a), self.vertex(b));
        if let Some(&e) = self.between.get(&(u.min(v), u.max(v))) {
            return (e, self.edges[e].ends[0] == u);
        }
        self.edges.push(Edge { name: format!("e{}", self.edges.len()), ends: [u, v] });
        self.between.insert((u.min(v), u.max(v)), self.edges.len() - 1);
        (self.edges.len() - 1, true)
    }

    pub fn polygon(&mut self, name: &str, cycle: &[String]) -> &mut Self {
        let sides = (0..cycle.len()).map(|i| self.edge(&cycle[i], &cycle[(i + 1) % cycle.len()])).collect();
        self.polygons.push((name.to_string(), sides));
        self
    }

    pub fn build(self) -> PolygonalComplex {
        PolygonalComplex::new(self.vertices, self.edges, self.polygons).expect("fixture is valid")
    }
}

fn names(prefix: &str, k: usize) -> Vec<String> {
    (0..k).map(|i| format!("{prefix}{i}")).collect()
}

/// A single polygon with `sides` sides.
pub fn polygon(sides: usize) -> PolygonalComplex {
    let mut b = ComplexBuilder::new();
    b.polygon("P", &names("v", sides));
    b.build()
}

/// Two hexagons glued along one edge.
pub fn hexagon_pair() -> PolygonalComplex {
    let mut b = ComplexBuilder::new();
    b.polygon("P", &names("a", 6));
    let q: Vec<String> = ["a0", "a1", "b1", "b2", "b3", "b4"].map(String::from).to_vec();
    b.polygon("Q", &q);
    b.build()
}

/// Three squares around a common vertex, consecutive ones sharing an edge.
pub fn three_squares() -> PolygonalComplex {
    let mut b = ComplexBuilder::new();
    let cyc = |v: [&str; 4]| v.map(String::from).to_vec();
    b.polygon("A", &cyc(["o", "x", "ax", "y"]));
    b.polygon("B", &cyc(["o", "y", "by", "z"]));
    b.polygon("C", &cyc(["o", "z", "cz", "x"]));
    b.build()
}

/// A square with an isolated edge hanging off one corner.
pub fn square_with_edge() -> PolygonalComplex {
    let mut b = ComplexBuilder::new();
    b.polygon("P", &names("v", 4));
    b.edge("v0", "t");
    b.build()
}

/// One isolated edge.
pub fn isolated_edge() -> PolygonalComplex {
    let mut b = ComplexBuilder::new();
    b.edge("u", "v");
    b.build()
}

/// `k` squares in a row, consecutive ones sharing a rung.
pub fn square_chain(k: usize) -> PolygonalComplex {
    let mut b = ComplexBuilder::new();
    for i in 0..k {
        let cyc = vec![format!("t{i}"), format!("t{}", i + 1), format!("u{}", i + 1), format!("u{i}")];
        b.polygon(&format!("S{i}"), &cyc);
    }
    b.build()
}

/// `k` hexagons in a row; hexagon `i + 1` is glued along its side 0 to side
/// `gap` of hexagon `i` (`gap = 3`: opposite sides, a straight chain).
pub fn hexagon_chain(k: usize, gap: usize) -> PolygonalComplex {
    assert!((2..=4).contains(&gap), "side 0 must not touch the glued side");
    let mut b = ComplexBuilder::new();
    // Side j of hexagon i runs from vertex j to j + 1.
    let mut prev: Vec<String> = names("h0_", 6);
    b.polygon("H0", &prev);
    for i in 1..k {
        let mut cyc: Vec<String> = names(&format!("h{i}_"), 6);
        // Reversed orientation across the shared side.
        cyc[0] = prev[(gap + 1) % 6].clone();
        cyc[1] = prev[gap].clone();
        b.polygon(&format!("H{i}"), &cyc);
        prev = cyc;
    }
    b.build()
}

/// A central octagon ringed by sixteen octagons so that four cells meet at
/// each central vertex: every piece has length at most 1 and interior links
/// are 4-cycles.
pub fn octagon_flower() -> PolygonalComplex {
    let mut b = ComplexBuilder::new();
    let v = |i: usize| format!("c{}", i % 8);
    let x = |i: usize| format!("x{}", i % 8);
    let y = |i: usize| format!("y{}", i % 8);
    b.polygon("C", &(0..8).map(v).collect::<Vec<_>>());
    for i in 0..8 {
        // Edge cell on c_i c_{i+1}, using spoke b_i = c_i y_i and a_{i+1} = c_{i+1} x_{i+1}.
        let mut n = vec![v(i), v(i + 1), x(i + 1)];
        n.extend((0..4).map(|j| format!("n{i}_{j}")));
        n.push(y(i));
        b.polygon(&format!("N{i}"), &n);
        // Corner cell at c_i between its two spokes.
        let mut k = vec![v(i), y(i)];
        k.extend((0..5).map(|j| format!("k{i}_{j}")));
        k.push(x(i));
        b.polygon(&format!("K{i}"), &k);
    }
    b.build()
}

/// Named complexes satisfying `C′(1/4)` and `T(4)`.
pub fn sc_fixtures() -> Vec<(String, PolygonalComplex)> {
    let mut out = vec![
        ("square".to_string(), polygon(4)),
        ("hexagon".to_string(), polygon(6)),
        ("octagon".to_string(), polygon(8)),
        ("isolated-edge".to_string(), isolated_edge()),
        ("square+edge".to_string(), square_with_edge()),
        ("hexagon-pair".to_string(), hexagon_pair()),
        ("hexagon-chain-4".to_string(), hexagon_chain(4, 3)),
        ("hexagon-zigzag-4".to_string(), hexagon_chain(4, 2)),
        ("octagon-flower".to_string(), octagon_flower()),
    ];
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}
