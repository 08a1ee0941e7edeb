//! Simple undirected graphs with opaque string ids, plus the text format
//! `vertex <id>` / `edge <id> <id>` and named vertex-set files.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::parse::{lines, ParseError};

pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("invalid vertex id `{0}`")]
    InvalidId(String),
    #[error("self-loop at `{0}`")]
    Loop(String),
    #[error("duplicate edge `{0}` -- `{1}`")]
    DuplicateEdge(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// A finite simple graph. Vertices are densely indexed in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, GraphError> {
        if name.is_empty() || name.chars().any(char::is_whitespace) || name.contains('#') {
            return Err(GraphError::InvalidId(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        self.adj.push(Vec::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        assert!(u < self.n() && v < self.n(), "vertex index out of range");
        if u == v {
            return Err(GraphError::Loop(self.names[u].clone()));
        }
        let key = (u.min(v), u.max(v));
        if self.edge_index.contains_key(&key) {
            return Err(GraphError::DuplicateEdge(self.names[key.0].clone(), self.names[key.1].clone()));
        }
        let id = self.edges.len();
        self.edges.push(key);
        self.edge_index.insert(key, id);
        insert_sorted(&mut self.adj[u], v);
        insert_sorted(&mut self.adj[v], u);
        Ok(id)
    }

    /// Adds the edge unless it is already present; returns its id.
    pub fn ensure_edge(&mut self, u: usize, v: usize) -> usize {
        match self.edge_id(u, v) {
            Some(e) => e,
            None => self.add_edge(u, v).expect("distinct endpoints"),
        }
    }

    pub fn add_edge_by_name(&mut self, a: &str, b: &str) -> Result<usize, GraphError> {
        let u = self.vertex(a).ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
        let v = self.vertex(b).ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
        self.add_edge(u, v)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, indexed by edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// BFS distances from `src`; unreachable vertices get [`UNREACHABLE`].
    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(|&d| d != UNREACHABLE)
    }

    pub fn distances(&self) -> DistMatrix {
        let n = self.n();
        let rows: Vec<Vec<u32>> = {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(|s| self.bfs(s)).collect()
        };
        DistMatrix { n, d: rows.into_iter().flatten().collect() }
    }

    /// Induced subgraph on `vertices`, keeping names and the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new();
        let mut map = HashMap::new();
        for &v in vertices {
            let id = g.add_vertex(&self.names[v]).expect("distinct names");
            map.insert(v, id);
        }
        for &(u, v) in &self.edges {
            if let (Some(&a), Some(&b)) = (map.get(&u), map.get(&v)) {
                g.add_edge(a, b).expect("simple");
            }
        }
        g
    }

    /// Serialises in the graph text format; [`parse_graph`] inverts this.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for name in &self.names {
            let _ = writeln!(s, "vertex {name}");
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "edge {} {}", self.names[u], self.names[v]);
        }
        s
    }
}

fn insert_sorted(list: &mut Vec<usize>, x: usize) {
    let pos = list.binary_search(&x).unwrap_or_else(|p| p);
    list.insert(pos, x);
}

/// Dense all-pairs distance table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        DistMatrix { n, d: rows.into_iter().flatten().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    /// Restriction to the first `k` vertices (e.g. base vertices of an apex cone-off).
    pub fn truncate(&self, k: usize) -> DistMatrix {
        let rows = (0..k).map(|u| self.row(u)[..k].to_vec()).collect();
        DistMatrix::from_rows(rows)
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().filter(|&x| x != UNREACHABLE).max().unwrap_or(0)
    }
}

/// Parses the graph text format. Declarations may appear in any order; an
/// edge naming an undeclared vertex is reported at that edge's line.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let ls = lines(text);
    let mut g = Graph::new();
    for line in &ls {
        let kw = &line.tokens[0];
        match kw.text {
            "vertex" => {
                if line.tokens.len() != 2 {
                    return Err(line.error_at(kw, "expected `vertex <id>`"));
                }
                let id = &line.tokens[1];
                g.add_vertex(id.text).map_err(|e| line.error_at(id, e.to_string()))?;
            }
            "edge" => {}
            other => return Err(line.error_at(kw, format!("unknown keyword `{other}`"))),
        }
    }
    for line in &ls {
        let kw = &line.tokens[0];
        if kw.text != "edge" {
            continue;
        }
        if line.tokens.len() != 3 {
            return Err(line.error_at(kw, "expected `edge <id> <id>`"));
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&line.tokens[1..]) {
            *slot = g
                .vertex(tok.text)
                .ok_or_else(|| line.error_at(tok, format!("undeclared vertex `{}`", tok.text)))?;
        }
        g.add_edge(ends[0], ends[1]).map_err(|e| line.error_at(&line.tokens[1], e.to_string()))?;
    }
    Ok(g)
}

/// A named vertex subset, e.g. one member of a cone-off family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSet {
    pub name: String,
    pub vertices: Vec<usize>,
}

/// Parses `sub <name> : <id> <id> ...` lines against `g`.
pub fn parse_subsets(text: &str, g: &Graph) -> Result<Vec<NamedSet>, ParseError> {
    let mut out: Vec<NamedSet> = Vec::new();
    for line in lines(text) {
        let kw = &line.tokens[0];
        if kw.text != "sub" {
            return Err(line.error_at(kw, format!("unknown keyword `{}`", kw.text)));
        }
        if line.tokens.len() < 3 || line.tokens[2].text != ":" {
            let col = line.tokens.get(2).map_or(line.end_column(), |t| t.column);
            return Err(line.error(col, "expected `sub <name> : <id> ...`"));
        }
        let name = line.tokens[1].text;
        if out.iter().any(|s| s.name == name) {
            return Err(line.error_at(&line.tokens[1], format!("duplicate set name `{name}`")));
        }
        let mut vertices = Vec::new();
        for tok in &line.tokens[3..] {
            let v = g
                .vertex(tok.text)
                .ok_or_else(|| line.error_at(tok, format!("undeclared vertex `{}`", tok.text)))?;
            if vertices.contains(&v) {
                return Err(line.error_at(tok, format!("vertex `{}` listed twice", tok.text)));
            }
            vertices.push(v);
        }
        if vertices.is_empty() {
            return Err(line.error(line.end_column(), "empty vertex set"));
        }
        out.push(NamedSet { name: name.to_string(), vertices });
    }
    Ok(out)
}

pub fn subsets_to_text(sets: &[NamedSet], g: &Graph) -> String {
    let mut s = String::new();
    for set in sets {
        let _ = write!(s, "sub {} :", set.name);
        for &v in &set.vertices {
            let _ = write!(s, " {}", g.name(v));
        }
        s.push('\n');
    }
    s
}
