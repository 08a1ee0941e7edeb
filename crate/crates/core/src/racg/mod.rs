//! Right-angled Coxeter groups given by a finite defining graph.

mod ball;
mod joins;
mod word;

pub use ball::{ball, ball_grid_checks, Ball, BallGridCheck};
pub use joins::{
    contracting_generators, cp, induced_squares, is_large_join, j_infinity, maximal_large_joins, relhyp_report,
    square_vertices, validate_decomposition, ContractingGenerators, JInfinity, RelHypReport, Seed, Violation,
    MAX_JOIN_VERTICES,
};
pub use word::{normal_form, right_multiply};

use thiserror::Error;

use crate::graph::Graph;

/// Generators are the vertices of a graph with at most 64 vertices, so
/// vertex subsets fit in a `u64`.
pub type Mask = u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RacgError {
    #[error("defining graph has {0} vertices; at most 64 are supported")]
    TooManyGenerators(usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("ball exceeds the cap of {cap} vertices")]
    BallCap { cap: usize },
    #[error("ball of radius {0} is not a median graph")]
    BallNotMedian(usize),
    #[error("{n} vertices exceeds the large-join enumeration limit of {limit}")]
    TooManyForJoins { n: usize, limit: usize },
}

#[derive(Debug, Clone)]
pub struct DefiningGraph {
    graph: Graph,
    adj: Vec<Mask>,
}

impl DefiningGraph {
    pub fn new(graph: Graph) -> Result<Self, RacgError> {
        if graph.n() > 64 {
            return Err(RacgError::TooManyGenerators(graph.n()));
        }
        let adj = (0..graph.n()).map(|v| graph.neighbors(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
        Ok(DefiningGraph { graph, adj })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn all(&self) -> Mask {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1 << self.n()) - 1
        }
    }

    pub fn link(&self, v: usize) -> Mask {
        self.adj[v]
    }

    pub fn star(&self, v: usize) -> Mask {
        self.adj[v] | 1 << v
    }

    /// Distinct adjacent generators commute; a generator does not commute
    /// with itself in the sense used for rewriting.
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    /// The empty set and single vertices count as complete.
    pub fn is_complete(&self, mask: Mask) -> bool {
        ones(mask).all(|v| mask & !(1 << v) & !self.adj[v] == 0)
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>, RacgError> {
        text.split(|c: char| c.is_whitespace() || c == '.')
            .filter(|t| !t.is_empty() && *t != "1")
            .map(|t| self.graph.vertex(t).ok_or_else(|| RacgError::UnknownGenerator(t.to_string())))
            .collect()
    }

    /// Letters joined by `.`; the identity is `1`.
    pub fn word_name(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|&v| self.graph.name(v)).collect::<Vec<_>>().join(".")
    }

    pub fn mask_names(&self, mask: Mask) -> Vec<String> {
        ones(mask).map(|v| self.graph.name(v).to_string()).collect()
    }
}

/// Indices of the set bits, ascending.
pub fn ones(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}
