use super::DiagError;
use crate::graph::Graph;
use crate::mediancore::{ConvexSet, MedianGraph};

pub const MAX_PROBE_LENGTH: usize = 8;
const PROBE_COUNT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinenessCertificate {
    /// Most members containing a single base edge.
    pub multiplicity: usize,
    pub multiplicity_edge: Option<(usize, usize)>,
    /// Most hyperplanes crossing two distinct members.
    pub common_crossings: usize,
    pub witness_pair: Option<(usize, usize)>,
}

pub fn fineness_certificate(g: &MedianGraph, family: &[ConvexSet]) -> FinenessCertificate {
    let mut multiplicity = 0;
    let mut multiplicity_edge = None;
    for &(u, v) in g.graph().edges() {
        let k = family.iter().filter(|c| c.contains(u) && c.contains(v)).count();
        if k > multiplicity {
            multiplicity = k;
            multiplicity_edge = Some((u, v));
        }
    }
    let crossing: Vec<Vec<usize>> = family.iter().map(|c| g.crossing_hyperplanes(c.bits())).collect();
    let mut common_crossings = 0;
    let mut witness_pair = None;
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let k = crossing[i].iter().filter(|h| crossing[j].binary_search(h).is_ok()).count();
            if k > common_crossings || witness_pair.is_none() {
                common_crossings = common_crossings.max(k);
                witness_pair = Some((i, j));
            }
        }
    }
    FinenessCertificate { multiplicity, multiplicity_edge, common_crossings, witness_pair }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleProbe {
    pub length: usize,
    pub edge: (usize, usize),
    /// Simple cycles of exactly `length` edges through `edge`.
    pub count: u64,
    pub capped: bool,
}

/// Counts simple cycles of a given length through the edge `u -- v` by
/// depth-first search over simple paths from `v` back to `u`.
pub fn cycle_probe(g: &Graph, u: usize, v: usize, length: usize) -> Result<CycleProbe, DiagError> {
    if !(3..=MAX_PROBE_LENGTH).contains(&length) {
        return Err(DiagError::ProbeLength(length));
    }
    if !g.has_edge(u, v) {
        return Err(DiagError::NotAnEdge(g.name(u).to_string(), g.name(v).to_string()));
    }
    let mut on_path = vec![false; g.n()];
    on_path[v] = true;
    let mut count = 0u64;
    paths(g, v, u, length - 1, &mut on_path, &mut count);
    let capped = count >= PROBE_COUNT_CAP;
    Ok(CycleProbe { length, edge: (u, v), count: count.min(PROBE_COUNT_CAP), capped })
}

fn paths(g: &Graph, at: usize, target: usize, left: usize, on_path: &mut [bool], count: &mut u64) {
    if *count >= PROBE_COUNT_CAP {
        return;
    }
    for &w in g.neighbors(at) {
        if w == target {
            if left == 1 {
                *count += 1;
            }
        } else if left > 1 && !on_path[w] {
            on_path[w] = true;
            paths(g, w, target, left - 1, on_path, count);
            on_path[w] = false;
        }
    }
}
