//! Constructors for standard graphs: paths, cycles, grids, hypercubes,
//! products and random trees.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn from_edges(names: Vec<String>, edges: &[(usize, usize)]) -> Graph {
    let mut g = Graph::new();
    for n in &names {
        g.add_vertex(n).expect("generated names are distinct");
    }
    for &(u, v) in edges {
        g.add_edge(u, v).expect("generated edges are simple");
    }
    g
}

/// Path with `n` edges on vertices `0..=n`.
pub fn path(n: usize) -> Graph {
    let names = (0..=n).map(|i| i.to_string()).collect();
    let edges: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
    from_edges(names, &edges)
}

/// Cycle on `n ≥ 3` vertices `0..n`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let names = (0..n).map(|i| i.to_string()).collect();
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_edges(names, &edges)
}

/// The grid `[0,a]×[0,b]`; vertex `(i,j)` is named `(i,j)` and has index `i*(b+1)+j`.
pub fn grid(a: usize, b: usize) -> Graph {
    let idx = |i: usize, j: usize| i * (b + 1) + j;
    let mut names = Vec::new();
    let mut edges = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            names.push(format!("({i},{j})"));
            if i < a {
                edges.push((idx(i, j), idx(i + 1, j)));
            }
            if j < b {
                edges.push((idx(i, j), idx(i, j + 1)));
            }
        }
    }
    from_edges(names, &edges)
}

/// The `n`-cube; vertex names are bit strings, index = value with bit 0 first.
pub fn hypercube(n: usize) -> Graph {
    assert!(n < 20);
    let names = (0..1usize << n)
        .map(|x| (0..n).map(|b| if x >> b & 1 == 1 { '1' } else { '0' }).collect())
        .collect();
    let mut edges = Vec::new();
    for x in 0..1usize << n {
        for b in 0..n {
            let y = x ^ (1 << b);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    from_edges(names, &edges)
}

/// Index of the hypercube vertex with the given bit string (bit 0 first).
pub fn hypercube_vertex(bits: &str) -> usize {
    bits.chars().enumerate().filter(|&(_, c)| c == '1').map(|(i, _)| 1 << i).sum()
}

/// Cartesian product; vertex `(u,v)` is named `u|v` and has index `u*|H|+v`.
pub fn product(g: &Graph, h: &Graph) -> Graph {
    let idx = |u: usize, v: usize| u * h.n() + v;
    let mut names = Vec::new();
    for u in 0..g.n() {
        for v in 0..h.n() {
            names.push(format!("{}|{}", g.name(u), h.name(v)));
        }
    }
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for v in 0..h.n() {
            for &w in g.neighbors(u) {
                if u < w {
                    edges.push((idx(u, v), idx(w, v)));
                }
            }
            for &w in h.neighbors(v) {
                if v < w {
                    edges.push((idx(u, v), idx(u, w)));
                }
            }
        }
    }
    from_edges(names, &edges)
}

/// Star with `k` leaves around centre `0`.
pub fn star(k: usize) -> Graph {
    let names = (0..=k).map(|i| i.to_string()).collect();
    let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    from_edges(names, &edges)
}

/// Uniform-ish random tree on `n` vertices (random attachment), seeded.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = (0..n).map(|i| i.to_string()).collect();
    let edges: Vec<_> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    from_edges(names, &edges)
}

/// Erdős–Rényi graph `G(n, p)` with a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    from_edges(names, &edges)
}

/// Complete bipartite graph `K_{a,b}`; the `a` side is `a0..`, the other `b0..`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut names: Vec<String> = (0..a).map(|i| format!("a{i}")).collect();
    names.extend((0..b).map(|j| format!("b{j}")));
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    from_edges(names, &edges)
}

/// Graph from explicit names and name pairs.
pub fn named(vertices: &[&str], edges: &[(&str, &str)]) -> Graph {
    let mut g = Graph::new();
    for v in vertices {
        g.add_vertex(v).expect("distinct names");
    }
    for (a, b) in edges {
        g.add_edge_by_name(a, b).expect("declared, simple");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!((path(3).n(), path(3).m()), (4, 3));
        assert_eq!((cycle(5).n(), cycle(5).m()), (5, 5));
        assert_eq!((grid(3, 2).n(), grid(3, 2).m()), (12, 17));
        assert_eq!((hypercube(4).n(), hypercube(4).m()), (16, 32));
        let p = product(&path(2), &cycle(4));
        assert_eq!((p.n(), p.m()), (12, 2 * 4 + 3 * 4));
        assert_eq!(random_tree(30, 7).m(), 29);
        assert!(random_tree(30, 7).is_connected());
        assert_eq!(complete_bipartite(2, 3).m(), 6);
    }

    #[test]
    fn hypercube_vertex_index() {
        let q = hypercube(3);
        assert_eq!(q.name(hypercube_vertex("100")), "100");
        assert_eq!(q.name(hypercube_vertex("011")), "011");
    }
}
