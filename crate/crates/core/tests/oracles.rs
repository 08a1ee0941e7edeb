//! Library results against independent brute-force oracles. Values the
//! oracles produced once are frozen as goldens.

mod common;

use std::collections::HashMap;

use common::*;
use cubecone::build;
use cubecone::graph::{Graph, NamedSet};
use cubecone::hypdiag::{bigon_thinness, cone_off, cycle_probe, delta, ConeKind, DeltaOptions};
use cubecone::mediancore::{MedianGraph, Metric};
use cubecone::racg::{ball, normal_form, DefiningGraph};
use cubecone::smallcancel::{check_small_cancellation, Presentation};
use num_rational::Ratio;

fn four_point(d: &[Vec<u32>]) -> u32 {
    let n = d.len();
    let mut best = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let mut s = [d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]];
                    s.sort_unstable();
                    best = best.max(s[2] - s[1]);
                }
            }
        }
    }
    best
}

fn matrix_rows(d: &cubecone::graph::DistMatrix) -> Vec<Vec<u32>> {
    (0..d.n()).map(|u| d.row(u).to_vec()).collect()
}

#[test]
fn delta_matches_four_point_scan() {
    for (name, m) in small_fixtures().into_iter().filter(|(_, m)| m.n() <= 40) {
        for metric in [Metric::L1, Metric::LInf] {
            let d = m.metric_matrix(metric);
            let got = delta(d, DeltaOptions::default()).unwrap();
            assert!(got.exact);
            assert_eq!(got.twice_delta, four_point(&matrix_rows(d)), "{name} {metric:?}");
        }
    }
}

#[test]
fn delta_goldens() {
    let c4 = MedianGraph::new(build::cycle(4)).unwrap();
    assert_eq!(delta(c4.distances(), DeltaOptions::default()).unwrap().twice_delta, 2);
    // Grid [0,4]² under ℓ∞: frozen from the four-point scan over the
    // independently built cube cone-off.
    let g = build::grid(4, 4);
    let oracle = four_point(&linf_oracle(&g));
    let m = MedianGraph::new(g).unwrap();
    let got = delta(m.linf_matrix(), DeltaOptions::default()).unwrap().twice_delta;
    assert_eq!(got, oracle);
    assert_eq!(got, 4);
}

/// Every geodesic from `x` to `y`, as vertex lists.
fn geodesics(adj: &[Vec<usize>], d: &[Vec<u32>], x: usize, y: usize) -> Vec<Vec<usize>> {
    if x == y {
        return vec![vec![x]];
    }
    let mut out = Vec::new();
    for &w in &adj[x] {
        if d[w][y] + 1 == d[x][y] {
            for mut rest in geodesics(adj, d, w, y) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
    }
    out
}

/// Largest Hausdorff distance under `measure` between two geodesics of
/// `adj` with common endpoints, by listing every geodesic.
fn bigon_oracle(adj: &[Vec<usize>], measure: &[Vec<u32>]) -> u32 {
    let d: Vec<Vec<u32>> = (0..adj.len()).map(|s| bfs_adj(adj, s)).collect();
    let mut best = 0;
    for x in 0..adj.len() {
        for y in x + 1..adj.len() {
            let gs = geodesics(adj, &d, x, y);
            for a in &gs {
                for b in &gs {
                    let h = a.iter().map(|&u| b.iter().map(|&v| measure[u][v]).min().unwrap()).max().unwrap();
                    best = best.max(h);
                }
            }
        }
    }
    best
}

#[test]
fn bigon_thinness_matches_geodesic_enumeration() {
    let graphs: Vec<(&str, Graph)> = vec![
        ("grid2x2", build::grid(2, 2)),
        ("grid3x2", build::grid(3, 2)),
        ("cube3", build::hypercube(3)),
        ("cube4", build::hypercube(4)),
        ("star2xpath2", build::product(&build::star(2), &build::path(2))),
        ("tree", build::random_tree(12, 5)),
    ];
    for (name, g) in graphs {
        let m = MedianGraph::new(g).unwrap();
        let adj = adjacency(m.graph());
        let l1 = bigon_thinness(&adj, m.distances(), m.distances(), 100).unwrap().thinness;
        assert_eq!(l1, bigon_oracle(&adj, &matrix_rows(m.distances())), "{name} L1");
        let cone = m.cube_coneoff();
        let linf = bigon_thinness(&cone, m.linf_matrix(), m.linf_matrix(), 100).unwrap().thinness;
        assert_eq!(linf, bigon_oracle(&cone, &matrix_rows(m.linf_matrix())), "{name} LINF");
    }
    let m = MedianGraph::new(build::grid(2, 2)).unwrap();
    assert_eq!(bigon_thinness(&adjacency(m.graph()), m.distances(), m.distances(), 100).unwrap().thinness, 2);
}

#[test]
fn clique_coneoff_distances_match_bfs() {
    let m = MedianGraph::new(build::grid(3, 3)).unwrap();
    let rows: Vec<NamedSet> =
        (0..4).map(|j| NamedSet { name: format!("row{j}"), vertices: (0..4).map(|i| i * 4 + j).collect() }).collect();
    let y = cone_off(&m, &rows, ConeKind::Clique).unwrap();
    // Oracle: base adjacency plus every pair inside a row.
    let mut adj = adjacency(m.graph());
    for r in &rows {
        for &u in &r.vertices {
            for &v in &r.vertices {
                if u != v && !adj[u].contains(&v) {
                    adj[u].push(v);
                }
            }
        }
    }
    let d = y.distances();
    for s in 0..m.n() {
        assert_eq!(d.row(s), bfs_adj(&adj, s).as_slice());
    }
    // (0,0) to (3,3): one step across member row0 to (3,0), then three
    // base steps, since no member spans the second coordinate.
    assert_eq!(d.get(0, 15), 4);
}

fn count_cycles(adj: &[Vec<usize>], u: usize, v: usize, len: usize) -> u64 {
    fn go(adj: &[Vec<usize>], at: usize, target: usize, left: usize, used: &mut Vec<usize>) -> u64 {
        if left == 0 {
            return u64::from(at == target);
        }
        let mut c = 0;
        for &w in &adj[at] {
            if w == target && left == 1 {
                c += 1;
            } else if w != target && !used.contains(&w) {
                used.push(w);
                c += go(adj, w, target, left - 1, used);
                used.pop();
            }
        }
        c
    }
    go(adj, v, u, len - 1, &mut vec![v])
}

#[test]
fn cycle_probe_golden() {
    let m = MedianGraph::new(build::path(3)).unwrap();
    let family = vec![
        NamedSet { name: "A".into(), vertices: vec![0, 1, 2] },
        NamedSet { name: "B".into(), vertices: vec![1, 2, 3] },
    ];
    let y = cone_off(&m, &family, ConeKind::Apex).unwrap();
    let oracle = count_cycles(&y.adjacency(), 1, 2, 4);
    let probe = cycle_probe(&y.graph, 1, 2, 4).unwrap();
    assert_eq!(probe.count, oracle);
    // Frozen from the DFS oracle: 1-2-apexA-0 and 1-2-3-apexB.
    assert_eq!(probe.count, 2);
    for len in 3..=8 {
        let p = cycle_probe(&y.graph, 1, 2, len).unwrap();
        assert_eq!(p.count, count_cycles(&y.adjacency(), 1, 2, len), "length {len}");
    }
}

/// The Tits representation of a right-angled Coxeter group: generator `s`
/// acts by `v ↦ v − 2B(e_s, v) e_s` with `B(e_s, e_s) = 1`, `B = 0` on
/// commuting pairs and `B = −1` otherwise. It is faithful, so two words are
/// equal in the group exactly when their matrices agree.
struct Tits {
    n: usize,
    gens: Vec<Vec<i64>>,
}

impl Tits {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let b = |s: usize, t: usize| -> i64 {
            if s == t {
                1
            } else if g.has_edge(s, t) {
                0
            } else {
                -1
            }
        };
        let gens = (0..n)
            .map(|s| {
                let mut m = vec![0i64; n * n];
                for j in 0..n {
                    // Column j is the image of e_j.
                    m[j * n + j] += 1;
                    m[s * n + j] -= 2 * b(s, j);
                }
                m
            })
            .collect();
        Tits { n, gens }
    }

    fn word(&self, w: &[usize]) -> Vec<i64> {
        let n = self.n;
        let mut acc: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
        for &s in w {
            let g = &self.gens[s];
            let mut next = vec![0i64; n * n];
            for i in 0..n {
                for j in 0..n {
                    next[i * n + j] = (0..n).map(|k| acc[i * n + k] * g[k * n + j]).sum();
                }
            }
            acc = next;
        }
        acc
    }
}

fn words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..n).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn defining_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("edge", build::path(1)),
        ("two points", build::named(&["a", "b"], &[])),
        ("P3", build::path(2)),
        ("C4", build::cycle(4)),
        ("C5", build::cycle(5)),
        ("K1,3", build::star(3)),
        ("C4+pendant", build::named(&["a", "b", "c", "d", "p"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "p")])),
        ("random6", build::random_graph(6, 0.4, 17)),
    ]
}

#[test]
fn normal_forms_decide_the_word_problem() {
    for (name, g) in defining_graphs() {
        let tits = Tits::new(&g);
        let dg = DefiningGraph::new(g).unwrap();
        let max_len = if dg.n() >= 5 { 5 } else { 6 };
        let mut by_matrix: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        let mut by_form: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for w in words(dg.n(), max_len) {
            let nf = normal_form(&dg, &w);
            assert!(nf.len() <= w.len() && nf.len() % 2 == w.len() % 2, "{name} {w:?}");
            assert_eq!(normal_form(&dg, &nf), nf, "{name}: not idempotent on {w:?}");
            let m = tits.word(&w);
            assert_eq!(m, tits.word(&nf), "{name}: {w:?} and its normal form differ");
            let key: Vec<i64> = nf.iter().map(|&s| s as i64).collect();
            let first = by_form.entry(key).or_insert_with(|| w.clone()).clone();
            assert_eq!(tits.word(&first), m, "{name}: {w:?} and {first:?} share a normal form");
            let first = by_matrix.entry(m).or_insert_with(|| nf.clone()).clone();
            assert_eq!(first, nf, "{name}: equal elements with different normal forms");
        }
    }
}

#[test]
fn ball_sizes_match_the_linear_representation() {
    for (name, g) in defining_graphs() {
        let tits = Tits::new(&g);
        let dg = DefiningGraph::new(g).unwrap();
        let r = if dg.n() >= 5 { 4 } else { 5 };
        let distinct: std::collections::HashSet<Vec<i64>> = words(dg.n(), r).iter().map(|w| tits.word(w)).collect();
        let b = ball(&dg, r, 1 << 20).unwrap();
        assert_eq!(b.graph.n(), distinct.len(), "{name} r={r}");
    }
    let two = DefiningGraph::new(build::named(&["a", "b"], &[])).unwrap();
    assert_eq!(ball(&two, 3, 1000).unwrap().graph.n(), 7);
    let c4 = DefiningGraph::new(build::cycle(4)).unwrap();
    assert_eq!(ball(&c4, 2, 1000).unwrap().graph.n(), 13);
}

/// Longest common prefix over distinct members of the brute-force
/// symmetrised family of a free-group presentation.
fn piece_oracle(relators: &[Vec<i32>]) -> (usize, usize) {
    let mut family: Vec<Vec<i32>> = Vec::new();
    for r in relators {
        let inv: Vec<i32> = r.iter().rev().map(|x| -x).collect();
        for w in [r.clone(), inv] {
            for s in 0..w.len() {
                let rot: Vec<i32> = w[s..].iter().chain(&w[..s]).copied().collect();
                if !family.contains(&rot) {
                    family.push(rot);
                }
            }
        }
    }
    let mut best = 0;
    for a in &family {
        for b in &family {
            if a != b {
                best = best.max(a.iter().zip(b).take_while(|(x, y)| x == y).count());
            }
        }
    }
    (family.len(), best)
}

fn power_relator(n: usize, k: usize) -> Vec<i32> {
    let unit: Vec<i32> = std::iter::repeat_n(1, n).chain(std::iter::repeat_n(2, n)).collect();
    unit.repeat(k)
}

#[test]
fn pieces_match_prefix_scan() {
    for k in 3..=6 {
        for top in 1..=3 {
            let text = format!("generators a b\nparam n = 1..{top}\nrelator (a^n b^n)^{k}");
            let report = check_small_cancellation(&Presentation::parse(&text).unwrap(), Ratio::new(1, 4), 4).unwrap();
            let rels: Vec<Vec<i32>> = (1..=top).map(|n| power_relator(n, k)).collect();
            let (size, piece) = piece_oracle(&rels);
            assert_eq!((report.family_size, report.max_piece), (size, piece), "k={k}, n<= {top}");
        }
    }
    let (size, piece) = piece_oracle(&[vec![1, 2]]);
    assert_eq!((size, piece), (4, 0));
}

#[test]
fn lemma_6_2_median_separation() {
    let graphs = [build::grid(3, 3), build::hypercube(3), build::random_tree(10, 3), build::product(&build::star(3), &build::path(2))];
    for g in graphs {
        let m = MedianGraph::new(g).unwrap();
        let n = m.n();
        for x in 0..n {
            for y in x..n {
                for z in 0..n {
                    let a = m.median(x, y, z);
                    for z2 in z + 1..n {
                        let b = m.median(x, y, z2);
                        for h in m.separating(a, b) {
                            assert!(m.hyperplane(h).separates(z, z2));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn median_operator_matches_brute_force() {
    for (name, g) in median_skeletons().into_iter().filter(|(_, g)| g.n() <= 30) {
        let d = all_pairs(&g);
        let m = MedianGraph::new(g).unwrap();
        for x in 0..m.n() {
            for y in 0..m.n() {
                for z in 0..m.n() {
                    assert_eq!(vec![m.median(x, y, z)], brute_medians(&d, [x, y, z]), "{name}");
                }
            }
        }
    }
}
