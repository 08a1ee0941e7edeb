mod common;

use common::*;
use cubecone::polygonal::{dual_cube_complex, fixtures, hypergraphs, parse_complex, pieces, DEFAULT_MAX_DUAL};

#[test]
fn complexes_round_trip_through_text() {
    let mut all = fixtures::sc_fixtures();
    all.push(("three-squares".into(), fixtures::three_squares()));
    all.push(("square-chain-4".into(), fixtures::square_chain(4)));
    for (name, x) in all {
        let text = x.to_text();
        let back = parse_complex(&text).unwrap().validate().unwrap();
        assert_eq!(back.to_text(), text, "{name}");
        assert_eq!(back.polygons.len(), x.polygons.len());
    }
}

#[test]
fn chain_duals_are_median_with_one_cube_per_cell() {
    for k in 1..=6 {
        for gap in 2..=4 {
            let x = fixtures::hexagon_chain(k, gap);
            let walls = hypergraphs(&x);
            let dual = dual_cube_complex(&x, &walls, DEFAULT_MAX_DUAL).unwrap();
            assert!(brute_median_violation(dual.median.graph()).is_none(), "k={k} gap={gap}");
            // Consecutive hexagons share one wall, so each new cell adds
            // the 8 vertices of its cube minus the 2 of the shared edge.
            assert_eq!(dual.median.n(), 8 + 6 * (k - 1), "k={k} gap={gap}");
            assert_eq!(dual.median.cubes().len(), k);
            assert_eq!(dual.sidecar().lines().count(), dual.median.graph().m());
        }
    }
}

#[test]
fn pieces_match_shared_edges() {
    // The fixtures glue cells along at most one edge, so the longest piece
    // is the largest number of edges two cells share.
    for (name, x) in fixtures::sc_fixtures() {
        let longest = pieces(&x).iter().map(|p| p.len()).max().unwrap_or(0);
        let shared = (0..x.polygons.len())
            .flat_map(|p| (p + 1..x.polygons.len()).map(move |q| (p, q)))
            .map(|(p, q)| x.incidence.iter().filter(|inc| inc.iter().any(|i| i.0 == p) && inc.iter().any(|i| i.0 == q)).count())
            .max()
            .unwrap_or(0);
        assert!(shared <= 1, "{name}");
        assert_eq!(longest, shared, "{name}");
    }
    let x = fixtures::hexagon_pair();
    assert_eq!(x.vertices.len(), 10);
    assert_eq!(pieces(&x).iter().map(|p| p.len()).max(), Some(1));
}
