//! The statement each command computes or checks, printed by `--version`
//! and echoed into reports.

pub const MANIFEST: &[(&str, &[&str])] = &[
    ("median check", &["median graphs = 1-skeletons of CAT(0) cube complexes"]),
    ("median hyperplanes", &["hyperplane = class of square-opposite edges; both halfspaces convex"]),
    ("median cubes", &["maximal cubes; hyperplane dimension = largest cube met"]),
    ("median dist", &["d1 = #separating hyperplanes", "dinf = longest pairwise disjoint separating family = cube cone-off distance"]),
    ("median median", &["unique m with d(x,y) = d(x,m) + d(m,y) for all three pairs"]),
    ("median convex", &["convex = closed under combinatorial geodesics"]),
    ("median project", &["gate p(x): hyperplanes separating x, p(x) separate x from C", "p(C2) is crossed exactly by hyperplanes crossing C and C2"]),
    ("diag grid", &["hyperbolic <=> grids of hyperplanes uniformly thin"]),
    ("diag rectangle", &["hyperbolic <=> flat rectangles uniformly thin", "grid thinness <= rectangle thickness + 1"]),
    ("diag delta", &["four-point delta", "dinf: min grid side <= 4 delta + 2"]),
    ("diag bigon", &["d1: bigons 2 RamBound(C)-thin for grid thinness C", "dinf: bigons (C + 3)-thin"]),
    ("diag contracting", &["J n-contracting <=> dim J < n and J in no (n,n)-grid", "RamBound(n)-thick rectangles: diameter <= 4 RamBound(n) + 3 in the contracting graph"]),
    ("diag fineness", &["fine cone-off <=> bounded member multiplicity and common crossings"]),
    ("coneoff", &["clique <= apex <= 2 clique", "L-thick rectangles of Y-diameter <= C => base bigons max(2L, C)-thin in Y"]),
    ("racg nf", &["shortlex normal form by commutation and cancellation"]),
    ("racg ball", &["Cayley ball = ball in the median graph X(Gamma)"]),
    ("racg squares", &["vertices on induced squares"]),
    ("racg contracting", &["generator contracting <=> on no induced square"]),
    ("racg jdecomp", &["canonical join decomposition: merge along non-complete intersections, close under cp"]),
    ("racg cp", &["cp(L) = L plus every v whose link meets L in a non-complete set"]),
    ("racg relhyp", &["relatively hyperbolic <=> canonical join decomposition is not {Gamma}"]),
    ("sc check", &["C'(lambda): |p| < lambda |r|", "T(q): no short cycle of relators with every product unreduced"]),
    ("poly validate", &["even polygons, at least 4 sides, embedded"]),
    ("poly sc", &["C'(lambda), C(n) by exact piece cover, T(n) by link girth"]),
    ("poly walls", &["walls = classes of opposite edges; two sides each on valid inputs"]),
    ("poly dual", &["dual cube complex of the wallspace is median"]),
    ("poly classify", &["maximal cubes: edge-cubes and cell-cubes of dimension |P| / 2"]),
    ("poly project", &["pairwise meeting polygons share a vertex", "R + 2 disjoint dual hyperplanes => R disjoint walls between projections"]),
];

pub fn for_command(command: &str) -> Vec<&'static str> {
    MANIFEST.iter().find(|(c, _)| *c == command).map_or_else(Vec::new, |(_, s)| s.to_vec())
}

pub fn manifest() -> String {
    let mut s = format!("cubecone {}\n", env!("CARGO_PKG_VERSION"));
    for (command, statements) in MANIFEST {
        for st in *statements {
            s.push_str(&format!("  {command:<18} {st}\n"));
        }
    }
    s
}
