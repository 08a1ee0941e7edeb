use std::path::PathBuf;
use std::process::{Command, Output};

use cubecone::graph::parse_graph;
use cubecone::mediancore::is_median;
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubecone")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().expect("exit code"), v)
}

#[test]
fn median_check_exit_codes() {
    let (code, v) = json(&["median", "check", &data("grid32.graph")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["median"], true);
    assert_eq!(v["command"], "median check");
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);

    let (code, v) = json(&["median", "check", &data("k23.graph")]);
    assert_eq!(code, 1);
    let triple: Vec<&str> = v["results"]["witness"]["triple"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(triple, ["x", "y", "z"]);
    assert_eq!(v["results"]["witness"]["medians"].as_array().unwrap().len(), 2);
}

#[test]
fn input_errors_exit_2() {
    let out = run(&["median", "check", "/nonexistent/graph"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("cubecone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.graph");
    std::fs::write(&bad, "vertex a\nedge a b\n").unwrap();
    let out = run(&["median", "check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 8"), "{err}");

    let (code, v) = json(&["median", "hyperplanes", &data("k23.graph")]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("not a median graph"));

    let out = run(&["sc", "check", "--lambda", "abc", &data("k5.pres")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sc", "check", "--lambda", "3/2", &data("k5.pres")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["median", "frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sc_check_verdicts() {
    let (code, v) = json(&["sc", "check", "--lambda", "1/4", "--t", "4", &data("k5.pres")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["Cprime"], "pass");
    assert_eq!(v["results"]["T"], "pass");

    let (code, v) = json(&["sc", "check", "--lambda", "1/4", "--t", "4", &data("k4.pres")]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["Cprime"], "fail");
    assert_eq!(v["results"]["T"], "pass");
    assert_eq!(v["results"]["cprime_witness"]["piece_length"], 2);
    assert_eq!(v["results"]["cprime_witness"]["relator_length"], 8);
}

#[test]
fn poly_phases_and_verdicts() {
    let (code, v) = json(&["poly", "validate", &data("triangle.cx")]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["valid"], false);
    let (code, _) = json(&["poly", "sc", &data("triangle.cx")]);
    assert_eq!(code, 2);

    let (code, v) = json(&["poly", "validate", &data("hexagon_pair.cx")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["vertices"], 10);

    let (code, v) = json(&["poly", "sc", &data("hexagon_pair.cx")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["Cprime"], "pass");

    let (code, v) = json(&["poly", "sc", &data("three_squares.cx")]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["T"], "fail");
    assert_eq!(v["results"]["shortest_link_cycle"]["length"], 3);

    let (code, v) = json(&["poly", "classify", &data("hexagon_pair.cx")]);
    assert_eq!(code, 0);
    let dims: Vec<u64> = v["results"]["cubes"].as_array().unwrap().iter().map(|c| c["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [3, 3]);
    assert!(v["results"]["grid_thinness"]["value"].as_u64().unwrap() <= 3);

    let (code, v) = json(&["poly", "project", &data("hexagon_pair.cx")]);
    assert_eq!(code, 0);
    assert!(v["results"]["transfer"].as_array().unwrap().iter().all(|c| c["check"] == "pass"));
}

#[test]
fn dual_export_round_trips() {
    let dir = std::env::temp_dir().join(format!("cubecone-dual-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (g, w) = (dir.join("dual.graph"), dir.join("dual.walls"));
    let (code, v) = json(&[
        "poly",
        "dual",
        &data("hexagon_pair.cx"),
        "--graph-out",
        g.to_str().unwrap(),
        "--walls-out",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&g).unwrap();
    let parsed = parse_graph(&text).unwrap();
    assert_eq!(parsed.to_text(), text);
    assert_eq!(parsed.n() as u64, v["results"]["vertices"].as_u64().unwrap());
    assert!(is_median(&parsed).unwrap().median);
    let sidecar = std::fs::read_to_string(&w).unwrap();
    assert_eq!(sidecar.lines().count(), parsed.m());
    assert!(sidecar.lines().all(|l| l.starts_with("edge-wall ")));
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("duration_ms");
        serde_json::to_string(&v).unwrap()
    };
    for args in [
        vec!["diag", "grid", &data("grid32.graph")],
        vec!["sc", "check", &data("k4.pres")],
        vec!["poly", "project", &data("hexagon_pair.cx")],
    ] {
        let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
        assert_eq!(strip(json(&args).1), strip(json(&args).1));
    }
}

#[test]
fn diagnostics_carry_methods() {
    let (_, v) = json(&["diag", "grid", &data("grid32.graph")]);
    assert_eq!(v["results"]["thinness"]["value"], 2);
    assert_eq!(v["results"]["thinness"]["method"], "exact");
    let (_, v) = json(&["--seed-cap", "1", "diag", "grid", &data("grid32.graph")]);
    assert_eq!(v["results"]["thinness"]["method"], "lower_bound");
    let (_, v) = json(&["diag", "bigon", &data("grid32.graph")]);
    assert_eq!(v["results"]["thinness"]["method"], "exact");
    let (_, v) = json(&["median", "dist", &data("grid32.graph"), "00", "32", "--metric", "linf"]);
    assert_eq!(v["results"]["distance"]["value"], 3);
    assert_eq!(v["results"]["agree"], true);
    let (code, v) = json(&["median", "convex", &data("grid32.graph"), &data("grid32.sets")]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["sets"][2]["violation"]["outside"], "01");
    let (code, v) = json(&["coneoff", &data("grid32.graph"), &data("grid32.sets")]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("`corner` is not convex"));
    let (_, v) = json(&["coneoff", &data("grid32.graph"), &data("rows.sets"), "--kind", "apex", "--bound", "2"]);
    assert_eq!(v["results"]["sandwich"], "pass");
    assert_eq!(v["results"]["bigon_bound"]["check"], "pass");
}

#[test]
fn racg_commands() {
    let (code, v) = json(&["racg", "relhyp", &data("c4.graph")]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["relatively_hyperbolic"], false);
    let (_, v) = json(&["racg", "relhyp", &data("c5.graph")]);
    assert_eq!(v["results"]["relatively_hyperbolic"], true);
    assert_eq!(v["results"]["peripherals"].as_array().unwrap().len(), 0);
    // In the square a-b-c-d, a and b commute but a and c do not.
    let (_, v) = json(&["racg", "nf", &data("c4.graph"), "a b a b"]);
    assert_eq!(v["results"]["normal_form"], "1");
    let (_, v) = json(&["racg", "nf", &data("c4.graph"), "c a c a"]);
    assert_eq!(v["results"]["normal_form"], "c.a.c.a");
    let (_, v) = json(&["racg", "ball", &data("c4.graph"), "-r", "2"]);
    assert_eq!(v["results"]["vertices"], 13);
    let (code, v) = json(&["racg", "contracting", &data("c5.graph"), "--ball", "3", "--max-n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["ball_grids"]["consistent"], true);
}

#[test]
fn version_prints_manifest() {
    let out = run(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("cubecone "));
    for cmd in ["median check", "diag grid", "racg relhyp", "sc check", "poly project"] {
        assert!(text.contains(cmd), "{cmd}");
    }
}

#[test]
fn text_mode_summarises_the_same_data() {
    let out = run(&["sc", "check", &data("k5.pres")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("sc check\n"));
    assert!(text.contains("Cprime: pass"));
    assert!(text.contains("family_size: 24"));
}
