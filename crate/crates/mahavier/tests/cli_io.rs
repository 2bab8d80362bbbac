//! End-to-end command line tests: gallery reproduction, exit codes,
//! determinism, and the witness verification front end.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mahavier::files;
use mahavier::gallery::{self, GalleryParams};
use mahavier::interval::linear_pair;
use mahavier::rational::rat;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mahavier"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mahavier-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn gallery_entries_are_reproduced_by_analyze() {
    let dir = scratch("gallery");
    for name in gallery::all_names() {
        let out = run(&["gallery", name, "--out-dir", dir.to_str().unwrap()]);
        assert!(out.status.success(), "gallery {name} failed: {out:?}");
        let rel_path = dir.join(format!("{name}.json"));
        let expected: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(dir.join(format!("{name}.expected.json"))).unwrap(),
        )
        .unwrap();

        let analysis = run(&["analyze", rel_path.to_str().unwrap(), "--no-timings"]);
        assert_eq!(analysis.status.code(), Some(0), "analyze {name}");
        let report: serde_json::Value = serde_json::from_str(&stdout_of(&analysis)).unwrap();
        if let Err(e) = gallery::matches_expected(&expected, &report) {
            panic!("{name}: sidecar not reproduced: {e}");
        }

        // Byte-identical reruns without timings.
        let again = run(&["analyze", rel_path.to_str().unwrap(), "--no-timings"]);
        assert_eq!(
            stdout_of(&analysis),
            stdout_of(&again),
            "{name} nondeterministic"
        );
    }
}

#[test]
fn analyze_exit_codes() {
    let dir = scratch("codes");
    let missing = dir.join("absent.json");
    let out = run(&["analyze", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "missing file is an io error");

    let garbled = dir.join("garbled.json");
    write(&garbled, "{ not json");
    let out = run(&["analyze", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "broken json is a schema error");

    let wrong_shape = dir.join("shape.json");
    write(&wrong_shape, r#"{"something": 1}"#);
    let out = run(&["analyze", wrong_shape.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "unknown shape is a schema error"
    );

    let bad_math = dir.join("badmath.json");
    write(
        &bad_math,
        r#"{"points": [{"id": "a", "coords": [0.0]}], "edges": [["a", "zz"]]}"#,
    );
    let out = run(&["analyze", bad_math.to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(1),
        "dangling edge is malformed math"
    );

    let fine = dir.join("fine.json");
    write(
        &fine,
        r#"{"points": [{"id": "a", "coords": [0.0]}], "edges": [["a", "a"]]}"#,
    );
    let out = run(&["analyze", fine.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn analyze_side_outputs() {
    let dir = scratch("side");
    let rel = dir.join("golden.json");
    write(
        &rel,
        r#"{"points":[{"id":"0","coords":[0.0]},{"id":"1","coords":[1.0]}],
           "edges":[["0","0"],["0","1"],["1","0"]]}"#,
    );
    let svg = dir.join("golden.svg");
    let csv = dir.join("golden.csv");
    let report_path = dir.join("report.json");
    let out = run(&[
        "analyze",
        rel.to_str().unwrap(),
        "--no-timings",
        "--out",
        report_path.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--size-cap",
        "2",
        "--level-cap",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.starts_with("<svg"));
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(csv_text.lines().count(), 31, "header plus thirty samples");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["verdicts"]["cr_turbulent"]["value"], true);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["name"] == "brute-force-agrees" && c["pass"] == true));
}

#[test]
fn verify_witness_front_end() {
    let dir = scratch("verify");
    let sys = linear_pair(&rat("1/3"), &rat("2")).unwrap();
    let rel_path = dir.join("fab.json");
    write(
        &rel_path,
        &files::to_pretty(&files::interval_to_json(&sys.relation())),
    );
    let (w, _) = sys.cr_witness_search(&rat("1/2")).unwrap();
    let good = dir.join("witness.json");
    write(&good, &serde_json::to_string(&w).unwrap());
    let out = run(&[
        "verify-witness",
        rel_path.to_str().unwrap(),
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let verdict: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(verdict["verdict"], "pass");

    // Truncating the free suffix breaks the covering: exit 1 and a
    // named failing inclusion.
    let mut shrunk = w.clone();
    shrunk.level -= 1;
    shrunk.k.free -= 1;
    shrunk.l.free -= 1;
    let bad = dir.join("shrunk.json");
    write(&bad, &serde_json::to_string(&shrunk).unwrap());
    let out = run(&[
        "verify-witness",
        rel_path.to_str().unwrap(),
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let verdict: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(verdict["verdict"], "fail");
    assert!(verdict["failing"]["uncovered"].is_string());

    // A level mismatch is a schema-grade failure: exit 2.
    let mut mismatched = w.clone();
    mismatched.level += 1;
    let ugly = dir.join("mismatch.json");
    write(&ugly, &serde_json::to_string(&mismatched).unwrap());
    let out = run(&[
        "verify-witness",
        rel_path.to_str().unwrap(),
        ugly.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_witness_finite_and_pair_shapes() {
    let dir = scratch("verify-shapes");
    let rel_path = dir.join("full2.json");
    write(
        &rel_path,
        r#"{"points":[{"id":"0","coords":[0.0]},{"id":"1","coords":[1.0]}],
           "edges":[["0","0"],["0","1"],["1","0"],["1","1"]]}"#,
    );
    let witness = dir.join("level.json");
    write(
        &witness,
        r#"{"level":5,"kind":"cr","k":[["0","0","0","1","0"]],"l":[["0","1","0","0","0"]]}"#,
    );
    let out = run(&[
        "verify-witness",
        rel_path.to_str().unwrap(),
        witness.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    let failing = dir.join("failing.json");
    write(
        &failing,
        r#"{"level":2,"kind":"cr","k":[["0","1"]],"l":[["1","0"]]}"#,
    );
    let out = run(&[
        "verify-witness",
        rel_path.to_str().unwrap(),
        failing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let verdict: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(
        verdict["failing"]["uncovered"],
        serde_json::json!(["0", "1"])
    );

    // Turbulence pairs verify against leg systems.
    let tent_path = dir.join("tent.json");
    let gallery_tent = gallery::build("tent", &GalleryParams::default()).unwrap();
    write(&tent_path, &files::to_pretty(&gallery_tent.relation));
    let pair = dir.join("pair.json");
    write(
        &pair,
        r#"{"m":1,"k":{"legs":[[["0","1/2"]]]},"l":{"legs":[[["1/2","1"]]]}}"#,
    );
    let out = run(&[
        "verify-witness",
        tent_path.to_str().unwrap(),
        pair.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let verdict: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(verdict["kind"], "turbulent");

    // Mismatched shapes are schema errors.
    let out = run(&[
        "verify-witness",
        tent_path.to_str().unwrap(),
        witness.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zigzag_and_entropy_subcommands() {
    let dir = scratch("zigzag");
    let path = dir.join("path.json");
    write(
        &path,
        r#"{"t":["0","1","2","7/2"],"labels":["A","B","-","A"]}"#,
    );
    let out = run(&["zigzag", path.to_str().unwrap(), "--delta", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["zigzag_number"], 3);
    assert_eq!(doc["diameter"], "7/2");
    assert_eq!(doc["bound"], 7);
    assert_eq!(doc["within_bound"], true);

    let out = run(&["zigzag", "--pigeonhole", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["pigeonhole_holds"], true);

    let out = run(&["zigzag"]);
    assert_eq!(out.status.code(), Some(2), "needs a path or a dimension");

    let rel = dir.join("golden.json");
    write(
        &rel,
        r#"{"points":[{"id":"0","coords":[0.0]},{"id":"1","coords":[1.0]}],
           "edges":[["0","0"],["0","1"],["1","0"]]}"#,
    );
    let out = run(&["entropy", rel.to_str().unwrap(), "--no-timings"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let spectral = doc["spectral"].as_f64().unwrap();
    assert!((spectral - 0.481211825060).abs() < 1e-11);

    // Interval relations are not a valid entropy input.
    let fab = dir.join("fab.json");
    let sys = linear_pair(&rat("1/3"), &rat("2")).unwrap();
    write(
        &fab,
        &files::to_pretty(&files::interval_to_json(&sys.relation())),
    );
    let out = run(&["entropy", fab.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn relation_files_round_trip_byte_exactly() {
    let dir = scratch("roundtrip");
    for name in ["golden-mean", "linear-pair", "cantor", "nleg"] {
        let built = gallery::build(name, &GalleryParams::default()).unwrap();
        let text = files::to_pretty(&built.relation);
        let path = dir.join(format!("{name}.json"));
        write(&path, &text);
        let loaded = files::load_relation(&path).unwrap();
        let emitted = match &loaded {
            files::RelationFile::Finite(rel) => files::to_pretty(&files::finite_to_json(rel)),
            files::RelationFile::Interval(rel) => files::to_pretty(&files::interval_to_json(rel)),
            files::RelationFile::Legs(sys) => files::to_pretty(&files::legs_to_json(sys)),
        };
        assert_eq!(emitted, text, "{name} round trip drifted");
    }
}

#[test]
fn gallery_accepts_explicit_permutations() {
    let dir = scratch("perm");
    let out = run(&[
        "gallery",
        "cantor",
        "--depth",
        "3",
        "--perm",
        "1,0,3,2,5,4,7,6",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let analysis = run(&[
        "analyze",
        dir.join("cantor.json").to_str().unwrap(),
        "--no-timings",
    ]);
    assert_eq!(analysis.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&analysis)).unwrap();
    assert_eq!(report["verdicts"]["cr_turbulent"]["value"], false);

    // Non-bijections are rejected as malformed mathematics.
    let out = run(&[
        "gallery",
        "cantor",
        "--depth",
        "3",
        "--perm",
        "0,0,1,2,3,4,5,6",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));

    // Unparseable permutations are schema errors.
    let out = run(&[
        "gallery",
        "cantor",
        "--perm",
        "sideways",
        "--out-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn legs_files_analyze_and_render() {
    let dir = scratch("legs");
    let out = run(&["gallery", "nleg", "--n", "4", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = dir.join("nleg.svg");
    let analysis = run(&[
        "analyze",
        dir.join("nleg.json").to_str().unwrap(),
        "--no-timings",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(analysis.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&analysis)).unwrap();
    let rows = report["classification"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3]["kind"], "turbulent");
    assert!(std::fs::read_to_string(&svg).unwrap().contains("polyline"));
}

#[test]
fn verify_witness_reverse_kind() {
    let dir = scratch("reverse");
    let sys = linear_pair(&rat("1/3"), &rat("2")).unwrap();
    let rel_path = dir.join("fab.json");
    write(
        &rel_path,
        &files::to_pretty(&files::interval_to_json(&sys.relation())),
    );
    let (w, params) = sys.reverse_cr_witness_search(&rat("1/2")).unwrap();
    assert_eq!(params.n, Some(2));
    let path = dir.join("reverse.json");
    write(&path, &serde_json::to_string(&w).unwrap());
    let out = run(&[
        "verify-witness",
        rel_path.to_str().unwrap(),
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let verdict: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(verdict["kind"], "reverse-cr");
}

#[test]
fn interval_svg_carries_witness_shading() {
    let dir = scratch("shade");
    let out = run(&["gallery", "linear-pair", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let svg = dir.join("pair.svg");
    let analysis = run(&[
        "analyze",
        dir.join("linear-pair.json").to_str().unwrap(),
        "--no-timings",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(analysis.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("rgba(70,130,180,0.35)"), "witness bands missing");
}
