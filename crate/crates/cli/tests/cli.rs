use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdomain")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let report = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\nstdout: {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), report)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cdomain-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn cantor_verify_reports_join_checks() {
    let (code, report) = run_json(&["cantor", "verify", "--depth", "3"]);
    assert_eq!(code, 0);
    assert_eq!(report["pass"], true);
    let checks = report["results"]["checks"].as_array().unwrap();
    let joins = checks.iter().filter(|c| c["name"].as_str().unwrap().starts_with("join_full_s")).count();
    assert_eq!(joins, 3);
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn cantor_depth_out_of_range_is_usage_error() {
    assert_eq!(run(&["cantor", "verify", "--depth", "99"]).status.code(), Some(2));
}

#[test]
fn calg_lattice_dot_has_five_nodes() {
    let dot = scratch("diag3.dot");
    let out = run(&["calg", "lattice", "--input", &fixture("diag3.json"), "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.lines().filter(|l| l.contains("[label=")).count(), 5);
    assert_eq!(text.lines().filter(|l| l.contains("->")).count(), 6);
}

#[test]
fn bad_poset_is_parse_error() {
    let out = run(&["poset", "check", "--input", &fixture("bad_poset.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(run(&["poset", "check", "--input", &fixture("missing.json")]).status.code(), Some(2));
}

#[test]
fn unknown_accept_selector_is_usage_error() {
    assert_eq!(run(&["accept", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn accept_fast_passes() {
    let (code, report) = run_json(&["accept", "fast"]);
    assert_eq!(code, 0, "{report}");
    let criteria = report["results"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 7);
    assert!(criteria.iter().all(|c| c["pass"] == true));
}

#[test]
fn json_reports_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_time_ms");
        serde_json::to_string(&v).unwrap()
    };
    let cases: Vec<Vec<String>> = vec![
        vec!["calg".into(), "lattice".into(), "--input".into(), fixture("diag3.json")],
        vec!["poset".into(), "report".into(), "--input".into(), fixture("diamond.json")],
        vec!["cantor".into(), "verify".into(), "--depth".into(), "2".into()],
        vec!["topo".into(), "check".into(), "--input".into(), fixture("sierpinski.json")],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (_, a) = run_json(&args);
        let (_, b) = run_json(&args);
        assert_eq!(strip(a.clone()), strip(b), "{args:?}");
        assert!(a["inputs_digest"].as_str().unwrap().starts_with("sha256:"));
    }
    let (_, d2) = run_json(&["cantor", "verify", "--depth", "2"]);
    let (_, d3) = run_json(&["cantor", "verify", "--depth", "3"]);
    assert_ne!(d2["inputs_digest"], d3["inputs_digest"]);
}

#[test]
fn poset_input_round_trips() {
    let (code, first) = run_json(&["poset", "check", "--input", &fixture("diamond.json")]);
    assert_eq!(code, 0);
    let copy = scratch("diamond-copy.json");
    std::fs::write(&copy, serde_json::to_string(&first["results"]["input"]).unwrap()).unwrap();
    let (_, second) = run_json(&["poset", "check", "--input", copy.to_str().unwrap()]);
    assert_eq!(first["results"], second["results"]);
}

#[test]
fn diamond_report_flags() {
    let (code, report) = run_json(&["poset", "report", "--input", &fixture("diamond.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["algebraic"], true);
    assert_eq!(report["results"]["meet_continuous"], true);
}

#[test]
fn hasse_of_diamond() {
    let (code, report) = run_json(&["poset", "hasse", "--input", &fixture("diamond.json")]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn eqrel_join_and_meet() {
    let left = fixture("left.json");
    let (_, join) = run_json(&["eqrel", "join", "--left", &left, "--right", "{0}{1,2}{3}"]);
    assert_eq!(join["results"]["classes"], serde_json::json!([[0, 1, 2], [3]]));
    let (_, meet) = run_json(&["eqrel", "meet", "--left", &left, "--right", "{0}{1,2}{3}"]);
    assert_eq!(meet["results"]["classes"], serde_json::json!([[0], [1], [2], [3]]));
    let out = run(&["eqrel", "join", "--left", &left, "--right", "{0,1}"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eqrel_lattice_sizes() {
    for (n, size) in [(1, 1), (3, 5), (4, 15)] {
        let (_, r) = run_json(&["eqrel", "lattice", "--n", &n.to_string()]);
        assert_eq!(r["results"]["size"], size);
    }
}

#[test]
fn calg_atoms_spectrum_and_caf_iso() {
    let input = fixture("diag3.json");
    let (_, atoms) = run_json(&["calg", "atoms", "--input", &input]);
    assert_eq!(atoms["results"]["count"], 3);
    let (_, spectrum) = run_json(&["calg", "spectrum", "--input", &input]);
    assert_eq!(spectrum["results"]["projections"].as_array().unwrap().len(), 3);
    let (code, iso) = run_json(&["calg", "caf-iso", "--input", &input]);
    assert_eq!(code, 0);
    assert_eq!(iso["results"]["boolean_subalgebras"], 5);
    let (_, gen) = run_json(&["calg", "generate", "--input", &input]);
    assert_eq!(gen["results"]["dim"], 3);
    assert_eq!(gen["results"]["commutative"], true);
}

#[test]
fn omp_commands() {
    let mo2 = scratch("mo2.json");
    std::fs::write(
        &mo2,
        r#"{"elements":["0","a","a'","b","b'","1"],
            "leq":[[true,true,true,true,true,true],
                   [false,true,false,false,false,true],
                   [false,false,true,false,false,true],
                   [false,false,false,true,false,true],
                   [false,false,false,false,true,true],
                   [false,false,false,false,false,true]],
            "ortho":[5,2,1,4,3,0]}"#,
    )
    .unwrap();
    let (code, v) = run_json(&["omp", "validate", "--input", mo2.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["violations"], serde_json::json!([]));
    let (_, b) = run_json(&["omp", "boolsub", "--input", mo2.to_str().unwrap()]);
    assert_eq!(b["results"]["count"], 3);

    let broken = scratch("mo2-broken.json");
    std::fs::write(&broken, std::fs::read_to_string(&mo2).unwrap().replace("[5,2,1,4,3,0]", "[5,1,2,4,3,0]")).unwrap();
    let (code, v) = run_json(&["omp", "validate", "--input", broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!v["results"]["violations"].as_array().unwrap().is_empty());
    assert_eq!(run(&["omp", "boolsub", "--input", broken.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn cb_rank_ordinal_and_space() {
    let (_, r) = run_json(&["cb", "rank", "--ordinal", "w^2"]);
    assert_eq!(r["results"]["rank"], 3);
    let (_, r) = run_json(&["cb", "rank", "--input", &fixture("sierpinski.json")]);
    assert_eq!(r["results"]["rank"], 2);
    assert_eq!(run(&["cb", "rank", "--ordinal", "w^^2"]).status.code(), Some(2));
    assert_eq!(run(&["cb", "rank"]).status.code(), Some(2));
}

#[test]
fn topo_check_sierpinski() {
    let (code, r) = run_json(&["topo", "check", "--input", &fixture("sierpinski.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["report"]["stages"][1]["stage"], 1);
}

#[test]
fn unwritable_dot_path_is_usage_error() {
    let out = run(&["poset", "hasse", "--input", &fixture("diamond.json"), "--dot", "/nonexistent-dir/x.dot"]);
    assert_eq!(out.status.code(), Some(2));
}
