use std::process::{Command, Output};

use serde_json::Value;

const RINGS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../rings");

fn twoloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoloc"))
        .args(args)
        .output()
        .expect("twoloc runs")
}

fn json(args: &[&str]) -> Value {
    let out = twoloc(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn ring(name: &str) -> String {
    format!("{RINGS}/{name}.toml")
}

#[test]
fn qring_of_zmod4_is_itself() {
    let v = json(&["qring", "--ring", "corpus:zmod4"]);
    assert_eq!(v["result"]["isomorphic_to_ring"], true);
    assert_eq!(v["result"]["embedding_bijective"], true);
}

#[test]
fn localize2_with_oracle_on_zmod6() {
    let r = ring("zmod6");
    let v = json(&[
        "localize2",
        "--ring",
        &r,
        "--left-filter",
        "generated([2])",
        "--right-filter",
        "generated([2])",
        "--oracle",
    ]);
    assert_eq!(v["result"]["order"], 3);
    assert_eq!(v["result"]["oracle"]["bijection"], true);
}

#[test]
fn exactseq_on_dense_upper_triangular() {
    let r = ring("t2f2");
    let v = json(&[
        "exactseq",
        "--ring",
        &r,
        "--left-filter",
        "dense",
        "--right-filter",
        "dense",
    ]);
    let junctions = v["result"]["junctions"].as_array().unwrap();
    assert_eq!(junctions.len(), 4);
    assert!(junctions.iter().all(|j| j["exact"] == true));
    assert!(v["result"]["scope"].as_str().unwrap().contains("computable"));
}

#[test]
fn every_command_is_deterministic() {
    let r = ring("f2xf2");
    let commands = [
        "ring-info",
        "ideals",
        "filter-check",
        "filter-closure",
        "dense",
        "torsion",
        "localize",
        "localize2",
        "qring",
        "check-q14",
        "tsharp",
        "pic-relative",
        "pic-diag",
        "exactseq",
        "bass",
    ];
    for c in commands {
        let args = [c, "--ring", r.as_str(), "--oracle"];
        let (a, b) = (twoloc(&args), twoloc(&args));
        assert!(a.status.success(), "{c}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{c}");
    }
}

#[test]
fn summary_format_and_out_file() {
    let dir = std::env::temp_dir().join(format!("twoloc-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bass.txt");
    let out = twoloc(&[
        "bass",
        "--ring",
        "corpus:f4",
        "--format",
        "summary",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("0 → 0 → Z/2 → Z/2 → 0"), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn diagnostics_exit_nonzero() {
    let bad_filter = twoloc(&[
        "qring",
        "--ring",
        "corpus:zmod6",
        "--right-filter",
        "ideals([0, 2, 4], [x])",
    ]);
    assert!(!bad_filter.status.success());
    assert!(String::from_utf8_lossy(&bad_filter.stderr).contains("column 20"));

    let too_big = twoloc(&["ring-info", "--ring", "corpus:zmod8", "--max-order", "4"]);
    assert_eq!(too_big.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&too_big.stderr).contains("8"));

    let not_filter = twoloc(&[
        "filter-check",
        "--ring",
        "corpus:zmod4",
        "--right-filter",
        "ideals([0, 2], [0, 1, 2, 3])",
    ]);
    assert_eq!(not_filter.status.code(), Some(1));
}
