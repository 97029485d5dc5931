//! End-to-end tests of the binary: golden outputs, exit codes, and
//! determinism of repeated runs.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noncross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn counts_golden() {
    assert_eq!(
        stdout_of(&["counts", "--type", "C", "--n", "3"]),
        "interval=20 factorizations=27 chains_max=27\n"
    );
    assert_eq!(
        stdout_of(&["counts", "--type", "D", "--n", "4"]),
        "interval=50 factorizations=162 chains_max=162\n"
    );
}

#[test]
fn len_golden() {
    assert_eq!(stdout_of(&["len", "--type", "C", "--n", "3", "[1,2,3]"]), "3\n");
    assert_eq!(
        stdout_of(&["len", "--type", "C", "--n", "3", "--measure", "fixed", "(1,2,3)"]),
        "1\n"
    );
    assert_eq!(
        stdout_of(&["len", "--type", "C", "--n", "3", "--measure", "transposition", "[1,2,3]"]),
        "5\n"
    );
}

#[test]
fn lattice_check_golden() {
    assert_eq!(
        stdout_of(&["lattice-check", "--type", "D", "--n", "3"]),
        "certified elements=14\n"
    );
    let suites = stdout_of(&[
        "lattice-check", "--type", "C", "--n", "2", "--gamma", "[1] [2]", "--suites",
    ]);
    assert!(suites.starts_with("certified elements=6\ncancellation=ok"), "{suites}");
    assert!(suites.contains("nine_element=ok"));
}

#[test]
fn leq_and_geometric() {
    assert_eq!(stdout_of(&["leq", "--type", "C", "--n", "2", "(1,2)", "[1,2]"]), "true\n");
    assert_eq!(stdout_of(&["leq", "--type", "C", "--n", "3", "(1,3) [2]"]), "false\n");
    assert_eq!(
        stdout_of(&["leq", "--geometric", "--type", "C", "--n", "3", "(2,3,-1)"]),
        "true\n"
    );
    let bad = run(&["leq", "--geometric", "--type", "D", "--n", "3", "(1,2)"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn interval_text_and_json() {
    assert_eq!(
        stdout_of(&["interval", "--type", "C", "--n", "3"]),
        "elements=20 rank=3 by_length=1,9,9,1\n"
    );
    let doc: serde_json::Value =
        serde_json::from_str(&stdout_of(&["interval", "--type", "C", "--n", "2", "--json"]))
            .expect("valid json");
    assert_eq!(doc["elements"].as_array().unwrap().len(), 6);
    assert_eq!(doc["gamma"], "[1,2]");
    assert_eq!(doc["meet"].as_array().unwrap().len(), 6);
    assert_eq!(doc["ncp"][0].as_array().unwrap().len(), 4);
    let dd: serde_json::Value =
        serde_json::from_str(&stdout_of(&["interval", "--type", "D", "--n", "3", "--json"]))
            .expect("valid json");
    assert!(dd.get("ncp").is_none());
}

#[test]
fn meet_join_golden() {
    assert_eq!(stdout_of(&["meet", "--type", "C", "--n", "3", "[1,2]", "[1,3]"]), "[1]\n");
    assert_eq!(
        stdout_of(&["meet", "--structured", "--type", "D", "--n", "3", "[1] [2]", "[1] [3]"]),
        "I\n"
    );
    assert_eq!(stdout_of(&["join", "--type", "D", "--n", "3", "(1,2)", "(1,-2)"]), "[1] [2]\n");
    let bad = run(&["meet", "--structured", "--type", "C", "--n", "3", "[1]", "[2]"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn factorizations_golden() {
    assert_eq!(
        stdout_of(&["factorizations", "--type", "C", "--n", "2", "[1] [2]"]),
        "[1] [2]\n[2] [1]\n(1,2) (1,-2)\n(1,-2) (1,2)\n"
    );
    assert_eq!(
        stdout_of(&["factorizations", "--type", "C", "--n", "3", "--count"]),
        "count=27\n"
    );
    let sequential = stdout_of(&["factorizations", "--type", "D", "--n", "3"]);
    let parallel = stdout_of(&["factorizations", "--type", "D", "--n", "3", "--parallel"]);
    assert_eq!(sequential, parallel);
    assert_eq!(sequential.lines().count(), 16);
}

#[test]
fn word_problem_commands() {
    assert_eq!(
        stdout_of(&["nf", "--type", "C", "--n", "2", "--gamma", "[1] [2]", "((1,2)).((1,-2))"]),
        "([1] [2])\n"
    );
    assert_eq!(
        stdout_of(&["nf", "--type", "C", "--n", "3", "((1,2)).((2,3))"]),
        "((1,2,3))\n"
    );
    for extra in [None, Some("--oracle")] {
        let mut args = vec!["wp", "--type", "C", "--n", "2", "--gamma", "[1] [2]"];
        if let Some(flag) = extra {
            args.push(flag);
        }
        args.push("([1]).([2])");
        args.push("((1,2)).((1,-2))");
        assert_eq!(stdout_of(&args), "true\n");
    }
    assert_eq!(
        stdout_of(&["wp", "--type", "C", "--n", "2", "([1])", "([2])"]),
        "false\n"
    );
}

#[test]
fn complex_and_homology_golden() {
    assert_eq!(
        stdout_of(&["complex", "--type", "C", "--n", "2"]),
        "face_vector=1,5,4 chi=0\n"
    );
    assert_eq!(stdout_of(&["homology", "--type", "C", "--n", "2"]), "H0=Z H1=Z^2\n");
    assert_eq!(stdout_of(&["homology", "--type", "D", "--n", "3"]), "H0=Z H1=Z\n");
    // A one-relator group whose relator has zero exponent sums: H2 = Z,
    // consistent with the vanishing Euler characteristic (1 - 2 + 1 = 0).
    assert_eq!(
        stdout_of(&["homology", "--type", "C", "--n", "2", "--up-to", "2"]),
        "H0=Z H1=Z^2 H2=Z\n"
    );
    let doc: serde_json::Value =
        serde_json::from_str(&stdout_of(&["complex", "--type", "C", "--n", "2", "--json"]))
            .expect("valid json");
    assert_eq!(doc["face_vector"], serde_json::json!([1, 5, 4]));
    assert_eq!(doc["boundaries"].as_array().unwrap().len(), 2);
}

#[test]
fn present_golden() {
    assert_eq!(
        stdout_of(&["present", "--type", "C", "--n", "2", "--kind", "artin"]),
        "gens: x1 ; x2\nrels: (x1).(x2).(x1).(x2) = (x2).(x1).(x2).(x1)\n"
    );
    let poset = stdout_of(&[
        "present", "--type", "C", "--n", "2", "--gamma", "[1] [2]", "--kind", "poset",
    ]);
    assert_eq!(
        poset,
        "gens: (1,-2) ; (1,2) ; [1] ; [2] ; [1] [2]\n\
         rels: ((1,-2)).((1,2)) = ([1] [2])\n\
         rels: ((1,2)).((1,-2)) = ([1] [2])\n\
         rels: ([1]).([2]) = ([1] [2])\n\
         rels: ([2]).([1]) = ([1] [2])\n"
    );
    let derived = stdout_of(&["present", "--type", "D", "--n", "3", "--kind", "derived"]);
    assert!(derived.contains("z(1,2): z(1,2) = x1"), "{derived}");
    let ab = stdout_of(&[
        "present", "--type", "D", "--n", "3", "--kind", "reflection", "--abelianization",
    ]);
    assert!(ab.trim_end().ends_with("abelianization=Z"), "{ab}");
}

#[test]
fn verification_commands() {
    for gt in ["C", "D"] {
        let phi = stdout_of(&["verify-phi", "--type", gt, "--n", "3"]);
        assert!(phi.starts_with("ok checks="), "{phi}");
        let theta = stdout_of(&["verify-theta", "--type", gt, "--n", "3"]);
        assert!(theta.starts_with("ok checks="), "{theta}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["counts", "--type", "C", "--n", "3"],
        vec!["interval", "--type", "D", "--n", "3", "--json"],
        vec!["factorizations", "--type", "C", "--n", "3"],
        vec!["present", "--type", "C", "--n", "3", "--kind", "poset"],
    ] {
        assert_eq!(stdout_of(&args), stdout_of(&args), "{args:?}");
    }
}

#[test]
fn usage_errors_report_positions() {
    let bad = run(&["len", "--type", "C", "--n", "2", "[3]"]);
    assert_eq!(bad.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&bad.stderr);
    assert!(msg.contains("line 1, column 2"), "{msg}");

    let non_member = run(&["len", "--type", "D", "--n", "3", "[1]"]);
    assert_eq!(non_member.status.code(), Some(2));

    let unknown = run(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));

    let bad_word = run(&["nf", "--type", "C", "--n", "3", "((1,3) [2])"]);
    assert_eq!(bad_word.status.code(), Some(2));
}

#[test]
fn falsified_lattice_prints_a_witness() {
    let out = run(&["lattice-check", "--type", "C", "--n", "4", "--gamma", "[1,2] [3,4]"]);
    assert_eq!(out.status.code(), Some(1));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("not_a_lattice op=join"), "{msg}");
    assert!(msg.contains("witnesses="), "{msg}");

    let join = run(&["join", "--type", "C", "--n", "4", "--gamma", "[1,2] [3,4]", "(1,-3)", "(2,-4)"]);
    assert_eq!(join.status.code(), Some(1));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("noncross-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("counts.txt");
    let out = run(&[
        "counts", "--type", "C", "--n", "2", "--out",
        path.to_str().expect("utf8 path"),
    ]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "interval=6 factorizations=4 chains_max=4\n"
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
