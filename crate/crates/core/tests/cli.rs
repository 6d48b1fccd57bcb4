use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invsemi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn enum_counts() {
    let text = stdout(&["enum", "--n", "3", "--y", "0,1", "--format", "text"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("count=6"));
    assert_eq!(lines.count(), 6);
    let single = stdout(&[
        "enum", "--n", "2", "--y", "0,1", "--family", "fix", "--format", "text",
    ]);
    assert!(single.starts_with("count=1\n"));
    assert_eq!(
        run(&["enum", "--n", "3", "--y", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn enumerated_maps_classify_as_members() {
    let text = stdout(&["enum", "--n", "3", "--y", "0,1", "--format", "text"]);
    for f in text.lines().skip(1) {
        let v = json(&["classify", "--n", "3", "--y", "0,1", f]);
        assert_eq!(v["f"], f);
        assert_eq!(v["membership"]["in_omegabar"], true);
        assert_eq!(v["regular"], true);
        assert_eq!(v["unit_regular"], true);
    }
}

#[test]
fn classify_member_and_non_member() {
    let v = json(&["classify", "--n", "3", "--y", "0,1", "[0 1 0]"]);
    assert_eq!(v["profile"], "[1 1]");
    assert_eq!(v["outside_y"], 0);
    assert_eq!(v["green_class_sizes"]["H"], 2);
    assert_eq!(v["green_class_sizes"]["D"], 4);

    let v = json(&["classify", "--n", "3", "--y", "0,1", "[0 0 2]"]);
    assert_eq!(v["membership"]["in_omegabar"], false);
    assert_eq!(v["membership"]["in_tbar"], true);
    assert!(v["regular"].is_null());
    assert!(v["reason"].is_string());
}

#[test]
fn green_relations() {
    let l = stdout(&[
        "green", "--n", "3", "--y", "0,1", "--rel", "L", "[0 1 0]", "[0 1 1]",
    ]);
    assert!(l.contains("related=true") && l.contains("oracle=true"));
    let r = stdout(&[
        "green", "--n", "3", "--y", "0,1", "--rel", "R", "[0 1 0]", "[0 1 1]",
    ]);
    assert!(r.contains("related=false") && r.contains("oracle=false"));
    let w = stdout(&[
        "green",
        "--n",
        "3",
        "--y",
        "0,1",
        "--rel",
        "L",
        "[0 1 0]",
        "[0 1 1]",
        "--witness",
    ]);
    assert!(w.lines().any(|line| line.starts_with("witness f=hg:")));
}

#[test]
fn profile_separates_d_from_j() {
    for (p, q) in [("[w 1 1]", "[w w 1]"), ("[w w]+rest1", "[w]+rest1")] {
        let out = stdout(&["profile", p, q, "--j"]);
        assert!(out.lines().any(|l| l == "d=false"), "{out}");
        assert!(out.lines().any(|l| l == "j=true"), "{out}");
        assert!(out.contains("j.forward.cover="));
    }
}

#[test]
fn eggbox_dot() {
    let dot = stdout(&["eggbox", "--n", "3", "--y", "0,1", "--format", "dot"]);
    let expected = "\
digraph eggbox {
  compound=true;
  label=\"n=3 Y={0,1}\";
  node [shape=box];
  subgraph cluster_d0 {
    label=\"D0 |Xf\\\\Y|=1\";
    d0_r0_c0 [label=\"2*\"];
  }
  subgraph cluster_d1 {
    label=\"D1 |Xf\\\\Y|=0\";
    d1_r0_c0 [label=\"2*\"];
    d1_r1_c0 [label=\"2*\"];
  }
  d0_r0_c0 -> d1_r0_c0 [ltail=cluster_d0, lhead=cluster_d1];
}
";
    assert_eq!(dot, expected);
}

#[test]
fn kernel_and_ideals() {
    let k = json(&["kernel", "--n", "3", "--y", "0,1"]);
    assert_eq!(k["members"].as_array().unwrap().len(), 4);
    let all = json(&["ideals", "--n", "4", "--y", "0,1"]);
    assert_eq!(all["count"], 3);
    assert_eq!(all["ideals"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--max-n", "2", "--skip-n5", "--format", "text"]);
    assert_eq!(ok.status.code(), Some(0));

    let bad = run(&[
        "verify",
        "--max-n",
        "3",
        "--skip-n5",
        "--mutant",
        "flip-compose",
        "--format",
        "text",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let text = String::from_utf8(bad.stdout).unwrap();
    assert!(
        text.lines()
            .any(|l| l.contains("thm.L_char") && l.contains("FAIL")),
        "{text}"
    );

    let big = run(&["verify", "--max-n", "6", "--skip-n5"]);
    assert_eq!(big.status.code(), Some(3));
}

#[test]
fn verify_is_deterministic_across_job_counts() {
    let a = stdout(&["verify", "--max-n", "3", "--seed", "11", "--jobs", "1"]);
    let b = stdout(&["verify", "--max-n", "3", "--seed", "11", "--jobs", "3"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["passed"], true);
}
