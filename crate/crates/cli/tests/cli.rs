use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistlab"))
        .args(args)
        .env_remove("TWISTLAB_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (v, out.status.code().unwrap())
}

#[test]
fn hf_star4_defined_objects() {
    let g = fixture("star4.json");
    let out = run(&[
        "hf", "--graph", &g, "--X", "A C : D", "--Y", "B C : E", "--format", "text",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
}

#[test]
fn braid_relator_is_trivial() {
    let g = fixture("a2.json");
    let (v, code) = json(&[
        "check-relation",
        "--graph",
        &g,
        "--word",
        "a b a b^-1 a^-1 b^-1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["trivial"], true);
    let (v, _) = json(&["check-relation", "--graph", &g, "--word", "a b a^-1 b^-1"]);
    assert_eq!(v["result"]["trivial"], false);
    assert_eq!(v["result"]["witness_verified"], true);
}

#[test]
fn ss_compare_flags_hold() {
    let g = fixture("a3.json");
    let (v, code) = json(&[
        "ss-compare",
        "--graph",
        &g,
        "--word",
        "v1 v2^2",
        "--i",
        "1",
        "--j",
        "3",
    ]);
    assert_eq!(code, 0);
    let r = &v["result"];
    let up = r["up"].as_u64().unwrap();
    let down = r["down"].as_u64().unwrap();
    assert!(up >= down);
    assert_eq!(up % 2, down % 2);
    for flag in ["up_ge_down", "same_parity", "low_values_agree"] {
        assert_eq!(r[flag], true, "{flag}");
    }
}

#[test]
fn ss_compare_sampling_is_seeded() {
    let g = fixture("a3.json");
    let a = run(&["ss-compare", "--graph", &g, "--samples", "40"]);
    let b = run(&["ss-compare", "--graph", &g, "--samples", "40"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn malformed_graph_names_the_field() {
    let dir = std::env::temp_dir().join(format!("twistlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("bad.json");
    std::fs::write(&p, r#"{"vertices":["a"],"edgez":[]}"#).unwrap();
    let (v, code) = json(&["plumb", "--graph", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "Parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("edges"));
    std::fs::write(
        &p,
        r#"{"vertices":["a","b"],"edges":[{"ends":["a","q"],"orient":1}]}"#,
    )
    .unwrap();
    let (v, code) = json(&["plumb", "--graph", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains('q'));
}

#[test]
fn output_is_deterministic() {
    let g = fixture("a3.json");
    let args = [
        "transfer",
        "--graph",
        &g,
        "--word",
        "v1 v2 v1^-1 v2^-1",
        "--height",
        "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["conclusion"], "obstructed_everywhere");
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn suite_keeps_input_order() {
    let dir = std::env::temp_dir().join(format!("twistlab-suite-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let suite = dir.join("suite.txt");
    let (a2, s4) = (fixture("a2.json"), fixture("star4.json"));
    let lines: Vec<String> = (0..8)
        .map(|k| {
            if k % 2 == 0 {
                format!("imin --graph {a2} --a \"a^{k} : b\" --b b")
            } else {
                format!("coincidence --graph {s4}")
            }
        })
        .collect();
    std::fs::write(&suite, format!("# comment\n{}\n", lines.join("\n"))).unwrap();
    let (v, code) = json(&["--suite", suite.to_str().unwrap()]);
    assert_eq!(code, 0);
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 8);
    for (k, item) in items.iter().enumerate() {
        let cmd = item["command"][0].as_str().unwrap();
        assert_eq!(cmd, if k % 2 == 0 { "imin" } else { "coincidence" });
        if k % 2 == 0 {
            assert_eq!(item["result"], k as u64);
        }
    }
}

#[test]
fn raag_and_wreath_text() {
    let out = run(&[
        "raag",
        "--graph",
        &fixture("star4.json"),
        "--n",
        "2",
        "--format",
        "text",
    ]);
    let t = String::from_utf8_lossy(&out.stdout);
    assert!(t.contains("gens: z1 z2 z3 z4 z5"));
    assert_eq!(t.lines().filter(|l| l.starts_with('[')).count(), 6);
    let out = run(&[
        "wreath", "--free", "a b", "--cyclic", "3", "--format", "text",
    ]);
    let t = String::from_utf8_lossy(&out.stdout);
    assert!(
        t.starts_with("gens: a_0 b_0 a_1 b_1 a_2 b_2 t_1 t_2"),
        "{t}"
    );
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_eq!(run(&["hf", "--graph", "x.json"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    let out = run(&[
        "wreath", "--free", "a", "--cyclic", "2", "--group", "g.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
