//! The command-line contract: output contents and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn alcove(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alcove")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn rootsystem_prints_roots_and_labels() {
    let o = alcove(&["rootsystem", "A", "3", "--affine"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a0 = 1 - x1 + x4"), "{}", stdout(&o));
    let g2 = alcove(&["rootsystem", "G", "2", "--affine", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&g2.stdout).unwrap();
    assert_eq!(v["labels"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["simple_roots"].as_array().unwrap().len(), 3);
    let a5 = alcove(&["rootsystem", "A", "5", "--twist", "2"]);
    assert!(stdout(&a5).contains("A5^(2)"));
}

#[test]
fn invalid_root_systems_exit_2() {
    for args in [&["rootsystem", "Q", "2"][..], &["rootsystem", "A", "0"], &["rootsystem", "B", "3", "--twist", "2"]] {
        let o = alcove(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn check_exit_codes() {
    let file = scratch("sphere.toml");
    let f = file.to_str().unwrap();
    assert_eq!(alcove(&["examples", "spinning-sphere-2", "--export", f]).status.code(), Some(0));
    let ok = alcove(&["check", f]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("overall: Spherical"));

    let empty = scratch("empty.toml");
    std::fs::write(&empty, "format = 1\n").unwrap();
    assert_eq!(alcove(&["check", f, "--catalog", empty.to_str().unwrap()]).status.code(), Some(1));

    let bad = scratch("outside.toml");
    std::fs::write(&bad, std::fs::read_to_string(&file).unwrap().replace("[\"1/2\", \"-1/2\"]]", "[\"3/2\", \"-3/2\"]]")).unwrap();
    let o = alcove(&["check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("violates the wall 1 - x1 + x2 >= 0"), "{}", stderr(&o));

    let garbled = scratch("garbled.toml");
    std::fs::write(&garbled, "format = 1\nname = [\n").unwrap();
    let o = alcove(&["check", garbled.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));
}

#[test]
fn check_json_is_deterministic() {
    let a = alcove(&["check", "builtin:inscribed-sp4-1", "--json"]);
    let b = alcove(&["check", "builtin:inscribed-sp4-1", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["overall"], "Spherical");
    assert_eq!(v["phi_m"]["type"], "B2^(1)");
    assert!(v["vertices"][0]["hilbert_basis"].is_array());
    assert!(v["vertices"][0]["witness"].is_string());
    assert_eq!(alcove(&["check", "builtin:su3-twisted-4P"]).status.code(), Some(1));
}

#[test]
fn examples_report_pass_lines() {
    let o = alcove(&["examples", "disymmetric-su4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass disymmetric-su4") && stdout(&o).contains("A1^(1)"), "{}", stdout(&o));
    let su2 = stdout(&alcove(&["examples", "su2-all"]));
    assert_eq!(su2.lines().filter(|l| l.starts_with("pass")).count(), 3);
    assert!(su2.contains("S^2 x S^2") && su2.contains("CP^2"));
    assert_eq!(alcove(&["examples", "no-such-example"]).status.code(), Some(2));
    let all = alcove(&["examples", "--all"]);
    assert_eq!(all.status.code(), Some(0));
    assert!(!stdout(&all).contains("FAIL"));
}

#[test]
fn render_is_deterministic_and_rank_two_only() {
    let (a, b) = (scratch("a.svg"), scratch("b.svg"));
    assert_eq!(alcove(&["render", "builtin:surjective-su3", a.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(alcove(&["render", "builtin:surjective-su3", b.to_str().unwrap()]).status.code(), Some(0));
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert_eq!(svg.matches("class=\"wall\"").count(), 3);
    let sp4 = scratch("sp4.svg");
    alcove(&["render", "builtin:surjective-sp4", sp4.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&sp4).unwrap().matches("class=\"wall\"").count(), 2);
    let o = alcove(&["render", "builtin:su2-P", scratch("x.svg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
