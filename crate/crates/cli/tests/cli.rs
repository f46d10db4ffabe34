use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name);
    root.to_string_lossy().into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("ptasynth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptasynth")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn synth_gate_region() {
    let o = run(&["synth", "--model", &data("gate.pta"), "--prop", &data("ef.prop")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let json: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(json["method"], "cad1");
    let verdicts: Vec<bool> = json["cells"].as_array().unwrap().iter().map(|c| c["verdict"].as_bool().unwrap()).collect();
    assert_eq!(verdicts, vec![false, false, false, true, true]);
}

#[test]
fn synth_empty_region_exits_3() {
    let m = scratch("empty.pta", "clocks: x\nparams: p\nloc a init inv: true\nloc b inv: true\nedge a -> b : x >= 2 & x <= 1 & x <= p ; go ;\n");
    let out = scratch("empty.json", "");
    let o = run(&["synth", "--model", &m, "--prop", &data("ef.prop"), "--out", &out]);
    // the property names q1, which this model lacks
    assert_eq!(o.status.code(), Some(2));
    let prop = scratch("b.prop", "EF b\n");
    let o = run(&["synth", "--model", &m, "--prop", &prop, "--out", &out]);
    assert_eq!(o.status.code(), Some(3));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(json["cells"].as_array().unwrap().iter().all(|c| c["verdict"] == false));
}

#[test]
fn check_verdicts() {
    let o = run(&["check", "--model", &data("gate.pta"), "--prop", &data("ef.prop"), "--set", "p=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("unsat"));
    let o = run(&["check", "--model", &data("gate.pta"), "--prop", &data("ef.prop"), "--set", "p=5/2"]);
    assert!(stdout(&o).starts_with("sat\nwitness trace:"));
    let o = run(&["check", "--model", &data("gate.pta"), "--prop", &data("ef.prop")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_2() {
    let o = run(&["parse", "--model", &data("bad.pta")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("undeclared clock `z`"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["parse", "--model", "/nonexistent.pta"]).status.code(), Some(2));
}

#[test]
fn domain_override_needs_force() {
    let m = data("two_one/even.pta");
    let p = data("two_one/even.prop");
    let o = run(&["check", "--model", &m, "--prop", &p, "--set", "p=4", "--time", "dense"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["check", "--model", &m, "--prop", &p, "--set", "p=4", "--param-domain", "nat"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("sat"));
}

#[test]
fn oracle_table_and_json() {
    let out = scratch("oracle.json", "");
    let o = run(&["oracle", "--model", &data("gate.pta"), "--prop", &data("ef.prop"), "--grid", "p=0..3", "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1\tF\n2\tT\n"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["verdicts"]["2"], true);
}

#[test]
fn feasible_and_runs() {
    let r = scratch("gate.run", "0\n");
    let o = run(&["feasible", "--model", &data("gate.pta"), "--run", &r, "--set", "p=1"]);
    let s = stdout(&o);
    assert!(s.starts_with("infeasible\nfailing pair: (1, 1)"), "{s}");
    let o = run(&["runs", "--model", &data("two_one/two_phase.pta"), "--max-len", "2"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let bad = scratch("bad.run", "7\n");
    assert_eq!(run(&["feasible", "--model", &data("gate.pta"), "--run", &bad, "--set", "p=1"]).status.code(), Some(2));
}

#[test]
fn analyze_and_scan() {
    let o = run(&["analyze2", "--model", &data("two_one/even.pta"), "--prop", &data("two_one/even.prop"), "--probe-horizon", "1"]);
    let s = stdout(&o);
    assert!(s.contains("S0 = 9, S1 = 36"));
    assert!(s.contains("period: T1 = 36, c = 2"));
    let m = scratch(
        "loop.pta",
        "clocks: x, y\nparams: p\nloc a init inv: true\nloc b inv: true\nedge a -> a : y <= 2 ; loop ; reset y:=0\nedge a -> b : x - y >= p ; out ;\n",
    );
    let t = scratch("loop.json", r#"{"gamma": 4, "steps": [{"delay": 2, "edge": 0}, {"delay": 2, "edge": 0}, {"delay": 0, "edge": 1}]}"#);
    let o = run(&["scan-run", "--model", &m, "--trace", &t, "--lemma", "oneP4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness [1, 2]"));
    let o = run(&["scan-run", "--model", &m, "--trace", &t, "--lemma", "oneP9"]);
    assert_eq!(o.status.code(), Some(2));
    let z = scratch("z.pta", "clocks: x, y, z\nparams: p\nloc a init inv: true\nedge a -> a : z <= p ; t ;\n");
    let o = run(&["analyze2", "--model", &z, "--prop", &scratch("a.prop", "EF a\n")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("`z`"));
}

#[test]
fn decompose_and_transform() {
    let o = run(&["decompose", "--model", &data("gate.pta"), "--prop", &data("ef.prop")]);
    let s = stdout(&o);
    assert!(s.starts_with("method cad1, 5 cells"));
    let json: serde_json::Value = serde_json::from_str(s.lines().last().unwrap()).unwrap();
    assert_eq!(json["cells"][3]["kind"], "point");
    let r = scratch("t.run", "0\n");
    let o = run(&["transform", "--model", &data("gate.pta"), "--run", &r]);
    assert!(stdout(&o).contains("edge s0 -> s1"));
    let sp = scratch("q1.sp", "q1\n");
    let o = run(&["run-region", "--model", &data("gate.pta"), "--run", &r, "--prop", &sp]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with('T')).count(), 2);
}

#[test]
fn selftest_is_deterministic() {
    let a = Command::new(env!("CARGO_BIN_EXE_ptasynth")).args(["selftest", "--seed", "42", "--quick"]).env("PTASYNTH_THREADS", "2").output().unwrap();
    let b = run(&["selftest", "--seed", "42", "--quick"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
}
