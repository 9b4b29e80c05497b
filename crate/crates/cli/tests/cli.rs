// Copyright 2026 The hijack-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hijack-sim"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn export(dir: &TempDir, name: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}.graph"));
    let out = run(dir.path(), &["export-fixture", name, "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    path
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    export(&dir, "fig1");
    let ok = run(dir.path(), &["validate", "fig1.graph"]);
    assert_eq!(code(&ok), 0);
    assert_eq!(json(&ok)["payload"]["valid"], true);

    std::fs::write(dir.path().join("loop.graph"), "c2p 1 1\n").unwrap();
    let bad = run(dir.path(), &["validate", "loop.graph"]);
    assert_eq!(code(&bad), 2);
    assert!(json(&bad)["error"].as_str().unwrap().contains("self-loop"));

    std::fs::write(dir.path().join("cycle.graph"), "c2p 1 2\nc2p 2 3\nc2p 3 1\n").unwrap();
    let cyc = run(dir.path(), &["validate", "cycle.graph"]);
    assert_eq!(code(&cyc), 1);
    let v = &json(&cyc)["payload"]["violations"][0];
    assert_eq!(v["kind"], "provider_cycle");
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn simulate_honest_and_with_strategy() {
    let dir = TempDir::new().unwrap();
    export(&dir, "fig1");
    let honest = run(dir.path(), &["simulate", "fig1.graph", "--dest", "0"]);
    assert_eq!(code(&honest), 0);
    let routes = &json(&honest)["payload"]["routes"];
    assert_eq!(routes["100"]["selected"], serde_json::json!([100, 6, 2, 1, 0]));

    let strategy = r#"{"capability":"sbgp","manipulator":200,"announcements":[{"neighbor":3,"action":"path","path":[200,2,1,0]}]}"#;
    std::fs::write(dir.path().join("s.json"), strategy).unwrap();
    let attacked = run(dir.path(), &["simulate", "fig1.graph", "--dest", "0", "--strategy", "s.json"]);
    assert_eq!(code(&attacked), 0);
    let report = json(&attacked);
    assert_eq!(report["payload"]["routes"]["100"]["selected"], serde_json::json!([100, 6, 5, 4, 3, 200, 2, 1, 0]));
    assert_eq!(report["inputs"].as_array().unwrap().len(), 2);

    let with_source =
        run(dir.path(), &["simulate", "fig1.graph", "--dest", "0", "--strategy", "s.json", "--source", "100"]);
    let p = &json(&with_source)["payload"];
    assert_eq!(p["hijacked"], true);
    assert_eq!(p["intercepted"], true);
}

#[test]
fn simulate_usage_errors() {
    let dir = TempDir::new().unwrap();
    export(&dir, "fig1");
    assert_eq!(code(&run(dir.path(), &["simulate", "fig1.graph"])), 2);
    assert_eq!(code(&run(dir.path(), &["simulate", "missing.graph", "--dest", "0"])), 2);
    std::fs::write(dir.path().join("forged.json"), r#"{"capability":"sbgp","manipulator":200,"announcements":[{"neighbor":3,"action":"path","path":[200,0]}]}"#).unwrap();
    let out = run(dir.path(), &["simulate", "fig1.graph", "--dest", "0", "--strategy", "forged.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn find_exit_codes() {
    let dir = TempDir::new().unwrap();
    for f in ["fig1", "fig2", "fig5"] {
        export(&dir, f);
    }
    let roles = ["--s", "100", "--d", "0", "--m", "200"];
    let with = |graph: &str, extra: &[&str]| {
        let mut args = vec!["find", graph];
        args.extend(roles);
        args.extend(extra);
        run(dir.path(), &args)
    };

    let f1 = with("fig1.graph", &["--capability", "origin"]);
    assert_eq!(code(&f1), 0);
    let r = json(&f1);
    assert_eq!(r["payload"]["found"], true);
    assert_eq!(r["payload"]["strategy"]["capability"], "origin");

    let f2 = with("fig2.graph", &["--capability", "origin", "--oracle"]);
    assert_eq!(code(&f2), 1);
    assert_eq!(json(&f2)["payload"]["stats"]["simulations"], 4);

    assert_eq!(code(&with("fig5.graph", &["--capability", "sbgp", "--same-path"])), 1);
    assert_eq!(code(&with("fig5.graph", &["--capability", "sbgp"])), 0);
}

#[test]
fn gadget_writes_instance_files() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("one.cnf"), "p cnf 3 1\n1 -2 3 0\n").unwrap();
    let out = run(dir.path(), &["gadget", "--mode", "origin", "one.cnf", "-o", "inst"]);
    assert_eq!(code(&out), 0);
    let p = &json(&out)["payload"];
    // t_i, tb_i and q_i for each of the three variables.
    assert_eq!(p["structures"]["intermediate"], 9);
    assert_eq!(p["structures"]["short"], 3);
    let graph = std::fs::read_to_string(dir.path().join("inst.graph")).unwrap();
    let roles = std::fs::read_to_string(dir.path().join("inst.roles")).unwrap();
    assert_eq!(graph.lines().count() as u64, p["edges"].as_u64().unwrap());
    assert!(roles.starts_with("role s "));
    let check = run(dir.path(), &["validate", "inst.graph"]);
    assert_eq!(code(&check), 0);

    std::fs::write(dir.path().join("many.cnf"), "p cnf 1 2\n1 0\n1 0\n").unwrap();
    let bad = run(dir.path(), &["gadget", "--mode", "sbgp", "many.cnf", "-o", "x"]);
    assert_eq!(code(&bad), 2);
    assert!(json(&bad)["error"].as_str().unwrap().contains("x1"));

    assert_eq!(code(&run(dir.path(), &["gadget", "--mode", "origin", "nope.cnf", "-o", "y"])), 2);
}

#[test]
fn verify_suites() {
    let dir = TempDir::new().unwrap();
    let ex = run(dir.path(), &["verify", "--suite", "examples"]);
    assert_eq!(code(&ex), 0);
    let thm5 = run(dir.path(), &["verify", "--suite", "thm5", "--seed", "7", "--count", "200"]);
    assert_eq!(code(&thm5), 0);
    assert_eq!(json(&thm5)["payload"]["seed"], 7);
    let alg1 = run(dir.path(), &["verify", "--suite", "alg1-oracle", "--seed", "7", "--count", "200"]);
    assert_eq!(code(&alg1), 0);
    assert!(json(&alg1)["payload"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    export(&dir, "fig1");
    for args in [
        &["find", "fig1.graph", "--s", "100", "--d", "0", "--m", "200", "--capability", "sbgp"][..],
        &["verify", "--suite", "alg1-oracle", "--seed", "3", "--count", "50", "--workers", "1"],
        &["simulate", "fig1.graph", "--dest", "0", "--format", "text"],
    ] {
        let a = run(dir.path(), args);
        let b = run(dir.path(), args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    // Worker count does not change the report.
    let one = run(dir.path(), &["verify", "--suite", "thm5", "--seed", "3", "--count", "60", "--workers", "1"]);
    let four = run(dir.path(), &["verify", "--suite", "thm5", "--seed", "3", "--count", "60", "--workers", "4"]);
    assert_eq!(json(&one)["payload"], json(&four)["payload"]);
}

#[test]
fn text_format() {
    let dir = TempDir::new().unwrap();
    export(&dir, "fig1");
    let out = run(dir.path(), &["--format", "text", "simulate", "fig1.graph", "--dest", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("AS 100: (100 6 2 1 0)"));
    assert!(text.trim_end().ends_with("exit code: 0"));
}
