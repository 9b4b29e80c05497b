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
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hijack_sim::attacks::{check_legal, evaluate, Action, AttackStrategy};
use hijack_sim::finders::{
    find_origin_spoofing, find_sbgp_bruteforce, oracle_origin_spoofing, FinderResult, SbgpSearch, DEFAULT_MAX_LEN,
    DEFAULT_ORACLE_DEGREE_BOUND, DEFAULT_SBGP_DEGREE_BOUND,
};
use hijack_sim::gadgets::{gen_gadget_origin, gen_gadget_sbgp, parse_dimacs, GadgetMode, Structure};
use hijack_sim::graph::{format_graph, parse_graph};
use hijack_sim::instances::{fixture, Fixture};
use hijack_sim::routing::simulate;
use hijack_sim::verify::{run_suite, workers_from_env, Suite};
use hijack_sim::{AsGraph, Asn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CapabilityArg {
    Origin,
    Sbgp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Origin,
    Sbgp,
}

#[derive(Debug, Parser)]
#[command(name = "hijack-sim", version, about = "Interdomain routing simulation and traffic-attraction search")]
struct Cli {
    /// Output format of the run report.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a graph file for self-loops, repeated edges and provider cycles.
    Validate { graph: PathBuf },
    /// Compute the stable routing state toward a destination.
    Simulate {
        graph: PathBuf,
        #[arg(long)]
        dest: u32,
        /// Strategy file (JSON) pinning the manipulator's announcements.
        #[arg(long)]
        strategy: Option<PathBuf>,
        /// Victim AS; with a strategy, the report carries hijack and interception verdicts.
        #[arg(long)]
        source: Option<u32>,
    },
    /// Search for a hijacking strategy.
    Find {
        graph: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum)]
        capability: CapabilityArg,
        /// Longest path, in hops, tried by the polynomial origin-claim finder.
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
        /// Try every neighbor subset instead of the polynomial finder.
        #[arg(long)]
        oracle: bool,
        /// Send one and the same route to every non-silent neighbor.
        #[arg(long)]
        same_path: bool,
        /// Largest manipulator degree the exhaustive searches accept.
        #[arg(long)]
        degree_bound: Option<usize>,
    },
    /// Build the reduction network of a DIMACS CNF formula.
    Gadget {
        #[arg(long, value_enum)]
        mode: ModeArg,
        cnf: PathBuf,
        /// Output prefix; writes `<out>.graph` and `<out>.roles`.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run a property suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        count: Option<usize>,
        /// Worker threads; defaults to the HIJACK_SIM_WORKERS variable, else 1.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Write a built-in fixture in the graph file format.
    ExportFixture {
        #[arg(value_parser = |s: &str| s.parse::<Fixture>().map_err(|e| e.to_string()))]
        fixture: Fixture,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct RunReport {
    command: Vec<String>,
    inputs: Vec<InputDigest>,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    payload: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip)]
    text: Vec<String>,
}

struct Run {
    inputs: Vec<InputDigest>,
}

struct Done {
    code: u8,
    payload: Value,
    text: Vec<String>,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

impl Run {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = std::fs::read(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        String::from_utf8(bytes).map_err(|_| Failure(format!("{}: not valid UTF-8", path.display())))
    }

    fn graph(&mut self, path: &Path) -> Result<AsGraph, Failure> {
        let text = self.read(path)?;
        parse_graph(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
    }

    fn valid_graph(&mut self, path: &Path) -> Result<AsGraph, Failure> {
        let g = self.graph(path)?;
        if let Some(v) = g.validation().violations.first() {
            return Err(Failure(format!("{}: invalid graph: {v}", path.display())));
        }
        Ok(g)
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payloads serialize")
}

fn validate(run: &mut Run, path: &Path) -> Result<Done, Failure> {
    let g = run.graph(path)?;
    let report = g.validation();
    let mut text = vec![format!("{} vertices, {} edges", g.len(), g.edges().len())];
    text.extend(report.violations.iter().map(|v| format!("violation: {v}")));
    text.push(if report.is_valid() { "valid".into() } else { "invalid".into() });
    Ok(Done {
        code: if report.is_valid() { 0 } else { 1 },
        payload: json!({ "valid": report.is_valid(), "vertices": g.len(), "edges": g.edges().len(), "violations": report.violations }),
        text,
    })
}

fn state_lines(state: &hijack_sim::RoutingState) -> Vec<String> {
    let mut out = vec![format!("converged after {} passes", state.rounds())];
    for v in state.vertices() {
        out.push(format!("AS {v}: {}", state.selected(*v).map_or("no route".to_string(), |p| p.to_string())));
    }
    out
}

fn simulate_cmd(run: &mut Run, path: &Path, dest: u32, strategy: Option<&Path>, source: Option<u32>) -> Result<Done, Failure> {
    let g = run.valid_graph(path)?;
    let d = Asn(dest);
    let Some(sp) = strategy else {
        let state = simulate(&g, d, None)?;
        return Ok(Done { code: 0, text: state_lines(&state), payload: to_value(&state) });
    };
    let strategy: AttackStrategy =
        serde_json::from_str(&run.read(sp)?).map_err(|e| Failure(format!("{}: {e}", sp.display())))?;
    let legality = check_legal(&g, d, &strategy);
    if !legality.legal {
        let list: Vec<String> = legality.violations.iter().map(|v| v.to_string()).collect();
        return Err(Failure(format!("illegal strategy: {}", list.join("; "))));
    }
    match source {
        Some(s) => {
            let out = evaluate(&g, Asn(s), d, strategy.manipulator, &strategy)?;
            let mut text = vec![format!("hijacked: {}", out.hijacked), format!("intercepted: {}", out.intercepted)];
            text.extend(state_lines(&out.state));
            Ok(Done { code: 0, payload: to_value(&out), text })
        }
        None => {
            let state = simulate(&g, d, Some(&strategy.pinned()))?;
            Ok(Done { code: 0, text: state_lines(&state), payload: to_value(&state) })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn find_cmd(
    run: &mut Run,
    path: &Path,
    (s, d, m): (u32, u32, u32),
    capability: CapabilityArg,
    max_len: usize,
    oracle: bool,
    same_path: bool,
    degree_bound: Option<usize>,
) -> Result<Done, Failure> {
    let g = run.valid_graph(path)?;
    let (s, d, m) = (Asn(s), Asn(d), Asn(m));
    let result: FinderResult = match (capability, oracle) {
        (CapabilityArg::Origin, false) => find_origin_spoofing(&g, s, d, m, max_len)?,
        (CapabilityArg::Origin, true) => {
            oracle_origin_spoofing(&g, s, d, m, degree_bound.unwrap_or(DEFAULT_ORACLE_DEGREE_BOUND))?
        }
        (CapabilityArg::Sbgp, _) => find_sbgp_bruteforce(
            &g,
            s,
            d,
            m,
            SbgpSearch { same_path, degree_bound: degree_bound.unwrap_or(DEFAULT_SBGP_DEGREE_BOUND) },
        )?,
    };
    let mut text = vec![
        format!("found: {}", result.found),
        format!("candidates: {}, simulations: {}", result.stats.candidates, result.stats.simulations),
    ];
    if let Some(st) = &result.strategy {
        text.push(format!("capability: {}", st.capability));
        for (n, a) in &st.announcements {
            let action = match a {
                Action::Origin => "origin".to_string(),
                Action::Silence => "silence".to_string(),
                Action::Path(p) => format!("path {p}"),
            };
            text.push(format!("to AS {n}: {action}"));
        }
    }
    if let Some(w) = &result.witness_path {
        text.push(format!("s selects {w}"));
    }
    if let Some(i) = result.intercepted {
        text.push(format!("intercepted: {i}"));
    }
    Ok(Done { code: if result.found { 0 } else { 1 }, payload: to_value(&result), text })
}

fn write_output(path: &Path, contents: &str) -> Result<InputDigest, Failure> {
    std::fs::write(path, contents).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    Ok(InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(contents.as_bytes())) })
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn gadget_cmd(run: &mut Run, mode: ModeArg, cnf: &Path, out: &Path) -> Result<Done, Failure> {
    let text = run.read(cnf)?;
    let f = parse_dimacs(&text).map_err(|e| Failure(format!("{}: {e}", cnf.display())))?;
    let inst = match mode {
        ModeArg::Origin => gen_gadget_origin(&f)?,
        ModeArg::Sbgp => gen_gadget_sbgp(&f)?,
    };
    let graph_file = write_output(&with_suffix(out, "graph"), &format_graph(&inst.graph))?;
    let roles_file = write_output(&with_suffix(out, "roles"), &inst.roles_text())?;
    let structures: std::collections::BTreeMap<String, usize> = [
        Structure::Role,
        Structure::Intermediate,
        Structure::Short,
        Structure::Long,
        Structure::Disruptive,
    ]
    .into_iter()
    .map(|t| (t.to_string(), inst.count(t)))
    .collect();
    let mut lines = vec![
        format!("mode: {}", if inst.mode == GadgetMode::Origin { "origin" } else { "sbgp" }),
        format!("{} vertices, {} edges", inst.graph.len(), inst.graph.edges().len()),
        format!("s={} d={} m={}", inst.s, inst.d, inst.m),
    ];
    lines.extend(structures.iter().map(|(k, v)| format!("{k}: {v}")));
    lines.push(format!("wrote {} and {}", graph_file.path, roles_file.path));
    Ok(Done {
        code: 0,
        payload: json!({
            "mode": inst.mode,
            "variables": f.num_vars,
            "clauses": f.clauses.len(),
            "vertices": inst.graph.len(),
            "edges": inst.graph.edges().len(),
            "s": inst.s,
            "d": inst.d,
            "m": inst.m,
            "structures": structures,
            "outputs": [graph_file, roles_file],
        }),
        text: lines,
    })
}

fn verify_cmd(suite: Suite, seed: u64, count: Option<usize>, workers: Option<usize>) -> Result<Done, Failure> {
    let report = run_suite(suite, seed, count, workers.unwrap_or_else(workers_from_env).max(1));
    let mut text = vec![format!("suite {suite}: {}", if report.passed { "pass" } else { "fail" })];
    text.extend(report.checks.iter().map(|c| {
        format!("{} {}{}", if c.passed { "pass" } else { "FAIL" }, c.name, if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) })
    }));
    text.extend(report.counters.iter().map(|(k, v)| format!("{k}: {v}")));
    text.extend(report.failures.iter().map(|f| format!("failure: {f}")));
    Ok(Done { code: if report.passed { 0 } else { 1 }, payload: to_value(&report), text })
}

fn export_cmd(which: Fixture, out: Option<&Path>) -> Result<Done, Failure> {
    let sc = fixture(which);
    let body = format!("# fixture {which}: s={} d={} m={}\n{}", sc.s, sc.d, sc.m, format_graph(&sc.graph));
    let mut payload = json!({ "fixture": which.name(), "s": sc.s, "d": sc.d, "m": sc.m });
    let text = match out {
        Some(p) => {
            let digest = write_output(p, &body)?;
            let line = format!("wrote {}", digest.path);
            payload["output"] = to_value(&digest);
            vec![line]
        }
        None => {
            payload["graph"] = Value::String(body.clone());
            body.lines().map(str::to_string).collect()
        }
    };
    Ok(Done { code: 0, payload, text })
}

fn execute(cli: &Cli, run: &mut Run) -> Result<Done, Failure> {
    match &cli.command {
        Command::Validate { graph } => validate(run, graph),
        Command::Simulate { graph, dest, strategy, source } => {
            simulate_cmd(run, graph, *dest, strategy.as_deref(), *source)
        }
        Command::Find { graph, s, d, m, capability, max_len, oracle, same_path, degree_bound } => {
            find_cmd(run, graph, (*s, *d, *m), *capability, *max_len, *oracle, *same_path, *degree_bound)
        }
        Command::Gadget { mode, cnf, out } => gadget_cmd(run, *mode, cnf, out),
        Command::Verify { suite, seed, count, workers } => verify_cmd(*suite, *seed, *count, *workers),
        Command::ExportFixture { fixture, out } => export_cmd(*fixture, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let mut run = Run { inputs: Vec::new() };
    let report = match execute(&cli, &mut run) {
        Ok(done) => RunReport {
            command: args,
            inputs: run.inputs,
            exit_code: done.code,
            payload: Some(done.payload),
            error: None,
            text: done.text,
        },
        Err(Failure(msg)) => {
            RunReport { command: args, inputs: run.inputs, exit_code: 2, payload: None, error: Some(msg), text: Vec::new() }
        }
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Text => {
            println!("command: hijack-sim {}", report.command.join(" "));
            for i in &report.inputs {
                println!("file {} sha256 {}", i.path, i.sha256);
            }
            for line in &report.text {
                println!("{line}");
            }
            if let Some(e) = &report.error {
                println!("error: {e}");
            }
            println!("exit code: {}", report.exit_code);
        }
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(report.exit_code)
}
