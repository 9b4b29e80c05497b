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

//! Acceptance run: one line per criterion, non-zero exit on any failure.
//! Runs without the libtest harness so the lines show up in plain
//! `cargo test` output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hijack_sim::verify::{
    suite_finder_oracle, suite_convergence, suite_examples, suite_gadgets, suite_same_path, workers_from_env,
    GadgetSuiteOptions, SuiteReport,
};

const SEED: u64 = 7;

struct Reports {
    examples: SuiteReport,
    finder: SuiteReport,
    origin_gadgets: SuiteReport,
    sbgp_gadgets: SuiteReport,
    convergence: SuiteReport,
    same_path: SuiteReport,
    times: [Duration; 6],
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn run_all(workers: usize) -> Reports {
    let origin_only = GadgetSuiteOptions { sbgp_max_vars: 0, sbgp_count: 0, ..GadgetSuiteOptions::default() };
    let sbgp_only = GadgetSuiteOptions { origin_max_vars: 0, ..GadgetSuiteOptions::default() };
    let (examples, t1) = timed(suite_examples);
    let (finder, t2) = timed(|| suite_finder_oracle(SEED, 500, workers));
    let (origin_gadgets, t3) = timed(|| suite_gadgets(SEED, origin_only, workers));
    let (sbgp_gadgets, t4) = timed(|| suite_gadgets(SEED, sbgp_only, workers));
    let (convergence, t5) = timed(|| suite_convergence(SEED, 1000, 100, workers));
    let (same_path, t6) = timed(|| suite_same_path(SEED, 500, workers));
    Reports { examples, finder, origin_gadgets, sbgp_gadgets, convergence, same_path, times: [t1, t2, t3, t4, t5, t6] }
}

fn counter(r: &SuiteReport, key: &str) -> u64 {
    r.counters.get(key).copied().unwrap_or(0)
}

fn first_problem(r: &SuiteReport) -> String {
    r.failures
        .first()
        .cloned()
        .or_else(|| r.checks.iter().find(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)))
        .unwrap_or_default()
}

fn json(r: &SuiteReport) -> String {
    serde_json::to_string(r).expect("reports serialize")
}

fn main() -> ExitCode {
    let workers = workers_from_env();
    let r = run_all(workers);
    let mut lines: Vec<(bool, String)> = Vec::new();

    let [t1, t2, t3, t4, t5, t6] = r.times;
    let ok = r.examples.passed && t1 < Duration::from_secs(1);
    let detail = r.examples.checks.iter().map(|c| if c.passed { "ok" } else { "FAIL" }).collect::<Vec<_>>().join(",");
    lines.push((ok, format!("criterion 1 (fixture examples): {} checks [{detail}] in {t1:.2?}", r.examples.checks.len())));

    let n = counter(&r.finder, "instances");
    let ok = r.finder.passed && n >= 500 && t2 < Duration::from_secs(60);
    lines.push((ok, format!(
        "criterion 2 (polynomial finder vs exhaustive search): {n} instances, {} hijackable, {} disagreements in {t2:.2?} {}",
        counter(&r.finder, "hijackable"),
        r.finder.failures.len(),
        first_problem(&r.finder)
    )));

    let n = counter(&r.origin_gadgets, "origin-formulas");
    let ok = r.origin_gadgets.passed && n > 0 && t3 < Duration::from_secs(600);
    lines.push((ok, format!(
        "criterion 3 (origin-claim reduction): {n} formulas ({} unsatisfiable), {} mismatches in {t3:.2?} {}",
        counter(&r.origin_gadgets, "origin-unsatisfiable"),
        r.origin_gadgets.failures.len(),
        first_problem(&r.origin_gadgets)
    )));

    let n = counter(&r.sbgp_gadgets, "sbgp-formulas");
    let ok = r.sbgp_gadgets.passed && n >= 200;
    lines.push((ok, format!(
        "criterion 4 (S-BGP reduction): {n} formulas ({} unsatisfiable), {} mismatches in {t4:.2?} {}",
        counter(&r.sbgp_gadgets, "sbgp-unsatisfiable"),
        r.sbgp_gadgets.failures.len(),
        first_problem(&r.sbgp_gadgets)
    )));

    let n = counter(&r.convergence, "instances");
    let ok = r.convergence.passed && n >= 1000 && counter(&r.convergence, "schedule-instances") >= 100;
    lines.push((ok, format!(
        "criterion 5 (convergence): {n} runs, max {} passes, {} schedule divergences over {} instances x 5 orders in {t5:.2?} {}",
        counter(&r.convergence, "max-rounds"),
        counter(&r.convergence, "schedule-divergences"),
        counter(&r.convergence, "schedule-instances"),
        first_problem(&r.convergence)
    )));

    let n = counter(&r.same_path, "instances");
    let ok = r.same_path.failures.is_empty() && n >= 500 && counter(&r.same_path, "hijacks") > 0;
    lines.push((ok, format!(
        "criterion 6 (same-path hijack implies interception): {n} instances, {} strategies, {} hijacks, {} counterexamples in {t6:.2?}",
        counter(&r.same_path, "strategies"),
        counter(&r.same_path, "hijacks"),
        r.same_path.failures.len()
    )));

    let states = counter(&r.same_path, "availability-states");
    let violations = counter(&r.same_path, "availability-violations");
    lines.push((violations == 0 && states > 0, format!(
        "criterion 7 (available route classes after attack): {states} states, {violations} violations {}",
        r.same_path.checks.iter().find(|c| !c.passed).map(|c| c.detail.clone()).unwrap_or_default()
    )));

    let again = run_all(workers);
    let pairs = [
        ("1", &r.examples, &again.examples),
        ("2", &r.finder, &again.finder),
        ("3", &r.origin_gadgets, &again.origin_gadgets),
        ("4", &r.sbgp_gadgets, &again.sbgp_gadgets),
        ("5", &r.convergence, &again.convergence),
        ("6-7", &r.same_path, &again.same_path),
    ];
    let differing: Vec<&str> = pairs.iter().filter(|(_, a, b)| json(a) != json(b)).map(|(k, _, _)| *k).collect();
    let bytes: usize = pairs.iter().map(|(_, a, _)| json(a).len()).sum();
    lines.push((differing.is_empty(), format!(
        "criterion 8 (determinism): {} reports, {bytes} bytes, differing: {differing:?}",
        pairs.len()
    )));

    let mut all = true;
    for (ok, line) in &lines {
        all &= ok;
        println!("{} {line}", if *ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} of {} criteria passed (seed {SEED}, {workers} worker(s))", lines.iter().filter(|l| l.0).count(), lines.len());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
