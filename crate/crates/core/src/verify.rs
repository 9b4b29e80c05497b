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

//! Property suites over fixtures, seeded random instances and generated
//! gadgets. Each suite returns a report whose serialization depends only on
//! its arguments, whatever the number of worker threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::attacks::{evaluate, outcome_of, AttackStrategy};
use crate::finders::{
    find_origin_spoofing, find_sbgp_bruteforce, oracle_origin_first, oracle_origin_spoofing, SbgpSearch,
    DEFAULT_MAX_LEN, DEFAULT_ORACLE_DEGREE_BOUND,
};
use crate::gadgets::{
    check_sbgp_constraints, gen_gadget_origin, gen_gadget_sbgp, sat_bruteforce, CnfFormula, Structure,
};
use crate::graph::{best_class_toward, edge_class, AsGraph, Asn, BgpPath};
use crate::instances::{fixture, gen_random, instance_seed, Fixture, RandomSpec, RoleRule};
use crate::routing::{
    baseline_available, simulate, simulate_with_schedule, PinnedAnnouncements, RoutingState, Schedule,
};

/// Environment variable holding the worker count for the suites.
pub const WORKERS_ENV: &str = "HIJACK_SIM_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Examples,
    /// Polynomial origin-claim finder against exhaustive search.
    #[serde(rename = "alg1-oracle")]
    FinderOracle,
    /// Same-path S-BGP hijacks and post-attack route availability.
    #[serde(rename = "thm5")]
    SamePath,
    Convergence,
    Gadgets,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Examples, Suite::FinderOracle, Suite::SamePath, Suite::Convergence, Suite::Gadgets];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Examples => "examples",
            Suite::FinderOracle => "alg1-oracle",
            Suite::SamePath => "thm5",
            Suite::Convergence => "convergence",
            Suite::Gadgets => "gadgets",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: Option<u64>,
    pub count: Option<usize>,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Named tallies, e.g. instances examined or hijacks seen.
    pub counters: BTreeMap<String, u64>,
    /// Replayable descriptions of failing cases, in instance order.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, seed: Option<u64>, count: Option<usize>, checks: Vec<Check>) -> Self {
        SuiteReport { suite, seed, count, passed: false, checks, counters: BTreeMap::new(), failures: Vec::new() }
            .finish()
    }

    fn finish(mut self) -> Self {
        self.passed = self.failures.is_empty() && self.checks.iter().all(|c| c.passed);
        self
    }
}

/// Worker count from [`WORKERS_ENV`], 1 when unset or unparsable.
pub fn workers_from_env() -> usize {
    std::env::var(WORKERS_ENV).ok().and_then(|v| v.parse().ok()).filter(|&n| n >= 1).unwrap_or(1)
}

/// Maps `f` over `0..n` on `workers` threads, returning results in index order.
pub fn par_map<T: Send>(n: usize, workers: usize, f: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let workers = workers.clamp(1, n.max(1));
    if workers == 1 {
        return (0..n).map(f).collect();
    }
    let mut slots: Vec<Option<T>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let f = &f;
                scope.spawn(move || (w..n).step_by(workers).map(|i| (i, f(i))).collect::<Vec<_>>())
            })
            .collect();
        for h in handles {
            for (i, v) in h.join().expect("worker panicked") {
                slots[i] = Some(v);
            }
        }
    });
    slots.into_iter().map(|v| v.expect("every index computed")).collect()
}

fn p(ids: &[u32]) -> BgpPath {
    BgpPath::from_ids(ids)
}

fn selected_is(state: &RoutingState, v: Asn, want: &BgpPath) -> (bool, String) {
    let got = state.selected(v);
    (got == Some(want), format!("selected {}", got.map_or("none".to_string(), |p| p.to_string())))
}

/// The worked examples on the three fixtures.
pub fn suite_examples() -> SuiteReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, r: Result<(bool, String), String>| match r {
        Ok((ok, detail)) => checks.push(Check::new(name, ok, detail)),
        Err(e) => checks.push(Check::new(name, false, e)),
    };

    let f1 = fixture(Fixture::Fig1);
    let (s, m, d) = (f1.s.0, f1.m.0, f1.d.0);
    push(
        "fig1 honest route",
        simulate(&f1.graph, f1.d, None)
            .map(|st| selected_is(&st, f1.s, &p(&[s, 6, 2, 1, d])))
            .map_err(|e| e.to_string()),
    );
    push(
        "fig1 origin claim to 2",
        evaluate(&f1.graph, f1.s, f1.d, f1.m, &AttackStrategy::origin_to(f1.m, [Asn(2)]))
            .map(|o| {
                let (ok, detail) = selected_is(&o.state, f1.s, &p(&[s, 6, 2, m]));
                (ok && o.hijacked, format!("{detail}, hijacked {}", o.hijacked))
            })
            .map_err(|e| e.to_string()),
    );
    push(
        "fig1 s-bgp route to 3",
        evaluate(&f1.graph, f1.s, f1.d, f1.m, &AttackStrategy::sbgp(f1.m, [(Asn(3), p(&[m, 2, 1, d]))]))
            .map(|o| {
                let (ok, detail) = selected_is(&o.state, f1.s, &p(&[s, 6, 5, 4, 3, m, 2, 1, d]));
                let fwd = o.forwarding_route == Some(p(&[m, 2, 1, d]));
                (
                    ok && o.hijacked && o.intercepted && fwd,
                    format!("{detail}, hijacked {}, intercepted {}, forwarding via {:?}", o.hijacked, o.intercepted, o.forwarding_route.map(|q| q.to_string())),
                )
            })
            .map_err(|e| e.to_string()),
    );

    let f2 = fixture(Fixture::Fig2);
    push(
        "fig2 honest route",
        simulate(&f2.graph, f2.d, None)
            .map(|st| selected_is(&st, f2.s, &p(&[f2.s.0, 4, f2.d.0])))
            .map_err(|e| e.to_string()),
    );
    for set in [vec![Asn(6)], vec![Asn(6), Asn(7)]] {
        let name = format!("fig2 origin claim to {:?} fails", set.iter().map(|a| a.0).collect::<Vec<_>>());
        push(
            &name,
            evaluate(&f2.graph, f2.s, f2.d, f2.m, &AttackStrategy::origin_to(f2.m, set))
                .map(|o| (!o.hijacked, format!("s forwards along {:?}", o.data_plane_s.vertices)))
                .map_err(|e| e.to_string()),
        );
    }

    let f5 = fixture(Fixture::Fig5);
    let same = SbgpSearch { same_path: true, ..Default::default() };
    push(
        "fig5 same-path search fails",
        find_sbgp_bruteforce(&f5.graph, f5.s, f5.d, f5.m, same)
            .map(|r| (!r.found, format!("{} simulations", r.stats.simulations)))
            .map_err(|e| e.to_string()),
    );
    push(
        "fig5 multi-path search hijacks without interception",
        find_sbgp_bruteforce(&f5.graph, f5.s, f5.d, f5.m, SbgpSearch::default())
            .map(|r| {
                let ok = r.found && r.intercepted == Some(false);
                (ok, format!("found {}, intercepted {:?}", r.found, r.intercepted))
            })
            .map_err(|e| e.to_string()),
    );
    SuiteReport::new(Suite::Examples, None, None, checks)
}

fn random_spec(seed: u64, vertices: std::ops::RangeInclusive<usize>, max_deg: usize) -> RandomSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RandomSpec {
        seed: rng.gen(),
        num_vertices: rng.gen_range(vertices),
        density: rng.gen_range(0.2..0.5),
        peer_fraction: rng.gen_range(0.0..0.3),
        roles: RoleRule::MaxManipulatorDegree(max_deg),
    }
}

/// Agreement of the polynomial origin-claim finder with exhaustive search.
pub fn suite_finder_oracle(seed: u64, count: usize, workers: usize) -> SuiteReport {
    enum Case {
        Agree { found: bool, bounded: bool },
        Disagree(String),
    }
    let cases = par_map(count, workers, |i| {
        let spec = random_spec(instance_seed(seed, i as u64), 5..=12, 8);
        let sc = match gen_random(&spec) {
            Ok(sc) => sc,
            Err(e) => return Case::Disagree(format!("instance {i}: {e}")),
        };
        let fast = find_origin_spoofing(&sc.graph, sc.s, sc.d, sc.m, DEFAULT_MAX_LEN);
        let oracle = oracle_origin_spoofing(&sc.graph, sc.s, sc.d, sc.m, DEFAULT_ORACLE_DEGREE_BOUND);
        match (fast, oracle) {
            (Ok(a), Ok(b)) if a.found == b.found => Case::Agree {
                found: a.found,
                bounded: a.stats.simulations <= a.stats.candidates && b.stats.simulations <= b.stats.candidates,
            },
            (Ok(a), Ok(b)) => Case::Disagree(format!(
                "instance {i} (generator seed {}): polynomial finder {} but exhaustive search {}",
                spec.seed, a.found, b.found
            )),
            (a, b) => Case::Disagree(format!("instance {i}: errors {:?} / {:?}", a.err(), b.err())),
        }
    });
    let mut report = SuiteReport::new(Suite::FinderOracle, Some(seed), Some(count), Vec::new());
    let (mut found, mut unbounded) = (0, 0);
    for c in cases {
        match c {
            Case::Agree { found: f, bounded } => {
                found += f as u64;
                unbounded += !bounded as u64;
            }
            Case::Disagree(msg) => report.failures.push(msg),
        }
    }
    report.counters.insert("instances".into(), count as u64);
    report.counters.insert("hijackable".into(), found);
    report.checks.push(Check::new("simulation counts within bounds", unbounded == 0, format!("{unbounded} over")));
    report.finish()
}

/// Classes `c` for which each vertex has a valley-free route of class `c`
/// to `d` avoiding `m`, checked against what the vertex has available.
fn availability_violations(g: &AsGraph, d: Asn, m: Asn, best: &[Option<crate::graph::RouteClass>], st: &RoutingState) -> Vec<String> {
    let mut out = Vec::new();
    for (i, v) in g.vertices().iter().enumerate() {
        if *v == d || *v == m {
            continue;
        }
        let Some(need) = best[i] else { continue };
        let have = st
            .available(*v)
            .iter()
            .filter_map(|q| q.next_hop().and_then(|h| edge_class(g, *v, h).ok()))
            .max();
        if have.is_none_or(|h| h < need) {
            out.push(format!("AS {v} needs class {} but has {:?}", need.value(), have.map(|c| c.value())));
        }
    }
    out
}

/// Same-path strategies never hijack without intercepting, and every
/// post-attack state keeps good-enough routes available.
pub fn suite_same_path(seed: u64, count: usize, workers: usize) -> SuiteReport {
    #[derive(Default)]
    struct Tally {
        strategies: u64,
        hijacks: u64,
        states: u64,
        failures: Vec<String>,
        shortfalls: Vec<String>,
        hijackable: bool,
    }
    let tallies = par_map(count, workers, |i| {
        let mut t = Tally::default();
        let spec = random_spec(instance_seed(seed, i as u64), 5..=10, 6);
        let sc = match gen_random(&spec) {
            Ok(sc) => sc,
            Err(e) => {
                t.failures.push(format!("instance {i}: {e}"));
                return t;
            }
        };
        let g = &sc.graph;
        let pool = match baseline_available(g, sc.d, sc.m) {
            Ok(pool) => pool,
            Err(e) => {
                t.failures.push(format!("instance {i}: {e}"));
                return t;
            }
        };
        let dm = [g.idx(sc.m).expect("role")];
        let best = best_class_toward(g, g.idx(sc.d).expect("role"), None, &dm);
        let neighbors: Vec<Asn> = g.neighbors(sc.m).expect("role").into_iter().map(|(n, _)| n).collect();
        let k = neighbors.len();
        for path in &pool {
            for mask in 1u64..1 << k {
                let targets = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| neighbors[b]);
                let pinned = PinnedAnnouncements {
                    manipulator: sc.m,
                    announcements: targets.map(|n| (n, path.clone())).collect(),
                };
                t.strategies += 1;
                let st = match simulate(g, sc.d, Some(&pinned)) {
                    Ok(st) => st,
                    Err(e) => {
                        t.failures.push(format!("instance {i}: {e}"));
                        continue;
                    }
                };
                t.states += 1;
                for v in availability_violations(g, sc.d, sc.m, &best, &st) {
                    t.shortfalls.push(format!("instance {i}, {path} to mask {mask:#b}: {v}"));
                }
                let out = outcome_of(st, sc.s, sc.d, sc.m);
                if out.hijacked {
                    t.hijacks += 1;
                    t.hijackable = true;
                    if !out.intercepted {
                        t.failures.push(format!("instance {i} (generator seed {}): {path} to mask {mask:#b} hijacks without interception", spec.seed));
                    }
                }
            }
        }
        t
    });
    let mut report = SuiteReport::new(Suite::SamePath, Some(seed), Some(count), Vec::new());
    let (mut strategies, mut hijacks, mut states, mut hijackable) = (0, 0, 0, 0);
    let mut shortfalls = Vec::new();
    for t in tallies {
        strategies += t.strategies;
        hijacks += t.hijacks;
        states += t.states;
        hijackable += t.hijackable as u64;
        report.failures.extend(t.failures);
        shortfalls.extend(t.shortfalls);
    }
    report.counters.insert("instances".into(), count as u64);
    report.counters.insert("strategies".into(), strategies);
    report.counters.insert("hijacks".into(), hijacks);
    report.counters.insert("hijackable-instances".into(), hijackable);
    report.counters.insert("availability-states".into(), states);
    report.counters.insert("availability-violations".into(), shortfalls.len() as u64);
    let first = shortfalls.first().cloned().unwrap_or_default();
    report.checks.push(Check::new("available class never below the m-free valley-free class", shortfalls.is_empty(), first));
    report.finish()
}

/// Random steady announcements: either drawn from the honest pool or
/// arbitrary sequences starting at `m`, some naming unknown ASes.
fn random_pins(g: &AsGraph, d: Asn, m: Asn, rng: &mut ChaCha8Rng) -> PinnedAnnouncements {
    let neighbors: Vec<Asn> = g.neighbors(m).expect("role").into_iter().map(|(n, _)| n).collect();
    let pool = if rng.gen_bool(0.5) { baseline_available(g, d, m).unwrap_or_default() } else { Vec::new() };
    let mut announcements = BTreeMap::new();
    for n in neighbors {
        if rng.gen_bool(0.4) {
            continue;
        }
        let path = if !pool.is_empty() {
            pool.choose(rng).expect("non-empty").clone()
        } else {
            let len = rng.gen_range(0..6);
            let mut v = vec![m];
            for _ in 0..len {
                v.push(if rng.gen_bool(0.9) { *g.vertices().choose(rng).expect("non-empty") } else { Asn(rng.gen_range(1000..1010)) });
            }
            if rng.gen_bool(0.5) {
                v.push(d);
            }
            BgpPath::new(v).expect("non-empty")
        };
        announcements.insert(n, path);
    }
    PinnedAnnouncements { manipulator: m, announcements }
}

/// Every run converges under the pass cap, and small runs reach the same
/// fixpoint under shuffled activation orders.
pub fn suite_convergence(seed: u64, count: usize, schedule_count: usize, workers: usize) -> SuiteReport {
    let runs = par_map(count, workers, |i| -> Result<u64, String> {
        let s = instance_seed(seed, i as u64);
        let spec = random_spec(s, 4..=60, usize::MAX);
        let sc = gen_random(&spec).map_err(|e| format!("instance {i}: {e}"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0xA5A5);
        let pins = random_pins(&sc.graph, sc.d, sc.m, &mut rng);
        let st = simulate(&sc.graph, sc.d, Some(&pins)).map_err(|e| format!("instance {i} (generator seed {}): {e}", spec.seed))?;
        Ok(st.rounds() as u64)
    });
    let schedules = par_map(schedule_count, workers, |i| -> Result<(), String> {
        let s = instance_seed(seed ^ 0x5EED, i as u64);
        let spec = random_spec(s, 4..=12, usize::MAX);
        let sc = gen_random(&spec).map_err(|e| format!("schedule instance {i}: {e}"))?;
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x5A5A);
        let pins = random_pins(&sc.graph, sc.d, sc.m, &mut rng);
        let reference = simulate(&sc.graph, sc.d, Some(&pins)).map_err(|e| e.to_string())?;
        for k in 0..5 {
            let mut order = sc.graph.vertices().to_vec();
            order.shuffle(&mut rng);
            let other = simulate_with_schedule(&sc.graph, sc.d, Some(&pins), &Schedule::Order(order))
                .map_err(|e| format!("schedule instance {i}, order {k}: {e}"))?;
            for v in sc.graph.vertices() {
                if reference.selected(*v) != other.selected(*v) || reference.available(*v) != other.available(*v) {
                    return Err(format!("schedule instance {i} (generator seed {}), order {k}: AS {v} differs", spec.seed));
                }
            }
        }
        Ok(())
    });
    let mut report = SuiteReport::new(Suite::Convergence, Some(seed), Some(count), Vec::new());
    let mut max_rounds = 0;
    for r in runs {
        match r {
            Ok(rounds) => max_rounds = max_rounds.max(rounds),
            Err(e) => report.failures.push(e),
        }
    }
    let mut divergent = Vec::new();
    for r in schedules {
        if let Err(e) = r {
            divergent.push(e);
        }
    }
    report.counters.insert("instances".into(), count as u64);
    report.counters.insert("max-rounds".into(), max_rounds);
    report.counters.insert("schedule-instances".into(), schedule_count as u64);
    report.counters.insert("schedule-divergences".into(), divergent.len() as u64);
    report.checks.push(Check::new(
        "fixpoint independent of activation order",
        divergent.is_empty(),
        divergent.first().cloned().unwrap_or_default(),
    ));
    report.finish()
}

/// Every formula with `1..=max_vars` variables (each used or not) and
/// `1..=max_clauses` distinct clauses of exactly three literals, literals
/// within a clause sorted and possibly repeated.
pub fn origin_formulas(max_vars: usize, max_clauses: usize) -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for n in 1..=max_vars {
        let lits: Vec<i32> = (1..=n as i32).flat_map(|v| [v, -v]).collect();
        let mut clauses = Vec::new();
        for a in 0..lits.len() {
            for b in a..lits.len() {
                for c in b..lits.len() {
                    clauses.push(vec![lits[a], lits[b], lits[c]]);
                }
            }
        }
        let mut stack: Vec<Vec<usize>> = (0..clauses.len()).rev().map(|i| vec![i]).collect();
        while let Some(set) = stack.pop() {
            out.push(CnfFormula { num_vars: n, clauses: set.iter().map(|&i| clauses[i].clone()).collect() });
            if set.len() < max_clauses {
                let last = *set.last().expect("non-empty");
                for j in (last + 1..clauses.len()).rev() {
                    let mut next = set.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
        }
    }
    out
}

/// Every formula with `1..=max_vars` variables accepted by the S-BGP
/// construction, as sets of clauses, each clause a set of literals.
pub fn sbgp_formulas(max_vars: usize) -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for n in 1..=max_vars {
        let lits: Vec<i32> = (1..=n as i32).flat_map(|v| [v, -v]).collect();
        let clauses: Vec<Vec<i32>> = (1u32..1 << lits.len())
            .map(|mask| (0..lits.len()).filter(|b| mask >> b & 1 == 1).map(|b| lits[b]).collect::<Vec<_>>())
            .filter(|c| c.len() <= 3)
            .collect();
        let mut stack: Vec<Vec<usize>> = (0..clauses.len()).rev().map(|i| vec![i]).collect();
        while let Some(set) = stack.pop() {
            let f = CnfFormula { num_vars: n, clauses: set.iter().map(|&i| clauses[i].clone()).collect() };
            // Adding clauses never repairs a violated constraint.
            if check_sbgp_constraints(&f).is_err() {
                continue;
            }
            out.push(f);
            let last = *set.last().expect("non-empty");
            for j in (last + 1..clauses.len()).rev() {
                let mut next = set.clone();
                next.push(j);
                stack.push(next);
            }
        }
    }
    out
}

/// [`sbgp_formulas`] followed by seeded reorderings of its members (clause
/// order and literal order both change the generated network) until
/// `count` distinct formulas are collected.
pub fn sbgp_corpus(seed: u64, count: usize, max_vars: usize) -> Vec<CnfFormula> {
    let base = sbgp_formulas(max_vars);
    let mut seen: BTreeSet<(usize, Vec<Vec<i32>>)> = base.iter().map(|f| (f.num_vars, f.clauses.clone())).collect();
    let mut out = base.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count && !base.is_empty() {
        attempts += 1;
        let mut f = base.choose(&mut rng).expect("non-empty").clone();
        f.clauses.shuffle(&mut rng);
        for c in f.clauses.iter_mut() {
            c.shuffle(&mut rng);
        }
        if seen.insert((f.num_vars, f.clauses.clone())) {
            out.push(f);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetSuiteOptions {
    pub origin_max_vars: usize,
    pub origin_max_clauses: usize,
    pub sbgp_max_vars: usize,
    /// Minimum number of S-BGP formulas, reached with seeded reorderings.
    pub sbgp_count: usize,
}

impl Default for GadgetSuiteOptions {
    fn default() -> Self {
        GadgetSuiteOptions { origin_max_vars: 3, origin_max_clauses: 3, sbgp_max_vars: 2, sbgp_count: 200 }
    }
}

/// Both constructions agree with brute-force satisfiability.
pub fn suite_gadgets(seed: u64, opts: GadgetSuiteOptions, workers: usize) -> SuiteReport {
    let origin = origin_formulas(opts.origin_max_vars, opts.origin_max_clauses);
    let origin_runs = par_map(origin.len(), workers, |i| -> Result<(bool, bool), String> {
        let f = &origin[i];
        let sat = sat_bruteforce(f).map_err(|e| e.to_string())?.is_some();
        let g = gen_gadget_origin(f).map_err(|e| e.to_string())?;
        let honest = simulate(&g.graph, g.d, None).map_err(|e| e.to_string())?;
        let short = honest.selected(g.s).and_then(|p| p.next_hop()).map(|h| g.tags[&h]) == Some(Structure::Short);
        let r = oracle_origin_first(&g.graph, g.s, g.d, g.m, DEFAULT_ORACLE_DEGREE_BOUND).map_err(|e| e.to_string())?;
        if r.found != sat {
            return Err(format!("origin gadget for {:?} ({} variables): satisfiable {sat}, hijack {}", f.clauses, f.num_vars, r.found));
        }
        Ok((sat, short))
    });
    let sbgp = sbgp_corpus(seed, opts.sbgp_count, opts.sbgp_max_vars);
    let sbgp_runs = par_map(sbgp.len(), workers, |i| -> Result<(bool, bool), String> {
        let f = &sbgp[i];
        let sat = sat_bruteforce(f).map_err(|e| e.to_string())?.is_some();
        let g = gen_gadget_sbgp(f).map_err(|e| e.to_string())?;
        let honest = simulate(&g.graph, g.d, None).map_err(|e| e.to_string())?;
        let short = honest.selected(g.s).and_then(|p| p.next_hop()).map(|h| g.tags[&h]) == Some(Structure::Short);
        let r = find_sbgp_bruteforce(&g.graph, g.s, g.d, g.m, SbgpSearch::default()).map_err(|e| e.to_string())?;
        if r.found != sat {
            return Err(format!("s-bgp gadget for {:?} ({} variables): satisfiable {sat}, hijack {}", f.clauses, f.num_vars, r.found));
        }
        Ok((sat, short))
    });

    let mut report = SuiteReport::new(Suite::Gadgets, Some(seed), Some(opts.sbgp_count), Vec::new());
    for (label, runs) in [("origin", origin_runs), ("sbgp", sbgp_runs)] {
        let (mut sat, mut unsat, mut not_short) = (0, 0, 0);
        for r in runs {
            match r {
                Ok((s, short)) => {
                    if s {
                        sat += 1;
                    } else {
                        unsat += 1;
                    }
                    not_short += !short as u64;
                }
                Err(e) => report.failures.push(e),
            }
        }
        report.counters.insert(format!("{label}-satisfiable"), sat);
        report.counters.insert(format!("{label}-unsatisfiable"), unsat);
        report.checks.push(Check::new(
            format!("{label} honest baseline routes over a short chain"),
            not_short == 0,
            format!("{not_short} instances elsewhere"),
        ));
    }
    report.counters.insert("origin-formulas".into(), origin.len() as u64);
    report.counters.insert("sbgp-formulas".into(), sbgp.len() as u64);
    report.finish()
}

/// Shorthand used by the CLI: runs `suite` with the given seed and count.
pub fn run_suite(suite: Suite, seed: u64, count: Option<usize>, workers: usize) -> SuiteReport {
    match suite {
        Suite::Examples => suite_examples(),
        Suite::FinderOracle => suite_finder_oracle(seed, count.unwrap_or(500), workers),
        Suite::SamePath => suite_same_path(seed, count.unwrap_or(500), workers),
        Suite::Convergence => {
            let n = count.unwrap_or(1000);
            suite_convergence(seed, n, (n / 10).max(100), workers)
        }
        Suite::Gadgets => {
            let opts = GadgetSuiteOptions { sbgp_count: count.unwrap_or(200), ..Default::default() };
            suite_gadgets(seed, opts, workers)
        }
    }
}
