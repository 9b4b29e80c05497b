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

//! Searching for a strategy that pulls `s`'s traffic to `m`.
//!
//! Every search runs candidate strategies through the index-space simulator
//! and re-checks the winning one with [`evaluate`] before reporting it.

use std::rc::Rc;

use serde::Serialize;
use thiserror::Error;

use crate::attacks::{evaluate, raw_verdict, AttackError, AttackStrategy};
use crate::graph::{best_class_toward, valley_free_paths, AsGraph, Asn, BgpPath, GraphError, RouteClass};
use crate::routing::{baseline_available, Prepared, RawPath, RoutingError, Schedule};

pub const DEFAULT_MAX_LEN: usize = 8;
pub const DEFAULT_SBGP_DEGREE_BOUND: usize = 8;
pub const DEFAULT_ORACLE_DEGREE_BOUND: usize = 16;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FinderStats {
    /// Strategies in the search space (paths for the polynomial finder).
    pub candidates: u64,
    pub simulations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinderResult {
    pub found: bool,
    pub strategy: Option<AttackStrategy>,
    /// Route selected by `s` under the returned strategy.
    pub witness_path: Option<BgpPath>,
    /// Whether the returned strategy also intercepts.
    pub intercepted: Option<bool>,
    /// Every successful neighbor subset, reported by the exhaustive search only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub successful_subsets: Option<Vec<Vec<Asn>>>,
    pub stats: FinderStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FinderError {
    #[error("roles must be distinct (s={s}, d={d}, m={m})")]
    RoleCollision { s: Asn, d: Asn, m: Asn },
    #[error("manipulator degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Routing(#[from] RoutingError),
    #[error("found strategy failed re-verification: {0}")]
    Verification(String),
}

impl From<AttackError> for FinderError {
    fn from(e: AttackError) -> Self {
        match e {
            AttackError::Routing(r) => FinderError::Routing(r),
            other => FinderError::Verification(other.to_string()),
        }
    }
}

struct Roles {
    s: usize,
    d: usize,
    m: usize,
}

fn roles(g: &AsGraph, s: Asn, d: Asn, m: Asn) -> Result<Roles, FinderError> {
    if s == d || s == m || d == m {
        return Err(FinderError::RoleCollision { s, d, m });
    }
    Ok(Roles { s: g.idx(s)?, d: g.idx(d)?, m: g.idx(m)? })
}

fn not_found(stats: FinderStats) -> FinderResult {
    FinderResult { found: false, strategy: None, witness_path: None, intercepted: None, successful_subsets: None, stats }
}

fn verified(
    g: &AsGraph,
    (s, d, m): (Asn, Asn, Asn),
    strategy: AttackStrategy,
    stats: FinderStats,
) -> Result<FinderResult, FinderError> {
    let out = evaluate(g, s, d, m, &strategy)?;
    if !out.hijacked {
        return Err(FinderError::Verification(format!("no hijack under {:?}", strategy.announcements)));
    }
    Ok(FinderResult {
        found: true,
        witness_path: out.state.selected(s).cloned(),
        intercepted: Some(out.intercepted),
        strategy: Some(strategy),
        successful_subsets: None,
        stats,
    })
}

fn origin_pin(m: usize, width: usize, chosen: impl Iterator<Item = usize>) -> (usize, Vec<Option<RawPath>>) {
    let claim: RawPath = Rc::from(vec![m as u32]);
    let mut out = vec![None; width];
    for k in chosen {
        out[k] = Some(claim.clone());
    }
    (m, out)
}

/// Polynomial search for an origin-claim hijack when valley-free paths are
/// bounded by `max_len` hops.
///
/// For each valley-free path from `s` to `m`, shortest first, the claim goes
/// to the path's last hop `w` and to every other neighbor `n` of `m` whose
/// claim could not reach any vertex of the path with a better class than the
/// path offers there. The first such set that hijacks is returned.
pub fn find_origin_spoofing(g: &AsGraph, s: Asn, d: Asn, m: Asn, max_len: usize) -> Result<FinderResult, FinderError> {
    let r = roles(g, s, d, m)?;
    let prep = Prepared::new(g, d, &Schedule::Ascending)?;
    let base = prep.run(None)?;
    let mut candidates = valley_free_paths(g, s, m, max_len)?;
    candidates.sort_by_key(|p| p.hops());

    let links = g.links(r.m);
    let reach: Vec<Vec<Option<RouteClass>>> =
        links.iter().map(|l| best_class_toward(g, r.m, Some(l.to), &[])).collect();

    let mut stats = FinderStats { candidates: candidates.len() as u64, simulations: 0 };
    for path in &candidates {
        let idx: Vec<usize> = path.vertices().iter().map(|a| g.idx(*a).expect("enumerated")).collect();
        let w = idx[idx.len() - 2];
        // Class of the path's remainder at each of its vertices except m.
        let on_path: Vec<(usize, RouteClass)> = idx
            .windows(2)
            .map(|pair| (pair[0], g.link_class(pair[0], pair[1]).expect("edge")))
            .collect();
        let chosen = links.iter().enumerate().filter_map(|(k, l)| {
            let keep = l.to == w || on_path.iter().all(|&(x, c)| reach[k][x].is_none_or(|b| b <= c));
            keep.then_some(k)
        });
        let pin = origin_pin(r.m, links.len(), chosen);
        stats.simulations += 1;
        let raw = prep.run_from(base.clone(), &pin)?;
        if raw_verdict(g, &raw, r.s, r.d, r.m).0 {
            let set = pin.1.iter().enumerate().filter(|(_, a)| a.is_some()).map(|(k, _)| g.asn(links[k].to));
            return verified(g, (s, d, m), AttackStrategy::origin_to(m, set), stats);
        }
    }
    Ok(not_found(stats))
}

/// Tries an origin claim toward every subset of `m`'s neighbors. Subsets are
/// visited in bitmask order, bit `i` standing for the `i`-th smallest
/// neighbor.
pub fn oracle_origin_spoofing(g: &AsGraph, s: Asn, d: Asn, m: Asn, degree_bound: usize) -> Result<FinderResult, FinderError> {
    oracle(g, s, d, m, degree_bound, false)
}

/// Like [`oracle_origin_spoofing`] but stops at the first successful subset,
/// so `successful_subsets` holds at most one entry.
pub fn oracle_origin_first(g: &AsGraph, s: Asn, d: Asn, m: Asn, degree_bound: usize) -> Result<FinderResult, FinderError> {
    oracle(g, s, d, m, degree_bound, true)
}

fn oracle(g: &AsGraph, s: Asn, d: Asn, m: Asn, degree_bound: usize, stop: bool) -> Result<FinderResult, FinderError> {
    let r = roles(g, s, d, m)?;
    let links = g.links(r.m);
    let k = links.len();
    if k > degree_bound || k >= 63 {
        return Err(FinderError::DegreeBound { degree: k, bound: degree_bound });
    }
    let prep = Prepared::new(g, d, &Schedule::Ascending)?;
    let base = prep.run(None)?;
    let total = 1u64 << k;
    let mut stats = FinderStats { candidates: total, simulations: 0 };
    let mut successes = Vec::new();
    for mask in 0..total {
        let pin = origin_pin(r.m, k, (0..k).filter(|i| mask >> i & 1 == 1));
        stats.simulations += 1;
        let raw = prep.run_from(base.clone(), &pin)?;
        if raw_verdict(g, &raw, r.s, r.d, r.m).0 {
            successes.push((0..k).filter(|i| mask >> i & 1 == 1).map(|i| g.asn(links[i].to)).collect::<Vec<_>>());
            if stop {
                break;
            }
        }
    }
    let Some(first) = successes.first().cloned() else {
        return Ok(FinderResult { successful_subsets: Some(successes), ..not_found(stats) });
    };
    let mut res = verified(g, (s, d, m), AttackStrategy::origin_to(m, first), stats)?;
    res.successful_subsets = Some(successes);
    Ok(res)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SbgpSearch {
    /// Only strategies sending one and the same route to every non-silent neighbor.
    pub same_path: bool,
    pub degree_bound: usize,
}

impl Default for SbgpSearch {
    fn default() -> Self {
        SbgpSearch { same_path: false, degree_bound: DEFAULT_SBGP_DEGREE_BOUND }
    }
}

/// Exhaustive search over S-BGP strategies built from the routes `m` holds
/// in the honest state.
///
/// Multi-path mode assigns silence or one pool route to each neighbor,
/// enumerated lexicographically (first neighbor most significant; silence
/// before the pool routes in lexicographic order). Same-path mode tries
/// silence first, then each pool route toward every non-empty neighbor
/// subset in bitmask order. A route that already contains its receiver is
/// dropped by loop detection exactly like silence, so such choices are
/// skipped; the first success is the same as in the full enumeration.
pub fn find_sbgp_bruteforce(g: &AsGraph, s: Asn, d: Asn, m: Asn, opts: SbgpSearch) -> Result<FinderResult, FinderError> {
    let r = roles(g, s, d, m)?;
    let links = g.links(r.m);
    let k = links.len();
    if k > opts.degree_bound || k >= 63 {
        return Err(FinderError::DegreeBound { degree: k, bound: opts.degree_bound });
    }
    let prep = Prepared::new(g, d, &Schedule::Ascending)?;
    let base = prep.run(None)?;
    let pool = baseline_available(g, d, m)?;
    let raw_pool: Vec<RawPath> = pool
        .iter()
        .map(|p| Rc::from(p.vertices().iter().map(|a| g.idx(*a).expect("honest route") as u32).collect::<Vec<_>>()))
        .collect();
    let to_strategy = |out: &[Option<usize>]| {
        AttackStrategy::sbgp(
            m,
            out.iter().enumerate().filter_map(|(i, c)| c.map(|j| (g.asn(links[i].to), pool[j].clone()))),
        )
    };
    let mut stats = FinderStats::default();
    // Each run starts from the previous fixpoint; consecutive strategies
    // differ in few neighbors, so little has to move.
    let mut prev = Some(base);
    let mut attempt = |choice: &[Option<usize>], stats: &mut FinderStats| -> Result<bool, FinderError> {
        let out = choice.iter().map(|c| c.map(|j| raw_pool[j].clone())).collect();
        stats.simulations += 1;
        let raw = prep.run_from(prev.take().expect("state"), &(r.m, out))?;
        let hijacked = raw_verdict(g, &raw, r.s, r.d, r.m).0;
        prev = Some(raw);
        Ok(hijacked)
    };
    let carries = |j: usize, i: usize| raw_pool[j].contains(&(links[i].to as u32));

    if opts.same_path {
        stats.candidates = 1 + pool.len() as u64 * ((1u64 << k) - 1);
        let silent = vec![None; k];
        if attempt(&silent, &mut stats)? {
            return verified(g, (s, d, m), to_strategy(&silent), stats);
        }
        for j in 0..pool.len() {
            let usable: u64 = (0..k).filter(|&i| !carries(j, i)).map(|i| 1u64 << i).sum();
            for mask in 1..1u64 << k {
                if mask & !usable != 0 {
                    continue;
                }
                let choice: Vec<Option<usize>> = (0..k).map(|i| (mask >> i & 1 == 1).then_some(j)).collect();
                if attempt(&choice, &mut stats)? {
                    return verified(g, (s, d, m), to_strategy(&choice), stats);
                }
            }
        }
        return Ok(not_found(stats));
    }

    stats.candidates = (pool.len() as u64 + 1).saturating_pow(k as u32);
    let options: Vec<Vec<Option<usize>>> = (0..k)
        .map(|i| std::iter::once(None).chain((0..pool.len()).filter(|&j| !carries(j, i)).map(Some)).collect())
        .collect();
    let mut digits = vec![0usize; k];
    loop {
        let choice: Vec<Option<usize>> = (0..k).map(|i| options[i][digits[i]]).collect();
        if attempt(&choice, &mut stats)? {
            return verified(g, (s, d, m), to_strategy(&choice), stats);
        }
        // Advance the odometer, last neighbor fastest.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(not_found(stats));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < options[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}
