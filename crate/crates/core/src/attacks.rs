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

//! Manipulator strategies, legality per capability, and the hijack and
//! interception predicates.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AsGraph, Asn, BgpPath};
use crate::routing::{baseline_available, simulate, PinnedAnnouncements, RawState, RoutingError, RoutingState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Capability {
    /// Claim to originate the prefix, toward any chosen neighbors.
    #[serde(rename = "origin", alias = "origin-spoofing")]
    Origin,
    /// Re-announce only routes actually received in the honest state.
    #[serde(rename = "sbgp", alias = "s-bgp")]
    Sbgp,
    /// Any sequence starting at the manipulator.
    #[serde(rename = "plain")]
    Plain,
}

impl fmt::Display for Capability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Capability::Origin => "origin",
            Capability::Sbgp => "sbgp",
            Capability::Plain => "plain",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    Origin,
    Silence,
    Path(BgpPath),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "StrategyFile", into = "StrategyFile")]
pub struct AttackStrategy {
    pub capability: Capability,
    pub manipulator: Asn,
    pub announcements: BTreeMap<Asn, Action>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrategyFile {
    capability: Capability,
    manipulator: Asn,
    announcements: Vec<AnnouncementEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnouncementEntry {
    neighbor: Asn,
    action: ActionTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    path: Option<BgpPath>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum ActionTag {
    Origin,
    Silence,
    Path,
}

impl TryFrom<StrategyFile> for AttackStrategy {
    type Error = String;

    fn try_from(f: StrategyFile) -> Result<Self, String> {
        let mut announcements = BTreeMap::new();
        for e in f.announcements {
            let action = match (e.action, e.path) {
                (ActionTag::Origin, None) => Action::Origin,
                (ActionTag::Silence, None) => Action::Silence,
                (ActionTag::Path, Some(p)) => Action::Path(p),
                (ActionTag::Path, None) => return Err(format!("neighbor {}: action path needs a path", e.neighbor)),
                (_, Some(_)) => return Err(format!("neighbor {}: only action path takes a path", e.neighbor)),
            };
            if announcements.insert(e.neighbor, action).is_some() {
                return Err(format!("neighbor {} listed twice", e.neighbor));
            }
        }
        Ok(AttackStrategy { capability: f.capability, manipulator: f.manipulator, announcements })
    }
}

impl From<AttackStrategy> for StrategyFile {
    fn from(s: AttackStrategy) -> Self {
        let announcements = s
            .announcements
            .into_iter()
            .map(|(neighbor, a)| {
                let (action, path) = match a {
                    Action::Origin => (ActionTag::Origin, None),
                    Action::Silence => (ActionTag::Silence, None),
                    Action::Path(p) => (ActionTag::Path, Some(p)),
                };
                AnnouncementEntry { neighbor, action, path }
            })
            .collect();
        StrategyFile { capability: s.capability, manipulator: s.manipulator, announcements }
    }
}

impl AttackStrategy {
    /// Announces nothing to anyone.
    pub fn silent(capability: Capability, manipulator: Asn) -> Self {
        AttackStrategy { capability, manipulator, announcements: BTreeMap::new() }
    }

    /// Origin claim toward each listed neighbor.
    pub fn origin_to(manipulator: Asn, neighbors: impl IntoIterator<Item = Asn>) -> Self {
        AttackStrategy {
            capability: Capability::Origin,
            manipulator,
            announcements: neighbors.into_iter().map(|n| (n, Action::Origin)).collect(),
        }
    }

    /// S-BGP strategy from `(neighbor, path)` pairs.
    pub fn sbgp(manipulator: Asn, entries: impl IntoIterator<Item = (Asn, BgpPath)>) -> Self {
        AttackStrategy {
            capability: Capability::Sbgp,
            manipulator,
            announcements: entries.into_iter().map(|(n, p)| (n, Action::Path(p))).collect(),
        }
    }

    /// What the manipulator actually puts on the wire.
    pub fn pinned(&self) -> PinnedAnnouncements {
        let announcements = self
            .announcements
            .iter()
            .filter_map(|(n, a)| match a {
                Action::Origin => Some((*n, BgpPath::new(vec![self.manipulator]).expect("non-empty"))),
                Action::Path(p) => Some((*n, p.clone())),
                Action::Silence => None,
            })
            .collect();
        PinnedAnnouncements { manipulator: self.manipulator, announcements }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LegalityViolation {
    UnknownManipulator { manipulator: Asn },
    ManipulatorIsDestination { manipulator: Asn },
    NotANeighbor { neighbor: Asn },
    OriginClaimForbidden { neighbor: Asn },
    PathForbidden { neighbor: Asn },
    NotFromManipulator { neighbor: Asn, path: BgpPath },
    NotReceived { neighbor: Asn, path: BgpPath },
    BaselineFailed { reason: String },
}

impl fmt::Display for LegalityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownManipulator { manipulator } => write!(f, "manipulator AS {manipulator} is not in the graph"),
            Self::ManipulatorIsDestination { manipulator } => write!(f, "manipulator AS {manipulator} is the destination"),
            Self::NotANeighbor { neighbor } => write!(f, "AS {neighbor} is not a neighbor of the manipulator"),
            Self::OriginClaimForbidden { neighbor } => write!(f, "origin claim to AS {neighbor} not allowed"),
            Self::PathForbidden { neighbor } => write!(f, "explicit path to AS {neighbor} not allowed"),
            Self::NotFromManipulator { neighbor, path } => {
                write!(f, "path {path} to AS {neighbor} does not start at the manipulator")
            }
            Self::NotReceived { neighbor, path } => write!(f, "path {path} to AS {neighbor} was never received"),
            Self::BaselineFailed { reason } => write!(f, "honest run failed: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LegalityReport {
    pub legal: bool,
    pub violations: Vec<LegalityViolation>,
}

/// Checks a strategy against its capability. For S-BGP the honest run toward
/// `d` is simulated to obtain the set of routes the manipulator received.
pub fn check_legal(g: &AsGraph, d: Asn, strategy: &AttackStrategy) -> LegalityReport {
    use LegalityViolation as V;
    let m = strategy.manipulator;
    let mut violations = Vec::new();
    if !g.contains(m) {
        violations.push(V::UnknownManipulator { manipulator: m });
    } else if m == d {
        violations.push(V::ManipulatorIsDestination { manipulator: m });
    }
    let neighbors: Vec<Asn> = g.neighbors(m).map(|ns| ns.into_iter().map(|(n, _)| n).collect()).unwrap_or_default();
    for n in strategy.announcements.keys() {
        if !neighbors.contains(n) {
            violations.push(V::NotANeighbor { neighbor: *n });
        }
    }

    let needs_pool = strategy.capability == Capability::Sbgp
        && violations.is_empty()
        && strategy.announcements.values().any(|a| matches!(a, Action::Path(_)));
    let pool = if needs_pool {
        match baseline_available(g, d, m) {
            Ok(p) => Some(p),
            Err(e) => {
                violations.push(V::BaselineFailed { reason: e.to_string() });
                None
            }
        }
    } else {
        None
    };

    for (n, a) in &strategy.announcements {
        let neighbor = *n;
        match (strategy.capability, a) {
            (_, Action::Silence) => {}
            (Capability::Origin, Action::Origin) | (Capability::Plain, Action::Origin) => {}
            (Capability::Origin, Action::Path(_)) => violations.push(V::PathForbidden { neighbor }),
            (Capability::Sbgp, Action::Origin) => violations.push(V::OriginClaimForbidden { neighbor }),
            (Capability::Sbgp, Action::Path(p)) => {
                if let Some(pool) = &pool {
                    if pool.binary_search(p).is_err() {
                        violations.push(V::NotReceived { neighbor, path: p.clone() });
                    }
                }
            }
            (Capability::Plain, Action::Path(p)) => {
                if p.first() != m {
                    violations.push(V::NotFromManipulator { neighbor, path: p.clone() });
                }
            }
        }
    }
    LegalityReport { legal: violations.is_empty(), violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Terminal {
    ReachesD,
    ReachesM,
    Blackhole,
    Loop,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub vertices: Vec<Asn>,
    pub terminal: Terminal,
}

/// Follows next hops of selected routes from `from` until `d`, `m`, a vertex
/// without a route, or a repeated vertex.
pub fn trace_data_plane(state: &RoutingState, from: Asn, m: Asn, d: Asn) -> Trace {
    let mut vertices = Vec::new();
    let mut v = from;
    loop {
        if vertices.contains(&v) {
            return Trace { vertices, terminal: Terminal::Loop };
        }
        vertices.push(v);
        if v == d {
            return Trace { vertices, terminal: Terminal::ReachesD };
        }
        if v == m {
            return Trace { vertices, terminal: Terminal::ReachesM };
        }
        match state.selected(v).and_then(|p| p.next_hop()) {
            Some(next) => v = next,
            None => return Trace { vertices, terminal: Terminal::Blackhole },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttackOutcome {
    pub hijacked: bool,
    pub intercepted: bool,
    pub data_plane_s: Trace,
    /// `m` followed by the hops its traffic takes to `d`, when it can reach it.
    pub data_plane_m: Option<Vec<Asn>>,
    /// The route at `m` used to forward intercepted traffic.
    pub forwarding_route: Option<BgpPath>,
    pub state: RoutingState,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AttackError {
    #[error("roles must be distinct (s={s}, d={d}, m={m})")]
    RoleCollision { s: Asn, d: Asn, m: Asn },
    #[error("strategy is for manipulator AS {found}, expected AS {expected}")]
    WrongManipulator { expected: Asn, found: Asn },
    #[error("illegal strategy: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Illegal(Vec<LegalityViolation>),
    #[error(transparent)]
    Routing(#[from] RoutingError),
}

/// Simulates the strategy and decides hijack and interception.
pub fn evaluate(g: &AsGraph, s: Asn, d: Asn, m: Asn, strategy: &AttackStrategy) -> Result<AttackOutcome, AttackError> {
    if s == d || s == m || d == m {
        return Err(AttackError::RoleCollision { s, d, m });
    }
    if strategy.manipulator != m {
        return Err(AttackError::WrongManipulator { expected: m, found: strategy.manipulator });
    }
    let report = check_legal(g, d, strategy);
    if !report.legal {
        return Err(AttackError::Illegal(report.violations));
    }
    let state = simulate(g, d, Some(&strategy.pinned()))?;
    Ok(outcome_of(state, s, d, m))
}

/// Hijack and interception verdicts on a computed state.
pub fn outcome_of(state: RoutingState, s: Asn, d: Asn, m: Asn) -> AttackOutcome {
    let data_plane_s = trace_data_plane(&state, s, m, d);
    let hijacked = data_plane_s.terminal == Terminal::ReachesM;
    let mut forwarding = None;
    for q in state.available(m) {
        let Some(hop) = q.next_hop() else { continue };
        let t = trace_data_plane(&state, hop, m, d);
        if t.terminal == Terminal::ReachesD {
            let mut dp = vec![m];
            dp.extend(t.vertices);
            forwarding = Some((q.clone(), dp));
            break;
        }
    }
    let (forwarding_route, data_plane_m) = forwarding.map_or((None, None), |(q, dp)| (Some(q), Some(dp)));
    AttackOutcome {
        hijacked,
        intercepted: hijacked && forwarding_route.is_some(),
        data_plane_s,
        data_plane_m,
        forwarding_route,
        state,
    }
}

/// Index-space trace: `Some(true)` reaches `m`, `Some(false)` reaches `d`,
/// `None` otherwise.
fn raw_trace(raw: &RawState, from: usize, m: usize, d: usize, n: usize) -> Option<bool> {
    let mut v = from;
    for _ in 0..=n {
        if v == d {
            return Some(false);
        }
        if v == m {
            return Some(true);
        }
        v = *raw.selected[v].as_ref()?.get(1)? as usize;
    }
    None
}

/// `(hijacked, intercepted)` on an index-space state.
pub(crate) fn raw_verdict(g: &AsGraph, raw: &RawState, s: usize, d: usize, m: usize) -> (bool, bool) {
    let n = g.len();
    if raw_trace(raw, s, m, d, n) != Some(true) {
        return (false, false);
    }
    let me = m as u32;
    let intercepted = g.links(m).iter().any(|link| {
        let k = g.links(link.to).binary_search_by_key(&m, |b| b.to).expect("symmetric");
        match &raw.outgoing[link.to][k] {
            Some(p) if !p.contains(&me) => raw_trace(raw, link.to, m, d, n) == Some(false),
            _ => false,
        }
    });
    (true, intercepted)
}
