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

//! AS-graph data model.
//!
//! An [`AsGraph`] holds autonomous systems and their commercial relationships:
//! customer-to-provider edges (directed) and peer edges (undirected, stored once
//! per unordered pair). The graph is immutable after construction and carries
//! its own [`ValidationReport`], so simulations can refuse malformed inputs
//! without re-checking them on every run.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Autonomous system identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Asn(pub u32);

impl fmt::Display for Asn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Asn {
    fn from(v: u32) -> Self {
        Asn(v)
    }
}

/// Relationship carried by an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `a` is a customer of `b`.
    CustomerToProvider,
    /// `a` and `b` are peers.
    Peer,
}

/// An edge as written in the input. For [`Relation::CustomerToProvider`],
/// `a` is the customer and `b` the provider.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: Asn,
    pub b: Asn,
    pub relation: Relation,
}

impl Edge {
    pub fn c2p(customer: impl Into<Asn>, provider: impl Into<Asn>) -> Self {
        Edge { a: customer.into(), b: provider.into(), relation: Relation::CustomerToProvider }
    }

    pub fn p2p(a: impl Into<Asn>, b: impl Into<Asn>) -> Self {
        Edge { a: a.into(), b: b.into(), relation: Relation::Peer }
    }

    fn unordered(&self) -> (Asn, Asn) {
        if self.a <= self.b {
            (self.a, self.b)
        } else {
            (self.b, self.a)
        }
    }
}

/// Preference class of a route, named after the role of the neighbor the
/// route is learned from. Ordering follows preference: a customer route beats
/// a peer route, which beats a provider route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RouteClass {
    Provider = 1,
    Peer = 2,
    Customer = 3,
}

impl RouteClass {
    pub fn value(self) -> u8 {
        self as u8
    }

    pub fn from_value(v: u8) -> Option<Self> {
        match v {
            1 => Some(RouteClass::Provider),
            2 => Some(RouteClass::Peer),
            3 => Some(RouteClass::Customer),
            _ => None,
        }
    }
}

impl fmt::Display for RouteClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for RouteClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.value())
    }
}

impl<'de> Deserialize<'de> for RouteClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = u8::deserialize(d)?;
        RouteClass::from_value(v)
            .ok_or_else(|| serde::de::Error::custom(format!("route class must be 1, 2 or 3, got {v}")))
    }
}

/// Ordered AS sequence from the announcing vertex toward the destination.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BgpPath(Vec<Asn>);

impl BgpPath {
    pub fn new(vertices: Vec<Asn>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        Ok(BgpPath(vertices))
    }

    /// Builds a path from raw identifiers. Panics on an empty slice.
    pub fn from_ids(ids: &[u32]) -> Self {
        assert!(!ids.is_empty(), "a path has at least one vertex");
        BgpPath(ids.iter().copied().map(Asn).collect())
    }

    pub fn vertices(&self) -> &[Asn] {
        &self.0
    }

    pub fn first(&self) -> Asn {
        self.0[0]
    }

    pub fn last(&self) -> Asn {
        self.0[self.0.len() - 1]
    }

    pub fn next_hop(&self) -> Option<Asn> {
        self.0.get(1).copied()
    }

    /// Hop count, i.e. number of edges.
    pub fn hops(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Asn) -> bool {
        self.0.contains(&v)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.0.len());
        self.0.iter().all(|v| seen.insert(*v))
    }

    /// The path `(v)P`.
    pub fn prepend(&self, v: Asn) -> BgpPath {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        out.push(v);
        out.extend_from_slice(&self.0);
        BgpPath(out)
    }

    /// Subpath starting at position `i`.
    pub fn suffix(&self, i: usize) -> BgpPath {
        BgpPath(self.0[i..].to_vec())
    }

    pub fn into_vec(self) -> Vec<Asn> {
        self.0
    }
}

impl fmt::Display for BgpPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("AS {0} is not in the graph")]
    UnknownVertex(Asn),
    #[error("AS {0} and AS {1} are not adjacent")]
    NotAdjacent(Asn, Asn),
    #[error("path has no vertices")]
    EmptyPath,
    #[error("path {0} has fewer than two vertices")]
    DegeneratePath(BgpPath),
    #[error("path {path} does not start at AS {expected}")]
    NotRootedAt { path: BgpPath, expected: Asn },
    #[error("max_len must be at least 1")]
    ZeroLengthBound,
}

/// A single structural problem found by [`validate_graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    SelfLoop { vertex: Asn },
    DuplicateEdge { a: Asn, b: Asn },
    ProviderCycle { witness: Vec<Asn> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop { vertex } => write!(f, "self-loop at AS {vertex}"),
            Violation::DuplicateEdge { a, b } => write!(f, "more than one edge between AS {a} and AS {b}"),
            Violation::ProviderCycle { witness } => {
                write!(f, "customer-provider cycle")?;
                for v in witness {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Link {
    pub(crate) to: usize,
    /// Role of `to` as seen from the owning vertex.
    pub(crate) class: RouteClass,
}

/// Policy-annotated AS graph.
#[derive(Debug, Clone)]
pub struct AsGraph {
    asns: Vec<Asn>,
    index: HashMap<Asn, usize>,
    adj: Vec<Vec<Link>>,
    edges: Vec<Edge>,
    report: ValidationReport,
}

impl AsGraph {
    /// Builds a graph from an edge list. Malformed input (self-loops,
    /// repeated pairs, provider cycles) is accepted and recorded in the
    /// validation report.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        Self::from_parts(std::iter::empty(), edges)
    }

    /// Like [`AsGraph::from_edges`], but also registers vertices that may
    /// have no edges.
    pub fn from_parts(vertices: impl IntoIterator<Item = Asn>, edges: impl IntoIterator<Item = Edge>) -> Self {
        let edges: Vec<Edge> = edges.into_iter().collect();
        let mut asns: Vec<Asn> = vertices.into_iter().collect();
        for e in &edges {
            asns.push(e.a);
            asns.push(e.b);
        }
        asns.sort_unstable();
        asns.dedup();
        let index: HashMap<Asn, usize> = asns.iter().enumerate().map(|(i, a)| (*a, i)).collect();

        let mut adj: Vec<Vec<Link>> = vec![Vec::new(); asns.len()];
        for e in &edges {
            let (a, b) = (index[&e.a], index[&e.b]);
            match e.relation {
                Relation::CustomerToProvider => {
                    adj[a].push(Link { to: b, class: RouteClass::Provider });
                    if a != b {
                        adj[b].push(Link { to: a, class: RouteClass::Customer });
                    }
                }
                Relation::Peer => {
                    adj[a].push(Link { to: b, class: RouteClass::Peer });
                    if a != b {
                        adj[b].push(Link { to: a, class: RouteClass::Peer });
                    }
                }
            }
        }
        for links in &mut adj {
            links.sort_by_key(|l| l.to);
        }

        let mut graph = AsGraph { asns, index, adj, edges, report: ValidationReport::default() };
        graph.report = graph.compute_report();
        graph
    }

    fn compute_report(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut seen: BTreeMap<(Asn, Asn), usize> = BTreeMap::new();
        for e in &self.edges {
            if e.a == e.b {
                violations.push(Violation::SelfLoop { vertex: e.a });
                continue;
            }
            *seen.entry(e.unordered()).or_default() += 1;
        }
        for ((a, b), count) in seen {
            if count > 1 {
                violations.push(Violation::DuplicateEdge { a, b });
            }
        }
        if let Some(witness) = self.provider_cycle() {
            violations.push(Violation::ProviderCycle { witness });
        }
        ValidationReport { violations }
    }

    /// Finds one directed cycle in the customer-to-provider subgraph, if any.
    fn provider_cycle(&self) -> Option<Vec<Asn>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            White,
            Grey,
            Black,
        }
        let n = self.asns.len();
        let mut mark = vec![Mark::White; n];
        let mut stack_path: Vec<usize> = Vec::new();
        for root in 0..n {
            if mark[root] != Mark::White {
                continue;
            }
            // iterative DFS: (vertex, next link index)
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            mark[root] = Mark::Grey;
            stack_path.push(root);
            while let Some((v, i)) = stack.last_mut() {
                let v = *v;
                let providers = &self.adj[v];
                if *i >= providers.len() {
                    mark[v] = Mark::Black;
                    stack.pop();
                    stack_path.pop();
                    continue;
                }
                let link = providers[*i];
                *i += 1;
                if link.class != RouteClass::Provider {
                    continue;
                }
                match mark[link.to] {
                    Mark::White => {
                        mark[link.to] = Mark::Grey;
                        stack.push((link.to, 0));
                        stack_path.push(link.to);
                    }
                    Mark::Grey => {
                        let start = stack_path.iter().position(|&u| u == link.to).unwrap_or(0);
                        return Some(stack_path[start..].iter().map(|&u| self.asns[u]).collect());
                    }
                    Mark::Black => {}
                }
            }
        }
        None
    }

    pub fn validation(&self) -> &ValidationReport {
        &self.report
    }

    pub fn is_valid(&self) -> bool {
        self.report.is_valid()
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> &[Asn] {
        &self.asns
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.asns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.asns.is_empty()
    }

    pub fn contains(&self, v: Asn) -> bool {
        self.index.contains_key(&v)
    }

    /// Neighbors of `v` in ascending order together with their role.
    pub fn neighbors(&self, v: Asn) -> Result<Vec<(Asn, RouteClass)>, GraphError> {
        let i = self.idx(v)?;
        Ok(self.adj[i].iter().map(|l| (self.asns[l.to], l.class)).collect())
    }

    pub fn degree(&self, v: Asn) -> Result<usize, GraphError> {
        Ok(self.adj[self.idx(v)?].len())
    }

    pub(crate) fn idx(&self, v: Asn) -> Result<usize, GraphError> {
        self.index.get(&v).copied().ok_or(GraphError::UnknownVertex(v))
    }

    pub(crate) fn asn(&self, i: usize) -> Asn {
        self.asns[i]
    }

    pub(crate) fn links(&self, i: usize) -> &[Link] {
        &self.adj[i]
    }

    pub(crate) fn link_class(&self, from: usize, to: usize) -> Option<RouteClass> {
        self.adj[from]
            .binary_search_by_key(&to, |l| l.to)
            .ok()
            .map(|k| self.adj[from][k].class)
    }
}

/// Structural check of the graph: self-loops, repeated pairs and
/// customer-provider cycles.
pub fn validate_graph(g: &AsGraph) -> ValidationReport {
    g.validation().clone()
}

/// Class of neighbor `u` from the viewpoint of `v`.
pub fn edge_class(g: &AsGraph, v: Asn, u: Asn) -> Result<RouteClass, GraphError> {
    let (vi, ui) = (g.idx(v)?, g.idx(u)?);
    g.link_class(vi, ui).ok_or(GraphError::NotAdjacent(v, u))
}

/// Reading a path from its first vertex toward the destination, once a peer
/// or downhill step occurs only downhill steps may follow.
pub fn is_valley_free(g: &AsGraph, p: &BgpPath) -> Result<bool, GraphError> {
    let mut descending = false;
    for pair in p.vertices().windows(2) {
        let class = edge_class(g, pair[0], pair[1])?;
        match class {
            RouteClass::Provider if descending => return Ok(false),
            RouteClass::Provider => {}
            RouteClass::Peer if descending => return Ok(false),
            RouteClass::Peer | RouteClass::Customer => descending = true,
        }
    }
    Ok(true)
}

/// Class of `p` at its first vertex.
pub fn path_class(g: &AsGraph, p: &BgpPath) -> Result<RouteClass, GraphError> {
    match p.next_hop() {
        Some(u) => edge_class(g, p.first(), u),
        None => Err(GraphError::DegeneratePath(p.clone())),
    }
}

/// Walk phase of the valley-free automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Up = 0,
    Down = 1,
}

impl Phase {
    /// Phase after taking a step toward a neighbor of role `class`, if legal.
    fn step(self, class: RouteClass) -> Option<Phase> {
        match (self, class) {
            (Phase::Up, RouteClass::Provider) => Some(Phase::Up),
            (Phase::Up, _) => Some(Phase::Down),
            (Phase::Down, RouteClass::Customer) => Some(Phase::Down),
            (Phase::Down, _) => None,
        }
    }
}

/// All simple valley-free paths from `from` to `to` with at most `max_len`
/// hops, in lexicographic order of their AS sequences.
pub fn valley_free_paths(g: &AsGraph, from: Asn, to: Asn, max_len: usize) -> Result<Vec<BgpPath>, GraphError> {
    if max_len == 0 {
        return Err(GraphError::ZeroLengthBound);
    }
    let (src, dst) = (g.idx(from)?, g.idx(to)?);
    let mut out = Vec::new();
    if src == dst {
        return Ok(out);
    }
    let mut on_path = vec![false; g.len()];
    let mut path = vec![src];
    on_path[src] = true;
    enumerate_vf(g, dst, max_len, Phase::Up, &mut path, &mut on_path, &mut out);
    Ok(out)
}

fn enumerate_vf(
    g: &AsGraph,
    dst: usize,
    max_len: usize,
    phase: Phase,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<BgpPath>,
) {
    let v = *path.last().expect("non-empty");
    if path.len() > max_len {
        return;
    }
    for link in g.links(v) {
        if on_path[link.to] {
            continue;
        }
        let Some(next) = phase.step(link.class) else { continue };
        path.push(link.to);
        if link.to == dst {
            out.push(BgpPath(path.iter().map(|&i| g.asn(i)).collect()));
        } else {
            on_path[link.to] = true;
            enumerate_vf(g, dst, max_len, next, path, on_path, out);
            on_path[link.to] = false;
        }
        path.pop();
    }
}

/// For every vertex, the best class over valley-free paths toward `target`.
///
/// `last_hop` restricts paths to those whose final edge is `(last_hop, target)`;
/// vertices in `banned` (and `target` itself) never appear inside a path.
/// Computed on the (vertex, phase) product graph. Walks found there may repeat
/// vertices, but cutting a walk down to a simple path only moves its first
/// step to a later phase, so the maxima coincide with the simple-path ones.
pub(crate) fn best_class_toward(
    g: &AsGraph,
    target: usize,
    last_hop: Option<usize>,
    banned: &[usize],
) -> Vec<Option<RouteClass>> {
    let n = g.len();
    let mut blocked = vec![false; n];
    blocked[target] = true;
    for &b in banned {
        blocked[b] = true;
    }
    // good[v][phase]: from v in `phase` the walk can be completed.
    let mut good = vec![[false; 2]; n];
    let mut queue = std::collections::VecDeque::new();
    for v in 0..n {
        if blocked[v] || last_hop.is_some_and(|h| h != v) {
            continue;
        }
        let Some(class) = g.link_class(v, target) else { continue };
        for phase in [Phase::Up, Phase::Down] {
            if phase.step(class).is_some() && !good[v][phase as usize] {
                good[v][phase as usize] = true;
                queue.push_back((v, phase));
            }
        }
    }
    while let Some((v, phase_at_v)) = queue.pop_front() {
        for back in g.links(v) {
            let u = back.to;
            if blocked[u] {
                continue;
            }
            let class_u_to_v = g.link_class(u, v).expect("adjacency is symmetric");
            for phase in [Phase::Up, Phase::Down] {
                if phase.step(class_u_to_v) == Some(phase_at_v) && !good[u][phase as usize] {
                    good[u][phase as usize] = true;
                    queue.push_back((u, phase));
                }
            }
        }
    }

    (0..n)
        .map(|x| {
            if x == target {
                return None;
            }
            g.links(x)
                .iter()
                .filter(|l| {
                    if l.to == target {
                        last_hop.is_none_or(|h| h == x)
                    } else {
                        !blocked[l.to] && Phase::Up.step(l.class).is_some_and(|ph| good[l.to][ph as usize])
                    }
                })
                .map(|l| l.class)
                .max()
        })
        .collect()
}

/// Best class `f^x(p)` over valley-free paths `p` from each vertex `x` to `m`
/// whose last edge is `(n, m)`. Absent when no such path exists.
pub fn best_class_reach(g: &AsGraph, m: Asn, n: Asn) -> Result<BTreeMap<Asn, Option<RouteClass>>, GraphError> {
    let (mi, ni) = (g.idx(m)?, g.idx(n)?);
    if g.link_class(mi, ni).is_none() {
        return Err(GraphError::NotAdjacent(m, n));
    }
    let best = best_class_toward(g, mi, Some(ni), &[]);
    Ok(best.into_iter().enumerate().map(|(i, c)| (g.asn(i), c)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown keyword `{0}`")]
    UnknownKeyword(String),
    #[error("expected `<keyword> <id> <id>`")]
    WrongArity,
    #[error("invalid AS identifier `{0}`")]
    BadId(String),
    #[error("self-loop at AS {0}")]
    SelfLoop(Asn),
    #[error("repeated edge between AS {0} and AS {1}")]
    RepeatedEdge(Asn, Asn),
}

/// Parses the line-oriented graph format:
///
/// ```text
/// # comment
/// c2p <customer> <provider>
/// p2p <a> <b>
/// ```
pub fn parse_graph(text: &str) -> Result<AsGraph, ParseError> {
    let mut edges = Vec::new();
    let mut pairs = HashSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |kind| ParseError { line: lineno + 1, kind };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let relation = match fields[0] {
            "c2p" => Relation::CustomerToProvider,
            "p2p" => Relation::Peer,
            other => return Err(err(ParseErrorKind::UnknownKeyword(other.to_string()))),
        };
        if fields.len() != 3 {
            return Err(err(ParseErrorKind::WrongArity));
        }
        let id = |s: &str| s.parse::<u32>().map(Asn).map_err(|_| err(ParseErrorKind::BadId(s.to_string())));
        let (a, b) = (id(fields[1])?, id(fields[2])?);
        if a == b {
            return Err(err(ParseErrorKind::SelfLoop(a)));
        }
        let edge = Edge { a, b, relation };
        if !pairs.insert(edge.unordered()) {
            let (x, y) = edge.unordered();
            return Err(err(ParseErrorKind::RepeatedEdge(x, y)));
        }
        edges.push(edge);
    }
    Ok(AsGraph::from_edges(edges))
}

/// Writes the graph in the line format, customer-provider edges first, each
/// group sorted by identifiers.
pub fn format_graph(g: &AsGraph) -> String {
    let mut c2p: Vec<(Asn, Asn)> = Vec::new();
    let mut p2p: Vec<(Asn, Asn)> = Vec::new();
    for e in g.edges() {
        match e.relation {
            Relation::CustomerToProvider => c2p.push((e.a, e.b)),
            Relation::Peer => p2p.push(e.unordered()),
        }
    }
    c2p.sort_unstable();
    p2p.sort_unstable();
    let mut out = String::new();
    for (a, b) in c2p {
        out.push_str(&format!("c2p {a} {b}\n"));
    }
    for (a, b) in p2p {
        out.push_str(&format!("p2p {a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{fixture, Fixture};

    fn p(ids: &[u32]) -> BgpPath {
        BgpPath::from_ids(ids)
    }

    #[test]
    fn fig1_is_valid() {
        let f = fixture(Fixture::Fig1);
        assert!(validate_graph(&f.graph).is_valid());
    }

    #[test]
    fn directed_triangle_reports_cycle_witness() {
        let g = AsGraph::from_edges([Edge::c2p(1, 2), Edge::c2p(2, 3), Edge::c2p(3, 1)]);
        let report = validate_graph(&g);
        assert_eq!(report.violations, vec![Violation::ProviderCycle { witness: vec![Asn(1), Asn(2), Asn(3)] }]);
    }

    #[test]
    fn empty_graph_is_valid() {
        assert!(validate_graph(&AsGraph::from_edges([])).is_valid());
    }

    #[test]
    fn duplicates_and_self_loops_are_reported() {
        let g = AsGraph::from_edges([Edge::c2p(1, 2), Edge::p2p(2, 1), Edge::c2p(3, 3)]);
        let v = validate_graph(&g).violations;
        assert!(v.contains(&Violation::SelfLoop { vertex: Asn(3) }));
        assert!(v.contains(&Violation::DuplicateEdge { a: Asn(1), b: Asn(2) }));
    }

    #[test]
    fn peer_cycle_is_not_a_provider_cycle() {
        let g = AsGraph::from_edges([Edge::p2p(1, 2), Edge::p2p(2, 3), Edge::p2p(3, 1)]);
        assert!(g.is_valid());
    }

    #[test]
    fn edge_classes_on_fig1() {
        let f = fixture(Fixture::Fig1);
        assert_eq!(edge_class(&f.graph, Asn(6), Asn(5)).unwrap(), RouteClass::Customer);
        assert_eq!(edge_class(&f.graph, Asn(6), Asn(2)).unwrap(), RouteClass::Peer);
        assert_eq!(edge_class(&f.graph, f.s, Asn(6)).unwrap(), RouteClass::Provider);
        assert_eq!(edge_class(&f.graph, Asn(6), Asn(1)), Err(GraphError::NotAdjacent(Asn(6), Asn(1))));
    }

    #[test]
    fn edge_class_on_fig2() {
        let f = fixture(Fixture::Fig2);
        assert_eq!(edge_class(&f.graph, f.s, Asn(4)).unwrap(), RouteClass::Provider);
    }

    #[test]
    fn valley_free_examples() {
        let f = fixture(Fixture::Fig1);
        let (s, m, d) = (f.s.0, f.m.0, f.d.0);
        assert!(is_valley_free(&f.graph, &p(&[s, 6, 2, 1, d])).unwrap());
        assert!(!is_valley_free(&f.graph, &p(&[6, 5, 4, 3, m, 2, 1, d])).unwrap());
        assert!(is_valley_free(&f.graph, &p(&[6, 5])).unwrap());
        assert!(is_valley_free(&f.graph, &p(&[5, 6])).unwrap());
        assert_eq!(is_valley_free(&f.graph, &p(&[s, 2])), Err(GraphError::NotAdjacent(f.s, Asn(2))));
    }

    #[test]
    fn path_class_examples() {
        let f = fixture(Fixture::Fig1);
        let (m, d) = (f.m.0, f.d.0);
        assert_eq!(path_class(&f.graph, &p(&[6, 5, 4, 3, m])).unwrap(), RouteClass::Customer);
        assert_eq!(path_class(&f.graph, &p(&[6, 2, 1, d])).unwrap(), RouteClass::Peer);
        assert!(matches!(path_class(&f.graph, &p(&[6])), Err(GraphError::DegeneratePath(_))));
        let f2 = fixture(Fixture::Fig2);
        assert_eq!(path_class(&f2.graph, &p(&[f2.s.0, 4, f2.d.0])).unwrap(), RouteClass::Provider);
    }

    #[test]
    fn valley_free_paths_fig1_contains_attack_routes() {
        let f = fixture(Fixture::Fig1);
        let (s, m) = (f.s.0, f.m.0);
        let paths = valley_free_paths(&f.graph, f.s, f.m, 8).unwrap();
        assert!(paths.contains(&p(&[s, 6, 2, m])));
        assert!(paths.contains(&p(&[s, 6, 5, 4, 3, m])));
        let mut sorted = paths.clone();
        sorted.sort();
        assert_eq!(paths, sorted);
    }

    #[test]
    fn valley_free_paths_to_self_is_empty() {
        let f = fixture(Fixture::Fig1);
        assert!(valley_free_paths(&f.graph, f.s, f.s, 8).unwrap().is_empty());
        assert_eq!(valley_free_paths(&f.graph, f.s, f.m, 0), Err(GraphError::ZeroLengthBound));
    }

    #[test]
    fn valley_free_paths_fig2_short_bound() {
        let f = fixture(Fixture::Fig2);
        let paths = valley_free_paths(&f.graph, f.s, f.m, 3).unwrap();
        assert_eq!(paths, vec![p(&[f.s.0, 5, 6, f.m.0])]);
    }

    #[test]
    fn best_class_reach_fig1() {
        let f = fixture(Fixture::Fig1);
        let reach = best_class_reach(&f.graph, f.m, Asn(3)).unwrap();
        assert_eq!(reach[&Asn(6)], Some(RouteClass::Customer));
        assert_eq!(reach[&f.m], None);
        // 2 reaches m through 3 only via 6 (peer) and then 5 4 3 downhill.
        assert_eq!(reach[&Asn(2)], Some(RouteClass::Peer));
        assert_eq!(best_class_reach(&f.graph, f.m, Asn(6)), Err(GraphError::NotAdjacent(f.m, Asn(6))));
    }

    #[test]
    fn parse_rejects_self_loop_and_repeats() {
        let err = parse_graph("c2p 1 1\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::SelfLoop(Asn(1)));
        let err = parse_graph("c2p 1 2\n# x\n\np2p 2 1\n").unwrap_err();
        assert_eq!(err, ParseError { line: 4, kind: ParseErrorKind::RepeatedEdge(Asn(1), Asn(2)) });
        let err = parse_graph("x2p 1 2\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownKeyword("x2p".into()));
        assert_eq!(parse_graph("c2p 1\n").unwrap_err().kind, ParseErrorKind::WrongArity);
        assert_eq!(parse_graph("c2p 1 -2\n").unwrap_err().kind, ParseErrorKind::BadId("-2".into()));
    }

    #[test]
    fn parse_accepts_cycles_for_later_validation() {
        let g = parse_graph("c2p 1 2\nc2p 2 3\nc2p 3 1\n").unwrap();
        assert!(!g.is_valid());
    }
}
