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

//! Route propagation to a stable state.
//!
//! Every honest vertex runs the same policy: loop detection on import, then
//! customer > peer > provider, then fewest hops, then lowest next-hop AS;
//! the selected route is exported to every neighbor when it was learned from
//! a customer (or originated), and to customers only otherwise. Received
//! paths are not checked for valley-freeness, so a manipulator's forged or
//! policy-violating announcement is accepted like any other.
//!
//! The destination always announces `(d)` to all of its neighbors. A
//! manipulator, when present, has its outgoing announcements pinned for the
//! whole run; it still computes what it would select so that its available
//! routes can be inspected afterwards.
//!
//! Activation is sequential round-robin over the schedule (ascending AS id by
//! default). A vertex whose inputs did not change since its last activation
//! is skipped, which yields exactly the states a full round-robin would, since
//! activation is a pure function of the incoming announcements. A run ends
//! after the first pass with no change.

use std::collections::BTreeMap;
use std::rc::Rc;

use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{edge_class, AsGraph, Asn, BgpPath, GraphError, RouteClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RoutingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph fails validation: {0}")]
    InvalidGraph(String),
    #[error("manipulator and destination are both AS {0}")]
    ManipulatorIsDestination(Asn),
    #[error("AS {neighbor} is not a neighbor of manipulator AS {manipulator}")]
    NotANeighbor { manipulator: Asn, neighbor: Asn },
    #[error("schedule is not a permutation of the graph's vertices")]
    BadSchedule,
    #[error("no stable state after {0} passes")]
    NoConvergence(usize),
}

/// Steady announcements of a manipulator: for each neighbor, the AS path it
/// is sent (starting at the manipulator), or `None` for silence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PinnedAnnouncements {
    pub manipulator: Asn,
    pub announcements: BTreeMap<Asn, BgpPath>,
}

/// Which vertices get activated in which order during every pass.
#[derive(Debug, Clone, Default)]
pub enum Schedule {
    #[default]
    Ascending,
    Order(Vec<Asn>),
}

pub(crate) type RawPath = Rc<[u32]>;

/// Fixpoint in graph-index space. Paths are vertex indices.
#[derive(Debug, Clone)]
pub(crate) struct RawState {
    pub(crate) selected: Vec<Option<RawPath>>,
    /// `outgoing[v][k]` is what `v` announces over its `k`-th link.
    pub(crate) outgoing: Vec<Vec<Option<RawPath>>>,
    sel_link: Vec<Option<usize>>,
    pub(crate) rounds: usize,
}

/// Graph-dependent data shared by every run toward one destination.
pub(crate) struct Prepared<'g> {
    pub(crate) g: &'g AsGraph,
    pub(crate) dest: usize,
    /// `reverse[v][k]`: index of the link back to `v` in the neighbor's list.
    pub(crate) reverse: Vec<Vec<usize>>,
    order: Vec<usize>,
}

/// Manipulator index and what it sends over each of its links.
pub(crate) type RawPin = (usize, Vec<Option<RawPath>>);

impl<'g> Prepared<'g> {
    pub(crate) fn new(g: &'g AsGraph, dest: Asn, schedule: &Schedule) -> Result<Self, RoutingError> {
        if !g.is_valid() {
            let text: Vec<String> = g.validation().violations.iter().map(|v| v.to_string()).collect();
            return Err(RoutingError::InvalidGraph(text.join("; ")));
        }
        let d = g.idx(dest)?;
        let order = schedule_order(g, schedule)?;
        let reverse = (0..g.len())
            .map(|v| {
                g.links(v)
                    .iter()
                    .map(|l| g.links(l.to).binary_search_by_key(&v, |b| b.to).expect("symmetric adjacency"))
                    .collect()
            })
            .collect();
        Ok(Prepared { g, dest: d, reverse, order })
    }

    pub(crate) fn pin(&self, p: &PinnedAnnouncements) -> Result<RawPin, RoutingError> {
        let g = self.g;
        let m = g.idx(p.manipulator)?;
        if m == self.dest {
            return Err(RoutingError::ManipulatorIsDestination(p.manipulator));
        }
        let mut out = vec![None; g.links(m).len()];
        for (nbr, path) in &p.announcements {
            let not_nbr = || RoutingError::NotANeighbor { manipulator: p.manipulator, neighbor: *nbr };
            let ni = g.idx(*nbr).map_err(|_| not_nbr())?;
            let k = g.links(m).binary_search_by_key(&ni, |l| l.to).map_err(|_| not_nbr())?;
            out[k] = Some(Rc::from(to_raw(g, path)));
        }
        Ok((m, out))
    }

    pub(crate) fn run(&self, pin: Option<&RawPin>) -> Result<RawState, RoutingError> {
        let g = self.g;
        let n = g.len();
        let mut outgoing: Vec<Vec<Option<RawPath>>> = (0..n).map(|v| vec![None; g.links(v).len()]).collect();
        let mut selected: Vec<Option<RawPath>> = vec![None; n];
        let origin: RawPath = Rc::from(vec![self.dest as u32]);
        selected[self.dest] = Some(origin.clone());
        outgoing[self.dest].fill(Some(origin));
        if let Some((m, out)) = pin {
            outgoing[*m].clone_from(out);
        }
        Engine {
            p: self,
            pinned: pin.map(|(m, _)| *m),
            selected,
            sel_link: vec![None; n],
            outgoing,
            dirty: vec![true; n],
        }
        .run()
    }

    /// Same fixpoint as [`Prepared::run`] with `pin`, computed by starting
    /// from another fixpoint `base` (honest, or under different pinned
    /// announcements) and re-activating only what the change disturbs.
    /// Sound because the stable state is unique: the policies admit no
    /// dispute wheel, and pinned routes act as fixed inputs. `rounds` in the
    /// result counts only the extra passes.
    pub(crate) fn run_from(&self, base: RawState, pin: &RawPin) -> Result<RawState, RoutingError> {
        let g = self.g;
        let (m, out) = pin;
        let mut dirty = vec![false; g.len()];
        dirty[*m] = true;
        let mut outgoing = base.outgoing;
        for (k, link) in g.links(*m).iter().enumerate() {
            if outgoing[*m][k] != out[k] {
                dirty[link.to] = true;
            }
        }
        outgoing[*m].clone_from(out);
        Engine {
            p: self,
            pinned: Some(*m),
            selected: base.selected,
            sel_link: base.sel_link,
            outgoing,
            dirty,
        }
        .run()
    }
}

struct Engine<'p, 'g> {
    p: &'p Prepared<'g>,
    pinned: Option<usize>,
    selected: Vec<Option<RawPath>>,
    sel_link: Vec<Option<usize>>,
    outgoing: Vec<Vec<Option<RawPath>>>,
    dirty: Vec<bool>,
}

impl Engine<'_, '_> {
    /// Recomputes the selection of `v`; returns whether anything changed.
    fn activate(&mut self, v: usize) -> bool {
        if v == self.p.dest {
            return false;
        }
        let links = self.p.g.links(v);
        let reverse = &self.p.reverse[v];
        let me = v as u32;
        let mut best: Option<(usize, RouteClass, usize)> = None;
        for (k, link) in links.iter().enumerate() {
            let Some(p) = &self.outgoing[link.to][reverse[k]] else { continue };
            if p.contains(&me) {
                continue;
            }
            let better = match best {
                None => true,
                Some((_, class, len)) => link.class > class || (link.class == class && p.len() < len),
            };
            if better {
                best = Some((k, link.class, p.len()));
            }
        }

        let new_sel: Option<RawPath> = best.map(|(k, _, _)| {
            let p = self.outgoing[links[k].to][reverse[k]].as_ref().expect("chosen");
            let mut path = Vec::with_capacity(p.len() + 1);
            path.push(me);
            path.extend_from_slice(p);
            Rc::from(path)
        });
        let mut changed = new_sel != self.selected[v];
        if changed {
            self.selected[v] = new_sel;
            self.sel_link[v] = best.map(|(k, _, _)| k);
        }

        if Some(v) == self.pinned {
            return changed;
        }
        let sel_class = self.sel_link[v].map(|k| links[k].class);
        for (k, link) in links.iter().enumerate() {
            let export = match sel_class {
                Some(c) if c == RouteClass::Customer || link.class == RouteClass::Customer => {
                    self.selected[v].clone()
                }
                _ => None,
            };
            let same = match (&export, &self.outgoing[v][k]) {
                (None, None) => true,
                (Some(a), Some(b)) => Rc::ptr_eq(a, b) || a == b,
                _ => false,
            };
            if !same {
                self.outgoing[v][k] = export;
                self.dirty[link.to] = true;
                changed = true;
            }
        }
        changed
    }

    fn run(mut self) -> Result<RawState, RoutingError> {
        let n = self.p.g.len();
        let cap = (n * n).max(1);
        let mut rounds = 0;
        loop {
            rounds += 1;
            if rounds > cap {
                return Err(RoutingError::NoConvergence(cap));
            }
            let mut changed = false;
            for &v in &self.p.order {
                if !self.dirty[v] {
                    continue;
                }
                self.dirty[v] = false;
                changed |= self.activate(v);
            }
            if !changed {
                break;
            }
        }
        Ok(RawState { selected: self.selected, outgoing: self.outgoing, sel_link: self.sel_link, rounds })
    }
}

fn to_raw(g: &AsGraph, path: &BgpPath) -> Vec<u32> {
    // Forged paths may name vertices outside the graph; those get indices past
    // the end so they can never collide with a real vertex.
    path.vertices()
        .iter()
        .map(|a| g.idx(*a).map(|i| i as u32).unwrap_or(u32::MAX - a.0.min(u32::MAX / 2)))
        .collect()
}

fn from_raw(g: &AsGraph, path: &[u32], forged: &BTreeMap<u32, Asn>) -> BgpPath {
    let v = path
        .iter()
        .map(|&i| if (i as usize) < g.len() { g.asn(i as usize) } else { forged[&i] })
        .collect();
    BgpPath::new(v).expect("non-empty")
}

pub(crate) fn schedule_order(g: &AsGraph, schedule: &Schedule) -> Result<Vec<usize>, RoutingError> {
    match schedule {
        Schedule::Ascending => Ok((0..g.len()).collect()),
        Schedule::Order(order) => {
            let mut seen = vec![false; g.len()];
            let mut out = Vec::with_capacity(order.len());
            for a in order {
                let i = g.idx(*a).map_err(|_| RoutingError::BadSchedule)?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(RoutingError::BadSchedule);
                }
                out.push(i);
            }
            if out.len() != g.len() {
                return Err(RoutingError::BadSchedule);
            }
            Ok(out)
        }
    }
}

/// Stable routing state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingState {
    destination: Asn,
    manipulator: Option<Asn>,
    vertices: Vec<Asn>,
    selected: Vec<Option<BgpPath>>,
    available: Vec<Vec<BgpPath>>,
    rounds: usize,
}

impl RoutingState {
    pub(crate) fn from_raw(g: &AsGraph, d: Asn, pinned: Option<&PinnedAnnouncements>, raw: &RawState) -> Self {
        let mut forged = BTreeMap::new();
        if let Some(p) = pinned {
            for path in p.announcements.values() {
                for a in path.vertices() {
                    if !g.contains(*a) {
                        forged.insert(u32::MAX - a.0.min(u32::MAX / 2), *a);
                    }
                }
            }
        }
        let n = g.len();
        let selected = raw.selected.iter().map(|s| s.as_ref().map(|p| from_raw(g, p, &forged))).collect();
        let available = (0..n)
            .map(|v| {
                let mut paths: Vec<(RouteClass, BgpPath)> = Vec::new();
                for link in g.links(v) {
                    let k = g.links(link.to).binary_search_by_key(&v, |b| b.to).expect("symmetric");
                    let Some(p) = &raw.outgoing[link.to][k] else { continue };
                    if p.contains(&(v as u32)) {
                        continue;
                    }
                    let mut full = vec![v as u32];
                    full.extend_from_slice(p);
                    paths.push((link.class, from_raw(g, &full, &forged)));
                }
                paths.sort_by(|(ca, pa), (cb, pb)| {
                    cb.cmp(ca).then(pa.hops().cmp(&pb.hops())).then(pa.next_hop().cmp(&pb.next_hop()))
                });
                paths.into_iter().map(|(_, p)| p).collect()
            })
            .collect();
        RoutingState {
            destination: d,
            manipulator: pinned.map(|p| p.manipulator),
            vertices: g.vertices().to_vec(),
            selected,
            available,
            rounds: raw.rounds,
        }
    }

    fn pos(&self, v: Asn) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn destination(&self) -> Asn {
        self.destination
    }

    pub fn manipulator(&self) -> Option<Asn> {
        self.manipulator
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn vertices(&self) -> &[Asn] {
        &self.vertices
    }

    /// Route selected by `v`, beginning at `v`.
    pub fn selected(&self, v: Asn) -> Option<&BgpPath> {
        self.pos(v).and_then(|i| self.selected[i].as_ref())
    }

    /// Routes offered to `v` that survive loop detection, most preferred first.
    pub fn available(&self, v: Asn) -> &[BgpPath] {
        self.pos(v).map(|i| self.available[i].as_slice()).unwrap_or(&[])
    }
}

impl Serialize for RoutingState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            selected: Option<&'a BgpPath>,
            available: &'a [BgpPath],
        }
        let routes: BTreeMap<Asn, Entry<'_>> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, Entry { selected: self.selected[i].as_ref(), available: &self.available[i] }))
            .collect();
        let mut st = s.serialize_struct("RoutingState", 4)?;
        st.serialize_field("destination", &self.destination)?;
        st.serialize_field("manipulator", &self.manipulator)?;
        st.serialize_field("rounds", &self.rounds)?;
        st.serialize_field("routes", &routes)?;
        st.end()
    }
}

/// Whether `p1` is strictly preferred to `p2` at `v`: better class, then
/// fewer hops, then lower next-hop AS.
pub fn preference_less(g: &AsGraph, v: Asn, p1: &BgpPath, p2: &BgpPath) -> Result<bool, GraphError> {
    let key = |p: &BgpPath| -> Result<(RouteClass, usize, Asn), GraphError> {
        if p.first() != v {
            return Err(GraphError::NotRootedAt { path: p.clone(), expected: v });
        }
        let hop = p.next_hop().ok_or_else(|| GraphError::DegeneratePath(p.clone()))?;
        Ok((edge_class(g, v, hop)?, p.hops(), hop))
    };
    let (c1, l1, h1) = key(p1)?;
    let (c2, l2, h2) = key(p2)?;
    Ok(c1 > c2 || (c1 == c2 && (l1 < l2 || (l1 == l2 && h1 < h2))))
}

/// Whether honest `v` holding `p` announces it to neighbor `n`. Origin
/// routes and customer routes go to everyone, the rest only to customers.
pub fn export_allowed(g: &AsGraph, v: Asn, p: &BgpPath, n: Asn) -> Result<bool, GraphError> {
    if p.first() != v {
        return Err(GraphError::NotRootedAt { path: p.clone(), expected: v });
    }
    let to_customer = edge_class(g, v, n)? == RouteClass::Customer;
    match p.next_hop() {
        None => Ok(true),
        Some(hop) => Ok(to_customer || edge_class(g, v, hop)? == RouteClass::Customer),
    }
}

/// Runs route propagation to the stable state, with the manipulator's
/// announcements pinned when given.
pub fn simulate(g: &AsGraph, d: Asn, attack: Option<&PinnedAnnouncements>) -> Result<RoutingState, RoutingError> {
    simulate_with_schedule(g, d, attack, &Schedule::Ascending)
}

pub fn simulate_with_schedule(
    g: &AsGraph,
    d: Asn,
    attack: Option<&PinnedAnnouncements>,
    schedule: &Schedule,
) -> Result<RoutingState, RoutingError> {
    let prep = Prepared::new(g, d, schedule)?;
    let pin = attack.map(|a| prep.pin(a)).transpose()?;
    let raw = prep.run(pin.as_ref())?;
    Ok(RoutingState::from_raw(g, d, attack, &raw))
}

/// Paths `(m u)P` for every neighbor `u` announcing `P` to `m` in the honest
/// stable state, in lexicographic order.
pub fn baseline_available(g: &AsGraph, d: Asn, m: Asn) -> Result<Vec<BgpPath>, RoutingError> {
    g.idx(m)?;
    if m == d {
        return Err(RoutingError::ManipulatorIsDestination(m));
    }
    let state = simulate(g, d, None)?;
    let mut pool = state.available(m).to_vec();
    pool.sort();
    Ok(pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::instances::{fixture, Fixture};

    fn p(ids: &[u32]) -> BgpPath {
        BgpPath::from_ids(ids)
    }

    fn pin(m: Asn, entries: &[(u32, &[u32])]) -> PinnedAnnouncements {
        PinnedAnnouncements {
            manipulator: m,
            announcements: entries.iter().map(|(n, path)| (Asn(*n), p(path))).collect(),
        }
    }

    #[test]
    fn preference_examples() {
        let f = fixture(Fixture::Fig1);
        let (m, d) = (f.m.0, f.d.0);
        let g = &f.graph;
        assert!(preference_less(g, Asn(6), &p(&[6, 5, 4, 3, m, 2, 1, d]), &p(&[6, 2, 1, d])).unwrap());
        assert!(preference_less(g, Asn(2), &p(&[2, m]), &p(&[2, 1, d])).unwrap());
        assert!(!preference_less(g, Asn(2), &p(&[2, 1, d]), &p(&[2, m])).unwrap());
        assert!(preference_less(g, Asn(6), &p(&[2, 1]), &p(&[6, 2])).is_err());
    }

    #[test]
    fn tie_break_on_lowest_next_hop() {
        let g = AsGraph::from_edges([Edge::c2p(1, 3), Edge::c2p(1, 7), Edge::c2p(3, 9), Edge::c2p(7, 9)]);
        assert!(preference_less(&g, Asn(1), &p(&[1, 3, 9]), &p(&[1, 7, 9])).unwrap());
        assert!(!preference_less(&g, Asn(1), &p(&[1, 7, 9]), &p(&[1, 3, 9])).unwrap());
    }

    #[test]
    fn export_examples() {
        let f = fixture(Fixture::Fig1);
        let (m, d) = (f.m.0, f.d.0);
        let g = &f.graph;
        assert!(!export_allowed(g, f.m, &p(&[m, 2, 1, d]), Asn(3)).unwrap());
        assert!(export_allowed(g, Asn(5), &p(&[5, 4, 3, m, 2, 1, d]), Asn(6)).unwrap());
        for (n, _) in g.neighbors(f.d).unwrap() {
            assert!(export_allowed(g, f.d, &p(&[d]), n).unwrap());
        }
    }

    #[test]
    fn fig1_honest_and_attacked() {
        let f = fixture(Fixture::Fig1);
        let (s, m, d) = (f.s.0, f.m.0, f.d.0);
        let honest = simulate(&f.graph, f.d, None).unwrap();
        assert_eq!(honest.selected(f.s), Some(&p(&[s, 6, 2, 1, d])));

        let origin = pin(f.m, &[(2, &[m])]);
        let st = simulate(&f.graph, f.d, Some(&origin)).unwrap();
        assert_eq!(st.selected(f.s), Some(&p(&[s, 6, 2, m])));

        let sbgp = pin(f.m, &[(3, &[m, 2, 1, d])]);
        let st = simulate(&f.graph, f.d, Some(&sbgp)).unwrap();
        assert_eq!(st.selected(f.s), Some(&p(&[s, 6, 5, 4, 3, m, 2, 1, d])));
    }

    #[test]
    fn fig2_origin_to_both_fails() {
        let f = fixture(Fixture::Fig2);
        let (s, m, d) = (f.s.0, f.m.0, f.d.0);
        let st = simulate(&f.graph, f.d, Some(&pin(f.m, &[(6, &[m]), (7, &[m])]))).unwrap();
        assert_eq!(st.selected(f.s), Some(&p(&[s, 1, 2, 3, d])));
    }

    #[test]
    fn baseline_pool_examples() {
        let f5 = fixture(Fixture::Fig5);
        let (m, d) = (f5.m.0, f5.d.0);
        assert_eq!(baseline_available(&f5.graph, f5.d, f5.m).unwrap(), vec![p(&[m, 2, 1, d]), p(&[m, 3, 4, d])]);
        let f1 = fixture(Fixture::Fig1);
        assert!(baseline_available(&f1.graph, f1.d, f1.m).unwrap().contains(&p(&[f1.m.0, 2, 1, f1.d.0])));
        let f2 = fixture(Fixture::Fig2);
        assert!(baseline_available(&f2.graph, f2.d, f2.m).unwrap().is_empty());
    }

    #[test]
    fn loses_route_when_origin_is_cut_off() {
        // 1 and 2 are customers of 3; nothing reaches 4 besides via 3's customer routes.
        let g = AsGraph::from_edges([Edge::c2p(1, 3), Edge::c2p(2, 3), Edge::p2p(3, 4)]);
        let st = simulate(&g, Asn(1), None).unwrap();
        assert_eq!(st.selected(Asn(4)), Some(&p(&[4, 3, 1])));
        assert_eq!(st.selected(Asn(2)), Some(&p(&[2, 3, 1])));
        let g = AsGraph::from_edges([Edge::c2p(3, 1), Edge::p2p(3, 4)]);
        let st = simulate(&g, Asn(1), None).unwrap();
        assert_eq!(st.selected(Asn(4)), None);
    }

    #[test]
    fn invalid_graph_is_refused() {
        let g = AsGraph::from_edges([Edge::c2p(1, 2), Edge::c2p(2, 1)]);
        assert!(matches!(simulate(&g, Asn(1), None), Err(RoutingError::InvalidGraph(_))));
    }

    #[test]
    fn pinned_announcement_to_non_neighbor_is_refused() {
        let f = fixture(Fixture::Fig1);
        let bad = pin(f.m, &[(6, &[f.m.0])]);
        assert!(matches!(simulate(&f.graph, f.d, Some(&bad)), Err(RoutingError::NotANeighbor { .. })));
    }

    #[test]
    fn forged_vertices_outside_graph_round_trip() {
        let f = fixture(Fixture::Fig1);
        let forged = pin(f.m, &[(3, &[f.m.0, 999, f.d.0])]);
        let st = simulate(&f.graph, f.d, Some(&forged)).unwrap();
        assert_eq!(st.selected(Asn(3)), Some(&p(&[3, f.m.0, 999, f.d.0])));
    }

    #[test]
    fn schedule_must_be_permutation() {
        let f = fixture(Fixture::Fig1);
        let bad = Schedule::Order(vec![f.s]);
        assert_eq!(simulate_with_schedule(&f.graph, f.d, None, &bad).unwrap_err(), RoutingError::BadSchedule);
        let mut rev: Vec<Asn> = f.graph.vertices().to_vec();
        rev.reverse();
        let a = simulate_with_schedule(&f.graph, f.d, None, &Schedule::Order(rev)).unwrap();
        let b = simulate(&f.graph, f.d, None).unwrap();
        for v in f.graph.vertices() {
            assert_eq!(a.selected(*v), b.selected(*v));
        }
    }

    mod warm_start {
        use super::*;
        use crate::instances::{gen_random, RandomSpec};
        use proptest::prelude::*;

        fn random_pin(g: &AsGraph, m: Asn, d: Asn, picks: &[(bool, u8)]) -> PinnedAnnouncements {
            let pool = baseline_available(g, d, m).unwrap();
            let mut announcements = BTreeMap::new();
            for ((n, _), (speak, k)) in g.neighbors(m).unwrap().into_iter().zip(picks) {
                if !speak {
                    continue;
                }
                let path = match pool.get(*k as usize % (pool.len() + 1)) {
                    Some(p) => p.clone(),
                    None => BgpPath::from_ids(&[m.0, *k as u32 + 500, d.0]),
                };
                announcements.insert(n, path);
            }
            PinnedAnnouncements { manipulator: m, announcements }
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn chained_runs_match_cold_runs(
                seed in any::<u64>(),
                n in 4usize..14,
                first in proptest::collection::vec((any::<bool>(), any::<u8>()), 16),
                second in proptest::collection::vec((any::<bool>(), any::<u8>()), 16),
            ) {
                let sc = gen_random(&RandomSpec::new(seed, n)).unwrap();
                let prep = Prepared::new(&sc.graph, sc.d, &Schedule::Ascending).unwrap();
                let mut prev = prep.run(None).unwrap();
                for picks in [&first, &second] {
                    let pin = prep.pin(&random_pin(&sc.graph, sc.m, sc.d, picks)).unwrap();
                    let warm = prep.run_from(prev, &pin).unwrap();
                    let cold = prep.run(Some(&pin)).unwrap();
                    prop_assert_eq!(&warm.selected, &cold.selected);
                    prop_assert_eq!(&warm.outgoing, &cold.outgoing);
                    prev = warm;
                }
            }
        }
    }
}
