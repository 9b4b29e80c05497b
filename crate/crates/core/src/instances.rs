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

//! Small hand-built networks and a seeded random topology generator.
//!
//! Fixture roles use ids outside the 1..9 range of the named vertices:
//! `d = 0`, `s = 100`, `m = 200`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AsGraph, Asn, Edge};
use crate::routing::simulate;

pub const FIXTURE_D: u32 = 0;
pub const FIXTURE_S: u32 = 100;
pub const FIXTURE_M: u32 = 200;

/// A graph with the three roles of a hijack question.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub graph: AsGraph,
    pub s: Asn,
    pub d: Asn,
    pub m: Asn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fixture {
    Fig1,
    Fig2,
    Fig5,
}

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::Fig1, Fixture::Fig2, Fixture::Fig5];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Fig1 => "fig1",
            Fixture::Fig2 => "fig2",
            Fixture::Fig5 => "fig5",
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown fixture `{0}` (expected fig1, fig2 or fig5)")]
pub struct UnknownFixture(pub String);

impl FromStr for Fixture {
    type Err = UnknownFixture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownFixture(s.to_string()))
    }
}

pub fn fixture(which: Fixture) -> Scenario {
    let (s, d, m) = (FIXTURE_S, FIXTURE_D, FIXTURE_M);
    let edges = match which {
        // Honest traffic from s runs s-6-2-1-d: s buys transit from 6, 6
        // peers with 2 (the only peer edge), 2 is a provider of 1, and 1 of d.
        // m sits below 2 and below 3, and the chain 3-4-5 climbs up to 6, so
        // a route that m hands to 3 reaches 6 from its customer 5 and beats
        // the peer route. m is a customer of 2, so 2 prefers the one-hop
        // origin claim (2 m) over (2 1 d).
        Fixture::Fig1 => vec![
            Edge::c2p(s, 6),
            Edge::c2p(5, 6),
            Edge::c2p(4, 5),
            Edge::c2p(3, 4),
            Edge::c2p(m, 3),
            Edge::c2p(m, 2),
            Edge::c2p(1, 2),
            Edge::c2p(d, 1),
            Edge::p2p(2, 6),
        ],
        // Every neighbor of s (1, 4, 5) is its provider. Honest traffic takes
        // s-4-d; the alternative s-1-2-3-d is a provider chain up to d. m's
        // providers are 6 and 7. 6 is also a provider of 5, and 7 leads up
        // through 8 to 9, which peers with 4 and 5. An origin claim makes 4
        // and 5 prefer a peer route toward m, which they may only pass to
        // customers; that disrupts s-4-d but s still reaches d via 1-2-3.
        // Edges among 7, 8, 9 are the least structure that gives m a long
        // upward path to both peers; nothing else forces them.
        Fixture::Fig2 => vec![
            Edge::c2p(s, 1),
            Edge::c2p(s, 4),
            Edge::c2p(s, 5),
            Edge::c2p(1, 2),
            Edge::c2p(2, 3),
            Edge::c2p(3, d),
            Edge::c2p(4, d),
            Edge::c2p(5, 6),
            Edge::c2p(m, 6),
            Edge::c2p(m, 7),
            Edge::c2p(7, 8),
            Edge::c2p(8, 9),
            Edge::p2p(9, 4),
            Edge::p2p(9, 5),
        ],
        // Two provider-only routes s-1-d and s-4-d tie on length; the lower
        // next hop 1 wins. m reaches d through 2-1 and 3-4, its two
        // providers, so the honest pool at m is {(m 2 1 d), (m 3 4 d)}.
        // Crossing the two routes turns 2 and 3 into customer-route holders
        // that pull 1 and 4 away from d, at the cost of both pool routes.
        Fixture::Fig5 => vec![
            Edge::c2p(s, 1),
            Edge::c2p(s, 4),
            Edge::c2p(1, d),
            Edge::c2p(4, d),
            Edge::c2p(2, 1),
            Edge::c2p(3, 4),
            Edge::c2p(m, 2),
            Edge::c2p(m, 3),
        ],
    };
    Scenario { graph: AsGraph::from_edges(edges), s: Asn(s), d: Asn(d), m: Asn(m) }
}

/// How roles are drawn for a random instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RoleRule {
    /// Any three distinct vertices such that `s` reaches `d` honestly.
    Any,
    /// As `Any`, with the manipulator's degree capped.
    MaxManipulatorDegree(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub seed: u64,
    pub num_vertices: usize,
    /// Probability that a pair of vertices is linked at all.
    pub density: f64,
    /// Probability that a link is a peer edge rather than customer-provider.
    pub peer_fraction: f64,
    pub roles: RoleRule,
}

impl RandomSpec {
    pub fn new(seed: u64, num_vertices: usize) -> Self {
        RandomSpec { seed, num_vertices, density: 0.3, peer_fraction: 0.2, roles: RoleRule::Any }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RandomError {
    #[error("need at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("density and peer fraction must lie in [0, 1]")]
    BadProbability,
    #[error("no usable instance after {0} draws")]
    Exhausted(usize),
}

const GRAPH_DRAWS: usize = 200;
const ROLE_DRAWS: usize = 20;

/// Draws a graph and roles. Vertices are `0..num_vertices`; customer-provider
/// edges always point forward in a random ordering, so the result has no
/// customer-provider cycle. The output depends only on `spec`.
pub fn gen_random(spec: &RandomSpec) -> Result<Scenario, RandomError> {
    let n = spec.num_vertices;
    if n < 4 {
        return Err(RandomError::TooFewVertices(n));
    }
    let unit = 0.0..=1.0;
    if !unit.contains(&spec.density) || !unit.contains(&spec.peer_fraction) {
        return Err(RandomError::BadProbability);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..GRAPH_DRAWS {
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.shuffle(&mut rng);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !rng.gen_bool(spec.density) {
                    continue;
                }
                if rng.gen_bool(spec.peer_fraction) {
                    edges.push(Edge::p2p(order[i], order[j]));
                } else {
                    edges.push(Edge::c2p(order[i], order[j]));
                }
            }
        }
        let graph = AsGraph::from_parts((0..n as u32).map(Asn), edges);
        for _ in 0..ROLE_DRAWS {
            let picked: Vec<u32> = (0..n as u32).collect::<Vec<_>>().choose_multiple(&mut rng, 3).copied().collect();
            let (s, d, m) = (Asn(picked[0]), Asn(picked[1]), Asn(picked[2]));
            if let RoleRule::MaxManipulatorDegree(cap) = spec.roles {
                if graph.degree(m).expect("vertex") > cap {
                    continue;
                }
            }
            let Ok(state) = simulate(&graph, d, None) else { continue };
            if state.selected(s).is_some() {
                return Ok(Scenario { graph, s, d, m });
            }
        }
    }
    Err(RandomError::Exhausted(GRAPH_DRAWS))
}

/// Mixes a suite seed and an instance counter into an instance seed.
pub fn instance_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed ^ i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
