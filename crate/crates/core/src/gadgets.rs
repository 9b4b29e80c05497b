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

//! CNF formulas and the two formula-to-network constructions.
//!
//! Both constructions give `d`, `s` and `m` the ids 0, 1 and 2 and number
//! the remaining vertices in the order the structures are described below.
//! Numbering matters: `s` breaks ties between equally short routes by the
//! lowest next hop.
//!
//! Every network has four parts. *Short* holds one provider chain from `s`
//! to `d` per clause; *Long* is a single longer chain from `s` to `d`;
//! *Intermediate* offers `s` a route toward `m` that beats Long but loses to
//! any intact Short chain; *Disruptive* lets `m` hand customer or peer
//! routes to clause vertices, which then abandon their chain toward `d`.
//! Every directed edge is customer-to-provider, oriented as listed.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AsGraph, Asn, Edge};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfFormula {
    pub num_vars: usize,
    /// Signed, 1-based literals.
    pub clauses: Vec<Vec<i32>>,
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                write!(f, "{l} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed header")]
    MalformedHeader { line: usize },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: bad literal `{token}`")]
    BadLiteral { line: usize, token: String },
    #[error("line {line}: literal {literal} out of range for {num_vars} variables")]
    LiteralOutOfRange { line: usize, literal: i64, num_vars: usize },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("header announces {expected} clauses, found {found}")]
    ClauseCount { expected: usize, found: usize },
}

/// Reads DIMACS CNF. Clauses may span lines; `c` lines are comments and a
/// line starting with `%` ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if t.starts_with('%') {
            break;
        }
        if t.starts_with('p') {
            let parts: Vec<&str> = t.split_whitespace().collect();
            let parsed = match parts.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            if header.is_some() || parsed.is_none() {
                return Err(DimacsError::MalformedHeader { line });
            }
            header = parsed;
            continue;
        }
        let Some((num_vars, _)) = header else { return Err(DimacsError::MissingHeader) };
        for tok in t.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| DimacsError::BadLiteral { line, token: tok.to_string() })?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(DimacsError::EmptyClause { line });
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > num_vars {
                return Err(DimacsError::LiteralOutOfRange { line, literal: lit, num_vars });
            } else {
                current.push(lit as i32);
            }
        }
    }
    let Some((num_vars, expected)) = header else { return Err(DimacsError::MissingHeader) };
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    if clauses.len() != expected {
        return Err(DimacsError::ClauseCount { expected, found: clauses.len() });
    }
    Ok(CnfFormula { num_vars, clauses })
}

pub const SAT_MAX_VARS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0} variables exceed the brute-force limit of {SAT_MAX_VARS}")]
pub struct TooManyVars(pub usize);

/// First satisfying assignment in lexicographic order (`x1` most
/// significant, false before true).
pub fn sat_bruteforce(f: &CnfFormula) -> Result<Option<Vec<bool>>, TooManyVars> {
    let n = f.num_vars;
    if n > SAT_MAX_VARS {
        return Err(TooManyVars(n));
    }
    for mask in 0u32..1 << n {
        let value = |v: usize| mask >> (n - v) & 1 == 1;
        let sat = f.clauses.iter().all(|c| c.iter().any(|&l| value(l.unsigned_abs() as usize) == (l > 0)));
        if sat {
            return Ok(Some((1..=n).map(value).collect()));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Structure {
    Role,
    Intermediate,
    Short,
    Long,
    Disruptive,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::Role => "role",
            Structure::Intermediate => "intermediate",
            Structure::Short => "short",
            Structure::Long => "long",
            Structure::Disruptive => "disruptive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GadgetMode {
    Origin,
    Sbgp,
}

#[derive(Debug, Clone)]
pub struct GadgetInstance {
    pub mode: GadgetMode,
    pub graph: AsGraph,
    pub s: Asn,
    pub d: Asn,
    pub m: Asn,
    pub tags: BTreeMap<Asn, Structure>,
    /// Construction names such as `t_2`, `c_1_3` or `w_4`.
    pub labels: BTreeMap<Asn, String>,
}

impl GadgetInstance {
    /// Vertex with construction name `label`.
    pub fn vertex(&self, label: &str) -> Option<Asn> {
        self.labels.iter().find(|(_, l)| l.as_str() == label).map(|(v, _)| *v)
    }

    pub fn count(&self, structure: Structure) -> usize {
        self.tags.values().filter(|t| **t == structure).count()
    }

    /// `role` lines followed by one tag comment per vertex.
    pub fn roles_text(&self) -> String {
        let mut out = format!("role s {}\nrole d {}\nrole m {}\n", self.s, self.d, self.m);
        for (v, tag) in &self.tags {
            out.push_str(&format!("# {v} {tag} {}\n", self.labels[v]));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("clause {clause} has {len} literals; every clause needs exactly 3")]
    ClauseArity { clause: usize, len: usize },
    #[error("clause {clause} has {len} literals; at most 3 allowed")]
    ClauseTooLong { clause: usize, len: usize },
    #[error("formula has no clauses")]
    NoClauses,
    #[error("literal {literal} out of range")]
    LiteralOutOfRange { literal: i32 },
    #[error("clause {clause} contains both x{var} and its negation")]
    Tautology { clause: usize, var: usize },
    #[error("variable x{var} occurs {count} times (at most 3 allowed)")]
    TooManyOccurrences { var: usize, count: usize },
    #[error("variable x{var} occurs positively {count} times (at most once allowed)")]
    TooManyPositive { var: usize, count: usize },
}

struct Builder {
    next: u32,
    edges: Vec<Edge>,
    tags: BTreeMap<Asn, Structure>,
    labels: BTreeMap<Asn, String>,
}

const D: u32 = 0;
const S: u32 = 1;
const M: u32 = 2;

impl Builder {
    fn new() -> Self {
        let mut b = Builder { next: 3, edges: Vec::new(), tags: BTreeMap::new(), labels: BTreeMap::new() };
        for (v, l) in [(D, "d"), (S, "s"), (M, "m")] {
            b.tags.insert(Asn(v), Structure::Role);
            b.labels.insert(Asn(v), l.to_string());
        }
        b
    }

    fn vertex(&mut self, tag: Structure, label: String) -> u32 {
        let v = self.next;
        self.next += 1;
        self.tags.insert(Asn(v), tag);
        self.labels.insert(Asn(v), label);
        v
    }

    fn up(&mut self, customer: u32, provider: u32) {
        self.edges.push(Edge::c2p(customer, provider));
    }

    fn peer(&mut self, a: u32, b: u32) {
        self.edges.push(Edge::p2p(a, b));
    }

    /// Directed chain of `len` edges climbing from `from` to a new top vertex.
    fn chain(&mut self, from: u32, len: usize, tag: Structure, name: &str, top: String) -> u32 {
        let mut prev = from;
        for k in 1..len {
            let v = self.vertex(tag, format!("{name}_{k}"));
            self.up(prev, v);
            prev = v;
        }
        let v = self.vertex(tag, top);
        self.up(prev, v);
        v
    }

    fn finish(self, mode: GadgetMode) -> GadgetInstance {
        GadgetInstance {
            mode,
            graph: AsGraph::from_parts(self.tags.keys().copied(), self.edges),
            s: Asn(S),
            d: Asn(D),
            m: Asn(M),
            tags: self.tags,
            labels: self.labels,
        }
    }
}

fn check_range(f: &CnfFormula) -> Result<(), GadgetError> {
    if f.clauses.is_empty() {
        return Err(GadgetError::NoClauses);
    }
    for &l in f.clauses.iter().flatten() {
        if l == 0 || l.unsigned_abs() as usize > f.num_vars {
            return Err(GadgetError::LiteralOutOfRange { literal: l });
        }
    }
    Ok(())
}

/// Network in which `m`, able to claim the prefix as its own, can pull `s`'s
/// traffic iff `f` is satisfiable.
///
/// With `n` variables and `h` clauses:
/// * Intermediate: `m` is a customer of `q_1`, and two provider chains
///   `s, t_n, q_n, t_{n-1}, ..., t_1, q_1` and the same through `tb_i`
///   (standing for the negated `t_i`) lead from `s` up to `q_1`.
/// * Short: `s, c_i_1, c_i_2, c_i_3, d` for every clause `i`.
/// * Long: `s, w_1, ..., w_{2n+2}, d`.
/// * Disruptive: a provider chain of `2n+2` edges from `m` up to each `x_i`
///   and each `xb_i`, peer edges `x_i - t_i` and `xb_i - tb_i`, and `x_k`
///   (or `xb_k` for a negative literal) below `c_i_j` for the `j`-th literal
///   of clause `i`.
///
/// Intermediate routes reach `s` with `2n+1` hops, which beats Long only,
/// so the formula needs at least two variables; with `n = 1` an
/// Intermediate route outright beats every Short chain.
/// [`gen_gadget_origin`] therefore builds at least two variables' worth of
/// structure; [`gen_gadget_origin_unpadded`] keeps `n` as given.
pub fn gen_gadget_origin(f: &CnfFormula) -> Result<GadgetInstance, GadgetError> {
    build_origin(f, f.num_vars.max(2))
}

pub fn gen_gadget_origin_unpadded(f: &CnfFormula) -> Result<GadgetInstance, GadgetError> {
    build_origin(f, f.num_vars)
}

fn build_origin(f: &CnfFormula, n: usize) -> Result<GadgetInstance, GadgetError> {
    check_range(f)?;
    for (i, c) in f.clauses.iter().enumerate() {
        if c.len() != 3 {
            return Err(GadgetError::ClauseArity { clause: i + 1, len: c.len() });
        }
    }
    use Structure::*;
    let mut b = Builder::new();

    // Intermediate.
    let q1 = b.vertex(Intermediate, "q_1".into());
    b.up(M, q1);
    let mut t = vec![0; n + 1];
    let mut tb = vec![0; n + 1];
    let mut q = vec![0; n + 1];
    q[1] = q1;
    let mut prev = S;
    for i in (1..=n).rev() {
        t[i] = b.vertex(Intermediate, format!("t_{i}"));
        b.up(prev, t[i]);
        if i > 1 {
            q[i] = b.vertex(Intermediate, format!("q_{i}"));
            b.up(t[i], q[i]);
            prev = q[i];
        } else {
            b.up(t[1], q1);
        }
    }
    for i in (1..=n).rev() {
        tb[i] = b.vertex(Intermediate, format!("tb_{i}"));
        b.up(if i == n { S } else { q[i + 1] }, tb[i]);
        b.up(tb[i], q[i]);
    }

    // Short.
    let mut c = Vec::new();
    for (i, clause) in f.clauses.iter().enumerate() {
        let mut prev = S;
        let mut row = Vec::new();
        for j in 1..=clause.len() {
            let v = b.vertex(Short, format!("c_{}_{j}", i + 1));
            b.up(prev, v);
            row.push(v);
            prev = v;
        }
        b.up(prev, D);
        c.push(row);
    }

    // Long.
    let top = b.chain(S, 2 * n + 2, Long, "w", format!("w_{}", 2 * n + 2));
    b.up(top, D);

    // Disruptive.
    let mut x = vec![0; n + 1];
    let mut xb = vec![0; n + 1];
    for i in 1..=n {
        x[i] = b.chain(M, 2 * n + 2, Disruptive, &format!("ux_{i}"), format!("x_{i}"));
        b.peer(x[i], t[i]);
        xb[i] = b.chain(M, 2 * n + 2, Disruptive, &format!("uxb_{i}"), format!("xb_{i}"));
        b.peer(xb[i], tb[i]);
    }
    for (i, clause) in f.clauses.iter().enumerate() {
        for (j, &l) in clause.iter().enumerate() {
            let k = l.unsigned_abs() as usize;
            b.up(if l > 0 { x[k] } else { xb[k] }, c[i][j]);
        }
    }
    Ok(b.finish(GadgetMode::Origin))
}

/// Which edge set [`gen_gadget_sbgp_variant`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SbgpVariant {
    /// `t_i` below `j_3`.
    #[default]
    Repaired,
    /// `p_i` below `j_3`. A false variable then hands `j_3` a customer route
    /// through `p_i`, which cuts the Intermediate route, so satisfiable
    /// formulas with a false variable can come out unhijackable. Leaving the
    /// edge out altogether fails differently: `m` can then feed the route it
    /// heard from one variable's `r_i` chain into another variable's chains.
    AsWritten,
}

/// Length of the provider chains from `m` up to `r_i`, `t_i` and `x_i`.
pub const SBGP_CHAIN_LEN: usize = 4;

/// Network in which `m`, limited to re-announcing routes it received, can
/// pull `s`'s traffic iff `f` is satisfiable. Every variable may occur at
/// most three times and positively at most once; clauses have at most three
/// literals and never hold a variable together with its negation (the route
/// standing for "false" would then already pass through the clause chain,
/// and loop detection would block it there).
///
/// * Long: `s, w_1, ..., w_5, d`.
/// * Intermediate: provider chain `s, j_3, j_2, j_1` with `m` below `j_1`.
/// * Short: `s, c_i_1, ..., c_i_k, d` for a clause `i` of `k` literals.
/// * Disruptive: per variable `i`, vertices `r_i, t_i, x_i, p_i, pp_i`
///   (`pp_i` stands for `p'_i`), each of `r_i, t_i, x_i` on top of a provider
///   chain from `m`; `t_i` and `x_i` below `p_i`, `x_i` below `pp_i`, `r_i`
///   and `t_i` below `j_3`, `p_i` below `d`. A negative literal at position `l` of
///   clause `j` adds peer `p_i - c_j_l`; the positive one adds `p_i` and
///   `r_i` below `c_j_l`, `c_j_l` below `j_3`, and peer `pp_i - c_j_l`.
/// * `m` below `d`.
pub fn gen_gadget_sbgp(f: &CnfFormula) -> Result<GadgetInstance, GadgetError> {
    gen_gadget_sbgp_variant(f, SbgpVariant::Repaired)
}

pub fn check_sbgp_constraints(f: &CnfFormula) -> Result<(), GadgetError> {
    check_range(f)?;
    for (i, c) in f.clauses.iter().enumerate() {
        if c.len() > 3 {
            return Err(GadgetError::ClauseTooLong { clause: i + 1, len: c.len() });
        }
        if let Some(&l) = c.iter().find(|&&l| l > 0 && c.contains(&-l)) {
            return Err(GadgetError::Tautology { clause: i + 1, var: l as usize });
        }
    }
    for var in 1..=f.num_vars {
        let all = f.clauses.iter().flatten().filter(|l| l.unsigned_abs() as usize == var).count();
        let pos = f.clauses.iter().flatten().filter(|&&l| l == var as i32).count();
        if pos > 1 {
            return Err(GadgetError::TooManyPositive { var, count: pos });
        }
        if all > 3 {
            return Err(GadgetError::TooManyOccurrences { var, count: all });
        }
    }
    Ok(())
}

pub fn gen_gadget_sbgp_variant(f: &CnfFormula, variant: SbgpVariant) -> Result<GadgetInstance, GadgetError> {
    check_sbgp_constraints(f)?;
    use Structure::*;
    let n = f.num_vars;
    let mut b = Builder::new();

    let w5 = b.chain(S, 5, Long, "w", "w_5".into());
    b.up(w5, D);

    let j3 = b.vertex(Intermediate, "j_3".into());
    let j2 = b.vertex(Intermediate, "j_2".into());
    let j1 = b.vertex(Intermediate, "j_1".into());
    b.up(S, j3);
    b.up(j3, j2);
    b.up(j2, j1);
    b.up(M, j1);

    let mut c = Vec::new();
    for (i, clause) in f.clauses.iter().enumerate() {
        let mut prev = S;
        let mut row = Vec::new();
        for l in 1..=clause.len() {
            let v = b.vertex(Short, format!("c_{}_{l}", i + 1));
            b.up(prev, v);
            row.push(v);
            prev = v;
        }
        b.up(prev, D);
        c.push(row);
    }

    for i in 1..=n {
        let r = b.vertex(Disruptive, format!("r_{i}"));
        let t = b.vertex(Disruptive, format!("t_{i}"));
        let x = b.vertex(Disruptive, format!("x_{i}"));
        let p = b.vertex(Disruptive, format!("p_{i}"));
        let pp = b.vertex(Disruptive, format!("pp_{i}"));
        for (top, name) in [(r, "r"), (t, "t"), (x, "x")] {
            let below = b.chain(M, SBGP_CHAIN_LEN - 1, Disruptive, &format!("u{name}_{i}"), format!("u{name}_{i}_top"));
            b.up(below, top);
        }
        b.up(t, p);
        b.up(x, p);
        b.up(x, pp);
        b.up(r, j3);
        match variant {
            SbgpVariant::Repaired => b.up(t, j3),
            SbgpVariant::AsWritten => b.up(p, j3),
        }
        b.up(p, D);
        for (j, clause) in f.clauses.iter().enumerate() {
            for (l, &lit) in clause.iter().enumerate() {
                if lit.unsigned_abs() as usize != i {
                    continue;
                }
                let cjl = c[j][l];
                if lit < 0 {
                    b.peer(p, cjl);
                } else {
                    b.up(p, cjl);
                    b.up(r, cjl);
                    b.up(cjl, j3);
                    b.peer(pp, cjl);
                }
            }
        }
    }
    b.up(M, D);
    Ok(b.finish(GadgetMode::Sbgp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_valley_free, BgpPath};
    use crate::routing::simulate;

    fn cnf(num_vars: usize, clauses: &[&[i32]]) -> CnfFormula {
        CnfFormula { num_vars, clauses: clauses.iter().map(|c| c.to_vec()).collect() }
    }

    #[test]
    fn dimacs_examples() {
        assert_eq!(parse_dimacs("p cnf 1 1\n1 0").unwrap(), cnf(1, &[&[1]]));
        assert_eq!(parse_dimacs("c hi\np cnf 2 2\n1 2 0\n-1 -2 0\n").unwrap(), cnf(2, &[&[1, 2], &[-1, -2]]));
        assert_eq!(parse_dimacs("p cnf 2 1\n1\n-2 0\n%\n0\n").unwrap(), cnf(2, &[&[1, -2]]));
        assert!(matches!(parse_dimacs("p cnf 1 1\n2 0"), Err(DimacsError::LiteralOutOfRange { literal: 2, .. })));
        assert_eq!(parse_dimacs("p cnf 2 1\n1 2"), Err(DimacsError::UnterminatedClause));
        assert!(matches!(parse_dimacs("p cnf x 1\n1 0"), Err(DimacsError::MalformedHeader { line: 1 })));
        assert_eq!(parse_dimacs("1 0"), Err(DimacsError::MissingHeader));
        assert!(matches!(parse_dimacs("p cnf 1 1\n0"), Err(DimacsError::EmptyClause { .. })));
        assert!(matches!(parse_dimacs("p cnf 1 2\n1 0"), Err(DimacsError::ClauseCount { .. })));
    }

    #[test]
    fn dimacs_round_trip() {
        let f = cnf(3, &[&[1, -2, 3], &[-1, 2, -3]]);
        assert_eq!(parse_dimacs(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn sat_examples() {
        assert_eq!(sat_bruteforce(&cnf(3, &[&[1, 2, 3]])).unwrap(), Some(vec![false, false, true]));
        let mut all = Vec::new();
        for signs in 0..8 {
            all.push((0..3).map(|k| if signs >> k & 1 == 1 { -(k + 1) } else { k + 1 }).collect::<Vec<i32>>());
        }
        assert_eq!(sat_bruteforce(&CnfFormula { num_vars: 3, clauses: all }).unwrap(), None);
        assert_eq!(sat_bruteforce(&cnf(2, &[])).unwrap(), Some(vec![false, false]));
        assert_eq!(sat_bruteforce(&cnf(21, &[])), Err(TooManyVars(21)));
    }

    #[test]
    fn origin_structure_sizes() {
        let g = gen_gadget_origin(&cnf(3, &[&[1, 2, 3]])).unwrap();
        assert!(g.graph.is_valid());
        assert_eq!(g.count(Structure::Short), 3);
        assert_eq!(g.count(Structure::Long), 8);
        assert_eq!(g.count(Structure::Intermediate), 3 * 3);
        assert_eq!(g.count(Structure::Disruptive), 2 * 3 * (2 * 3 + 2));
        let long: Vec<u32> = std::iter::once(S)
            .chain((1..=8).map(|k| g.vertex(&format!("w_{k}")).unwrap().0))
            .chain([D])
            .collect();
        let long = BgpPath::from_ids(&long);
        assert_eq!(long.hops(), 9);
        assert!(is_valley_free(&g.graph, &long).unwrap());
    }

    #[test]
    fn origin_honest_baseline_uses_short() {
        let f = cnf(3, &[&[1, -2, 3], &[-1, 2, 3]]);
        let g = gen_gadget_origin(&f).unwrap();
        let st = simulate(&g.graph, g.d, None).unwrap();
        let sel = st.selected(g.s).unwrap();
        assert_eq!(g.tags[&sel.next_hop().unwrap()], Structure::Short);
        assert_eq!(sel.hops(), 4);
    }

    #[test]
    fn origin_rejects_short_clauses() {
        assert_eq!(
            gen_gadget_origin(&cnf(2, &[&[1, 2]])).unwrap_err(),
            GadgetError::ClauseArity { clause: 1, len: 2 }
        );
    }

    #[test]
    fn generation_is_deterministic() {
        let f = cnf(2, &[&[1, -2, 2], &[-1, -1, 2]]);
        let a = gen_gadget_origin(&f).unwrap();
        let b = gen_gadget_origin(&f).unwrap();
        assert_eq!(a.graph.edges(), b.graph.edges());
        assert_eq!(a.labels, b.labels);
    }

    #[test]
    fn sbgp_constraints() {
        assert_eq!(
            gen_gadget_sbgp(&cnf(1, &[&[-1], &[-1], &[-1], &[-1]])).unwrap_err(),
            GadgetError::TooManyOccurrences { var: 1, count: 4 }
        );
        assert_eq!(
            gen_gadget_sbgp(&cnf(2, &[&[1, 2], &[1]])).unwrap_err(),
            GadgetError::TooManyPositive { var: 1, count: 2 }
        );
        assert_eq!(
            gen_gadget_sbgp(&cnf(1, &[&[-1], &[1, -1]])).unwrap_err(),
            GadgetError::Tautology { clause: 2, var: 1 }
        );
        assert!(gen_gadget_sbgp(&cnf(2, &[&[1, -2], &[-1, 2], &[-1, -2]])).is_ok());
    }

    #[test]
    fn sbgp_structure_and_baseline() {
        let f = cnf(2, &[&[1, -2], &[-1, 2]]);
        let g = gen_gadget_sbgp(&f).unwrap();
        assert!(g.graph.is_valid());
        assert_eq!(g.count(Structure::Long), 5);
        assert_eq!(g.count(Structure::Intermediate), 3);
        assert_eq!(g.count(Structure::Short), 4);
        assert_eq!(g.graph.degree(g.m).unwrap(), 3 * 2 + 2);
        let st = simulate(&g.graph, g.d, None).unwrap();
        let sel = st.selected(g.s).unwrap();
        assert_eq!(g.tags[&sel.next_hop().unwrap()], Structure::Short);
        let as_written = gen_gadget_sbgp_variant(&f, SbgpVariant::AsWritten).unwrap();
        assert_eq!(as_written.graph.edges().len(), g.graph.edges().len());
        assert_ne!(as_written.graph.edges(), g.graph.edges());
    }
}
