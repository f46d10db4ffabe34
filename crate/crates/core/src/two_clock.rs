//! Two parametric clocks `x`, `y` and one parameter `p`: atom-form validation,
//! structural run scanners, an exact path check over integer time, and
//! threshold and periodicity probes.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::algebra::{Extended, Rational};
use crate::error::{Error, Result};
use crate::model::metrics::thresholds;
use crate::model::{
    AtomicConstraint, ClockId, ClockTerm, ConcreteRun, Expr, ParamId, ParamPoint, ParameterValuation, Pta,
    Quantifier, Rel, StateProperty, SyntacticRun, SystemProperty, TimeDomain, TimedStep,
};
use crate::semantics::{decide, reach_discrete, replay_run};

#[derive(Clone, Debug)]
pub struct TwoOnePta {
    pub pta: Pta,
    pub x: ClockId,
    pub y: ClockId,
    pub p: ParamId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub place: String,
    pub atom: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violations(pub Vec<Violation>);

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            writeln!(f, "{}: `{}`: {}", v.place, v.atom, v.reason)?;
        }
        Ok(())
    }
}

impl From<Violations> for Error {
    fn from(v: Violations) -> Self {
        Error::Invalid(format!("not a two-one automaton:\n{v}"))
    }
}

/// `±p` exactly.
fn unit_sign(e: &Expr, p: ParamId) -> Option<i64> {
    match e {
        Expr::Linear(l) if l.constant == 0 && l.coeffs.len() == 1 => match l.coeffs.get(&p) {
            Some(&c) if c == 1 || c == -1 => Some(c),
            _ => None,
        },
        _ => None,
    }
}

/// Checks that every parametric atom is `b₁x − b₂y ≺ ±p` over the first two
/// declared clocks.
pub fn validate_two_one(pta: &Pta) -> std::result::Result<TwoOnePta, Violations> {
    let mut out = Vec::new();
    let global = |reason: &str| Violation { place: "model".into(), atom: String::new(), reason: reason.into() };
    if pta.params.len() != 1 {
        out.push(global(&format!("needs exactly one parameter, found {}", pta.params.len())));
    }
    if pta.clocks.len() < 2 {
        out.push(global(&format!("needs two clocks, found {}", pta.clocks.len())));
    }
    if !out.is_empty() {
        return Err(Violations(out));
    }
    let (x, y, p) = (ClockId(0), ClockId(1), ParamId(0));
    let mut places: Vec<(String, &AtomicConstraint)> = Vec::new();
    for l in &pta.locations {
        places.extend(l.invariant.conjuncts.iter().map(|a| (format!("invariant of {}", l.name), a)));
    }
    for (i, t) in pta.transitions.iter().enumerate() {
        places.extend(t.guard.conjuncts.iter().map(|a| (format!("guard of edge {i}"), a)));
    }
    for (place, a) in places {
        if !a.is_parametric() {
            continue;
        }
        let atom = a.render(&pta.clocks, &pta.params);
        let reason = if let Some(z) = a.term.clocks().find(|&c| c != x && c != y) {
            Some(format!("parametric atom on clock `{}`; only `{}` and `{}` may be parametric", pta.clocks[z.0], pta.clocks[0], pta.clocks[1]))
        } else if a.term.is_clock_free() {
            Some("parametric atom without clocks".into())
        } else if !a.rhs.is_linear() {
            Some("polynomial expression".into())
        } else if unit_sign(&a.rhs, p).is_none() {
            Some("right-hand side must be p with coefficient 1".into())
        } else {
            None
        };
        if let Some(reason) = reason {
            out.push(Violation { place, atom, reason });
        }
    }
    if out.is_empty() {
        Ok(TwoOnePta { pta: pta.clone(), x, y, p })
    } else {
        Err(Violations(out))
    }
}

/// Valuations along a run: `omega[k]` after transition `k` (`omega[0]` is the
/// start) and `pre[k]` after the delay that follows it.
#[derive(Clone, Debug)]
pub struct Trace {
    pub omega: Vec<Vec<Rational>>,
    pub pre: Vec<Vec<Rational>>,
    pub edges: Vec<usize>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Replays `run` and records the valuations; errors when it is not a run of `𝒜[γ]`.
pub fn trace_of(pta: &Pta, gamma: &ParameterValuation, run: &ConcreteRun) -> Result<Trace> {
    if !replay_run(pta, gamma, run) {
        return Err(Error::Precondition("trace is not a run of the automaton".into()));
    }
    let n = pta.clocks.len();
    let mut cur = vec![Rational::zero(); n];
    let mut omega = vec![cur.clone()];
    let mut pre = Vec::new();
    for s in &run.steps {
        for v in cur.iter_mut() {
            *v += &s.delay;
        }
        pre.push(cur.clone());
        for (c, b) in &pta.transitions[s.edge].updates {
            cur[c.0] = Rational::from_integer((*b).into());
        }
        omega.push(cur.clone());
    }
    pre.push(cur.iter().map(|v| v + &run.final_delay).collect());
    Ok(Trace { omega, pre, edges: run.steps.iter().map(|s| s.edge).collect() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Lemma {
    #[serde(rename = "oneP3")]
    OneP3,
    #[serde(rename = "oneP4")]
    OneP4,
    #[serde(rename = "oneP5")]
    OneP5,
    #[serde(rename = "oneP6")]
    OneP6,
}

impl Lemma {
    pub fn parse(s: &str) -> Option<Lemma> {
        match s {
            "oneP3" => Some(Lemma::OneP3),
            "oneP4" => Some(Lemma::OneP4),
            "oneP5" => Some(Lemma::OneP5),
            "oneP6" => Some(Lemma::OneP6),
            _ => None,
        }
    }
}

/// Indices into a run together with the clauses they certify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralWitness {
    pub lemma: Lemma,
    pub indices: Vec<usize>,
    pub clauses: Vec<String>,
}

fn resets(pta: &Pta, tr: &Trace, k: usize, c: ClockId) -> bool {
    pta.transitions[tr.edges[k - 1]].updates.contains_key(&c)
}

fn guard<'a>(pta: &'a Pta, tr: &Trace, k: usize) -> &'a [AtomicConstraint] {
    &pta.transitions[tr.edges[k - 1]].guard.conjuncts
}

/// `c ≺ e` with a parameter-free `e`.
fn is_const_upper(a: &AtomicConstraint, c: ClockId) -> bool {
    a.term == ClockTerm::clock(c) && a.rhs.is_param_free() && !a.rhs.is_infinity()
}

fn s(k: u64) -> Rational {
    Rational::from_integer(k.into())
}

/// Clause checks of the threshold-crossing lemmas for clock `a` growing away
/// from `b`.
fn crossing_clauses(pta: &Pta, tr: &Trace, s0: u64, a: ClockId, b: ClockId, i: usize, j: usize) -> bool {
    let l = tr.len();
    let w = |k: usize, c: ClockId| &tr.omega[k][c.0];
    i <= j
        && j < l
        && *w(i, a) < s(s0)
        && *w(i + 1, a) >= s(s0)
        && *w(j, a) < s(3 * s0)
        && *w(j + 1, a) >= s(3 * s0)
        && (i + 1..=l).any(|k| resets(pta, tr, k, b))
        && (i + 1..=l).all(|k| !resets(pta, tr, k, a))
        && (i + 1..=l).all(|k| guard(pta, tr, k).iter().all(|g| !is_const_upper(g, a)))
}

fn crossing_names(a: &str, b: &str) -> Vec<String> {
    vec![
        format!("w_i({a}) < S0 <= w_(i+1)({a})"),
        format!("w_j({a}) < 3S0 <= w_(j+1)({a})"),
        format!("{b} is reset in some u_k, k in (i, l]"),
        format!("{a} is not reset in u_k, k in (i, l]"),
        format!("no guard {a} < c in g_k, k in (i, l]"),
    ]
}

/// Last index `k < l` with `omega[k](c) < bound`.
fn last_below(tr: &Trace, c: ClockId, bound: &Rational) -> Option<usize> {
    (0..tr.len()).rev().find(|&k| &tr.omega[k][c.0] < bound)
}

fn find_crossing(pta: &Pta, tr: &Trace, s0: u64, s1: u64, a: ClockId, b: ClockId, lemma: Lemma) -> Option<StructuralWitness> {
    let l = tr.len();
    if l == 0 || tr.omega[l][a.0].clone() - &tr.omega[l][b.0] < s(s1) {
        return None;
    }
    let proof = last_below(tr, a, &s(s0)).zip(last_below(tr, a, &s(3 * s0)));
    let pair = proof
        .filter(|&(i, j)| crossing_clauses(pta, tr, s0, a, b, i, j))
        .or_else(|| {
            (0..l).flat_map(|i| (i..l).map(move |j| (i, j))).find(|&(i, j)| crossing_clauses(pta, tr, s0, a, b, i, j))
        })?;
    let names = crossing_names(&pta.clocks[a.0], &pta.clocks[b.0]);
    Some(StructuralWitness { lemma, indices: vec![pair.0, pair.1], clauses: names })
}

/// Indices `i ≤ j` for a run ending with `x − y ≥ S₁`.
pub fn find_onep3_indices(two: &TwoOnePta, tr: &Trace, s0: u64) -> Option<StructuralWitness> {
    find_crossing(&two.pta, tr, s0, 4 * s0, two.x, two.y, Lemma::OneP3)
}

/// The symmetric case `y − x ≥ S₁`.
pub fn find_onep5_indices(two: &TwoOnePta, tr: &Trace, s0: u64) -> Option<StructuralWitness> {
    find_crossing(&two.pta, tr, s0, 4 * s0, two.y, two.x, Lemma::OneP5)
}

fn onep6_clauses(two: &TwoOnePta, tr: &Trace, s0: u64, i: usize) -> bool {
    let (pta, x, y) = (&two.pta, two.x, two.y);
    let l = tr.len();
    i < l
        && tr.omega[i + 1][x.0] >= s(3 * s0)
        && tr.omega[i + 1][y.0] >= s(3 * s0)
        && (i + 1..=l).all(|k| !resets(pta, tr, k, x) && !resets(pta, tr, k, y))
        && (i + 1..=l).all(|k| guard(pta, tr, k).iter().all(|g| !is_const_upper(g, x) && !is_const_upper(g, y)))
}

/// Index `i` for a run ending with both clocks at least `S₁`.
pub fn find_onep6_index(two: &TwoOnePta, tr: &Trace, s0: u64) -> Option<StructuralWitness> {
    let l = tr.len();
    let s1 = s(4 * s0);
    if l == 0 || tr.omega[l][two.x.0] < s1 || tr.omega[l][two.y.0] < s1 {
        return None;
    }
    let proof = last_below(tr, two.x, &s(3 * s0)).zip(last_below(tr, two.y, &s(3 * s0))).map(|(a, b)| a.max(b));
    let i = proof.filter(|&i| onep6_clauses(two, tr, s0, i)).or_else(|| (0..l).find(|&i| onep6_clauses(two, tr, s0, i)))?;
    let (xn, yn) = (&two.pta.clocks[two.x.0], &two.pta.clocks[two.y.0]);
    Some(StructuralWitness {
        lemma: Lemma::OneP6,
        indices: vec![i],
        clauses: vec![
            format!("w_(i+1)({xn}) >= 3S0 and w_(i+1)({yn}) >= 3S0"),
            format!("no reset of {xn} or {yn} in u_k, k in (i, l]"),
            format!("no guard {xn} < c or {yn} < c in g_k, k in (i, l]"),
        ],
    })
}

/// `t ≻ p` for `t` among `x`, `y`, `x − y`, `y − x` (stored as `−t ≺ −p`).
fn is_lower_p(a: &AtomicConstraint, two: &TwoOnePta) -> bool {
    let (x, y) = (two.x, two.y);
    unit_sign(&a.rhs, two.p) == Some(-1)
        && [ClockTerm::minus(x), ClockTerm::minus(y), ClockTerm::diff(y, x), ClockTerm::diff(x, y)].contains(&a.term)
}

fn pigeonhole_clauses(two: &TwoOnePta, tr: &Trace, i: usize, j: usize) -> bool {
    1 <= i
        && i < j
        && j <= tr.len()
        && tr.edges[i - 1] == tr.edges[j - 1]
        && resets(&two.pta, tr, i, two.y)
        && tr.omega[j][two.x.0] > tr.omega[i][two.x.0]
        && (i + 1..=j).all(|k| guard(&two.pta, tr, k).iter().all(|g| !is_lower_p(g, two)))
}

/// Least `i < j` taking the same transition, with `y` reset at `i`, `x`
/// strictly larger at `j`, and no lower-bound atom `· ≻ p` on `(i, j]`.
pub fn find_pigeonhole_pair(two: &TwoOnePta, tr: &Trace) -> Option<StructuralWitness> {
    let l = tr.len();
    let (i, j) = (1..=l).flat_map(|i| (i + 1..=l).map(move |j| (i, j))).find(|&(i, j)| pigeonhole_clauses(two, tr, i, j))?;
    let (xn, yn) = (&two.pta.clocks[two.x.0], &two.pta.clocks[two.y.0]);
    Some(StructuralWitness {
        lemma: Lemma::OneP4,
        indices: vec![i, j],
        clauses: vec![
            "a_i = a_j".into(),
            format!("u_i resets {yn}"),
            format!("w_j({xn}) - w_i({xn}) > 0"),
            format!("no {xn} > p, {xn} - {yn} > p, {yn} > p, {yn} - {xn} > p in g_k, k in (i, j]"),
        ],
    })
}

/// Re-checks every clause of a witness directly against the run.
pub fn revalidate(two: &TwoOnePta, tr: &Trace, s0: u64, w: &StructuralWitness) -> bool {
    let pta = &two.pta;
    let l = tr.len();
    let at = |k: usize, c: ClockId| tr.omega[k][c.0].clone();
    let no_const_upper = |from: usize, to: usize, cs: &[ClockId]| {
        (from..=to).all(|k| {
            pta.transitions[tr.edges[k - 1]].guard.conjuncts.iter().all(|g| {
                !(g.term.neg.is_none()
                    && g.term.pos.is_some_and(|c| cs.contains(&c))
                    && g.rhs.params().is_empty()
                    && !g.rhs.is_infinity())
            })
        })
    };
    let reset_in = |from: usize, to: usize, c: ClockId| {
        (from..=to).any(|k| pta.transitions[tr.edges[k - 1]].updates.contains_key(&c))
    };
    let (s0r, s3) = (s(s0), s(3 * s0));
    match (w.lemma, w.indices.as_slice()) {
        (Lemma::OneP3 | Lemma::OneP5, &[i, j]) => {
            let (a, b) = if w.lemma == Lemma::OneP3 { (two.x, two.y) } else { (two.y, two.x) };
            i <= j
                && j < l
                && at(i, a) < s0r
                && at(i + 1, a) >= s0r
                && at(j, a) < s3
                && at(j + 1, a) >= s3
                && reset_in(i + 1, l, b)
                && !reset_in(i + 1, l, a)
                && no_const_upper(i + 1, l, &[a])
        }
        (Lemma::OneP6, &[i]) => {
            i < l
                && at(i + 1, two.x) >= s3
                && at(i + 1, two.y) >= s3
                && !reset_in(i + 1, l, two.x)
                && !reset_in(i + 1, l, two.y)
                && no_const_upper(i + 1, l, &[two.x, two.y])
        }
        (Lemma::OneP4, &[i, j]) => {
            let lower_p = |g: &AtomicConstraint| {
                let minus_p = matches!(&g.rhs, Expr::Linear(e) if e.constant == 0 && e.coeffs.len() == 1 && e.coeffs.get(&two.p) == Some(&-1));
                minus_p && g.term.neg.is_some_and(|c| c == two.x || c == two.y) && g.term.pos.map_or(true, |c| c == two.x || c == two.y)
            };
            i >= 1
                && i < j
                && j <= l
                && tr.edges[i - 1] == tr.edges[j - 1]
                && reset_in(i, i, two.y)
                && at(j, two.x) > at(i, two.x)
                && (i + 1..=j).all(|k| pta.transitions[tr.edges[k - 1]].guard.conjuncts.iter().all(|g| !lower_p(g)))
        }
        _ => false,
    }
}

/// Clock value `T_now − T_node + offset` as a difference over firing times.
#[derive(Clone, Copy)]
struct Since {
    node: usize,
    offset: i64,
}

/// Largest integer `v` with `v ≺ e`.
fn int_bound(rel: Rel, e: &Rational) -> Option<i64> {
    match rel {
        Rel::Le => e.floor().to_integer().to_i64(),
        Rel::Lt => (e.ceil().to_integer() - num_bigint::BigInt::from(1)).to_i64(),
    }
}

struct Dbm {
    nodes: usize,
    /// `T_to − T_from ≤ w` as `(from, to, w)`.
    edges: Vec<(usize, usize, i64)>,
    ok: bool,
}

impl Dbm {
    fn atom(&mut self, a: &AtomicConstraint, hist: &[Since], now: usize, gamma: &ParameterValuation) -> Result<()> {
        let Extended::Finite(e) = a.rhs.evaluate(gamma)? else {
            return Ok(());
        };
        let bound = int_bound(a.rel, &e).ok_or_else(|| Error::Unsupported("bound out of range".into()))?;
        // term = Σ coeff·T + constant
        let mut coeff = std::collections::BTreeMap::<usize, i64>::new();
        let mut constant = 0i64;
        if let Some(c) = a.term.pos {
            *coeff.entry(now).or_default() += 1;
            *coeff.entry(hist[c.0].node).or_default() -= 1;
            constant += hist[c.0].offset;
        }
        if let Some(c) = a.term.neg {
            *coeff.entry(now).or_default() -= 1;
            *coeff.entry(hist[c.0].node).or_default() += 1;
            constant -= hist[c.0].offset;
        }
        coeff.retain(|_, v| *v != 0);
        let w = bound - constant;
        let plus = coeff.iter().find(|(_, v)| **v == 1).map(|(k, _)| *k);
        let minus = coeff.iter().find(|(_, v)| **v == -1).map(|(k, _)| *k);
        match (plus, minus) {
            (None, None) => self.ok &= w >= 0,
            (Some(u), Some(v)) => self.edges.push((v, u, w)),
            // a single firing time appears only against T_0 = 0 offsets, never here
            _ => unreachable!("clock terms always pair a firing time with a reset time"),
        }
        Ok(())
    }

    /// Bellman–Ford from a virtual source; `None` on a negative cycle.
    fn solve(&self) -> Option<Vec<i64>> {
        if !self.ok {
            return None;
        }
        let mut dist = vec![0i64; self.nodes];
        for _ in 0..=self.nodes {
            let mut changed = false;
            for &(from, to, w) in &self.edges {
                if dist[from] + w < dist[to] {
                    dist[to] = dist[from] + w;
                    changed = true;
                }
            }
            if !changed {
                let base = dist[0];
                return Some(dist.into_iter().map(|d| d - base).collect());
            }
        }
        None
    }
}

/// An integer-time realization of the transition sequence `edges` in `𝒜[γ]`
/// (invariants included), or `None`. Exact: the constraints on firing times
/// are difference constraints with integer bounds.
pub fn path_run(pta: &Pta, edges: &[usize], gamma: &ParameterValuation) -> Result<Option<ConcreteRun>> {
    let l = edges.len();
    let mut dbm = Dbm { nodes: l + 1, edges: Vec::new(), ok: true };
    let mut hist = vec![Since { node: 0, offset: 0 }; pta.clocks.len()];
    let mut q = pta.initial;
    for c in &pta.invariant(q).conjuncts {
        dbm.atom(c, &hist, 0, gamma)?;
    }
    for (k, &e) in edges.iter().enumerate() {
        let t = &pta.transitions[e];
        if t.source != q {
            return Err(Error::Invalid(format!("edge {e} does not leave location {}", pta.locations[q.0].name)));
        }
        let now = k + 1;
        dbm.edges.push((now, k, 0));
        for c in pta.invariant(q).conjuncts.iter().chain(&t.guard.conjuncts) {
            dbm.atom(c, &hist, now, gamma)?;
        }
        for (c, b) in &t.updates {
            hist[c.0] = Since { node: now, offset: *b as i64 };
        }
        q = t.target;
        for c in &pta.invariant(q).conjuncts {
            dbm.atom(c, &hist, now, gamma)?;
        }
    }
    Ok(dbm.solve().map(|times| {
        ConcreteRun::new(
            edges
                .iter()
                .enumerate()
                .map(|(k, &e)| TimedStep { delay: Rational::from_integer((times[k + 1] - times[k]).into()), edge: e })
                .collect(),
        )
    }))
}

fn gamma_of(v: u64) -> ParameterValuation {
    ParameterValuation(vec![Rational::from_integer(v.into())])
}

/// Hypotheses of the pigeonhole lemma for a run `ξ` of `τ[γ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PigeonholePremises {
    pub gamma_at_least_s1: bool,
    /// `R(𝒜_τ[γ+1]) = ∅`.
    pub infeasible_at_next: bool,
    /// `ω'_i ⊨ g_{i+1}[γ+1]` for `i = 0..ℓ−2`.
    pub prefix_guards_at_next: bool,
    /// The same prefix guards at `γ` (always true for a run).
    pub prefix_guards_at_gamma: bool,
}

impl PigeonholePremises {
    pub fn all(&self) -> bool {
        self.gamma_at_least_s1 && self.infeasible_at_next && self.prefix_guards_at_next
    }
}

pub fn pigeonhole_premises(two: &TwoOnePta, tr: &Trace, gamma: u64, s1: u64) -> Result<PigeonholePremises> {
    let pta = &two.pta;
    let next = gamma_of(gamma + 1);
    let cur = gamma_of(gamma);
    let l = tr.len();
    let prefix = |g: &ParameterValuation| -> Result<bool> {
        for i in 0..l.saturating_sub(1) {
            if !pta.transitions[tr.edges[i]].guard.holds(&tr.pre[i], g)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(PigeonholePremises {
        gamma_at_least_s1: gamma >= s1,
        infeasible_at_next: path_run(pta, &tr.edges, &next)?.is_none(),
        prefix_guards_at_next: prefix(&next)?,
        prefix_guards_at_gamma: prefix(&cur)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdReport {
    pub s0: u64,
    pub s1: u64,
    /// A guard `x − y ≻ p` or `y − x ≻ p` falls outside the lemma's premise.
    pub premise_violation: Option<String>,
    pub samples: Vec<(u64, bool)>,
    pub all_equal: bool,
    /// Replay of the witness with values above `S₁` clamped to `S₁ − 1`, per sample.
    pub clamped_replays: Option<Vec<(u64, bool)>>,
}

/// Checks that feasibility of a reset-free run is the same at
/// `T ∈ {S₁, S₁+1, S₁+7, 2S₁}`.
pub fn no_reset_threshold_check(two: &TwoOnePta, tau: &SyntacticRun) -> Result<ThresholdReport> {
    let pta = &two.pta;
    tau.validate(pta)?;
    if tau.edges.iter().any(|&e| !pta.transitions[e].updates.is_empty()) {
        return Err(Error::Precondition("the run resets a clock".into()));
    }
    let psi = SystemProperty { quantifier: Quantifier::ExistsEventually, phi: StateProperty::True };
    let (s0, s1) = thresholds(pta, &psi)?;
    let premise_violation = tau.edges.iter().find_map(|&e| {
        pta.transitions[e].guard.conjuncts.iter().find(|a| a.term.is_diagonal() && unit_sign(&a.rhs, two.p) == Some(-1)).map(|a| {
            format!("edge {e}: {}", a.render(&pta.clocks, &pta.params))
        })
    });
    let automaton = tau.automaton(pta);
    let goal = StateProperty::Loc(crate::model::LocId(tau.len()));
    let ts = [s1, s1 + 1, s1 + 7, 2 * s1];
    let mut samples = Vec::new();
    let mut witness = None;
    for &t in &ts {
        let v = reach_discrete(&automaton, &gamma_of(t), &goal)?;
        if witness.is_none() && v.reachable {
            witness = v.witness.clone();
        }
        samples.push((t, v.reachable));
    }
    let all_equal = samples.iter().all(|(_, v)| *v == samples[0].1);
    let clamped_replays = witness.map(|w| {
        let clamped = clamp_run(&w, s1);
        ts.iter().map(|&t| (t, replay_run(&automaton, &gamma_of(t), &clamped))).collect()
    });
    Ok(ThresholdReport { s0, s1, premise_violation, samples, all_equal, clamped_replays })
}

/// Elapsed times above `S₁` replaced by `S₁ − 1` (a reset-free run keeps `x = y = elapsed`).
fn clamp_run(run: &ConcreteRun, s1: u64) -> ConcreteRun {
    let cap = Rational::from_integer((s1 as i64 - 1).into());
    let lim = Rational::from_integer(s1.into());
    let mut elapsed = Rational::zero();
    let mut prev = Rational::zero();
    let mut steps = Vec::new();
    for st in &run.steps {
        elapsed += &st.delay;
        let v = if elapsed > lim { cap.clone() } else { elapsed.clone() };
        let v = if v < prev { prev.clone() } else { v };
        steps.push(TimedStep { delay: &v - &prev, edge: st.edge });
        prev = v;
    }
    ConcreteRun::new(steps)
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodicityReport {
    pub label: &'static str,
    pub s0: u64,
    pub s1: u64,
    pub horizon: u64,
    /// Verdict for `p = 0..=horizon`.
    pub verdicts: Vec<bool>,
    /// Least `T₁ ∈ [S₁, S₁+S₀]`, then least `c ≤ S₀`, with `v(p) = v(p + c)`
    /// for all `T₁ ≤ p`, `p + c ≤ horizon`.
    pub period: Option<(u64, u64)>,
    /// Some `T ≥ S₁` in the sweep satisfies the property.
    pub premise: bool,
    /// Least `(T₁, c)` with `v(T₁ + kc)` true throughout the sweep.
    pub progression: Option<(u64, u64)>,
    /// First window where no candidate fits, when one is missing.
    pub counterexample: Option<String>,
}

/// Sweeps `p` over `[0, S₁ + horizon_mult·S₀]` with discrete-time checks and
/// looks for an eventually periodic verdict pattern. EXPERIMENTAL.
pub fn periodicity_probe(two: &TwoOnePta, psi: &SystemProperty, horizon_mult: u64) -> Result<PeriodicityReport> {
    let pta = &two.pta;
    let (s0, s1) = thresholds(pta, psi)?;
    let horizon = s1 + horizon_mult.max(1) * s0;
    let verdicts: Vec<bool> = (0..=horizon)
        .into_par_iter()
        .map(|v| decide(pta, &ParamPoint::Rational(gamma_of(v)), psi, TimeDomain::Nat))
        .collect::<Result<_>>()?;
    let v = |p: u64| verdicts[p as usize];
    let mut period = None;
    'outer: for t1 in s1..=s1 + s0 {
        for c in 1..=s0 {
            if (t1..=horizon.saturating_sub(c)).all(|p| v(p) == v(p + c)) {
                period = Some((t1, c));
                break 'outer;
            }
        }
    }
    let premise = (s1..=horizon).any(v);
    let mut progression = None;
    'prog: for t1 in s1..=s1 + s0 {
        for c in 1..=s0 {
            if (0..).map(|k| t1 + k * c).take_while(|&p| p <= horizon).all(v) {
                progression = Some((t1, c));
                break 'prog;
            }
        }
    }
    let counterexample = match (period, premise && progression.is_none()) {
        (None, _) => Some(format!("no period c <= {s0} fits the verdicts on [{s1}, {horizon}]")),
        (_, true) => Some(format!("no progression T1 + kc in [{s1}, {}] stays true up to {horizon}", s1 + s0)),
        _ => None,
    };
    Ok(PeriodicityReport {
        label: "EXPERIMENTAL",
        s0,
        s1,
        horizon,
        verdicts,
        period,
        premise,
        progression,
        counterexample,
    })
}

/// Parses `{"gamma": v, "steps": [{"delay": d, "edge": e}, ...], "final_delay": d?}`;
/// numbers may be JSON integers or `"a/b"` strings.
pub fn parse_trace(text: &str) -> Result<(ParameterValuation, ConcreteRun)> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("trace: {e}")))?;
    let num = |x: &Value| -> Result<Rational> {
        match x {
            Value::Number(n) => n
                .as_i64()
                .map(|k| Rational::from_integer(k.into()))
                .ok_or_else(|| Error::Invalid(format!("trace: non-integer number {n}"))),
            Value::String(s) => crate::algebra::parse_rational(s).ok_or_else(|| Error::Invalid(format!("trace: bad number `{s}`"))),
            other => Err(Error::Invalid(format!("trace: expected a number, found {other}"))),
        }
    };
    let gamma = match &v["gamma"] {
        Value::Array(xs) => ParameterValuation(xs.iter().map(num).collect::<Result<_>>()?),
        Value::Null => return Err(Error::Invalid("trace: missing `gamma`".into())),
        x => ParameterValuation(vec![num(x)?]),
    };
    let steps = v["steps"]
        .as_array()
        .ok_or_else(|| Error::Invalid("trace: missing `steps`".into()))?
        .iter()
        .map(|s| {
            let edge = s["edge"].as_u64().ok_or_else(|| Error::Invalid("trace: step without `edge`".into()))?;
            Ok(TimedStep { delay: num(&s["delay"])?, edge: edge as usize })
        })
        .collect::<Result<Vec<_>>>()?;
    let final_delay = if v["final_delay"].is_null() { Rational::zero() } else { num(&v["final_delay"])? };
    Ok((gamma, ConcreteRun { steps, final_delay }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::model::parse::{parse_model, parse_property};

    fn run(steps: &[(i64, usize)]) -> ConcreteRun {
        ConcreteRun::new(steps.iter().map(|&(d, e)| TimedStep { delay: rat(d), edge: e }).collect())
    }

    #[test]
    fn table_forms() {
        let ok = parse_model("clocks: x, y\nparams: p\nloc a init inv: true\nedge a -> a : x - y < p ; t ;").unwrap();
        assert!(validate_two_one(&ok).is_ok());
        let lower = parse_model("clocks: x, y\nparams: p\nloc a init inv: true\nedge a -> a : y - x > p & x >= p ; t ;").unwrap();
        assert!(validate_two_one(&lower).is_ok());
        let coef = parse_model("clocks: x, y\nparams: p\nloc a init inv: true\nedge a -> a : x <= 2p ; t ;").unwrap();
        let err = validate_two_one(&coef).unwrap_err();
        assert!(err.0[0].reason.contains("coefficient"));
        let third = parse_model("clocks: x, y, z\nparams: p\nloc a init inv: true\nedge a -> a : z <= p ; t ;").unwrap();
        let err = validate_two_one(&third).unwrap_err();
        assert!(err.0[0].reason.contains("`z`"));
    }

    #[test]
    fn onep3_threshold_scan() {
        // x never reset, y reset on the third edge; x values 0,5,20,40,60
        let pta = parse_model(
            "clocks: x, y\nparams: p\nloc a init inv: true\nedge a -> a : true ; s ;\nedge a -> a : true ; r ; reset y:=0",
        )
        .unwrap();
        let two = validate_two_one(&pta).unwrap();
        let xi = run(&[(5, 0), (15, 0), (20, 1), (20, 0)]);
        let tr = trace_of(&pta, &gamma_of(0), &xi).unwrap();
        let xs: Vec<i64> = tr.omega.iter().map(|w| w[0].to_integer().try_into().unwrap()).collect();
        assert_eq!(xs, vec![0, 5, 20, 40, 60]);
        // x - y at the end is 60 - 20 = 40 < S1 = 68
        assert!(find_onep3_indices(&two, &tr, 17).is_none());
        let w = find_onep3_indices(&two, &tr, 10).unwrap();
        assert!(revalidate(&two, &tr, 10, &w));
        // y reset last: x values 0,5,20,40,60,70 and x - y = 70 >= 68
        let xi = run(&[(5, 0), (15, 0), (20, 0), (20, 0), (10, 1)]);
        let tr = trace_of(&pta, &gamma_of(0), &xi).unwrap();
        let w = find_onep3_indices(&two, &tr, 17).unwrap();
        assert_eq!(w.indices, vec![1, 3]);
        assert!(revalidate(&two, &tr, 17, &w));
    }

    #[test]
    fn onep6_and_onep5() {
        let pta = parse_model("clocks: x, y\nparams: p\nloc a init inv: true\nedge a -> a : true ; s ;\nedge a -> a : true ; r ; reset x:=0").unwrap();
        let two = validate_two_one(&pta).unwrap();
        let tr = trace_of(&pta, &gamma_of(0), &run(&[(3, 0), (50, 0)])).unwrap();
        let w = find_onep6_index(&two, &tr, 5).unwrap();
        assert_eq!(w.indices, vec![1]);
        assert!(revalidate(&two, &tr, 5, &w));
        let tr = trace_of(&pta, &gamma_of(0), &run(&[(3, 0), (10, 1), (40, 0)])).unwrap();
        let w = find_onep5_indices(&two, &tr, 2).unwrap();
        assert!(revalidate(&two, &tr, 2, &w));
        assert!(find_onep3_indices(&two, &tr, 2).is_none());
    }

    #[test]
    fn pigeonhole_loop() {
        let pta = parse_model(
            "clocks: x, y\nparams: p\nloc a init inv: true\nloc b inv: true\nedge a -> a : y <= 2 ; loop ; reset y:=0\nedge a -> b : x - y >= p ; out ;",
        )
        .unwrap();
        let two = validate_two_one(&pta).unwrap();
        let tr = trace_of(&pta, &gamma_of(4), &run(&[(2, 0), (2, 0), (0, 1)])).unwrap();
        let w = find_pigeonhole_pair(&two, &tr).unwrap();
        assert_eq!(w.indices, vec![1, 2]);
        assert!(revalidate(&two, &tr, 1, &w));
        let flat = parse_model("clocks: x, y\nparams: p\nloc a init inv: true\nedge a -> a : true ; s ;").unwrap();
        let two = validate_two_one(&flat).unwrap();
        let tr = trace_of(&flat, &gamma_of(0), &run(&[(1, 0), (1, 0)])).unwrap();
        assert!(find_pigeonhole_pair(&two, &tr).is_none());
    }

    #[test]
    fn pigeonhole_premises_on_tight_loop() {
        let pta = parse_model(
            "clocks: x, y\nparams: p\nloc a init inv: true\nloc b inv: true\nedge a -> a : y <= 2 ; loop ; reset y:=0\nedge a -> b : x - y >= p ; out ;",
        )
        .unwrap();
        let two = validate_two_one(&pta).unwrap();
        let tr = trace_of(&pta, &gamma_of(4), &run(&[(2, 0), (2, 0), (0, 1)])).unwrap();
        let prem = pigeonhole_premises(&two, &tr, 4, 0).unwrap();
        assert!(prem.infeasible_at_next && prem.prefix_guards_at_next && prem.all());
    }

    #[test]
    fn path_check_matches_replay() {
        let pta = parse_model(
            "clocks: x, y\nparams: p\nloc a init inv: x <= p\nloc b inv: y <= 3\nedge a -> b : x >= 2 ; s ; reset y:=1\nedge b -> a : x - y > 1 ; t ; reset x:=0",
        )
        .unwrap();
        for p in 0..6 {
            let g = gamma_of(p);
            let r = path_run(&pta, &[0, 1, 0], &g).unwrap();
            let reach = reach_discrete(&SyntacticRun::new(vec![0, 1, 0]).automaton(&pta), &g, &StateProperty::Loc(crate::model::LocId(3))).unwrap();
            assert_eq!(r.is_some(), reach.reachable, "p={p}");
            if let Some(r) = r {
                assert!(replay_run(&pta, &g, &r));
            }
        }
    }

    #[test]
    fn threshold_check() {
        let pta = parse_model("clocks: x, y\nparams: p\nloc a init inv: true\nloc b inv: true\nedge a -> b : x <= p & y >= 2 ; s ;").unwrap();
        let two = validate_two_one(&pta).unwrap();
        let r = no_reset_threshold_check(&two, &SyntacticRun::new(vec![0])).unwrap();
        assert!(r.all_equal && r.samples.iter().all(|s| s.1));
        assert!(r.clamped_replays.unwrap().iter().all(|s| s.1));
        assert!(r.premise_violation.is_none());
        let diag = parse_model("clocks: x, y\nparams: p\nloc a init inv: true\nloc b inv: true\nedge a -> b : x - y >= p ; s ;").unwrap();
        let two = validate_two_one(&diag).unwrap();
        let r = no_reset_threshold_check(&two, &SyntacticRun::new(vec![0])).unwrap();
        assert!(r.premise_violation.is_some());
        let reset = parse_model("clocks: x, y\nparams: p\nloc a init inv: true\nedge a -> a : true ; s ; reset x:=0").unwrap();
        let two = validate_two_one(&reset).unwrap();
        assert!(matches!(no_reset_threshold_check(&two, &SyntacticRun::new(vec![0])), Err(Error::Precondition(_))));
    }

    #[test]
    fn probe_examples() {
        let pta = parse_model(
            "clocks: x, y\nparams: p\ndomain: time=nat param=nat\nloc q0 init inv: x <= 3\nloc q1 inv: true\nedge q0 -> q1 : x > p ; go ;",
        )
        .unwrap();
        let two = validate_two_one(&pta).unwrap();
        let psi = parse_property("EF q1", &pta).unwrap();
        let r = periodicity_probe(&two, &psi, 3).unwrap();
        assert_eq!(r.period, Some((r.s1, 1)));
        assert!(!r.premise);
        assert!(r.verdicts[..3].iter().all(|v| *v) && !r.verdicts[3]);
        let free = parse_model("clocks: x, y\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x >= 1 ; go ;").unwrap();
        let two = validate_two_one(&free).unwrap();
        let r = periodicity_probe(&two, &parse_property("EF q1", &free).unwrap(), 3).unwrap();
        assert_eq!(r.period, Some((r.s1, 1)));
        assert_eq!(r.progression, Some((r.s1, 1)));
        let a = periodicity_probe(&two, &parse_property("EF q1", &free).unwrap(), 3).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&r).unwrap());
    }

    #[test]
    fn trace_files() {
        let (g, r) = parse_trace(r#"{"gamma": 40, "steps": [{"delay": 5, "edge": 0}, {"delay": "1/2", "edge": 1}]}"#).unwrap();
        assert_eq!(g, gamma_of(40));
        assert_eq!(r.steps.len(), 2);
        assert_eq!(r.steps[1].delay, crate::algebra::ratio(1, 2));
        assert!(parse_trace("{}").is_err());
    }
}
