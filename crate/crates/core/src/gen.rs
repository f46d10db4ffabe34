//! Seeded random instances: one-clock runs and models, L/U models, two-one
//! automata and runs through them.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, ratio, MPoly, Rational};
use crate::model::{
    ActionId, AtomicConstraint, ClockId, ClockTerm, ConcreteRun, Expr, LocId, Location, ParamDomain, ParamId,
    ParameterValuation, Pta, Rel, SimpleConstraint, StateProperty, SyntacticRun, SystemProperty, TimeDomain,
    TimedStep, Transition, Updates,
};
use crate::transforms::{GuardOnlyRun, GuardStep};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `k` derived from `seed`.
pub fn sub_rng(seed: u64, k: u64) -> GenRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(k);
    r
}

fn rel(rng: &mut GenRng) -> Rel {
    if rng.gen_bool(0.5) {
        Rel::Le
    } else {
        Rel::Lt
    }
}

/// `c + Σ aₖpₖ` with `|c| ≤ max_const` and `aₖ ∈ {−1, 0, 1}`.
fn lin_expr(rng: &mut GenRng, m: usize, max_const: i64, param_prob: f64) -> Expr {
    let c = rng.gen_range(-max_const..=max_const);
    let coeffs: Vec<(ParamId, i64)> = (0..m)
        .filter_map(|k| rng.gen_bool(param_prob).then(|| (ParamId(k), if rng.gen_bool(0.75) { 1 } else { -1 })))
        .collect();
    Expr::linear(c, coeffs)
}

/// An upper (`x ≺ e`) or lower (`x ≻ e`) bound on `x`.
fn bound(x: ClockId, upper: bool, rel: Rel, e: Expr) -> AtomicConstraint {
    if upper {
        AtomicConstraint::new(ClockTerm::clock(x), rel, e)
    } else {
        let neg = e.neg().expect("finite expression");
        AtomicConstraint::new(ClockTerm::minus(x), rel, neg)
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct OneClockRunConfig {
    pub max_len: usize,
    pub max_const: i64,
    pub max_params: usize,
}

impl Default for OneClockRunConfig {
    fn default() -> Self {
        OneClockRunConfig { max_len: 6, max_const: 5, max_params: 2 }
    }
}

/// A guard-only run over one clock `x`, dense time, real parameters.
pub fn one_clock_run(rng: &mut GenRng, cfg: OneClockRunConfig) -> GuardOnlyRun {
    let m = rng.gen_range(0..=cfg.max_params);
    let x = ClockId(0);
    let len = rng.gen_range(1..=cfg.max_len);
    let reset_prob = if rng.gen_bool(0.4) { 0.0 } else { 0.3 };
    let atom = |rng: &mut GenRng| {
        let upper = rng.gen_bool(0.5);
        bound(x, upper, rel(rng), lin_expr(rng, m, cfg.max_const, 0.5))
    };
    let steps = (0..len)
        .map(|_| {
            let n = rng.gen_range(0..=2);
            let guard = SimpleConstraint::of((0..n).map(|_| atom(rng)).collect());
            let mut updates = Updates::new();
            if rng.gen_bool(reset_prob) {
                updates.insert(x, rng.gen_range(0..=cfg.max_const as u64));
            }
            GuardStep { guard, action: ActionId(0), updates, origin: None }
        })
        .collect();
    let initial_condition = if rng.gen_bool(0.2) {
        SimpleConstraint::of(vec![bound(x, false, rel(rng), lin_expr(rng, m, 2, 0.5))])
    } else {
        SimpleConstraint::tt()
    };
    GuardOnlyRun {
        clocks: vec!["x".into()],
        params: names("p", m),
        actions: vec!["a".into()],
        time_domain: TimeDomain::Dense,
        param_domain: ParamDomain::Real,
        initial_condition,
        steps,
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ModelConfig {
    pub clocks: usize,
    pub params: usize,
    pub max_locs: usize,
    pub max_edges: usize,
    pub max_const: i64,
    /// Allow `p² + c` expressions (one parameter only).
    pub polynomial: bool,
    pub time: TimeDomain,
    pub param_domain: ParamDomain,
}

impl ModelConfig {
    pub fn one_clock(params: usize) -> Self {
        ModelConfig {
            clocks: 1,
            params,
            max_locs: 4,
            max_edges: 5,
            max_const: 4,
            polynomial: params == 1,
            time: TimeDomain::Dense,
            param_domain: ParamDomain::Real,
        }
    }
}

fn model_expr(rng: &mut GenRng, cfg: &ModelConfig) -> Expr {
    let m = cfg.params;
    let c = rng.gen_range(-cfg.max_const..=cfg.max_const);
    if m == 0 || rng.gen_bool(0.3) {
        return Expr::constant(c.abs());
    }
    if cfg.polynomial && m == 1 && rng.gen_bool(0.15) {
        let p = MPoly::var(ParamId(0));
        let poly = &(&p * &p) + &MPoly::constant((-c.abs()).into());
        return Expr::from_poly(poly).expect("valid polynomial");
    }
    let k = ParamId(rng.gen_range(0..m));
    let a = if m == 1 { *[1, 1, 1, 2, -1].choose(rng).unwrap() } else { 1 };
    Expr::linear(c, [(k, a)])
}

fn model_atom(rng: &mut GenRng, cfg: &ModelConfig) -> AtomicConstraint {
    let x = ClockId(rng.gen_range(0..cfg.clocks));
    if cfg.clocks > 1 && rng.gen_bool(0.15) {
        let y = ClockId((x.0 + 1) % cfg.clocks);
        return AtomicConstraint::new(ClockTerm::diff(x, y), rel(rng), Expr::constant(rng.gen_range(-2..=2)));
    }
    bound(x, rng.gen_bool(0.5), rel(rng), model_expr(rng, cfg))
}

/// A random automaton; parametric atoms only on clock 0 when there is a
/// single parameter-carrying clock in `cfg`.
pub fn random_model(rng: &mut GenRng, cfg: &ModelConfig) -> Pta {
    let n_locs = rng.gen_range(2..=cfg.max_locs);
    let n_edges = rng.gen_range(2..=cfg.max_edges);
    let locations = (0..n_locs)
        .map(|k| {
            let invariant = if k > 0 && rng.gen_bool(0.3) {
                let x = ClockId(rng.gen_range(0..cfg.clocks));
                SimpleConstraint::of(vec![bound(x, true, rel(rng), model_expr(rng, cfg))])
            } else {
                SimpleConstraint::tt()
            };
            Location { name: format!("q{k}"), invariant }
        })
        .collect();
    let transitions = (0..n_edges)
        .map(|k| {
            // the first edge leaves the initial location
            let source = if k == 0 { LocId(0) } else { LocId(rng.gen_range(0..n_locs)) };
            let target = LocId(rng.gen_range(0..n_locs));
            let n = rng.gen_range(0..=2);
            let guard = SimpleConstraint::of((0..n).map(|_| model_atom(rng, cfg)).collect());
            let mut updates = Updates::new();
            for c in 0..cfg.clocks {
                if rng.gen_bool(0.25) {
                    updates.insert(ClockId(c), rng.gen_range(0..=1));
                }
            }
            Transition { source, guard, action: ActionId(k), updates, target }
        })
        .collect();
    Pta {
        clocks: (0..cfg.clocks).map(|k| ["x", "y", "z"][k].to_string()).collect(),
        params: names("p", cfg.params),
        actions: (0..n_edges).map(|k| format!("a{k}")).collect(),
        locations,
        initial: LocId(0),
        transitions,
        time_domain: cfg.time,
        param_domain: cfg.param_domain,
    }
}

/// `EF`/`AG` over locations and bounds on clock 0.
pub fn random_property(rng: &mut GenRng, pta: &Pta, cfg: &ModelConfig) -> SystemProperty {
    let loc = StateProperty::Loc(LocId(rng.gen_range(0..pta.locations.len())));
    let clock_atom = |rng: &mut GenRng| {
        StateProperty::Atom(bound(ClockId(0), rng.gen_bool(0.5), rel(rng), model_expr(rng, cfg)))
    };
    let phi = match rng.gen_range(0..4) {
        0 => loc,
        1 => StateProperty::and(loc, clock_atom(rng)),
        2 => StateProperty::not(loc),
        _ => StateProperty::or(clock_atom(rng), StateProperty::not(loc)),
    };
    if rng.gen_bool(0.5) {
        SystemProperty::ef(phi)
    } else {
        SystemProperty::ag(phi)
    }
}

/// A syntactic run from the initial location by a random walk of up to
/// `max_len` edges; `None` when the walk is stuck at the start.
pub fn random_path(rng: &mut GenRng, pta: &Pta, max_len: usize) -> Option<SyntacticRun> {
    let len = rng.gen_range(1..=max_len);
    let mut q = pta.initial;
    let mut edges = Vec::new();
    for _ in 0..len {
        let out: Vec<usize> = (0..pta.transitions.len()).filter(|&e| pta.transitions[e].source == q).collect();
        let Some(&e) = out.choose(rng) else { break };
        edges.push(e);
        q = pta.transitions[e].target;
    }
    (!edges.is_empty()).then(|| SyntacticRun::new(edges))
}

/// An L/U model over two clocks: `p1` only in lower bounds, `p2` only in
/// upper bounds, discrete time, natural parameters.
pub fn lu_model(rng: &mut GenRng) -> (Pta, SystemProperty) {
    let cfg = ModelConfig {
        clocks: 2,
        params: 0,
        max_locs: 4,
        max_edges: 5,
        max_const: 3,
        polynomial: false,
        time: TimeDomain::Nat,
        param_domain: ParamDomain::Nat,
    };
    let mut pta = random_model(rng, &cfg);
    pta.params = vec!["l".into(), "u".into()];
    let lu_atom = |rng: &mut GenRng| {
        let x = ClockId(rng.gen_range(0..2));
        let c = rng.gen_range(-2..=2);
        if rng.gen_bool(0.5) {
            bound(x, false, rel(rng), Expr::linear(c, [(ParamId(0), 1)]))
        } else {
            bound(x, true, rel(rng), Expr::linear(c, [(ParamId(1), 1)]))
        }
    };
    for t in pta.transitions.iter_mut() {
        if rng.gen_bool(0.7) {
            t.guard.conjuncts.push(lu_atom(rng));
        }
    }
    for l in pta.locations.iter_mut().skip(1) {
        if rng.gen_bool(0.3) {
            let x = ClockId(rng.gen_range(0..2));
            l.invariant.conjuncts.push(bound(x, true, rel(rng), Expr::linear(rng.gen_range(0..=2), [(ParamId(1), 1)])));
        }
    }
    let loc = StateProperty::Loc(LocId(rng.gen_range(1..pta.locations.len())));
    let phi = if rng.gen_bool(0.4) { StateProperty::and(loc, StateProperty::Atom(lu_atom(rng))) } else { loc };
    (pta, SystemProperty::ef(phi))
}

/// Reset bias of a two-one automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoOneShape {
    /// `x` rarely reset, `y` often.
    XGrows,
    /// `y` rarely reset, `x` often.
    YGrows,
    /// Both rarely reset.
    BothGrow,
}

fn two_one_atom(rng: &mut GenRng, max_const: i64) -> AtomicConstraint {
    let (x, y) = (ClockId(0), ClockId(1));
    let p = Expr::param(ParamId(0));
    let c = Expr::constant(rng.gen_range(0..=max_const));
    let r = rel(rng);
    let term = *[ClockTerm::clock(x), ClockTerm::clock(y), ClockTerm::diff(x, y), ClockTerm::diff(y, x)].choose(rng).unwrap();
    match rng.gen_range(0..4) {
        // t ≺ p
        0 => AtomicConstraint::new(term, r, p),
        // t ≻ p, stored as −t ≺ −p
        1 if !term.is_diagonal() => AtomicConstraint::new(term.negate(), r, p.neg().unwrap()),
        // parameter-free upper bound
        2 => AtomicConstraint::new(term, r, c),
        _ => AtomicConstraint::new(term.negate(), r, c.neg().unwrap()),
    }
}

/// A one-location automaton over `x`, `y`, `p` with 2 to 4 self-loops and
/// true invariants, natural parameters.
pub fn two_one_flower(rng: &mut GenRng, shape: TwoOneShape) -> Pta {
    let (px, py) = match shape {
        TwoOneShape::XGrows => (0.03, 0.6),
        TwoOneShape::YGrows => (0.6, 0.03),
        TwoOneShape::BothGrow => (0.05, 0.05),
    };
    let k = rng.gen_range(2..=4);
    let transitions = (0..k)
        .map(|a| {
            let n = rng.gen_range(0..=2);
            let guard = SimpleConstraint::of((0..n).map(|_| two_one_atom(rng, 2)).collect());
            let mut updates = Updates::new();
            if rng.gen_bool(px) {
                updates.insert(ClockId(0), 0);
            }
            if rng.gen_bool(py) {
                updates.insert(ClockId(1), 0);
            }
            Transition { source: LocId(0), guard, action: ActionId(a), updates, target: LocId(0) }
        })
        .collect();
    Pta {
        clocks: vec!["x".into(), "y".into()],
        params: vec!["p".into()],
        actions: (0..k).map(|a| format!("a{a}")).collect(),
        locations: vec![Location { name: "q".into(), invariant: SimpleConstraint::tt() }],
        initial: LocId(0),
        transitions,
        time_domain: TimeDomain::Dense,
        param_domain: ParamDomain::Nat,
    }
}

/// A run of `pta[γ]` by a random walk: delays mix small halves and jumps of
/// up to `jump`. Stops early when no sampled step is enabled.
pub fn random_walk(rng: &mut GenRng, pta: &Pta, gamma: &ParameterValuation, len: usize, jump: u64) -> ConcreteRun {
    let n = pta.clocks.len();
    let mut q = pta.initial;
    let mut w = vec![Rational::from_integer(0.into()); n];
    let mut steps = Vec::new();
    'walk: for _ in 0..len {
        let out: Vec<usize> = (0..pta.transitions.len()).filter(|&e| pta.transitions[e].source == q).collect();
        if out.is_empty() {
            break;
        }
        for _ in 0..12 {
            let e = *out.choose(rng).unwrap();
            let d = if rng.gen_bool(0.7) { ratio(rng.gen_range(0..=8), 2) } else { rat(rng.gen_range(0..=jump as i64)) };
            let t = &pta.transitions[e];
            let pre: Vec<Rational> = w.iter().map(|v| v + &d).collect();
            let ok = pta.invariant(q).holds(&pre, gamma).unwrap_or(false) && t.guard.holds(&pre, gamma).unwrap_or(false);
            let mut post = pre;
            for (c, b) in &t.updates {
                post[c.0] = rat(*b as i64);
            }
            if ok && pta.invariant(t.target).holds(&post, gamma).unwrap_or(false) {
                steps.push(TimedStep { delay: d, edge: e });
                w = post;
                q = t.target;
                continue 'walk;
            }
        }
        break;
    }
    ConcreteRun::new(steps)
}

/// Shape of a pigeonhole instance: loops at `a` that reset `y` with
/// parameter-free or upper-`p` guards, then one exit edge to `b` carrying a
/// lower-`p` atom.
pub fn pigeonhole_model(rng: &mut GenRng) -> Pta {
    let (x, y) = (ClockId(0), ClockId(1));
    let p = Expr::param(ParamId(0));
    let loops = rng.gen_range(1..=3);
    let mut transitions = Vec::new();
    for a in 0..loops {
        let mut g = Vec::new();
        let c = rng.gen_range(1..=3);
        g.push(AtomicConstraint::new(ClockTerm::clock(y), Rel::Le, Expr::constant(c)));
        if rng.gen_bool(0.3) {
            g.push(AtomicConstraint::new(ClockTerm::minus(y), rel(rng), Expr::constant(-rng.gen_range(0..c))));
        }
        if rng.gen_bool(0.3) {
            let term = *[ClockTerm::clock(x), ClockTerm::diff(x, y)].choose(rng).unwrap();
            g.push(AtomicConstraint::new(term, Rel::Le, p.clone()));
        }
        let mut updates = Updates::new();
        if a == 0 || rng.gen_bool(0.8) {
            updates.insert(y, 0);
        }
        transitions.push(Transition {
            source: LocId(0),
            guard: SimpleConstraint::of(g),
            action: ActionId(a),
            updates,
            target: LocId(0),
        });
    }
    // x ≻ p, y ≻ p, x − y ≻ p or y − x ≻ p
    let term = *[ClockTerm::minus(x), ClockTerm::minus(y), ClockTerm::diff(y, x), ClockTerm::diff(x, y)].choose(rng).unwrap();
    let exit = AtomicConstraint::new(term, rel(rng), p.neg().unwrap());
    let mut g = vec![exit];
    if rng.gen_bool(0.5) {
        g.push(AtomicConstraint::new(ClockTerm::clock(y), Rel::Le, Expr::constant(rng.gen_range(1..=3))));
    }
    transitions.push(Transition {
        source: LocId(0),
        guard: SimpleConstraint::of(g),
        action: ActionId(loops),
        updates: Updates::new(),
        target: LocId(1),
    });
    Pta {
        clocks: vec!["x".into(), "y".into()],
        params: vec!["p".into()],
        actions: (0..=loops).map(|a| format!("a{a}")).collect(),
        locations: vec![
            Location { name: "a".into(), invariant: SimpleConstraint::tt() },
            Location { name: "b".into(), invariant: SimpleConstraint::tt() },
        ],
        initial: LocId(0),
        transitions,
        time_domain: TimeDomain::Nat,
        param_domain: ParamDomain::Nat,
    }
}

/// `n` random loop edges of a pigeonhole model followed by its exit edge.
pub fn pigeonhole_path(rng: &mut GenRng, pta: &Pta, n: usize) -> SyntacticRun {
    let loops = pta.transitions.len() - 1;
    let mut edges: Vec<usize> = (0..n).map(|_| rng.gen_range(0..loops)).collect();
    edges.push(loops);
    SyntacticRun::new(edges)
}

/// Parameter valuations sorted into `(γ, γ')` with `γ'` no larger on lower
/// parameters and no smaller on upper ones.
pub fn lu_pair(rng: &mut GenRng, lo: i64, hi: i64) -> (ParameterValuation, ParameterValuation) {
    let l = rng.gen_range(lo..=hi);
    let u = rng.gen_range(lo..=hi);
    let l2 = rng.gen_range(lo..=l);
    let u2 = rng.gen_range(u..=hi);
    (ParameterValuation::ints(&[l, u]), ParameterValuation::ints(&[l2, u2]))
}

/// Census of how often each value occurs, in key order.
pub fn tally<K: Ord>(items: impl IntoIterator<Item = K>) -> BTreeMap<K, usize> {
    let mut out = BTreeMap::new();
    for k in items {
        *out.entry(k).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::render::render_model;
    use crate::model::parse::parse_model;

    #[test]
    fn seeded_streams_repeat() {
        let a = one_clock_run(&mut rng(7), OneClockRunConfig::default());
        let b = one_clock_run(&mut rng(7), OneClockRunConfig::default());
        assert_eq!(a, b);
        let c = random_model(&mut sub_rng(7, 1), &ModelConfig::one_clock(2));
        let d = random_model(&mut sub_rng(7, 1), &ModelConfig::one_clock(2));
        assert_eq!(c, d);
    }

    #[test]
    fn generated_models_round_trip() {
        let mut r = rng(3);
        for _ in 0..50 {
            let pta = random_model(&mut r, &ModelConfig::one_clock(1));
            pta.validate().unwrap();
            let back = parse_model(&render_model(&pta)).unwrap();
            assert_eq!(render_model(&back), render_model(&pta));
            let (lu, _) = lu_model(&mut r);
            lu.validate().unwrap();
            let two = two_one_flower(&mut r, TwoOneShape::XGrows);
            assert!(crate::two_clock::validate_two_one(&two).is_ok());
            let ph = pigeonhole_model(&mut r);
            assert!(crate::two_clock::validate_two_one(&ph).is_ok());
        }
    }

    #[test]
    fn walks_replay() {
        let mut r = rng(11);
        for _ in 0..30 {
            let pta = two_one_flower(&mut r, TwoOneShape::BothGrow);
            let g = ParameterValuation::ints(&[40]);
            let run = random_walk(&mut r, &pta, &g, 20, 30);
            assert!(crate::semantics::replay_run(&pta, &g, &run));
        }
    }
}
