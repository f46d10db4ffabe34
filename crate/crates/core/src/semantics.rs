//! Concrete semantics under a parameter valuation: run replay, discrete-time
//! reachability over capped clocks, dense one-clock region reachability and
//! a per-valuation oracle.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{is_integer, Extended, Rational, Real};
use crate::error::{Error, Result};
use crate::model::{
    AtomicConstraint, ClockId, ClockTerm, ConcreteRun, LocId, ParamPoint, ParameterValuation, Pta, Quantifier,
    Rel, SimpleConstraint, StateProperty, SystemProperty, TimeDomain, TimedStep,
};
use crate::transforms::negate_property;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilityVerdict {
    pub reachable: bool,
    pub witness: Option<ConcreteRun>,
}

impl ReachabilityVerdict {
    fn no() -> Self {
        ReachabilityVerdict { reachable: false, witness: None }
    }
}

/// Final state of a replayed run, or the reason it is not a run.
pub fn trace(pta: &Pta, gamma: &ParameterValuation, xi: &ConcreteRun) -> std::result::Result<(LocId, Vec<Rational>), String> {
    let check = |c: &SimpleConstraint, w: &[Rational]| c.holds(w, gamma).map_err(|e| e.to_string());
    let delay_ok = |d: &Rational| {
        if d.is_negative() {
            Err(format!("negative delay {d}"))
        } else if pta.time_domain == TimeDomain::Nat && !is_integer(d) {
            Err(format!("delay {d} is not a natural number"))
        } else {
            Ok(())
        }
    };
    let mut q = pta.initial;
    let mut w = vec![Rational::zero(); pta.clocks.len()];
    if !check(pta.invariant(q), &w)? {
        return Err("initial invariant fails".into());
    }
    for (i, s) in xi.steps.iter().enumerate() {
        delay_ok(&s.delay)?;
        for v in w.iter_mut() {
            *v += &s.delay;
        }
        if !check(pta.invariant(q), &w)? {
            return Err(format!("step {}: invariant of {} fails after delay", i + 1, pta.locations[q.0].name));
        }
        let t = pta.transitions.get(s.edge).ok_or_else(|| format!("step {}: no edge {}", i + 1, s.edge))?;
        if t.source != q {
            return Err(format!("step {}: edge {} does not leave {}", i + 1, s.edge, pta.locations[q.0].name));
        }
        if !check(&t.guard, &w)? {
            return Err(format!("step {}: guard fails", i + 1));
        }
        for (c, b) in &t.updates {
            w[c.0] = Rational::from_integer((*b).into());
        }
        q = t.target;
        if !check(pta.invariant(q), &w)? {
            return Err(format!("step {}: invariant of {} fails on entry", i + 1, pta.locations[q.0].name));
        }
    }
    delay_ok(&xi.final_delay)?;
    for v in w.iter_mut() {
        *v += &xi.final_delay;
    }
    if !check(pta.invariant(q), &w)? {
        return Err("invariant fails after the final delay".into());
    }
    Ok((q, w))
}

/// True iff `ξ` is a run of `𝒜[γ]` from `(q₀, 0⃗)`.
pub fn replay_run(pta: &Pta, gamma: &ParameterValuation, xi: &ConcreteRun) -> bool {
    trace(pta, gamma, xi).is_ok()
}

/// True iff `ξ` replays and its last state satisfies `φ`.
pub fn witness_satisfies(pta: &Pta, gamma: &ParameterValuation, xi: &ConcreteRun, phi: &StateProperty) -> bool {
    match trace(pta, gamma, xi) {
        Ok((q, w)) => phi.holds(q, &w, gamma).unwrap_or(false),
        Err(_) => false,
    }
}

/// `term ≤ k` over integer clock values; `k = None` is always true.
#[derive(Clone, Debug)]
struct IntAtom {
    term: ClockTerm,
    k: Option<i64>,
}

fn to_i64(v: &num_bigint::BigInt) -> Result<i64> {
    v.to_i64().filter(|v| v.abs() < (1 << 40)).ok_or_else(|| Error::Unsupported(format!("bound {v} is too large")))
}

impl IntAtom {
    fn new(a: &AtomicConstraint, gamma: &ParameterValuation) -> Result<Self> {
        let k = match a.rhs.evaluate(gamma)? {
            Extended::Infinity => None,
            Extended::Finite(e) => Some(match a.rel {
                Rel::Le => to_i64(&e.floor().to_integer())?,
                Rel::Lt => to_i64(&e.ceil().to_integer())? - 1,
            }),
        };
        Ok(IntAtom { term: a.term, k })
    }
}

#[derive(Clone, Debug)]
enum Compiled<A> {
    Const(bool),
    Atom(A),
    Loc(LocId),
    Not(Box<Compiled<A>>),
    And(Box<Compiled<A>>, Box<Compiled<A>>),
    Or(Box<Compiled<A>>, Box<Compiled<A>>),
}

impl<A> Compiled<A> {
    fn build(phi: &StateProperty, f: &mut impl FnMut(&AtomicConstraint) -> Result<A>) -> Result<Self> {
        use StateProperty as S;
        Ok(match phi {
            S::True => Compiled::Const(true),
            S::False => Compiled::Const(false),
            S::Atom(a) => Compiled::Atom(f(a)?),
            S::Loc(l) => Compiled::Loc(*l),
            S::Not(p) => Compiled::Not(Box::new(Self::build(p, f)?)),
            S::And(a, b) => Compiled::And(Box::new(Self::build(a, f)?), Box::new(Self::build(b, f)?)),
            S::Or(a, b) => Compiled::Or(Box::new(Self::build(a, f)?), Box::new(Self::build(b, f)?)),
        })
    }

    fn eval(&self, q: LocId, atom: &impl Fn(&A) -> bool) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Atom(a) => atom(a),
            Compiled::Loc(l) => *l == q,
            Compiled::Not(p) => !p.eval(q, atom),
            Compiled::And(a, b) => a.eval(q, atom) && b.eval(q, atom),
            Compiled::Or(a, b) => a.eval(q, atom) || b.eval(q, atom),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Delay,
    Edge(usize),
}

fn witness_from_moves(moves: &[Move], unit: impl Fn(usize) -> Rational) -> ConcreteRun {
    let mut steps = Vec::new();
    let mut delay = Rational::zero();
    for (i, m) in moves.iter().enumerate() {
        match m {
            Move::Delay => delay += unit(i),
            Move::Edge(e) => steps.push(TimedStep { delay: std::mem::take(&mut delay), edge: *e }),
        }
    }
    ConcreteRun { steps, final_delay: delay }
}

/// Generic BFS over abstract states; `succ` lists moves in deterministic order.
fn bfs<S: Clone + Eq + std::hash::Hash>(
    init: S,
    goal: impl Fn(&S) -> bool,
    succ: impl Fn(&S) -> Vec<(Move, S)>,
) -> Option<Vec<(Move, S)>> {
    let mut states = vec![init.clone()];
    let mut parent: Vec<Option<(usize, Move)>> = vec![None];
    let mut index: HashMap<S, usize> = HashMap::from([(init, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if goal(&states[i]) {
            let mut path = Vec::new();
            let mut cur = i;
            while let Some((p, m)) = parent[cur] {
                path.push((m, states[cur].clone()));
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for (m, s) in succ(&states[i]) {
            if !index.contains_key(&s) {
                index.insert(s.clone(), states.len());
                states.push(s);
                parent.push(Some((i, m)));
                queue.push_back(states.len() - 1);
            }
        }
    }
    None
}

/// Capped integer-clock abstraction of `𝒜[γ]`.
struct Discrete {
    n: usize,
    cap: i64,
    dcap: i64,
    pairs: Vec<(usize, usize)>,
    invariants: Vec<Vec<IntAtom>>,
    edges: Vec<(LocId, Vec<IntAtom>, Vec<(usize, i64)>, LocId)>,
}

impl Discrete {
    fn pair_index(&self, a: usize, b: usize) -> (usize, bool) {
        let key = (a.min(b), a.max(b));
        let i = self.pairs.iter().position(|p| *p == key).expect("pair tracked");
        (1 + self.n + i, a < b)
    }

    fn value(&self, s: &[i64], t: ClockTerm) -> i64 {
        match (t.pos, t.neg) {
            (Some(a), Some(b)) => {
                let (i, fwd) = self.pair_index(a.0, b.0);
                if fwd {
                    s[i]
                } else {
                    -s[i]
                }
            }
            (Some(a), None) => s[1 + a.0],
            (None, Some(b)) => -s[1 + b.0],
            (None, None) => 0,
        }
    }

    fn holds(&self, s: &[i64], a: &IntAtom) -> bool {
        a.k.map_or(true, |k| self.value(s, a.term) <= k)
    }

    fn all(&self, s: &[i64], c: &[IntAtom]) -> bool {
        c.iter().all(|a| self.holds(s, a))
    }

    fn successors(&self, s: &Vec<i64>) -> Vec<(Move, Vec<i64>)> {
        let q = s[0] as usize;
        let mut out = Vec::new();
        let mut d = s.clone();
        for v in &mut d[1..=self.n] {
            *v = (*v + 1).min(self.cap);
        }
        if d != *s && self.all(&d, &self.invariants[q]) {
            out.push((Move::Delay, d));
        }
        for (e, (src, guard, resets, tgt)) in self.edges.iter().enumerate() {
            if src.0 != q || !self.all(s, guard) {
                continue;
            }
            let mut t = s.clone();
            t[0] = tgt.0 as i64;
            let reset = |c: usize| resets.iter().find(|r| r.0 == c).map(|r| r.1);
            for (pi, &(i, j)) in self.pairs.iter().enumerate() {
                let exact = |c: usize, big: i64| if s[1 + c] < self.cap { s[1 + c] } else { big };
                let d = match (reset(i), reset(j)) {
                    (Some(bi), Some(bj)) => bi - bj,
                    (Some(bi), None) => bi - exact(j, self.cap + self.dcap),
                    (None, Some(bj)) => exact(i, self.cap + self.dcap) - bj,
                    (None, None) => s[1 + self.n + pi],
                };
                t[1 + self.n + pi] = d.clamp(-self.dcap, self.dcap);
            }
            for &(c, b) in resets {
                t[1 + c] = b.min(self.cap);
            }
            if self.all(&t, &self.invariants[tgt.0]) {
                out.push((Move::Edge(e), t));
            }
        }
        out
    }
}

/// Discrete-time reachability of `φ` in `𝒜[γ]`.
pub fn reach_discrete(pta: &Pta, gamma: &ParameterValuation, phi: &StateProperty) -> Result<ReachabilityVerdict> {
    reach_discrete_with_margin(pta, gamma, phi, 0)
}

/// As [`reach_discrete`] with clock caps raised by `margin`.
pub fn reach_discrete_with_margin(
    pta: &Pta,
    gamma: &ParameterValuation,
    phi: &StateProperty,
    margin: u64,
) -> Result<ReachabilityVerdict> {
    let conv = |c: &SimpleConstraint| c.conjuncts.iter().map(|a| IntAtom::new(a, gamma)).collect::<Result<Vec<_>>>();
    let invariants = pta.locations.iter().map(|l| conv(&l.invariant)).collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for t in &pta.transitions {
        let resets = t.updates.iter().map(|(c, b)| Ok((c.0, to_i64(&(*b).into())?))).collect::<Result<Vec<_>>>()?;
        edges.push((t.source, conv(&t.guard)?, resets, t.target));
    }
    let goal = Compiled::build(phi, &mut |a| IntAtom::new(a, gamma))?;

    let mut m: i64 = 0;
    let mut diagonal = false;
    let mut note = |a: &IntAtom| {
        if let Some(k) = a.k {
            m = m.max(k.abs());
        }
        diagonal |= a.term.is_diagonal();
    };
    invariants.iter().flatten().for_each(&mut note);
    edges.iter().flat_map(|e| e.1.iter()).for_each(&mut note);
    let mut phi_atoms = Vec::new();
    collect(&goal, &mut phi_atoms);
    phi_atoms.into_iter().for_each(&mut note);
    for e in &edges {
        for r in &e.2 {
            m = m.max(r.1);
        }
    }
    let m = m + margin as i64;
    let n = pta.clocks.len();
    let (cap, dcap, pairs) = if diagonal {
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (2 * m + 3, m + 2, pairs)
    } else {
        (m + 1, 0, Vec::new())
    };
    let sys = Discrete { n, cap, dcap, pairs, invariants, edges };

    let mut init = vec![0i64; 1 + n + sys.pairs.len()];
    init[0] = pta.initial.0 as i64;
    if !sys.all(&init, &sys.invariants[pta.initial.0]) {
        return Ok(ReachabilityVerdict::no());
    }
    let found = bfs(
        init,
        |s| goal.eval(LocId(s[0] as usize), &|a: &IntAtom| sys.holds(s, a)),
        |s| sys.successors(s),
    );
    Ok(match found {
        None => ReachabilityVerdict::no(),
        Some(path) => {
            let moves: Vec<Move> = path.iter().map(|(m, _)| *m).collect();
            ReachabilityVerdict { reachable: true, witness: Some(witness_from_moves(&moves, |_| Rational::one())) }
        }
    })
}

fn collect<'a, A>(c: &'a Compiled<A>, out: &mut Vec<&'a A>) {
    match c {
        Compiled::Atom(a) => out.push(a),
        Compiled::Not(p) => collect(p, out),
        Compiled::And(a, b) | Compiled::Or(a, b) => {
            collect(a, out);
            collect(b, out);
        }
        _ => {}
    }
}

/// An atom over the single clock, evaluated at a parameter point.
#[derive(Clone, Debug)]
struct RealAtom {
    term: ClockTerm,
    rel: Rel,
    bound: Extended<Real>,
}

impl RealAtom {
    fn new(a: &AtomicConstraint, point: &ParamPoint) -> Result<Self> {
        Ok(RealAtom { term: a.term, rel: a.rel, bound: a.rhs.evaluate_at(point)? })
    }
}

/// Points and open intervals induced by sorted critical values `c₀ = 0 < c₁ < …`.
/// Region `2k` is `{c_k}`, region `2k+1` is `(c_k, c_{k+1})` (the tail for the last `k`).
struct Regions {
    crit: Vec<Real>,
}

impl Regions {
    fn count(&self) -> usize {
        2 * self.crit.len()
    }

    fn point_of(&self, v: &Real) -> usize {
        2 * self.crit.iter().position(|c| c == v).expect("critical value")
    }

    fn holds(&self, r: usize, a: &RealAtom) -> bool {
        let Extended::Finite(e) = &a.bound else {
            return true;
        };
        let k = r / 2;
        let c = &self.crit[k];
        if r % 2 == 0 {
            let v = match (a.term.pos, a.term.neg) {
                (Some(_), None) => c.clone(),
                (None, Some(_)) => c.neg(),
                _ => Real::int(0),
            };
            return a.rel.holds(&v, e);
        }
        match (a.term.pos, a.term.neg) {
            (Some(_), None) => self.crit.get(k + 1).is_some_and(|b| b <= e),
            (None, Some(_)) => &c.neg() <= e,
            _ => a.rel.holds(&Real::int(0), e),
        }
    }

    /// Rational representatives, when every critical value is rational.
    fn representatives(&self) -> Option<Vec<Rational>> {
        let crit: Vec<Rational> = self.crit.iter().map(|c| c.as_rational().cloned()).collect::<Option<_>>()?;
        let mut out = Vec::with_capacity(self.count());
        for (k, c) in crit.iter().enumerate() {
            out.push(c.clone());
            out.push(match crit.get(k + 1) {
                Some(d) => (c + d) / Rational::from_integer(2.into()),
                None => c + Rational::one(),
            });
        }
        Some(out)
    }
}

/// The single clock constrained by `pta` and `phi`, if any.
pub fn constrained_clock(pta: &Pta, phi: &StateProperty) -> Result<Option<ClockId>> {
    let mut clocks = pta.constrained_clocks();
    clocks.extend(phi.atoms().into_iter().flat_map(|a| a.term.clocks()));
    if clocks.len() > 1 {
        return Err(Error::Precondition(format!("{} clocks are constrained; dense analysis needs one", clocks.len())));
    }
    Ok(clocks.into_iter().next())
}

/// Dense-time reachability for automata constraining a single clock, at a
/// rational or algebraic parameter point.
pub fn reach_dense_one_clock(pta: &Pta, point: &ParamPoint, phi: &StateProperty) -> Result<ReachabilityVerdict> {
    let x = constrained_clock(pta, phi)?;
    let conv = |c: &SimpleConstraint| c.conjuncts.iter().map(|a| RealAtom::new(a, point)).collect::<Result<Vec<_>>>();
    let invariants = pta.locations.iter().map(|l| conv(&l.invariant)).collect::<Result<Vec<_>>>()?;
    let guards = pta.transitions.iter().map(|t| conv(&t.guard)).collect::<Result<Vec<_>>>()?;
    let goal = Compiled::build(phi, &mut |a| RealAtom::new(a, point))?;
    let resets: Vec<Option<Real>> = pta
        .transitions
        .iter()
        .map(|t| x.and_then(|x| t.updates.get(&x)).map(|b| Real::int(*b as i64)))
        .collect();

    let mut crit = vec![Real::int(0)];
    let mut phi_atoms = Vec::new();
    collect(&goal, &mut phi_atoms);
    for a in invariants.iter().flatten().chain(guards.iter().flatten()).chain(phi_atoms) {
        if let Extended::Finite(e) = &a.bound {
            match (a.term.pos, a.term.neg) {
                (Some(_), None) => crit.push(e.clone()),
                (None, Some(_)) => crit.push(e.neg()),
                _ => {}
            }
        }
    }
    crit.extend(resets.iter().flatten().cloned());
    crit.retain(|c| c.sign() >= 0);
    crit.sort();
    crit.dedup();
    let regions = Regions { crit };
    let all = |r: usize, c: &[RealAtom]| c.iter().all(|a| regions.holds(r, a));

    let init = (pta.initial.0, 0usize);
    if !all(0, &invariants[pta.initial.0]) {
        return Ok(ReachabilityVerdict::no());
    }
    let succ = |&(q, r): &(usize, usize)| {
        let mut out = Vec::new();
        if r + 1 < regions.count() && all(r + 1, &invariants[q]) {
            out.push((Move::Delay, (q, r + 1)));
        }
        for (e, t) in pta.transitions.iter().enumerate() {
            if t.source.0 != q || !all(r, &guards[e]) {
                continue;
            }
            let r2 = resets[e].as_ref().map_or(r, |b| regions.point_of(b));
            if all(r2, &invariants[t.target.0]) {
                out.push((Move::Edge(e), (t.target.0, r2)));
            }
        }
        out
    };
    let found = bfs(init, |&(q, r)| goal.eval(LocId(q), &|a: &RealAtom| regions.holds(r, a)), succ);
    let Some(path) = found else {
        return Ok(ReachabilityVerdict::no());
    };
    let witness = regions.representatives().map(|rep| {
        let moves: Vec<Move> = path.iter().map(|(m, _)| *m).collect();
        let mut before = vec![0usize];
        before.extend(path.iter().map(|(_, (_, r))| *r));
        witness_from_moves(&moves, |i| &rep[before[i + 1]] - &rep[before[i]])
    });
    Ok(ReachabilityVerdict { reachable: true, witness })
}

/// Reachability under the given time domain.
pub fn reach(pta: &Pta, point: &ParamPoint, phi: &StateProperty, time: TimeDomain) -> Result<ReachabilityVerdict> {
    match (time, point) {
        (TimeDomain::Nat, ParamPoint::Rational(g)) => reach_discrete(pta, g, phi),
        (TimeDomain::Nat, ParamPoint::Algebraic(_)) => {
            Err(Error::Unsupported("discrete-time analysis at an algebraic parameter point".into()))
        }
        (TimeDomain::Dense, _) => reach_dense_one_clock(pta, point, phi),
    }
}

/// `𝒜[γ] ⊨ ψ`, with `∀□φ` decided as `¬∃◇¬φ`.
pub fn decide(pta: &Pta, point: &ParamPoint, psi: &SystemProperty, time: TimeDomain) -> Result<bool> {
    match psi.quantifier {
        Quantifier::ExistsEventually => Ok(reach(pta, point, &psi.phi, time)?.reachable),
        Quantifier::ForallAlways => Ok(!reach(pta, point, &negate_property(&psi.phi), time)?.reachable),
    }
}

/// Verdict per grid point, computed in parallel.
pub fn grid_oracle(
    pta: &Pta,
    psi: &SystemProperty,
    grid: &[ParameterValuation],
    time: TimeDomain,
) -> Result<BTreeMap<ParameterValuation, bool>> {
    grid.par_iter()
        .map(|g| Ok((g.clone(), decide(pta, &ParamPoint::Rational(g.clone()), psi, time)?)))
        .collect()
}

/// Integer grid `∏ [lo, hi]` in lexicographic order.
pub fn integer_grid(dims: usize, lo: i64, hi: i64) -> Vec<ParameterValuation> {
    let mut out = vec![Vec::new()];
    for _ in 0..dims {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (lo..=hi).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(|v| ParameterValuation::ints(&v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::model::parse::{parse_model, parse_property, parse_state_property};

    const GATE: &str = "clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x >= 2 & x <= p ; a ;";

    fn g(v: i64) -> ParameterValuation {
        ParameterValuation::ints(&[v])
    }

    fn step(d: Rational, e: usize) -> TimedStep {
        TimedStep { delay: d, edge: e }
    }

    #[test]
    fn replay_examples() {
        let pta = parse_model(GATE).unwrap();
        assert!(replay_run(&pta, &g(5), &ConcreteRun::new(vec![step(rat(3), 0)])));
        assert!(!replay_run(&pta, &g(5), &ConcreteRun::new(vec![step(rat(1), 0)])));
        let inv = parse_model("clocks: x\nparams: p\nloc q0 init inv: x <= p\nloc q1 inv: true\nedge q0 -> q1 : x >= 2 ; a ;").unwrap();
        assert!(!replay_run(&inv, &g(1), &ConcreteRun::new(vec![step(rat(2), 0)])));
        assert!(replay_run(&inv, &g(3), &ConcreteRun::new(vec![step(ratio(5, 2), 0)])));
    }

    #[test]
    fn discrete_reachability() {
        let pta = parse_model(GATE).unwrap();
        let q1 = parse_state_property("q1", &pta).unwrap();
        let v = reach_discrete(&pta, &g(5), &q1).unwrap();
        assert!(v.reachable);
        let w = v.witness.unwrap();
        assert!((2..=5).contains(&w.steps[0].delay.to_integer().to_i64().unwrap()));
        assert!(witness_satisfies(&pta, &g(5), &w, &q1));
        assert!(!reach_discrete(&pta, &g(1), &q1).unwrap().reachable);
        let q0 = parse_state_property("q0", &pta).unwrap();
        let v = reach_discrete(&pta, &g(1), &q0).unwrap();
        assert!(v.reachable && v.witness.unwrap().steps.is_empty());
    }

    #[test]
    fn diagonal_tracking() {
        // y is reset at x = 3; later x - y = 3 must be observable after long waits
        let pta = parse_model(
            "clocks: x, y\nloc a init inv: true\nloc b inv: true\nloc c inv: true\n\
             edge a -> b : x = 3 ; r ; reset y:=0\nedge b -> c : x - y = 3 & y >= 10 ; s ;",
        )
        .unwrap();
        let c = parse_state_property("c", &pta).unwrap();
        let v = reach_discrete(&pta, &ParameterValuation(vec![]), &c).unwrap();
        assert!(v.reachable);
        assert!(witness_satisfies(&pta, &ParameterValuation(vec![]), &v.witness.unwrap(), &c));
        let wrong = parse_model(
            "clocks: x, y\nloc a init inv: true\nloc b inv: true\nloc c inv: true\n\
             edge a -> b : x = 3 ; r ; reset y:=0\nedge b -> c : x - y = 2 & y >= 10 ; s ;",
        )
        .unwrap();
        assert!(!reach_discrete(&wrong, &ParameterValuation(vec![]), &c).unwrap().reachable);
    }

    #[test]
    fn dense_reachability() {
        let pta = parse_model(GATE).unwrap();
        let q1 = parse_state_property("q1", &pta).unwrap();
        let v = reach_dense_one_clock(&pta, &g(2).into(), &q1).unwrap();
        assert!(v.reachable);
        assert_eq!(v.witness.clone().unwrap().steps[0].delay, rat(2));
        let open = parse_model("clocks: x\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x > 2 & x < 2 ; a ;").unwrap();
        assert!(!reach_dense_one_clock(&open, &ParameterValuation(vec![]).into(), &q1).unwrap().reachable);
        let gap = parse_model("clocks: x\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x > 1 & x < 2 ; a ;").unwrap();
        let v = reach_dense_one_clock(&gap, &ParameterValuation(vec![]).into(), &q1).unwrap();
        assert_eq!(v.witness.unwrap().steps[0].delay, ratio(3, 2));
        assert!(!reach_discrete(&gap, &ParameterValuation(vec![]), &q1).unwrap().reachable);
        let lp = parse_model("clocks: x\nloc q0 init inv: x <= 1\nloc q1 inv: true\nedge q0 -> q0 : true ; t ; reset x:=0\nedge q0 -> q1 : x <= 1 ; a ;").unwrap();
        assert!(reach_dense_one_clock(&lp, &ParameterValuation(vec![]).into(), &q1).unwrap().reachable);
        let two = parse_model("clocks: x, y\nloc q0 init inv: x <= 1 & y <= 1").unwrap();
        assert!(matches!(
            reach_dense_one_clock(&two, &ParameterValuation(vec![]).into(), &StateProperty::True),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn oracle_grid() {
        let pta = parse_model(GATE).unwrap();
        let ef = parse_property("EF q1", &pta).unwrap();
        let grid = integer_grid(1, 0, 5);
        let m = grid_oracle(&pta, &ef, &grid, TimeDomain::Nat).unwrap();
        let bits: Vec<bool> = m.values().copied().collect();
        assert_eq!(bits, vec![false, false, true, true, true, true]);
        let ag = parse_property("AG !q1", &pta).unwrap();
        let m2 = grid_oracle(&pta, &ag, &grid, TimeDomain::Dense).unwrap();
        assert!(m.iter().all(|(k, v)| m2[k] == !v));
    }

    #[test]
    fn grid_order() {
        let g = integer_grid(2, 0, 1);
        assert_eq!(g.len(), 4);
        assert_eq!(g[1], ParameterValuation::ints(&[0, 1]));
    }
}
