//! Feasibility of a guard-only run with one parametric clock: lower/upper
//! bound split, `linf`/`usup`, pairwise `φ_{i,j}` tests, resets handled by
//! segmenting the run, and witness construction.

use num_traits::{One, Zero};

use crate::algebra::{Extended, Rational, Real};
use crate::error::{Error, Result};
use crate::model::{AtomicConstraint, ClockId, ConcreteRun, ParamPoint, ParameterValuation, TimeDomain, TimedStep};
use crate::model::{ClockTerm, SimpleConstraint};
use crate::transforms::GuardOnlyRun;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound<T = Rational> {
    pub value: Extended<T>,
    pub open: bool,
}

/// `lb(g)`, `up(g)` and the clock-free parameter conditions of a guard.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SplitGuard {
    pub lb: Vec<AtomicConstraint>,
    pub up: Vec<AtomicConstraint>,
    pub conditions: Vec<AtomicConstraint>,
}

pub fn split_guard(g: &SimpleConstraint) -> Result<SplitGuard> {
    let mut out = SplitGuard::default();
    for a in &g.conjuncts {
        match (a.term.pos, a.term.neg) {
            (Some(_), Some(_)) => {
                return Err(Error::Precondition("a diagonal atom has no lower/upper split".into()))
            }
            (Some(_), None) => out.up.push(a.clone()),
            (None, Some(_)) => out.lb.push(a.clone()),
            (None, None) => out.conditions.push(a.clone()),
        }
    }
    Ok(out)
}

/// Infimum of `{x ≥ 0 | lb}`: the largest `−e`, open if a strict atom attains it.
fn lower_bound(lb: &[AtomicConstraint], point: &ParamPoint) -> Result<Bound<Real>> {
    let mut cur = Real::int(0);
    let mut open = false;
    for a in lb {
        if let Extended::Finite(e) = a.rhs.evaluate_at(point)? {
            let l = e.neg();
            match l.cmp(&cur) {
                std::cmp::Ordering::Greater => {
                    cur = l;
                    open = a.is_strict();
                }
                std::cmp::Ordering::Equal => open |= a.is_strict(),
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Ok(Bound { value: Extended::Finite(cur), open })
}

/// Tightest upper bound of `up`, possibly negative; `∞` without finite atoms.
fn upper_bound(up: &[AtomicConstraint], point: &ParamPoint) -> Result<Bound<Real>> {
    let mut cur: Extended<Real> = Extended::Infinity;
    let mut open = false;
    for a in up {
        if let Extended::Finite(e) = a.rhs.evaluate_at(point)? {
            match &cur {
                Extended::Finite(c) if e > *c => {}
                Extended::Finite(c) if e == *c => open |= a.is_strict(),
                _ => {
                    cur = Extended::Finite(e);
                    open = a.is_strict();
                }
            }
        }
    }
    Ok(Bound { value: cur, open })
}

/// `up(g) ∧ x ≥ 0` has no solution.
fn upper_empty(u: &Bound<Real>) -> bool {
    match &u.value {
        Extended::Infinity => false,
        Extended::Finite(v) => v.sign() < 0 || (v.sign() == 0 && u.open),
    }
}

fn to_rational(b: Bound<Real>) -> Result<Bound> {
    let value = match b.value {
        Extended::Infinity => Extended::Infinity,
        Extended::Finite(v) => Extended::Finite(
            v.as_rational().cloned().ok_or_else(|| Error::Unsupported("irrational bound".into()))?,
        ),
    };
    Ok(Bound { value, open: b.open })
}

/// `linf(g[γ])` over the lower-bound atoms.
pub fn linf(lb: &[AtomicConstraint], gamma: &ParameterValuation) -> Result<Bound> {
    to_rational(lower_bound(lb, &ParamPoint::Rational(gamma.clone()))?)
}

/// `usup(g[γ])` over the upper-bound atoms: `∞` without atoms and `0` (closed)
/// when the atoms admit no nonnegative value.
pub fn usup(up: &[AtomicConstraint], gamma: &ParameterValuation) -> Result<Bound> {
    let u = upper_bound(up, &ParamPoint::Rational(gamma.clone()))?;
    if upper_empty(&u) {
        return Ok(Bound { value: Extended::Finite(Rational::zero()), open: false });
    }
    to_rational(u)
}

/// Bounds of one guard; `global` is its 1-based step index.
#[derive(Clone, Debug)]
struct Entry {
    low: Bound<Real>,
    up: Bound<Real>,
    global: usize,
    synthetic: bool,
}

fn low_value(b: &Bound<Real>) -> &Real {
    b.value.finite().expect("lower bounds are finite")
}

fn pair_ok(lo: &Bound<Real>, up: &Bound<Real>, time: TimeDomain) -> bool {
    if upper_empty(up) {
        return false;
    }
    let l = low_value(lo);
    let Extended::Finite(u) = &up.value else {
        return true;
    };
    match time {
        TimeDomain::Dense => l < u || (l == u && !lo.open && !up.open),
        TimeDomain::Nat => int_low(lo) <= int_up(up).expect("finite"),
    }
}

fn int_low(b: &Bound<Real>) -> num_bigint::BigInt {
    let l = low_value(b);
    if b.open {
        l.floor() + 1
    } else {
        l.ceil()
    }
}

fn int_up(b: &Bound<Real>) -> Option<num_bigint::BigInt> {
    b.value.finite().map(|u| if b.open { u.ceil() - 1 } else { u.floor() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// A run of `run.automaton()`; absent at irrational parameter points.
    pub witness: Option<ConcreteRun>,
    /// 1-based `(i, j)` of an unsatisfiable `φ_{i,j}`; `(i, i)` also reports a
    /// failing parameter condition of step `i` and `(0, 0)` the initial condition.
    pub failing_pair: Option<(usize, usize)>,
}

impl FeasibilityResult {
    fn fail(i: usize, j: usize) -> Self {
        FeasibilityResult { feasible: false, witness: None, failing_pair: Some((i, j)) }
    }
}

/// The unique clock mentioned by the run.
pub fn run_clock(run: &GuardOnlyRun) -> Result<Option<ClockId>> {
    let mut clocks: Vec<ClockId> = run
        .steps
        .iter()
        .flat_map(|s| s.guard.clocks())
        .chain(run.initial_condition.clocks())
        .collect();
    clocks.sort();
    clocks.dedup();
    if clocks.len() > 1 {
        return Err(Error::Precondition("the run constrains more than one clock".into()));
    }
    Ok(clocks.first().copied())
}

fn entry(g: &SimpleConstraint, point: &ParamPoint, global: usize) -> Result<std::result::Result<Entry, ()>> {
    let s = split_guard(g)?;
    for c in &s.conditions {
        let holds = match c.rhs.evaluate_at(point)? {
            Extended::Infinity => true,
            Extended::Finite(e) => c.rel.holds(&Real::int(0), &e),
        };
        if !holds {
            return Ok(Err(()));
        }
    }
    Ok(Ok(Entry { low: lower_bound(&s.lb, point)?, up: upper_bound(&s.up, point)?, global, synthetic: false }))
}

fn pin(b: u64, global: usize) -> Entry {
    let v = Bound { value: Extended::Finite(Real::int(b as i64)), open: false };
    Entry { low: v.clone(), up: v, global, synthetic: true }
}

/// Clock value at each entry of a segment whose pairs are all satisfiable.
fn segment_values(seg: &[Entry], time: TimeDomain) -> Option<Vec<Rational>> {
    let n = seg.len();
    let mut out: Vec<Rational> = Vec::with_capacity(n);
    // suffix minima of the upper bounds
    let mut ups: Vec<Bound<Real>> = vec![Bound { value: Extended::Infinity, open: false }; n];
    for i in (0..n).rev() {
        let next = if i + 1 < n { ups[i + 1].clone() } else { Bound { value: Extended::Infinity, open: false } };
        ups[i] = tighter_upper(&seg[i].up, &next);
    }
    let mut low = Bound { value: Extended::Finite(Real::int(0)), open: false };
    for (i, e) in seg.iter().enumerate() {
        low = tighter_lower(&low, &e.low);
        let prev = out.last().cloned().unwrap_or_else(Rational::zero);
        let v = match time {
            TimeDomain::Nat => Rational::from_integer(int_low(&low)),
            TimeDomain::Dense => {
                let l = low_value(&low).as_rational()?.clone();
                let (u, uopen) = match &ups[i].value {
                    Extended::Infinity => (l.clone().max(prev.clone()) + Rational::from_integer(2.into()), false),
                    Extended::Finite(u) => (u.as_rational()?.clone(), ups[i].open),
                };
                let delta = (&u - &l).min(Rational::one()) / Rational::from_integer(4.into());
                let lo = if low.open { &l + &delta } else { l.clone() };
                let hi = if uopen { &u - &delta } else { u };
                (lo + hi) / Rational::from_integer(2.into())
            }
        };
        out.push(v.max(prev));
    }
    Some(out)
}

fn tighter_lower(a: &Bound<Real>, b: &Bound<Real>) -> Bound<Real> {
    let (x, y) = (low_value(a), low_value(b));
    match x.cmp(y) {
        std::cmp::Ordering::Greater => a.clone(),
        std::cmp::Ordering::Less => b.clone(),
        std::cmp::Ordering::Equal => Bound { value: a.value.clone(), open: a.open || b.open },
    }
}

fn tighter_upper(a: &Bound<Real>, b: &Bound<Real>) -> Bound<Real> {
    match (&a.value, &b.value) {
        (Extended::Infinity, _) => b.clone(),
        (_, Extended::Infinity) => a.clone(),
        (Extended::Finite(x), Extended::Finite(y)) => match x.cmp(y) {
            std::cmp::Ordering::Less => a.clone(),
            std::cmp::Ordering::Greater => b.clone(),
            std::cmp::Ordering::Equal => Bound { value: a.value.clone(), open: a.open || b.open },
        },
    }
}

/// The first unsatisfiable pair `i ≤ j` of a segment, as local indices.
fn first_failing_pair(seg: &[Entry], time: TimeDomain) -> Option<(usize, usize)> {
    for i in 0..seg.len() {
        for j in i..seg.len() {
            if !pair_ok(&seg[i].low, &seg[j].up, time) {
                return Some((i, j));
            }
        }
    }
    None
}

/// `φ_{i,j}(τ, γ)` for 1-based `i ≤ j`, read on the guards as given.
pub fn phi_satisfiable(i: usize, j: usize, run: &GuardOnlyRun, gamma: &ParameterValuation) -> Result<bool> {
    if i == 0 || i > j || j > run.len() {
        return Err(Error::Precondition(format!("no pair ({i}, {j}) in a run of length {}", run.len())));
    }
    let point = ParamPoint::Rational(gamma.clone());
    let gi = split_guard(&run.steps[i - 1].guard)?;
    let gj = split_guard(&run.steps[j - 1].guard)?;
    Ok(pair_ok(&lower_bound(&gi.lb, &point)?, &upper_bound(&gj.up, &point)?, run.time_domain))
}

/// Reset-free feasibility at rational `γ`.
pub fn feasible_no_reset(run: &GuardOnlyRun, gamma: &ParameterValuation) -> Result<FeasibilityResult> {
    let x = run_clock(run)?;
    if x.is_some_and(|x| run.steps.iter().any(|s| s.updates.contains_key(&x))) {
        return Err(Error::Precondition("the run resets its clock".into()));
    }
    feasible_at(run, &ParamPoint::Rational(gamma.clone()))
}

/// Feasibility at rational `γ`, resets included.
pub fn feasible_with_reset(run: &GuardOnlyRun, gamma: &ParameterValuation) -> Result<FeasibilityResult> {
    feasible_at(run, &ParamPoint::Rational(gamma.clone()))
}

/// Feasibility at a rational or algebraic parameter point. Resets of the
/// clock split the run into segments; each later segment starts with a
/// synthetic guard `x = b` pinning the reset value.
pub fn feasible_at(run: &GuardOnlyRun, point: &ParamPoint) -> Result<FeasibilityResult> {
    let time = run.time_domain;
    if time == TimeDomain::Nat && matches!(point, ParamPoint::Algebraic(_)) {
        return Err(Error::Unsupported("discrete time at an algebraic parameter point".into()));
    }
    let x = run_clock(run)?;
    for a in &run.initial_condition.conjuncts {
        let holds = match a.rhs.evaluate_at(point)? {
            Extended::Infinity => true,
            Extended::Finite(e) => a.rel.holds(&Real::int(0), &e),
        };
        if !holds {
            return Ok(FeasibilityResult::fail(0, 0));
        }
    }
    let mut segments: Vec<Vec<Entry>> = vec![Vec::new()];
    for (k, s) in run.steps.iter().enumerate() {
        match entry(&s.guard, point, k + 1)? {
            Ok(e) => segments.last_mut().unwrap().push(e),
            Err(()) => return Ok(FeasibilityResult::fail(k + 1, k + 1)),
        }
        if let Some(b) = x.and_then(|x| s.updates.get(&x)) {
            segments.push(vec![pin(*b, k + 1)]);
        }
    }
    for seg in &segments {
        if let Some((i, j)) = first_failing_pair(seg, time) {
            return Ok(FeasibilityResult::fail(seg[i].global, seg[j].global));
        }
    }
    let mut witness = Some(ConcreteRun::default());
    for seg in &segments {
        let (Some(w), Some(vals)) = (witness.as_mut(), segment_values(seg, time)) else {
            witness = None;
            break;
        };
        let mut prev = Rational::zero();
        for (e, v) in seg.iter().zip(vals) {
            if !e.synthetic {
                w.steps.push(TimedStep { delay: &v - &prev, edge: e.global - 1 });
            }
            prev = v;
        }
    }
    Ok(FeasibilityResult { feasible: true, witness, failing_pair: None })
}

/// Per step, whether `linf` and `usup` of its guard are attained.
pub fn boundary_cases(run: &GuardOnlyRun, gamma: &ParameterValuation) -> Result<Vec<(bool, bool)>> {
    let point = ParamPoint::Rational(gamma.clone());
    run.steps
        .iter()
        .map(|s| {
            let g = split_guard(&s.guard)?;
            let lo = lower_bound(&g.lb, &point)?;
            let up = upper_bound(&g.up, &point)?;
            Ok((!lo.open, !up.open && up.value.finite().is_some()))
        })
        .collect()
}

/// `x ≤ b ∧ −x ≤ −b`.
pub fn pin_constraint(x: ClockId, b: i64) -> SimpleConstraint {
    use crate::model::{Expr, Rel};
    SimpleConstraint::of(vec![
        AtomicConstraint::new(ClockTerm::clock(x), Rel::Le, Expr::constant(b)),
        AtomicConstraint::new(ClockTerm::minus(x), Rel::Le, Expr::constant(-b)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::model::parse::parse_model;
    use crate::model::SyntacticRun;
    use crate::semantics::replay_run;
    use crate::transforms::beta_transform;

    fn chain(guards: &[(&str, &str)], time: &str) -> GuardOnlyRun {
        let mut text = format!("clocks: x\nparams: p, q\ndomain: time={time}\nloc s0 init inv: true\n");
        for i in 1..=guards.len() {
            text.push_str(&format!("loc s{i} inv: true\n"));
        }
        for (i, (g, r)) in guards.iter().enumerate() {
            text.push_str(&format!("edge s{i} -> s{} : {g} ; a{i} ; {r}\n", i + 1));
        }
        let pta = parse_model(&text).unwrap();
        beta_transform(&pta, &SyntacticRun::new((0..guards.len()).collect())).unwrap()
    }

    fn atoms(text: &str) -> SimpleConstraint {
        chain(&[(text, "")], "dense").steps[0].guard.clone()
    }

    fn gp(p: i64) -> ParameterValuation {
        ParameterValuation::ints(&[p, 0])
    }

    #[test]
    fn splitting() {
        let s = split_guard(&atoms("x >= 2 & x <= p")).unwrap();
        assert_eq!((s.lb.len(), s.up.len()), (1, 1));
        let s = split_guard(&atoms("true")).unwrap();
        assert!(s.lb.is_empty() && s.up.is_empty());
        let s = split_guard(&atoms("x < p & x <= 7")).unwrap();
        assert_eq!((s.lb.len(), s.up.len()), (0, 2));
    }

    #[test]
    fn bounds() {
        let g = gp(0);
        let lb = split_guard(&atoms("x >= 3 & x > 5")).unwrap().lb;
        assert_eq!(linf(&lb, &g).unwrap(), Bound { value: Extended::Finite(rat(5)), open: true });
        let lb = split_guard(&atoms("x >= -2")).unwrap().lb;
        assert_eq!(linf(&lb, &g).unwrap(), Bound { value: Extended::Finite(rat(0)), open: false });
        let up = split_guard(&atoms("x <= 4 & x < 2")).unwrap().up;
        assert_eq!(usup(&up, &g).unwrap(), Bound { value: Extended::Finite(rat(2)), open: true });
        let up = split_guard(&atoms("x < 0")).unwrap().up;
        assert_eq!(usup(&up, &g).unwrap(), Bound { value: Extended::Finite(rat(0)), open: false });
        assert_eq!(usup(&[], &g).unwrap().value, Extended::Infinity);
    }

    #[test]
    fn pairs() {
        let r = chain(&[("x >= 3", ""), ("x <= 2", "")], "dense");
        assert!(!phi_satisfiable(1, 2, &r, &gp(0)).unwrap());
        let r = chain(&[("x > 1", ""), ("x < 2", "")], "dense");
        assert!(phi_satisfiable(1, 2, &r, &gp(0)).unwrap());
        let r = chain(&[("x > 1", ""), ("x < 2", "")], "nat");
        assert!(!phi_satisfiable(1, 2, &r, &gp(0)).unwrap());
        let r = chain(&[("true", ""), ("true", "")], "dense");
        assert!(phi_satisfiable(1, 2, &r, &gp(0)).unwrap());
    }

    #[test]
    fn no_reset_examples() {
        let r = chain(&[("x >= 2 & x <= 6", "")], "dense");
        let f = feasible_no_reset(&r, &gp(0)).unwrap();
        assert!(f.feasible);
        assert_eq!(f.witness.unwrap().steps[0].delay, rat(4));
        let r = chain(&[("x <= p", ""), ("x >= 3", "")], "dense");
        let f = feasible_no_reset(&r, &gp(2)).unwrap();
        assert!(f.feasible && replay_run(&r.automaton(), &gp(2), f.witness.as_ref().unwrap()));
        let r = chain(&[("x >= 3", ""), ("x <= p", "")], "dense");
        let f = feasible_no_reset(&r, &gp(2)).unwrap();
        assert_eq!((f.feasible, f.failing_pair), (false, Some((1, 2))));
    }

    #[test]
    fn reset_examples() {
        let r = chain(&[("x <= 1", "reset x:=0"), ("x >= 2 & x <= 3", "")], "dense");
        for p in -2..4 {
            let f = feasible_with_reset(&r, &gp(p)).unwrap();
            assert!(f.feasible && replay_run(&r.automaton(), &gp(p), f.witness.as_ref().unwrap()));
        }
        let r = chain(&[("x >= 5", "reset x:=0"), ("x <= p", "")], "nat");
        let f = feasible_with_reset(&r, &gp(0)).unwrap();
        assert!(f.feasible && replay_run(&r.automaton(), &gp(0), f.witness.as_ref().unwrap()));
        let r = chain(&[("true", "reset x:=4"), ("x <= 3", ""), ("x >= 4 & x <= 4", "")], "dense");
        let f = feasible_with_reset(&r, &gp(0)).unwrap();
        assert_eq!((f.feasible, f.failing_pair), (false, Some((1, 2))));
    }

    #[test]
    fn open_bounds_witness() {
        let r = chain(&[("x > 1 & x <= 2", ""), ("x >= 1 & x <= 2", ""), ("x > 2 - 1 & x < 2", "")], "dense");
        let f = feasible_with_reset(&r, &gp(0)).unwrap();
        let w = f.witness.unwrap();
        assert!(replay_run(&r.automaton(), &gp(0), &w));
        assert!(w.steps.iter().all(|s| s.delay >= rat(0)));
        // a rational parameter makes the lower bound creep up by less than the shrink margin
        let r = chain(&[("x > 0 & x <= 1", ""), ("x >= p & x <= 1", "")], "dense");
        let g = ParameterValuation(vec![ratio(1, 10), rat(0)]);
        let w = feasible_with_reset(&r, &g).unwrap().witness.unwrap();
        assert!(replay_run(&r.automaton(), &g, &w));
    }
}
