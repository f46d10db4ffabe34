//! Atomic constraints `b₁x − b₂y ≺ e` and their conjunctions.

use std::fmt;

use num_traits::Zero;

use super::expr::Expr;
use super::{ClockId, ParameterValuation, Updates};
use crate::algebra::{Extended, Rational};
use crate::error::Result;

/// The clock side `x`, `−y`, `x − y`, or `0` (only after substitution).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClockTerm {
    pub pos: Option<ClockId>,
    pub neg: Option<ClockId>,
}

impl ClockTerm {
    pub fn clock(c: ClockId) -> Self {
        ClockTerm { pos: Some(c), neg: None }
    }

    pub fn minus(c: ClockId) -> Self {
        ClockTerm { pos: None, neg: Some(c) }
    }

    pub fn diff(a: ClockId, b: ClockId) -> Self {
        ClockTerm { pos: Some(a), neg: Some(b) }
    }

    pub fn zero() -> Self {
        ClockTerm { pos: None, neg: None }
    }

    pub fn negate(self) -> Self {
        ClockTerm { pos: self.neg, neg: self.pos }
    }

    pub fn clocks(self) -> impl Iterator<Item = ClockId> {
        self.pos.into_iter().chain(self.neg)
    }

    pub fn is_clock_free(self) -> bool {
        self.pos.is_none() && self.neg.is_none()
    }

    pub fn is_diagonal(self) -> bool {
        self.pos.is_some() && self.neg.is_some()
    }

    pub fn value<T>(self, clock: impl Fn(ClockId) -> T) -> T
    where
        T: Zero + std::ops::Sub<Output = T>,
    {
        let p = self.pos.map_or_else(T::zero, &clock);
        let n = self.neg.map_or_else(T::zero, &clock);
        p - n
    }

    pub fn render(self, clocks: &[String]) -> String {
        match (self.pos, self.neg) {
            (Some(a), Some(b)) => format!("{} - {}", clocks[a.0], clocks[b.0]),
            (Some(a), None) => clocks[a.0].clone(),
            (None, Some(b)) => format!("-{}", clocks[b.0]),
            (None, None) => "0".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Lt,
    Le,
}

impl Rel {
    pub fn holds<T: PartialOrd>(self, a: &T, b: &T) -> bool {
        match self {
            Rel::Lt => a < b,
            Rel::Le => a <= b,
        }
    }

    pub fn flip(self) -> Rel {
        match self {
            Rel::Lt => Rel::Le,
            Rel::Le => Rel::Lt,
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomicConstraint {
    pub term: ClockTerm,
    pub rel: Rel,
    pub rhs: Expr,
}

impl AtomicConstraint {
    pub fn new(term: ClockTerm, rel: Rel, rhs: Expr) -> Self {
        AtomicConstraint { term, rel, rhs }
    }

    pub fn b1(&self) -> u8 {
        u8::from(self.term.pos.is_some())
    }

    pub fn b2(&self) -> u8 {
        u8::from(self.term.neg.is_some())
    }

    pub fn clock_x(&self) -> Option<ClockId> {
        self.term.pos
    }

    pub fn clock_y(&self) -> Option<ClockId> {
        self.term.neg
    }

    pub fn is_strict(&self) -> bool {
        self.rel == Rel::Lt
    }

    pub fn is_parametric(&self) -> bool {
        !self.rhs.is_param_free()
    }

    /// Complement `−t ≺' −e`; `None` when the atom is valid (`e = ∞`), whose complement is false.
    pub fn negate(&self) -> Option<AtomicConstraint> {
        Some(AtomicConstraint { term: self.term.negate(), rel: self.rel.flip(), rhs: self.rhs.neg()? })
    }

    /// `c[u]`: reset clocks replaced by their constants. `None` means the
    /// result is parameter-free, clock-free and true.
    pub fn substitute(&self, u: &Updates) -> Option<AtomicConstraint> {
        let mut term = self.term;
        let mut rhs = self.rhs.clone();
        if let Some(b) = term.pos.and_then(|c| u.get(&c)) {
            rhs = rhs.add_const(-(*b as i64));
            term.pos = None;
        }
        if let Some(b) = term.neg.and_then(|c| u.get(&c)) {
            rhs = rhs.add_const(*b as i64);
            term.neg = None;
        }
        let atom = AtomicConstraint { term, rel: self.rel, rhs };
        if term.is_clock_free() && atom.rhs.is_param_free() {
            let v = atom.rhs.evaluate(&ParameterValuation(vec![])).ok()?;
            if atom.holds_value(&Rational::zero(), &v) {
                return None;
            }
        }
        Some(atom)
    }

    /// Truth of `value ≺ bound`.
    pub fn holds_value(&self, value: &Rational, bound: &Extended<Rational>) -> bool {
        match bound {
            Extended::Infinity => true,
            Extended::Finite(b) => self.rel.holds(value, b),
        }
    }

    pub fn holds(&self, clocks: &[Rational], gamma: &ParameterValuation) -> Result<bool> {
        let v = self.term.value(|c| clocks[c.0].clone());
        Ok(self.holds_value(&v, &self.rhs.evaluate(gamma)?))
    }

    pub fn render(&self, clocks: &[String], params: &[String]) -> String {
        format!("{} {} {}", self.term.render(clocks), self.rel, self.rhs.render(params))
    }
}

/// Conjunction of atoms; empty means `true`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimpleConstraint {
    pub conjuncts: Vec<AtomicConstraint>,
}

impl SimpleConstraint {
    pub fn tt() -> Self {
        SimpleConstraint::default()
    }

    pub fn of(conjuncts: Vec<AtomicConstraint>) -> Self {
        SimpleConstraint { conjuncts }
    }

    pub fn is_true(&self) -> bool {
        self.conjuncts.is_empty()
    }

    pub fn and(&self, other: &SimpleConstraint) -> SimpleConstraint {
        let mut c = self.conjuncts.clone();
        c.extend(other.conjuncts.iter().cloned());
        SimpleConstraint { conjuncts: c }
    }

    pub fn substitute(&self, u: &Updates) -> SimpleConstraint {
        SimpleConstraint { conjuncts: self.conjuncts.iter().filter_map(|a| a.substitute(u)).collect() }
    }

    pub fn holds(&self, clocks: &[Rational], gamma: &ParameterValuation) -> Result<bool> {
        for a in &self.conjuncts {
            if !a.holds(clocks, gamma)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn clocks(&self) -> impl Iterator<Item = ClockId> + '_ {
        self.conjuncts.iter().flat_map(|a| a.term.clocks())
    }

    pub fn render(&self, clocks: &[String], params: &[String]) -> String {
        if self.conjuncts.is_empty() {
            return "true".into();
        }
        self.conjuncts.iter().map(|a| a.render(clocks, params)).collect::<Vec<_>>().join(" & ")
    }
}
