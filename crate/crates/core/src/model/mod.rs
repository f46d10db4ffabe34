//! Parametric timed automata, valuations, properties and runs.

pub mod constraint;
pub mod expr;
pub mod metrics;
pub mod parse;
pub mod property;
pub mod render;
pub mod run;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraicNumber, Rational};
use crate::error::{Error, Result};
pub use constraint::{AtomicConstraint, ClockTerm, Rel, SimpleConstraint};
pub use expr::{Expr, LinExpr};
pub use property::{Quantifier, StateProperty, SystemProperty};
pub use run::{ConcreteRun, SyntacticRun, TimedStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClockId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ActionId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum TimeDomain {
    Nat,
    #[default]
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum ParamDomain {
    Int,
    #[default]
    Real,
    Nat,
}

impl fmt::Display for TimeDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TimeDomain::Nat => "nat",
            TimeDomain::Dense => "dense",
        })
    }
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamDomain::Int => "int",
            ParamDomain::Real => "real",
            ParamDomain::Nat => "nat",
        })
    }
}

/// Clock resets `x := b`.
pub type Updates = BTreeMap<ClockId, u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub name: String,
    pub invariant: SimpleConstraint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub source: LocId,
    pub guard: SimpleConstraint,
    pub action: ActionId,
    pub updates: Updates,
    pub target: LocId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pta {
    pub clocks: Vec<String>,
    pub params: Vec<String>,
    pub actions: Vec<String>,
    pub locations: Vec<Location>,
    pub initial: LocId,
    pub transitions: Vec<Transition>,
    pub time_domain: TimeDomain,
    pub param_domain: ParamDomain,
}

impl Pta {
    pub fn clock_id(&self, name: &str) -> Option<ClockId> {
        self.clocks.iter().position(|c| c == name).map(ClockId)
    }

    pub fn param_id(&self, name: &str) -> Option<ParamId> {
        self.params.iter().position(|c| c == name).map(ParamId)
    }

    pub fn loc_id(&self, name: &str) -> Option<LocId> {
        self.locations.iter().position(|c| c.name == name).map(LocId)
    }

    pub fn loc_names(&self) -> Vec<String> {
        self.locations.iter().map(|l| l.name.clone()).collect()
    }

    pub fn invariant(&self, q: LocId) -> &SimpleConstraint {
        &self.locations[q.0].invariant
    }

    /// Every atom of every invariant and guard.
    pub fn atoms(&self) -> impl Iterator<Item = &AtomicConstraint> {
        self.locations
            .iter()
            .flat_map(|l| l.invariant.conjuncts.iter())
            .chain(self.transitions.iter().flat_map(|t| t.guard.conjuncts.iter()))
    }

    /// Clocks occurring in some constraint of the automaton.
    pub fn constrained_clocks(&self) -> BTreeSet<ClockId> {
        self.atoms().flat_map(|a| a.term.clocks()).collect()
    }

    /// Clocks occurring in an atom whose right-hand side mentions a parameter.
    pub fn parametric_clocks(&self) -> BTreeSet<ClockId> {
        self.atoms().filter(|a| a.is_parametric()).flat_map(|a| a.term.clocks()).collect()
    }

    pub fn is_linear(&self) -> bool {
        self.atoms().all(|a| a.rhs.is_linear())
    }

    pub fn validate(&self) -> Result<()> {
        if self.initial.0 >= self.locations.len() {
            return Err(Error::Invalid("initial location is not declared".into()));
        }
        let check_atom = |a: &AtomicConstraint| -> Result<()> {
            for c in a.term.clocks() {
                if c.0 >= self.clocks.len() {
                    return Err(Error::Invalid(format!("clock #{} is not declared", c.0)));
                }
            }
            if a.term.pos.is_some() && a.term.pos == a.term.neg {
                return Err(Error::Invalid("difference of a clock with itself".into()));
            }
            if let Some(p) = a.rhs.params().into_iter().find(|p| p.0 >= self.params.len()) {
                return Err(Error::Invalid(format!("parameter #{} is not declared", p.0)));
            }
            Ok(())
        };
        for a in self.atoms() {
            check_atom(a)?;
        }
        for t in &self.transitions {
            if t.source.0 >= self.locations.len() || t.target.0 >= self.locations.len() {
                return Err(Error::Invalid("transition endpoint is not declared".into()));
            }
            if t.action.0 >= self.actions.len() {
                return Err(Error::Invalid("transition action is not declared".into()));
            }
            if let Some(c) = t.updates.keys().find(|c| c.0 >= self.clocks.len()) {
                return Err(Error::Invalid(format!("reset of undeclared clock #{}", c.0)));
            }
        }
        Ok(())
    }

    /// Resolves `name=value` assignments into a full valuation.
    pub fn valuation(&self, assignments: &[(String, Rational)]) -> Result<ParameterValuation> {
        let mut vals: Vec<Option<Rational>> = vec![None; self.params.len()];
        for (n, v) in assignments {
            let p = self.param_id(n).ok_or_else(|| Error::Undeclared {
                kind: "parameter",
                name: n.clone(),
                line: 0,
                col: 0,
            })?;
            vals[p.0] = Some(v.clone());
        }
        vals.into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingParameter(self.params[i].clone())))
            .collect::<Result<Vec<_>>>()
            .map(ParameterValuation)
    }
}

/// `γ`, indexed by parameter id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParameterValuation(pub Vec<Rational>);

impl ParameterValuation {
    pub fn get(&self, p: ParamId) -> Option<&Rational> {
        self.0.get(p.0)
    }

    pub fn ints(vals: &[i64]) -> Self {
        ParameterValuation(vals.iter().map(|&v| crate::algebra::rat(v)).collect())
    }

    pub fn render(&self, params: &[String]) -> String {
        params
            .iter()
            .zip(&self.0)
            .map(|(n, v)| format!("{n}={v}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// `ω`, indexed by clock id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ClockValuation(pub Vec<Rational>);

/// A parameter point: a rational vector, or one algebraic coordinate.
#[derive(Clone, Debug)]
pub enum ParamPoint {
    Rational(ParameterValuation),
    Algebraic(Arc<AlgebraicNumber>),
}

impl ParamPoint {
    pub fn as_rational(&self) -> Option<&ParameterValuation> {
        match self {
            ParamPoint::Rational(g) => Some(g),
            ParamPoint::Algebraic(_) => None,
        }
    }
}

impl From<ParameterValuation> for ParamPoint {
    fn from(g: ParameterValuation) -> Self {
        ParamPoint::Rational(g)
    }
}
