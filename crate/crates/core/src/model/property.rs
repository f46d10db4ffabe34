//! State properties `φ` and system properties `∃◇φ` / `∀□φ`.

use super::constraint::AtomicConstraint;
use super::{LocId, ParameterValuation};
use crate::algebra::Rational;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateProperty {
    True,
    False,
    Atom(AtomicConstraint),
    Loc(LocId),
    Not(Box<StateProperty>),
    And(Box<StateProperty>, Box<StateProperty>),
    Or(Box<StateProperty>, Box<StateProperty>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    ExistsEventually,
    ForallAlways,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SystemProperty {
    pub quantifier: Quantifier,
    pub phi: StateProperty,
}

impl StateProperty {
    pub fn not(p: StateProperty) -> Self {
        StateProperty::Not(Box::new(p))
    }

    pub fn and(a: StateProperty, b: StateProperty) -> Self {
        StateProperty::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: StateProperty, b: StateProperty) -> Self {
        StateProperty::Or(Box::new(a), Box::new(b))
    }

    pub fn atoms(&self) -> Vec<&AtomicConstraint> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a AtomicConstraint>) {
        match self {
            StateProperty::Atom(a) => out.push(a),
            StateProperty::Not(p) => p.collect_atoms(out),
            StateProperty::And(a, b) | StateProperty::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            _ => {}
        }
    }

    /// Truth at the state `(q, ω)` under `γ`.
    pub fn holds(&self, q: LocId, clocks: &[Rational], gamma: &ParameterValuation) -> Result<bool> {
        Ok(match self {
            StateProperty::True => true,
            StateProperty::False => false,
            StateProperty::Atom(a) => a.holds(clocks, gamma)?,
            StateProperty::Loc(l) => *l == q,
            StateProperty::Not(p) => !p.holds(q, clocks, gamma)?,
            StateProperty::And(a, b) => a.holds(q, clocks, gamma)? && b.holds(q, clocks, gamma)?,
            StateProperty::Or(a, b) => a.holds(q, clocks, gamma)? || b.holds(q, clocks, gamma)?,
        })
    }

    pub fn render(&self, clocks: &[String], params: &[String], locs: &[String]) -> String {
        match self {
            StateProperty::True => "true".into(),
            StateProperty::False => "false".into(),
            StateProperty::Atom(a) => a.render(clocks, params),
            StateProperty::Loc(l) => locs[l.0].clone(),
            StateProperty::Not(p) => format!("!({})", p.render(clocks, params, locs)),
            StateProperty::And(a, b) => {
                format!("({} && {})", a.render(clocks, params, locs), b.render(clocks, params, locs))
            }
            StateProperty::Or(a, b) => {
                format!("({} || {})", a.render(clocks, params, locs), b.render(clocks, params, locs))
            }
        }
    }
}

impl SystemProperty {
    pub fn ef(phi: StateProperty) -> Self {
        SystemProperty { quantifier: Quantifier::ExistsEventually, phi }
    }

    pub fn ag(phi: StateProperty) -> Self {
        SystemProperty { quantifier: Quantifier::ForallAlways, phi }
    }

    pub fn render(&self, clocks: &[String], params: &[String], locs: &[String]) -> String {
        let q = match self.quantifier {
            Quantifier::ExistsEventually => "EF",
            Quantifier::ForallAlways => "AG",
        };
        format!("{q} {}", self.phi.render(clocks, params, locs))
    }
}
