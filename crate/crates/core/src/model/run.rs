//! Syntactic runs (edge paths) and concrete timed runs.

use num_traits::Zero;

use super::{LocId, Location, Pta, Transition};
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// A path of transitions starting at the initial location.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SyntacticRun {
    pub edges: Vec<usize>,
}

impl SyntacticRun {
    pub fn new(edges: Vec<usize>) -> Self {
        SyntacticRun { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn validate(&self, pta: &Pta) -> Result<()> {
        let mut q = pta.initial;
        for (i, &e) in self.edges.iter().enumerate() {
            let t = pta
                .transitions
                .get(e)
                .ok_or_else(|| Error::Precondition(format!("step {}: no edge {e}", i + 1)))?;
            if t.source != q {
                return Err(Error::Precondition(format!(
                    "step {}: edge {e} does not leave {}",
                    i + 1,
                    pta.locations[q.0].name
                )));
            }
            q = t.target;
        }
        Ok(())
    }

    /// `q₀, q₁, …, q_ℓ`.
    pub fn locations(&self, pta: &Pta) -> Vec<LocId> {
        let mut out = vec![pta.initial];
        out.extend(self.edges.iter().map(|&e| pta.transitions[e].target));
        out
    }

    pub fn last_location(&self, pta: &Pta) -> LocId {
        self.edges.last().map_or(pta.initial, |&e| pta.transitions[e].target)
    }

    /// The automaton `𝒜_τ`: one location per position of the run, so that
    /// its behaviours are exactly the timings of `τ`.
    pub fn automaton(&self, pta: &Pta) -> Pta {
        let locs = self.locations(pta);
        let locations = locs
            .iter()
            .enumerate()
            .map(|(i, q)| Location {
                name: format!("{}_{i}", pta.locations[q.0].name),
                invariant: pta.locations[q.0].invariant.clone(),
            })
            .collect();
        let transitions = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let t = &pta.transitions[e];
                Transition {
                    source: LocId(i),
                    guard: t.guard.clone(),
                    action: t.action,
                    updates: t.updates.clone(),
                    target: LocId(i + 1),
                }
            })
            .collect();
        Pta {
            clocks: pta.clocks.clone(),
            params: pta.params.clone(),
            actions: pta.actions.clone(),
            locations,
            initial: LocId(0),
            transitions,
            time_domain: pta.time_domain,
            param_domain: pta.param_domain,
        }
    }

    pub fn render(&self, pta: &Pta) -> String {
        let mut out = pta.locations[pta.initial.0].name.clone();
        for &e in &self.edges {
            let t = &pta.transitions[e];
            out.push_str(&format!(" -{}-> {}", pta.actions[t.action.0], pta.locations[t.target.0].name));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TimedStep {
    pub delay: Rational,
    pub edge: usize,
}

/// Delays alternating with transitions from `(q₀, 0⃗)`, ending with an
/// optional final delay.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ConcreteRun {
    pub steps: Vec<TimedStep>,
    pub final_delay: Rational,
}

impl ConcreteRun {
    pub fn new(steps: Vec<TimedStep>) -> Self {
        ConcreteRun { steps, final_delay: Rational::zero() }
    }

    pub fn syntactic(&self) -> SyntacticRun {
        SyntacticRun::new(self.steps.iter().map(|s| s.edge).collect())
    }

    /// One line per step: `delay d; action a -> location`.
    pub fn render(&self, pta: &Pta) -> String {
        let mut lines = Vec::new();
        for s in &self.steps {
            let t = &pta.transitions[s.edge];
            lines.push(format!(
                "delay {}; {} -> {}",
                s.delay,
                pta.actions[t.action.0],
                pta.locations[t.target.0].name
            ));
        }
        if !self.final_delay.is_zero() {
            lines.push(format!("delay {}", self.final_delay));
        }
        lines.join("\n")
    }
}
