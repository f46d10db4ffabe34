//! Property encoding into final-step guards, moving invariants into guards,
//! negation normal form and L/U classification.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::render::render_model;
use crate::model::{
    ActionId, AtomicConstraint, LocId, Location, ParamId, ParameterValuation, Pta, SimpleConstraint,
    StateProperty, SyntacticRun, Transition, Updates,
};

/// `α(φ, q)`: location references resolved against `q`.
pub fn encode_property(phi: &StateProperty, q: LocId) -> StateProperty {
    use StateProperty::*;
    match phi {
        Loc(l) if *l == q => True,
        Loc(_) => False,
        Not(p) => StateProperty::not(encode_property(p, q)),
        And(a, b) => StateProperty::and(encode_property(a, q), encode_property(b, q)),
        Or(a, b) => StateProperty::or(encode_property(a, q), encode_property(b, q)),
        other => other.clone(),
    }
}

/// Negation normal form of `φ` (or of `¬φ` when `negated`).
fn nnf_signed(phi: &StateProperty, negated: bool) -> StateProperty {
    use StateProperty::*;
    match (phi, negated) {
        (True, false) | (False, true) => True,
        (True, true) | (False, false) => False,
        (Atom(a), false) => Atom(a.clone()),
        (Atom(a), true) => a.negate().map_or(False, Atom),
        (Loc(l), false) => Loc(*l),
        (Loc(l), true) => StateProperty::not(Loc(*l)),
        (Not(p), n) => nnf_signed(p, !n),
        (And(a, b), false) => StateProperty::and(nnf_signed(a, false), nnf_signed(b, false)),
        (And(a, b), true) => StateProperty::or(nnf_signed(a, true), nnf_signed(b, true)),
        (Or(a, b), false) => StateProperty::or(nnf_signed(a, false), nnf_signed(b, false)),
        (Or(a, b), true) => StateProperty::and(nnf_signed(a, true), nnf_signed(b, true)),
    }
}

pub fn nnf(phi: &StateProperty) -> StateProperty {
    nnf_signed(phi, false)
}

/// `¬φ` with the negation pushed to the atoms; `¬(x ≤ e)` becomes `−x < −e`.
pub fn negate_property(phi: &StateProperty) -> StateProperty {
    nnf_signed(phi, true)
}

/// Folds `true`/`false` through the connectives.
pub fn simplify(phi: &StateProperty) -> StateProperty {
    use StateProperty::*;
    match phi {
        Not(p) => match simplify(p) {
            True => False,
            False => True,
            Not(q) => *q,
            q => StateProperty::not(q),
        },
        And(a, b) => match (simplify(a), simplify(b)) {
            (False, _) | (_, False) => False,
            (True, q) | (q, True) => q,
            (x, y) => StateProperty::and(x, y),
        },
        Or(a, b) => match (simplify(a), simplify(b)) {
            (True, _) | (_, True) => True,
            (False, q) | (q, False) => q,
            (x, y) => StateProperty::or(x, y),
        },
        other => other.clone(),
    }
}

/// Disjunctive normal form of a location-free property. An empty list is
/// `false`; an empty conjunction is `true`.
pub fn dnf(phi: &StateProperty) -> Result<Vec<SimpleConstraint>> {
    fn go(phi: &StateProperty) -> Result<Vec<Vec<AtomicConstraint>>> {
        use StateProperty::*;
        Ok(match phi {
            True => vec![vec![]],
            False => vec![],
            Atom(a) => vec![vec![a.clone()]],
            Loc(_) | Not(_) => {
                return Err(Error::Precondition("location reference left in an encoded property".into()))
            }
            Or(a, b) => {
                let mut l = go(a)?;
                l.extend(go(b)?);
                l
            }
            And(a, b) => {
                let (l, r) = (go(a)?, go(b)?);
                let mut out = Vec::with_capacity(l.len() * r.len());
                for x in &l {
                    for y in &r {
                        let mut c = x.clone();
                        c.extend(y.iter().cloned());
                        out.push(c);
                    }
                }
                out
            }
        })
    }
    let mut out: Vec<SimpleConstraint> = Vec::new();
    for c in go(&nnf(&simplify(phi)))? {
        let c = SimpleConstraint::of(c);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

/// A syntactic run whose final state must also satisfy `final_guard_extra`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedRun {
    pub base: SyntacticRun,
    pub final_guard_extra: SimpleConstraint,
}

/// One run per disjunct of `α(φ, q_ℓ)` in DNF.
pub fn alpha_transform(pta: &Pta, tau: &SyntacticRun, phi: &StateProperty) -> Result<Vec<EncodedRun>> {
    tau.validate(pta)?;
    let q = tau.last_location(pta);
    let encoded = encode_property(phi, q);
    Ok(dnf(&encoded)?
        .into_iter()
        .map(|extra| EncodedRun { base: tau.clone(), final_guard_extra: extra })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuardStep {
    pub guard: SimpleConstraint,
    pub action: ActionId,
    pub updates: Updates,
    /// Edge of the source automaton; `None` for the final observation step.
    pub origin: Option<usize>,
}

/// A run with all invariants moved into guards. `initial_condition` is `I_{q₀}`,
/// which must hold at `(γ, 0⃗)` separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuardOnlyRun {
    pub clocks: Vec<String>,
    pub params: Vec<String>,
    pub actions: Vec<String>,
    pub time_domain: crate::model::TimeDomain,
    pub param_domain: crate::model::ParamDomain,
    pub initial_condition: SimpleConstraint,
    pub steps: Vec<GuardStep>,
}

pub const OBSERVE_ACTION: &str = "observe";

impl GuardOnlyRun {
    /// Empty run over the names of `pta`.
    pub fn empty_like(pta: &Pta) -> Self {
        GuardOnlyRun {
            clocks: pta.clocks.clone(),
            params: pta.params.clone(),
            actions: pta.actions.clone(),
            time_domain: pta.time_domain,
            param_domain: pta.param_domain,
            initial_condition: SimpleConstraint::tt(),
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn has_updates(&self) -> bool {
        self.steps.iter().any(|s| !s.updates.is_empty())
    }

    pub fn initial_holds(&self, gamma: &ParameterValuation) -> Result<bool> {
        self.initial_condition.holds(&vec![num_traits::Zero::zero(); self.clocks.len()], gamma)
    }

    /// The chain automaton `s_0 → s_1 → …` with true invariants.
    pub fn automaton(&self) -> Pta {
        let locations = (0..=self.steps.len())
            .map(|i| Location { name: format!("s{i}"), invariant: SimpleConstraint::tt() })
            .collect();
        let transitions = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| Transition {
                source: LocId(i),
                guard: s.guard.clone(),
                action: s.action,
                updates: s.updates.clone(),
                target: LocId(i + 1),
            })
            .collect();
        Pta {
            clocks: self.clocks.clone(),
            params: self.params.clone(),
            actions: self.actions.clone(),
            locations,
            initial: LocId(0),
            transitions,
            time_domain: self.time_domain,
            param_domain: self.param_domain,
        }
    }

    /// Model syntax with the initial condition as a leading comment.
    pub fn render(&self) -> String {
        format!(
            "# initial condition: {}\n{}",
            self.initial_condition.render(&self.clocks, &self.params),
            render_model(&self.automaton())
        )
    }
}

/// `β(τ)`: `ḡᵢ = gᵢ ∧ I_{qᵢ₋₁} ∧ I_{qᵢ}[uᵢ]`.
pub fn beta_transform(pta: &Pta, tau: &SyntacticRun) -> Result<GuardOnlyRun> {
    tau.validate(pta)?;
    let mut run = GuardOnlyRun::empty_like(pta);
    run.initial_condition = pta.invariant(pta.initial).clone();
    for &e in &tau.edges {
        let t = &pta.transitions[e];
        let guard = t
            .guard
            .and(pta.invariant(t.source))
            .and(&pta.invariant(t.target).substitute(&t.updates));
        run.steps.push(GuardStep { guard, action: t.action, updates: t.updates.clone(), origin: Some(e) });
    }
    Ok(run)
}

/// `β(α(τ))` for one disjunct: the extra guard becomes a final observation
/// step `q_ℓ → q_ℓ` guarded by `extra ∧ I_{q_ℓ}`, so states reached by waiting
/// in `q_ℓ` are covered.
pub fn beta_encoded(pta: &Pta, run: &EncodedRun) -> Result<GuardOnlyRun> {
    let mut out = beta_transform(pta, &run.base)?;
    let q = run.base.last_location(pta);
    let action = ActionId(out.actions.len());
    out.actions.push(OBSERVE_ACTION.to_string());
    out.steps.push(GuardStep {
        guard: run.final_guard_extra.and(pta.invariant(q)),
        action,
        updates: Updates::new(),
        origin: None,
    });
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LuClass {
    pub lower: BTreeSet<ParamId>,
    pub upper: BTreeSet<ParamId>,
    pub both: BTreeSet<ParamId>,
    pub is_lu: bool,
}

fn classify_atoms<'a>(atoms: impl Iterator<Item = &'a AtomicConstraint>) -> Result<LuClass> {
    let (mut lower, mut upper) = (BTreeSet::new(), BTreeSet::new());
    for a in atoms {
        if !a.rhs.is_linear() {
            return Err(Error::Unsupported("L/U classification needs linear expressions".into()));
        }
        for p in a.rhs.params() {
            if a.rhs.cf(p) > 0 {
                upper.insert(p);
            } else {
                lower.insert(p);
            }
        }
    }
    let both: BTreeSet<ParamId> = lower.intersection(&upper).copied().collect();
    let lower = lower.difference(&both).copied().collect();
    let upper = upper.difference(&both).copied().collect();
    let is_lu = both.is_empty();
    Ok(LuClass { lower, upper, both, is_lu })
}

/// Lower/upper-bound parameters of the automaton's invariants and guards.
pub fn classify_lu(pta: &Pta) -> Result<LuClass> {
    classify_atoms(pta.atoms())
}

/// Like [`classify_lu`], also counting the atoms of a state property in
/// negation normal form.
pub fn classify_lu_with(pta: &Pta, phi: &StateProperty) -> Result<LuClass> {
    let n = nnf(phi);
    classify_atoms(pta.atoms().chain(n.atoms()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse::{parse_model, parse_state_property};
    use crate::model::{ClockId, ClockTerm, Expr, Rel};

    const X: ClockId = ClockId(0);

    fn model() -> Pta {
        parse_model(
            "clocks: x, y\nparams: p\nloc q0 init inv: x <= p\nloc q1 inv: y <= 3\nloc q2 inv: x - y <= p\n\
             edge q0 -> q1 : x >= 1 ; a ; reset y:=0\nedge q1 -> q2 : true ; b ; reset x:=2",
        )
        .unwrap()
    }

    #[test]
    fn encoding_resolves_locations() {
        let pta = model();
        let phi = parse_state_property("q1", &pta).unwrap();
        assert_eq!(encode_property(&phi, LocId(1)), StateProperty::True);
        let phi = parse_state_property("q1 && x <= p", &pta).unwrap();
        let e = encode_property(&phi, LocId(2));
        assert!(matches!(e, StateProperty::And(ref a, _) if **a == StateProperty::False));
        let phi = parse_state_property("!q1", &pta).unwrap();
        assert_eq!(encode_property(&phi, LocId(1)), StateProperty::not(StateProperty::True));
    }

    #[test]
    fn alpha_splits_disjunctions() {
        let pta = model();
        let tau = SyntacticRun::new(vec![0]);
        let runs = alpha_transform(&pta, &tau, &parse_state_property("q1", &pta).unwrap()).unwrap();
        assert_eq!(runs.len(), 1);
        assert!(runs[0].final_guard_extra.is_true());
        let runs = alpha_transform(&pta, &tau, &parse_state_property("q2", &pta).unwrap()).unwrap();
        assert!(runs.is_empty());
        let phi = parse_state_property("x <= p || x >= 3", &pta).unwrap();
        let runs = alpha_transform(&pta, &tau, &phi).unwrap();
        assert_eq!(runs.len(), 2);
        assert_eq!(
            runs[1].final_guard_extra.conjuncts,
            vec![AtomicConstraint::new(ClockTerm::minus(X), Rel::Le, Expr::constant(-3))]
        );
    }

    #[test]
    fn beta_moves_invariants() {
        let pta = model();
        let run = beta_transform(&pta, &SyntacticRun::new(vec![0, 1])).unwrap();
        assert_eq!(run.initial_condition, pta.invariant(LocId(0)).clone());
        let r = |g: &SimpleConstraint| g.render(&pta.clocks, &pta.params);
        // y <= 3 with y := 0 folds away
        assert_eq!(r(&run.steps[0].guard), "-x <= -1 & x <= p");
        // x - y <= p with x := 2 becomes -y <= p - 2
        assert_eq!(r(&run.steps[1].guard), "y <= 3 & -y <= p - 2");
        assert!(run.automaton().locations.iter().all(|l| l.invariant.is_true()));
    }

    #[test]
    fn negation() {
        let pta = model();
        let a = parse_state_property("x <= p", &pta).unwrap();
        let n = negate_property(&a);
        assert_eq!(n, StateProperty::Atom(AtomicConstraint::new(ClockTerm::minus(X), Rel::Lt, Expr::linear(0, [(ParamId(0), -1)]))));
        assert_eq!(negate_property(&n), a);
        let ab = parse_state_property("q1 && x <= 2", &pta).unwrap();
        assert!(matches!(negate_property(&ab), StateProperty::Or(_, _)));
    }

    #[test]
    fn lu_classes() {
        let pta = parse_model(
            "clocks: x, y\nparams: p1, p2\nloc q init inv: true\nedge q -> q : x <= p1 + 3 & y >= p2 ; a ;",
        )
        .unwrap();
        let c = classify_lu(&pta).unwrap();
        assert!(c.is_lu);
        assert_eq!(c.upper, BTreeSet::from([ParamId(0)]));
        assert_eq!(c.lower, BTreeSet::from([ParamId(1)]));
        let pta = parse_model("clocks: x, y\nparams: p\nloc q init inv: true\nedge q -> q : x <= p & y >= p ; a ;").unwrap();
        let c = classify_lu(&pta).unwrap();
        assert!(!c.is_lu);
        assert_eq!(c.both, BTreeSet::from([ParamId(0)]));
        let pta = parse_model("clocks: x\nloc q init inv: x <= 1").unwrap();
        assert!(classify_lu(&pta).unwrap().is_lu);
    }
}
