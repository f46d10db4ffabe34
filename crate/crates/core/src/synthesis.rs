//! Feasible parameter regions: decompose the parameter space on the
//! automaton's constraint polynomials and decide every cell at its sample.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::algebra::{MPoly, Rational};
use crate::decomposition::linear::{integer_point, LinConstraint, LinForm, LinRel};
use crate::decomposition::project::{project_clock, Bivariate, PX};
use crate::algebra::UPoly;
use crate::decomposition::{decompose_1d, decompose_linear, linear_signs_at, locate, signs_at, Cell, CellKind, SignAssignment};
use crate::error::{Error, Result};
use crate::feasibility::feasible_at;
use crate::model::{
    AtomicConstraint, ClockId, ParamDomain, ParamId, ParamPoint, ParameterValuation, Pta, Quantifier, Rel,
    SimpleConstraint, StateProperty, SyntacticRun, SystemProperty, TimeDomain,
};
use crate::semantics::reach_dense_one_clock;
use crate::transforms::{alpha_transform, beta_encoded, negate_property, GuardOnlyRun};

/// Variables of a constraint polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Clock(ClockId),
    Param(ParamId),
}

pub type ConstraintPoly = MPoly<Sym>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// One parameter: projection and real-root isolation.
    Cad1,
    /// Hyperplane arrangement over linear expressions.
    Linear,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Cad1 => "cad1",
            Method::Linear => "linear",
        }
    }
}

/// The polynomials the cells are sign-invariant for.
#[derive(Clone, Debug)]
pub enum SignFamily {
    Univariate(Vec<UPoly>),
    Linear(Vec<LinForm>),
}

impl SignFamily {
    /// `None` for an algebraic point of a linear family.
    pub fn signs_at(&self, point: &ParamPoint) -> Option<SignAssignment> {
        match (self, point) {
            (SignFamily::Univariate(ps), _) => Some(signs_at(ps, point)),
            (SignFamily::Linear(fs), ParamPoint::Rational(g)) => Some(linear_signs_at(fs, &g.0)),
            (SignFamily::Linear(_), ParamPoint::Algebraic(_)) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RegionCell {
    pub cell: Cell,
    pub verdict: bool,
    /// An integer point of the cell, for integer parameter domains.
    pub integer_witness: Option<Vec<BigInt>>,
}

#[derive(Clone, Debug)]
pub struct FeasibleRegion {
    pub params: Vec<String>,
    pub method: Method,
    pub property: String,
    pub time_domain: TimeDomain,
    pub param_domain: ParamDomain,
    /// Names of the polynomials the cell signs refer to.
    pub polynomials: Vec<String>,
    pub family: SignFamily,
    pub cells: Vec<RegionCell>,
}

impl FeasibleRegion {
    /// No feasible valuation in the parameter domain.
    pub fn is_empty(&self) -> bool {
        match self.param_domain {
            ParamDomain::Real => !self.cells.iter().any(|c| c.verdict),
            _ => !self.cells.iter().any(|c| c.verdict && c.integer_witness.is_some()),
        }
    }

    pub fn verdicts(&self) -> Vec<bool> {
        self.cells.iter().map(|c| c.verdict).collect()
    }

    pub fn to_json(&self) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                let mut v = c.cell.to_json(&self.params, &self.polynomials);
                v["verdict"] = json!(c.verdict);
                if let Some(w) = &c.integer_witness {
                    v["integer_witness"] = json!(w.iter().map(|k| k.to_string()).collect::<Vec<_>>());
                }
                v
            })
            .collect();
        json!({
            "params": self.params,
            "method": self.method.name(),
            "property": self.property,
            "time_domain": self.time_domain.to_string(),
            "param_domain": self.param_domain.to_string(),
            "polynomials": self.polynomials,
            "cells": cells,
        })
    }

    /// One line per cell.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            let sample = match &c.cell.sample {
                ParamPoint::Rational(g) => g.render(&self.params),
                ParamPoint::Algebraic(a) => format!("{}={a}", self.params[0]),
            };
            out.push_str(&format!(
                "{} {:<8} sample {}  {}\n",
                if c.verdict { "T" } else { "F" },
                c.cell.kind_name(),
                sample,
                describe(&c.cell, &self.params)
            ));
        }
        out
    }
}

fn describe(cell: &Cell, params: &[String]) -> String {
    let p = params.first().map(String::as_str).unwrap_or("p");
    match &cell.kind {
        CellKind::Interval1D { lo, hi } => format!(
            "{} < {p} < {}",
            lo.as_ref().map_or("-inf".to_string(), |a| a.to_string()),
            hi.as_ref().map_or("inf".to_string(), |a| a.to_string())
        ),
        CellKind::Point1D(a) => format!("{p} = {a}"),
        CellKind::LinearSystem(cons) => {
            if cons.is_empty() {
                "true".into()
            } else {
                cons.iter().map(|c| c.render(params)).collect::<Vec<_>>().join(" && ")
            }
        }
    }
}

fn atom_poly(a: &AtomicConstraint) -> Option<ConstraintPoly> {
    let rhs = a.rhs.to_poly()?.map_vars(|p| Sym::Param(*p));
    let mut t = ConstraintPoly::zero();
    if let Some(c) = a.term.pos {
        t = &t + &ConstraintPoly::var(Sym::Clock(c));
    }
    if let Some(c) = a.term.neg {
        t = &t - &ConstraintPoly::var(Sym::Clock(c));
    }
    Some(&t - &rhs)
}

fn push_unique(out: &mut Vec<ConstraintPoly>, f: ConstraintPoly) {
    if !f.is_zero() && !out.contains(&f) {
        out.push(f);
    }
}

/// `t − e` for every atom `t ≺ e` of the automaton and the property.
pub fn collect_constraint_polynomials(pta: &Pta, psi: &SystemProperty) -> Vec<ConstraintPoly> {
    let mut out = Vec::new();
    for a in pta.atoms().chain(psi.phi.atoms()) {
        if let Some(f) = atom_poly(a) {
            push_unique(&mut out, f);
        }
    }
    out
}

/// `t ≤ e − 1` for a strict atom; exact over integer clocks and parameters.
fn close_atom(a: &AtomicConstraint) -> AtomicConstraint {
    match a.rel {
        Rel::Lt if !a.rhs.is_infinity() => AtomicConstraint::new(a.term, Rel::Le, a.rhs.add_const(-1)),
        _ => a.clone(),
    }
}

fn close_constraint(g: &SimpleConstraint) -> SimpleConstraint {
    SimpleConstraint::of(g.conjuncts.iter().map(close_atom).collect())
}

fn close_property(phi: &StateProperty) -> StateProperty {
    match phi {
        StateProperty::Atom(a) => StateProperty::Atom(close_atom(a)),
        StateProperty::Not(p) => StateProperty::not(close_property(p)),
        StateProperty::And(a, b) => StateProperty::and(close_property(a), close_property(b)),
        StateProperty::Or(a, b) => StateProperty::or(close_property(a), close_property(b)),
        other => other.clone(),
    }
}

fn close_model(pta: &Pta) -> Pta {
    let mut m = pta.clone();
    for l in &mut m.locations {
        l.invariant = close_constraint(&l.invariant);
    }
    for t in &mut m.transitions {
        t.guard = close_constraint(&t.guard);
    }
    m
}

/// Whether strict atoms must be closed before a dense decision; errors when
/// discrete time meets real parameters (verdicts then depend on integer parts).
fn needs_closing(time: TimeDomain, dom: ParamDomain) -> Result<bool> {
    match (time, dom) {
        (TimeDomain::Dense, _) => Ok(false),
        (TimeDomain::Nat, ParamDomain::Real) => Err(Error::Unsupported(
            "discrete time with real-valued parameters (use an integer parameter domain)".into(),
        )),
        (TimeDomain::Nat, _) => Ok(true),
    }
}

/// Critical value `−g/c` of `c·x + g`, or `g` for clock-free members.
fn critical_form(f: &ConstraintPoly, m: usize) -> Result<LinForm> {
    if f.total_degree() > 1 {
        return Err(Error::Unsupported("polynomial expressions with several parameters".into()));
    }
    let mut coeffs = vec![Rational::zero(); m];
    let mut c = Rational::zero();
    for v in f.vars() {
        let k = Rational::from_integer(f.linear_coeff(&v));
        match v {
            Sym::Clock(_) => c = k,
            Sym::Param(ParamId(p)) => coeffs[p] = k,
        }
    }
    let g = LinForm::new(coeffs, Rational::from_integer(f.constant_term()));
    Ok(if c.is_zero() { g } else { LinForm::new(g.coeffs.iter().map(|a| -a / &c).collect(), -&g.constant / &c) })
}

fn bivariate(f: &ConstraintPoly) -> Bivariate {
    f.map_vars(|v| match v {
        Sym::Clock(_) => PX::X,
        Sym::Param(_) => PX::P,
    })
}

/// Cells on which the polynomials `family` (each with at most one clock,
/// that clock being `x`) have invariant relative order of critical values.
fn decompose_family(family: &[ConstraintPoly], m: usize) -> Result<(Method, Vec<Cell>, SignFamily, Vec<String>)> {
    if m == 1 {
        let bi: Vec<Bivariate> = family.iter().map(bivariate).collect();
        let proj = project_clock(&bi);
        let poly_names = proj.iter().map(|u| u.display_in("p")).collect::<Vec<_>>();
        let cells = decompose_1d(&proj)?;
        return Ok((Method::Cad1, cells, SignFamily::Univariate(proj), poly_names));
    }
    let crit: Vec<LinForm> = family.iter().map(|f| critical_form(f, m)).collect::<Result<_>>()?;
    let mut planes: Vec<LinForm> = Vec::new();
    for (i, a) in crit.iter().enumerate() {
        for b in &crit[i + 1..] {
            let d = a.sub(b);
            if !d.is_constant() {
                planes.push(d);
            }
        }
    }
    let planes = crate::decomposition::linear::hyperplanes(&planes);
    let cells = decompose_linear(&planes, m)?;
    let pnames: Vec<String> = (0..m).map(|i| format!("p{}", i + 1)).collect();
    let poly_names = planes.iter().map(|f| f.render(&pnames)).collect();
    Ok((Method::Linear, cells, SignFamily::Linear(planes), poly_names))
}

/// Adds `x` and `x − b` for each reset constant `b`.
fn with_auxiliary(mut family: Vec<ConstraintPoly>, x: ClockId, resets: impl Iterator<Item = u64>) -> Vec<ConstraintPoly> {
    let xv = ConstraintPoly::var(Sym::Clock(x));
    push_unique(&mut family, xv.clone());
    for b in resets {
        push_unique(&mut family, &xv - &ConstraintPoly::constant(BigInt::from(b)));
    }
    family
}

fn check_shape(pta: &Pta, m: usize, family: &[ConstraintPoly]) -> Result<()> {
    let param_clocks = pta.parametric_clocks();
    if param_clocks.len() > 1 {
        return Err(Error::Unsupported(format!(
            "{} parametric clocks; use the two-clock analyses",
            param_clocks.len()
        )));
    }
    if m > 1 && family.iter().any(|f| f.total_degree() > 1) {
        return Err(Error::Unsupported("polynomial expressions with several parameters".into()));
    }
    if m > 3 {
        return Err(Error::Unsupported(format!("{m} parameters (at most 3)")));
    }
    Ok(())
}

/// The integer point of a cell nearest the origin (1D), or the least one in
/// a box (linear cells).
fn integer_witness(cell: &Cell, dom: ParamDomain, m: usize) -> Option<Vec<BigInt>> {
    let nat = dom == ParamDomain::Nat;
    match &cell.kind {
        CellKind::Point1D(a) => {
            let r = a.as_rational()?;
            (r.is_integer() && (!nat || *r >= Rational::zero())).then(|| vec![r.to_integer()])
        }
        CellKind::Interval1D { lo, hi } => {
            let mut l = lo.as_ref().map(|a| a.floor() + 1);
            let h = hi.as_ref().map(|b| b.ceil() - 1);
            if nat {
                l = Some(l.map_or(BigInt::zero(), |l: BigInt| l.max(BigInt::zero())));
            }
            if let (Some(l), Some(h)) = (&l, &h) {
                if l > h {
                    return None;
                }
            }
            let mut v = BigInt::zero();
            if let Some(l) = &l {
                v = v.max(l.clone());
            }
            if let Some(h) = &h {
                v = v.min(h.clone());
            }
            Some(vec![v])
        }
        CellKind::LinearSystem(cons) => {
            const BOX: i64 = 32;
            let lo = if nat { 0 } else { -BOX };
            let mut cons = cons.clone();
            if nat {
                for k in 0..m {
                    let mut e = vec![Rational::zero(); m];
                    e[k] = Rational::one();
                    cons.push(LinConstraint::new(LinForm::new(e, Rational::zero()), LinRel::Ge));
                }
            }
            integer_point(&cons, &vec![(lo, BOX); m]).map(|v| v.into_iter().map(BigInt::from).collect())
        }
    }
}

fn assemble(
    pta: &Pta,
    method: Method,
    cells: Vec<Cell>,
    family: SignFamily,
    polynomials: Vec<String>,
    property: String,
    decide: impl Fn(&ParamPoint) -> Result<bool> + Sync,
) -> Result<FeasibleRegion> {
    let m = pta.params.len();
    let dom = pta.param_domain;
    let cells = cells
        .into_par_iter()
        .map(|cell| {
            let verdict = decide(&cell.sample)?;
            let integer_witness = match dom {
                ParamDomain::Real => None,
                _ => integer_witness(&cell, dom, m),
            };
            Ok(RegionCell { cell, verdict, integer_witness })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FeasibleRegion {
        params: pta.params.clone(),
        method,
        property,
        time_domain: pta.time_domain,
        param_domain: dom,
        polynomials,
        family,
        cells,
    })
}

/// `Γ(𝒜, ψ)` as a decomposition with one verdict per cell.
pub fn synthesize(pta: &Pta, psi: &SystemProperty) -> Result<FeasibleRegion> {
    let (model, target, d) = prepare(pta, psi)?;
    let negate = psi.quantifier == Quantifier::ForallAlways;
    let locs = pta.loc_names();
    let property = psi.render(&pta.clocks, &pta.params, &locs);
    assemble(pta, d.method, d.cells, d.family, d.polynomials, property, |point| {
        Ok(reach_dense_one_clock(&model, point, &target)?.reachable != negate)
    })
}

/// Cells of the parameter space before any verdict is computed.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub method: Method,
    pub polynomials: Vec<String>,
    pub family: SignFamily,
    pub cells: Vec<Cell>,
}

impl Decomposition {
    pub fn to_json(&self, params: &[String]) -> Value {
        json!({
            "params": params,
            "method": self.method.name(),
            "polynomials": self.polynomials,
            "cells": self.cells.iter().map(|c| c.to_json(params, &self.polynomials)).collect::<Vec<_>>(),
        })
    }
}

/// The decomposition [`synthesize`] decides cell by cell.
pub fn decompose_model(pta: &Pta, psi: &SystemProperty) -> Result<Decomposition> {
    Ok(prepare(pta, psi)?.2)
}

/// The (possibly closed) model, the reachability target and the cells.
fn prepare(pta: &Pta, psi: &SystemProperty) -> Result<(Pta, StateProperty, Decomposition)> {
    let m = pta.params.len();
    let closing = needs_closing(pta.time_domain, pta.param_domain)?;
    let target = match psi.quantifier {
        Quantifier::ExistsEventually => psi.phi.clone(),
        Quantifier::ForallAlways => negate_property(&psi.phi),
    };
    let (model, target) = if closing { (close_model(pta), close_property(&target)) } else { (pta.clone(), target) };
    let reach_psi = SystemProperty { quantifier: Quantifier::ExistsEventually, phi: target.clone() };
    let family = collect_constraint_polynomials(&model, &reach_psi);
    check_shape(pta, m, &family)?;
    let x = crate::semantics::constrained_clock(&model, &target)?;
    let family = match x {
        Some(x) => with_auxiliary(family, x, model.transitions.iter().filter_map(|t| t.updates.get(&x).copied())),
        None => family,
    };
    let (method, cells, family, polynomials) = decompose_family(&family, m)?;
    Ok((model, target, Decomposition { method, polynomials, family, cells }))
}

/// The verdict of the cell containing `gamma`.
pub fn region_query(region: &FeasibleRegion, gamma: &ParameterValuation) -> Result<bool> {
    if gamma.0.len() != region.params.len() {
        return Err(Error::Invalid(format!(
            "valuation has {} coordinates, region has {} parameters",
            gamma.0.len(),
            region.params.len()
        )));
    }
    let cells: Vec<Cell> = region.cells.iter().map(|c| c.cell.clone()).collect();
    let k = locate(&cells, &gamma.0).ok_or_else(|| Error::Invalid("valuation outside every cell".into()))?;
    Ok(region.cells[k].verdict)
}

/// All syntactic runs from the initial location with at most `max_len`
/// transitions, shortest first, extensions in declaration order.
pub fn enumerate_runs(pta: &Pta, max_len: usize) -> Vec<SyntacticRun> {
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(pta.initial, Vec::new())]);
    while let Some((q, edges)) = queue.pop_front() {
        if edges.len() < max_len {
            for (e, t) in pta.transitions.iter().enumerate() {
                if t.source == q {
                    let mut next = edges.clone();
                    next.push(e);
                    queue.push_back((t.target, next));
                }
            }
        }
        out.push(SyntacticRun::new(edges));
    }
    out
}

fn close_run(run: &GuardOnlyRun) -> GuardOnlyRun {
    let mut r = run.clone();
    r.initial_condition = close_constraint(&r.initial_condition);
    for s in &mut r.steps {
        s.guard = close_constraint(&s.guard);
    }
    r.time_domain = TimeDomain::Dense;
    r
}

/// Region of valuations under which `tau` has a realization ending in a state
/// satisfying `phi`.
pub fn run_region(pta: &Pta, tau: &SyntacticRun, phi: &StateProperty) -> Result<FeasibleRegion> {
    tau.validate(pta)?;
    let m = pta.params.len();
    let closing = needs_closing(pta.time_domain, pta.param_domain)?;
    let runs: Vec<GuardOnlyRun> = alpha_transform(pta, tau, phi)?
        .iter()
        .map(|e| beta_encoded(pta, e))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .map(|r| if closing { close_run(&r) } else { r })
        .collect();
    let mut family = Vec::new();
    let mut clock = None;
    for r in &runs {
        if let Some(x) = crate::feasibility::run_clock(r)? {
            if clock.is_some_and(|c| c != x) {
                return Err(Error::Unsupported("run constrains several clocks".into()));
            }
            clock = Some(x);
        }
        for a in r.initial_condition.conjuncts.iter().chain(r.steps.iter().flat_map(|s| s.guard.conjuncts.iter())) {
            if let Some(f) = atom_poly(a) {
                push_unique(&mut family, f);
            }
        }
    }
    check_shape(pta, m, &family)?;
    if let Some(x) = clock {
        let resets: Vec<u64> =
            runs.iter().flat_map(|r| r.steps.iter().filter_map(|s| s.updates.get(&x).copied())).collect();
        family = with_auxiliary(family, x, resets.into_iter());
    }
    let (method, cells, family, polys) = decompose_family(&family, m)?;
    let property = format!(
        "{} |= {}",
        tau.render(pta),
        phi.render(&pta.clocks, &pta.params, &pta.loc_names())
    );
    assemble(pta, method, cells, family, polys, property, |point| {
        for r in &runs {
            if feasible_at(r, point)?.feasible {
                return Ok(true);
            }
        }
        Ok(false)
    })
}

/// Constraint polynomial rendered over clock and parameter names.
pub fn render_poly(f: &ConstraintPoly, pta: &Pta) -> String {
    f.render(|v| match v {
        Sym::Clock(c) => pta.clocks[c.0].clone(),
        Sym::Param(p) => pta.params[p.0].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::model::parse::{parse_model, parse_property, parse_state_property};
    use crate::semantics::{grid_oracle, integer_grid};

    const GATE: &str = "clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x >= 2 & x <= p ; go\n";

    #[test]
    fn collected_polynomials() {
        let pta = parse_model(GATE).unwrap();
        let psi = parse_property("EF q1", &pta).unwrap();
        let fs: Vec<String> = collect_constraint_polynomials(&pta, &psi).iter().map(|f| render_poly(f, &pta)).collect();
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&"-x + 2".to_string()) || fs.contains(&"2 - x".to_string()), "{fs:?}");
        let psi = parse_property("EF x <= p^2", &pta).unwrap();
        assert_eq!(collect_constraint_polynomials(&pta, &psi).len(), 3);
        let free = parse_model("clocks: x\nloc a init inv: true\n").unwrap();
        assert!(collect_constraint_polynomials(&free, &parse_property("EF a", &free).unwrap()).is_empty());
    }

    #[test]
    fn gate_region() {
        let pta = parse_model(GATE).unwrap();
        let psi = parse_property("EF q1", &pta).unwrap();
        let region = synthesize(&pta, &psi).unwrap();
        assert_eq!(region.method, Method::Cad1);
        // (-inf,0) {0} (0,2) {2} (2,inf)
        assert_eq!(region.verdicts(), vec![false, false, false, true, true]);
        for (g, expect) in [(3, true), (0, false), (2, true), (1, false), (-4, false)] {
            assert_eq!(region_query(&region, &ParameterValuation::ints(&[g])).unwrap(), expect, "p={g}");
        }
        assert!(!region_query(&region, &ParameterValuation(vec![ratio(19, 10)])).unwrap());
        let ag = synthesize(&pta, &parse_property("AG !q1", &pta).unwrap()).unwrap();
        assert_eq!(ag.verdicts(), vec![true, true, true, false, false]);
    }

    #[test]
    fn parameter_free() {
        let pta = parse_model("clocks: x\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x >= 1 ; a\n").unwrap();
        let region = synthesize(&pta, &parse_property("EF q1", &pta).unwrap()).unwrap();
        assert_eq!(region.cells.len(), 1);
        assert!(region.cells[0].verdict);
        assert!(region_query(&region, &ParameterValuation(vec![])).unwrap());
    }

    #[test]
    fn irrational_boundary() {
        let pta = parse_model("clocks: x\nparams: p\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x >= 2 & x <= p^2 - p ; a\n")
            .unwrap();
        let region = synthesize(&pta, &parse_property("EF q1", &pta).unwrap()).unwrap();
        // p^2 - p >= 2 iff p <= -1 or p >= 2
        for k in -8..=8 {
            let g = ratio(k, 2);
            let expect = &g * &g - &g >= rat(2);
            assert_eq!(region_query(&region, &ParameterValuation(vec![g.clone()])).unwrap(), expect, "p={g}");
        }
    }

    #[test]
    fn two_parameters_match_oracle() {
        let text = "clocks: x\nparams: a, b\nloc q0 init inv: x <= b\nloc q1 inv: true\nedge q0 -> q1 : x >= a ; go ; reset x := 1\n";
        let pta = parse_model(text).unwrap();
        for prop in ["EF q1", "AG !q1", "EF q1 & x <= 1"] {
            let psi = parse_property(prop, &pta).unwrap();
            let region = synthesize(&pta, &psi).unwrap();
            assert_eq!(region.method, Method::Linear);
            let grid = integer_grid(2, -3, 5);
            let oracle = grid_oracle(&pta, &psi, &grid, TimeDomain::Dense).unwrap();
            for (g, v) in oracle {
                assert_eq!(region_query(&region, &g).unwrap(), v, "{prop} at {g:?}");
            }
        }
    }

    #[test]
    fn discrete_time_with_strict_atoms() {
        let text = "clocks: x\nparams: p\ndomain: time=nat param=int\nloc q0 init inv: x < p\nloc q1 inv: true\nedge q0 -> q1 : x > 2 ; go\n";
        let pta = parse_model(text).unwrap();
        let psi = parse_property("EF q1", &pta).unwrap();
        let region = synthesize(&pta, &psi).unwrap();
        let grid = integer_grid(1, -5, 10);
        let oracle = grid_oracle(&pta, &psi, &grid, TimeDomain::Nat).unwrap();
        for (g, v) in oracle {
            assert_eq!(region_query(&region, &g).unwrap(), v, "{g:?}");
        }
        let real = parse_model(&text.replace("param=int", "param=real")).unwrap();
        assert!(matches!(synthesize(&real, &psi), Err(Error::Unsupported(_))));
    }

    #[test]
    fn runs_in_bfs_order() {
        let pta = parse_model(GATE).unwrap();
        assert_eq!(enumerate_runs(&pta, 1).len(), 2);
        let lp = parse_model("clocks: x\nloc a init inv: true\nedge a -> a : true ; t\n").unwrap();
        assert_eq!(enumerate_runs(&lp, 3).len(), 4);
        let par = parse_model("clocks: x\nloc a init inv: true\nloc b inv: true\nedge a -> b : true ; s\nedge a -> b : true ; t\n").unwrap();
        let runs = enumerate_runs(&par, 1);
        assert_eq!(runs.iter().map(|r| r.edges.clone()).collect::<Vec<_>>(), vec![vec![], vec![0], vec![1]]);
    }

    #[test]
    fn per_run_regions() {
        let pta = parse_model(GATE).unwrap();
        let region = run_region(&pta, &SyntacticRun::new(vec![0]), &StateProperty::True).unwrap();
        for (g, expect) in [(1, false), (2, true), (7, true)] {
            assert_eq!(region_query(&region, &ParameterValuation::ints(&[g])).unwrap(), expect);
        }
        let q0 = parse_state_property("q0", &pta).unwrap();
        let empty = run_region(&pta, &SyntacticRun::new(vec![]), &q0).unwrap();
        assert!(empty.cells.iter().all(|c| c.verdict));
        let two = parse_model(
            "clocks: x\nparams: p\nloc a init inv: true\nloc b inv: true\nloc c inv: true\nedge a -> b : x >= 3 ; s\nedge b -> c : x <= p ; t\n",
        )
        .unwrap();
        let region = run_region(&two, &SyntacticRun::new(vec![0, 1]), &StateProperty::True).unwrap();
        for g in -2..8 {
            assert_eq!(region_query(&region, &ParameterValuation::ints(&[g])).unwrap(), g >= 3);
        }
    }

    #[test]
    fn integer_witnesses() {
        let text = "clocks: x\nparams: p\ndomain: param=nat\nloc q0 init inv: true\nloc q1 inv: true\nedge q0 -> q1 : x >= 2 & x <= p ; go\n";
        let pta = parse_model(text).unwrap();
        let region = synthesize(&pta, &parse_property("EF q1", &pta).unwrap()).unwrap();
        let w: Vec<Option<i64>> = region
            .cells
            .iter()
            .map(|c| c.integer_witness.as_ref().map(|v| i64::try_from(&v[0]).unwrap()))
            .collect();
        assert_eq!(w, vec![None, Some(0), Some(1), Some(2), Some(3)]);
        assert!(!region.is_empty());
        let json = region.to_json();
        assert_eq!(json["method"], "cad1");
        assert_eq!(json["cells"][3]["verdict"], true);
    }
}
