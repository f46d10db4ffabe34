//! Randomized agreement suites. The acceptance tests run them at full size;
//! `selftest` runs them scaled down. Reports never contain timings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::algebra::rat;
use crate::error::{Error, Result};
use crate::feasibility::{boundary_cases, feasible_with_reset};
use crate::gen::{self, ModelConfig, OneClockRunConfig, TwoOneShape};
use crate::model::render::render_model;
use crate::model::{
    LocId, ParamDomain, ParamPoint, ParameterValuation, Pta, Quantifier, StateProperty, SystemProperty, TimeDomain,
};
use crate::semantics::{grid_oracle, integer_grid, reach, reach_dense_one_clock, reach_discrete, replay_run};
use crate::synthesis::{region_query, synthesize, FeasibleRegion};
use crate::transforms::{beta_transform, classify_lu_with};
use crate::two_clock::{
    find_onep3_indices, find_onep5_indices, find_onep6_index, find_pigeonhole_pair, path_run, periodicity_probe,
    pigeonhole_premises, revalidate, trace_of, validate_two_one, Lemma, Trace,
};

/// Failures kept verbatim in a report; the rest are only counted.
const KEEP: usize = 5;

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub criterion: u8,
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub examples: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    fn new(criterion: u8, name: &'static str) -> Self {
        SuiteOutcome { criterion, name, cases: 0, failures: 0, examples: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.examples.len() < KEEP {
            self.examples.push(msg);
        }
    }

    fn absorb(&mut self, other: Partial) {
        self.cases += other.cases;
        for f in other.failures {
            self.fail(f);
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {} {}: {} cases, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.cases,
            self.failures
        )
    }

    pub fn render(&self) -> String {
        let mut s = self.line();
        for n in &self.notes {
            let _ = write!(s, "\n    {n}");
        }
        for e in &self.examples {
            let _ = write!(s, "\n    ! {}", e.replace('\n', "\n      "));
        }
        s
    }
}

/// Per-instance results merged in instance order.
#[derive(Default)]
struct Partial {
    cases: usize,
    failures: Vec<String>,
}

fn merge<T: Send>(items: Vec<Result<T>>) -> (Vec<T>, Vec<String>) {
    let mut ok = Vec::new();
    let mut errs = Vec::new();
    for (k, r) in items.into_iter().enumerate() {
        match r {
            Ok(v) => ok.push(v),
            Err(e) => errs.push(format!("instance {k}: {e}")),
        }
    }
    (ok, errs)
}

#[derive(Default)]
struct FeasibilityTally {
    part: Partial,
    reset_free_feasible: usize,
    witness_failures: Vec<String>,
    cases: BTreeMap<(bool, bool), usize>,
}

/// Criteria 1 and 5: one-clock feasibility against reachability on the
/// chain automaton, and replay of reset-free witnesses.
pub fn feasibility_suites(seed: u64, runs: usize, lo: i64, hi: i64) -> (SuiteOutcome, SuiteOutcome) {
    let per_run: Vec<Result<FeasibilityTally>> = (0..runs)
        .into_par_iter()
        .map(|k| {
            let mut rng = gen::sub_rng(seed, k as u64);
            let run = gen::one_clock_run(&mut rng, OneClockRunConfig::default());
            let chain = run.automaton();
            let goal = StateProperty::Loc(LocId(run.len()));
            let reset_free = !run.has_updates();
            let mut t = FeasibilityTally::default();
            for g in integer_grid(run.params.len(), lo, hi) {
                t.part.cases += 1;
                let res = feasible_with_reset(&run, &g)?;
                let oracle = run.initial_holds(&g)?
                    && reach_dense_one_clock(&chain, &ParamPoint::Rational(g.clone()), &goal)?.reachable;
                let at = || format!("run {k} at {}:\n{}", g.render(&run.params), run.render());
                if res.feasible != oracle {
                    t.part.failures.push(format!("feasible={} oracle={oracle}; {}", res.feasible, at()));
                    continue;
                }
                if !res.feasible {
                    continue;
                }
                let replays = res.witness.as_ref().is_some_and(|w| replay_run(&chain, &g, w));
                if !replays {
                    t.part.failures.push(format!("witness does not replay; {}", at()));
                }
                if reset_free {
                    t.reset_free_feasible += 1;
                    if !replays {
                        t.witness_failures.push(at());
                    }
                    for c in boundary_cases(&run, &g)? {
                        *t.cases.entry(c).or_insert(0) += 1;
                    }
                }
            }
            Ok(t)
        })
        .collect();
    let (mut tallies, errs) = merge(per_run);
    match boundary_fixtures() {
        Ok(t) => tallies.push(t),
        Err(e) => tallies.push(FeasibilityTally { witness_failures: vec![e.to_string()], ..Default::default() }),
    }
    let mut one = SuiteOutcome::new(1, "one-clock feasibility vs reachability");
    let mut five = SuiteOutcome::new(5, "reset-free witness replay");
    let mut seen = BTreeMap::new();
    for t in tallies {
        five.cases += t.reset_free_feasible;
        for f in t.witness_failures {
            five.fail(f);
        }
        for (k, v) in t.cases {
            *seen.entry(k).or_insert(0) += v;
        }
        one.absorb(t.part);
    }
    for e in errs {
        one.fail(e);
    }
    one.notes.push(format!("{runs} runs, grid [{lo}, {hi}]^m"));
    let label = |(l, u): (bool, bool)| {
        format!("linf {}, usup {}", if l { "attained" } else { "open" }, if u { "attained" } else { "open/unbounded" })
    };
    for l in [false, true] {
        for u in [false, true] {
            let n = seen.get(&(l, u)).copied().unwrap_or(0);
            five.notes.push(format!("{}: {n} steps", label((l, u))));
            if n == 0 {
                five.fail(format!("boundary case `{}` never exercised", label((l, u))));
            }
        }
    }
    (one, five)
}

/// One reset-free single-step run per combination of attained/open bounds.
fn boundary_fixtures() -> Result<FeasibilityTally> {
    let mut t = FeasibilityTally::default();
    for guard in ["x > 1 & x <= p", "x >= 1 & x < p", "x > 1 & x < p", "x >= 1 & x <= p"] {
        let text = format!("clocks: x\nparams: p\nloc a init inv: true\nloc b inv: true\nedge a -> b : {guard} ; go ;");
        let pta = crate::model::parse::parse_model(&text)?;
        let run = beta_transform(&pta, &crate::model::SyntacticRun::new(vec![0]))?;
        let g = ParameterValuation::ints(&[3]);
        let res = feasible_with_reset(&run, &g)?;
        t.reset_free_feasible += 1;
        if !res.witness.as_ref().is_some_and(|w| replay_run(&run.automaton(), &g, w)) {
            t.witness_failures.push(format!("fixture `{guard}` at p=3"));
        }
        for c in boundary_cases(&run, &g)? {
            *t.cases.entry(c).or_insert(0) += 1;
        }
    }
    Ok(t)
}

fn synth_model(seed: u64, k: usize) -> (Pta, StateProperty) {
    let mut rng = gen::sub_rng(seed, k as u64);
    let m = if k % 3 == 2 { 2 } else { 1 };
    let mut cfg = ModelConfig::one_clock(m);
    if k % 4 == 3 {
        cfg.time = TimeDomain::Nat;
        cfg.param_domain = ParamDomain::Int;
    }
    let pta = gen::random_model(&mut rng, &cfg);
    let psi = gen::random_property(&mut rng, &pta, &cfg);
    (pta, psi.phi)
}

/// Criterion 2: synthesized regions against the grid oracle for `EF φ` and
/// `AG φ`. Returns the regions for the sign-invariance suite.
pub fn synthesis_suite(seed: u64, models: usize) -> (SuiteOutcome, Vec<FeasibleRegion>) {
    let per_model: Vec<Result<(Partial, Vec<FeasibleRegion>)>> = (0..models)
        .into_par_iter()
        .map(|k| {
            let (pta, phi) = synth_model(seed, k);
            let m = pta.params.len();
            let grid = if m == 1 { integer_grid(1, -5, 20) } else { integer_grid(m, -4, 12) };
            let mut part = Partial::default();
            let mut regions = Vec::new();
            for q in [Quantifier::ExistsEventually, Quantifier::ForallAlways] {
                let psi = SystemProperty { quantifier: q, phi: phi.clone() };
                let region = synthesize(&pta, &psi)?;
                let oracle = grid_oracle(&pta, &psi, &grid, pta.time_domain)?;
                for (g, want) in oracle {
                    part.cases += 1;
                    let got = region_query(&region, &g)?;
                    if got != want {
                        part.failures.push(format!(
                            "model {k}, {}, at {}: region {got}, oracle {want}\n{}",
                            psi.render(&pta.clocks, &pta.params, &pta.loc_names()),
                            g.render(&pta.params),
                            render_model(&pta)
                        ));
                    }
                }
                regions.push(region);
            }
            Ok((part, regions))
        })
        .collect();
    let (done, errs) = merge(per_model);
    let mut out = SuiteOutcome::new(2, "synthesis vs grid oracle");
    let mut regions = Vec::new();
    for (p, r) in done {
        out.absorb(p);
        regions.extend(r);
    }
    for e in errs {
        out.fail(e);
    }
    let methods = gen::tally(regions.iter().map(|r| r.method.name()));
    out.notes.push(format!("{models} models, EF and AG, methods {methods:?}"));
    (out, regions)
}

/// Criterion 3: interior samples of every cell keep the cell's signs.
pub fn sign_invariance_suite(seed: u64, regions: &[FeasibleRegion], samples: usize) -> SuiteOutcome {
    let per_region: Vec<Partial> = regions
        .par_iter()
        .enumerate()
        .map(|(k, region)| {
            let mut rng = gen::sub_rng(seed ^ 0x5eed, k as u64);
            let mut part = Partial::default();
            for (c, rc) in region.cells.iter().enumerate() {
                let cell = &rc.cell;
                let mut points = vec![cell.sample.clone()];
                points.extend(cell.interior_samples(&mut rng, samples));
                for pt in points {
                    part.cases += 1;
                    match region.family.signs_at(&pt) {
                        Some(s) if s == cell.signs => {}
                        other => part.failures.push(format!(
                            "region {k} cell {c} ({}): signs {:?} at {}, expected {:?}",
                            cell.kind_name(),
                            other,
                            crate::decomposition::sample_json(&pt),
                            cell.signs
                        )),
                    }
                }
            }
            part
        })
        .collect();
    let mut out = SuiteOutcome::new(3, "sign invariance of cells");
    let cells: usize = regions.iter().map(|r| r.cells.len()).sum();
    for p in per_region {
        out.absorb(p);
    }
    out.notes.push(format!("{} regions, {cells} cells, {samples} interior samples each", regions.len()));
    out
}

/// Criterion 4: `β` preserves reachability of a syntactic run's end.
pub fn invariant_move_suite(seed: u64, instances: usize) -> SuiteOutcome {
    let per: Vec<Result<Partial>> = (0..instances)
        .into_par_iter()
        .map(|k| {
            let mut rng = gen::sub_rng(seed ^ 0xbe7a, k as u64);
            let dense = k % 2 == 0;
            let mut cfg = ModelConfig::one_clock(1 + k % 2);
            cfg.polynomial = false;
            if !dense {
                cfg.clocks = 2;
                cfg.time = TimeDomain::Nat;
                cfg.param_domain = ParamDomain::Int;
            }
            let pta = gen::random_model(&mut rng, &cfg);
            let mut part = Partial::default();
            let Some(tau) = gen::random_path(&mut rng, &pta, 5) else {
                return Ok(part);
            };
            let vals: Vec<i64> = (0..pta.params.len()).map(|_| rand::Rng::gen_range(&mut rng, -2..=8)).collect();
            let g = ParameterValuation::ints(&vals);
            let point = ParamPoint::Rational(g.clone());
            let beta = beta_transform(&pta, &tau)?;
            let goal = StateProperty::Loc(LocId(tau.len()));
            let lhs = beta.initial_holds(&g)? && reach(&beta.automaton(), &point, &goal, pta.time_domain)?.reachable;
            let rhs = reach(&tau.automaton(&pta), &point, &goal, pta.time_domain)?.reachable;
            part.cases += 1;
            if lhs != rhs {
                part.failures.push(format!(
                    "instance {k}: beta {lhs}, original {rhs} at {} along {}\n{}",
                    g.render(&pta.params),
                    tau.render(&pta),
                    render_model(&pta)
                ));
            }
            Ok(part)
        })
        .collect();
    let (parts, errs) = merge(per);
    let mut out = SuiteOutcome::new(4, "invariant move equivalence");
    for p in parts {
        out.absorb(p);
    }
    for e in errs {
        out.fail(e);
    }
    out.notes.push(format!("{instances} instances, dense one-clock and discrete two-clock"));
    out
}

fn final_diff(tr: &Trace, a: usize, b: usize) -> crate::algebra::Rational {
    let l = tr.len();
    &tr.omega[l][a] - &tr.omega[l][b]
}

/// Criterion 6: the structural finders on runs meeting each lemma's
/// hypotheses. `count` instances per lemma, at most `count · 400` attempts.
pub fn structural_suite(seed: u64, count: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(6, "two-clock structural finders");
    for (li, lemma) in [Lemma::OneP3, Lemma::OneP5, Lemma::OneP6, Lemma::OneP4].into_iter().enumerate() {
        let stream = seed.wrapping_mul(31).wrapping_add(li as u64);
        let mut met = 0;
        let mut misses = Vec::new();
        let mut errors = Vec::new();
        let (mut start, limit, batch) = (0, count * 400, (count * 4).max(64));
        while met < count && start < limit {
            let results: Vec<_> =
                (start..start + batch).into_par_iter().map(|k| structural_instance(stream, k, lemma)).collect();
            start += batch;
            for r in results {
                if met == count {
                    break;
                }
                match r {
                    Ok(None) => {}
                    Ok(Some(Ok(()))) => met += 1,
                    Ok(Some(Err(m))) => {
                        met += 1;
                        misses.push(m);
                    }
                    Err(e) => errors.push(e.to_string()),
                }
            }
        }
        out.cases += met;
        out.notes.push(format!("{lemma:?}: {met} instances meeting the hypotheses, {} misses", misses.len()));
        for m in misses {
            out.fail(format!("falsification report ({lemma:?}): {m}"));
        }
        for e in errors {
            out.fail(format!("{lemma:?}: {e}"));
        }
        if met < count {
            out.fail(format!("{lemma:?}: only {met} of {count} generated instances met the hypotheses"));
        }
    }
    out
}

/// `None` when the generated instance misses the hypotheses.
fn structural_instance(stream: u64, k: usize, lemma: Lemma) -> Result<Option<std::result::Result<(), String>>> {
    let mut rng = gen::sub_rng(stream, k as u64);
    let psi = SystemProperty::ef(StateProperty::True);
    if lemma == Lemma::OneP4 {
        return pigeonhole_instance(&mut rng, &psi);
    }
    let shape = match lemma {
        Lemma::OneP3 => TwoOneShape::XGrows,
        Lemma::OneP5 => TwoOneShape::YGrows,
        _ => TwoOneShape::BothGrow,
    };
    let pta = gen::two_one_flower(&mut rng, shape);
    let two = validate_two_one(&pta)?;
    let (s0, s1) = crate::model::metrics::thresholds(&pta, &psi)?;
    let gamma = ParameterValuation::ints(&[(s1 + rand::Rng::gen_range(&mut rng, 0..=s0)) as i64]);
    let len = rand::Rng::gen_range(&mut rng, 4..=40);
    let run = gen::random_walk(&mut rng, &pta, &gamma, len, 2 * s0);
    let tr = trace_of(&pta, &gamma, &run)?;
    let s1r = rat(s1 as i64);
    let l = tr.len();
    let (hyp, found) = match lemma {
        Lemma::OneP3 => (final_diff(&tr, 0, 1) >= s1r, find_onep3_indices(&two, &tr, s0)),
        Lemma::OneP5 => (final_diff(&tr, 1, 0) >= s1r, find_onep5_indices(&two, &tr, s0)),
        _ => (tr.omega[l][0] >= s1r && tr.omega[l][1] >= s1r, find_onep6_index(&two, &tr, s0)),
    };
    if !hyp {
        return Ok(None);
    }
    Ok(Some(match found {
        Some(w) if revalidate(&two, &tr, s0, &w) => Ok(()),
        Some(w) => Err(format!("witness {:?} does not re-validate; run {}", w.indices, run.render(&pta))),
        None => Err(format!("no witness; S0={s0}; run {}\n{}", run.render(&pta), render_model(&pta))),
    }))
}

fn pigeonhole_instance(rng: &mut gen::GenRng, psi: &SystemProperty) -> Result<Option<std::result::Result<(), String>>> {
    let pta = gen::pigeonhole_model(rng);
    let two = validate_two_one(&pta)?;
    let (_, s1) = crate::model::metrics::thresholds(&pta, psi)?;
    let n = rand::Rng::gen_range(rng, (s1 as usize / 3).max(1)..=s1 as usize);
    let tau = gen::pigeonhole_path(rng, &pta, n);
    let feasible = |v: u64| -> Result<bool> { Ok(path_run(&pta, &tau.edges, &ParameterValuation::ints(&[v as i64]))?.is_some()) };
    // bracket a feasible γ ≥ S₁ with an infeasible γ+1 by bisection
    if !feasible(s1)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (s1, 2 * s1);
    while feasible(hi)? {
        lo = hi;
        hi *= 2;
        if hi > 64 * s1 {
            return Ok(None);
        }
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if feasible(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let gamma = ParameterValuation::ints(&[lo as i64]);
    let run = path_run(&pta, &tau.edges, &gamma)?.ok_or_else(|| Error::Invalid("bisection lost feasibility".into()))?;
    let tr = trace_of(&pta, &gamma, &run)?;
    if !pigeonhole_premises(&two, &tr, lo, s1)?.all() {
        return Ok(None);
    }
    Ok(Some(match find_pigeonhole_pair(&two, &tr) {
        Some(w) if revalidate(&two, &tr, 0, &w) => Ok(()),
        Some(w) => Err(format!("pair {:?} does not re-validate", w.indices)),
        None => Err(format!("no pair at γ={lo}; run {}\n{}", run.render(&pta), render_model(&pta))),
    }))
}

/// Criterion 7: periodicity probe on the shipped two-one models.
pub fn periodicity_suite(horizon_mult: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(7, "periodicity probe (EXPERIMENTAL)");
    let models = match crate::corpus::two_one_models() {
        Ok(m) => m,
        Err(e) => {
            out.fail(e.to_string());
            return out;
        }
    };
    for (name, pta, psi) in models {
        out.cases += 1;
        let res = validate_two_one(&pta).map_err(Error::from).and_then(|two| periodicity_probe(&two, &psi, horizon_mult));
        match res {
            Ok(r) => {
                let pattern: String = r.verdicts.iter().map(|v| if *v { 'T' } else { 'F' }).collect();
                let tail_ok = r.period.is_some_and(|(t1, c)| t1 >= r.s1 && t1 <= r.s1 + r.s0 && c <= r.s0);
                out.notes.push(format!(
                    "{name}: S0={} S1={} horizon={} period={:?} progression={:?} verdicts {}",
                    r.s0, r.s1, r.horizon, r.period, r.progression, pattern
                ));
                if !tail_ok {
                    out.fail(format!("{name}: {}", r.counterexample.unwrap_or_default()));
                }
            }
            Err(e) => out.fail(format!("{name}: {e}")),
        }
    }
    out.notes.push("the two-one decidability theorem itself is not certified; this is an empirical check".into());
    out
}

/// Criterion 8: `∃◇φ` is preserved by lowering lower-bound parameters and
/// raising upper-bound ones.
pub fn lu_monotonicity_suite(seed: u64, instances: usize, pairs: usize) -> SuiteOutcome {
    let per: Vec<Result<Partial>> = (0..instances)
        .into_par_iter()
        .map(|k| {
            let mut rng = gen::sub_rng(seed ^ 0x10, k as u64);
            let (pta, psi) = gen::lu_model(&mut rng);
            let mut part = Partial::default();
            let class = classify_lu_with(&pta, &psi.phi)?;
            if !class.is_lu {
                part.failures.push(format!("instance {k} is not L/U"));
                return Ok(part);
            }
            for _ in 0..pairs {
                let (g, g2) = gen::lu_pair(&mut rng, 0, 8);
                part.cases += 1;
                let a = reach_discrete(&pta, &g, &psi.phi)?.reachable;
                let b = reach_discrete(&pta, &g2, &psi.phi)?.reachable;
                if a && !b {
                    part.failures.push(format!(
                        "instance {k}: reachable at {} but not at {}\n{}",
                        g.render(&pta.params),
                        g2.render(&pta.params),
                        render_model(&pta)
                    ));
                }
            }
            Ok(part)
        })
        .collect();
    let (parts, errs) = merge(per);
    let mut out = SuiteOutcome::new(8, "L/U monotonicity");
    for p in parts {
        out.absorb(p);
    }
    for e in errs {
        out.fail(e);
    }
    out.notes.push(format!("{instances} L/U instances, {pairs} ordered pairs each, grid [0, 8]^2"));
    out
}

#[derive(Clone, Copy, Debug)]
pub struct Scale {
    pub feasibility_runs: usize,
    pub synthesis_models: usize,
    pub sign_samples: usize,
    pub move_instances: usize,
    pub structural: usize,
    pub probe_horizon: u64,
    pub lu_instances: usize,
}

impl Scale {
    pub const FULL: Scale = Scale {
        feasibility_runs: 500,
        synthesis_models: 200,
        sign_samples: 100,
        move_instances: 200,
        structural: 1000,
        probe_horizon: 3,
        lu_instances: 100,
    };
    pub const DEFAULT: Scale = Scale {
        feasibility_runs: 100,
        synthesis_models: 40,
        sign_samples: 20,
        move_instances: 100,
        structural: 100,
        probe_horizon: 3,
        lu_instances: 30,
    };
    pub const QUICK: Scale = Scale {
        feasibility_runs: 30,
        synthesis_models: 12,
        sign_samples: 10,
        move_instances: 40,
        structural: 20,
        probe_horizon: 1,
        lu_instances: 10,
    };
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteOutcome::passed)
    }

    pub fn render(&self) -> String {
        let mut s = format!("selftest seed {}\n", self.seed);
        for suite in &self.suites {
            s.push_str(&suite.render());
            s.push('\n');
        }
        s.push_str(if self.passed() { "all suites passed\n" } else { "some suites failed\n" });
        s
    }
}

/// Runs every suite at `scale`.
pub fn selftest(seed: u64, scale: Scale) -> SelftestReport {
    let (one, five) = feasibility_suites(seed, scale.feasibility_runs, -5, 20);
    let (two, regions) = synthesis_suite(seed, scale.synthesis_models);
    let three = sign_invariance_suite(seed, &regions, scale.sign_samples);
    let four = invariant_move_suite(seed, scale.move_instances);
    let six = structural_suite(seed, scale.structural);
    let seven = periodicity_suite(scale.probe_horizon);
    let eight = lu_monotonicity_suite(seed, scale.lu_instances, 20);
    SelftestReport { seed, suites: vec![one, two, three, four, five, six, seven, eight] }
}
