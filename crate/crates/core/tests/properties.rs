//! Randomized invariants. Instances come from the seeded generators; proptest
//! drives the seeds and the parameter points.

use proptest::prelude::*;

use ptasynth::algebra::{ratio, Rational};
use ptasynth::feasibility::{feasible_no_reset, feasible_with_reset};
use ptasynth::gen::{self, ModelConfig, OneClockRunConfig, TwoOneShape};
use ptasynth::model::metrics::thresholds;
use ptasynth::model::parse::parse_model;
use ptasynth::model::render::render_model;
use ptasynth::semantics::{decide, reach, reach_dense_one_clock, replay_run};
use ptasynth::synthesis::{decompose_model, region_query, synthesize};
use ptasynth::two_clock::{
    find_onep3_indices, find_onep5_indices, find_onep6_index, path_run, revalidate, trace_of, validate_two_one,
};
use ptasynth::{LocId, ParamPoint, ParameterValuation, StateProperty, SystemProperty, TimeDomain};

fn point(num: &[i64], den: i64, m: usize) -> ParameterValuation {
    ParameterValuation(num.iter().take(m).map(|&n| ratio(n, den)).collect::<Vec<Rational>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn feasibility_matches_chain_reachability(seed in any::<u64>(), num in prop::collection::vec(-20i64..80, 2), den in 1i64..4) {
        let run = gen::one_clock_run(&mut gen::rng(seed), OneClockRunConfig::default());
        let g = point(&num, den, run.params.len());
        let chain = run.automaton();
        let res = feasible_with_reset(&run, &g).unwrap();
        let oracle = run.initial_holds(&g).unwrap()
            && reach_dense_one_clock(&chain, &ParamPoint::Rational(g.clone()), &StateProperty::Loc(LocId(run.len())))
                .unwrap()
                .reachable;
        prop_assert_eq!(res.feasible, oracle, "{}", run.render());
        if res.feasible {
            prop_assert!(res.witness.as_ref().is_some_and(|w| replay_run(&chain, &g, w)));
        } else {
            prop_assert!(res.failing_pair.is_some());
        }
        if !run.has_updates() {
            prop_assert_eq!(feasible_no_reset(&run, &g).unwrap().feasible, res.feasible);
        }
    }

    #[test]
    fn random_models_round_trip(seed in any::<u64>(), m in 1usize..3) {
        let pta = gen::random_model(&mut gen::rng(seed), &ModelConfig::one_clock(m));
        let text = render_model(&pta);
        prop_assert_eq!(parse_model(&text).unwrap(), pta, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn region_agrees_with_direct_check(seed in any::<u64>(), m in 1usize..3, num in prop::collection::vec(-10i64..40, 2), den in 1i64..4) {
        let mut rng = gen::rng(seed);
        let cfg = ModelConfig::one_clock(m);
        let pta = gen::random_model(&mut rng, &cfg);
        let psi = gen::random_property(&mut rng, &pta, &cfg);
        let region = synthesize(&pta, &psi).unwrap();
        let g = point(&num, den, m);
        let want = decide(&pta, &ParamPoint::Rational(g.clone()), &psi, pta.time_domain).unwrap();
        prop_assert_eq!(region_query(&region, &g).unwrap(), want, "{}", render_model(&pta));
    }

    #[test]
    fn cells_cover_parameter_space(seed in any::<u64>(), m in 1usize..3, num in prop::collection::vec(-30i64..60, 2), den in 1i64..6) {
        let mut rng = gen::rng(seed);
        let cfg = ModelConfig::one_clock(m);
        let pta = gen::random_model(&mut rng, &cfg);
        let psi = gen::random_property(&mut rng, &pta, &cfg);
        let d = decompose_model(&pta, &psi).unwrap();
        let pt = ParamPoint::Rational(point(&num, den, m));
        let signs = d.family.signs_at(&pt).unwrap();
        prop_assert!(d.cells.iter().any(|c| c.signs == signs), "{}", render_model(&pta));
    }

    #[test]
    fn path_run_matches_path_automaton(seed in any::<u64>(), n in 1usize..12, p in 0i64..40) {
        let mut rng = gen::rng(seed);
        let pta = gen::pigeonhole_model(&mut rng);
        let tau = gen::pigeonhole_path(&mut rng, &pta, n);
        let g = ParameterValuation::ints(&[p]);
        let direct = path_run(&pta, &tau.edges, &g).unwrap();
        let oracle = reach(
            &tau.automaton(&pta),
            &ParamPoint::Rational(g.clone()),
            &StateProperty::Loc(LocId(tau.len())),
            TimeDomain::Nat,
        )
        .unwrap()
        .reachable;
        prop_assert_eq!(direct.is_some(), oracle);
        if let Some(run) = direct {
            prop_assert!(replay_run(&pta, &g, &run));
            prop_assert_eq!(run.syntactic(), tau);
        }
    }

    #[test]
    fn structural_witnesses_revalidate(seed in any::<u64>(), shape in 0usize..3, len in 4usize..40) {
        let mut rng = gen::rng(seed);
        let shape = [TwoOneShape::XGrows, TwoOneShape::YGrows, TwoOneShape::BothGrow][shape];
        let pta = gen::two_one_flower(&mut rng, shape);
        let two = validate_two_one(&pta).unwrap();
        let (s0, s1) = thresholds(&pta, &SystemProperty::ef(StateProperty::True)).unwrap();
        let gamma = ParameterValuation::ints(&[s1 as i64]);
        let run = gen::random_walk(&mut rng, &pta, &gamma, len, 2 * s0);
        let tr = trace_of(&pta, &gamma, &run).unwrap();
        let found = [find_onep3_indices(&two, &tr, s0), find_onep5_indices(&two, &tr, s0), find_onep6_index(&two, &tr, s0)];
        for w in found.into_iter().flatten() {
            prop_assert!(revalidate(&two, &tr, s0, &w), "{:?} on {}", w.indices, run.render(&pta));
        }
    }
}
