use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};

use ptasynth::corpus::{two_one_models, GATE, GATE_PROP};
use ptasynth::feasibility::feasible_with_reset;
use ptasynth::gen::{self, ModelConfig, OneClockRunConfig};
use ptasynth::model::parse::{parse_model, parse_property};
use ptasynth::synthesis::{decompose_model, synthesize};
use ptasynth::two_clock::{path_run, periodicity_probe, validate_two_one};
use ptasynth::ParameterValuation;

fn gate(c: &mut Criterion) {
    let pta = parse_model(GATE).unwrap();
    let psi = parse_property(GATE_PROP.trim(), &pta).unwrap();
    c.bench_function("parse gate", |b| b.iter(|| parse_model(black_box(GATE)).unwrap()));
    c.bench_function("synth gate", |b| b.iter(|| synthesize(black_box(&pta), &psi).unwrap()));
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    group.sample_size(10);
    for m in [1, 2] {
        let models: Vec<_> = (0..16)
            .map(|k| {
                let mut rng = gen::sub_rng(7, k);
                let cfg = ModelConfig::one_clock(m);
                let pta = gen::random_model(&mut rng, &cfg);
                let psi = gen::random_property(&mut rng, &pta, &cfg);
                (pta, psi)
            })
            .collect();
        group.bench_function(format!("{m} params x16"), |b| {
            b.iter(|| {
                for (pta, psi) in &models {
                    black_box(decompose_model(pta, psi).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn feasibility(c: &mut Criterion) {
    let runs: Vec<_> = (0..64).map(|k| gen::one_clock_run(&mut gen::sub_rng(11, k), OneClockRunConfig::default())).collect();
    c.bench_function("one-clock feasibility x64", |b| {
        b.iter_batched(
            || ParameterValuation::ints(&[3, 7]),
            |g| {
                for run in &runs {
                    let g = ParameterValuation(g.0[..run.params.len()].to_vec());
                    black_box(feasible_with_reset(run, &g).unwrap());
                }
            },
            BatchSize::SmallInput,
        )
    });
}

fn two_clock(c: &mut Criterion) {
    let mut rng = gen::rng(5);
    let pta = gen::pigeonhole_model(&mut rng);
    let tau = gen::pigeonhole_path(&mut rng, &pta, 40);
    let g = ParameterValuation::ints(&[20]);
    c.bench_function("path_run 40 steps", |b| b.iter(|| path_run(&pta, black_box(&tau.edges), &g).unwrap()));

    let (name, pta, psi) = two_one_models().unwrap().into_iter().find(|(n, _, _)| *n == "even").unwrap();
    let two = validate_two_one(&pta).unwrap();
    let mut group = c.benchmark_group("periodicity");
    group.sample_size(10);
    group.bench_function(name, |b| b.iter(|| periodicity_probe(&two, &psi, 1).unwrap()));
    group.finish();
}

criterion_group!(benches, gate, decomposition, feasibility, two_clock);
criterion_main!(benches);
