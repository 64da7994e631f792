use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use redlab_core::harness::gen::{gen_planted, gen_random_bp, GenParams, PlantedKind};
use redlab_core::harness::Instance;
use redlab_core::oracles::{solve_2sat_poly, solve_ann_nonreach, OracleCaps};
use redlab_core::reductions::circuit::{barrington_transform, bp_to_cnf_pw5};
use redlab_core::reductions::modulator::eliminate_treedepth_modulator;
use redlab_core::reductions::reach::complement_annotated;

fn circuit_instances() -> Vec<redlab_core::instance::Circuit> {
    (0..16)
        .map(|seed| {
            let params = GenParams { num_vars: 8, depth: 6, ..GenParams::default() };
            match gen_planted(PlantedKind::CircuitDepthBounded, &params, seed).unwrap() {
                Instance::Circuit(c) => c,
                _ => unreachable!(),
            }
        })
        .collect()
}

fn bench_barrington(c: &mut Criterion) {
    let circuits = circuit_instances();
    let mut i = 0;
    c.bench_function("barrington_transform depth<=6", |b| {
        b.iter_batched(
            || {
                let c = circuits[i % circuits.len()].clone();
                i += 1;
                c
            },
            |c| barrington_transform(&c).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_bp_to_cnf(c: &mut Criterion) {
    let bps: Vec<_> = (0..16).map(|s| gen_random_bp(6, 5, 64, s)).collect();
    let mut i = 0;
    c.bench_function("bp_to_cnf_pw5 length=64", |b| {
        b.iter_batched(
            || {
                let bp = bps[i % bps.len()].clone();
                i += 1;
                bp
            },
            |bp| bp_to_cnf_pw5(&bp).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_complement(c: &mut Criterion) {
    let params = GenParams { num_vars: 5, annotation_vars: 4, density: 0.4, ..GenParams::default() };
    let dags: Vec<_> = (0..8)
        .map(|s| match gen_planted(PlantedKind::AnnotatedDag, &params, s).unwrap() {
            Instance::AnnotatedDag(d) => d,
            _ => unreachable!(),
        })
        .collect();
    let mut i = 0;
    c.bench_function("complement_annotated n=5", |b| {
        b.iter_batched(
            || {
                let d = dags[i % dags.len()].clone();
                i += 1;
                d
            },
            |d| complement_annotated(&d).unwrap(),
            BatchSize::SmallInput,
        )
    });
    let caps = OracleCaps::default();
    c.bench_function("solve_ann_nonreach on complement outputs", |b| {
        let (complemented, _) = complement_annotated(&dags[0]).unwrap();
        b.iter(|| solve_ann_nonreach(&complemented, &caps).unwrap())
    });
}

fn bench_resolution(c: &mut Criterion) {
    let params = GenParams {
        num_vars: 8,
        modulator_size: 6,
        clauses: 9,
        depth: 3,
        ..GenParams::default()
    };
    let cnfs: Vec<_> = (0..16)
        .map(|s| match gen_planted(PlantedKind::CnfTdModulator, &params, s).unwrap() {
            Instance::Cnf(f) => f,
            _ => unreachable!(),
        })
        .collect();
    let mut i = 0;
    c.bench_function("eliminate_treedepth_modulator depth<=3", |b| {
        b.iter_batched(
            || {
                let f = cnfs[i % cnfs.len()].clone();
                i += 1;
                f
            },
            |f| eliminate_treedepth_modulator(&f).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn bench_two_sat(c: &mut Criterion) {
    let params = GenParams {
        num_vars: 14,
        modulator_size: 0,
        clauses: 30,
        arity: 2,
        ..GenParams::default()
    };
    let cnfs: Vec<_> = (0..16)
        .map(|s| match gen_planted(PlantedKind::Cnf2satBackdoor, &params, s).unwrap() {
            Instance::Cnf(f) => f,
            _ => unreachable!(),
        })
        .collect();
    c.bench_function("solve_2sat_poly n=14", |b| {
        b.iter(|| {
            for f in &cnfs {
                let _ = solve_2sat_poly(f).unwrap();
            }
        })
    });
}

criterion_group!(
    benches,
    bench_barrington,
    bench_bp_to_cnf,
    bench_complement,
    bench_resolution,
    bench_two_sat
);
criterion_main!(benches);
