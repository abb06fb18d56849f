//! Benchmarks for the hot kernels: graded-piece elimination, exhaustive WLP
//! scans, pfaffian expansion, and one full search trial.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use artin_core::gorenstein::{pfaffian_ideal, principal_pfaffians, random_be_matrix};
use artin_core::lefschetz::{wlp_check, Strategy, WlpOptions};
use artin_core::poly::parse_polynomial;
use artin_core::{FieldSpec, GradedIdeal};

fn exceptional(field: &FieldSpec) -> GradedIdeal {
    let gens = ["x^2*y", "x^2*z", "y^3", "z^3", "x^4+y^2*z^2"]
        .iter()
        .map(|s| parse_polynomial(s, field, &["x", "y", "z"]).unwrap())
        .collect();
    GradedIdeal::new(field.clone(), 3, gens).unwrap()
}

fn bench_hilbert(c: &mut Criterion) {
    let q = FieldSpec::rationals();
    let gens = ["x^3", "y^3", "z^3"]
        .iter()
        .map(|s| parse_polynomial(s, &q, &["x", "y", "z"]).unwrap())
        .collect::<Vec<_>>();
    c.bench_function("hilbert_ci_333_q", |b| {
        b.iter(|| {
            let ideal = GradedIdeal::new(q.clone(), 3, gens.clone()).unwrap();
            black_box(ideal.hilbert_function(8))
        })
    });
}

fn bench_wlp_exhaustive(c: &mut Criterion) {
    let f3 = FieldSpec::prime(3).unwrap();
    c.bench_function("wlp_exhaustive_exceptional_gf3", |b| {
        b.iter(|| {
            let ideal = exceptional(&f3);
            black_box(wlp_check(&ideal, Strategy::Exhaustive, WlpOptions::default()).unwrap())
        })
    });
}

fn bench_pfaffians(c: &mut Criterion) {
    let f101 = FieldSpec::prime(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let m = random_be_matrix(&f101, 3, &mut rng);
    c.bench_function("principal_pfaffians_5x5", |b| {
        b.iter(|| black_box(principal_pfaffians(&m).unwrap()))
    });
}

fn bench_search_trial(c: &mut Criterion) {
    let f3 = FieldSpec::prime(3).unwrap();
    c.bench_function("search_trial_gf3", |b| {
        let mut t = 0u64;
        b.iter(|| {
            t += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE ^ t);
            let m = random_be_matrix(&f3, 3, &mut rng);
            let Ok(ideal) = pfaffian_ideal(&m) else { return };
            let Ok(h) = ideal.hvector(8) else { return };
            if h.values() == [1, 3, 6, 6, 3, 1] {
                let _ =
                    black_box(wlp_check(&ideal, Strategy::Exhaustive, WlpOptions::default()));
            }
        })
    });
}

criterion_group!(
    benches,
    bench_hilbert,
    bench_wlp_exhaustive,
    bench_pfaffians,
    bench_search_trial
);
criterion_main!(benches);
