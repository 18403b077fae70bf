use criterion::{black_box, criterion_group, criterion_main, Criterion};

use wreath_bench::{c, d4, s3, spec};
use wreath_core::exact::BitBudget;
use wreath_core::formulas::{iterate_tower, psi_tower, theorem1_average, theorem2_average, PGroupProfile};
use wreath_core::numtheory::divisors;
use wreath_core::oracle::{brute_force_spectrum, orbit_spectrum};
use wreath_core::spectra::CumulativeOrderDistribution;

fn bench_formulas(cr: &mut Criterion) {
    let spec_d4 = spec(&d4());
    let spec_s3 = spec(&s3());
    let spec_c2 = spec(&c(2));
    cr.bench_function("theorem1_average d4_wr_s3", |b| {
        b.iter(|| theorem1_average(black_box(&spec_d4), black_box(&spec_s3)).unwrap())
    });
    let profile = PGroupProfile::from_spectrum(&spec(&c(64))).unwrap();
    cr.bench_function("theorem2_average c64_wr_c2", |b| {
        b.iter(|| theorem2_average(black_box(&profile), black_box(&spec_c2)).unwrap())
    });
}

fn bench_oracles(cr: &mut Criterion) {
    let c4 = c(4);
    let k4 = wreath_core::groups::elementary_abelian(2, 2).unwrap();
    cr.bench_function("brute_force c4_wr_k4", |b| {
        b.iter(|| brute_force_spectrum(black_box(&c4), black_box(&k4)).unwrap())
    });
    let c8 = c(8);
    cr.bench_function("orbit_spectrum c8_wr_c8", |b| {
        b.iter(|| orbit_spectrum(black_box(&c8), black_box(&c8)).unwrap())
    });
}

fn bench_towers(cr: &mut Criterion) {
    let r0 = CumulativeOrderDistribution::cyclic(2, 1).unwrap();
    let spec_c2 = spec(&c(2));
    let budget = BitBudget::default();
    cr.bench_function("iterate_tower 12 steps", |b| {
        b.iter(|| iterate_tower(black_box(&r0), 12, budget).unwrap())
    });
    cr.bench_function("psi_tower 8 steps", |b| {
        b.iter(|| psi_tower(black_box(&r0), black_box(&spec_c2), 8, budget).unwrap())
    });
}

fn bench_numtheory(cr: &mut Criterion) {
    cr.bench_function("divisors 1..4096", |b| {
        b.iter(|| {
            for n in 1..4096u64 {
                black_box(divisors(black_box(n)).unwrap());
            }
        })
    });
}

criterion_group!(benches, bench_formulas, bench_oracles, bench_towers, bench_numtheory);
criterion_main!(benches);
