use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use z2ca_bench::{noisy_gauge, noisy_matter};
use z2ca_core::packed::{PackedGauge, PackedMatter};
use z2ca_core::{run, step_r, step_r_a, GaugeInput, SRule, TheorySpec};

fn rows(c: &mut Criterion) {
    let mut group = c.benchmark_group("step");
    for width in [8usize, 64, 1024] {
        let psi = noisy_matter(width, 1);
        let a = noisy_gauge(width, 2);
        group.bench_with_input(BenchmarkId::new("r", width), &psi, |b, psi| {
            b.iter(|| step_r(black_box(psi)))
        });
        group.bench_with_input(
            BenchmarkId::new("r_a", width),
            &(psi.clone(), a.clone()),
            |b, (psi, a)| b.iter(|| step_r_a(black_box(psi), black_box(a)).unwrap()),
        );
    }
    group.finish();
}

fn packed(c: &mut Criterion) {
    let psi = PackedMatter::from_row(&noisy_matter(64, 3)).unwrap();
    let a = PackedGauge::from_row(&noisy_gauge(64, 4)).unwrap();
    c.bench_function("packed/step_gauged/64", |b| {
        b.iter(|| black_box(psi).step_gauged(black_box(a)))
    });
}

fn runs(c: &mut Criterion) {
    let psi0 = noisy_matter(64, 5);
    let a0 = GaugeInput::Initial(noisy_gauge(64, 6));
    c.bench_function("run/advect/64x64", |b| {
        b.iter(|| run(TheorySpec::gauged(SRule::Advect), black_box(&psi0), &a0, 64).unwrap())
    });
}

criterion_group!(benches, rows, packed, runs);
criterion_main!(benches);
