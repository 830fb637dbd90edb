use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use dpsbp_bench::unit_space;
use dpsbp_core::burgers::Burgers;
use dpsbp_core::euler::{Euler, EulerParams};
use dpsbp_core::swe::{ShallowWater, SweForm, SweParams};
use dpsbp_core::{System, Variant};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const VARIANTS: [Variant; 3] = [
    Variant::EntropyStable,
    Variant::EntropyConserving,
    Variant::LinearlyStable,
];

fn bench_system(c: &mut Criterion, label: &str, system: &dyn System) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let u = system.random_state(&mut rng);
    let mut du = vec![0.0; u.len()];
    let n = system.space().len();
    c.bench_with_input(BenchmarkId::new(label, n), &u, |b, u| {
        b.iter(|| system.rhs(0.0, black_box(u), &mut du).unwrap())
    });
}

fn rhs(c: &mut Criterion) {
    let line = unit_space(1024, 1).unwrap();
    let plane = unit_space(64, 2).unwrap();
    for v in VARIANTS {
        bench_system(c, &format!("burgers/{v}"), &Burgers::new(line.clone(), v));
        let swe = ShallowWater::new(plane.clone(), SweParams::new(9.81), v, SweForm::Flux).unwrap();
        bench_system(c, &format!("swe-2d/{v}"), &swe);
        bench_system(
            c,
            &format!("euler-2d/{v}"),
            &Euler::new(plane.clone(), EulerParams::default(), v),
        );
    }
}

criterion_group!(benches, rhs);
criterion_main!(benches);
