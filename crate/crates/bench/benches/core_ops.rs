use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reclab_core::combinatorics::{phi_prefix_window, zero_sum_lengths, CyclicSeq};
use reclab_core::counterexample::{quartic_skew_map, riemann_closed_form};
use reclab_core::dynsys::{
    cocycle_sum, iterated_id_orbit, tower_orbit, BaseSystem, IteratedSkewState, SkewMap,
    SkewTower,
};
use reclab_core::rational::Rational;
use reclab_core::recurrence::{bohr_window, return_window, BohrSpec, GridBudget};
use reclab_core::torus::{BasePoint, ProductPoint, TorusPoint};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn bench_riemann(c: &mut Criterion) {
    let x = r(1, 1024);
    c.bench_function("riemann_closed_form_n256", |b| {
        b.iter(|| riemann_closed_form(256, &x).unwrap())
    });
    c.bench_function("riemann_direct_sum_n256", |b| {
        let h = quartic_skew_map();
        let base = BaseSystem::rotation_rational(r(1, 256));
        let p = BasePoint::torus1(TorusPoint::exact(x.clone()));
        b.iter(|| cocycle_sum(&base, &h, 256, &p).unwrap())
    });
}

fn bench_windows(c: &mut Criterion) {
    c.bench_function("bohr_window_rational_N10000", |b| {
        let spec = BohrSpec::rational1(r(89, 233), r(1, 20)).unwrap();
        b.iter(|| bohr_window(&spec, 10_000).unwrap())
    });
    c.bench_function("return_window_rotation_N10000", |b| {
        let tower = SkewTower::new(
            BaseSystem::rotation_rational(r(89, 233)),
            vec![SkewMap::constant_rational(r(1, 7))],
        )
        .unwrap();
        b.iter(|| return_window(&tower, &r(1, 10), 10_000, GridBudget::default()).unwrap())
    });
    c.bench_function("return_window_winding_grid_N24", |b| {
        let tower = SkewTower::new(
            BaseSystem::rotation_rational(r(1, 4)),
            vec![SkewMap::LinearWinding(1)],
        )
        .unwrap();
        b.iter(|| {
            return_window(&tower, &r(1, 10), 24, GridBudget { points_per_dim: 64 }).unwrap()
        })
    });
}

fn bench_towers(c: &mut Criterion) {
    let base = BaseSystem::rotation_rational(r(3, 11));
    let h = quartic_skew_map();
    let state = IteratedSkewState::new(
        BasePoint::torus1(TorusPoint::exact(r(2, 9))),
        vec![
            TorusPoint::exact(r(1, 3)),
            TorusPoint::exact(r(1, 11)),
            TorusPoint::exact(r(3, 4)),
        ],
    )
    .unwrap();
    let tower = SkewTower::new(
        base.clone(),
        vec![
            h.clone(),
            SkewMap::LinearWinding(1),
            SkewMap::LinearWinding(1),
        ],
    )
    .unwrap();
    let start = ProductPoint::new(state.x.clone(), state.t_vec.clone());
    c.bench_function("tower_orbit_d3_n1000", |b| {
        b.iter(|| tower_orbit(&tower, &start, 1000).unwrap())
    });
    c.bench_function("iterated_id_orbit_d3_n1000", |b| {
        b.iter(|| iterated_id_orbit(&base, &h, &state, 1000).unwrap())
    });
}

fn bench_combinatorics(c: &mut Criterion) {
    c.bench_function("zero_sum_lengths_N500", |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        b.iter_batched(
            || {
                CyclicSeq::new(7, 0, (0..500).map(|_| rng.gen_range(0..7)).collect()).unwrap()
            },
            |seq| zero_sum_lengths(&seq),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("phi_prefix_window_N10000", |b| {
        b.iter(|| phi_prefix_window(&r(1, 10), 10_000).unwrap())
    });
}

criterion_group!(
    benches,
    bench_riemann,
    bench_windows,
    bench_towers,
    bench_combinatorics
);
criterion_main!(benches);
