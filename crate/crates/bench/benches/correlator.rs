//! Microbenchmarks for the hot numeric paths: the operator, closed-form,
//! and quadrature correlator routes at two sector sizes, quadrature-rule
//! construction, projector assembly by both constructions, and raw
//! Hermite-function evaluation.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use duosc_core::{
    gauss_hermite_rule, hermite_function, projector_group_average, projector_spectral,
    two_point_bruteforce, two_point_closed_form, two_point_quadrature, PhasePoint, SectorLabel,
    TrajectoryPair, TrajectoryParams, Truncation,
};

fn pair_for(mass: u32) -> (SectorLabel, TrajectoryPair) {
    let sector = SectorLabel::from_mass(mass as i64).expect("valid mass");
    let traj = TrajectoryParams::on_shell(mass, 0.8 * mass as f64, 0.7).expect("on-shell radii");
    let pair = TrajectoryPair::new(traj, PhasePoint::new(1.1), PhasePoint::new(0.3));
    (sector, pair)
}

fn bench_correlator_methods(c: &mut Criterion) {
    let mut group = c.benchmark_group("two_point");
    for mass in [4_u32, 8] {
        let (sector, pair) = pair_for(mass);
        let rule = gauss_hermite_rule(sector.two_j() as usize + 5).expect("rule builds");

        group.bench_function(format!("bruteforce/m{mass}"), |b| {
            b.iter(|| {
                two_point_bruteforce(
                    black_box(pair.ket_label()),
                    black_box(pair.bra_label()),
                    sector,
                    1.0,
                )
                .expect("in range")
                .value
            })
        });
        group.bench_function(format!("closed_form/m{mass}"), |b| {
            b.iter(|| {
                two_point_closed_form(
                    black_box(pair.ket_label()),
                    black_box(pair.bra_label()),
                    sector,
                )
                .expect("in range")
                .value
            })
        });
        group.bench_function(format!("quadrature/m{mass}"), |b| {
            b.iter(|| {
                two_point_quadrature(
                    black_box(pair.ket_label()),
                    black_box(pair.bra_label()),
                    sector,
                    &rule,
                )
                .expect("order above threshold")
                .value
            })
        });
    }
    group.finish();
}

fn bench_quadrature_rule(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss_hermite_rule");
    for order in [25_usize, 101] {
        group.bench_function(format!("order{order}"), |b| {
            b.iter(|| gauss_hermite_rule(black_box(order)).expect("rule builds"))
        });
    }
    group.finish();
}

fn bench_projectors(c: &mut Criterion) {
    let sector = SectorLabel::from_mass(8).expect("valid mass");
    let trunc = Truncation::new(11).expect("valid truncation");
    // Smallest step count past the spectral range of the constraint, the
    // same choice the validation suite makes.
    let steps = 2 * (2 * trunc.n_max() + 1) + 1;

    let mut group = c.benchmark_group("projector");
    group.bench_function("spectral/m8", |b| {
        b.iter(|| projector_spectral(black_box(sector), trunc).expect("truncation is large enough"))
    });
    group.bench_function("group_average/m8", |b| {
        b.iter(|| {
            projector_group_average(black_box(sector), trunc, steps)
                .expect("truncation is large enough")
        })
    });
    group.finish();
}

fn bench_hermite(c: &mut Criterion) {
    c.bench_function("hermite_function/n40", |b| {
        b.iter(|| hermite_function(black_box(40), black_box(1.3)))
    });
}

criterion_group!(
    benches,
    bench_correlator_methods,
    bench_quadrature_rule,
    bench_projectors,
    bench_hermite
);
criterion_main!(benches);
