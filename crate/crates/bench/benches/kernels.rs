use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jacobs_ladder::ladder::{build_ladder, substitution_check, LadderOrder};
use jacobs_ladder::verify::{chain_records, thm1_verify, Thm1Options};
use jacobs_ladder::{gram_point, hardy_z, integrate, j0, j1, BesselZeroTable, EvalAccuracy, ExclusionMode, Method};

fn special_functions(c: &mut Criterion) {
    let mut g = c.benchmark_group("hardy_z");
    for &t in &[50.0, 1e3, 1e5] {
        let rs = EvalAccuracy::new(1e-3, Method::RiemannSiegel).unwrap();
        let em = EvalAccuracy::new(1e-3, Method::EulerMaclaurin).unwrap();
        g.bench_with_input(BenchmarkId::new("riemann_siegel", t), &t, |b, &t| {
            b.iter(|| hardy_z(black_box(t), &rs).unwrap())
        });
        if t <= 1e3 {
            g.bench_with_input(BenchmarkId::new("euler_maclaurin", t), &t, |b, &t| {
                b.iter(|| hardy_z(black_box(t), &em).unwrap())
            });
        }
    }
    g.finish();

    let mut g = c.benchmark_group("bessel");
    for &x in &[3.0, 15.0, 500.0] {
        g.bench_with_input(BenchmarkId::new("j0", x), &x, |b, &x| {
            b.iter(|| j0(black_box(x)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("j1", x), &x, |b, &x| {
            b.iter(|| j1(black_box(x)).unwrap())
        });
    }
    g.finish();

    c.bench_function("gram_point/10000", |b| {
        b.iter(|| gram_point(black_box(10_000)).unwrap())
    });
}

fn quadrature(c: &mut Criterion) {
    c.bench_function("integrate/j1_0_500", |b| {
        b.iter(|| integrate(|x| j1(x).unwrap(), 0.0, black_box(500.0), 1e-12, Some(6.0)).unwrap())
    });
}

fn ladder(c: &mut Criterion) {
    let mut g = c.benchmark_group("ladder");
    g.sample_size(10);
    g.bench_function("build_first_order_1000_1100", |b| {
        b.iter(|| build_ladder(LadderOrder::First, 1000.0, black_box(1100.0), 1e-12).unwrap())
    });
    let table = build_ladder(LadderOrder::First, 1800.0, 2300.0, 1e-12).unwrap();
    g.bench_function("substitution_cos_T2000_U20", |b| {
        b.iter(|| substitution_check(&table, f64::cos, black_box(2000.0), 20.0).unwrap())
    });
    let zeros = BesselZeroTable::covering(2300.0);
    let opts = Thm1Options {
        force: true,
        ..Default::default()
    };
    g.bench_function("thm1_verify_nu1600", |b| {
        b.iter(|| {
            thm1_verify(
                &table,
                black_box(1600),
                0.05,
                ExclusionMode::PaperLiteral,
                &zeros,
                &opts,
            )
            .unwrap()
        })
    });
    g.finish();
    c.bench_function("chain_records/1600", |b| {
        b.iter(|| chain_records(black_box(1600)).unwrap())
    });
}

criterion_group!(benches, special_functions, quadrature, ladder);
criterion_main!(benches);
