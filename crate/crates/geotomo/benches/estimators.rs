//! Parallel vs sequential throughput for the three core estimators.
//!
//! Both modes walk the same batch streams, so their estimates agree bit for
//! bit; the benches measure what the rayon split buys on top of that.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use geotomo::bodies::{make_catalog_body, Density, Subspace};
use geotomo::radon::{blaschke_check, integrate_section, polar_volume, ExecMode, McConfig, Stream};

fn cfg(mode: ExecMode) -> McConfig {
    McConfig {
        mode,
        ..McConfig::default()
    }
}

fn modes() -> [(&'static str, ExecMode); 2] {
    [
        ("parallel", ExecMode::Parallel),
        ("sequential", ExecMode::Sequential),
    ]
}

fn bench_polar_volume(c: &mut Criterion) {
    let body = make_catalog_body("cube(4,1)").unwrap();
    let samples = 50_000;
    let mut group = c.benchmark_group("polar_volume");
    let baseline = polar_volume(&body, samples, &cfg(ExecMode::Sequential), Stream::new(0, 0));
    for (label, mode) in modes() {
        let mc = cfg(mode);
        let est = polar_volume(&body, samples, &mc, Stream::new(0, 0));
        assert_eq!(est.value, baseline.value);
        group.bench_with_input(BenchmarkId::from_parameter(label), &mc, |b, mc| {
            b.iter(|| polar_volume(&body, samples, mc, Stream::new(0, 0)))
        });
    }
    group.finish();
}

fn bench_integrate_section(c: &mut Criterion) {
    let body = make_catalog_body("ball(4,1)").unwrap();
    let xi = [0.5, 0.5, 0.5, 0.5];
    let h = Subspace::hyperplane(&xi).unwrap();
    let f = Density::gaussian();
    let samples = 20_000;
    let mut group = c.benchmark_group("integrate_section");
    let baseline = integrate_section(
        &body,
        &h,
        &f,
        samples,
        &cfg(ExecMode::Sequential),
        Stream::new(0, 0),
    );
    for (label, mode) in modes() {
        let mc = cfg(mode);
        let est = integrate_section(&body, &h, &f, samples, &mc, Stream::new(0, 0));
        assert_eq!(est.value, baseline.value);
        group.bench_with_input(BenchmarkId::from_parameter(label), &mc, |b, mc| {
            b.iter(|| integrate_section(&body, &h, &f, samples, mc, Stream::new(0, 0)))
        });
    }
    group.finish();
}

fn bench_blaschke_check(c: &mut Criterion) {
    let body = make_catalog_body("ball(3,1)").unwrap();
    let f = Density::gaussian();
    let samples = 20_000;
    let mut group = c.benchmark_group("blaschke_check");
    let baseline = blaschke_check(
        &body,
        &f,
        1,
        samples,
        &cfg(ExecMode::Sequential),
        Stream::new(0, 0),
    )
    .unwrap();
    for (label, mode) in modes() {
        let mc = cfg(mode);
        let pair = blaschke_check(&body, &f, 1, samples, &mc, Stream::new(0, 0)).unwrap();
        assert_eq!(pair.0.value, baseline.0.value);
        assert_eq!(pair.1.value, baseline.1.value);
        group.bench_with_input(BenchmarkId::from_parameter(label), &mc, |b, mc| {
            b.iter(|| blaschke_check(&body, &f, 1, samples, mc, Stream::new(0, 0)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_polar_volume,
    bench_integrate_section,
    bench_blaschke_check
);
criterion_main!(benches);
