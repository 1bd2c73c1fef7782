use criterion::{criterion_group, criterion_main, Criterion};
use ssdd::{catalog_build, full_report, Kind};

fn verification(c: &mut Criterion) {
    let mut g = c.benchmark_group("full_report");
    for id in ["dd-19", "dd-43", "dd-103"] {
        let d = catalog_build(id).unwrap();
        g.bench_function(id, |b| b.iter(|| full_report(&d, Kind::Dd).unwrap()));
    }
    let gdd = catalog_build("dgdd-9pow5").unwrap();
    g.bench_function("dgdd-9pow5", |b| b.iter(|| full_report(&gdd, Kind::Dgdd).unwrap()));
    g.finish();
}

criterion_group!(benches, verification);
criterion_main!(benches);
