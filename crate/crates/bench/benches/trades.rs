use criterion::{criterion_group, criterion_main, Criterion};
use ssdd::{catalog_build, catalog_entry, generic_bound, orbit_trade_scan};

fn trades(c: &mut Criterion) {
    let mut g = c.benchmark_group("trades");
    g.sample_size(20);
    for id in ["dd-19", "dd-34", "dgdd-3pow9"] {
        let e = catalog_entry(id).unwrap();
        g.bench_function(format!("orbit/{id}"), |b| b.iter(|| orbit_trade_scan(e).unwrap()));
        let d = catalog_build(id).unwrap();
        g.bench_function(format!("generic/{id}"), |b| b.iter(|| generic_bound(d.design())));
    }
    g.finish();
}

criterion_group!(benches, trades);
criterion_main!(benches);
