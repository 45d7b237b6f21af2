use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use crinv::variation::scan_modes_sequential;
use crinv::{Geometry, Rational};

fn scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_modes");
    group.sample_size(20);
    let bound = Rational::from(20);
    for (n, denom) in [(1u32, 2u32), (3, 4)] {
        let g = Geometry::new(n, Rational::frac(1, 2)).unwrap();
        let id = format!("n{n}_d{denom}");
        group.bench_with_input(BenchmarkId::new("sequential", &id), &g, |b, g| {
            b.iter(|| scan_modes_sequential(black_box(g), &bound, &bound, denom).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", &id), &g, |b, g| {
            b.iter(|| {
                crinv::variation::scan_modes_parallel(black_box(g), &bound, &bound, denom).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, scan);
criterion_main!(benches);
