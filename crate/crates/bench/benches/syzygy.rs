use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qa_bench::{cpq, cpq_m0};
use qa_core::decomp::{decompose, IsoRegistry};
use qa_core::homology::syzygy;
use qa_core::igusa::{default_suite, phi_lower_bound};

fn bench_syzygy(c: &mut Criterion) {
    let g = cpq(2);
    let mut group = c.benchmark_group("syzygy");
    for n in [1, 2, 4] {
        let m = cpq_m0(&g, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| syzygy(m)));
    }
    group.finish();
}

fn bench_decompose(c: &mut Criterion) {
    let g = cpq(2);
    let m = syzygy(&cpq_m0(&g, 3));
    c.bench_function("decompose Ω(M0, n=3)", |b| b.iter(|| decompose(&m).unwrap()));
}

fn bench_algebra(c: &mut Criterion) {
    c.bench_function("build C_{p,q} m=4", |b| b.iter(|| cpq(4)));
}

fn bench_phi(c: &mut Criterion) {
    let g = cpq(2);
    let suite = default_suite(&g.c);
    c.bench_function("φ lower bound, default suite", |b| {
        b.iter(|| {
            let mut reg = IsoRegistry::new(&g.c);
            phi_lower_bound(&suite, &mut reg).unwrap()
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_syzygy, bench_decompose, bench_algebra, bench_phi
}
criterion_main!(benches);
