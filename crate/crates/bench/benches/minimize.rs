use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use kmin_core::{gen_random, minimize_partition, trim_unreachable, GenSpec};

fn bench_minimize(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize");
    group.sample_size(10);
    for &n in &[1_000usize, 10_000, 100_000] {
        let spec = GenSpec {
            states: n,
            bits: 2,
            alphabet_size: 2,
            seed: 0xBEEF ^ n as u64,
            label_collision: 0.9,
        };
        let k = trim_unreachable(&gen_random(&spec)).0;
        group.throughput(Throughput::Elements(k.state_count() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &k, |b, k| {
            b.iter(|| minimize_partition(k).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_minimize);
criterion_main!(benches);
