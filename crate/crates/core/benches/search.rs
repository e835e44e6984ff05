use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sigmaeq::verify::dominance_sweep_with;
use sigmaeq::{enumerate_with, Execution, SearchConfig};

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ]
}

fn enumerate_bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for (n, k) in [(5, 3), (6, 4), (7, 5)] {
        for (label, execution) in modes() {
            let cfg = SearchConfig {
                execution,
                ..SearchConfig::default()
            };
            group.bench_with_input(
                BenchmarkId::new(label, format!("n{n}_k{k}")),
                &cfg,
                |b, cfg| b.iter(|| enumerate_with(n, k, cfg).unwrap()),
            );
        }
    }
    group.finish();
}

fn sweep_bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("dominance_sweep");
    group.sample_size(10);
    for (label, execution) in modes() {
        group.bench_function(BenchmarkId::new(label, "n4_cap40"), |b| {
            b.iter(|| dominance_sweep_with(4, 40, execution).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, enumerate_bench, sweep_bench);
criterion_main!(benches);
