use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use nonrep::sudoku::gen::{batch_stats_with, Execution};

fn batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch_stats");
    group.sample_size(10);
    for n in [20, 60] {
        for (name, exec) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| batch_stats_with(black_box(n), 11, 3, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, batch);
criterion_main!(benches);
