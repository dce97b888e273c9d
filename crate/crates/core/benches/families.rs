use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use patternlab::oracle::{brute_gf, GfSpec};
use patternlab::rec123::d_table;
use patternlab::rec132::{s3_table, s4_table};
use patternlab::{Parallelism, PatternSet};

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Parallel),
];

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("tables");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new("s3_n9", name), &mode, |b, &m| {
            b.iter(|| s3_table(9, m).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("s4_n6", name), &mode, |b, &m| {
            b.iter(|| s4_table(6, m).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("d_n10", name), &mode, |b, &m| {
            b.iter(|| d_table(10, m).unwrap())
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    let spec = GfSpec::new(
        10,
        PatternSet::parse(&["132"]).unwrap(),
        PatternSet::parse(&["12", "21", "123", "213", "231", "312", "321"]).unwrap(),
    );
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::new("gamma3_n10", name), &mode, |b, &m| {
            b.iter(|| brute_gf(&spec, m).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, tables, enumeration);
criterion_main!(benches);
