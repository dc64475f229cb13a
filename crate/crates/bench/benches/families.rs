use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use shadowlab::canonical::{example15, hm_family};
use shadowlab::structure::{base_decomposition, tail_partition, width};
use shadowlab::verify::{min_shadow_table, shifted_corpus};
use shadowlab::{is_shifted, is_t_intersecting, shadow_j, shift_closure, sigma_ell, KSet};
use shadowlab_bench::frankl_union;

fn shadows(c: &mut Criterion) {
    let mut g = c.benchmark_group("shadow");
    for n in [16, 24, 32] {
        let f = frankl_union(n, 6, 3, 2).unwrap();
        g.bench_with_input(BenchmarkId::new("shadow_j1", n), &f, |b, f| {
            b.iter(|| shadow_j(black_box(f), 1).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("sigma_3", n), &f, |b, f| {
            b.iter(|| sigma_ell(black_box(f), 3).unwrap())
        });
    }
    g.finish();
}

fn structure(c: &mut Criterion) {
    let f = example15(30, 7, 3, 1).unwrap();
    c.bench_function("t_intersecting/example15", |b| b.iter(|| is_t_intersecting(black_box(&f), 3)));
    c.bench_function("shifted/example15", |b| b.iter(|| is_shifted(black_box(&f))));
    c.bench_function("width/example15", |b| b.iter(|| width(black_box(&f), 3).unwrap()));
    c.bench_function("tail_partition/example15", |b| {
        b.iter(|| tail_partition(black_box(&f), 3).unwrap())
    });
    c.bench_function("base/example15", |b| b.iter(|| base_decomposition(black_box(&f), 3).unwrap()));
    let h = hm_family(14, 5, 2).unwrap();
    let scrambled = h
        .map(5, |m| KSet::from_elements(m.elements().map(|x| 15 - x)).unwrap())
        .unwrap();
    c.bench_function("shift_closure/hm", |b| b.iter(|| shift_closure(black_box(&scrambled))));
}

fn oracles(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("min_shadow_n5_k3_t1", |b| b.iter(|| min_shadow_table(5, 3, 1, 1).unwrap()));
    g.bench_function("shifted_corpus_n12_k5_t2", |b| {
        b.iter(|| shifted_corpus(12, 5, 2, 0, 50).unwrap())
    });
    g.finish();
}

criterion_group!(benches, shadows, structure, oracles);
criterion_main!(benches);
