use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use forge_core::search::connected_graphs;
use forge_core::walks::DEFAULT_ENUMERATION_CAP;
use forge_core::{
    brute_force_conditional, build_table, catalog, classify, jump_distribution, left_nested_product,
    monte_carlo_conditional, JumpPattern,
};

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_table");
    for spec in ["prism:6", "lattice:2", "tree:binary:8", "free:2"] {
        let f = catalog(spec).unwrap();
        g.bench_function(spec, |b| b.iter(|| build_table(black_box(f.pointed()), None, spec).unwrap()));
    }
    g.finish();

    let t = build_table(catalog("lattice:2").unwrap().pointed(), None, "lattice:2").unwrap();
    c.bench_function("classify/lattice:2", |b| b.iter(|| classify(black_box(&t)).unwrap()));
}

fn products(c: &mut Criterion) {
    let pat: JumpPattern = "1,2,1,2".parse().unwrap();
    let f = catalog("prism:6").unwrap();
    let t = build_table(f.pointed(), None, "prism:6").unwrap();
    let window = f.cayley().unwrap();
    let mut g = c.benchmark_group("product/prism:6/1,2,1,2");
    g.bench_function("pl", |b| b.iter(|| left_nested_product(&t, black_box(&pat)).unwrap()));
    g.bench_function("j", |b| b.iter(|| jump_distribution(f.pointed(), black_box(&pat)).unwrap()));
    g.bench_function("brute", |b| {
        b.iter(|| brute_force_conditional(window, black_box(&pat), DEFAULT_ENUMERATION_CAP).unwrap())
    });
    g.bench_function("mc/100k", |b| b.iter(|| monte_carlo_conditional(window, &pat, 100_000, 0).unwrap()));
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("connected_graphs");
    g.sample_size(10);
    for n in [6, 7] {
        g.bench_function(n.to_string(), |b| b.iter(|| connected_graphs(black_box(n)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, tables, products, enumeration);
criterion_main!(benches);
