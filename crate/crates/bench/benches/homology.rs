use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use topoprod::collapse::{greedy_collapse, tree_embed};
use topoprod::homology::homology_of;
use topoprod_bench::{cone, surfaces, torus_skeleton};

fn surface_homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("surface-homology");
    for (name, s) in surfaces() {
        g.bench_with_input(BenchmarkId::from_parameter(&name), &s, |b, s| b.iter(|| homology_of(black_box(s))));
    }
    g.finish();
}

fn torus_skeleta(c: &mut Criterion) {
    let mut g = c.benchmark_group("torus-skeleton");
    g.sample_size(10);
    for (k, n) in [(6, 2), (8, 3), (10, 4)] {
        g.bench_function(format!("k{k}-n{n}"), |b| b.iter(|| torus_skeleton(black_box(k), black_box(n))));
    }
    g.finish();
}

fn collapse_and_embed(c: &mut Criterion) {
    let mut g = c.benchmark_group("collapse");
    for n in [4, 16, 64] {
        let k = cone(n);
        g.bench_with_input(BenchmarkId::new("greedy", n), &k, |b, k| b.iter(|| greedy_collapse(black_box(k))));
        let plan = greedy_collapse(&k);
        g.bench_with_input(BenchmarkId::new("tree-embed", n), &k, |b, k| {
            b.iter(|| tree_embed(black_box(k), &plan).expect("cones embed"))
        });
    }
    g.finish();
}

criterion_group!(benches, surface_homology, torus_skeleta, collapse_and_embed);
criterion_main!(benches);
