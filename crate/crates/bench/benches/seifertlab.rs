use criterion::{black_box, criterion_group, criterion_main, Criterion};

use seifertlab::fpgroup::{coset_enumeration, hom_search, smith_normal_form};
use seifertlab::graph_manifold::{lemma44_case_groups, lemma45_sweep};
use seifertlab::orbifold::{lemma23_sweep, SweepCaps};
use seifertlab::FiniteGroupTable;
use seifertlab_bench::{random_matrices, triangle_235};

fn groups(c: &mut Criterion) {
    let a5 = FiniteGroupTable::alternating(5);
    let case3 = lemma44_case_groups().case3;
    let tri = triangle_235();
    c.bench_function("hom_search case 3 onto A5", |b| {
        b.iter(|| hom_search(black_box(&case3), &a5, true).unwrap())
    });
    c.bench_function("hom_search (2,3,5) onto A5", |b| {
        b.iter(|| hom_search(black_box(&tri), &a5, true).unwrap())
    });
    c.bench_function("coset enumeration (2,3,5)", |b| {
        b.iter(|| coset_enumeration(black_box(&tri), &[], 10_000))
    });
}

fn snf(c: &mut Criterion) {
    let ms = random_matrices(8, 16, 7);
    c.bench_function("smith normal form 8x8", |b| {
        b.iter(|| {
            for m in &ms {
                black_box(smith_normal_form(m));
            }
        })
    });
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweeps");
    g.sample_size(10);
    g.bench_function("rank inequality", |b| {
        b.iter(|| lemma23_sweep(SweepCaps::default()))
    });
    g.bench_function("surgery divisors |p|,|q| <= 50", |b| {
        b.iter(|| lemma45_sweep(black_box(50)))
    });
    g.finish();
}

criterion_group!(benches, groups, snf, sweeps);
criterion_main!(benches);
