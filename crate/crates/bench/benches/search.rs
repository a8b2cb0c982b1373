use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dihedral_loci::classify::classify;
use dihedral_loci::covers::{enumerate_admissible, restrict_index2, CoverType};
use dihedral_loci::group::{automorphisms_fixing, index2_subgroups, make_group, GroupType, DEFAULT_ORDER_BOUND};
use dihedral_loci::hurwitz::{orbit, DEFAULT_NODE_CAP};
use dihedral_loci_bench::{cover_i_vector, type1};

fn groups(c: &mut Criterion) {
    let mut group = c.benchmark_group("group");
    for n in [6u32, 12] {
        group.bench_with_input(BenchmarkId::new("make_type1", n), &n, |b, &n| {
            b.iter(|| make_group(GroupType::Type1, black_box(n)).unwrap())
        });
        let (g, h) = type1(n);
        group.bench_with_input(BenchmarkId::new("automorphisms_fixing_h", n), &n, |b, _| {
            b.iter(|| automorphisms_fixing(&g, &h, DEFAULT_ORDER_BOUND).unwrap())
        });
    }
    group.finish();
}

fn searches(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for n in [4u32, 6] {
        let (g, h) = type1(n);
        let auts = automorphisms_fixing(&g, &h, DEFAULT_ORDER_BOUND).unwrap();
        let v = cover_i_vector(&g);
        group.bench_with_input(BenchmarkId::new("orbit_cover_i", n), &n, |b, _| {
            b.iter(|| orbit(black_box(&v), &auts, DEFAULT_NODE_CAP).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("enumerate_cover_i", n), &n, |b, _| {
            b.iter(|| enumerate_admissible(&h, CoverType::I, DEFAULT_ORDER_BOUND).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("classify_cover_i", n), &n, |b, &n| {
            b.iter(|| classify(CoverType::I, GroupType::Type1, n, DEFAULT_NODE_CAP).unwrap())
        });
    }
    group.finish();
}

fn restriction(c: &mut Criterion) {
    let (g, _) = type1(6);
    let v = cover_i_vector(&g);
    let subgroups: Vec<_> = index2_subgroups(&g).into_iter().filter(|s| s.is_dihedral().is_some()).collect();
    c.bench_function("restrict_cover_i_n6_all_dihedral", |b| {
        b.iter(|| subgroups.iter().map(|s| restrict_index2(&v, s).unwrap().genus()).sum::<u32>())
    });
}

criterion_group!(benches, groups, searches, restriction);
criterion_main!(benches);
