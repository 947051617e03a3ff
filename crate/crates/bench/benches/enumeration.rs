use std::fs;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use normsurf::convert::{enumerate_std_via_quad, quad_to_std, std_to_quad, ConvertOptions};
use normsurf::coords::{canonical_extension, quad_matching_system, standard_matching_system};
use normsurf::enumerate::enumerate_solution_set;
use normsurf::{build_skeleton, parse_triangulation, Skeleton, Triangulation};

const INPUTS: [&str; 4] = ["closed-n6", "bounded-n8", "closed-n10-b", "closed-n12-a"];

fn load(name: &str) -> (Triangulation, Skeleton) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{name}.tri"));
    let tri = parse_triangulation(&fs::read_to_string(path).unwrap()).unwrap();
    let skel = build_skeleton(&tri).unwrap();
    (tri, skel)
}

fn standard_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("standard_enumeration");
    group.sample_size(10);
    for name in INPUTS {
        let (tri, skel) = load(name);
        let sys = standard_matching_system(&tri, &skel);
        group.bench_with_input(BenchmarkId::new("direct", name), &sys, |b, sys| {
            b.iter(|| enumerate_solution_set(sys))
        });
        group.bench_with_input(BenchmarkId::new("via_quad", name), &(tri, skel), |b, (tri, skel)| {
            b.iter(|| enumerate_std_via_quad(tri, skel, &ConvertOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn conversions(c: &mut Criterion) {
    let mut group = c.benchmark_group("conversion");
    for name in INPUTS {
        let (tri, skel) = load(name);
        let std_sys = standard_matching_system(&tri, &skel);
        let quad = enumerate_solution_set(&quad_matching_system(&tri, &skel));
        let std = quad_to_std(&quad, &std_sys, &skel, &ConvertOptions::default()).unwrap().0;
        group.bench_function(BenchmarkId::new("quad_to_std", name), |b| {
            b.iter(|| quad_to_std(&quad, &std_sys, &skel, &ConvertOptions::default()).unwrap())
        });
        group.bench_function(BenchmarkId::new("std_to_quad", name), |b| b.iter(|| std_to_quad(&std)));
        group.bench_function(BenchmarkId::new("canonical_extension", name), |b| {
            b.iter(|| quad.vectors().map(|q| canonical_extension(&q, &std_sys, &skel).unwrap()).collect::<Vec<_>>())
        });
    }
    group.finish();
}

criterion_group!(benches, standard_enumeration, conversions);
criterion_main!(benches);
