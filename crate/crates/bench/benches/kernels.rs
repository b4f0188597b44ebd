use std::hint::black_box;

use cihomol_bench::{conjugate, random_matrix, ring, sample_module};
use cihomol_core::construct::{cx1_family, FamilySpec};
use cihomol_core::homalg::{cache, resolve};
use cihomol_core::module::iso_test;
use cihomol_core::Module;
use criterion::{criterion_group, criterion_main, Criterion};

fn no_cache() {
    cache::configure(cache::CacheConfig { memory: false, dir: None });
}

fn rref(c: &mut Criterion) {
    for n in [64usize, 256] {
        let m = random_matrix(7, n, n + n / 2, n as u64);
        c.bench_function(&format!("rref {n}x{}", n + n / 2), |b| b.iter(|| black_box(&m).rank()));
    }
}

fn resolution(c: &mut Criterion) {
    no_cache();
    let r = ring("p=5;exps=2,2");
    let k = Module::residue_field(&r);
    c.bench_function("resolve k over (x2,y2) to degree 8", |b| b.iter(|| resolve(black_box(&k), 8)));
    let r = ring("p=7;exps=6,9");
    let m = sample_module(&r, 3);
    c.bench_function(&format!("resolve dim-{} module over (x6,y9) to degree 4", m.dim()), |b| {
        b.iter(|| resolve(black_box(&m), 4))
    });
}

fn isomorphism(c: &mut Criterion) {
    no_cache();
    let r = ring("p=5;exps=5,5");
    let m = sample_module(&r, 9);
    let n = conjugate(&m, 1);
    c.bench_function(&format!("iso_test against a conjugate, dim {}", m.dim()), |b| {
        b.iter(|| iso_test(black_box(&m), black_box(&n), 16, 0))
    });
}

fn family(c: &mut Criterion) {
    no_cache();
    let r = ring("p=5;exps=2,2,3");
    let mut g = c.benchmark_group("family");
    g.sample_size(10);
    g.bench_function("certified axis family, budget 20", |b| {
        b.iter(|| cx1_family(&r, &FamilySpec::AxisQuotients, 20, 0).expect("family"))
    });
    g.finish();
}

criterion_group!(benches, rref, resolution, isomorphism, family);
criterion_main!(benches);
