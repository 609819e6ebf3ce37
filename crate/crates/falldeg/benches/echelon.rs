//! Benchmarks for the row-reduction kernel and the constructible-space
//! builder, comparing the data-parallel batch path against the sequential
//! fallback on identical workloads.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use falldeg::caps::Caps;
use falldeg::constructible::EchelonSpace;
use falldeg::field::FieldCtx;
use falldeg::gen::random_poly;
use falldeg::matrix::EchelonMat;
use falldeg::poly::RingCtx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rows(field: &FieldCtx, ncols: usize, nrows: usize, seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..nrows)
        .map(|_| (0..ncols).map(|_| rng.gen_range(0..field.order())).collect())
        .collect()
}

fn seeded_matrix(field: &FieldCtx, ncols: usize, seed: u64) -> EchelonMat {
    let mut mat = EchelonMat::new(field.clone(), ncols);
    for row in random_rows(field, ncols, ncols / 2, seed) {
        mat.insert(&row);
    }
    mat
}

fn bench_batch_reduce(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch_reduce");
    for &(p, ncols, nrows) in &[(2u64, 2048usize, 512usize), (3, 1024, 256)] {
        let field = FieldCtx::prime(p).unwrap();
        let mat = seeded_matrix(&field, ncols, 42);
        let batch = random_rows(&field, ncols, nrows, 43);
        group.bench_with_input(
            BenchmarkId::new("parallel", format!("gf{}_{}x{}", p, nrows, ncols)),
            &batch,
            |b, batch| b.iter(|| mat.reduce_batch(batch)),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", format!("gf{}_{}x{}", p, nrows, ncols)),
            &batch,
            |b, batch| b.iter(|| mat.reduce_batch_seq(batch)),
        );
    }
    group.finish();
}

fn bench_space_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("space_build");
    group.sample_size(10);
    let caps = Caps::default();
    for &(p, nvars, degree) in &[(2u64, 4usize, 6u32), (3, 3, 6)] {
        let field = FieldCtx::prime(p).unwrap();
        let ring = RingCtx::new(field, nvars);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let system: Vec<_> = (0..nvars).map(|_| random_poly(&ring, 2, &mut rng)).collect();
        group.bench_function(
            BenchmarkId::new("build", format!("gf{}_{}vars_deg{}", p, nvars, degree)),
            |b| b.iter(|| EchelonSpace::build(&system, &ring, degree, &caps).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_batch_reduce, bench_space_build);
criterion_main!(benches);
