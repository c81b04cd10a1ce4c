use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use semiloop::finloop::random_left_loop;
use semiloop::numerics::{disk_identity_residuals, disk_samples, polar_identity_residuals, PDH2_SHIFT};
use semiloop::semidirect::{external_product, heisenberg_spec};
use semiloop::{catalog_sweep, decompose, small_group_catalog, standard_product, StdProductSpec, SweepConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sweeps(c: &mut Criterion) {
    let config = SweepConfig {
        max_order: 8,
        cap: 512,
        jobs: Some(1),
    };
    c.bench_function("catalog_sweep_order_8", |b| {
        b.iter(|| catalog_sweep(black_box(&config)).unwrap())
    });
}

fn decomposition(c: &mut Criterion) {
    let entry = small_group_catalog(12)
        .into_iter()
        .find(|g| g.group.order() == 12 && !g.group.is_abelian())
        .expect("a nonabelian group of order 12");
    let g = entry.group;
    let h = g
        .all_subgroups()
        .into_iter()
        .find(|h| h.len() == 2)
        .expect("an order-2 subgroup");
    let b = g.select_unital_transversals(&h, 1).unwrap().remove(0);
    c.bench_function("decompose_order_12", |bn| {
        bn.iter(|| decompose(black_box(&g), &h, &b).unwrap())
    });
}

fn products(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let b = random_left_loop(5, &mut rng);
    let spec = StdProductSpec::with_lmlt1(b);
    c.bench_function("standard_product_order_5", |bn| {
        bn.iter(|| standard_product(black_box(&spec)).unwrap())
    });
    let heis = heisenberg_spec(5).unwrap();
    c.bench_function("external_product_heisenberg_5", |bn| {
        bn.iter(|| external_product(black_box(&heis)).unwrap())
    });
}

fn numerics(c: &mut Criterion) {
    let samples = disk_samples(1_000, 3, 0.99);
    c.bench_function("disk_residuals_1000", |b| {
        b.iter(|| disk_identity_residuals(black_box(&samples)))
    });
    c.bench_function("polar_residuals_100", |b| {
        b.iter(|| polar_identity_residuals(100, black_box(3), PDH2_SHIFT))
    });
}

criterion_group!(benches, sweeps, decomposition, products, numerics);
criterion_main!(benches);
