use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rota_core::hopfconv::{birkhoff_factorize, pole_character, rooted_tree_hopf};
use rota_core::rbalg::rb_check;
use rota_core::urb::{sample_triples, urb_mul};
use rota_core::RbAlgebra;

fn rota_baxter_identity(c: &mut Criterion) {
    let mut group = c.benchmark_group("rb_check");
    for alg in [RbAlgebra::laurent(), RbAlgebra::divided(), RbAlgebra::dual_numbers()] {
        let gens = alg.generators().unwrap();
        group.bench_function(BenchmarkId::from_parameter(alg.name()), |b| {
            b.iter(|| {
                for x in &gens {
                    for y in &gens {
                        black_box(rb_check(&alg, x, y).unwrap());
                    }
                }
            })
        });
    }
    group.finish();
}

fn operator_ring_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("urb_mul");
    for alg in [RbAlgebra::laurent(), RbAlgebra::divided()] {
        let samples = sample_triples(&alg, 1, 16);
        group.bench_function(BenchmarkId::from_parameter(alg.name()), |b| {
            b.iter(|| {
                for (u, v, _) in &samples {
                    black_box(urb_mul(&alg, u, v).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn birkhoff(c: &mut Criterion) {
    let mut group = c.benchmark_group("birkhoff");
    let a = RbAlgebra::laurent();
    for degree in [2, 3, 4] {
        let h = rooted_tree_hopf(degree).unwrap();
        let phi = pole_character(&h, &a).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(degree), &phi, |b, phi| {
            b.iter(|| black_box(birkhoff_factorize(&h, phi).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, rota_baxter_identity, operator_ring_product, birkhoff);
criterion_main!(benches);
