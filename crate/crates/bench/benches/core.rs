use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use cobinv_core::chow::Variety;
use cobinv_core::equivariant::{catalog, decompose, evaluate, CatalogKind};
use cobinv_core::verdicts::{bound_suite, curve_check};
use cobinv_core::Context;
use num_bigint::BigInt;

fn fgl(c: &mut Criterion) {
    c.bench_function("fgl_d8", |b| {
        b.iter(|| {
            let ctx = Context::with_degree(8).unwrap();
            black_box(ctx.fgl().unwrap().u(2))
        })
    });
}

fn classes(c: &mut Criterion) {
    let ctx = Context::with_degree(8).unwrap();
    c.bench_function("class_milnor_3_4", |b| {
        b.iter(|| black_box(ctx.lazard().class_of(&Variety::milnor(3, 4).unwrap()).unwrap()))
    });
}

fn fixtures(c: &mut Criterion) {
    c.bench_function("evaluate_x7_fresh", |b| {
        b.iter(|| {
            let ctx = Context::with_degree(8).unwrap();
            black_box(evaluate(&ctx, &catalog(&CatalogKind::Xn { n: 7 }).unwrap()).unwrap().nu.clone())
        })
    });
    let ctx = Context::with_degree(8).unwrap();
    let swap = catalog(&CatalogKind::P1xP1Swap).unwrap();
    c.bench_function("decompose_swap", |b| b.iter(|| black_box(decompose(&ctx, &swap).unwrap())));
    let x5 = evaluate(&ctx, &catalog(&CatalogKind::Xn { n: 5 }).unwrap()).unwrap();
    c.bench_function("bound_suite_x5", |b| b.iter(|| black_box(bound_suite(&ctx, &x5).unwrap())));
}

fn curves(c: &mut Criterion) {
    let ctx = Context::with_degree(8).unwrap();
    let k = BigInt::from;
    c.bench_function("curve_check_n3", |b| {
        b.iter(|| black_box(curve_check(&ctx, 3, &k(2), &k(1), &k(4)).unwrap().agree()))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = fgl, classes, fixtures, curves
}
criterion_main!(benches);
