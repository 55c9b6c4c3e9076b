use criterion::{criterion_group, criterion_main, Criterion};

use walker_core::{
    bspace, builtin_example, builtin_rep, classify, fd_curvature, infinitesimal_holonomy,
    riemann, Scalar,
};

fn bench_riemann(c: &mut Criterion) {
    let ike = builtin_example("ike96", None).unwrap();
    c.bench_function("riemann ike96 (n=5)", |b| {
        b.iter(|| riemann(std::hint::black_box(&ike)).unwrap())
    });
}

fn bench_classify(c: &mut Criterion) {
    let ike = builtin_example("ike96", None).unwrap();
    c.bench_function("classify ike96", |b| {
        b.iter(|| classify(std::hint::black_box(&ike)).unwrap())
    });
}

fn bench_holonomy(c: &mut Criterion) {
    let w = builtin_example("pr_basic", None).unwrap();
    let point = vec![Scalar::zero(); 4];
    c.bench_function("holonomy pr_basic (n=2)", |b| {
        b.iter(|| infinitesimal_holonomy(std::hint::black_box(&w), &point, None).unwrap())
    });
}

fn bench_bspace(c: &mut Criterion) {
    let so3 = builtin_rep("so3_five").unwrap();
    c.bench_function("bspace so(3) on R^5", |b| {
        b.iter(|| bspace(std::hint::black_box(&so3)))
    });
}

fn bench_fd(c: &mut Criterion) {
    let ike = builtin_example("ike96", None).unwrap();
    let point = vec![0.3; 7];
    c.bench_function("fd_curvature ike96", |b| {
        b.iter(|| fd_curvature(std::hint::black_box(&ike), &point, 1e-4).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_riemann, bench_classify, bench_holonomy, bench_bspace, bench_fd
}
criterion_main!(benches);
