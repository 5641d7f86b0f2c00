use criterion::{criterion_group, criterion_main, Criterion};
use qalg::{Matrix, ScalarContext};

fn bench_field_ops(c: &mut Criterion) {
    let ctx = ScalarContext::new(2);
    let a = ctx.qnum(7, 1);
    let b = ctx.qnum(5, 1);
    c.bench_function("field_mul", |bench| {
        bench.iter(|| std::hint::black_box(&a) * std::hint::black_box(&b))
    });
    c.bench_function("field_inv", |bench| {
        bench.iter(|| std::hint::black_box(&a).inv().unwrap())
    });
}

fn bench_matrix_ops(c: &mut Criterion) {
    let ctx = ScalarContext::new(2);
    let n = 8;
    let m = Matrix::from_fn(2, n, n, |i, j| {
        ctx.qnum((i + 2 * j + 1) as i64 % 5 + 1, 1)
    });
    c.bench_function("matrix_rank_8x8", |bench| {
        bench.iter(|| std::hint::black_box(&m).rank())
    });
    c.bench_function("matrix_mul_8x8", |bench| {
        bench.iter(|| std::hint::black_box(&m).mul(std::hint::black_box(&m)))
    });
}

criterion_group!(benches, bench_field_ops, bench_matrix_ops);
criterion_main!(benches);
