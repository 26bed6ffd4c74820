use criterion::{criterion_group, criterion_main, Criterion};
use gfc_core::ce::{formal_vector_fields, weight_zero_cohomology};
use gfc_core::invariants::inv_dim_bruteforce;
use gfc_core::lie;
use gfc_core::weil::{invariant_polynomials, relative_weil, weil_algebra};

fn bench_truncated_weil(c: &mut Criterion) {
    c.bench_function("weil_gl2_truncated_betti_deg4", |b| {
        b.iter(|| {
            let alg = weil_algebra(&lie::gl(2), Some(4)).unwrap();
            alg.cdga_cohomology(4).unwrap()
        })
    });
}

fn bench_relative(c: &mut Criterion) {
    c.bench_function("relative_so2_in_gl2_deg4", |b| {
        b.iter(|| {
            relative_weil(&lie::gl(2), &lie::so_in_gl(2), &[], Some(4), 4).unwrap()
        })
    });
    c.bench_function("invariant_polynomials_bgl2_deg6", |b| {
        b.iter(|| invariant_polynomials(&lie::bgl(2), Some(6), 6).unwrap())
    });
}

fn bench_ce_oracle(c: &mut Criterion) {
    c.bench_function("weight_zero_ce_line_with_factor_deg4", |b| {
        b.iter(|| {
            let wx = formal_vector_fields(1, &[lie::gl(1)], 4).unwrap();
            weight_zero_cohomology(&wx, 4).unwrap()
        })
    });
}

fn bench_invariants(c: &mut Criterion) {
    c.bench_function("inv_dim_bruteforce_2_0_2_1", |b| {
        b.iter(|| inv_dim_bruteforce(2, 0, 2, 1).unwrap())
    });
}

criterion_group!(
    benches,
    bench_truncated_weil,
    bench_relative,
    bench_ce_oracle,
    bench_invariants
);
criterion_main!(benches);
