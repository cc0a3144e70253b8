//! Criterion benches for the data-parallel kernels. Build once with the
//! default features for the rayon path and once with
//! `--no-default-features` for the sequential fallback; the mode is baked
//! into the benchmark names so the two runs can be compared side by side.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use string_genus::acceptance;
use string_genus::genera::phi_tilde;
use string_genus::modforms::{delta, miller_basis};
use string_genus::qseries::eisenstein_g;
use string_genus::spinbordism::{embedded_table, validate_table};

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "par"
    } else {
        "seq"
    }
}

fn bench_series_mul(c: &mut Criterion) {
    for prec in [128usize, 512] {
        let a = eisenstein_g(4, prec).unwrap();
        let b = eisenstein_g(6, prec).unwrap();
        c.bench_function(&format!("series_mul/{}/prec{}", mode(), prec), |bench| {
            bench.iter(|| a.mul(&b));
        });
    }
}

fn bench_delta(c: &mut Criterion) {
    c.bench_function(&format!("delta/{}/prec256", mode()), |bench| {
        bench.iter(|| delta(256));
    });
}

fn bench_phi_tilde(c: &mut Criterion) {
    c.bench_function(&format!("phi_tilde/{}/w6_prec32", mode()), |bench| {
        bench.iter(|| phi_tilde(6, 32));
    });
}

fn bench_miller_basis(c: &mut Criterion) {
    c.bench_function(&format!("miller_basis/{}/w48_prec64", mode()), |bench| {
        bench.iter(|| miller_basis(48, 64).unwrap());
    });
}

fn bench_table_validation(c: &mut Criterion) {
    let rows = embedded_table().unwrap();
    c.bench_function(&format!("mspin_validate/{}/128rows", mode()), |bench| {
        bench.iter_batched(
            || rows.clone(),
            |r| validate_table(&r),
            BatchSize::SmallInput,
        );
    });
}

fn bench_acceptance(c: &mut Criterion) {
    let mut group = c.benchmark_group("acceptance");
    group.sample_size(10);
    group.bench_function(format!("run_all/{}", mode()), |bench| {
        bench.iter(acceptance::run_all);
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_series_mul,
    bench_delta,
    bench_phi_tilde,
    bench_miller_basis,
    bench_table_validation,
    bench_acceptance
);
criterion_main!(benches);
