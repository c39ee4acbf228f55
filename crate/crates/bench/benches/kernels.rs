use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use sp4r::algebra::{build_generators, verify_commutation_table};
use sp4r::fock::interior_projector;
use sp4r::hamiltonian::tilt_pipeline;
use sp4r::linalg::{c, expm, hermitian_eigenvalues};
use sp4r::tilt::symplectic::conjugate_coefficients;
use sp4r::tilt::{displacement, TiltParameters};
use sp4r::verify::{verify_model, ModelCheck};
use sp4r::{Coefficients, FockBasis, Generator, TiltKind};
use sp4r_bench::{anti_hermitian, hermitian, mjc};

fn linalg(cr: &mut Criterion) {
    let mut g = cr.benchmark_group("linalg");
    for n in [32, 96] {
        let a = anti_hermitian(n, 2.0);
        g.bench_with_input(BenchmarkId::new("expm", n), &a, |b, a| b.iter(|| expm(black_box(a)).unwrap()));
        let h = hermitian(n);
        g.bench_with_input(BenchmarkId::new("eigenvalues", n), &h, |b, h| b.iter(|| hermitian_eigenvalues(black_box(h)).unwrap()));
    }
    g.finish();
}

fn tilting(cr: &mut Criterion) {
    let params = TiltParameters::uniform(TiltKind::Sp4rProduct, c(0.3, 0.2));
    let x = Coefficients::unit(Generator::K0AB);
    cr.bench_function("tilt/closed_form", |b| b.iter(|| conjugate_coefficients(black_box(&x), black_box(&params))));
    let gens = build_generators(&FockBasis::new(16, 16).unwrap());
    cr.bench_function("tilt/displacement_16", |b| b.iter(|| displacement(black_box(&params), &gens).unwrap()));
    let alphas = mjc().params().alphas();
    cr.bench_function("tilt/pipeline", |b| b.iter(|| tilt_pipeline(black_box(&alphas)).unwrap()));
}

fn verification(cr: &mut Criterion) {
    let mut g = cr.benchmark_group("verify");
    g.sample_size(10);
    let basis = FockBasis::new(8, 8).unwrap();
    let gens = build_generators(&basis);
    let p = interior_projector(&basis, 2).unwrap();
    g.bench_function("commutation_table_8", |b| b.iter(|| verify_commutation_table(&gens, &p).unwrap()));
    let check = ModelCheck { cutoff: 16, margin: 4, n_max: 6, tol: 1e-6 };
    let preset = mjc();
    g.bench_function("model_mjc_16", |b| b.iter(|| verify_model(black_box(&preset), &check).unwrap()));
    g.finish();
}

criterion_group!(benches, linalg, tilting, verification);
criterion_main!(benches);
