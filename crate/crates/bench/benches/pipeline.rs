//! End-to-end timings of the three heavy code paths: the quartic-invariant
//! pipeline on a 3-form, a short regular integration, and the singular series
//! expansion.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use nk6_core::forms6::{complex_structure, hitchin_endomorphism, stability_invariant};
use nk6_core::frame::reference_volume;
use nk6_core::models::{model_h_point, ModelId};
use nk6_core::ode::{integrate, Dopri5Options};
use nk6_core::singular::series_coefficients;
use nk6_core::KForm;

fn stable_reference_form() -> KForm {
    let mut theta = KForm::zero(3);
    theta.set_coeff(&[0, 2, 4], 1.0);
    theta.set_coeff(&[0, 3, 5], -1.0);
    theta.set_coeff(&[1, 2, 5], -1.0);
    theta.set_coeff(&[1, 3, 4], -1.0);
    theta
}

fn bench_invariant_pipeline(c: &mut Criterion) {
    let theta = stable_reference_form();
    let vol = reference_volume();
    c.bench_function("endomorphism_and_complex_structure", |b| {
        b.iter(|| {
            black_box(hitchin_endomorphism(black_box(&theta), &vol).unwrap());
            black_box(stability_invariant(&theta, &vol).unwrap());
            black_box(complex_structure(&theta, &vol).unwrap());
        })
    });
}

fn bench_regular_integration(c: &mut Criterion) {
    let x0 = model_h_point(ModelId::S3xS3, 0.1).unwrap();
    let opt = Dopri5Options::default();
    c.bench_function("integrate_span_0_3", |b| {
        b.iter(|| black_box(integrate(black_box(&x0), 0.3, &opt).unwrap()))
    });
}

fn bench_series_expansion(c: &mut Criterion) {
    c.bench_function("series_20_terms", |b| {
        b.iter(|| black_box(series_coefficients(black_box(0.15), 20).unwrap()))
    });
}

criterion_group!(
    benches,
    bench_invariant_pipeline,
    bench_regular_integration,
    bench_series_expansion
);
criterion_main!(benches);
