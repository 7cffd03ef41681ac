//! The three closed-form solutions (and the recentered sphere family) are
//! pushed through every verification layer: the second-order residuals, the
//! invariant structure-equation forms, pointwise stability, and metric
//! positivity.

use nk6_core::frame::{metric_matrix, nk_residual_forms, stability_data};
use nk6_core::linalg::sym_eigenvalues6;
use nk6_core::models::{
    model_f, model_fpp, sample_grid, sphere6_rescaled_f, sphere6_rescaled_fpp, ModelId,
};
use nk6_core::ode::f_system_residual;

#[test]
fn residuals_vanish_on_models() {
    for m in ModelId::ALL {
        for t in sample_grid(m, 100) {
            let j = model_f(m, t).unwrap();
            let fpp = model_fpp(m, t).unwrap();
            let r = f_system_residual(&j, &fpp).unwrap();
            for (k, v) in r.iter().enumerate() {
                assert!(v.abs() < 1e-9, "{m:?} at t = {t}: r{} = {v:e}", k + 1);
            }
        }
    }
}

#[test]
fn residuals_vanish_on_recentered_sphere() {
    for k in 1..=100 {
        let bound = std::f64::consts::FRAC_PI_2 / 2f64.sqrt();
        let t = -0.98 * bound + 1.96 * bound * k as f64 / 101.0;
        if t.abs() < 1e-3 {
            continue; // the special orbit itself is covered by the singular layer
        }
        let j = sphere6_rescaled_f(t).unwrap();
        let fpp = sphere6_rescaled_fpp(t).unwrap();
        let r = f_system_residual(&j, &fpp).unwrap();
        for (i, v) in r.iter().enumerate() {
            assert!(v.abs() < 1e-9, "t = {t}: r{} = {v:e}", i + 1);
        }
    }
}

#[test]
fn structure_equation_forms_vanish_on_models() {
    for m in ModelId::ALL {
        for t in sample_grid(m, 25) {
            let j = model_f(m, t).unwrap();
            let fpp = model_fpp(m, t).unwrap();
            let (r3, r4) = nk_residual_forms(&j, &fpp).unwrap();
            assert!(r3.is_zero(1e-10), "{m:?} at t = {t}: |dω − 3ψ| = {}", r3.norm());
            assert!(
                r4.is_zero(1e-10),
                "{m:?} at t = {t}: |dψ̂ + 2μω∧ω| = {}",
                r4.norm()
            );
        }
    }
}

#[test]
fn models_are_pointwise_admissible() {
    for m in ModelId::ALL {
        for t in sample_grid(m, 50) {
            let j = model_f(m, t).unwrap();
            let report = stability_data(&j).unwrap();
            assert!(report.ok, "{m:?} at t = {t}: {report:?}");
            assert!(report.p_psi < 0.0);
        }
    }
}

#[test]
fn model_metrics_are_positive_definite() {
    for m in ModelId::ALL {
        for t in sample_grid(m, 25) {
            let j = model_f(m, t).unwrap();
            let g = metric_matrix(&j).unwrap();
            let mut sym = [[0.0; 6]; 6];
            for r in 0..6 {
                for c in 0..6 {
                    sym[r][c] = 0.5 * (g[r][c] + g[c][r]);
                }
            }
            let eig = sym_eigenvalues6(&sym);
            assert!(eig[0] > 0.0, "{m:?} at t = {t}: spectrum {eig:?}");
        }
    }
}
