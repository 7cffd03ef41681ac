//! Change of variables between the coefficient-function picture f(t) and the
//! regular picture h(s):
//!
//!   s(t) = ∫_{t_o}^t du/f₁,     h₁ = ½∫_{t_o}^t f₁ du ∘ t(s),
//!   h₂ = f₂ + f₃,   h₃ = f₂ − f₃,   h₄ = 2𝔣,
//!
//! so that dt/ds = f₁ < 0 and h₁′(s) = ½f₁(t(s))².

use super::hsystem::{h_rhs, HState};
use super::quad::adaptive_simpson;
use super::OdeError;
use crate::frame::FJet;

/// The h-state reached from base point `t_o` at parameter `t` along a
/// coefficient curve given as a jet-valued function.
pub fn to_h_at<F: Fn(f64) -> FJet>(
    f: &F,
    t_o: f64,
    t: f64,
    quad_tol: f64,
) -> Result<HState, OdeError> {
    // reject curves leaving the f₁ < 0 chart (probe a few interior points)
    for k in 0..=8 {
        let u = t_o + (t - t_o) * k as f64 / 8.0;
        let f1 = f(u).f[0];
        if f1 >= 0.0 {
            return Err(OdeError::F1NotNegative(f1, u));
        }
    }
    let s = adaptive_simpson(|u| 1.0 / f(u).f[0], t_o, t, quad_tol);
    let g = 0.5 * adaptive_simpson(|u| f(u).f[0], t_o, t, quad_tol);
    let j = f(t);
    let f1 = j.f[0];
    let fff = j.fff();
    let fffp = j.fff_prime();
    Ok(HState::new(
        s,
        [g, j.f[1] + j.f[2], j.f[1] - j.f[2], 2.0 * fff],
        [
            0.5 * f1 * f1,
            (j.fp[1] + j.fp[2]) * f1,
            (j.fp[1] - j.fp[2]) * f1,
            2.0 * fffp * f1,
        ],
        j.mu,
    ))
}

/// Samples the conversion over a t-grid.
pub fn to_h_samples<F: Fn(f64) -> FJet>(
    f: &F,
    t_o: f64,
    t_grid: &[f64],
    quad_tol: f64,
) -> Result<Vec<HState>, OdeError> {
    t_grid.iter().map(|&t| to_h_at(f, t_o, t, quad_tol)).collect()
}

/// Inverts the change of variables on sampled h-states: recovers the jets
/// (with 𝔣 carried in the f₅ slot and f₄ ≡ 0) and the t-labels by cumulative
/// corrected-trapezoid quadrature of dt/ds = f₁ = −√(2h₁′), anchored so that
/// the first sample is labelled `t_first`.
pub fn from_h_samples(samples: &[HState], t_first: f64) -> Result<Vec<FJet>, OdeError> {
    // f₁ and its s-derivative at each node
    let mut f1 = Vec::with_capacity(samples.len());
    let mut df1 = Vec::with_capacity(samples.len());
    for st in samples {
        let b1 = st.b[0];
        if b1 <= 0.0 {
            return Err(OdeError::B1NotPositive(b1, st.s));
        }
        let rhs = h_rhs(st)?;
        let v = -(2.0 * b1).sqrt();
        f1.push(v);
        // d/ds of −√(2b₁) = −b₁′/√(2b₁)
        df1.push(-rhs[4] / (2.0 * b1).sqrt());
    }
    // cumulative t(s) via Hermite-corrected trapezoid (O(h⁴) global)
    let mut t = vec![t_first; samples.len()];
    for i in 1..samples.len() {
        let h = samples[i].s - samples[i - 1].s;
        t[i] = t[i - 1]
            + 0.5 * h * (f1[i - 1] + f1[i])
            + h * h / 12.0 * (df1[i - 1] - df1[i]);
    }
    let mut out = Vec::with_capacity(samples.len());
    for (i, st) in samples.iter().enumerate() {
        let rhs = h_rhs(st)?;
        let b1p = rhs[4];
        let inv_f1 = 1.0 / f1[i];
        out.push(FJet {
            t: t[i],
            f: [
                f1[i],
                0.5 * (st.a[1] + st.a[2]),
                0.5 * (st.a[1] - st.a[2]),
                0.0,
                0.5 * st.a[3],
            ],
            fp: [
                b1p / (2.0 * st.b[0]),
                0.5 * (st.b[1] + st.b[2]) * inv_f1,
                0.5 * (st.b[1] - st.b[2]) * inv_f1,
                0.0,
                0.5 * st.b[3] * inv_f1,
            ],
            mu: st.mu,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// A synthetic curve with constant f₁ = −1 solving nothing in
    /// particular: exercises only the kinematic identities.
    fn synthetic(t: f64) -> FJet {
        FJet {
            t,
            f: [-1.0, 0.3 * t, -0.1 * t, 0.0, 0.2 + 0.1 * t],
            fp: [0.0, 0.3, -0.1, 0.0, 0.1],
            mu: 2.0,
        }
    }

    #[test]
    fn constant_f1_maps_linearly() {
        let st = to_h_at(&synthetic, 0.0, 0.4, 1e-13).unwrap();
        // s = ∫ 1/f₁ = −t, g = ½∫f₁ = −t/2
        assert!((st.s + 0.4).abs() < 1e-12);
        assert!((st.a[0] + 0.2).abs() < 1e-12);
        assert!((st.b[0] - 0.5).abs() < 1e-13);
    }

    #[test]
    fn h1_prime_is_half_f1_squared() {
        for &t in &[0.1, 0.25, 0.5] {
            let st = to_h_at(&synthetic, 0.0, t, 1e-13).unwrap();
            assert!((st.b[0] - 0.5).abs() < 1e-13);
        }
    }

    #[test]
    fn positive_f1_rejected() {
        let bad = |t: f64| FJet {
            t,
            f: [1.0, 0.0, 0.0, 0.0, 0.1],
            fp: [0.0; 5],
            mu: 1.0,
        };
        assert!(matches!(
            to_h_at(&bad, 0.0, 0.1, 1e-12),
            Err(OdeError::F1NotNegative(_, _))
        ));
    }
}
