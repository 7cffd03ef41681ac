//! The three closed-form homogeneous solutions, exposed as evaluable oracles:
//! coefficient functions with hand-differentiated first and second
//! derivatives, the associated h-system data points, and the two closed-form
//! h-curves emanating from the singular S³ orbit.

use std::f64::consts::{FRAC_PI_2, PI};

use thiserror::Error;

use crate::frame::FJet;
use crate::ode::HState;

#[derive(Debug, Error, PartialEq)]
#[error("parameter t = {t} outside the regular range ({lo}, {hi})")]
pub struct RangeError {
    pub t: f64,
    pub lo: f64,
    pub hi: f64,
}

/// The three homogeneous spaces carrying the reference structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelId {
    /// Round six-sphere (μ = 1).
    Sphere6,
    /// Twistor space of the four-sphere, taken with the overall sign flipped
    /// so that the admissibility conventions hold (μ = 2).
    TwistorCP3,
    /// The product of two three-spheres (μ = 2).
    S3xS3,
}

impl ModelId {
    pub const ALL: [ModelId; 3] = [ModelId::Sphere6, ModelId::TwistorCP3, ModelId::S3xS3];

    pub fn mu(&self) -> f64 {
        match self {
            ModelId::Sphere6 => 1.0,
            _ => 2.0,
        }
    }

    /// Open interval of regular parameters.
    pub fn range(&self) -> (f64, f64) {
        match self {
            ModelId::Sphere6 | ModelId::TwistorCP3 => (0.0, FRAC_PI_2),
            ModelId::S3xS3 => (0.0, FRAC_PI_2 / 6f64.sqrt()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ModelId::Sphere6 => "S6",
            ModelId::TwistorCP3 => "CP3",
            ModelId::S3xS3 => "S3xS3",
        }
    }
}

fn check_range(t: f64, lo: f64, hi: f64) -> Result<(), RangeError> {
    if t > lo && t < hi {
        Ok(())
    } else {
        Err(RangeError { t, lo, hi })
    }
}

fn sphere6_raw(t: f64) -> ([f64; 5], [f64; 5], [f64; 5]) {
    let (s, c) = t.sin_cos();
    let f = [
        -s,
        0.125 * (4.0 - 9.0 * s * s) * c,
        -0.125 * s * s * c,
        0.0,
        0.375 * s * s * c,
    ];
    let fp = [
        -c,
        0.125 * (-4.0 * s - 18.0 * s * c * c + 9.0 * s * s * s),
        -0.125 * (2.0 * s * c * c - s * s * s),
        0.0,
        0.375 * (2.0 * s * c * c - s * s * s),
    ];
    let fpp = [
        s,
        0.125 * (-4.0 * c - 18.0 * c * c * c + 63.0 * s * s * c),
        -0.125 * (2.0 * c * c * c - 7.0 * s * s * c),
        0.0,
        0.375 * (2.0 * c * c * c - 7.0 * s * s * c),
    ];
    (f, fp, fpp)
}

fn cp3_raw(t: f64) -> ([f64; 5], [f64; 5], [f64; 5]) {
    let (s, c) = t.sin_cos();
    let (s2, c2) = (s * s, c * c);
    let g = [
        s * c,
        (2.0 * s2 - c2) * c2 / 16.0,
        (2.0 * c2 - s2) * s2 / 16.0,
        0.0,
        -3.0 / 16.0 * s2 * c2,
    ];
    let gp = [
        c2 - s2,
        s * c / 4.0 * (2.0 * c2 - s2),
        c * s / 4.0 * (c2 - 2.0 * s2),
        0.0,
        -0.375 * s * c * (c2 - s2),
    ];
    let gpp = [
        -4.0 * s * c,
        (2.0 * c2 * c2 - 9.0 * s2 * c2 + s2 * s2) / 4.0,
        (c2 * c2 - 9.0 * s2 * c2 + 2.0 * s2 * s2) / 4.0,
        0.0,
        -0.375 * (c2 * c2 - 6.0 * s2 * c2 + s2 * s2),
    ];
    // the admissible family is the sign-flipped one
    let neg = |v: [f64; 5]| v.map(|x| -x);
    (neg(g), neg(gp), neg(gpp))
}

fn s3xs3_raw(t: f64) -> ([f64; 5], [f64; 5], [f64; 5]) {
    let r3 = 3f64.sqrt();
    let r6 = 6f64.sqrt();
    let w = 2.0 * r6 * t;
    let f = [
        -2f64.sqrt() / 3.0,
        r3 / 36.0 * w.sin(),
        0.0,
        0.0,
        -r3 / 36.0 * (r6 * t).sin(),
    ];
    let fp = [
        0.0,
        2f64.sqrt() / 6.0 * w.cos(),
        0.0,
        0.0,
        -2f64.sqrt() / 12.0 * (r6 * t).cos(),
    ];
    let fpp = [
        0.0,
        -2.0 * r3 / 3.0 * w.sin(),
        0.0,
        0.0,
        r3 / 6.0 * (r6 * t).sin(),
    ];
    (f, fp, fpp)
}

fn model_raw(m: ModelId, t: f64) -> ([f64; 5], [f64; 5], [f64; 5]) {
    match m {
        ModelId::Sphere6 => sphere6_raw(t),
        ModelId::TwistorCP3 => cp3_raw(t),
        ModelId::S3xS3 => s3xs3_raw(t),
    }
}

/// Closed-form jet of a model at a regular parameter.
pub fn model_f(m: ModelId, t: f64) -> Result<FJet, RangeError> {
    let (lo, hi) = m.range();
    check_range(t, lo, hi)?;
    let (f, fp, _) = model_raw(m, t);
    Ok(FJet {
        t,
        f,
        fp,
        mu: m.mu(),
    })
}

/// Closed-form second derivatives of a model at a regular parameter.
pub fn model_fpp(m: ModelId, t: f64) -> Result<[f64; 5], RangeError> {
    let (lo, hi) = m.range();
    check_range(t, lo, hi)?;
    Ok(model_raw(m, t).2)
}

/// The h-system data point of a model with the base point (s = 0) at `t_o`.
pub fn model_h_point(m: ModelId, t_o: f64) -> Result<HState, RangeError> {
    let j = model_f(m, t_o)?;
    Ok(h_point_of_jet(&j))
}

/// Assembles the h-state of a jet with s = 0 at the jet's own parameter.
pub fn h_point_of_jet(j: &FJet) -> HState {
    let f1 = j.f[0];
    let fff = j.fff();
    let fffp = j.fff_prime();
    HState::new(
        0.0,
        [0.0, j.f[1] + j.f[2], j.f[1] - j.f[2], 2.0 * fff],
        [
            0.5 * f1 * f1,
            (j.fp[1] + j.fp[2]) * f1,
            (j.fp[1] - j.fp[2]) * f1,
            2.0 * fffp * f1,
        ],
        j.mu,
    )
}

/// Half the regular range of the round sphere, rescaled: the μ = 2,
/// unit-speed, sign-adjusted family meeting the singular S³ orbit at t = 0.
/// The parameter range is the symmetric interval |t| < π/(2√2); negative t is
/// where the curve continues across the orbit.
pub fn sphere6_rescaled_f(t: f64) -> Result<FJet, RangeError> {
    let bound = FRAC_PI_2 / 2f64.sqrt();
    if !(t > -bound && t < bound) {
        return Err(RangeError {
            t,
            lo: -bound,
            hi: bound,
        });
    }
    let r2 = 2f64.sqrt();
    let u = FRAC_PI_2 - r2 * t;
    let (f, fp, _) = sphere6_raw(u);
    let mut ft = [0.0; 5];
    let mut ftp = [0.0; 5];
    for i in 1..5 {
        ft[i] = -0.5 * f[i];
        ftp[i] = r2 / 2.0 * fp[i];
    }
    ft[0] = -(r2 * t).cos() / r2;
    ftp[0] = (r2 * t).sin();
    Ok(FJet {
        t,
        f: ft,
        fp: ftp,
        mu: 2.0,
    })
}

/// Second derivatives of the rescaled sphere family.
pub fn sphere6_rescaled_fpp(t: f64) -> Result<[f64; 5], RangeError> {
    sphere6_rescaled_f(t)?; // range check
    let r2 = 2f64.sqrt();
    let u = FRAC_PI_2 - r2 * t;
    let (_, _, fpp) = sphere6_raw(u);
    let mut out = [0.0; 5];
    for i in 1..5 {
        out[i] = -fpp[i];
    }
    out[0] = r2 * (r2 * t).cos();
    Ok(out)
}

/// Closed-form h-curve of the product-of-spheres model through the singular
/// orbit (s = 0 at the orbit, signed h₄ = 2f₅). Returns the state with both
/// positions and velocities.
pub fn s3xs3_h_state(s: f64) -> HState {
    let r3 = 3f64.sqrt();
    let w = 4.0 * s / r3;
    let v = 2.0 * s / r3;
    let a = [
        s / 9.0,
        -r3 / 36.0 * w.sin(),
        -r3 / 36.0 * w.sin(),
        r3 / 18.0 * v.sin(),
    ];
    let b = [
        1.0 / 9.0,
        -w.cos() / 9.0,
        -w.cos() / 9.0,
        v.cos() / 9.0,
    ];
    HState::new(s, a, b, 2.0)
}

/// Analytic second derivatives along the closed-form h-curve above.
pub fn s3xs3_h_second(s: f64) -> [f64; 4] {
    let r3 = 3f64.sqrt();
    let w = 4.0 * s / r3;
    let v = 2.0 * s / r3;
    [
        0.0,
        4.0 / (9.0 * r3) * w.sin(),
        4.0 / (9.0 * r3) * w.sin(),
        -2.0 / (9.0 * r3) * v.sin(),
    ]
}

/// Closed-form h-curve of the rescaled sphere through the singular orbit:
/// t(s) = −gd(s)/√2 (gd the Gudermannian), h₁ = tanh(s)/4.
pub fn sphere6_rescaled_h_state(s: f64) -> HState {
    let gd = 2.0 * (0.5 * s).tanh().atan();
    let t = -gd / 2f64.sqrt();
    let j = sphere6_rescaled_f(t).expect("gudermannian stays inside the range");
    let f1 = j.f[0];
    let a = [
        s.tanh() / 4.0,
        j.f[1] + j.f[2],
        j.f[1] - j.f[2],
        2.0 * j.f[4], // signed: f₄ ≡ 0 on this family
    ];
    let b = [
        0.5 * f1 * f1,
        (j.fp[1] + j.fp[2]) * f1,
        (j.fp[1] - j.fp[2]) * f1,
        2.0 * j.fp[4] * f1,
    ];
    HState::new(s, a, b, 2.0)
}

/// The limit value h₁′(0) = ½f₁(0)² of a model family meeting the singular
/// orbit; 1/9 for the product of spheres, 1/4 for the rescaled sphere.
pub fn singular_b1(m: ModelId) -> Option<f64> {
    match m {
        ModelId::S3xS3 => Some(1.0 / 9.0),
        ModelId::Sphere6 => Some(0.25),
        ModelId::TwistorCP3 => None, // its singular orbit is not the S³ one
    }
}

/// Uniform interior sample grid of a model's regular range.
pub fn sample_grid(m: ModelId, n: usize) -> Vec<f64> {
    let (lo, hi) = m.range();
    (1..=n)
        .map(|k| lo + (hi - lo) * k as f64 / (n as f64 + 1.0))
        .collect()
}

/// Designated base point of the product-of-spheres model: the parameter whose
/// h-data is the reference point (1/36)(0, √3, √3, √6 | 4, 0, 0, −2√2).
pub fn s3xs3_base_point() -> f64 {
    PI / (4.0 * 6f64.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sphere6_values_at_quarter_pi() {
        let j = model_f(ModelId::Sphere6, PI / 4.0).unwrap();
        let r2 = 2f64.sqrt();
        assert_relative_eq!(j.f[0], -r2 / 2.0, epsilon = 1e-15);
        assert_relative_eq!(j.f[1], -r2 / 32.0, epsilon = 1e-15);
        assert_relative_eq!(j.f[2], -r2 / 32.0, epsilon = 1e-15);
        assert_eq!(j.f[3], 0.0);
        assert_relative_eq!(j.f[4], 3.0 * r2 / 32.0, epsilon = 1e-15);
    }

    #[test]
    fn cp3_sign_flip() {
        let j = model_f(ModelId::TwistorCP3, PI / 4.0).unwrap();
        assert_relative_eq!(j.f[0], -0.5, epsilon = 1e-15);
        assert_eq!(j.mu, 2.0);
    }

    #[test]
    fn s3xs3_is_constant_in_f1() {
        for &t in &[0.05, 0.1, 0.2] {
            let j = model_f(ModelId::S3xS3, t).unwrap();
            assert_relative_eq!(j.f[0], -2f64.sqrt() / 3.0, epsilon = 1e-15);
            assert_eq!(j.f[3], 0.0);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        // second differences need a larger step to stay above roundoff
        let h1 = 1e-6;
        let h2 = 1e-4;
        for m in ModelId::ALL {
            let (lo, hi) = m.range();
            let t = 0.5 * (lo + hi);
            let j = model_f(m, t).unwrap();
            let fpp = model_fpp(m, t).unwrap();
            for i in 0..5 {
                let jp = model_f(m, t + h1).unwrap();
                let jm = model_f(m, t - h1).unwrap();
                let fd1 = (jp.f[i] - jm.f[i]) / (2.0 * h1);
                assert!((fd1 - j.fp[i]).abs() < 1e-9, "{m:?} f{}′", i + 1);
                let jp = model_f(m, t + h2).unwrap();
                let jm = model_f(m, t - h2).unwrap();
                let fd2 = (jp.f[i] - 2.0 * j.f[i] + jm.f[i]) / (h2 * h2);
                assert!((fd2 - fpp[i]).abs() < 1e-6, "{m:?} f{}″", i + 1);
            }
        }
    }

    #[test]
    fn rescaled_sphere_derivatives_match_finite_differences() {
        let h1 = 1e-6;
        let h2 = 1e-4;
        for &t in &[-0.6, -0.2, 0.01, 0.4] {
            let j = sphere6_rescaled_f(t).unwrap();
            let fpp = sphere6_rescaled_fpp(t).unwrap();
            for i in 0..5 {
                let jp = sphere6_rescaled_f(t + h1).unwrap();
                let jm = sphere6_rescaled_f(t - h1).unwrap();
                assert!(((jp.f[i] - jm.f[i]) / (2.0 * h1) - j.fp[i]).abs() < 1e-9);
                let jp = sphere6_rescaled_f(t + h2).unwrap();
                let jm = sphere6_rescaled_f(t - h2).unwrap();
                assert!(
                    ((jp.f[i] - 2.0 * j.f[i] + jm.f[i]) / (h2 * h2) - fpp[i]).abs() < 1e-6
                );
            }
        }
    }

    #[test]
    fn base_point_reproduces_reference_data() {
        let x = model_h_point(ModelId::S3xS3, s3xs3_base_point()).unwrap();
        let r = 1.0 / 36.0;
        let expect_a = [0.0, 3f64.sqrt() * r, 3f64.sqrt() * r, 6f64.sqrt() * r];
        let expect_b = [4.0 * r, 0.0, 0.0, -2.0 * 2f64.sqrt() * r];
        for i in 0..4 {
            assert!((x.a[i] - expect_a[i]).abs() < 1e-15, "a{}", i + 1);
            assert!((x.b[i] - expect_b[i]).abs() < 1e-15, "b{}", i + 1);
        }
    }

    #[test]
    fn singular_limits_of_b1() {
        // product of spheres: b₁ = ½(√2/3)² = 1/9 at any point
        let x = model_h_point(ModelId::S3xS3, 0.1).unwrap();
        assert_relative_eq!(x.b[0], 1.0 / 9.0, epsilon = 1e-15);
        // rescaled sphere at the orbit: b₁ = ½(1/√2)² = 1/4
        let j = sphere6_rescaled_f(1e-9).unwrap();
        assert_relative_eq!(0.5 * j.f[0] * j.f[0], 0.25, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_h_curves_start_at_the_cone_values() {
        let x = s3xs3_h_state(0.0);
        let c1 = 1.0 / 9.0;
        assert_relative_eq!(x.b[0], c1, epsilon = 1e-15);
        assert_relative_eq!(x.b[1], -3.0 * c1 * c1.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(x.b[2], -c1, epsilon = 1e-15);
        assert_relative_eq!(x.b[3], 3.0 * c1 * c1.sqrt(), epsilon = 1e-15);

        let y = sphere6_rescaled_h_state(0.0);
        let c1 = 0.25;
        assert_relative_eq!(y.b[0], c1, epsilon = 1e-12);
        assert_relative_eq!(y.b[1], -3.0 * c1 * c1.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(y.b[2], -c1, epsilon = 1e-12);
        assert_relative_eq!(y.b[3], 3.0 * c1 * c1.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(model_f(ModelId::Sphere6, 2.0).is_err());
        assert!(model_f(ModelId::S3xS3, 0.7).is_err());
    }
}
