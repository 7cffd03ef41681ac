//! Shared generators for the integration tests: seeded random 3-forms and
//! random admissible coefficient jets.
#![allow(dead_code)] // each test binary uses its own subset

use nk6_core::forms6::{KForm, BINOM6};
use nk6_core::FJet;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random 3-form with coefficients uniform in [−1, 1].
pub fn random_3form<R: Rng>(r: &mut R) -> KForm {
    let coeffs: Vec<f64> = (0..BINOM6[3]).map(|_| r.gen_range(-1.0..1.0)).collect();
    KForm::from_coeffs(3, coeffs)
}

/// Random jet satisfying all pointwise admissibility conditions exactly:
/// f₁ < 0, the discriminant (𝔣′)² − (f₂′+¼f₁)(f₃′−¼f₁) positive, the phase of
/// (f₄, f₅) locked to that of (f₄′, f₅′), and 𝔣 sized so that the algebraic
/// constraint 4𝔣² = disc·f₁² holds to rounding.
pub fn admissible_jet<R: Rng>(r: &mut R) -> FJet {
    let f1: f64 = -r.gen_range(0.2..2.0);
    let f1p = r.gen_range(-1.0..1.0);
    let f2 = r.gen_range(-0.5..0.5);
    let f3 = r.gen_range(-0.5..0.5);
    loop {
        let f2p = r.gen_range(-1.0..1.0);
        let f3p = r.gen_range(-1.0..1.0);
        let g = r.gen_range(-1.0..1.0);
        let disc = g * g - (f2p + f1 / 4.0) * (f3p - f1 / 4.0);
        if disc < 1e-3 {
            continue;
        }
        let fff = 0.5 * f1.abs() * disc.sqrt();
        let phase = r.gen_range(0.0..std::f64::consts::TAU);
        let (sin, cos) = phase.sin_cos();
        let mu = if r.gen_bool(0.5) { 1.0 } else { 2.0 };
        return FJet {
            t: r.gen_range(-1.0..1.0),
            f: [f1, f2, f3, fff * cos, fff * sin],
            fp: [f1p, f2p, f3p, g * cos, g * sin],
            mu,
        };
    }
}
