//! Residuals of the second-order system on the coefficient functions
//! (f₁, f₂, f₃, 𝔣) and of its conserved algebraic constraint.

use super::OdeError;
use crate::frame::FJet;

/// The five residuals (four differential equations evaluated with the given
/// second derivatives, plus the algebraic constraint value):
///
///   r₁ = [(f₂′ + ¼f₁)f₁]′ + 12μf₁f₂
///   r₂ = [(f₃′ − ¼f₁)f₁]′ + 12μf₁f₃
///   r₃ = (𝔣′f₁)′ − 4𝔣/f₁ + 12μf₁𝔣
///   r₄ = f₁(f₂′ − f₃′ + ½f₁) + 48μ(f₂f₃ − 𝔣²)
///   r₅ = 4𝔣² − ((𝔣′)² − (f₂′ + ¼f₁)(f₃′ − ¼f₁))f₁²
pub fn f_system_residual(j: &FJet, fpp: &[f64; 5]) -> Result<[f64; 5], OdeError> {
    let f1 = j.f[0];
    if f1 == 0.0 {
        return Err(OdeError::F1NotNegative(f1, j.t));
    }
    let (f2, f3) = (j.f[1], j.f[2]);
    let (f1p, f2p, f3p) = (j.fp[0], j.fp[1], j.fp[2]);
    let mu = j.mu;
    let fff = j.fff();
    let fffp = j.fff_prime();
    let fffpp = j.fff_second(fpp);
    let r1 = (fpp[1] + 0.25 * f1p) * f1 + (f2p + 0.25 * f1) * f1p + 12.0 * mu * f1 * f2;
    let r2 = (fpp[2] - 0.25 * f1p) * f1 + (f3p - 0.25 * f1) * f1p + 12.0 * mu * f1 * f3;
    let r3 = fffpp * f1 + fffp * f1p - 4.0 * fff / f1 + 12.0 * mu * f1 * fff;
    let r4 = f1 * (f2p - f3p + 0.5 * f1) + 48.0 * mu * (f2 * f3 - fff * fff);
    let r5 = 4.0 * fff * fff
        - (fffp * fffp - (f2p + 0.25 * f1) * (f3p - 0.25 * f1)) * f1 * f1;
    Ok([r1, r2, r3, r4, r5])
}
