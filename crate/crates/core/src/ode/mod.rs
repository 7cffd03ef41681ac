//! The characterizing ODE layer: residuals of the second-order system on the
//! coefficient functions, the regular first-order system in the transformed
//! variables h with its four first integrals, conversions between the two
//! pictures, the finite isometry group acting on solution data, and an
//! adaptive Runge–Kutta integrator with conservation monitoring.

pub mod change;
pub mod dopri5;
pub mod fsystem;
pub mod hsystem;
pub(crate) mod quad;
pub mod transform;

use thiserror::Error;

pub use change::{from_h_samples, to_h_at, to_h_samples};
pub use dopri5::{DenseCurve, Dopri5Options};
pub use fsystem::f_system_residual;
pub use hsystem::{
    first_integrals, h_rhs, integrate, n_membership, project_to_n, write_csv, HState,
    Membership, SolutionCurve,
};
pub use transform::{
    canonical_representative, orbit_r7, QuadTransform, TransformTag,
};

#[derive(Debug, Error, PartialEq)]
pub enum OdeError {
    #[error("f1 must be negative on the whole range (found {0} at t = {1})")]
    F1NotNegative(f64, f64),
    #[error("h1' must be positive on the whole range (found {0} at s = {1})")]
    B1NotPositive(f64, f64),
    #[error("denominator h2^2 - h3^2 - h4^2 vanishes near s = {0}")]
    SingularDenominator(f64),
    #[error("step size underflow near s = {0}: system too stiff at this tolerance")]
    StiffnessStop(f64),
    #[error("step budget exhausted near s = {0}")]
    StepBudget(f64),
    #[error("constraint projection did not converge (|I| = {0:e})")]
    ProjectionFailed(f64),
}
