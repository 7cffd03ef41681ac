//! Numerical construction and verification of six-dimensional
//! cohomogeneity-one nearly Kähler structures with symmetry group SU₂×SU₂.
//!
//! Layer by layer:
//! - [`forms6`]: exterior algebra on the fixed 6-dimensional slice, the
//!   quartic invariant of a 3-form and the complex structure it induces;
//! - [`frame`]: the invariant frame along the normal geodesic, the invariant
//!   2-/3-form bases and the coefficient maps tying a 5-function jet to the
//!   induced 3-form, almost complex structure and metric;
//! - [`ode`]: the characterizing ODE systems (the f-system residual, the
//!   regular h-system with its four first integrals, the isometry group
//!   acting on solution data, and an adaptive integrator);
//! - [`models`]: the three closed-form homogeneous solutions used as oracles;
//! - [`singular`]: the singular initial-value problem at the S³ orbit solved
//!   by an even power series matched to the regular integrator, producing the
//!   one-parameter family of structures on TS³.

pub mod forms6;
pub mod frame;
pub mod linalg;
pub mod models;
pub mod ode;
pub mod singular;
pub mod taylor;

pub use forms6::{Endo6, KForm, Orbit, StabilityClass};
pub use frame::{FJet, LieBasis, PsiCoeffs};
pub use models::ModelId;
pub use ode::{HState, SolutionCurve};
pub use singular::{ExtensionJet, SeriesSolution};
