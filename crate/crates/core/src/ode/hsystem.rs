//! The regular first-order system on (h₁…h₄, h₁′…h₄′), its four first
//! integrals, membership in the constraint variety, constrained projection of
//! initial data, and the monitored integration wrapper.

use std::io::Write;

use super::dopri5::{self, DenseCurve, Dopri5Options};
use super::OdeError;
use crate::linalg::solve4;

/// A phase-space point of the h-system: position a = (h₁…h₄) and velocity
/// b = (h₁′…h₄′) at abscissa s, with the curvature normalization μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HState {
    pub s: f64,
    pub a: [f64; 4],
    pub b: [f64; 4],
    pub mu: f64,
}

impl HState {
    pub fn new(s: f64, a: [f64; 4], b: [f64; 4], mu: f64) -> Self {
        HState { s, a, b, mu }
    }

    /// The recurring denominator h₂² − h₃² − h₄².
    pub fn denominator(&self) -> f64 {
        self.a[1] * self.a[1] - self.a[2] * self.a[2] - self.a[3] * self.a[3]
    }

    fn denominator_ok(&self) -> bool {
        let scale = 1.0 + self.a.iter().map(|x| x * x).sum::<f64>();
        self.denominator().abs() >= 1e-12 * scale
    }

    /// The point (a₂, a₃, a₄, b₁, b₂, b₃, b₄) ∈ ℝ⁷ acted on by the isometry
    /// group (a₁ is pure gauge: it is fixed to 0 at the base point).
    pub fn r7(&self) -> [f64; 7] {
        [
            self.a[1], self.a[2], self.a[3], self.b[0], self.b[1], self.b[2], self.b[3],
        ]
    }

    fn from_vec8(s: f64, y: &[f64; 8], mu: f64) -> HState {
        HState {
            s,
            a: [y[0], y[1], y[2], y[3]],
            b: [y[4], y[5], y[6], y[7]],
            mu,
        }
    }

    fn to_vec8(&self) -> [f64; 8] {
        [
            self.a[0], self.a[1], self.a[2], self.a[3], self.b[0], self.b[1], self.b[2],
            self.b[3],
        ]
    }
}

/// Right-hand side (b, b′): the four second derivatives of the h-system.
pub fn h_rhs(x: &HState) -> Result<[f64; 8], OdeError> {
    if !x.denominator_ok() {
        return Err(OdeError::SingularDenominator(x.s));
    }
    let [_, a2, a3, a4] = x.a;
    let [b1, b2, b3, b4] = x.b;
    let mu = x.mu;
    let num = 2.0 * b1 * b1 * a3 + 4.0 / (9.0 * mu) * b4 * a4;
    let den = x.denominator();
    let h1pp = -num / den;
    let h2pp = -24.0 * mu * b1 * a2;
    let h3pp = num / den - 24.0 * mu * b1 * a3;
    let h4pp = -24.0 * mu * b1 * a4 + 4.0 * a4;
    Ok([b1, b2, b3, b4, h1pp, h2pp, h3pp, h4pp])
}

/// The four conserved quantities 𝓘¹…𝓘⁴ evaluated on (a, b).
pub fn first_integrals(x: &HState) -> [f64; 4] {
    let [_, a2, a3, a4] = x.a;
    let [b1, b2, b3, b4] = x.b;
    let mu = x.mu;
    let quad = a2 * a2 - a3 * a3 - a4 * a4;
    [
        12.0 * mu * quad + b1 + b3,
        4.0 * a4 * a4 + b2 * b2 - b3 * b3 - b4 * b4 - b1 * b1 - 2.0 * b3 * b1,
        a2 * b2 - a3 * b3 - a4 * b4 - a3 * b1,
        4.5 * mu * b1 * quad + a4 * a4,
    ]
}

/// Diagnostics of membership in the constraint variety (zero locus of the
/// first integrals intersected with the admissibility inequalities).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub integrals: [f64; 4],
    pub b1_positive: bool,
    /// b₂² − b₃² − b₄² < 0.
    pub velocity_cone: bool,
    /// b₂² − b₃² − b₄² − b₁² − 2b₁b₃ < 0 (on the zero locus of 𝓘² this
    /// equals −4a₄², so the two variants agree there; both are reported).
    pub velocity_cone_shifted: bool,
    pub within_tol: bool,
}

impl Membership {
    pub fn ok(&self) -> bool {
        self.within_tol && self.b1_positive && self.velocity_cone && self.velocity_cone_shifted
    }
}

pub fn n_membership(x: &HState, tol: f64) -> Membership {
    let integrals = first_integrals(x);
    let [b1, b2, b3, b4] = x.b;
    let cone = b2 * b2 - b3 * b3 - b4 * b4;
    Membership {
        integrals,
        b1_positive: b1 > 0.0,
        velocity_cone: cone < 0.0,
        velocity_cone_shifted: cone - b1 * b1 - 2.0 * b1 * b3 < 0.0,
        within_tol: integrals.iter().all(|v| v.abs() < tol),
    }
}

/// Analytic Jacobian of the first integrals in the seven free coordinates
/// (a₂, a₃, a₄, b₁, b₂, b₃, b₄).
fn integral_jacobian(x: &HState) -> [[f64; 7]; 4] {
    let [_, a2, a3, a4] = x.a;
    let [b1, b2, b3, b4] = x.b;
    let mu = x.mu;
    let quad = a2 * a2 - a3 * a3 - a4 * a4;
    [
        [
            24.0 * mu * a2,
            -24.0 * mu * a3,
            -24.0 * mu * a4,
            1.0,
            0.0,
            1.0,
            0.0,
        ],
        [
            0.0,
            0.0,
            8.0 * a4,
            -2.0 * b1 - 2.0 * b3,
            2.0 * b2,
            -2.0 * b3 - 2.0 * b1,
            -2.0 * b4,
        ],
        [b2, -b3 - b1, -b4, -a3, a2, -a3, -a4],
        [
            9.0 * mu * b1 * a2,
            -9.0 * mu * b1 * a3,
            -9.0 * mu * b1 * a4 + 2.0 * a4,
            4.5 * mu * quad,
            0.0,
            0.0,
            0.0,
        ],
    ]
}

/// Projects a phase point onto the zero locus of the first integrals by
/// Gauss–Newton with the minimum-norm update δ = Jᵀ(JJᵀ)⁻¹(−𝓘).
pub fn project_to_n(x: &HState, tol: f64) -> Result<HState, OdeError> {
    let mut cur = *x;
    for _iter in 0..60 {
        let res = first_integrals(&cur);
        let norm = res.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if norm < tol {
            return Ok(cur);
        }
        let jac = integral_jacobian(&cur);
        let mut jjt = [[0.0; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                jjt[r][c] = (0..7).map(|k| jac[r][k] * jac[c][k]).sum();
            }
        }
        let rhs = [-res[0], -res[1], -res[2], -res[3]];
        let lambda = solve4(&jjt, &rhs).ok_or(OdeError::ProjectionFailed(norm))?;
        let mut p7 = cur.r7();
        for (k, slot) in p7.iter_mut().enumerate() {
            *slot += (0..4).map(|r| jac[r][k] * lambda[r]).sum::<f64>();
        }
        cur.a[1] = p7[0];
        cur.a[2] = p7[1];
        cur.a[3] = p7[2];
        cur.b = [p7[3], p7[4], p7[5], p7[6]];
    }
    let norm = first_integrals(&cur)
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if norm < tol {
        Ok(cur)
    } else {
        Err(OdeError::ProjectionFailed(norm))
    }
}

/// Dense sampled solution of the h-system with conservation diagnostics.
#[derive(Debug, Clone)]
pub struct SolutionCurve {
    pub grid: Vec<f64>,
    pub states: Vec<HState>,
    /// max |𝓘^k| over the grid, per k.
    pub drift: [f64; 4],
    pub accepted: usize,
    pub rejected: usize,
    pub mu: f64,
    dense: Option<DenseCurve<8>>,
}

impl SolutionCurve {
    pub fn from_parts(grid: Vec<f64>, states: Vec<HState>, mu: f64) -> SolutionCurve {
        let mut drift = [0.0f64; 4];
        for st in &states {
            for (d, v) in drift.iter_mut().zip(first_integrals(st)) {
                *d = d.max(v.abs());
            }
        }
        SolutionCurve {
            grid,
            states,
            drift,
            accepted: 0,
            rejected: 0,
            mu,
            dense: None,
        }
    }

    /// Dense evaluation; falls back to the nearest grid state when the curve
    /// was assembled from samples only.
    pub fn eval(&self, s: f64) -> HState {
        if let Some(dense) = &self.dense {
            return HState::from_vec8(s, &dense.eval(s), self.mu);
        }
        let idx = self
            .grid
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - s).abs().total_cmp(&(b.1 - s).abs()))
            .map(|(i, _)| i)
            .expect("nonempty curve");
        self.states[idx]
    }
}

/// Integrates the h-system from `x0` to abscissa `s_end` with per-node
/// monitoring of the first integrals and the denominator sign.
pub fn integrate(x0: &HState, s_end: f64, opt: &Dopri5Options) -> Result<SolutionCurve, OdeError> {
    let mu = x0.mu;
    let s0 = x0.s;
    let rhs = |s: f64, y: &[f64; 8]| {
        let st = HState::from_vec8(s, y, mu);
        h_rhs(&st).ok()
    };
    let dense = dopri5::integrate(rhs, s0, x0.to_vec8(), s_end, opt)?;
    let mut grid = Vec::new();
    let mut states = Vec::new();
    for (s, y) in dense.nodes() {
        grid.push(s);
        states.push(HState::from_vec8(s, &y, mu));
    }
    if grid.is_empty() {
        grid.push(s0);
        states.push(*x0);
    }
    let mut curve = SolutionCurve::from_parts(grid, states, mu);
    curve.accepted = dense.accepted;
    curve.rejected = dense.rejected;
    curve.dense = Some(dense);
    Ok(curve)
}

/// CSV emission: fixed header, one row per grid node, 17 significant digits.
pub fn write_csv<W: Write>(curve: &SolutionCurve, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "s,h1,h2,h3,h4,h1p,h2p,h3p,h4p,I1,I2,I3,I4")?;
    for st in &curve.states {
        let ints = first_integrals(st);
        write!(out, "{:.16e}", st.s)?;
        for v in st.a.iter().chain(&st.b).chain(&ints) {
            write!(out, ",{:.16e}", v)?;
        }
        writeln!(out)?;
    }
    Ok(())
}
