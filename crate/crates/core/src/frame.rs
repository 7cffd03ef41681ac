//! The SU₂×SU₂-invariant calculus along the normal geodesic.
//!
//! Conventions fixed here once and for all:
//! - Lie algebra basis order: (U, A, E₁, V₁, E₂, V₂), where U spans the
//!   isotropy direction and A its centralizing complement in the torus.
//! - Tangent basis B_t along the geodesic: (ξ, Â, Ê₁, V̂₁, Ê₂, V̂₂), declared
//!   positively oriented; the dual coframe in the same order feeds `forms6`.
//! - The Killing form is normalized so that 𝓑(E_i, E_i) = 𝓑(V_i, V_i) = −1.

use thiserror::Error;

use crate::forms6::{wedge, Endo6, FormsError, KForm};

#[derive(Debug, Error, PartialEq)]
pub enum FrameError {
    #[error("f1 = 0: coefficient map is singular")]
    F1Zero,
    #[error("stability failure: {0}")]
    NotStable(&'static str),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// Structure constants and Killing form of su₂ ⊕ su₂ in the fixed basis.
pub struct LieBasis {
    /// brackets[i][j] = components of [X_i, X_j] in the basis.
    pub brackets: [[[f64; 6]; 6]; 6],
    /// Diagonal of the Cartan–Killing form (the basis is 𝓑-orthogonal).
    pub killing: [f64; 6],
}

/// The basis brackets, hard-coded from the explicit 2×2 matrix realization
/// (U = (H,H), A = (H,−H) with H = diag(i/2, −i/2); E, V the off-diagonal
/// generators scaled so that 𝓑(E,E) = −1) and unit-tested against matrix
/// commutators.
pub fn lie_basis() -> LieBasis {
    let mut b = [[[0.0; 6]; 6]; 6];
    // index map: 0 U, 1 A, 2 E1, 3 V1, 4 E2, 5 V2
    let mut set = |i: usize, j: usize, v: [f64; 6]| {
        b[i][j] = v;
        for (k, x) in v.iter().enumerate() {
            b[j][i][k] = -x;
        }
    };
    let e = |k: usize, c: f64| {
        let mut v = [0.0; 6];
        v[k] = c;
        v
    };
    // ad(U) and ad(A) rotate each (E_i, V_i) plane
    set(0, 2, e(3, 1.0)); // [U, E1] = V1
    set(0, 3, e(2, -1.0)); // [U, V1] = -E1
    set(0, 4, e(5, 1.0)); // [U, E2] = V2
    set(0, 5, e(4, -1.0)); // [U, V2] = -E2
    set(1, 2, e(3, 1.0)); // [A, E1] = V1
    set(1, 3, e(2, -1.0)); // [A, V1] = -E1
    set(1, 4, e(5, -1.0)); // [A, E2] = -V2
    set(1, 5, e(4, 1.0)); // [A, V2] = E2
    // [E_i, V_i] closes back onto the torus
    let mut uv = [0.0; 6];
    uv[0] = 0.25;
    uv[1] = 0.25;
    set(2, 3, uv); // [E1, V1] = ¼U + ¼A
    uv[1] = -0.25;
    set(4, 5, uv); // [E2, V2] = ¼U - ¼A
    LieBasis {
        brackets: b,
        killing: [-4.0, -4.0, -1.0, -1.0, -1.0, -1.0],
    }
}

impl LieBasis {
    /// Largest component of [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] over all basis
    /// triples.
    pub fn jacobi_residual(&self) -> f64 {
        let br = |x: &[f64; 6], y: &[f64; 6]| {
            let mut out = [0.0; 6];
            for i in 0..6 {
                for j in 0..6 {
                    if x[i] == 0.0 || y[j] == 0.0 {
                        continue;
                    }
                    for k in 0..6 {
                        out[k] += x[i] * y[j] * self.brackets[i][j][k];
                    }
                }
            }
            out
        };
        let mut worst: f64 = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                for k in 0..6 {
                    let mut e = [0.0; 6];
                    let (mut x, mut y, mut z) = (e, e, e);
                    x[i] = 1.0;
                    y[j] = 1.0;
                    z[k] = 1.0;
                    let t1 = br(&br(&x, &y), &z);
                    let t2 = br(&br(&y, &z), &x);
                    let t3 = br(&br(&z, &x), &y);
                    for m in 0..6 {
                        e[m] = t1[m] + t2[m] + t3[m];
                        worst = worst.max(e[m].abs());
                    }
                }
            }
        }
        worst
    }
}

/// The five invariant 2-forms in the coframe order (ξ*, A*, E₁*, V₁*, E₂*, V₂*):
/// ω¹ = ξ*∧A*, ω² = E₁*∧V₁*, ω³ = E₂*∧V₂*, ω⁴ = E₁*∧E₂* + V₁*∧V₂*,
/// ω⁵ = E₁*∧V₂* − V₁*∧E₂*.
pub fn omega_basis() -> [KForm; 5] {
    [
        KForm::basis(&[0, 1]),
        KForm::basis(&[2, 3]),
        KForm::basis(&[4, 5]),
        KForm::basis(&[2, 4]).add(&KForm::basis(&[3, 5])),
        KForm::basis(&[2, 5]).sub(&KForm::basis(&[3, 4])),
    ]
}

/// The eight invariant 3-forms ψ^{1i} = ξ*∧ω^i, ψ^{2i} = A*∧ω^i, i = 2..5,
/// indexed `[a][i-2]`.
pub fn psi_basis() -> [[KForm; 4]; 2] {
    let omega = omega_basis();
    let xi = KForm::basis(&[0]);
    let astar = KForm::basis(&[1]);
    let mk = |one: &KForm| {
        [
            wedge(one, &omega[1]).unwrap(),
            wedge(one, &omega[2]).unwrap(),
            wedge(one, &omega[3]).unwrap(),
            wedge(one, &omega[4]).unwrap(),
        ]
    };
    [mk(&xi), mk(&astar)]
}

/// Fixed volume form ξ*∧A*∧E₁*∧V₁*∧E₂*∧V₂* of the declared orientation
/// (equal to ω¹∧ω²∧ω³).
pub fn reference_volume() -> KForm {
    KForm::basis(&[0, 1, 2, 3, 4, 5])
}

/// Structure constants of the tangent fields (Â, Ê₁, V̂₁, Ê₂, V̂₂) with the
/// isotropy direction projected out: indices 1..=5 of the tangent basis,
/// index 0 (ξ) brackets to zero.
fn tangent_bracket(basis: &LieBasis, i: usize, j: usize) -> [f64; 6] {
    let mut out = [0.0; 6];
    if i == 0 || j == 0 {
        return out;
    }
    // tangent index 1..5 ↔ Lie index 1..5; drop the U-component
    let v = basis.brackets[i][j];
    out[1..6].copy_from_slice(&v[1..6]);
    out
}

/// The algebraic (Chevalley–Eilenberg) part of the invariant exterior
/// derivative at a point of the geodesic: transport terms in t are NOT
/// included; callers add ξ*∧(coefficient derivative) themselves.
pub fn algebraic_d(form: &KForm) -> KForm {
    let basis = lie_basis();
    let k = form.degree();
    assert!(k >= 1 && k <= 5);
    let mut out = KForm::zero(k + 1);
    // iterate over strictly increasing (k+1)-tuples
    let mut tuple: Vec<u8> = (0..=k as u8).collect();
    loop {
        let mut value = 0.0;
        for r in 0..tuple.len() {
            for s in r + 1..tuple.len() {
                let br = tangent_bracket(&basis, tuple[r] as usize, tuple[s] as usize);
                if br.iter().all(|&x| x == 0.0) {
                    continue;
                }
                let mut args: Vec<[f64; 6]> = vec![br];
                for (m, &idx) in tuple.iter().enumerate() {
                    if m != r && m != s {
                        let mut v = [0.0; 6];
                        v[idx as usize] = 1.0;
                        args.push(v);
                    }
                }
                let sign = if (r + s) % 2 == 0 { 1.0 } else { -1.0 };
                value += sign * form.apply(&args);
            }
        }
        if value != 0.0 {
            out.set_coeff(&tuple, value);
        }
        // next strictly increasing tuple over 0..6
        let mut i = tuple.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if tuple[i] < (6 - tuple.len() + i) as u8 {
                tuple[i] += 1;
                for j in i + 1..tuple.len() {
                    tuple[j] = tuple[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// d(Σ f_i ω^i) at a point of the geodesic: the algebraic part plus the
/// transport term Σ f_i′ ξ*∧ω^i.
pub fn d_invariant_2form(f: &[f64; 5], fp: &[f64; 5]) -> KForm {
    let omega = omega_basis();
    let xi = KForm::basis(&[0]);
    let mut total = KForm::zero(3);
    for i in 0..5 {
        if f[i] != 0.0 {
            total = total.add(&algebraic_d(&omega[i]).scale(f[i]));
        }
        if fp[i] != 0.0 {
            total = total.add(&wedge(&xi, &omega[i]).unwrap().scale(fp[i]));
        }
    }
    total
}

/// Values and first derivatives of the coefficient functions (f₁…f₅) at a
/// parameter t, together with the scalar-curvature normalization μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FJet {
    pub t: f64,
    pub f: [f64; 5],
    pub fp: [f64; 5],
    pub mu: f64,
}

impl FJet {
    /// 𝔣 = √(f₄² + f₅²).
    pub fn fff(&self) -> f64 {
        self.f[3].hypot(self.f[4])
    }

    /// 𝔣′ = (f₄f₄′ + f₅f₅′)/𝔣.
    pub fn fff_prime(&self) -> f64 {
        (self.f[3] * self.fp[3] + self.f[4] * self.fp[4]) / self.fff()
    }

    /// 𝔣″ given the second derivatives of f₄, f₅.
    pub fn fff_second(&self, fpp: &[f64; 5]) -> f64 {
        let fff = self.fff();
        let fffp = self.fff_prime();
        (self.fp[3] * self.fp[3]
            + self.fp[4] * self.fp[4]
            + self.f[3] * fpp[3]
            + self.f[4] * fpp[4]
            - fffp * fffp)
            / fff
    }

    /// The Kähler 2-form Σ f_i ω^i as a coefficient vector.
    pub fn omega_form(&self) -> KForm {
        let omega = omega_basis();
        let mut total = KForm::zero(2);
        for i in 0..5 {
            total = total.add(&omega[i].scale(self.f[i]));
        }
        total
    }
}

/// Coefficients of ψ = Σ p_{aj}ψ^{aj} and ψ̂ = J*ψ = Σ p̂_{aj}ψ^{aj} induced
/// by a jet, indexed `p[a][j-2]` for a = 1,2 and j = 2..5.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiCoeffs {
    pub p: [[f64; 4]; 2],
    pub phat: [[f64; 4]; 2],
    /// q = p₁₄² + p₁₅² − p₁₂p₁₃.
    pub q: f64,
}

impl PsiCoeffs {
    /// p₂₄² + p₂₅².
    pub fn p2sq(&self) -> f64 {
        self.p[1][2] * self.p[1][2] + self.p[1][3] * self.p[1][3]
    }

    /// Assemble Σ c_{aj} ψ^{aj} for a coefficient block.
    pub fn form(c: &[[f64; 4]; 2]) -> KForm {
        let psi = psi_basis();
        let mut total = KForm::zero(3);
        for a in 0..2 {
            for j in 0..4 {
                if c[a][j] != 0.0 {
                    total = total.add(&psi[a][j].scale(c[a][j]));
                }
            }
        }
        total
    }
}

/// The coefficient map of the 3-form data: p from (p₁₂ = f₂′/3 + f₁/12, …),
/// p̂ from the pulled-back form (p̂₂₂ = (f₁/3)(f₂′ + f₁/4), …).
pub fn coefficients_from_f(j: &FJet) -> Result<PsiCoeffs, FrameError> {
    let f1 = j.f[0];
    if f1 == 0.0 {
        return Err(FrameError::F1Zero);
    }
    let p = [
        [
            j.fp[1] / 3.0 + f1 / 12.0,
            j.fp[2] / 3.0 - f1 / 12.0,
            j.fp[3] / 3.0,
            j.fp[4] / 3.0,
        ],
        [0.0, 0.0, 2.0 / 3.0 * j.f[4], -2.0 / 3.0 * j.f[3]],
    ];
    let phat = [
        [0.0, 0.0, -2.0 / 3.0 * j.f[4] / f1, 2.0 / 3.0 * j.f[3] / f1],
        [
            f1 / 3.0 * (j.fp[1] + f1 / 4.0),
            f1 / 3.0 * (j.fp[2] - f1 / 4.0),
            f1 * j.fp[3] / 3.0,
            f1 * j.fp[4] / 3.0,
        ],
    ];
    let q = p[0][2] * p[0][2] + p[0][3] * p[0][3] - p[0][0] * p[0][1];
    Ok(PsiCoeffs { p, phat, q })
}

/// The block matrix diag(K, L) of the almost complex structure induced by the
/// stable 3-form ψ in the tangent basis, with K acting on (ξ, Â) and L on
/// (Ê₁, V̂₁, Ê₂, V̂₂).
pub fn j_psi_matrix(c: &PsiCoeffs) -> Result<Endo6, FrameError> {
    let p2sq = c.p2sq();
    if c.q <= 0.0 {
        return Err(FrameError::NotStable("q = p14²+p15²-p12·p13 must be positive"));
    }
    if p2sq == 0.0 {
        return Err(FrameError::NotStable("p24²+p25² must be positive"));
    }
    let mut m = [[0.0; 6]; 6];
    m[0][1] = (p2sq / c.q).sqrt();
    m[1][0] = -(c.q / p2sq).sqrt();
    let [p12, p13, p14, p15] = c.p[0];
    let (p24, p25) = (c.p[1][2], c.p[1][3]);
    let u = p15 * p24 - p14 * p25;
    let l = [
        [0.0, -u, p13 * p25, -p13 * p24],
        [u, 0.0, p13 * p24, p13 * p25],
        [p12 * p25, p12 * p24, 0.0, u],
        [-p12 * p24, p12 * p25, -u, 0.0],
    ];
    let scale = 1.0 / (c.q * p2sq).sqrt();
    for r in 0..4 {
        for s in 0..4 {
            m[2 + r][2 + s] = scale * l[r][s];
        }
    }
    Ok(Endo6(m))
}

/// Diagnostics of the pointwise admissibility conditions for a jet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityReport {
    /// The quartic invariant −(p₂₄²+p₂₅²)·q from the ψ-coefficients.
    pub p_psi: f64,
    /// The same invariant from the f-variable expression
    /// −(4/81)𝔣²((f₄′)²+(f₅′)² − (f₂′+f₁/4)(f₃′−f₁/4)).
    pub p_psi_f: f64,
    pub f1_negative: bool,
    pub fff_positive: bool,
    /// |f₄f₅′ − f₅f₄′| below tolerance (constant phase).
    pub phase_constant: bool,
    /// (𝔣′)² − (f₂′+f₁/4)(f₃′−f₁/4) > 0.
    pub stability_inequality: bool,
    /// Residual of the algebraic constraint
    /// 4𝔣² − ((𝔣′)² − (f₂′+f₁/4)(f₃′−f₁/4))f₁².
    pub constraint_residual: f64,
    pub ok: bool,
}

const PHASE_TOL: f64 = 1e-10;
const CONSTRAINT_TOL: f64 = 1e-8;

/// Evaluates the stability invariant and all pointwise admissibility flags.
pub fn stability_data(j: &FJet) -> Result<StabilityReport, FrameError> {
    let c = coefficients_from_f(j)?;
    let p_psi = -c.p2sq() * c.q;
    let f1 = j.f[0];
    let fffsq = j.f[3] * j.f[3] + j.f[4] * j.f[4];
    let disc = j.fp[3] * j.fp[3] + j.fp[4] * j.fp[4]
        - (j.fp[1] + f1 / 4.0) * (j.fp[2] - f1 / 4.0);
    let p_psi_f = -4.0 / 81.0 * fffsq * disc;
    let phase = j.f[3] * j.fp[4] - j.f[4] * j.fp[3];
    let scale = 1.0 + j.f.iter().chain(&j.fp).fold(0.0f64, |m, x| m.max(x.abs()));
    let constraint_residual = 4.0 * fffsq - disc * f1 * f1;
    let f1_negative = f1 < 0.0;
    let fff_positive = fffsq > 0.0;
    let phase_constant = phase.abs() < PHASE_TOL * scale;
    let stability_inequality = disc > 0.0;
    let ok = f1_negative
        && fff_positive
        && phase_constant
        && stability_inequality
        && constraint_residual.abs() < CONSTRAINT_TOL * scale * scale;
    Ok(StabilityReport {
        p_psi,
        p_psi_f,
        f1_negative,
        fff_positive,
        phase_constant,
        stability_inequality,
        constraint_residual,
        ok,
    })
}

/// Gram matrix g = ω(·, J_ψ·) in the tangent basis.
pub fn metric_matrix(j: &FJet) -> Result<[[f64; 6]; 6], FrameError> {
    let report = stability_data(j)?;
    if !report.f1_negative {
        return Err(FrameError::NotStable("f1 must be negative"));
    }
    if !report.stability_inequality {
        return Err(FrameError::NotStable(
            "(𝔣')² - (f2'+f1/4)(f3'-f1/4) must be positive",
        ));
    }
    let c = coefficients_from_f(j)?;
    let jm = j_psi_matrix(&c)?;
    let omega = j.omega_form();
    let mut g = [[0.0; 6]; 6];
    for col in 0..6 {
        let mut ecol = [0.0; 6];
        ecol[col] = 1.0;
        let jcol = jm.apply(&ecol);
        for (row, grow) in g.iter_mut().enumerate() {
            let mut erow = [0.0; 6];
            erow[row] = 1.0;
            grow[col] = omega.apply(&[erow, jcol]);
        }
    }
    Ok(g)
}

/// The two residual forms of the structure equations at a point:
/// (dω − 3ψ, dψ̂ + 2μ ω∧ω), expanded invariantly. Both vanish exactly when
/// the jet (with the given second derivatives) solves the reduced system.
pub fn nk_residual_forms(
    j: &FJet,
    fpp: &[f64; 5],
) -> Result<(KForm, KForm), FrameError> {
    let c = coefficients_from_f(j)?;
    // dω − 3ψ
    let domega = d_invariant_2form(&j.f, &j.fp);
    let res3 = domega.sub(&PsiCoeffs::form(&c.p).scale(3.0));

    // dψ̂ + 2μ ω∧ω, with the p̂ coefficient derivatives taken analytically
    let f1 = j.f[0];
    let f1p = j.fp[0];
    let phat_prime = [
        [
            0.0,
            0.0,
            -2.0 / 3.0 * (j.fp[4] * f1 - j.f[4] * f1p) / (f1 * f1),
            2.0 / 3.0 * (j.fp[3] * f1 - j.f[3] * f1p) / (f1 * f1),
        ],
        [
            (f1p * (j.fp[1] + f1 / 4.0) + f1 * (fpp[1] + f1p / 4.0)) / 3.0,
            (f1p * (j.fp[2] - f1 / 4.0) + f1 * (fpp[2] - f1p / 4.0)) / 3.0,
            (f1p * j.fp[3] + f1 * fpp[3]) / 3.0,
            (f1p * j.fp[4] + f1 * fpp[4]) / 3.0,
        ],
    ];
    let psihat = PsiCoeffs::form(&c.phat);
    let transport = wedge(&KForm::basis(&[0]), &PsiCoeffs::form(&phat_prime))?;
    let dpsihat = algebraic_d(&psihat).add(&transport);
    let omega = j.omega_form();
    let omega2 = wedge(&omega, &omega)?;
    let res4 = dpsihat.add(&omega2.scale(2.0 * j.mu));
    Ok((res3, res4))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_identity_holds() {
        assert!(lie_basis().jacobi_residual() < 1e-14);
    }

    #[test]
    fn killing_normalization() {
        let b = lie_basis();
        assert_eq!(b.killing[2], -1.0);
        assert_eq!(b.killing[0], -4.0);
    }

    #[test]
    fn d_omega1_quarter_split() {
        // dω¹ = ¼ξ*∧(ω² − ω³)
        let d = d_invariant_2form(&[1.0, 0.0, 0.0, 0.0, 0.0], &[0.0; 5]);
        assert!((d.coeff(&[0, 2, 3]) - 0.25).abs() < 1e-15);
        assert!((d.coeff(&[0, 4, 5]) + 0.25).abs() < 1e-15);
        assert!(d.sub(&{
            let omega = omega_basis();
            wedge(&KForm::basis(&[0]), &omega[1].sub(&omega[2]))
                .unwrap()
                .scale(0.25)
        })
        .is_zero(1e-15));
    }

    #[test]
    fn d_omega23_vanish() {
        let d2 = d_invariant_2form(&[0.0, 1.0, 0.0, 0.0, 0.0], &[0.0; 5]);
        let d3 = d_invariant_2form(&[0.0, 0.0, 1.0, 0.0, 0.0], &[0.0; 5]);
        assert!(d2.is_zero(1e-15));
        assert!(d3.is_zero(1e-15));
    }

    #[test]
    fn d_omega45_rotate() {
        // dω⁴ = −2A*∧ω⁵, dω⁵ = 2A*∧ω⁴
        let omega = omega_basis();
        let astar = KForm::basis(&[1]);
        let d4 = d_invariant_2form(&[0.0, 0.0, 0.0, 1.0, 0.0], &[0.0; 5]);
        assert!(d4
            .add(&wedge(&astar, &omega[4]).unwrap().scale(2.0))
            .is_zero(1e-15));
        let d5 = d_invariant_2form(&[0.0, 0.0, 0.0, 0.0, 1.0], &[0.0; 5]);
        assert!(d5
            .sub(&wedge(&astar, &omega[3]).unwrap().scale(2.0))
            .is_zero(1e-15));
    }

    #[test]
    fn transport_term_only() {
        let d = d_invariant_2form(&[0.0; 5], &[0.0, 1.0, 0.0, 0.0, 0.0]);
        let omega = omega_basis();
        assert!(d
            .sub(&wedge(&KForm::basis(&[0]), &omega[1]).unwrap())
            .is_zero(1e-15));
    }

    #[test]
    fn d_astar_matches_quarter_rule() {
        // dA* = ¼(ω³ − ω²)
        let d = algebraic_d(&KForm::basis(&[1]));
        let omega = omega_basis();
        assert!(d
            .sub(&omega[2].sub(&omega[1]).scale(0.25))
            .is_zero(1e-15));
    }

    #[test]
    fn constant_jet_coefficients() {
        let j = FJet {
            t: 0.0,
            f: [-1.0, 0.0, 0.0, 0.0, 0.0],
            fp: [0.0; 5],
            mu: 1.0,
        };
        let c = coefficients_from_f(&j).unwrap();
        assert!((c.p[0][0] + 1.0 / 12.0).abs() < 1e-15);
        assert!((c.p[0][1] - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(c.p[1][0], 0.0);
        assert_eq!(c.p[1][1], 0.0);
    }

    #[test]
    fn omega_wedge_omega_expansion() {
        // ω∧ω = 2Σ f₁f_i ξ*∧A*∧ω^i + 2(f₂f₃ − f₄² − f₅²) ω²∧ω³
        let f = [-0.7, 0.3, -0.2, 0.1, 0.4];
        let j = FJet {
            t: 0.0,
            f,
            fp: [0.0; 5],
            mu: 1.0,
        };
        let omega = omega_basis();
        let lhs = wedge(&j.omega_form(), &j.omega_form()).unwrap();
        let mut rhs = wedge(&omega[1], &omega[2])
            .unwrap()
            .scale(2.0 * (f[1] * f[2] - f[3] * f[3] - f[4] * f[4]));
        let oa = wedge(&KForm::basis(&[0]), &KForm::basis(&[1])).unwrap();
        for i in 1..5 {
            rhs = rhs.add(&wedge(&oa, &omega[i]).unwrap().scale(2.0 * f[0] * f[i]));
        }
        assert!(lhs.sub(&rhs).is_zero(1e-14));
    }
}
