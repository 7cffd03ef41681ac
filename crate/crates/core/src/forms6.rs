//! Exterior algebra on a fixed oriented six-dimensional real vector space,
//! together with the quartic invariant of a 3-form, the endomorphism it
//! induces and, on the negative orbit, the associated complex structure.
//!
//! Coefficients of a k-form are stored against the basis of strictly
//! increasing multi-indices, ordered lexicographically.

use std::sync::OnceLock;

use thiserror::Error;

/// Dimension of the underlying vector space.
pub const DIM: usize = 6;

/// Binomial coefficients C(6, k) for k = 0..=6.
pub const BINOM6: [usize; 7] = [1, 6, 15, 20, 15, 6, 1];

#[derive(Debug, Error, PartialEq)]
pub enum FormsError {
    #[error("wedge product of degrees {0} and {1} exceeds dimension 6")]
    DegreeOverflow(usize, usize),
    #[error("volume form is zero")]
    ZeroVolume,
    #[error("S^2 is not proportional to the identity (off-diagonal residual {residual:e} exceeds {tolerance:e})")]
    NotProportional { residual: f64, tolerance: f64 },
    #[error("3-form is not stable: quartic invariant {0:e} is not negative")]
    NotStable(f64),
    #[error("interior product of a 0-form is undefined")]
    InteriorOfScalar,
}

/// Multi-index tables, one per degree: the sorted list of strictly
/// increasing tuples, in lexicographic order.
fn index_table(degree: usize) -> &'static [Vec<u8>] {
    static TABLES: OnceLock<Vec<Vec<Vec<u8>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=DIM)
            .map(|k| {
                let mut out: Vec<Vec<u8>> = Vec::with_capacity(BINOM6[k]);
                let mut idx: Vec<u8> = (0..k as u8).collect();
                loop {
                    out.push(idx.clone());
                    // next combination in lexicographic order
                    let mut i = k;
                    loop {
                        if i == 0 {
                            return out;
                        }
                        i -= 1;
                        if idx[i] < (DIM - k + i) as u8 {
                            idx[i] += 1;
                            for j in i + 1..k {
                                idx[j] = idx[j - 1] + 1;
                            }
                            break;
                        }
                    }
                }
            })
            .collect()
    });
    &tables[degree]
}

/// Position of a strictly increasing tuple in the lexicographic table.
fn rank(tuple: &[u8]) -> usize {
    index_table(tuple.len())
        .iter()
        .position(|t| t == tuple)
        .expect("tuple must be strictly increasing over 0..6")
}

/// A k-form on the fixed six-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct KForm {
    degree: usize,
    coeffs: Vec<f64>,
}

impl KForm {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= DIM);
        KForm {
            degree,
            coeffs: vec![0.0; BINOM6[degree]],
        }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), BINOM6[degree]);
        KForm { degree, coeffs }
    }

    /// The basis k-form e^{i1} ∧ … ∧ e^{ik}; indices need not be sorted,
    /// the sign of the sorting permutation is absorbed into the coefficient.
    pub fn basis(indices: &[u8]) -> Self {
        let mut sorted = indices.to_vec();
        let sign = sort_sign(&mut sorted);
        assert!(sorted.windows(2).all(|w| w[0] < w[1]), "repeated index");
        let mut form = KForm::zero(indices.len());
        form.coeffs[rank(&sorted)] = sign;
        form
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, indices: &[u8]) -> f64 {
        let mut sorted = indices.to_vec();
        let sign = sort_sign(&mut sorted);
        sign * self.coeffs[rank(&sorted)]
    }

    pub fn set_coeff(&mut self, indices: &[u8], value: f64) {
        let mut sorted = indices.to_vec();
        let sign = sort_sign(&mut sorted);
        self.coeffs[rank(&sorted)] = sign * value;
    }

    pub fn scale(&self, c: f64) -> Self {
        KForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| c * x).collect(),
        }
    }

    pub fn add(&self, other: &KForm) -> Self {
        assert_eq!(self.degree, other.degree);
        KForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &KForm) -> Self {
        self.add(&other.scale(-1.0))
    }

    /// Max-abs norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    /// Evaluate the form on k vectors.
    pub fn apply(&self, vectors: &[[f64; DIM]]) -> f64 {
        assert_eq!(vectors.len(), self.degree);
        let table = index_table(self.degree);
        let mut total = 0.0;
        for (r, tuple) in table.iter().enumerate() {
            if self.coeffs[r] == 0.0 {
                continue;
            }
            // det of the minor picking rows `tuple` from each vector
            let k = self.degree;
            let mut minor = vec![0.0; k * k];
            for (i, &ti) in tuple.iter().enumerate() {
                for (j, v) in vectors.iter().enumerate() {
                    minor[i * k + j] = v[ti as usize];
                }
            }
            total += self.coeffs[r] * det_small(&minor, k);
        }
        total
    }

    /// Pullback along a linear map: (A*α)(v1,…,vk) = α(A v1, …, A vk).
    pub fn pullback(&self, map: &Endo6) -> KForm {
        let k = self.degree;
        let table = index_table(k);
        let mut out = KForm::zero(k);
        for (r, tuple) in table.iter().enumerate() {
            let columns: Vec<[f64; DIM]> = tuple
                .iter()
                .map(|&j| {
                    let mut col = [0.0; DIM];
                    for (i, c) in col.iter_mut().enumerate() {
                        *c = map.0[i][j as usize];
                    }
                    col
                })
                .collect();
            out.coeffs[r] = self.apply(&columns);
        }
        out
    }
}

fn det_small(m: &[f64], n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => m[0],
        2 => m[0] * m[3] - m[1] * m[2],
        3 => {
            m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        _ => {
            // Laplace expansion along the first row; n <= 6 here.
            let mut total = 0.0;
            for j in 0..n {
                if m[j] == 0.0 {
                    continue;
                }
                let mut sub = Vec::with_capacity((n - 1) * (n - 1));
                for r in 1..n {
                    for c in 0..n {
                        if c != j {
                            sub.push(m[r * n + c]);
                        }
                    }
                }
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                total += sign * m[j] * det_small(&sub, n - 1);
            }
            total
        }
    }
}

/// Sorts `indices` in place, returning the sign of the permutation.
fn sort_sign(indices: &mut [u8]) -> f64 {
    let mut sign = 1.0;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

/// Exterior product. Errors if the degrees sum past 6.
pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm, FormsError> {
    let k = a.degree + b.degree;
    if k > DIM {
        return Err(FormsError::DegreeOverflow(a.degree, b.degree));
    }
    let ta = index_table(a.degree);
    let tb = index_table(b.degree);
    let mut out = KForm::zero(k);
    for (ra, ia) in ta.iter().enumerate() {
        let ca = a.coeffs[ra];
        if ca == 0.0 {
            continue;
        }
        'pairs: for (rb, ib) in tb.iter().enumerate() {
            let cb = b.coeffs[rb];
            if cb == 0.0 {
                continue;
            }
            // merge, tracking the shuffle sign; bail on repeated index
            let mut sign = 1.0;
            let mut merged = Vec::with_capacity(k);
            let (mut i, mut j) = (0, 0);
            while i < ia.len() || j < ib.len() {
                if j == ib.len() || (i < ia.len() && ia[i] < ib[j]) {
                    merged.push(ia[i]);
                    i += 1;
                } else if i == ia.len() || ib[j] < ia[i] {
                    // ib[j] jumps over the remaining entries of ia
                    if (ia.len() - i) % 2 == 1 {
                        sign = -sign;
                    }
                    merged.push(ib[j]);
                    j += 1;
                } else {
                    continue 'pairs; // repeated index
                }
            }
            out.coeffs[rank(&merged)] += sign * ca * cb;
        }
    }
    Ok(out)
}

/// Interior product ι_v a.
pub fn interior(v: &[f64; DIM], a: &KForm) -> Result<KForm, FormsError> {
    if a.degree == 0 {
        return Err(FormsError::InteriorOfScalar);
    }
    let table = index_table(a.degree);
    let mut out = KForm::zero(a.degree - 1);
    for (r, tuple) in table.iter().enumerate() {
        let c = a.coeffs[r];
        if c == 0.0 {
            continue;
        }
        for (pos, &idx) in tuple.iter().enumerate() {
            let vi = v[idx as usize];
            if vi == 0.0 {
                continue;
            }
            let rest: Vec<u8> = tuple
                .iter()
                .copied()
                .filter(|&x| x != idx)
                .collect();
            let sign = if pos % 2 == 0 { 1.0 } else { -1.0 };
            out.coeffs[rank(&rest)] += sign * vi * c;
        }
    }
    Ok(out)
}

/// An endomorphism of the fixed six-dimensional space; `0[i][j]` is the
/// component of the image of e_j along e_i.
#[derive(Debug, Clone, PartialEq)]
pub struct Endo6(pub [[f64; DIM]; DIM]);

impl Endo6 {
    pub fn zero() -> Self {
        Endo6([[0.0; DIM]; DIM])
    }

    pub fn identity() -> Self {
        let mut m = [[0.0; DIM]; DIM];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Endo6(m)
    }

    pub fn compose(&self, other: &Endo6) -> Endo6 {
        let mut out = [[0.0; DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                let mut s = 0.0;
                for (k, row) in other.0.iter().enumerate() {
                    s += self.0[i][k] * row[j];
                }
                out[i][j] = s;
            }
        }
        Endo6(out)
    }

    pub fn scale(&self, c: f64) -> Endo6 {
        let mut out = self.0;
        for row in out.iter_mut() {
            for x in row.iter_mut() {
                *x *= c;
            }
        }
        Endo6(out)
    }

    pub fn apply(&self, v: &[f64; DIM]) -> [f64; DIM] {
        let mut out = [0.0; DIM];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Mean of the diagonal entries.
    pub fn diag_mean(&self) -> f64 {
        (0..DIM).map(|i| self.0[i][i]).sum::<f64>() / DIM as f64
    }

    /// Largest |entry| away from c·Id.
    pub fn residual_from_scalar(&self, c: f64) -> f64 {
        let mut r: f64 = 0.0;
        for (i, row) in self.0.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let target = if i == j { c } else { 0.0 };
                r = r.max((x - target).abs());
            }
        }
        r
    }

    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0, |m: f64, x| m.max(x.abs()))
    }
}

/// Orbit classification of a 3-form by the sign of its quartic invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orbit {
    NegativeOrbit,
    NullCone,
    PositiveOrbit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityClass {
    pub tag: Orbit,
    pub value: f64,
    /// Largest off-diagonal entry of S², reported as a consistency diagnostic.
    pub residual: f64,
}

/// The endomorphism S_θ defined by ½(ι_v θ ∧ θ) = ⟨e^j, S_θ v⟩ · vol,
/// read off against the given volume form. The ½ normalizes the quartic
/// invariant so that the standard stable form e⁰²⁴−e⁰³⁵−e¹²⁵−e¹³⁴ has
/// invariant −1 and S_θ is then itself the induced complex structure.
pub fn hitchin_endomorphism(theta: &KForm, vol: &KForm) -> Result<Endo6, FormsError> {
    assert_eq!(theta.degree(), 3);
    assert_eq!(vol.degree(), 6);
    let vol_coeff = vol.coeffs()[0];
    if vol_coeff == 0.0 {
        return Err(FormsError::ZeroVolume);
    }
    let mut s = [[0.0; DIM]; DIM];
    for i in 0..DIM {
        let mut ei = [0.0; DIM];
        ei[i] = 1.0;
        let phi = wedge(&interior(&ei, theta)?, theta)?;
        for (j, row) in s.iter_mut().enumerate().take(DIM) {
            let top = wedge(&phi, &KForm::basis(&[j as u8]))?;
            row[i] = 0.5 * top.coeffs()[0] / vol_coeff;
        }
    }
    // note the transpose above: s[j][i] is filled as row j of column i
    let mut out = [[0.0; DIM]; DIM];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = s[i][j];
        }
    }
    Ok(Endo6(out))
}

/// Relative classification tolerance, homogeneous of degree 4 in θ and
/// degree −2 in vol.
fn class_tolerance(theta: &KForm, vol: &KForm) -> f64 {
    let tn = theta.norm();
    let vn = vol.norm();
    1e-9 * tn.powi(4) / (vn * vn)
}

/// Reads the quartic invariant off the diagonal of S², classifying the
/// orbit by its sign.
pub fn stability_invariant(theta: &KForm, vol: &KForm) -> Result<StabilityClass, FormsError> {
    let s = hitchin_endomorphism(theta, vol)?;
    let s2 = s.compose(&s);
    let p = s2.diag_mean();
    let residual = s2.residual_from_scalar(p);
    let scale = 1.0 + theta.norm().powi(4) / (vol.norm() * vol.norm());
    let tolerance = 1e-10 * scale;
    if residual > tolerance {
        return Err(FormsError::NotProportional {
            residual,
            tolerance,
        });
    }
    let eps = class_tolerance(theta, vol);
    let tag = if p < -eps {
        Orbit::NegativeOrbit
    } else if p > eps {
        Orbit::PositiveOrbit
    } else {
        Orbit::NullCone
    };
    Ok(StabilityClass {
        tag,
        value: p,
        residual,
    })
}

/// The complex structure J_θ = S_θ / √(−P) of a stable 3-form.
pub fn complex_structure(theta: &KForm, vol: &KForm) -> Result<Endo6, FormsError> {
    let class = stability_invariant(theta, vol)?;
    if class.tag != Orbit::NegativeOrbit {
        return Err(FormsError::NotStable(class.value));
    }
    let s = hitchin_endomorphism(theta, vol)?;
    Ok(s.scale(1.0 / (-class.value).sqrt()))
}

/// Real and imaginary parts (½θ, ½J*θ) of the complex volume form of a
/// stable 3-form.
pub fn complex_volume_form(theta: &KForm, vol: &KForm) -> Result<(KForm, KForm), FormsError> {
    let j = complex_structure(theta, vol)?;
    let re = theta.scale(0.5);
    let im = theta.pullback(&j).scale(0.5);
    Ok((re, im))
}
