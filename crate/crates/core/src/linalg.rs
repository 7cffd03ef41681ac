//! Tiny dense linear algebra helpers: just what the 4×4 recursion solves and
//! the 6×6 metric positivity checks need.

/// Solves a 4×4 system by LU with partial pivoting. Returns `None` when the
/// matrix is numerically singular.
pub fn solve4(a: &[[f64; 4]; 4], b: &[f64; 4]) -> Option<[f64; 4]> {
    let mut m = *a;
    let mut x = *b;
    let mut perm = [0usize, 1, 2, 3];
    for col in 0..4 {
        let (pivot, pmax) = (col..4)
            .map(|r| (r, m[perm[r]][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if pmax == 0.0 {
            return None;
        }
        perm.swap(col, pivot);
        let p = perm[col];
        for r in col + 1..4 {
            let q = perm[r];
            let factor = m[q][col] / m[p][col];
            m[q][col] = 0.0;
            for c in col + 1..4 {
                m[q][c] -= factor * m[p][c];
            }
            x[q] -= factor * x[p];
        }
    }
    let mut out = [0.0; 4];
    for col in (0..4).rev() {
        let p = perm[col];
        let mut s = x[p];
        for c in col + 1..4 {
            s -= m[p][c] * out[c];
        }
        out[col] = s / m[p][col];
    }
    Some(out)
}

/// Determinant of a 4×4 matrix (cofactor expansion via 2×2 minors).
pub fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let minor2 = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]
    };
    let mut det = 0.0;
    // expand along the first two rows (Laplace on row pairs)
    let cols = [
        (0, 1, 2, 3, 1.0),
        (0, 2, 1, 3, -1.0),
        (0, 3, 1, 2, 1.0),
        (1, 2, 0, 3, 1.0),
        (1, 3, 0, 2, -1.0),
        (2, 3, 0, 1, 1.0),
    ];
    for &(c0, c1, d0, d1, sign) in &cols {
        det += sign * minor2(0, 1, c0, c1) * minor2(2, 3, d0, d1);
    }
    det
}

/// Eigenvalues of a symmetric 6×6 matrix by cyclic Jacobi rotations,
/// returned in ascending order.
pub fn sym_eigenvalues6(a: &[[f64; 6]; 6]) -> [f64; 6] {
    let mut m = *a;
    for _sweep in 0..64 {
        let mut off = 0.0;
        for i in 0..6 {
            for j in i + 1..6 {
                off += m[i][j] * m[i][j];
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..6 {
            for q in p + 1..6 {
                if m[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..6 {
                    let (mkp, mkq) = (m[k][p], m[k][q]);
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..6 {
                    let (mpk, mqk) = (m[p][k], m[q][k]);
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    let mut eig = [0.0; 6];
    for i in 0..6 {
        eig[i] = m[i][i];
    }
    eig.sort_by(f64::total_cmp);
    eig
}
