//! The finite isometry group acting on solution data, and canonical orbit
//! representatives used to decide when two solutions describe the same
//! structure.
//!
//! Two actions are implemented: the involutions on initial data
//! (a₂, a₃, a₄, b₁, b₂, b₃, b₄) ∈ ℝ⁷, and the curve-level maps on quadruples
//! (f₁, f₂, f₃, 𝔣)(t) (sign flips and the t ↦ −t reversal).

/// Element of the Klein four-group acting on ℝ⁷ initial data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformTag {
    Id,
    /// (−a₂, a₃, a₄, b₁, −b₂, b₃, b₄)
    Tau1,
    /// (−a₂, −a₃, a₄, −b₁, −b₂, −b₃, b₄)
    Tau2,
    /// τ₁∘τ₂ = (a₂, −a₃, a₄, −b₁, b₂, −b₃, b₄)
    Tau12,
}

impl TransformTag {
    pub const ALL: [TransformTag; 4] = [
        TransformTag::Id,
        TransformTag::Tau1,
        TransformTag::Tau2,
        TransformTag::Tau12,
    ];

    /// Signs applied componentwise to (a₂, a₃, a₄, b₁, b₂, b₃, b₄).
    fn signs(&self) -> [f64; 7] {
        match self {
            TransformTag::Id => [1.0; 7],
            TransformTag::Tau1 => [-1.0, 1.0, 1.0, 1.0, -1.0, 1.0, 1.0],
            TransformTag::Tau2 => [-1.0, -1.0, 1.0, -1.0, -1.0, -1.0, 1.0],
            TransformTag::Tau12 => [1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0],
        }
    }

    pub fn apply_r7(&self, x: &[f64; 7]) -> [f64; 7] {
        let mut out = *x;
        for (v, s) in out.iter_mut().zip(self.signs()) {
            *v *= s;
        }
        out
    }
}

/// The full T-orbit of a data point (four elements).
pub fn orbit_r7(x: &[f64; 7]) -> [[f64; 7]; 4] {
    [
        TransformTag::Id.apply_r7(x),
        TransformTag::Tau1.apply_r7(x),
        TransformTag::Tau2.apply_r7(x),
        TransformTag::Tau12.apply_r7(x),
    ]
}

/// Lexicographically minimal element of the T-orbit; two points describe
/// equivalent data exactly when their representatives agree within tolerance.
pub fn canonical_representative(x: &[f64; 7]) -> [f64; 7] {
    orbit_r7(x)
        .into_iter()
        .min_by(|p, q| {
            p.iter()
                .zip(q.iter())
                .map(|(a, b)| a.total_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap()
}

/// Curve-level transformations on quadruples (f₁, f₂, f₃, 𝔣)(t).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadTransform {
    /// (x₁,…,x₄)(t) ↦ (−x₁(−t), x₂(−t), x₃(−t), x₄(−t))
    Reverse,
    /// (−x₁, −x₂, −x₃, x₄)
    FlipSigns,
    /// (x₁, −x₃, −x₂, x₄)
    SwapFactors,
}

impl QuadTransform {
    /// Returns (t to sample the source curve at, componentwise signs).
    pub fn pullback(&self, t: f64) -> (f64, [f64; 4]) {
        match self {
            QuadTransform::Reverse => (-t, [-1.0, 1.0, 1.0, 1.0]),
            QuadTransform::FlipSigns => (t, [-1.0, -1.0, -1.0, 1.0]),
            QuadTransform::SwapFactors => (t, [1.0, -1.0, -1.0, 1.0]),
        }
    }

    /// Applies the transformation to a sampled quadruple curve.
    pub fn apply<F: Fn(f64) -> [f64; 4]>(&self, curve: F, t: f64) -> [f64; 4] {
        let (src, signs) = self.pullback(t);
        let mut q = curve(src);
        if matches!(self, QuadTransform::SwapFactors) {
            q.swap(1, 2);
        }
        for (v, s) in q.iter_mut().zip(signs) {
            *v *= s;
        }
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_involutions() {
        let x = [0.3, -0.2, 0.7, 0.11, -0.5, 0.05, 0.9];
        for tag in [TransformTag::Tau1, TransformTag::Tau2] {
            assert_eq!(tag.apply_r7(&tag.apply_r7(&x)), x);
        }
    }

    #[test]
    fn canonical_is_orbit_invariant() {
        let x = [0.3, -0.2, 0.7, 0.11, -0.5, 0.05, 0.9];
        let rep = canonical_representative(&x);
        for tag in TransformTag::ALL {
            assert_eq!(canonical_representative(&tag.apply_r7(&x)), rep);
        }
    }

    #[test]
    fn swap_factors_swaps_and_negates() {
        let curve = |t: f64| [t, 1.0, 2.0, 3.0];
        let q = QuadTransform::SwapFactors.apply(curve, 0.5);
        assert_eq!(q, [0.5, -2.0, -1.0, 3.0]);
    }

    #[test]
    fn reverse_flips_parameter_and_f1() {
        let curve = |t: f64| [t, t * t, -t, 1.0];
        let q = QuadTransform::Reverse.apply(curve, 0.5);
        assert_eq!(q, [0.5, 0.25, 0.5, 1.0]);
    }
}
