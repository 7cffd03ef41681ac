//! Explicit Dormand–Prince 5(4) integrator with FSAL and quartic dense
//! output. Hand-rolled on fixed-size state arrays: the two systems solved in
//! this crate are both eight-dimensional and smooth away from a known
//! denominator locus, which the right-hand side signals by returning `None`.

use super::OdeError;

#[derive(Debug, Clone, Copy)]
pub struct Dopri5Options {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Dopri5Options {
    fn default() -> Self {
        Dopri5Options {
            rtol: 1e-10,
            atol: 1e-10,
            max_steps: 1_000_000,
        }
    }
}

/// One accepted step with its dense-output coefficients.
#[derive(Debug, Clone)]
pub struct Segment<const N: usize> {
    pub t0: f64,
    pub h: f64,
    rcont: [[f64; N]; 5],
}

impl<const N: usize> Segment<N> {
    fn eval(&self, theta: f64) -> [f64; N] {
        let th1 = 1.0 - theta;
        let mut y = [0.0; N];
        for i in 0..N {
            let [r1, r2, r3, r4, r5] = [
                self.rcont[0][i],
                self.rcont[1][i],
                self.rcont[2][i],
                self.rcont[3][i],
                self.rcont[4][i],
            ];
            y[i] = r1 + theta * (r2 + th1 * (r3 + theta * (r4 + th1 * r5)));
        }
        y
    }
}

/// Piecewise-polynomial solution over the integration span.
#[derive(Debug, Clone)]
pub struct DenseCurve<const N: usize> {
    pub t_start: f64,
    pub t_end: f64,
    pub segments: Vec<Segment<N>>,
    pub accepted: usize,
    pub rejected: usize,
}

impl<const N: usize> DenseCurve<N> {
    /// Evaluate anywhere inside the covered span (clamped at the ends).
    pub fn eval(&self, t: f64) -> [f64; N] {
        let dir = (self.t_end - self.t_start).signum();
        let seg = self
            .segments
            .iter()
            .find(|s| dir * (t - s.t0) <= dir * s.h + 1e-300)
            .unwrap_or_else(|| self.segments.last().expect("nonempty curve"));
        let theta = ((t - seg.t0) / seg.h).clamp(0.0, 1.0);
        seg.eval(theta)
    }

    /// Accepted grid nodes (t, y), including both endpoints.
    pub fn nodes(&self) -> Vec<(f64, [f64; N])> {
        let mut out = Vec::with_capacity(self.segments.len() + 1);
        for seg in &self.segments {
            out.push((seg.t0, seg.eval(0.0)));
        }
        if let Some(last) = self.segments.last() {
            out.push((last.t0 + last.h, last.eval(1.0)));
        }
        out
    }
}

// Butcher tableau of Dormand & Prince's 5(4) pair.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Error weights: 5th-order solution minus the embedded 4th-order one.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];
// Dense-output weights for the quartic interpolant.
const D: [f64; 7] = [
    -12715105075.0 / 11282082432.0,
    0.0,
    87487479700.0 / 32700410799.0,
    -10690763975.0 / 1880347072.0,
    701980252875.0 / 199316789632.0,
    -1453857185.0 / 822651844.0,
    69997945.0 / 29380423.0,
];

/// Integrates y' = f(t, y) from t0 to t1 (either direction). The right-hand
/// side returns `None` where it is undefined; persistent rejection there is
/// reported as a singularity stop with the last reached abscissa.
pub fn integrate<const N: usize, F>(
    f: F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    opt: &Dopri5Options,
) -> Result<DenseCurve<N>, OdeError>
where
    F: Fn(f64, &[f64; N]) -> Option<[f64; N]>,
{
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let span = (t1 - t0).abs();
    let mut curve = DenseCurve {
        t_start: t0,
        t_end: t1,
        segments: Vec::new(),
        accepted: 0,
        rejected: 0,
    };
    if span == 0.0 {
        return Ok(curve);
    }
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y).ok_or(OdeError::SingularDenominator(t))?;
    let mut h = dir * (span / 100.0).min(1e-2).max(1e-10);

    for _step in 0..opt.max_steps {
        if dir * (t - t1) >= 0.0 {
            return Ok(curve);
        }
        if dir * (t + h - t1) > 0.0 {
            h = t1 - t;
        }
        if h.abs() < 1e-14 * (1.0 + t.abs()) {
            return Err(OdeError::StiffnessStop(t));
        }

        let mut ks = [[0.0; N]; 7];
        ks[0] = k1;
        let mut failed = false;
        for stage in 1..7 {
            let mut ystage = y;
            for i in 0..N {
                let mut acc = 0.0;
                for (j, kj) in ks.iter().enumerate().take(stage) {
                    acc += A[stage][j] * kj[i];
                }
                ystage[i] += h * acc;
            }
            match f(t + C[stage] * h, &ystage) {
                Some(k) => ks[stage] = k,
                None => {
                    failed = true;
                    break;
                }
            }
        }
        if failed {
            h *= 0.5;
            curve.rejected += 1;
            continue;
        }
        let mut y1 = y;
        for i in 0..N {
            let mut acc = 0.0;
            for (j, kj) in ks.iter().enumerate().take(6) {
                acc += A[6][j] * kj[i];
            }
            y1[i] += h * acc;
        }
        // k7 = f(t + h, y1) (FSAL)
        let k7 = match f(t + h, &y1) {
            Some(k) => k,
            None => {
                h *= 0.5;
                curve.rejected += 1;
                continue;
            }
        };
        ks[6] = k7;

        let mut err_acc = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for (j, kj) in ks.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= h;
            let sc = opt.atol + opt.rtol * y[i].abs().max(y1[i].abs());
            err_acc += (e / sc) * (e / sc);
        }
        let err = (err_acc / N as f64).sqrt();

        if err <= 1.0 {
            // dense-output coefficients for this step
            let mut rcont = [[0.0; N]; 5];
            for i in 0..N {
                let dy = y1[i] - y[i];
                let bspl = h * ks[0][i] - dy;
                rcont[0][i] = y[i];
                rcont[1][i] = dy;
                rcont[2][i] = bspl;
                rcont[3][i] = dy - h * k7[i] - bspl;
                let mut acc = 0.0;
                for (j, kj) in ks.iter().enumerate() {
                    acc += D[j] * kj[i];
                }
                rcont[4][i] = h * acc;
            }
            curve.segments.push(Segment { t0: t, h, rcont });
            curve.accepted += 1;
            t += h;
            y = y1;
            k1 = k7;
        } else {
            curve.rejected += 1;
        }
        let factor = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
        h *= factor;
    }
    Err(OdeError::StepBudget(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_accuracy() {
        let opt = Dopri5Options::default();
        let curve = integrate(
            |_t, y: &[f64; 2]| Some([y[1], -y[0]]),
            0.0,
            [1.0, 0.0],
            10.0,
            &opt,
        )
        .unwrap();
        let y = curve.eval(10.0);
        assert!((y[0] - 10.0f64.cos()).abs() < 1e-8);
        // dense output mid-span
        let mid = curve.eval(5.3);
        assert!((mid[0] - 5.3f64.cos()).abs() < 1e-7);
        assert!((mid[1] + 5.3f64.sin()).abs() < 1e-7);
    }

    #[test]
    fn backward_integration() {
        let opt = Dopri5Options::default();
        let curve = integrate(
            |t, y: &[f64; 1]| Some([2.0 * t * y[0]]),
            0.0,
            [1.0],
            -1.0,
            &opt,
        )
        .unwrap();
        let y = curve.eval(-1.0);
        assert!((y[0] - 1.0f64.exp()).abs() < 1e-8);
    }

    #[test]
    fn singularity_is_reported() {
        // y' = 1/(1 - t) beyond its pole
        let opt = Dopri5Options::default();
        let res = integrate(
            |t, _y: &[f64; 1]| {
                if (1.0 - t).abs() < 1e-3 {
                    None
                } else {
                    Some([1.0 / (1.0 - t)])
                }
            },
            0.0,
            [0.0],
            2.0,
            &opt,
        );
        assert!(matches!(
            res,
            Err(OdeError::StiffnessStop(_)) | Err(OdeError::SingularDenominator(_))
        ));
    }
}
