//! Dense truncated power series in one variable. All operations are closed at
//! a fixed truncation order; only polynomial and rational compositions occur
//! in this crate, so plain convolution and long division suffice.

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    /// Monomial coefficients, c[k] multiplying s^k; len = order + 1.
    pub c: Vec<f64>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            c: vec![0.0; order + 1],
        }
    }

    pub fn constant(value: f64, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.c[0] = value;
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn add(&self, other: &Series) -> Series {
        assert_eq!(self.c.len(), other.c.len());
        Series {
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        assert_eq!(self.c.len(), other.c.len());
        Series {
            c: self
                .c
                .iter()
                .zip(&other.c)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: f64) -> Series {
        Series {
            c: self.c.iter().map(|a| k * a).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        assert_eq!(self.c.len(), other.c.len());
        let mut out = Series::zero(self.order());
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                if i + j > out.order() {
                    break;
                }
                out.c[i + j] += a * b;
            }
        }
        out
    }

    /// Long division; panics if the divisor's constant term is zero.
    pub fn div(&self, other: &Series) -> Series {
        assert_eq!(self.c.len(), other.c.len());
        assert!(other.c[0] != 0.0, "division by series with zero constant term");
        let mut out = Series::zero(self.order());
        for k in 0..=self.order() {
            let mut acc = self.c[k];
            for j in 0..k {
                acc -= out.c[j] * other.c[k - j];
            }
            out.c[k] = acc / other.c[0];
        }
        out
    }

    /// Term-by-term derivative (truncation order shrinks by padding a zero).
    pub fn derivative(&self) -> Series {
        let mut out = Series::zero(self.order());
        for k in 1..=self.order() {
            out.c[k - 1] = self.c[k] * k as f64;
        }
        out
    }

    /// Multiplication by s (top coefficient falls off the truncation).
    pub fn mul_s(&self) -> Series {
        let mut out = Series::zero(self.order());
        for k in 1..=self.order() {
            out.c[k] = self.c[k - 1];
        }
        out
    }

    /// Division by s^m, dropping the lowest m coefficients (which the caller
    /// asserts are negligible) and leaving the top m slots zero.
    pub fn shift_down(&self, m: usize) -> Series {
        let mut out = Series::zero(self.order());
        for k in m..=self.order() {
            out.c[k - m] = self.c[k];
        }
        out
    }

    /// Horner evaluation.
    pub fn eval(&self, s: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &a| acc * s + a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geometric(order: usize) -> Series {
        // 1/(1-s) = 1 + s + s² + …
        Series {
            c: vec![1.0; order + 1],
        }
    }

    #[test]
    fn div_inverts_mul() {
        let order = 12;
        let mut one_minus_s = Series::constant(1.0, order);
        one_minus_s.c[1] = -1.0;
        let g = Series::constant(1.0, order).div(&one_minus_s);
        assert_eq!(g, geometric(order));
        let back = g.mul(&one_minus_s);
        assert!((back.c[0] - 1.0).abs() < 1e-15);
        // truncated products only see the interior coefficients
        for k in 1..order {
            assert!(back.c[k].abs() < 1e-15);
        }
    }

    #[test]
    fn derivative_of_powers() {
        let mut s3 = Series::zero(6);
        s3.c[3] = 2.0;
        let d = s3.derivative();
        assert_eq!(d.c[2], 6.0);
        assert!((d.eval(0.5) - 6.0 * 0.25).abs() < 1e-15);
    }

    #[test]
    fn shift_down_drops_low_terms() {
        let mut s = Series::zero(4);
        s.c[2] = 3.0;
        s.c[4] = -1.0;
        let t = s.shift_down(2);
        assert_eq!(t.c[0], 3.0);
        assert_eq!(t.c[2], -1.0);
    }
}
