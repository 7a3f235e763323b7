use alloc::fmt;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Integer polynomial, coefficients ascending (index = exponent).
/// The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// x^n - 1
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports degree 0 by convention of callers
    /// checking is_zero first.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn add(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }

    /// Exact division by a monic divisor; panics if the division leaves a
    /// remainder. Used where divisibility is a theorem, not a question.
    pub fn exact_div(&self, divisor: &IntPoly) -> IntPoly {
        assert!(divisor.is_monic(), "exact_div needs a monic divisor");
        if self.is_zero() {
            return IntPoly::zero();
        }
        assert!(
            self.coeffs.len() >= divisor.coeffs.len(),
            "exact_div degree underflow"
        );
        let mut rem = self.coeffs.clone();
        let dn = divisor.coeffs.len();
        let qn = rem.len() - dn + 1;
        let mut q = vec![BigInt::zero(); qn];
        for k in (0..qn).rev() {
            let c = rem[k + dn - 1].clone();
            if c.is_zero() {
                continue;
            }
            q[k] = c.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &c * d;
                rem[k + j] -= t;
            }
        }
        assert!(rem.iter().all(Zero::is_zero), "exact_div had a remainder");
        IntPoly::new(q)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_at_matrix(&self, m: &IntMatrix) -> IntMatrix {
        assert!(m.is_square(), "eval_at_matrix needs a square matrix");
        let n = m.rows();
        let mut acc = IntMatrix::zero(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &IntMatrix::identity(n).scale(c);
        }
        acc
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = IntPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let q = IntPoly::from_i64(&[1, 1]); // x + 1
        assert_eq!(p.exact_div(&q), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(q.mul(&IntPoly::from_i64(&[-1, 1])), p);
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(8));
    }

    #[test]
    #[should_panic(expected = "remainder")]
    fn inexact_division_panics() {
        IntPoly::from_i64(&[1, 0, 1]).exact_div(&IntPoly::from_i64(&[1, 1]));
    }

    #[test]
    fn matrix_evaluation() {
        // x^2 + 1 kills the rotation by 90 degrees.
        let p = IntPoly::from_i64(&[1, 0, 1]);
        let a = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(p.eval_at_matrix(&a).is_zero());
    }

    #[test]
    fn display() {
        let p = IntPoly::from_i64(&[1, -1, 0, 2]);
        assert_eq!(alloc::format!("{}", p), "2*x^3 - x + 1");
        assert_eq!(alloc::format!("{}", IntPoly::zero()), "0");
    }
}
