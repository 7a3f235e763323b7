use alloc::vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::poly::IntPoly;

/// Monic characteristic polynomial det(xI - M), exact integer coefficients.
///
/// Faddeev-LeVerrier recurrence; every division by the step index is exact
/// over the integers.
pub fn char_poly(m: &IntMatrix) -> IntPoly {
    assert!(m.is_square(), "char_poly of non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut aux = IntMatrix::identity(n);
    for k in 1..=n {
        let am = m * &aux;
        let c = -trace(&am) / BigInt::from(k as u64);
        coeffs[n - k] = c.clone();
        if k < n {
            aux = &am + &IntMatrix::identity(n).scale(&c);
        }
    }
    IntPoly::new(coeffs)
}

fn trace(m: &IntMatrix) -> BigInt {
    (0..m.rows()).map(|i| m[(i, i)].clone()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(
            char_poly(&IntMatrix::identity(1)),
            IntPoly::from_i64(&[-1, 1])
        );
        // Rotation by 90 degrees: x^2 + 1.
        assert_eq!(
            char_poly(&IntMatrix::from_i64(&[&[0, -1], &[1, 0]])),
            IntPoly::from_i64(&[1, 0, 1])
        );
        // Order-3 companion block: x^2 + x + 1.
        assert_eq!(
            char_poly(&IntMatrix::from_i64(&[&[0, -1], &[1, -1]])),
            IntPoly::from_i64(&[1, 1, 1])
        );
    }

    #[test]
    fn cayley_hamilton() {
        let cases = [
            IntMatrix::from_i64(&[&[3, 1, -4], &[2, -3, 1], &[-5, 2, 2]]),
            IntMatrix::from_i64(&[&[0, 2], &[7, -5]]),
            IntMatrix::diag(&[2, 2, 3, 5]),
        ];
        for m in &cases {
            let p = char_poly(m);
            assert!(p.is_monic());
            assert!(p.eval_at_matrix(m).is_zero(), "Cayley-Hamilton fails for\n{}", m);
        }
    }

    #[test]
    fn constant_term_is_signed_det() {
        let m = IntMatrix::from_i64(&[&[1, 2, 0], &[3, 4, 1], &[0, 1, 1]]);
        let p = char_poly(&m);
        // det(xI - M) at x=0 is (-1)^n det(M).
        assert_eq!(p.coeff(0), -m.det());
    }
}
