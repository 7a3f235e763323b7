//! Cyclotomic polynomials, Euler's function, companion matrices and the
//! irreducible rational representations of cyclic groups.
//!
//! The companion matrix of the n-th cyclotomic polynomial realizes the
//! unique phi(n)-dimensional rational irreducible of Z/n on which a fixed
//! generator acts with primitive n-th roots of unity as eigenvalues.

use alloc::vec::Vec;

use num_traits::One;

use crate::exact_linalg::{IntMatrix, IntPoly};
use crate::qclass::QClassDecomposition;
use crate::zclass::LatticeRep;

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi(0) undefined");
    let mut remaining = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= remaining {
        if remaining % p == 0 {
            while remaining % p == 0 {
                remaining /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if remaining > 1 {
        result -= result / remaining;
    }
    result
}

/// Trial-division primality; sufficient for the orders in scope.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of n, ascending.
pub fn prime_factors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut remaining = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= remaining {
        if remaining % p == 0 {
            out.push(p);
            while remaining % p == 0 {
                remaining /= p;
            }
        }
        p += 1;
    }
    if remaining > 1 {
        out.push(remaining);
    }
    out
}

/// Divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The n-th cyclotomic polynomial, by exact division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic_poly(0) undefined");
    let mut q = IntPoly::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d < n {
            q = q.exact_div(&cyclotomic_poly(d));
        }
    }
    q
}

/// Companion matrix A_n of the n-th cyclotomic polynomial: 1s on the
/// subdiagonal, last column the negated coefficients of Phi_n. Its
/// characteristic polynomial is Phi_n and its multiplicative order is
/// exactly n.
pub fn companion_matrix(n: u64) -> IntMatrix {
    assert!(n >= 2, "companion_matrix needs n >= 2");
    let phi = euler_phi(n) as usize;
    let f = cyclotomic_poly(n);
    IntMatrix::from_fn(phi, phi, |i, j| {
        if j + 1 == phi {
            -f.coeff(i)
        } else if i == j + 1 {
            One::one()
        } else {
            num_traits::Zero::zero()
        }
    })
}

/// The irreducible rational representation rho_d of Z/m sending the fixed
/// generator to A_d (the 1x1 identity for d = 1). Faithful iff d = m.
pub fn irreducible_rep(d: u64, m: u64) -> LatticeRep {
    assert!(d >= 1 && m >= 1 && m % d == 0, "irreducible_rep needs d | m");
    let generator = if d == 1 {
        IntMatrix::identity(1)
    } else {
        companion_matrix(d)
    };
    LatticeRep::new(m, generator, QClassDecomposition::new(m, alloc::vec![(d, 1)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::char_poly;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), alloc::vec![1]);
        assert_eq!(divisors(12), alloc::vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7), alloc::vec![1, 7]);
    }

    #[test]
    fn primality_and_factors() {
        let primes: Vec<u64> = (1..32).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, alloc::vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]);
        assert_eq!(prime_factors(1), alloc::vec![]);
        assert_eq!(prime_factors(30), alloc::vec![2, 3, 5]);
        assert_eq!(prime_factors(24), alloc::vec![2, 3]);
        assert_eq!(prime_factors(49), alloc::vec![7]);
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_poly(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(9), IntPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(18), IntPoly::from_i64(&[1, 0, 0, -1, 0, 0, 1]));
    }

    #[test]
    fn product_identity() {
        for n in 1..=30u64 {
            let mut prod = IntPoly::one();
            for d in divisors(n) {
                prod = prod.mul(&cyclotomic_poly(d));
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(n as usize), "n = {}", n);
        }
    }

    #[test]
    fn degrees_match_phi() {
        for n in 1..=30u64 {
            assert_eq!(cyclotomic_poly(n).degree() as u64, euler_phi(n));
        }
    }

    #[test]
    fn companion_order_and_charpoly() {
        for n in 2..=18u64 {
            let a = companion_matrix(n);
            assert_eq!(
                a.multiplicative_order(40),
                Some(n),
                "A_{} has wrong order",
                n
            );
            assert_eq!(char_poly(&a), cyclotomic_poly(n), "char poly of A_{}", n);
        }
    }

    #[test]
    fn companion_known_matrices() {
        assert_eq!(companion_matrix(2), IntMatrix::from_i64(&[&[-1]]));
        assert_eq!(companion_matrix(3), IntMatrix::from_i64(&[&[0, -1], &[1, -1]]));
        assert_eq!(companion_matrix(4), IntMatrix::from_i64(&[&[0, -1], &[1, 0]]));
        assert_eq!(companion_matrix(6), IntMatrix::from_i64(&[&[0, -1], &[1, 1]]));
    }

    #[test]
    fn irreducible_reps() {
        let r = irreducible_rep(1, 6);
        assert!(r.generator().is_identity());
        let r = irreducible_rep(6, 6);
        assert_eq!(r.generator().multiplicative_order(10), Some(6));
        let r = irreducible_rep(3, 6);
        assert_eq!(r.generator().multiplicative_order(10), Some(3));
    }
}
