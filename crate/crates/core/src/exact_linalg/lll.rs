use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;

/// Lenstra-Lenstra-Lovasz reduction of the columns of `basis`, entirely in
/// exact rational arithmetic with delta = 99/100. Columns must be linearly
/// independent. The reduced columns span the same lattice.
///
/// Only used to shrink search bases, so near-optimal delta buys shorter
/// vectors at negligible cost for the sizes at hand.
pub fn lll_reduce(basis: &IntMatrix) -> IntMatrix {
    let k = basis.cols();
    if k <= 1 {
        return basis.clone();
    }
    let mut b: Vec<Vec<BigInt>> = (0..k).map(|j| basis.col(j)).collect();
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));

    let (mut mu, mut norms) = gso(&b);
    let mut i = 1usize;
    while i < k {
        // Size reduction against all previous vectors.
        for j in (0..i).rev() {
            let r = round_nearest(&mu[i][j]);
            if !r.is_zero() {
                for t in 0..b[i].len() {
                    let d = &r * &b[j][t];
                    b[i][t] -= d;
                }
                for jj in 0..=j {
                    let d = &BigRational::from(r.clone()) * &mu[j][jj];
                    mu[i][jj] -= d;
                }
            }
        }
        let lhs = &norms[i];
        let mu2 = &mu[i][i - 1] * &mu[i][i - 1];
        let rhs = (&delta - &mu2) * &norms[i - 1];
        if *lhs >= rhs {
            i += 1;
        } else {
            b.swap(i, i - 1);
            let (m2, n2) = gso(&b);
            mu = m2;
            norms = n2;
            i = i.max(2) - 1;
        }
    }

    IntMatrix::from_fn(basis.rows(), k, |r, c| b[c][r].clone())
}

/// Gram-Schmidt data: mu[i][j] for j < i and the squared norms of the
/// orthogonalized vectors.
fn gso(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let k = b.len();
    let n = b[0].len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut mu = alloc::vec![alloc::vec![BigRational::zero(); k]; k];
    let mut norms = Vec::with_capacity(k);
    for i in 0..k {
        let mut v: Vec<BigRational> = b[i]
            .iter()
            .map(|x| BigRational::from(x.clone()))
            .collect();
        for j in 0..i {
            let mut dot = BigRational::zero();
            for t in 0..n {
                dot += BigRational::from(b[i][t].clone()) * &star[j][t];
            }
            let m = &dot / &norms[j];
            for t in 0..n {
                let d = &m * &star[j][t];
                v[t] -= d;
            }
            mu[i][j] = m;
        }
        mu[i][i] = BigRational::one();
        let mut nn = BigRational::zero();
        for t in 0..n {
            nn += &v[t] * &v[t];
        }
        assert!(!nn.is_zero(), "lll_reduce: columns not independent");
        star.push(v);
        norms.push(nn);
    }
    (mu, norms)
}

/// Nearest integer, ties away from zero.
fn round_nearest(x: &BigRational) -> BigInt {
    x.round().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn norm2(v: &[BigInt]) -> BigInt {
        v.iter().map(|x| x * x).sum()
    }

    #[test]
    fn reduces_skewed_basis() {
        // Badly skewed basis of Z^2.
        let b = IntMatrix::from_i64(&[&[1, 100], &[0, 1]]);
        let r = lll_reduce(&b);
        assert_eq!(r.det().abs(), BigInt::one(), "same lattice volume");
        for j in 0..2 {
            assert!(norm2(&r.col(j)) <= BigInt::from(2), "column still long: {:?}", r.col(j));
        }
    }

    #[test]
    fn preserves_lattice() {
        let b = IntMatrix::from_i64(&[&[7, 15], &[4, 9], &[1, 2]]);
        let r = lll_reduce(&b);
        use super::super::hnf::column_lattice_basis;
        assert_eq!(column_lattice_basis(&b), column_lattice_basis(&r));
    }
}
