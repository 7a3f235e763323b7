use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;

/// One exact rational solution of `Mx = v`, or `None` if inconsistent.
///
/// Canonical choice: pivot columns are the lexicographically earliest
/// independent set (columns scanned left to right), free variables pinned
/// to 0. Deterministic for fixed input.
pub fn solve_rational(m: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigRational>> {
    assert_eq!(v.len(), m.rows(), "solve_rational rhs length");
    let rhs: Vec<BigRational> = v.iter().map(|x| BigRational::from(x.clone())).collect();
    let sols = solve_rational_columns(m, &[rhs])?;
    sols.into_iter().next()
}

/// Solve `MX = B` column by column; `None` if any column is inconsistent.
/// Returns the solution columns.
pub fn solve_rational_matrix(m: &IntMatrix, b: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    assert_eq!(b.rows(), m.rows(), "solve_rational_matrix shape");
    let cols: Vec<Vec<BigRational>> = (0..b.cols())
        .map(|j| {
            (0..b.rows())
                .map(|i| BigRational::from(b[(i, j)].clone()))
                .collect()
        })
        .collect();
    solve_rational_columns(m, &cols)
}

fn solve_rational_columns(
    m: &IntMatrix,
    rhs_cols: &[Vec<BigRational>],
) -> Option<Vec<Vec<BigRational>>> {
    let (rows, cols) = (m.rows(), m.cols());
    let k = rhs_cols.len();
    // Augmented rows: coefficients then the k right-hand sides.
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..cols)
                .map(|j| BigRational::from(m[(i, j)].clone()))
                .collect();
            for rc in rhs_cols {
                row.push(rc[i].clone());
            }
            row
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0usize;
    for j in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][j].recip();
        for x in a[r][j..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || a[i][j].is_zero() {
                continue;
            }
            let f = a[i][j].clone();
            for jj in j..cols + k {
                let d = &f * &a[r][jj];
                a[i][jj] -= d;
            }
        }
        pivots.push((r, j));
        r += 1;
        if r == rows {
            break;
        }
    }

    // Consistency: zero coefficient rows must have zero right-hand sides.
    for i in r..rows {
        for t in 0..k {
            if !a[i][cols + t].is_zero() {
                return None;
            }
        }
    }

    let mut out = Vec::with_capacity(k);
    for t in 0..k {
        let mut x = alloc::vec![BigRational::zero(); cols];
        for &(pr, pc) in &pivots {
            x[pc] = a[pr][cols + t].clone();
        }
        out.push(x);
    }
    Some(out)
}

/// Exact inverse of a matrix with determinant ±1.
pub fn inverse_unimodular(u: &IntMatrix) -> IntMatrix {
    assert!(u.is_square(), "inverse of non-square matrix");
    let n = u.rows();
    let cols = solve_rational_matrix(u, &IntMatrix::identity(n))
        .expect("unimodular matrix is invertible");
    IntMatrix::from_fn(n, n, |i, j| {
        let x = &cols[j][i];
        debug_assert!(x.is_integer(), "inverse of unimodular must be integral");
        x.to_integer()
    })
}

/// `B^{-1} A B` when it is integral, i.e. when the column lattice of `B` is
/// stable under `A`. `None` if `B` is singular or the conjugate fails to be
/// integral.
pub fn conjugate_by_basis(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert!(a.is_square() && b.is_square(), "conjugation needs square matrices");
    assert_eq!(a.rows(), b.rows(), "conjugation shape");
    if b.det().is_zero() {
        return None;
    }
    let ab = a * b;
    let cols = solve_rational_matrix(b, &ab)?;
    let n = b.rows();
    let mut out = IntMatrix::zero(n, n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            if !col[i].is_integer() {
                return None;
            }
            out[(i, j)] = col[i].to_integer();
        }
    }
    Some(out)
}

/// Integer vector from a rational one; `None` if any entry has a
/// denominator other than 1.
pub fn rational_to_integer_vec(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|x| {
            if x.denom().is_one() {
                Some(x.to_integer())
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn solve_rational_examples() {
        let s = solve_rational(&IntMatrix::from_i64(&[&[2]]), &[BigInt::one()]).unwrap();
        assert_eq!(s, alloc::vec![rat(1, 2)]);

        let s = solve_rational(
            &IntMatrix::identity(2),
            &[BigInt::from(3), BigInt::from(4)],
        )
        .unwrap();
        assert_eq!(s, alloc::vec![rat(3, 1), rat(4, 1)]);

        // Free variable pinned to zero.
        let s = solve_rational(&IntMatrix::from_i64(&[&[1, 1]]), &[BigInt::one()]).unwrap();
        assert_eq!(s, alloc::vec![rat(1, 1), rat(0, 1)]);

        // Inconsistent.
        assert!(solve_rational(
            &IntMatrix::from_i64(&[&[1], &[1]]),
            &[BigInt::from(1), BigInt::from(2)]
        )
        .is_none());
    }

    #[test]
    fn inverse_and_conjugation() {
        let u = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse_unimodular(&u);
        assert!((&u * &inv).is_identity());

        // diag(1,-1) conjugated by a unimodular basis stays integral.
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let c = conjugate_by_basis(&a, &u).unwrap();
        assert_eq!(&(&u * &c), &(&a * &u));

        // Z + 2Z is not swap-stable: conjugate is fractional.
        let b = IntMatrix::from_i64(&[&[1, 0], &[0, 2]]);
        let a = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(conjugate_by_basis(&a, &b).is_none());

        // Singular basis rejected.
        let b = IntMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(conjugate_by_basis(&a, &b).is_none());
    }
}
