use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::hnf::hermite_normal_form;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

/// Basis of the integer kernel `{x : Mx = 0}`, as matrix columns.
///
/// The basis spans the full kernel lattice, not a finite-index sublattice:
/// rows of the Hermite transform past the rank extend to a basis of Z^n, so
/// the quotient by their span is torsion-free.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let d = hermite_normal_form(&m.transpose());
    let r = d.rank();
    let n = m.cols();
    let raw = IntMatrix::from_fn(n - r, n, |i, j| d.u[(r + i, j)].clone());
    // Canonicalize the basis so equal kernels compare equal.
    let canon = hermite_normal_form(&raw).h;
    IntMatrix::from_fn(n, n - r, |i, j| canon[(j, i)].clone())
}

/// One integer solution of `Mx = b`, or `None` when no integral solution
/// exists. Free coordinates are pinned by the Smith transform, so the result
/// is deterministic.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), m.rows(), "solve_integer rhs length");
    let d = smith_normal_form(m);
    let c = d.u.mul_vec(b);
    let r = d.rank();
    let mut y = alloc::vec![BigInt::zero(); m.cols()];
    for i in 0..m.rows().min(m.cols()) {
        if i < r {
            let (q, rem) = c[i].div_rem(&d.s[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c[i].is_zero() {
            return None;
        }
    }
    for i in m.cols()..m.rows() {
        if !c[i].is_zero() {
            return None;
        }
    }
    Some(d.v.mul_vec(&y))
}

/// Whether `v` lies in the lattice spanned by the columns of `basis`.
pub fn lattice_contains(basis: &IntMatrix, v: &[BigInt]) -> bool {
    solve_integer(basis, v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        assert!(integer_kernel(&IntMatrix::zero(2, 2)).is_identity());
        let k = integer_kernel(&IntMatrix::identity(2));
        assert_eq!((k.rows(), k.cols()), (2, 0));
        let k = integer_kernel(&IntMatrix::from_i64(&[&[1, -1]]));
        assert_eq!(k, IntMatrix::from_i64(&[&[1], &[1]]));
    }

    #[test]
    fn kernel_saturated() {
        // 2x - 2y = 0 has primitive kernel vector (1,1), not (2,2).
        let k = integer_kernel(&IntMatrix::from_i64(&[&[2, -2]]));
        assert_eq!(k, IntMatrix::from_i64(&[&[1], &[1]]));
        // Saturation in general: all invariant factors of the basis are 1.
        let m = IntMatrix::from_i64(&[&[2, 4, 6], &[3, 6, 9]]);
        let k = integer_kernel(&m);
        assert!((&m * &k).is_zero());
        let fac = smith_normal_form(&k).invariant_factors();
        assert!(fac.iter().all(num_traits::One::is_one), "{:?}", fac);
    }

    #[test]
    fn solve_integer_cases() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let x = solve_integer(&m, &[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(m.mul_vec(&x), alloc::vec![BigInt::from(4), BigInt::from(9)]);
        assert!(solve_integer(&m, &[BigInt::from(1), BigInt::from(3)]).is_none());

        // Underdetermined: 3x + 5y = 1 solvable since gcd = 1.
        let m = IntMatrix::from_i64(&[&[3, 5]]);
        let x = solve_integer(&m, &[BigInt::from(1)]).unwrap();
        assert_eq!(m.mul_vec(&x), alloc::vec![BigInt::from(1)]);

        // Overdetermined inconsistent.
        let m = IntMatrix::from_i64(&[&[1], &[1]]);
        assert!(solve_integer(&m, &[BigInt::from(1), BigInt::from(2)]).is_none());
    }

    #[test]
    fn lattice_membership() {
        let basis = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert!(lattice_contains(&basis, &[BigInt::from(4), BigInt::from(-3)]));
        assert!(!lattice_contains(&basis, &[BigInt::from(1), BigInt::from(0)]));
    }
}
