use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Row-style Hermite normal form `H = U * A` with `U` unimodular.
///
/// `H` is upper echelon: pivots positive, entries above a pivot reduced into
/// `[0, pivot)`, zero rows at the bottom. `H` is the canonical representative
/// of the row span of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteDecomposition {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of the pivot in each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl HermiteDecomposition {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> HermiteDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut r = 0usize;

    for j in 0..n {
        if r == m {
            break;
        }
        // Euclid down column j until at most one nonzero entry remains in
        // rows r.., then move it to row r.
        loop {
            let mut idx: Option<usize> = None;
            let mut count = 0;
            for i in r..m {
                if !h[(i, j)].is_zero() {
                    count += 1;
                    match idx {
                        Some(k) if h[(k, j)].abs() <= h[(i, j)].abs() => {}
                        _ => idx = Some(i),
                    }
                }
            }
            let Some(p) = idx else {
                break;
            };
            if count == 1 {
                swap_rows(&mut h, &mut u, r, p);
                break;
            }
            for i in r..m {
                if i == p || h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(p, j)]);
                if !q.is_zero() {
                    row_axpy(&mut h, &mut u, i, p, &-&q);
                }
            }
        }
        if h[(r, j)].is_zero() {
            continue;
        }
        if h[(r, j)].is_negative() {
            negate_row(&mut h, &mut u, r);
        }
        // Reduce entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = h[(i, j)].div_floor(&h[(r, j)]);
            if !q.is_zero() {
                row_axpy(&mut h, &mut u, i, r, &-&q);
            }
        }
        pivots.push(j);
        r += 1;
    }

    HermiteDecomposition { h, u, pivots }
}

/// Canonical basis of the lattice spanned by the columns of `a`: the HNF of
/// the transpose, transposed back and stripped of zero columns. Two integer
/// matrices have equal column lattices iff this agrees.
pub fn column_lattice_basis(a: &IntMatrix) -> IntMatrix {
    let d = hermite_normal_form(&a.transpose());
    let r = d.rank();
    IntMatrix::from_fn(a.rows(), r, |i, j| d.h[(j, i)].clone())
}

fn swap_rows(h: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..h.cols() {
        let t = h[(a, j)].clone();
        h[(a, j)] = h[(b, j)].clone();
        h[(b, j)] = t;
    }
    for j in 0..u.cols() {
        let t = u[(a, j)].clone();
        u[(a, j)] = u[(b, j)].clone();
        u[(b, j)] = t;
    }
}

fn row_axpy(h: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for j in 0..h.cols() {
        let d = q * &h[(k, j)];
        h[(i, j)] += d;
    }
    for j in 0..u.cols() {
        let d = q * &u[(k, j)];
        u[(i, j)] += d;
    }
}

fn negate_row(h: &mut IntMatrix, u: &mut IntMatrix, i: usize) {
    for j in 0..h.cols() {
        let t = -&h[(i, j)];
        h[(i, j)] = t;
    }
    for j in 0..u.cols() {
        let t = -&u[(i, j)];
        u[(i, j)] = t;
    }
}
