use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form `S = U * A * V` with `U`, `V` unimodular and
/// `S` diagonal, nonnegative, with `S[i][i] | S[i+1][i+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries up to the last nonzero one (the invariant factors).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let r = self.s.rows().min(self.s.cols());
        (0..r)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Exact Smith normal form over the integers.
///
/// Pivot choice is the entry of minimal nonzero absolute value in the
/// remaining block, ties broken by row then column index, which keeps the
/// output transforms deterministic across runs.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let mut t = 0usize;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_pivot(&s, t) else {
            break;
        };
        swap_rows(&mut s, &mut u, t, pi);
        swap_cols(&mut s, &mut v, t, pj);

        // Clear row and column t; each reduction pass can reintroduce
        // entries in the other direction, so loop until both are clear.
        loop {
            let mut again = false;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = div_nearest(&s[(i, t)], &s[(t, t)]);
                if !q.is_zero() {
                    row_axpy(&mut s, &mut u, i, t, &-&q);
                }
                if !s[(i, t)].is_zero() {
                    // remainder smaller than pivot; swap it up and restart
                    swap_rows(&mut s, &mut u, t, i);
                    again = true;
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = div_nearest(&s[(t, j)], &s[(t, t)]);
                if !q.is_zero() {
                    col_axpy(&mut s, &mut v, j, t, &-&q);
                }
                if !s[(t, j)].is_zero() {
                    swap_cols(&mut s, &mut v, t, j);
                    again = true;
                }
            }
            if !again && column_clear(&s, t) && row_clear(&s, t) {
                break;
            }
        }

        if s[(t, t)].is_negative() {
            negate_row(&mut s, &mut u, t);
        }
        t += 1;
    }

    // Enforce the divisibility chain d_t | d_{t+1}.
    let r = t;
    let mut k = 0usize;
    while k + 1 < r {
        if (&s[(k + 1, k + 1)] % &s[(k, k)]).is_zero() {
            k += 1;
            continue;
        }
        // Fold the next diagonal entry into column k, then re-reduce the
        // leading 2x2 block. gcd lands at (k,k), lcm at (k+1,k+1).
        col_axpy_raw(&mut s, &mut v, k, k + 1);
        reduce_block(&mut s, &mut u, &mut v, k);
        k = 0;
    }

    SmithDecomposition { u, s, v }
}

/// Minimal |entry| over the block starting at (t,t); ties by row, then column.
fn min_abs_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let e = &s[(i, j)];
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            match &best {
                Some((b, _, _)) if *b <= a => {}
                _ => best = Some((a, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Quotient minimizing |remainder| (rounds to nearest, ties toward zero).
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) ^ (b.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

fn swap_rows(s: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..s.cols() {
        let t = s[(a, j)].clone();
        s[(a, j)] = s[(b, j)].clone();
        s[(b, j)] = t;
    }
    for j in 0..u.cols() {
        let t = u[(a, j)].clone();
        u[(a, j)] = u[(b, j)].clone();
        u[(b, j)] = t;
    }
}

fn swap_cols(s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..s.rows() {
        let t = s[(i, a)].clone();
        s[(i, a)] = s[(i, b)].clone();
        s[(i, b)] = t;
    }
    for i in 0..v.rows() {
        let t = v[(i, a)].clone();
        v[(i, a)] = v[(i, b)].clone();
        v[(i, b)] = t;
    }
}

/// row_i += q * row_k, applied to S and U alike.
fn row_axpy(s: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for j in 0..s.cols() {
        let d = q * &s[(k, j)];
        s[(i, j)] += d;
    }
    for j in 0..u.cols() {
        let d = q * &u[(k, j)];
        u[(i, j)] += d;
    }
}

/// col_j += q * col_k, applied to S and V alike.
fn col_axpy(s: &mut IntMatrix, v: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for i in 0..s.rows() {
        let d = q * &s[(i, k)];
        s[(i, j)] += d;
    }
    for i in 0..v.rows() {
        let d = q * &v[(i, k)];
        v[(i, j)] += d;
    }
}

/// col_j += col_k with coefficient 1.
fn col_axpy_raw(s: &mut IntMatrix, v: &mut IntMatrix, j: usize, k: usize) {
    let one = num_traits::One::one();
    col_axpy(s, v, j, k, &one);
}

fn negate_row(s: &mut IntMatrix, u: &mut IntMatrix, i: usize) {
    for j in 0..s.cols() {
        let t = -&s[(i, j)];
        s[(i, j)] = t;
    }
    for j in 0..u.cols() {
        let t = -&u[(i, j)];
        u[(i, j)] = t;
    }
}

fn column_clear(s: &IntMatrix, t: usize) -> bool {
    (t + 1..s.rows()).all(|i| s[(i, t)].is_zero())
}

fn row_clear(s: &IntMatrix, t: usize) -> bool {
    (t + 1..s.cols()).all(|j| s[(t, j)].is_zero())
}

/// Re-diagonalize the 2x2 block at (k,k) after the divisibility fold.
/// Only rows/cols k and k+1 carry nonzero off-diagonal entries here.
fn reduce_block(s: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, k: usize) {
    loop {
        // Euclid on the first column of the block.
        while !s[(k + 1, k)].is_zero() {
            if s[(k, k)].abs() > s[(k + 1, k)].abs() && !s[(k + 1, k)].is_zero() {
                swap_rows(s, u, k, k + 1);
            }
            if s[(k + 1, k)].is_zero() {
                break;
            }
            let q = div_nearest(&s[(k + 1, k)], &s[(k, k)]);
            row_axpy(s, u, k + 1, k, &-&q);
            if !s[(k + 1, k)].is_zero() {
                swap_rows(s, u, k, k + 1);
            }
        }
        // Then the row.
        while !s[(k, k + 1)].is_zero() {
            let q = div_nearest(&s[(k, k + 1)], &s[(k, k)]);
            col_axpy(s, v, k + 1, k, &-&q);
            if !s[(k, k + 1)].is_zero() {
                swap_cols(s, v, k, k + 1);
            }
        }
        if s[(k + 1, k)].is_zero() && s[(k, k + 1)].is_zero() {
            break;
        }
    }
    if s[(k, k)].is_negative() {
        negate_row(s, u, k);
    }
    if s[(k + 1, k + 1)].is_negative() {
        negate_row(s, u, k + 1);
    }
}
