use alloc::fmt;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Errors raised by the exact linear algebra layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinalgError {
    /// Operand shapes are incompatible for the requested operation.
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    /// A square matrix was required.
    NotSquare { rows: usize, cols: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch { op, left, right } => write!(
                f,
                "dimension mismatch in {}: {}x{} vs {}x{}",
                op, left.0, left.1, right.0, right.1
            ),
            LinalgError::NotSquare { rows, cols } => {
                write!(f, "expected square matrix, got {}x{}", rows, cols)
            }
        }
    }
}

/// Dense matrix of arbitrary-precision integers, row-major.
///
/// The universal carrier for lattices, representations and transforms.
/// Zero-column (or zero-row) matrices are legal; they show up as bases of
/// rank-0 kernels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    /// Convenience constructor from machine integers, mostly for tests and
    /// small fixed matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for &x in *row {
                entries.push(BigInt::from(x));
            }
        }
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn diag(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zero(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.entries.iter().enumerate().all(|(k, e)| {
                let (i, j) = (k / self.cols, k % self.cols);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[BigInt]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i].clone();
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * k)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += &self[(i, j)] * &v[j];
                }
                acc
            })
            .collect()
    }

    /// `self^k` for a square matrix, by repeated squaring.
    pub fn pow(&self, k: u64) -> IntMatrix {
        assert!(self.is_square(), "pow of non-square matrix");
        let mut result = IntMatrix::identity(self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplicative order of a square matrix, searching up to `limit`.
    pub fn multiplicative_order(&self, limit: u64) -> Option<u64> {
        let mut m = self.clone();
        for k in 1..=limit {
            if m.is_identity() {
                return Some(k);
            }
            m = &m * self;
        }
        None
    }

    /// Direct sum along the diagonal.
    pub fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = IntMatrix::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Kronecker product, row index i1*rhs.rows + i2. With column-major
    /// vectorization this gives (A ⊗ B)·vec(X) = vec(B·X·Aᵀ).
    pub fn kronecker(&self, rhs: &IntMatrix) -> IntMatrix {
        IntMatrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            &self[(i / rhs.rows, j / rhs.cols)] * &rhs[(i % rhs.rows, j % rhs.cols)]
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let at = |a: &Vec<BigInt>, i: usize, j: usize| a[i * n + j].clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                // pivot swap: first row below with nonzero entry in column k
                let mut found = None;
                for i in k + 1..n {
                    if !a[i * n + k].is_zero() {
                        found = Some(i);
                        break;
                    }
                }
                match found {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &at(&a, k, k) * &at(&a, i, j) - &at(&a, i, k) * &at(&a, k, j);
                    a[i * n + j] = num / &prev;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = at(&a, k, k);
        }
        let d = at(&a, n - 1, n - 1);
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Largest absolute value of any entry.
    pub fn max_abs(&self) -> BigInt {
        self.entries
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product shape ({}x{})*({}x{})",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = &self[(i, k)];
                if lik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = lik * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape");
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape");
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }
}

fn fmt_matrix(m: &IntMatrix, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let cell = |i: usize, j: usize| -> String { alloc::format!("{}", m[(i, j)]) };
    let widths: Vec<usize> = (0..m.cols)
        .map(|j| (0..m.rows).map(|i| cell(i, j).len()).max().unwrap_or(1))
        .collect();
    for i in 0..m.rows {
        write!(f, "[")?;
        for j in 0..m.cols {
            if j > 0 {
                write!(f, " ")?;
            }
            let s = cell(i, j);
            for _ in s.len()..widths[j] {
                write!(f, " ")?;
            }
            write!(f, "{}", s)?;
        }
        writeln!(f, "]")?;
    }
    Ok(())
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_matrix(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_matrix(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(IntMatrix::identity(3).det(), BigInt::from(1));
        assert_eq!(IntMatrix::from_i64(&[&[2, 4], &[6, 8]]).det(), BigInt::from(-8));
        assert_eq!(
            IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det(),
            BigInt::from(-1)
        );
        // singular
        assert_eq!(IntMatrix::from_i64(&[&[1, 2], &[2, 4]]).det(), BigInt::zero());
    }

    #[test]
    fn pow_and_order() {
        let a4 = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(a4.pow(4).is_identity());
        assert_eq!(a4.multiplicative_order(10), Some(4));
    }

    #[test]
    fn block_diag_shapes() {
        let b = IntMatrix::block_diag(&[
            IntMatrix::identity(1),
            IntMatrix::from_i64(&[&[0, -1], &[1, -1]]),
        ]);
        assert_eq!((b.rows(), b.cols()), (3, 3));
        assert_eq!(b[(0, 0)], BigInt::from(1));
        assert_eq!(b[(1, 2)], BigInt::from(-1));
        assert_eq!(b[(0, 1)], BigInt::zero());
    }

    #[test]
    fn zero_dim_matrices() {
        let k = IntMatrix::zero(2, 0);
        assert_eq!(k.cols(), 0);
        let i0 = IntMatrix::identity(0);
        assert_eq!(i0.det(), BigInt::one());
    }

    #[test]
    fn kronecker_vectorization_identity() {
        // (A ⊗ B) vec(X) = vec(B X Aᵀ) with column-major vec
        let a = IntMatrix::from_i64(&[&[1, 2], &[3, -1]]);
        let b = IntMatrix::from_i64(&[&[0, 1], &[2, 5]]);
        let x = IntMatrix::from_i64(&[&[7, -2], &[4, 3]]);
        let vec_cm = |m: &IntMatrix| -> Vec<BigInt> {
            let mut v = Vec::new();
            for j in 0..m.cols() {
                for i in 0..m.rows() {
                    v.push(m[(i, j)].clone());
                }
            }
            v
        };
        let lhs = a.kronecker(&b).mul_vec(&vec_cm(&x));
        let rhs = vec_cm(&(&(&b * &x) * &a.transpose()));
        assert_eq!(lhs, rhs);
    }
}
