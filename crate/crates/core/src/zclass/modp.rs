//! Linear algebra over F_p for the centering machinery.
//!
//! The acting primes are tiny (2, 3, 5, 7), so entries are plain u64
//! residues. Submodules of L/pL under the generator action are enumerated
//! through socles: every submodule chain refines through simple quotients,
//! and the simple constituents all have annihilator dividing the squarefree
//! part x^{m'} - 1 of x^m - 1.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::exact_linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct FpMat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub e: Vec<u64>,
}

impl FpMat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        FpMat {
            p,
            rows,
            cols,
            e: alloc::vec![0; rows * cols],
        }
    }

    pub fn from_int(m: &IntMatrix, p: u64) -> Self {
        let pb = BigInt::from(p);
        let mut out = Self::zero(p, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let r = m[(i, j)].mod_floor(&pb);
                out.set(i, j, u64::try_from(r).unwrap());
            }
        }
        out
    }

    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut out = Self::zero(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                out.set(i, j, x % p);
            }
        }
        out
    }

    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.e[i * self.cols + j] = x % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.e[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &FpMat) -> FpMat {
        assert_eq!(self.cols, rhs.rows);
        assert_eq!(self.p, rhs.p);
        let mut out = FpMat::zero(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = (out.at(i, j) + a * rhs.at(k, j)) % self.p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.at(i, j) * (v[j] % self.p))
                    .sum::<u64>()
                    % self.p
            })
            .collect()
    }

    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    /// Canonical reduced row echelon form with zero rows dropped. Two row
    /// spaces are equal iff their rref forms are equal.
    pub fn rref(&self) -> FpMat {
        let p = self.p;
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut r = 0usize;
        for j in 0..self.cols {
            let Some(pivot) = (r..rows.len()).find(|&i| rows[i][j] != 0) else {
                continue;
            };
            rows.swap(r, pivot);
            let inv = inv_mod(rows[r][j], p);
            for x in rows[r].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][j] != 0 {
                    let f = rows[i][j];
                    for jj in 0..self.cols {
                        rows[i][jj] = (rows[i][jj] + (p - f % p) * rows[r][jj]) % p;
                    }
                }
            }
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        FpMat::from_rows(p, self.cols, &rows)
    }

    /// Pivot column of each rref row.
    pub fn pivot_cols(&self) -> Vec<usize> {
        (0..self.rows)
            .map(|i| (0..self.cols).find(|&j| self.at(i, j) != 0).unwrap())
            .collect()
    }

    /// Basis of the right kernel, canonical (free columns ascending).
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let r = self.rref();
        let pivots = r.pivot_cols();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&fj| {
                let mut v = alloc::vec![0u64; self.cols];
                v[fj] = 1;
                for (row, &pj) in pivots.iter().enumerate() {
                    v[pj] = (self.p - r.at(row, fj)) % self.p;
                }
                v
            })
            .collect()
    }

    fn key(&self) -> Vec<u64> {
        let mut k = alloc::vec![self.rows as u64];
        k.extend_from_slice(&self.e);
        k
    }
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and tiny; Fermat by scan keeps this dependency-free.
    let a = a % p;
    assert!(a != 0, "inverse of 0 mod {}", p);
    (1..p).find(|&x| a * x % p == 1).unwrap()
}

// ---- polynomials over F_p (dense, ascending coefficients) ----

type FpPoly = Vec<u64>;

fn ptrim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn pdeg(f: &FpPoly) -> usize {
    f.len().saturating_sub(1)
}

fn pmul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ptrim(out)
}

fn psub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let at = |f: &FpPoly, k: usize| f.get(k).copied().unwrap_or(0);
    ptrim((0..n).map(|k| (at(a, k) + p - at(b, k)) % p).collect())
}

fn prem(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    assert!(!b.is_empty());
    let mut r = ptrim(a.clone());
    let db = pdeg(b);
    let binv = inv_mod(*b.last().unwrap(), p);
    while !r.is_empty() && pdeg(&r) >= db {
        let shift = pdeg(&r) - db;
        let c = *r.last().unwrap() * binv % p;
        for (j, &bc) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * bc % p) % p;
        }
        r = ptrim(r);
    }
    r
}

fn pmonic(f: &FpPoly, p: u64) -> FpPoly {
    if f.is_empty() {
        return Vec::new();
    }
    let inv = inv_mod(*f.last().unwrap(), p);
    f.iter().map(|&c| c * inv % p).collect()
}

fn pgcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut x, mut y) = (ptrim(a.clone()), ptrim(b.clone()));
    while !y.is_empty() {
        let r = prem(&x, &y, p);
        x = y;
        y = r;
    }
    pmonic(&x, p)
}

/// Distinct monic irreducible factors of the squarefree polynomial f over
/// F_p, by Berlekamp splitting. Deterministic: the first non-constant
/// subalgebra basis element drives each split.
fn berlekamp(f: &FpPoly, p: u64) -> Vec<FpPoly> {
    let f = pmonic(&ptrim(f.clone()), p);
    let n = pdeg(&f);
    if n <= 1 {
        return alloc::vec![f];
    }
    // Q[:,j] = x^{jp} mod f
    let mut q = FpMat::zero(p, n, n);
    let xp = {
        let mut xp = alloc::vec![0u64; p as usize + 1];
        xp[p as usize] = 1;
        prem(&xp, &f, p)
    };
    let mut col: FpPoly = alloc::vec![1];
    for j in 0..n {
        for (i, &c) in col.iter().enumerate() {
            q.set(i, j, c);
        }
        if j + 1 < n {
            col = prem(&pmul(&col, &xp, p), &f, p);
        }
    }
    for i in 0..n {
        let v = (q.at(i, i) + p - 1) % p;
        q.set(i, i, v);
    }
    let basis = q.kernel();
    if basis.len() == 1 {
        return alloc::vec![f];
    }
    let v: FpPoly = basis
        .iter()
        .map(|b| ptrim(b.clone()))
        .find(|b| pdeg(b) >= 1)
        .expect("non-constant Berlekamp subalgebra element");
    let mut parts = Vec::new();
    for c in 0..p {
        let g = pgcd(&f, &psub(&v, &alloc::vec![c], p), p);
        if !g.is_empty() && pdeg(&g) >= 1 && pdeg(&g) < n {
            parts.extend(berlekamp(&g, p));
        }
    }
    assert!(!parts.is_empty(), "Berlekamp split produced no parts");
    parts
}

/// Irreducible factors of x^n - 1 over F_p for p not dividing n
/// (squarefree case), sorted by degree then coefficients.
pub(crate) fn factor_x_n_minus_one(n: u64, p: u64) -> Vec<Vec<u64>> {
    assert!(n >= 1 && n % p != 0, "x^n - 1 must be squarefree mod p");
    let mut f = alloc::vec![0u64; n as usize + 1];
    f[0] = p - 1;
    f[n as usize] = 1;
    let mut parts = berlekamp(&f, p);
    parts.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    parts
}

/// Evaluate the polynomial at the matrix, over F_p.
fn peval_mat(f: &[u64], b: &FpMat) -> FpMat {
    let n = b.rows;
    let mut acc = FpMat::zero(b.p, n, n);
    for &c in f.iter().rev() {
        acc = acc.mul(b);
        for i in 0..n {
            let v = (acc.at(i, i) + c) % b.p;
            acc.set(i, i, v);
        }
    }
    acc
}

/// The module structure: an action matrix plus the squarefree exponent m'
/// (the largest divisor of the group order coprime to p). Annihilators of
/// simple constituents divide x^{m'} - 1.
pub(crate) struct ModpModule {
    pub action: FpMat,
    pub mprime: u64,
}

impl ModpModule {
    pub fn new(generator: &IntMatrix, m: u64, p: u64) -> Self {
        let mut mprime = m;
        while mprime % p == 0 {
            mprime /= p;
        }
        ModpModule {
            action: FpMat::from_int(generator, p),
            mprime,
        }
    }

    fn dim(&self) -> usize {
        self.action.rows
    }

    /// All simple submodules, each as a canonical rref row basis.
    /// A simple with annihilator f is spanned over F_p by
    /// v, Bv, ..., B^{deg f - 1} v for any nonzero v in ker f(B).
    pub fn simple_submodules(&self) -> Vec<FpMat> {
        let p = self.action.p;
        let n = self.dim();
        let mut out = BTreeSet::new();
        for f in factor_x_n_minus_one(self.mprime, p) {
            let k = peval_mat(&f, &self.action).kernel();
            if k.is_empty() {
                continue;
            }
            let d = pdeg(&f);
            for v in nonzero_combinations(&k, p, n) {
                let mut rows = Vec::with_capacity(d);
                let mut w = v.clone();
                for _ in 0..d {
                    rows.push(w.clone());
                    w = self.action.mul_vec(&w);
                }
                let s = FpMat::from_rows(p, n, &rows).rref();
                assert_eq!(s.rows, d, "simple submodule has wrong dimension");
                out.insert(s);
            }
        }
        out.into_iter().collect()
    }

    /// All maximal submodules: annihilators of the simple submodules of the
    /// dual module (transposed action).
    pub fn maximal_submodules(&self) -> Vec<FpMat> {
        let dual = ModpModule {
            action: self.action.transpose(),
            mprime: self.mprime,
        };
        let mut out = BTreeSet::new();
        for s in dual.simple_submodules() {
            let w = FpMat::from_rows(self.action.p, self.dim(), &s.kernel()).rref();
            out.insert(w);
        }
        out.into_iter().collect()
    }

    /// The full submodule lattice, zero and the whole space included.
    /// Breadth-first closure under minimal extensions: every submodule is
    /// reached by lifting simple submodules of successive quotients.
    pub fn all_submodules(&self) -> Vec<FpMat> {
        let p = self.action.p;
        let n = self.dim();
        let zero = FpMat::zero(p, 0, n);
        let mut seen = BTreeSet::new();
        seen.insert(zero.key());
        let mut result = alloc::vec![zero.clone()];
        let mut queue = alloc::vec![zero];
        while let Some(w) = queue.pop() {
            if w.rows == n {
                continue;
            }
            let pivots = w.pivot_cols();
            let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
            let qdim = free.len();
            // action induced on the quotient, in the free coordinates
            let project = |v: &[u64]| -> Vec<u64> {
                let mut v = v.to_vec();
                for (row, &pj) in pivots.iter().enumerate() {
                    let c = v[pj];
                    if c != 0 {
                        for j in 0..n {
                            v[j] = (v[j] + (p - c) * w.at(row, j)) % p;
                        }
                    }
                }
                free.iter().map(|&j| v[j]).collect()
            };
            let mut qact = FpMat::zero(p, qdim, qdim);
            for (jq, &j) in free.iter().enumerate() {
                let mut e = alloc::vec![0u64; n];
                e[j] = 1;
                let col = project(&self.action.mul_vec(&e));
                for i in 0..qdim {
                    qact.set(i, jq, col[i]);
                }
            }
            let quotient = ModpModule {
                action: qact,
                mprime: self.mprime,
            };
            for s in quotient.simple_submodules() {
                let mut rows: Vec<Vec<u64>> = (0..w.rows).map(|i| w.row(i).to_vec()).collect();
                for i in 0..s.rows {
                    let mut lifted = alloc::vec![0u64; n];
                    for (jq, &j) in free.iter().enumerate() {
                        lifted[j] = s.at(i, jq);
                    }
                    rows.push(lifted);
                }
                let w2 = FpMat::from_rows(p, n, &rows).rref();
                if seen.insert(w2.key()) {
                    result.push(w2.clone());
                    queue.push(w2);
                }
            }
        }
        result.sort();
        result
    }
}

/// All nonzero F_p-combinations of the basis vectors, lexicographic in the
/// coefficient tuples.
fn nonzero_combinations(basis: &[Vec<u64>], p: u64, n: usize) -> Vec<Vec<u64>> {
    let k = basis.len();
    let mut out = Vec::new();
    let mut coef = alloc::vec![0u64; k];
    loop {
        // increment odometer
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            if coef[i] + 1 < p {
                coef[i] += 1;
                break;
            }
            coef[i] = 0;
            i += 1;
        }
        let mut v = alloc::vec![0u64; n];
        for (c, b) in coef.iter().zip(basis) {
            if *c != 0 {
                for j in 0..n {
                    v[j] = (v[j] + c * b[j]) % p;
                }
            }
        }
        out.push(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_known() {
        // x^7 - 1 over F_2: (x+1)(x^3+x^2+1)(x^3+x+1), sorted by
        // (degree, ascending coefficient vector)
        let f = factor_x_n_minus_one(7, 2);
        assert_eq!(
            f,
            alloc::vec![
                alloc::vec![1, 1],
                alloc::vec![1, 0, 1, 1],
                alloc::vec![1, 1, 0, 1]
            ]
        );
        // x^4 - 1 over F_3: (x+1)(x+2)(x^2+1)
        let f = factor_x_n_minus_one(4, 3);
        assert_eq!(f.iter().map(|g| g.len() - 1).collect::<Vec<_>>(), alloc::vec![1, 1, 2]);
        // x^6 - 1 over F_7 splits into linear factors
        let f = factor_x_n_minus_one(6, 7);
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|g| g.len() == 2));
    }

    #[test]
    fn factor_product_restores_input() {
        for (n, p) in [(15u64, 2u64), (12, 5), (10, 3), (9, 2), (5, 7)] {
            let parts = factor_x_n_minus_one(n, p);
            let mut prod: Vec<u64> = alloc::vec![1];
            for f in &parts {
                prod = pmul(&prod, f, p);
            }
            let mut expect = alloc::vec![0u64; n as usize + 1];
            expect[0] = p - 1;
            expect[n as usize] = 1;
            assert_eq!(prod, expect, "n={} p={}", n, p);
        }
    }

    #[test]
    fn submodule_counts() {
        // Trivial action on F_2^2: every subspace is stable: 0, 3 lines, V.
        let m = ModpModule {
            action: FpMat::from_int(&IntMatrix::identity(2), 2),
            mprime: 1,
        };
        assert_eq!(m.all_submodules().len(), 5);
        assert_eq!(m.maximal_submodules().len(), 3);
        assert_eq!(m.simple_submodules().len(), 3);

        // A_3 mod 3: uniserial, 0 < K < V.
        let a3 = IntMatrix::from_i64(&[&[0, -1], &[1, -1]]);
        let m = ModpModule::new(&a3, 3, 3);
        let all = m.all_submodules();
        assert_eq!(all.len(), 3);
        assert_eq!(m.maximal_submodules().len(), 1);

        // A_4 mod 2: (x+1)^2, uniserial again.
        let a4 = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let m = ModpModule::new(&a4, 4, 2);
        assert_eq!(m.all_submodules().len(), 3);
    }

    #[test]
    fn stability_of_enumerated_submodules() {
        // diag(1,-1) mod 3 has eigenvalues 1 and -1: four submodules.
        let g = IntMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let m = ModpModule::new(&g, 6, 3);
        let subs = m.all_submodules();
        assert_eq!(subs.len(), 4);
        for w in &subs {
            for i in 0..w.rows {
                let img = m.action.mul_vec(w.row(i));
                // image must reduce to zero against the rref basis
                let mut v = img;
                for (row, &pj) in w.pivot_cols().iter().enumerate() {
                    let c = v[pj];
                    if c != 0 {
                        for j in 0..2 {
                            v[j] = (v[j] + (3 - c) * w.at(row, j)) % 3;
                        }
                    }
                }
                assert!(v.iter().all(|&x| x == 0), "submodule not stable");
            }
        }
    }
}
