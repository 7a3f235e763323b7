//! Prime-order Z-classes via the structure theorem: every faithful
//! integral representation of Z/p (p ≤ 7, cyclotomic class number 1)
//! decomposes as a ⊕ trivial, b ⊕ ideal-lattice Z[ζ_p], and c ⊕ group-ring
//! Z[Z/p] summands. `standardize_prime` makes that decomposition effective,
//! returning a unimodular change of basis to the standard form; the triple
//! (a, b, c) is then a complete invariant and the transforms compose into
//! equivalence certificates.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclotomic::{companion_matrix, is_prime};
use crate::exact_linalg::{
    integer_kernel, inverse_unimodular, smith_normal_form, solve_integer, IntMatrix,
};
use crate::qclass::QClassDecomposition;
use crate::zclass::{unvec_col_major, vec_col_major, LatticeRep, ZclassError};

/// blockdiag(I_a, A_p × b, C_p × c) where C_p is the cyclic permutation
/// matrix of the regular representation.
pub(crate) fn standard_form(p: u64, a: usize, b: usize, c: usize) -> IntMatrix {
    let mut blocks = Vec::new();
    if a > 0 {
        blocks.push(IntMatrix::identity(a));
    }
    for _ in 0..b {
        blocks.push(companion_matrix(p));
    }
    let cp = IntMatrix::from_fn(p as usize, p as usize, |i, j| {
        if i == (j + 1) % p as usize {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    for _ in 0..c {
        blocks.push(cp.clone());
    }
    IntMatrix::block_diag(&blocks)
}

/// All faithful Z-classes of Z/p in the given dimension: one per triple
/// (a, b, c) with a + b(p-1) + cp = dim and b + c ≥ 1, sorted by the triple.
pub fn prime_order_zclasses(p: u64, dim: usize) -> Result<Vec<LatticeRep>, ZclassError> {
    if !is_prime(p) {
        return Err(ZclassError::NotPrime(p));
    }
    if p > 7 {
        return Err(ZclassError::UnsupportedPrime(p));
    }
    let pu = p as usize;
    let pm1 = pu - 1;
    let mut triples = Vec::new();
    for c in 0..=dim / pu {
        for b in 0..=(dim - c * pu) / pm1 {
            let a = dim - c * pu - b * pm1;
            if b + c >= 1 {
                triples.push((a, b, c));
            }
        }
    }
    triples.sort_unstable();
    Ok(triples
        .into_iter()
        .map(|(a, b, c)| {
            let mut pairs = Vec::new();
            if a + c > 0 {
                pairs.push((1u64, (a + c) as u32));
            }
            pairs.push((p, (b + c) as u32));
            LatticeRep::new(p, standard_form(p, a, b, c), QClassDecomposition::new(p, pairs))
        })
        .collect())
}

fn block(m: &IntMatrix, r0: usize, c0: usize, rows: usize, cols: usize) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |i, j| m[(r0 + i, c0 + j)].clone())
}

fn conj(m: &IntMatrix, r: &IntMatrix) -> IntMatrix {
    crate::exact_linalg::conjugate_by_basis(m, r).expect("conjugating matrix is invertible")
}

/// Solve A·Y - Y·B = RHS over the integers.
fn solve_sylvester(a: &IntMatrix, b: &IntMatrix, rhs: &IntMatrix) -> Option<IntMatrix> {
    let ra = a.rows();
    let cb = b.rows();
    if ra == 0 || cb == 0 {
        return Some(IntMatrix::zero(ra, cb));
    }
    let sys = &IntMatrix::identity(cb).kronecker(a) - &b.transpose().kronecker(&IntMatrix::identity(ra));
    let y = solve_integer(&sys, &vec_col_major(rhs))?;
    Some(unvec_col_major(&y, ra, cb))
}

/// Unimodular completion whose first columns are exactly the given
/// saturated full-column-rank matrix. None if the columns are not a direct
/// summand of Z^n.
fn complete_exact(w: &IntMatrix) -> Option<IntMatrix> {
    let n = w.rows();
    let k = w.cols();
    let d = smith_normal_form(w);
    let factors = d.invariant_factors();
    if factors.len() != k || factors.iter().any(|f| !f.is_one()) {
        return None;
    }
    let uinv = inverse_unimodular(&d.u);
    let c = w.hstack(&block(&uinv, 0, k, n, n - k));
    assert!(c.is_unimodular(), "completion of a saturated summand");
    Some(c)
}

/// Search for v whose orbit v, τv, ..., τ^{p-2}v spans a direct summand
/// (all Smith invariant factors 1). Standard basis vectors first, then
/// small boxes ordered by support size.
fn find_peel_vector(p: u64, tau: &IntMatrix) -> Option<Vec<BigInt>> {
    let r = tau.rows();
    let pm1 = (p - 1) as usize;
    let check = |v: &[BigInt]| -> bool {
        let mut cols = Vec::with_capacity(pm1);
        let mut w = v.to_vec();
        for _ in 0..pm1 {
            cols.push(w.clone());
            w = tau.mul_vec(&w);
        }
        let wmat = IntMatrix::from_fn(r, pm1, |i, j| cols[j][i].clone());
        let f = smith_normal_form(&wmat).invariant_factors();
        f.len() == pm1 && f.iter().all(|x| x.is_one())
    };
    for i in 0..r {
        let mut v = alloc::vec![BigInt::zero(); r];
        v[i] = BigInt::one();
        if check(&v) {
            return Some(v);
        }
    }
    for bound in [1i64, 2] {
        if r > 8 {
            break;
        }
        let width = (2 * bound + 1) as usize;
        let total = width.pow(r as u32);
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        for idx in 0..total {
            let mut rem = idx;
            let mut v = Vec::with_capacity(r);
            for _ in 0..r {
                v.push((rem % width) as i64 - bound);
                rem /= width;
            }
            if v.iter().any(|&x| x != 0) {
                candidates.push(v);
            }
        }
        candidates.sort_by_key(|v| {
            (
                v.iter().filter(|&&x| x != 0).count(),
                v.iter().map(|&x| x.abs()).collect::<Vec<_>>(),
                v.clone(),
            )
        });
        for v in candidates {
            let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            if check(&vb) {
                return Some(vb);
            }
        }
    }
    None
}

/// Peel the ζ-part into companion blocks: returns T with
/// T⁻¹·τ·T = blockdiag(A_p, ..., A_p). Requires Φ_p(τ) = 0.
fn standardize_lambda(p: u64, tau: &IntMatrix) -> Option<IntMatrix> {
    let r = tau.rows();
    if r == 0 {
        return Some(IntMatrix::identity(0));
    }
    let pm1 = (p - 1) as usize;
    let v = find_peel_vector(p, tau)?;
    let mut cols = Vec::with_capacity(pm1);
    let mut w = v;
    for _ in 0..pm1 {
        cols.push(w.clone());
        w = tau.mul_vec(&w);
    }
    let wmat = IntMatrix::from_fn(r, pm1, |i, j| cols[j][i].clone());
    let c1 = complete_exact(&wmat)?;
    let cur = conj(tau, &c1);
    let ap = companion_matrix(p);
    assert_eq!(block(&cur, 0, 0, pm1, pm1), ap, "orbit basis gives the companion block");
    assert!(
        block(&cur, pm1, 0, r - pm1, pm1).is_zero(),
        "orbit span is stable"
    );
    let tail = block(&cur, pm1, pm1, r - pm1, r - pm1);
    let g = block(&cur, 0, pm1, pm1, r - pm1);
    let y = solve_sylvester(&ap, &tail, &-&g)?;
    let shear = IntMatrix::from_fn(r, r, |i, j| {
        if i == j {
            BigInt::one()
        } else if i < pm1 && j >= pm1 {
            y[(i, j - pm1)].clone()
        } else {
            BigInt::zero()
        }
    });
    let t_tail = standardize_lambda(p, &tail)?;
    let rest = IntMatrix::block_diag(&[IntMatrix::identity(pm1), t_tail]);
    Some(&(&c1 * &shear) * &rest)
}

/// Unimodular basis change ψ from the glued block [[A_p, e_0],[0, 1]] to
/// the regular representation C_p: the lattice columns are g^{t+1} - g^t
/// and the glue vector maps to g^0.
fn glue_change_of_basis(p: u64) -> IntMatrix {
    let pu = p as usize;
    IntMatrix::from_fn(pu, pu, |i, j| {
        if j + 1 == pu {
            if i == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        } else if i == j {
            -BigInt::one()
        } else if i == j + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// The cyclotomic unit e_λ(A_p) = I + A_p + ... + A_p^{λ-1}; unimodular for
/// gcd(λ, p) = 1, reduction λ modulo (ζ - 1).
fn lambda_unit(p: u64, lam: u64) -> IntMatrix {
    let pm1 = (p - 1) as usize;
    let ap = companion_matrix(p);
    let mut acc = IntMatrix::zero(pm1, pm1);
    let mut pw = IntMatrix::identity(pm1);
    for _ in 0..lam {
        acc = &acc + &pw;
        pw = &pw * &ap;
    }
    assert!(acc.is_unimodular(), "e_{}(A_{}) must be a unit", lam, p);
    acc
}

/// Effective prime-order structure theorem: a unimodular T with
/// T⁻¹·τ·T = standard_form(p, a, b, c), plus the triple. None only if the
/// small peel-vector search fails (callers fall back to generic search).
pub(crate) fn standardize_prime(
    p: u64,
    tau: &IntMatrix,
) -> Option<(IntMatrix, (usize, usize, usize))> {
    assert!(is_prime(p) && p <= 7);
    assert!(tau.pow(p).is_identity());
    let n = tau.rows();
    let pm1 = (p - 1) as usize;
    let pb = BigInt::from(p);

    // Φ_p(τ) = Σ τ^i; its kernel is the ζ-part L₁
    let mut phi = IntMatrix::zero(n, n);
    let mut pw = IntMatrix::identity(n);
    for _ in 0..p {
        phi = &phi + &pw;
        pw = &pw * tau;
    }
    let l1 = integer_kernel(&phi);
    let r1 = l1.cols();
    assert_eq!(r1 % pm1, 0, "ζ-part dimension is a multiple of p-1");
    let bc = r1 / pm1;
    let ac = n - r1;
    if r1 == 0 {
        assert!(tau.is_identity(), "Φ_p(τ) injective forces τ = I");
        return Some((IntMatrix::identity(n), (n, 0, 0)));
    }

    // basis with L₁ spanned by the first r1 vectors; τ is then
    // [[τ_Λ, G], [0, I]] because τ acts trivially on L/L₁
    let d = smith_normal_form(&l1);
    assert!(d.invariant_factors().iter().all(|f| f.is_one()));
    let c0 = inverse_unimodular(&d.u);
    let mut t = c0.clone();
    let mut cur = conj(tau, &c0);
    assert!(block(&cur, r1, 0, ac, r1).is_zero());
    assert!(block(&cur, r1, r1, ac, ac).is_identity());

    // standardize the ζ-part to companion blocks
    let t_lambda = standardize_lambda(p, &block(&cur, 0, 0, r1, r1))?;
    let step = IntMatrix::block_diag(&[t_lambda, IntMatrix::identity(ac)]);
    cur = conj(&cur, &step);
    t = &t * &step;

    let apply = |cur: &mut IntMatrix, t: &mut IntMatrix, r: &IntMatrix| {
        *cur = conj(cur, r);
        *t = &*t * r;
    };

    // Γ[i][j]: the glue column j at Λ-summand i, reduced modulo (ζ-1)Λ,
    // i.e. the coordinate sum of the block mod p
    let read_gamma = |cur: &IntMatrix| -> Vec<Vec<u64>> {
        (0..bc)
            .map(|i| {
                (0..ac)
                    .map(|j| {
                        let mut s = BigInt::zero();
                        for row in 0..pm1 {
                            s += &cur[(i * pm1 + row, r1 + j)];
                        }
                        u64::try_from(s.mod_floor(&pb)).unwrap()
                    })
                    .collect()
            })
            .collect()
    };

    // block row operations on the Λ-part (all commute with D):
    // swap two summands
    let swap_blocks = |i: usize, j: usize| -> IntMatrix {
        IntMatrix::from_fn(n, n, |r, c| {
            let map = |idx: usize| -> usize {
                if idx < r1 {
                    let (blk, off) = (idx / pm1, idx % pm1);
                    if blk == i {
                        j * pm1 + off
                    } else if blk == j {
                        i * pm1 + off
                    } else {
                        idx
                    }
                } else {
                    idx
                }
            };
            if map(r) == c {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    };
    // Γ[i] += λ·Γ[j]: unipotent with block (i,j) = -e_λ(A_p)
    let add_block = |i: usize, j: usize, lam: u64| -> IntMatrix {
        let u = lambda_unit(p, lam);
        IntMatrix::from_fn(n, n, |r, c| {
            if r == c {
                BigInt::one()
            } else if r < r1 && c < r1 && r / pm1 == i && c / pm1 == j {
                -u[(r % pm1, c % pm1)].clone()
            } else {
                BigInt::zero()
            }
        })
    };
    // Γ[i] *= λ⁻¹: diagonal block e_λ(A_p) at summand i
    let scale_block = |i: usize, lam: u64| -> IntMatrix {
        let u = lambda_unit(p, lam);
        IntMatrix::from_fn(n, n, |r, c| {
            if r < r1 && c < r1 && r / pm1 == i && c / pm1 == i {
                u[(r % pm1, c % pm1)].clone()
            } else if r == c {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    };
    // trivial-part column operations
    let swap_cols = |j1: usize, j2: usize| -> IntMatrix {
        IntMatrix::from_fn(n, n, |r, c| {
            let map = |idx: usize| -> usize {
                if idx == r1 + j1 {
                    r1 + j2
                } else if idx == r1 + j2 {
                    r1 + j1
                } else {
                    idx
                }
            };
            if map(r) == c {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    };
    // glue column jdst += λ·(glue column jsrc)
    let add_col = |jdst: usize, jsrc: usize, lam: i64| -> IntMatrix {
        IntMatrix::from_fn(n, n, |r, c| {
            if r == c {
                BigInt::one()
            } else if r == r1 + jsrc && c == r1 + jdst {
                BigInt::from(lam)
            } else {
                BigInt::zero()
            }
        })
    };

    // reduce Γ to [[I_c, 0], [0, 0]]
    let mut rank = 0usize;
    loop {
        let gamma = read_gamma(&cur);
        let mut pivot = None;
        'scan: for j in rank..ac {
            for i in rank..bc {
                if gamma[i][j] != 0 {
                    pivot = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        if pi != rank {
            apply(&mut cur, &mut t, &swap_blocks(pi, rank));
        }
        if pj != rank {
            apply(&mut cur, &mut t, &swap_cols(pj, rank));
        }
        let gamma = read_gamma(&cur);
        let piv = gamma[rank][rank];
        assert!(piv != 0);
        if piv != 1 {
            apply(&mut cur, &mut t, &scale_block(rank, piv));
        }
        let gamma = read_gamma(&cur);
        assert_eq!(gamma[rank][rank], 1);
        for i in 0..bc {
            if i != rank && gamma[i][rank] != 0 {
                apply(&mut cur, &mut t, &add_block(i, rank, p - gamma[i][rank]));
            }
        }
        let gamma = read_gamma(&cur);
        for j in (rank + 1)..ac {
            if gamma[rank][j] != 0 {
                apply(&mut cur, &mut t, &add_col(j, rank, -(gamma[rank][j] as i64)));
            }
        }
        rank += 1;
    }
    let c_glue = rank;
    let a = ac - c_glue;
    let b = bc - c_glue;

    // integral correction: move the glue block exactly onto the standard
    // one by a shear, solving (D - I)·Y = G_std - G (solvable because both
    // sides agree modulo (ζ-1)Λ per block)
    let g_now = block(&cur, 0, r1, r1, ac);
    let g_std = IntMatrix::from_fn(r1, ac, |row, col| {
        if col < c_glue && row == col * pm1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let d_mat = block(&cur, 0, 0, r1, r1);
    let d_minus_i = &d_mat - &IntMatrix::identity(r1);
    let delta = &g_std - &g_now;
    let mut y_cols = Vec::with_capacity(ac);
    for j in 0..ac {
        let col: Vec<BigInt> = (0..r1).map(|i| delta[(i, j)].clone()).collect();
        y_cols.push(solve_integer(&d_minus_i, &col)?);
    }
    if ac > 0 {
        let y = IntMatrix::from_fn(r1, ac, |i, j| y_cols[j][i].clone());
        let shear = IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::one()
            } else if i < r1 && j >= r1 {
                y[(i, j - r1)].clone()
            } else {
                BigInt::zero()
            }
        });
        apply(&mut cur, &mut t, &shear);
    }
    assert_eq!(block(&cur, 0, r1, r1, ac), g_std);

    // reorder: a trivial coordinates, b free Λ-summands, then the c glued
    // (Λ-summand, trivial) pairs
    let mut order = Vec::with_capacity(n);
    for j in c_glue..ac {
        order.push(r1 + j);
    }
    for i in c_glue..bc {
        for off in 0..pm1 {
            order.push(i * pm1 + off);
        }
    }
    for i in 0..c_glue {
        for off in 0..pm1 {
            order.push(i * pm1 + off);
        }
        order.push(r1 + i);
    }
    let perm = IntMatrix::from_fn(n, n, |r, c| {
        if r == order[c] {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    apply(&mut cur, &mut t, &perm);

    // convert each glued pair to the regular representation
    if c_glue > 0 {
        let xinv = inverse_unimodular(&glue_change_of_basis(p));
        let offset = a + b * pm1;
        let pu = p as usize;
        let rmat = IntMatrix::from_fn(n, n, |r, c| {
            if r < offset || c < offset {
                if r == c {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            } else {
                let (br, bc2) = ((r - offset) / pu, (c - offset) / pu);
                if br == bc2 {
                    xinv[((r - offset) % pu, (c - offset) % pu)].clone()
                } else {
                    BigInt::zero()
                }
            }
        });
        apply(&mut cur, &mut t, &rmat);
    }

    assert_eq!(
        cur,
        standard_form(p, a, b, c_glue),
        "standardization must land exactly on the standard form"
    );
    assert!(t.is_unimodular());
    Some((t, (a, b, c_glue)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::conjugate_by_basis;

    #[test]
    fn class_counts_match_composition_counts() {
        assert_eq!(prime_order_zclasses(7, 7).unwrap().len(), 2);
        assert_eq!(prime_order_zclasses(2, 2).unwrap().len(), 3);
        assert_eq!(prime_order_zclasses(3, 2).unwrap().len(), 1);
        // a + 4b + 5c = 7 with b + c >= 1: (3,1,0) and (2,0,1)
        assert_eq!(prime_order_zclasses(5, 7).unwrap().len(), 2);
        assert!(matches!(
            prime_order_zclasses(11, 10),
            Err(ZclassError::UnsupportedPrime(11))
        ));
        assert!(matches!(
            prime_order_zclasses(4, 4),
            Err(ZclassError::NotPrime(4))
        ));
    }

    #[test]
    fn glue_basis_conjugates_to_regular_rep() {
        for p in [2u64, 3, 5, 7] {
            let pu = p as usize;
            let m_glue = IntMatrix::from_fn(pu, pu, |i, j| {
                if i < pu - 1 && j < pu - 1 {
                    companion_matrix(p)[(i, j)].clone()
                } else if j + 1 == pu && i == 0 && pu > 1 {
                    BigInt::one()
                } else if i + 1 == pu && j + 1 == pu {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            });
            let x = glue_change_of_basis(p);
            assert!(x.is_unimodular());
            let xinv = inverse_unimodular(&x);
            let conj = &(&x * &m_glue) * &xinv;
            assert_eq!(conj, standard_form(p, 0, 0, 1), "p = {}", p);
        }
    }

    #[test]
    fn standardize_recovers_standard_forms() {
        for (p, a, b, c) in [
            (2u64, 1usize, 1usize, 0usize),
            (2, 0, 0, 1),
            (2, 1, 0, 1),
            (3, 1, 1, 0),
            (3, 0, 0, 1),
            (3, 2, 1, 1),
            (5, 0, 1, 0),
            (5, 2, 0, 1),
            (7, 1, 1, 0),
            (7, 0, 0, 1),
        ] {
            let m = standard_form(p, a, b, c);
            let (t, abc) = standardize_prime(p, &m).expect("standard form standardizes");
            assert_eq!(abc, (a, b, c));
            assert_eq!(conjugate_by_basis(&m, &t).unwrap(), m);
        }
    }

    #[test]
    fn standardize_undoes_unimodular_conjugation() {
        // a deterministic unimodular scrambler built from shears and a swap
        let scramble = |n: usize| -> IntMatrix {
            let mut u = IntMatrix::identity(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j && (i + 2 * j) % 3 == 0 {
                        let e = IntMatrix::from_fn(n, n, |r, c| {
                            if r == c {
                                BigInt::one()
                            } else if r == i && c == j {
                                BigInt::from(1 + ((i + j) % 2) as i64)
                            } else {
                                BigInt::zero()
                            }
                        });
                        u = &u * &e;
                    }
                }
            }
            u
        };
        for (p, a, b, c) in [
            (2u64, 1usize, 1usize, 0usize),
            (2, 0, 0, 1),
            (2, 2, 1, 1),
            (3, 1, 1, 0),
            (3, 0, 1, 1),
            (5, 1, 1, 0),
            (7, 0, 0, 1),
        ] {
            let n = a + b * (p as usize - 1) + c * p as usize;
            let u = scramble(n);
            assert!(u.is_unimodular());
            let m = conjugate_by_basis(&standard_form(p, a, b, c), &u).unwrap();
            let (t, abc) = standardize_prime(p, &m).expect("scrambled form standardizes");
            assert_eq!(abc, (a, b, c), "p={} a={} b={} c={}", p, a, b, c);
            assert_eq!(
                conjugate_by_basis(&m, &t).unwrap(),
                standard_form(p, a, b, c)
            );
        }
    }
}
