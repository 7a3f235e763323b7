//! The integral-equivalence decision procedure.
//!
//! NO answers come from a fixed battery of exact invariants; YES answers
//! carry a unimodular certificate, found either by the prime-order
//! standardization or by a bounded search over the integral intertwiner
//! lattice. Only when the battery agrees and the search budget is
//! exhausted does the verdict stay undecided.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{cyclotomic_poly, divisors, is_prime, prime_factors};
use crate::exact_linalg::{
    conjugate_by_basis, integer_kernel, inverse_unimodular, lll_reduce, smith_normal_form,
    solve_rational_matrix, IntMatrix,
};
use crate::zclass::{
    modp, prime::standardize_prime, subspace_to_lattice, unvec_col_major, EquivalenceVerdict,
    LatticeRep, SearchBudget,
};

pub(crate) type Battery = Vec<(String, Vec<BigInt>)>;

fn snf_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).invariant_factors()
}

/// Invariant factors of Ĥ⁰ for the subgroup generated by h of order q:
/// L^H / N_H·L, computed as the SNF of the norm image in coordinates of the
/// saturated fixed lattice. Includes trivial factors, so the list length
/// also records rank L^H.
pub(crate) fn tate_invariant_factors(h: &IntMatrix, q: u64) -> Vec<BigInt> {
    let n = h.rows();
    let id = IntMatrix::identity(n);
    let fixed = integer_kernel(&(h - &id));
    if fixed.cols() == 0 {
        return Vec::new();
    }
    let mut norm = IntMatrix::zero(n, n);
    let mut pw = id;
    for _ in 0..q {
        norm = &norm + &pw;
        pw = &pw * h;
    }
    let coords = solve_rational_matrix(&fixed, &norm)
        .expect("norm image lies in the fixed lattice");
    let ci = IntMatrix::from_fn(fixed.cols(), n, |i, j| {
        let r = &coords[j][i];
        assert!(r.is_integer(), "fixed lattice basis is saturated");
        r.to_integer()
    });
    let f = snf_factors(&ci);
    assert_eq!(f.len(), fixed.cols(), "norm image has full rank in L^H");
    f
}

/// The fixed battery of exact invariants separating inequivalent
/// representations. Equal generators give equal batteries; the converse
/// failing is what the bounded search and the undecided verdict are for.
pub(crate) fn invariant_battery(rep: &LatticeRep) -> Battery {
    battery_of(rep.generator(), rep.m())
}

fn battery_of(g: &IntMatrix, m: u64) -> Battery {
    let mut out: Battery = Vec::new();
    out.push((
        String::from("charpoly"),
        crate::exact_linalg::char_poly(g).coeffs().to_vec(),
    ));
    // Tate invariants first: they are the strongest separators and make the
    // most legible witnesses when two batteries differ.
    for q in divisors(m).into_iter().filter(|&q| q > 1) {
        let h = g.pow(m / q);
        out.push((format!("tate q={}", q), tate_invariant_factors(&h, q)));
    }
    for d in divisors(m) {
        let phi_at_g = cyclotomic_poly(d).eval_at_matrix(g);
        out.push((format!("cyclo_snf d={}", d), snf_factors(&phi_at_g)));
    }
    for q in divisors(m).into_iter().filter(|&q| q > 1) {
        let h = g.pow(m / q);
        let id = IntMatrix::identity(g.rows());
        out.push((format!("fixed_snf q={}", q), snf_factors(&(&h - &id))));
        let mut norm = IntMatrix::zero(g.rows(), g.rows());
        let mut pw = id;
        for _ in 0..q {
            norm = &norm + &pw;
            pw = &pw * &h;
        }
        out.push((format!("norm_snf q={}", q), snf_factors(&norm)));
    }
    for p in prime_factors(m) {
        let count = modp::ModpModule::new(g, m, p)
            .maximal_submodules()
            .len();
        out.push((
            format!("maximal_sublattices p={}", p),
            alloc::vec![BigInt::from(count)],
        ));
    }
    out
}

/// Unimodular elements of the commutant lattice {X : X·g = g·X}, i.e.
/// automorphisms of the module. Collected from the cheap systematic
/// combinations plus every determinant-descent success, deduplicated into
/// canonical order. The group they generate acts in orbit exploration, so
/// more elements here only coarsen orbits, never corrupt them.
pub(crate) fn commutant_units(g: &IntMatrix, budget: &SearchBudget, cap: usize) -> Vec<IntMatrix> {
    let n = g.rows();
    let id = IntMatrix::identity(n);
    let sys = &g.transpose().kronecker(&id) - &id.kronecker(g);
    let kernel = integer_kernel(&sys);
    if kernel.cols() == 0 {
        return Vec::new();
    }
    let kernel = lll_reduce(&kernel);
    let mats: Vec<IntMatrix> = (0..kernel.cols())
        .map(|j| unvec_col_major(&kernel.col(j), n, n))
        .collect();
    let k = mats.len();
    let flat: Option<Vec<Vec<i64>>> = mats
        .iter()
        .map(|m| {
            (0..n * n)
                .map(|e| i64::try_from(&m[(e / n, e % n)]).ok())
                .collect::<Option<Vec<i64>>>()
        })
        .collect();
    let build = |coeffs: &[i64]| -> IntMatrix {
        let mut x = IntMatrix::zero(n, n);
        for (c, mat) in coeffs.iter().zip(&mats) {
            if *c == 0 {
                continue;
            }
            let cb = BigInt::from(*c);
            for i in 0..n {
                for j in 0..n {
                    let v = &x[(i, j)] + &cb * &mat[(i, j)];
                    x[(i, j)] = v;
                }
            }
        }
        x
    };
    let det_abs = |coeffs: &[i64]| -> BigInt {
        if let Some(fl) = &flat {
            if let Some(d) = det_abs_i128(coeffs, fl, n) {
                return BigInt::from(d);
            }
        }
        build(coeffs).det().abs()
    };
    let one = BigInt::one();
    let mut found: alloc::collections::BTreeSet<IntMatrix> = alloc::collections::BTreeSet::new();

    let mut c = alloc::vec![0i64; k];
    for i in 0..k {
        for s in [1i64, -1] {
            c[i] = s;
            if det_abs(&c) == one {
                found.insert(build(&c));
            }
        }
        c[i] = 0;
    }
    for i in 0..k {
        for j in (i + 1)..k {
            for ci in -2i64..=2 {
                for cj in -2i64..=2 {
                    if ci == 0 && cj == 0 {
                        continue;
                    }
                    c[i] = ci;
                    c[j] = cj;
                    if det_abs(&c) == one {
                        found.insert(build(&c));
                    }
                }
            }
            c[i] = 0;
            c[j] = 0;
        }
    }

    let starts = (budget.samples / 250).max(40);
    let bmax = budget.max_coeff.max(1);
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for _ in 0..starts {
        if found.len() >= cap {
            break;
        }
        for v in c.iter_mut() {
            *v = 0;
        }
        let terms = 1 + (next() % 3) as usize;
        for _ in 0..terms {
            let pos = (next() % k as u64) as usize;
            c[pos] = (next() % (2 * bmax as u64 + 1)) as i64 - bmax;
        }
        let mut cur = det_abs(&c);
        for _ in 0..8 {
            if !cur.is_zero() {
                break;
            }
            let pos = (next() % k as u64) as usize;
            c[pos] += if next() % 2 == 0 { 1 } else { -1 };
            cur = det_abs(&c);
        }
        if cur.is_zero() {
            continue;
        }
        for _ in 0..60 {
            if cur == one {
                break;
            }
            let mut improved = false;
            for i in 0..k {
                for delta in [1i64, -1, 2, -2, 3, -3] {
                    let saved = c[i];
                    let trial = saved + delta;
                    if trial.abs() > 64 {
                        continue;
                    }
                    c[i] = trial;
                    let d = det_abs(&c);
                    if !d.is_zero() && d < cur {
                        cur = d;
                        improved = true;
                        break;
                    }
                    c[i] = saved;
                }
            }
            if !improved {
                break;
            }
        }
        if cur == one {
            found.insert(build(&c));
        }
    }

    found
        .into_iter()
        .filter(|x| {
            debug_assert!(x.is_unimodular());
            debug_assert_eq!(&(x * g), &(g * x));
            true
        })
        .take(cap)
        .collect()
}

/// Sorted multiset of invariant batteries over all maximal stable
/// sublattices. An equivalence maps maximal stable sublattices bijectively
/// onto maximal stable sublattices with equivalent conjugated generators,
/// so inequality of these multisets certifies inequivalence.
fn child_batteries(g: &IntMatrix, m: u64) -> Vec<Battery> {
    let n = g.rows();
    let mut out = Vec::new();
    for p in prime_factors(m) {
        for w in modp::ModpModule::new(g, m, p).maximal_submodules() {
            let basis = subspace_to_lattice(&w, p, n);
            let child =
                conjugate_by_basis(g, &basis).expect("stable sublattice rebases integrally");
            out.push(battery_of(&child, m));
        }
    }
    out.sort();
    out
}

/// Decide integral equivalence under the default budget.
pub fn zequivalent(r1: &LatticeRep, r2: &LatticeRep) -> EquivalenceVerdict {
    zequivalent_with_budget(r1, r2, &SearchBudget::default())
}

/// Decide integral equivalence of two representations in the same rational
/// class, with an explicit search budget.
pub fn zequivalent_with_budget(
    r1: &LatticeRep,
    r2: &LatticeRep,
    budget: &SearchBudget,
) -> EquivalenceVerdict {
    assert_eq!(r1.m(), r2.m(), "order mismatch");
    assert_eq!(r1.dim(), r2.dim(), "dimension mismatch");
    if r1.generator() == r2.generator() {
        return EquivalenceVerdict::Yes {
            certificate: IntMatrix::identity(r1.dim()),
        };
    }
    let b1 = invariant_battery(r1);
    let b2 = invariant_battery(r2);
    for ((name, v1), (_, v2)) in b1.iter().zip(b2.iter()) {
        if v1 != v2 {
            return EquivalenceVerdict::No {
                witness: format!("{}: {:?} vs {:?}", name, v1, v2),
            };
        }
    }
    if is_prime(r1.m()) {
        if let (Some((t1, abc1)), Some((t2, abc2))) = (
            standardize_prime(r1.m(), r1.generator()),
            standardize_prime(r1.m(), r2.generator()),
        ) {
            if abc1 == abc2 {
                // g_i = T_i D T_i⁻¹, so X = T₂·T₁⁻¹ maps g₁ to g₂.
                let x = &t2 * &inverse_unimodular(&t1);
                assert!(x.is_unimodular());
                assert_eq!(&(&x * r1.generator()), &(r2.generator() * &x));
                return EquivalenceVerdict::Yes { certificate: x };
            }
            return EquivalenceVerdict::No {
                witness: format!(
                    "prime-order summand multiplicities {:?} vs {:?}",
                    abc1, abc2
                ),
            };
        }
        // standardization failed to find a peel vector; fall back
    }
    intertwiner_search(r1.m(), r1.generator(), r2.generator(), budget)
}

/// Bounded search over the integral solution lattice of X·g1 = g2·X for a
/// unimodular element. Every lattice member intertwines by construction,
/// so only |det| = 1 is tested per candidate. When no unimodular element
/// turns up, a mod-p scan can still certify that none exists.
fn intertwiner_search(
    m: u64,
    g1: &IntMatrix,
    g2: &IntMatrix,
    budget: &SearchBudget,
) -> EquivalenceVerdict {
    let n = g1.rows();
    let id = IntMatrix::identity(n);
    let sys = &g1.transpose().kronecker(&id) - &id.kronecker(g2);
    let kernel = integer_kernel(&sys);
    if kernel.cols() == 0 {
        return EquivalenceVerdict::No {
            witness: String::from("no nonzero rational intertwiner"),
        };
    }
    let kernel = lll_reduce(&kernel);
    let mats: Vec<IntMatrix> = (0..kernel.cols())
        .map(|j| unvec_col_major(&kernel.col(j), n, n))
        .collect();
    debug_assert!(mats
        .iter()
        .all(|x| &(x * g1) == &(g2 * x)));

    // fast path: all basis matrices fit in i64
    let flat: Option<Vec<Vec<i64>>> = mats
        .iter()
        .map(|m| {
            (0..n * n)
                .map(|e| i64::try_from(&m[(e / n, e % n)]).ok())
                .collect::<Option<Vec<i64>>>()
        })
        .collect();

    let build = |coeffs: &[i64]| -> IntMatrix {
        let mut x = IntMatrix::zero(n, n);
        for (c, mat) in coeffs.iter().zip(&mats) {
            if *c == 0 {
                continue;
            }
            let cb = BigInt::from(*c);
            for i in 0..n {
                for j in 0..n {
                    let v = &x[(i, j)] + &cb * &mat[(i, j)];
                    x[(i, j)] = v;
                }
            }
        }
        x
    };

    let is_candidate = |coeffs: &[i64]| -> bool {
        if let Some(fl) = &flat {
            if let Some(d) = det_abs_i128(coeffs, fl, n) {
                return d == 1;
            }
        }
        build(coeffs).is_unimodular()
    };

    let certify = |coeffs: &[i64]| -> EquivalenceVerdict {
        let x = build(coeffs);
        assert!(x.is_unimodular());
        assert_eq!(&(&x * g1), &(g2 * &x));
        EquivalenceVerdict::Yes { certificate: x }
    };

    let k = mats.len();
    let bmax = budget.max_coeff.max(1);

    // single basis vectors with unit coefficient
    let mut coeffs = alloc::vec![0i64; k];
    for i in 0..k {
        for s in [1i64, -1] {
            coeffs[i] = s;
            if is_candidate(&coeffs) {
                return certify(&coeffs);
            }
        }
        coeffs[i] = 0;
    }

    if k <= 5 {
        // exhaustive shells by max-norm, lexicographic within a shell
        for shell in 1..=bmax {
            let mut c = alloc::vec![-shell; k];
            loop {
                if c.iter().any(|&x| x.abs() == shell) && is_candidate(&c) {
                    return certify(&c);
                }
                // odometer
                let mut pos = 0;
                loop {
                    if pos == k {
                        break;
                    }
                    if c[pos] < shell {
                        c[pos] += 1;
                        break;
                    }
                    c[pos] = -shell;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
    } else {
        // sparse systematic phases
        for i in 0..k {
            for j in (i + 1)..k {
                for ci in -bmax..=bmax {
                    for cj in -bmax..=bmax {
                        if ci == 0 && cj == 0 {
                            continue;
                        }
                        coeffs[i] = ci;
                        coeffs[j] = cj;
                        if is_candidate(&coeffs) {
                            return certify(&coeffs);
                        }
                    }
                }
                coeffs[i] = 0;
                coeffs[j] = 0;
            }
        }
        let width = (2 * bmax + 1) as usize;
        let triples = k * (k - 1) * (k - 2) / 6;
        if triples.saturating_mul(width * width * width) <= 600_000 {
            for i in 0..k {
                for j in (i + 1)..k {
                    for l in (j + 1)..k {
                        for ci in -bmax..=bmax {
                            for cj in -bmax..=bmax {
                                for cl in -bmax..=bmax {
                                    if ci == 0 && cj == 0 && cl == 0 {
                                        continue;
                                    }
                                    coeffs[i] = ci;
                                    coeffs[j] = cj;
                                    coeffs[l] = cl;
                                    if is_candidate(&coeffs) {
                                        return certify(&coeffs);
                                    }
                                }
                            }
                        }
                        coeffs[i] = 0;
                        coeffs[j] = 0;
                        coeffs[l] = 0;
                    }
                }
            }
        }
    }

    // Determinant descent: from each seeded sparse start, change one
    // coefficient at a time while |det| strictly drops. |det| = 1 certifies.
    let det_abs = |coeffs: &[i64]| -> BigInt {
        if let Some(fl) = &flat {
            if let Some(d) = det_abs_i128(coeffs, fl, n) {
                return BigInt::from(d);
            }
        }
        build(coeffs).det().abs()
    };
    let one = BigInt::one();
    let starts = (budget.samples / 250).max(40);
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut c = alloc::vec![0i64; k];
    for _ in 0..starts {
        for v in c.iter_mut() {
            *v = 0;
        }
        let terms = 1 + (next() % 3) as usize;
        for _ in 0..terms {
            let pos = (next() % k as u64) as usize;
            c[pos] = (next() % (2 * bmax as u64 + 1)) as i64 - bmax;
        }
        let mut cur = det_abs(&c);
        for _ in 0..8 {
            if !cur.is_zero() {
                break;
            }
            let pos = (next() % k as u64) as usize;
            c[pos] += if next() % 2 == 0 { 1 } else { -1 };
            cur = det_abs(&c);
        }
        if cur.is_zero() {
            continue;
        }
        for _ in 0..60 {
            if cur == one {
                return certify(&c);
            }
            let mut improved = false;
            for i in 0..k {
                for delta in [1i64, -1, 2, -2, 3, -3] {
                    let saved = c[i];
                    let trial = saved + delta;
                    if trial.abs() > 64 {
                        continue;
                    }
                    c[i] = trial;
                    let d = det_abs(&c);
                    if !d.is_zero() && d < cur {
                        cur = d;
                        improved = true;
                        break;
                    }
                    c[i] = saved;
                }
            }
            if !improved {
                break;
            }
        }
        if cur == one {
            return certify(&c);
        }
    }

    // Parity-constrained descent: collect residues mod 2 whose matrix is
    // invertible mod 2, then descend within each coset by steps of two.
    // A unimodular element has odd determinant, so it lies in such a coset,
    // and every point of the coset avoids the singular locus that strands
    // the unconstrained descent.
    if let Some(fl) = &flat {
        let b2: Vec<Vec<u64>> = fl
            .iter()
            .map(|mat| mat.iter().map(|&v| v.rem_euclid(2) as u64).collect())
            .collect();
        let cap = 512usize;
        let mut cosets: Vec<Vec<i64>> = Vec::new();
        let mut scratch = Vec::with_capacity(n * n);
        let mut curm = alloc::vec![0u64; n * n];
        if k <= 21 {
            let mut digits = alloc::vec![0u64; k];
            let total = 1u64 << k;
            let mut visited = 1u64;
            while visited < total && cosets.len() < cap {
                let mut pos = 0;
                loop {
                    for (dst, b) in curm.iter_mut().zip(&b2[pos]) {
                        *dst = (*dst + *b) & 1;
                    }
                    digits[pos] += 1;
                    if digits[pos] < 2 {
                        break;
                    }
                    digits[pos] = 0;
                    pos += 1;
                }
                visited += 1;
                if det_mod_p(&curm, &mut scratch, n, 2) == 1 {
                    cosets.push(digits.iter().map(|&d| d as i64).collect());
                }
            }
        } else {
            for _ in 0..20_000usize {
                let mut cc = alloc::vec![0i64; k];
                for v in curm.iter_mut() {
                    *v = 0;
                }
                for (i, v) in cc.iter_mut().enumerate() {
                    if next() % 2 == 1 {
                        *v = 1;
                        for (dst, b) in curm.iter_mut().zip(&b2[i]) {
                            *dst = (*dst + *b) & 1;
                        }
                    }
                }
                if det_mod_p(&curm, &mut scratch, n, 2) == 1 {
                    cosets.push(cc);
                    if cosets.len() >= cap {
                        break;
                    }
                }
            }
            cosets.sort();
            cosets.dedup();
        }
        for c0 in cosets {
            let mut c = c0;
            let mut cur = det_abs(&c);
            for _ in 0..60 {
                if cur == one {
                    return certify(&c);
                }
                let mut improved = false;
                for i in 0..k {
                    for delta in [2i64, -2, 4, -4, 6, -6] {
                        let saved = c[i];
                        let trial = saved + delta;
                        if trial.abs() > 65 {
                            continue;
                        }
                        c[i] = trial;
                        let d = det_abs(&c);
                        if d < cur {
                            cur = d;
                            improved = true;
                            break;
                        }
                        c[i] = saved;
                    }
                }
                if !improved {
                    break;
                }
            }
            if cur == one {
                return certify(&c);
            }
        }
    }

    // Equivalent lattices have matching multisets of maximal-sublattice
    // batteries, so a mismatch is a sound separation.
    if child_batteries(g1, m) != child_batteries(g2, m) {
        return EquivalenceVerdict::No {
            witness: String::from("maximal stable sublattice batteries differ"),
        };
    }

    // A unimodular intertwiner reduces mod every prime to an invertible
    // element of the mod-p intertwiner space, so an exhaustive scan that
    // finds none certifies inequivalence. Primes dividing the order go
    // first: away from them the algebra is semisimple and a scan finds an
    // invertible element almost immediately.
    let mut ps = prime_factors(m);
    for q in [2u64, 3, 5, 7] {
        if !ps.contains(&q) {
            ps.push(q);
        }
    }
    for p in ps {
        if no_invertible_mod_p(g1, g2, p) == Some(true) {
            return EquivalenceVerdict::No {
                witness: format!("no invertible intertwiner mod {}", p),
            };
        }
    }

    EquivalenceVerdict::Undecided {
        detail: format!(
            "intertwiner lattice rank {}, bounded searches found no unimodular element (max-norm {}, {} descent starts)",
            k, bmax, starts
        ),
    }
}

/// |det(Σ cᵢ·Mᵢ)| computed in i128. Returns None on overflow so the caller
/// can fall back to exact integers.
fn det_abs_i128(coeffs: &[i64], mats: &[Vec<i64>], n: usize) -> Option<i128> {
    let mut a = alloc::vec![0i128; n * n];
    for (c, m) in coeffs.iter().zip(mats) {
        if *c == 0 {
            continue;
        }
        for (dst, src) in a.iter_mut().zip(m) {
            *dst = dst.checked_add((*c as i128).checked_mul(*src as i128)?)?;
        }
    }
    if n == 0 {
        return Some(1);
    }
    // Bareiss elimination; a swapped-in pivot row is negated to keep the
    // running determinant sign intact.
    let mut prev = 1i128;
    for kk in 0..n - 1 {
        if a[kk * n + kk] == 0 {
            let Some(swap) = ((kk + 1)..n).find(|&r| a[r * n + kk] != 0) else {
                return Some(0);
            };
            for j in 0..n {
                a.swap(kk * n + j, swap * n + j);
                a[kk * n + j] = -a[kk * n + j];
            }
        }
        for i in (kk + 1)..n {
            for j in (kk + 1)..n {
                let t = a[kk * n + kk]
                    .checked_mul(a[i * n + j])?
                    .checked_sub(a[i * n + kk].checked_mul(a[kk * n + j])?)?;
                a[i * n + j] = t / prev;
            }
            a[i * n + kk] = 0;
        }
        prev = a[kk * n + kk];
    }
    Some(a[n * n - 1].abs())
}

/// Determinant over F_p of an n×n matrix stored flat with entries already
/// reduced mod p. The storage orientation does not matter for the value.
fn det_mod_p(flat: &[u64], scratch: &mut Vec<u64>, n: usize, p: u64) -> u64 {
    scratch.clear();
    scratch.extend_from_slice(flat);
    let a = scratch;
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if piv != col {
            for j in col..n {
                a.swap(col * n + j, piv * n + j);
            }
            det = p - det;
        }
        let pivval = a[col * n + col];
        det = det * pivval % p;
        let inv = modp::inv_mod(pivval, p);
        for r in (col + 1)..n {
            let f = a[r * n + col];
            if f == 0 {
                continue;
            }
            let scale = f * inv % p;
            for j in col..n {
                let sub = scale * a[col * n + j] % p;
                a[r * n + j] = (a[r * n + j] + p - sub) % p;
            }
        }
    }
    det % p
}

/// Exhaustive scan of the mod-p intertwiner space for an invertible element.
/// Some(true): none exists, which rules out any unimodular integral
/// intertwiner (its reduction would be one). Some(false): found one, no
/// conclusion. None: the space is too large to enumerate.
fn no_invertible_mod_p(g1: &IntMatrix, g2: &IntMatrix, p: u64) -> Option<bool> {
    let n = g1.rows();
    let id = IntMatrix::identity(n);
    let sys = &g1.transpose().kronecker(&id) - &id.kronecker(g2);
    let basis = modp::FpMat::from_int(&sys, p).kernel();
    let r = basis.len();
    let mut total: u64 = 1;
    for _ in 0..r {
        total = total.checked_mul(p)?;
        if total > (1 << 21) {
            return None;
        }
    }
    // Odometer over F_p^r digits; each digit change adds one basis vector,
    // and a wrap has added it p times in total, which is zero mod p.
    let mut digits = alloc::vec![0u64; r.max(1)];
    let mut cur = alloc::vec![0u64; n * n];
    let mut scratch = Vec::with_capacity(n * n);
    let mut count = 1u64;
    while count < total {
        let mut pos = 0;
        loop {
            for (dst, b) in cur.iter_mut().zip(&basis[pos]) {
                *dst = (*dst + *b) % p;
            }
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        count += 1;
        if det_mod_p(&cur, &mut scratch, n, p) != 0 {
            return Some(false);
        }
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::companion_matrix;
    use crate::qclass::QClassDecomposition;
    use crate::zclass::standard_lattice_rep;
    use num_traits::{One, Zero};

    fn rep(m: u64, pairs: &[(u64, u32)], g: IntMatrix) -> LatticeRep {
        LatticeRep::new(m, g, QClassDecomposition::new(m, pairs.to_vec()))
    }

    #[test]
    fn reflexive_with_identity_certificate() {
        let r = standard_lattice_rep(&QClassDecomposition::new(6, alloc::vec![(1, 1), (6, 1)]));
        match zequivalent(&r, &r) {
            EquivalenceVerdict::Yes { certificate } => assert!(certificate.is_identity()),
            other => panic!("expected yes, got {:?}", other),
        }
    }

    #[test]
    fn a6_equivalent_to_minus_a3() {
        let a6 = companion_matrix(6);
        let minus_a3 = -&companion_matrix(3);
        let r1 = rep(6, &[(6, 1)], a6);
        let r2 = rep(6, &[(6, 1)], minus_a3);
        match zequivalent(&r1, &r2) {
            EquivalenceVerdict::Yes { certificate } => {
                assert!(certificate.is_unimodular());
                assert_eq!(
                    &(&certificate * r1.generator()),
                    &(r2.generator() * &certificate)
                );
            }
            other => panic!("expected yes, got {:?}", other),
        }
    }

    #[test]
    fn ideal_vs_group_ring_lattice_separated_by_tate() {
        // diag(1, A_7) versus the regular-representation lattice of Z/7
        let std7 = standard_lattice_rep(&QClassDecomposition::new(7, alloc::vec![(1, 1), (7, 1)]));
        let c7 = IntMatrix::from_fn(7, 7, |i, j| {
            if i == (j + 1) % 7 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        let reg = rep(7, &[(1, 1), (7, 1)], c7);
        match zequivalent(&std7, &reg) {
            EquivalenceVerdict::No { witness } => {
                assert!(witness.contains("tate"), "witness: {}", witness);
            }
            other => panic!("expected no, got {:?}", other),
        }
    }

    #[test]
    fn tate_factors_of_known_modules() {
        // trivial rep of order m on Z: H^2 = Z/m
        let id1 = IntMatrix::identity(1);
        assert_eq!(tate_invariant_factors(&id1, 4), alloc::vec![BigInt::from(4)]);
        // sign lattice: no fixed vectors
        let s = IntMatrix::from_i64(&[&[-1]]);
        assert_eq!(tate_invariant_factors(&s, 2), Vec::<BigInt>::new());
        // Klein module diag(1,-1): Z/2
        let k = IntMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert_eq!(tate_invariant_factors(&k, 2), alloc::vec![BigInt::from(2)]);
        // group ring Z[Z/3]: cohomologically trivial
        let c3 = IntMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(tate_invariant_factors(&c3, 3), alloc::vec![BigInt::one()]);
    }

    #[test]
    fn battery_distinguishes_swap_from_diag() {
        let d = rep(
            2,
            &[(1, 1), (2, 1)],
            IntMatrix::from_i64(&[&[1, 0], &[0, -1]]),
        );
        let s = rep(
            2,
            &[(1, 1), (2, 1)],
            IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
        );
        assert!(zequivalent(&d, &s).is_no());
    }

    #[test]
    fn twisted_companions_are_equivalent() {
        // A_5 and A_5^2 are conjugate in GL(4,Z) (Galois twist, class number 1)
        let a5 = companion_matrix(5);
        let r1 = rep(5, &[(5, 1)], a5.clone());
        let r2 = rep(5, &[(5, 1)], a5.pow(2));
        assert!(zequivalent(&r1, &r2).is_yes());
    }

    #[test]
    fn det_fast_path_matches_exact() {
        let mats = alloc::vec![
            alloc::vec![1i64, 0, 0, 1],
            alloc::vec![0, 1, 1, 0],
            alloc::vec![2, 0, 0, -2],
        ];
        // c = (1, 0, 0): identity, det 1
        assert_eq!(det_abs_i128(&[1, 0, 0], &mats, 2), Some(1));
        // c = (0, 1, 0): swap, det -1
        assert_eq!(det_abs_i128(&[0, 1, 0], &mats, 2), Some(1));
        // c = (1, 0, 1): diag(3, -1), det -3
        assert_eq!(det_abs_i128(&[1, 0, 1], &mats, 2), Some(3));
        // c = 0: zero matrix
        assert_eq!(det_abs_i128(&[0, 0, 0], &mats, 2), Some(0));
    }

    #[test]
    fn mod_p_scan_obstructions() {
        // (-1)⊕(-1) vs the swap: X·g1 = g2·X mod 2 forces equal rows, so
        // every mod-2 intertwiner is singular and the scan certifies it.
        let g1 = IntMatrix::from_i64(&[&[-1, 0], &[0, -1]]);
        let g2 = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(no_invertible_mod_p(&g1, &g2, 2), Some(true));
        // Identical generators admit the identity at any p.
        assert_eq!(no_invertible_mod_p(&g1, &g1, 3), Some(false));
        assert_eq!(no_invertible_mod_p(&g2, &g2, 2), Some(false));
        // Order mismatch forces X = 0 mod 3: an obstruction of rank zero.
        let g3 = IntMatrix::from_i64(&[&[0, -1], &[1, -1]]);
        assert_eq!(no_invertible_mod_p(&g1, &g3, 3), Some(true));
    }
}
