//! Integral representations within a rational class, up to unimodular
//! conjugacy.
//!
//! The standard lattice of a decomposition is the block sum of companion
//! matrices. New classes in the same rational class arise from centerings:
//! generator-stable sublattices between pL and L, rebased. The closure of
//! that process, deduplicated by `zequivalent`, enumerates the classes; for
//! prime order an independent structure theorem (trivial, cyclotomic-ideal
//! and group-ring summands) provides a cross-oracle.

mod equiv;
mod modp;
mod prime;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cyclotomic::{companion_matrix, prime_factors};
use crate::exact_linalg::{
    char_poly, column_lattice_basis, conjugate_by_basis, IntMatrix, IntPoly,
};
use crate::qclass::QClassDecomposition;

pub use equiv::{zequivalent, zequivalent_with_budget};
pub(crate) use equiv::{commutant_units, invariant_battery};
pub use prime::prime_order_zclasses;

/// An integral representation of Z/m: the matrix of a fixed generator,
/// together with the rational class it lies in and the centering chain that
/// produced it from the standard lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeRep {
    m: u64,
    generator: IntMatrix,
    qclass: QClassDecomposition,
    chain: Vec<CenteringStep>,
}

/// One centering step: the prime and the Hermite basis of the chosen
/// sublattice, in the coordinates of the parent lattice.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CenteringStep {
    pub prime: u64,
    pub basis: IntMatrix,
}

impl LatticeRep {
    /// A representation with the given generator matrix. Checks the order
    /// and that the characteristic polynomial matches the decomposition.
    pub fn new(m: u64, generator: IntMatrix, qclass: QClassDecomposition) -> Self {
        Self::with_chain(m, generator, qclass, Vec::new())
    }

    pub(crate) fn with_chain(
        m: u64,
        generator: IntMatrix,
        qclass: QClassDecomposition,
        chain: Vec<CenteringStep>,
    ) -> Self {
        assert!(generator.is_square());
        assert_eq!(generator.rows(), qclass.dim(), "dimension mismatch");
        assert_eq!(qclass.m(), m);
        assert!(
            generator.pow(m).is_identity(),
            "generator^{} is not the identity",
            m
        );
        let mut expected = IntPoly::one();
        for &(d, a) in qclass.pairs() {
            let phi = crate::cyclotomic::cyclotomic_poly(d);
            for _ in 0..a {
                expected = expected.mul(&phi);
            }
        }
        assert_eq!(
            char_poly(&generator),
            expected,
            "characteristic polynomial does not match the decomposition"
        );
        LatticeRep {
            m,
            generator,
            qclass,
            chain,
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &IntMatrix {
        &self.generator
    }

    pub fn qclass(&self) -> &QClassDecomposition {
        &self.qclass
    }

    pub fn chain(&self) -> &[CenteringStep] {
        &self.chain
    }

    /// Discovery depth: number of centering steps from the standard lattice.
    pub fn depth(&self) -> usize {
        self.chain.len()
    }

    pub fn is_faithful(&self) -> bool {
        self.qclass.is_faithful()
    }

    /// The same underlying lattice with the generator replaced by its k-th
    /// power, k coprime to m. The rational class is unchanged because the
    /// Galois action permutes the primitive d-th roots within each block.
    pub fn galois_twist(&self, k: u64) -> LatticeRep {
        assert_eq!(num_integer::gcd(k, self.m.max(1)), 1, "k must be a unit mod m");
        LatticeRep::with_chain(
            self.m,
            self.generator.pow(k % self.m.max(1)),
            self.qclass.clone(),
            self.chain.clone(),
        )
    }
}

/// Outcome of an integral-equivalence test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    /// Equivalent, with a unimodular X satisfying X·τ₁ = τ₂·X.
    Yes { certificate: IntMatrix },
    /// Inequivalent; the witness names the separating invariant.
    No { witness: String },
    /// The invariant battery agrees but the bounded search found nothing.
    Undecided { detail: String },
}

impl EquivalenceVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, EquivalenceVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, EquivalenceVerdict::No { .. })
    }
}

/// Bounds for the intertwiner searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Max-norm bound on coordinate combinations of the intertwiner
    /// lattice basis.
    pub max_coeff: i64,
    /// Number of seeded sparse samples after the systematic phases.
    pub samples: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_coeff: 6,
            samples: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZclassError {
    /// prime_order_zclasses is only validated where the cyclotomic class
    /// number is 1.
    UnsupportedPrime(u64),
    NotPrime(u64),
}

impl core::fmt::Display for ZclassError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ZclassError::UnsupportedPrime(p) => write!(
                f,
                "prime {} is outside the validated class-number-1 range (p <= 7)",
                p
            ),
            ZclassError::NotPrime(p) => write!(f, "{} is not prime", p),
        }
    }
}

/// The block-diagonal representation on the standard lattice: a_d copies of
/// the companion matrix A_d per pair, identity blocks for d = 1, in
/// canonical pair order.
pub fn standard_lattice_rep(q: &QClassDecomposition) -> LatticeRep {
    let mut blocks = Vec::new();
    for &(d, a) in q.pairs() {
        let block = if d == 1 {
            IntMatrix::identity(1)
        } else {
            companion_matrix(d)
        };
        for _ in 0..a {
            blocks.push(block.clone());
        }
    }
    let generator = IntMatrix::block_diag(&blocks);
    LatticeRep::new(q.m(), generator, q.clone())
}

/// Hermite basis of the sublattice of Z^n generated by p·Z^n together with
/// integer lifts of the given F_p row space.
fn subspace_to_lattice(rows: &modp::FpMat, p: u64, n: usize) -> IntMatrix {
    let mut gens = IntMatrix::diag(&alloc::vec![p as i64; n]);
    if rows.rows > 0 {
        let lifts = IntMatrix::from_fn(n, rows.rows, |i, j| num_bigint::BigInt::from(rows.at(j, i)));
        gens = gens.hstack(&lifts);
    }
    let basis = column_lattice_basis(&gens);
    assert_eq!(basis.cols(), n, "centering sublattice must have full rank");
    basis
}

/// One representative per orbit of the given subspaces under the mod-p
/// action of the automorphisms. Two sublattices in one orbit rebase to
/// equivalent generators (the automorphism is the certificate), so only
/// the representative needs the full equivalence treatment downstream.
fn orbit_filter_mod_p(subs: Vec<modp::FpMat>, autos: &[IntMatrix], p: u64) -> Vec<modp::FpMat> {
    // subspaces act through their rows: W -> rref(W · Xᵀ)
    let acts: Vec<modp::FpMat> = autos
        .iter()
        .map(|x| modp::FpMat::from_int(&x.transpose(), p))
        .collect();
    let mut subs: Vec<modp::FpMat> = subs.into_iter().map(|w| w.rref()).collect();
    subs.sort();
    subs.dedup();
    let mut keep = Vec::new();
    let mut seen: BTreeSet<modp::FpMat> = BTreeSet::new();
    for w in &subs {
        if seen.contains(w) {
            continue;
        }
        keep.push(w.clone());
        let mut orbit: VecDeque<modp::FpMat> = VecDeque::new();
        seen.insert(w.clone());
        orbit.push_back(w.clone());
        while let Some(cur) = orbit.pop_front() {
            for a in &acts {
                let img = cur.mul(a).rref();
                if seen.insert(img.clone()) {
                    orbit.push_back(img);
                }
            }
        }
    }
    keep
}

/// All full-rank sublattices L' with p·L ⊆ L' ⊆ L stable under the
/// generator, as canonical Hermite bases (L and pL included). For p not
/// dividing m no new classes arise and only the two trivial sublattices are
/// returned.
pub fn invariant_sublattices_mod_p(rep: &LatticeRep, p: u64) -> Vec<IntMatrix> {
    assert!(crate::cyclotomic::is_prime(p), "p must be prime");
    let n = rep.dim();
    if rep.m() % p != 0 {
        return alloc::vec![
            IntMatrix::identity(n),
            IntMatrix::diag(&alloc::vec![p as i64; n]),
        ];
    }
    let module = modp::ModpModule::new(rep.generator(), rep.m(), p);
    let mut out: Vec<IntMatrix> = module
        .all_submodules()
        .iter()
        .map(|w| subspace_to_lattice(w, p, n))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Result of the centering closure: pairwise inequivalent class
/// representatives plus non-fatal diagnostics (undecidable pairs merged
/// conservatively).
#[derive(Clone, Debug)]
pub struct CenteringClosure {
    pub classes: Vec<LatticeRep>,
    pub diagnostics: Vec<String>,
}

/// Representatives of every Z-class reachable from the standard lattice by
/// centerings, deduplicated with `zequivalent` under the default budget.
pub fn centering_closure(q: &QClassDecomposition) -> CenteringClosure {
    centering_closure_with_budget(q, &SearchBudget::default())
}

/// Centering closure with an explicit search budget.
///
/// Only maximal stable sublattices are expanded at each step: any stable L'
/// with pL ⊆ L' ⊊ L refines through a chain of maximal steps (choose p
/// dividing the index with L' + pL ≠ L, take a maximal stable M ⊇ L' + pL;
/// then pL ⊆ M and [M : L'] < [L : L'], so induction closes the gap), hence
/// the maximal-step closure reaches every class the full closure does.
pub fn centering_closure_with_budget(
    q: &QClassDecomposition,
    budget: &SearchBudget,
) -> CenteringClosure {
    let m = q.m();
    let start = standard_lattice_rep(q);
    let primes = prime_factors(m);
    let mut classes: Vec<LatticeRep> = alloc::vec![start.clone()];
    let mut buckets: BTreeMap<equiv::Battery, Vec<usize>> = BTreeMap::new();
    buckets.insert(invariant_battery(&start), alloc::vec![0]);
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    let mut diagnostics = Vec::new();

    while let Some(i) = queue.pop_front() {
        let rep = classes[i].clone();
        let autos = crate::classify::unit_automorphisms(&rep);
        for &p in &primes {
            let module = modp::ModpModule::new(rep.generator(), m, p);
            let subs = orbit_filter_mod_p(module.maximal_submodules(), &autos, p);
            let mut bases: Vec<IntMatrix> = subs
                .iter()
                .map(|w| subspace_to_lattice(w, p, rep.dim()))
                .collect();
            bases.sort();
            for basis in bases {
                let gen2 = conjugate_by_basis(rep.generator(), &basis)
                    .expect("stable sublattice rebases integrally");
                if &gen2 == rep.generator() {
                    continue;
                }
                let mut chain = rep.chain().to_vec();
                chain.push(CenteringStep { prime: p, basis });
                let cand = LatticeRep::with_chain(m, gen2, q.clone(), chain);
                let key = invariant_battery(&cand);
                let bucket = buckets.get(&key).cloned().unwrap_or_default();
                let mut known = false;
                for &j in &bucket {
                    match zequivalent_with_budget(&cand, &classes[j], budget) {
                        EquivalenceVerdict::Yes { .. } => {
                            known = true;
                            break;
                        }
                        EquivalenceVerdict::No { .. } => {}
                        EquivalenceVerdict::Undecided { detail } => {
                            diagnostics.push(format!(
                                "undecided pair at depth {} (merged conservatively): {}",
                                cand.depth(),
                                detail
                            ));
                            known = true;
                            break;
                        }
                    }
                }
                if !known {
                    let idx = classes.len();
                    classes.push(cand);
                    buckets.entry(key).or_default().push(idx);
                    queue.push_back(idx);
                    assert!(
                        classes.len() < 4096,
                        "centering closure exceeded the class-count safety cap"
                    );
                }
            }
        }
    }

    classes.sort_by(|a, b| {
        a.depth()
            .cmp(&b.depth())
            .then_with(|| a.generator().cmp(b.generator()))
    });
    CenteringClosure {
        classes,
        diagnostics: collapse_repeats(diagnostics),
    }
}

/// Collapses repeated diagnostic lines into "line (xN)", preserving the order
/// of first occurrence.
fn collapse_repeats(lines: Vec<String>) -> Vec<String> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for line in lines {
        match counts.get_mut(&line) {
            Some(c) => *c += 1,
            None => {
                counts.insert(line.clone(), 1);
                order.push(line);
            }
        }
    }
    order
        .into_iter()
        .map(|line| {
            let c = counts[&line];
            if c == 1 {
                line
            } else {
                format!("{} (x{})", line, c)
            }
        })
        .collect()
}

/// Column-major vectorization, the convention under which
/// (A ⊗ B)·vec(X) = vec(B·X·Aᵀ).
pub(crate) fn vec_col_major(m: &IntMatrix) -> Vec<num_bigint::BigInt> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            v.push(m[(i, j)].clone());
        }
    }
    v
}

pub(crate) fn unvec_col_major(v: &[num_bigint::BigInt], rows: usize, cols: usize) -> IntMatrix {
    assert_eq!(v.len(), rows * cols);
    IntMatrix::from_fn(rows, cols, |i, j| v[j * rows + i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qclass::QClassDecomposition;

    fn q(m: u64, pairs: &[(u64, u32)]) -> QClassDecomposition {
        QClassDecomposition::new(m, pairs.to_vec())
    }

    #[test]
    fn standard_reps_match_spec_shapes() {
        let r = standard_lattice_rep(&q(2, &[(1, 1), (2, 1)]));
        assert_eq!(r.generator(), &IntMatrix::from_i64(&[&[1, 0], &[0, -1]]));

        let r = standard_lattice_rep(&q(7, &[(1, 1), (7, 1)]));
        assert_eq!(r.dim(), 7);
        assert_eq!(r.generator()[(0, 0)], num_bigint::BigInt::from(1));
        assert_eq!(r.generator().multiplicative_order(10), Some(7));

        let r = standard_lattice_rep(&q(30, &[(2, 1), (3, 1), (5, 1)]));
        assert_eq!(r.dim(), 7);
        assert_eq!(r.generator().multiplicative_order(40), Some(30));
    }

    #[test]
    fn sublattice_counts_match_small_cases() {
        let r = standard_lattice_rep(&q(2, &[(1, 1), (2, 1)]));
        assert_eq!(invariant_sublattices_mod_p(&r, 2).len(), 5);

        let r3 = LatticeRep::new(
            3,
            crate::cyclotomic::companion_matrix(3),
            q(3, &[(3, 1)]),
        );
        let subs = invariant_sublattices_mod_p(&r3, 3);
        assert_eq!(subs.len(), 3);

        let r1 = standard_lattice_rep(&q(2, &[(2, 1)]));
        assert_eq!(invariant_sublattices_mod_p(&r1, 2).len(), 2);

        // p coprime to m: only L and pL
        let subs = invariant_sublattices_mod_p(&r3, 2);
        assert_eq!(subs.len(), 2);
    }

    #[test]
    fn sublattices_contain_pl_and_are_stable() {
        let r = standard_lattice_rep(&q(6, &[(1, 1), (6, 1)]));
        for p in [2u64, 3] {
            for basis in invariant_sublattices_mod_p(&r, p) {
                // stability: rebasing is integral
                assert!(conjugate_by_basis(r.generator(), &basis).is_some());
                // pL ⊆ L': every column of pI solvable in the basis
                for j in 0..r.dim() {
                    let mut v = alloc::vec![num_bigint::BigInt::from(0); r.dim()];
                    v[j] = num_bigint::BigInt::from(p);
                    assert!(crate::exact_linalg::lattice_contains(&basis, &v));
                }
            }
        }
    }

    #[test]
    fn closure_of_sign_plus_trivial_has_two_classes() {
        let out = centering_closure(&q(2, &[(1, 1), (2, 1)]));
        assert!(out.diagnostics.is_empty());
        assert_eq!(out.classes.len(), 2);
        assert_eq!(out.classes[0].depth(), 0);
        assert_eq!(
            out.classes[0].generator(),
            &IntMatrix::from_i64(&[&[1, 0], &[0, -1]])
        );
        assert_eq!(out.classes[1].depth(), 1);
        // the glued class is the swap class
        let swap = LatticeRep::new(
            2,
            IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
            q(2, &[(1, 1), (2, 1)]),
        );
        assert!(zequivalent(&out.classes[1], &swap).is_yes());
    }

    #[test]
    fn closure_of_minus_identity_is_single() {
        let out = centering_closure(&q(2, &[(2, 7)]));
        assert!(out.diagnostics.is_empty());
        assert_eq!(out.classes.len(), 1);
    }

    #[test]
    fn closure_of_order_seven_has_two_classes() {
        let out = centering_closure(&q(7, &[(1, 1), (7, 1)]));
        assert!(out.diagnostics.is_empty());
        assert_eq!(out.classes.len(), 2);
    }

    #[test]
    fn twist_preserves_class_data() {
        let r = standard_lattice_rep(&q(4, &[(4, 1)]));
        let t = r.galois_twist(3);
        assert_eq!(t.m(), 4);
        assert_eq!(t.generator(), &r.generator().pow(3));
    }
}
