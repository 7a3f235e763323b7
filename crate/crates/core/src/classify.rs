//! Reduction of special cohomology classes to isomorphism classes of
//! torsion-free extensions.
//!
//! Two classes v, v' of the same representation give isomorphic groups
//! exactly when some unimodular X with X·M·X⁻¹ = M^k (k a unit mod m)
//! satisfies [X·v] = [k·v'] in Ĥ⁰. The module generates a verified set of
//! such symmetries, closes class orbits under them, and certifies orbit
//! counts through isomorphism invariants; pairs it cannot settle are
//! reported, never silently merged.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cohomology::{
    abelianization, build_extension, subgroup_cohomology, tate_h0, BieberbachGroupDesc,
    CohomologyGroup,
};
use crate::cyclotomic::{companion_matrix, cyclotomic_poly, divisors, euler_phi};
use crate::exact_linalg::{integer_kernel, smith_normal_form, IntMatrix, IntPoly};
use crate::zclass::{zequivalent_with_budget, EquivalenceVerdict, LatticeRep, SearchBudget};

/// A unimodular X with X·M·X⁻¹ = M^k; the relation is verified by
/// multiplication at construction time.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SymmetryElement {
    x: IntMatrix,
    k: u64,
}

impl SymmetryElement {
    pub fn new(rep: &LatticeRep, x: IntMatrix, k: u64) -> Self {
        let m = rep.m();
        let k = if m <= 1 { 1 } else { k % m };
        assert!(k >= 1 && k.gcd(&m.max(1)) == 1, "twist {} not a unit mod {}", k, m);
        assert!(x.is_unimodular(), "symmetry matrix must be unimodular");
        assert_eq!(
            &(&x * rep.generator()),
            &(&rep.generator().pow(k) * &x),
            "defining relation X·M = M^k·X fails"
        );
        SymmetryElement { x, k }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.x
    }

    /// The unit k with X·M·X⁻¹ = M^k.
    pub fn twist(&self) -> u64 {
        self.k
    }
}

/// A generating set of symmetries of the representation, each verified:
/// the negated identity, the generator itself, per-block signs, generators
/// and cyclotomic units where the matrix is visibly block diagonal, swaps
/// of equal blocks, shears along integral block intertwiners, and Galois
/// elements twisting the generator to its coprime powers.
pub fn symmetry_generators(rep: &LatticeRep) -> Vec<SymmetryElement> {
    symmetry_generators_with_budget(rep, &SearchBudget::default())
}

pub fn symmetry_generators_with_budget(
    rep: &LatticeRep,
    budget: &SearchBudget,
) -> Vec<SymmetryElement> {
    let g = rep.generator();
    let m = rep.m();
    let mut set: BTreeSet<SymmetryElement> = BTreeSet::new();

    for x in unit_automorphisms(rep) {
        set.insert(SymmetryElement::new(rep, x, 1));
    }

    // Galois elements: X·M·X⁻¹ = M^k for units k. When every block is a
    // recognized companion matrix the ring automorphism x -> x^k gives the
    // element directly; otherwise fall back to the bounded conjugacy search.
    let blocks = diagonal_blocks(g);
    let kinds = block_kinds(g, m, &blocks);
    let recognized = !blocks.is_empty() && kinds.iter().all(|k| k.is_some());
    for k in 2..m {
        if k.gcd(&m) != 1 {
            continue;
        }
        if recognized {
            let parts: Vec<IntMatrix> = kinds.iter().map(|d| galois_block(d.unwrap(), k)).collect();
            set.insert(SymmetryElement::new(rep, IntMatrix::block_diag(&parts), k));
        } else if let EquivalenceVerdict::Yes { certificate } =
            zequivalent_with_budget(rep, &rep.galois_twist(k), budget)
        {
            set.insert(SymmetryElement::new(rep, certificate, k));
        }
    }

    set.into_iter().collect()
}

/// The divisor whose companion matrix a diagonal block equals, if any.
fn block_kinds(g: &IntMatrix, m: u64, blocks: &[(usize, usize)]) -> Vec<Option<u64>> {
    blocks
        .iter()
        .map(|&(s, sz)| {
            divisors(m)
                .into_iter()
                .find(|&d| euler_phi(d) as usize == sz && submatrix(g, s, sz) == block_model(d))
        })
        .collect()
}

/// Automorphisms of the module itself (twist 1, commuting with the
/// generator), verified unimodular: the negated identity, the generator,
/// per-block signs, generators and cyclotomic units on visible diagonal
/// blocks, swaps of equal blocks, and shears along every basis intertwiner
/// between blocks. No search is involved, so this is cheap enough for
/// inner enumeration loops.
pub(crate) fn unit_automorphisms(rep: &LatticeRep) -> Vec<IntMatrix> {
    let g = rep.generator();
    let n = rep.dim();
    let m = rep.m();
    let mut set: BTreeSet<IntMatrix> = BTreeSet::new();

    set.insert(-&IntMatrix::identity(n));
    set.insert(g.clone());

    // global cyclotomic units: 1 + M + ... + M^{b-1} for b coprime to m
    for b in 2..m {
        if b.gcd(&m) != 1 {
            continue;
        }
        let u = partial_sum(g, b);
        if u.is_unimodular() {
            set.insert(u);
        }
    }

    let blocks = diagonal_blocks(g);
    let kinds = block_kinds(g, m, &blocks);

    for (bi, &(s, sz)) in blocks.iter().enumerate() {
        // per-block sign
        let mut x = IntMatrix::identity(n);
        for i in s..s + sz {
            x[(i, i)] = -BigInt::one();
        }
        set.insert(x);
        // per-block generator power and cyclotomic units
        let blk = submatrix(g, s, sz);
        set.insert(embed_block(n, s, &blk));
        if let Some(d) = kinds[bi] {
            for b in 2..d {
                if b.gcd(&d) != 1 {
                    continue;
                }
                let u = partial_sum(&blk, b);
                if u.is_unimodular() {
                    set.insert(embed_block(n, s, &u));
                }
            }
        }
    }

    // swaps of equal blocks
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let (si, zi) = blocks[i];
            let (sj, zj) = blocks[j];
            if zi != zj || submatrix(g, si, zi) != submatrix(g, sj, zj) {
                continue;
            }
            let x = IntMatrix::from_fn(n, n, |r, c| {
                let swapped = if r >= si && r < si + zi {
                    sj + (r - si)
                } else if r >= sj && r < sj + zj {
                    si + (r - sj)
                } else {
                    r
                };
                if c == swapped {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            });
            set.insert(x);
        }
    }

    // shears along integral intertwiners between distinct blocks, one per
    // basis element of each intertwiner lattice
    for i in 0..blocks.len() {
        for j in 0..blocks.len() {
            if i == j {
                continue;
            }
            let (si, zi) = blocks[i];
            let (sj, zj) = blocks[j];
            let bi = submatrix(g, si, zi);
            let bj = submatrix(g, sj, zj);
            // phi with phi·B_i = B_j·phi, placed at block row j, block col i
            let sys = &bi.transpose().kronecker(&IntMatrix::identity(zj))
                - &IntMatrix::identity(zi).kronecker(&bj);
            let ker = integer_kernel(&sys);
            for kcol in 0..ker.cols() {
                let col = ker.col(kcol);
                let mut x = IntMatrix::identity(n);
                for c in 0..zi {
                    for r in 0..zj {
                        x[(sj + r, si + c)] = col[c * zj + r].clone();
                    }
                }
                set.insert(x);
            }
        }
    }

    // Dense generators (no recognizable block structure) expose none of the
    // structured families above, so search the commutant lattice for
    // unimodular elements instead.
    if kinds.iter().any(|k| k.is_none()) {
        for u in crate::zclass::commutant_units(g, &SearchBudget::default(), 64) {
            set.insert(u);
        }
    }

    set.into_iter().collect()
}

/// The canonical representing matrix of the divisor d: the companion
/// matrix of Phi_d, degenerating to the 1x1 identity for d = 1.
fn block_model(d: u64) -> IntMatrix {
    if d == 1 {
        IntMatrix::identity(1)
    } else {
        companion_matrix(d)
    }
}

/// Matrix of the ring automorphism x -> x^k of Z[x]/Phi_d in the power
/// basis; intertwines the companion matrix with its k-th power.
fn galois_block(d: u64, k: u64) -> IntMatrix {
    if d == 1 {
        return IntMatrix::identity(1);
    }
    let phi = euler_phi(d) as usize;
    let f = cyclotomic_poly(d);
    IntMatrix::from_fn(phi, phi, |i, j| {
        // column j: x^{jk} mod Phi_d, using x^d = 1 mod Phi_d
        xpow_mod(&f, (j as u64 * k) % d)[i].clone()
    })
}

/// Coefficients of x^r reduced modulo a monic polynomial, as a vector of
/// length deg f.
fn xpow_mod(f: &IntPoly, r: u64) -> Vec<BigInt> {
    let deg = f.degree();
    let mut reg = alloc::vec![BigInt::zero(); deg];
    reg[0] = BigInt::one();
    for _ in 0..r {
        let top = reg[deg - 1].clone();
        for i in (1..deg).rev() {
            reg[i] = &reg[i - 1] - &top * &f.coeff(i);
        }
        reg[0] = -&top * &f.coeff(0);
    }
    reg
}

fn partial_sum(g: &IntMatrix, b: u64) -> IntMatrix {
    let mut acc = IntMatrix::zero(g.rows(), g.cols());
    let mut pw = IntMatrix::identity(g.rows());
    for _ in 0..b {
        acc = &acc + &pw;
        pw = &pw * g;
    }
    acc
}

/// Finest partition of indices for which the matrix is block diagonal.
fn diagonal_blocks(g: &IntMatrix) -> Vec<(usize, usize)> {
    let n = g.rows();
    let mut out = Vec::new();
    let mut b = 0usize;
    while b < n {
        let mut e = b + 1;
        let mut k = b;
        while k < e {
            for j in 0..n {
                if j >= e && (!g[(k, j)].is_zero() || !g[(j, k)].is_zero()) {
                    e = j + 1;
                }
            }
            k += 1;
        }
        out.push((b, e - b));
        b = e;
    }
    out
}

fn submatrix(g: &IntMatrix, start: usize, size: usize) -> IntMatrix {
    IntMatrix::from_fn(size, size, |i, j| g[(start + i, start + j)].clone())
}

fn embed_block(n: usize, start: usize, blk: &IntMatrix) -> IntMatrix {
    let mut x = IntMatrix::identity(n);
    for i in 0..blk.rows() {
        for j in 0..blk.cols() {
            x[(start + i, start + j)] = blk[(i, j)].clone();
        }
    }
    x
}

fn mul_twist(a: u64, b: u64, m: u64) -> u64 {
    if m <= 1 {
        1
    } else {
        (a * b) % m
    }
}

fn inverse_mod(k: u64, d: &BigInt) -> BigInt {
    let e = BigInt::from(k).extended_gcd(d);
    assert!(e.gcd.is_one(), "{} is not a unit mod {}", k, d);
    e.x.mod_floor(d)
}

/// Class coordinates scaled by a unit: c_i -> (j·c_i) mod d_i.
fn scale_class(h2: &CohomologyGroup, coords: &[BigInt], j: u64) -> Vec<BigInt> {
    coords
        .iter()
        .zip(h2.invariant_factors())
        .map(|(c, d)| (c * BigInt::from(j)).mod_floor(d))
        .collect()
}

/// The class map of one symmetry: [v] -> [k⁻¹·X·v], written on coordinate
/// tuples. Symmetries stabilize L^G and N·L, so the reduction never fails.
fn apply_symmetry(h2: &CohomologyGroup, sym: &SymmetryElement, t: &[BigInt]) -> Vec<BigInt> {
    let w = sym.matrix().mul_vec(&h2.lift(t));
    h2.reduce(&w)
        .iter()
        .zip(h2.invariant_factors())
        .map(|(c, d)| (c * inverse_mod(sym.k, d)).mod_floor(d))
        .collect()
}

/// Forward orbit of a class tuple under the symmetry set, with a composed
/// certificate (C, kappa) per member meaning member = [kappa⁻¹·C·seed].
/// Generators permute the finite class set, so the forward closure is the
/// full group orbit.
pub(crate) fn explore_orbit(
    h2: &CohomologyGroup,
    gens: &[SymmetryElement],
    m: u64,
    seed: &[BigInt],
) -> BTreeMap<Vec<BigInt>, (IntMatrix, u64)> {
    let n = h2.fixed_basis().rows();
    let mut map: BTreeMap<Vec<BigInt>, (IntMatrix, u64)> = BTreeMap::new();
    map.insert(seed.to_vec(), (IntMatrix::identity(n), 1));
    let mut queue: VecDeque<Vec<BigInt>> = VecDeque::new();
    queue.push_back(seed.to_vec());
    while let Some(t) = queue.pop_front() {
        let (c, kappa) = map.get(&t).cloned().unwrap();
        for sym in gens {
            let t2 = apply_symmetry(h2, sym, &t);
            if map.contains_key(&t2) {
                continue;
            }
            let c2 = sym.matrix() * &c;
            let k2 = mul_twist(sym.k, kappa, m);
            map.insert(t2.clone(), (c2, k2));
            queue.push_back(t2);
        }
    }
    map
}

/// Whether the orbit count is known exact or only an upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    /// Every pair of distinct representatives is separated by an
    /// isomorphism invariant, so the orbit count cannot be an over-count.
    Certified,
    /// Some pair of representatives shares all computed invariants; a
    /// larger symmetry group might merge them.
    UpperBound,
}

/// Isomorphism invariants of the extension attached to a class: the
/// abelianization and the additive orders of the class restricted to every
/// subgroup. Symmetries preserve both.
pub(crate) type Fingerprint = (usize, Vec<BigInt>, Vec<BigInt>, Vec<(usize, Vec<BigInt>)>);

pub(crate) fn class_fingerprint(rep: &LatticeRep, v: &[BigInt]) -> Fingerprint {
    let desc = build_extension(rep, v, true).expect("fixed vector");
    let (rank, torsion) = abelianization(&desc);
    let restrictions: Vec<BigInt> = divisors(rep.m())
        .into_iter()
        .filter(|&q| q > 1)
        .map(|q| {
            let h = subgroup_cohomology(rep, q);
            h.class_order(&h.reduce(v))
        })
        .collect();
    // First homology of every proper preimage subgroup: the translation
    // lattice is the unique maximal normal abelian subgroup and the
    // holonomy quotient is cyclic, so these subgroups are characteristic
    // and their abelianizations are isomorphism invariants.
    let subgroup_h1: Vec<(usize, Vec<BigInt>)> = divisors(rep.m())
        .into_iter()
        .filter(|&q| q > 1 && q < rep.m())
        .map(|q| subgroup_abelianization(rep, v, q))
        .collect();
    (rank, torsion, restrictions, subgroup_h1)
}

/// Abelianization of the preimage of the order-q subgroup of the holonomy.
/// Its affine generator is the (m/q)-th power of the full group's, and the
/// partial norms compose, so the same fixed vector v closes up the power
/// relation: SNF of [[g^{m/q} - I, -v], [0, q]].
fn subgroup_abelianization(rep: &LatticeRep, v: &[BigInt], q: u64) -> (usize, Vec<BigInt>) {
    let n = rep.dim();
    let h = rep.generator().pow(rep.m() / q);
    let id = IntMatrix::identity(n);
    let hmi = &h - &id;
    let rel = IntMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i < n && j < n {
            hmi[(i, j)].clone()
        } else if i < n {
            -v[i].clone()
        } else if j < n {
            BigInt::zero()
        } else {
            BigInt::from(q)
        }
    });
    let factors = smith_normal_form(&rel).invariant_factors();
    let rank = (n + 1) - factors.len();
    let torsion: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
    (rank, torsion)
}

/// Orbit representatives of the given special classes under the symmetry
/// action, as canonical (lexicographically minimal) coordinate tuples, with
/// the exactness flag of the count.
pub fn orbit_reduce(rep: &LatticeRep, specials: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Exactness) {
    orbit_reduce_with_budget(rep, specials, &SearchBudget::default())
}

pub fn orbit_reduce_with_budget(
    rep: &LatticeRep,
    specials: &[Vec<BigInt>],
    budget: &SearchBudget,
) -> (Vec<Vec<BigInt>>, Exactness) {
    let h2 = tate_h0(rep);
    let gens = symmetry_generators_with_budget(rep, budget);
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut reps: Vec<Vec<BigInt>> = Vec::new();
    for t in specials {
        if seen.contains(t) {
            continue;
        }
        let orbit = explore_orbit(&h2, &gens, rep.m(), t);
        // first key of the map is the lexicographic minimum
        reps.push(orbit.keys().next().unwrap().clone());
        seen.extend(orbit.into_keys());
    }
    reps.sort();
    reps.dedup();
    // the count is certified when every pair of surviving representatives is
    // separated by an isomorphism invariant: the fingerprint first, and
    // homomorphism counts into small nonabelian groups as a tie-breaker
    let lifts: Vec<Vec<BigInt>> = reps.iter().map(|r| h2.lift(r)).collect();
    let fps: Vec<Fingerprint> = lifts.iter().map(|v| class_fingerprint(rep, v)).collect();
    let mut profiles: Vec<Option<Vec<u64>>> = vec![None; reps.len()];
    let mut exact = Exactness::Certified;
    'outer: for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            if fps[i] != fps[j] {
                continue;
            }
            for k in [i, j] {
                if profiles[k].is_none() {
                    profiles[k] =
                        Some(crate::homs::hom_profile(rep.generator(), rep.m(), &lifts[k]));
                }
            }
            if profiles[i] == profiles[j] {
                exact = Exactness::UpperBound;
                break 'outer;
            }
        }
    }
    (reps, exact)
}

/// An explicit isomorphism witness: X·M₁·X⁻¹ = M₂^k and [X·v₁] = [k·v₂]
/// in Ĥ⁰ of the second representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineConjugacy {
    x: IntMatrix,
    twist: u64,
}

impl AffineConjugacy {
    pub fn matrix(&self) -> &IntMatrix {
        &self.x
    }

    pub fn twist(&self) -> u64 {
        self.twist
    }
}

/// Check an affine conjugacy witness by direct multiplication and class
/// reduction. This is the soundness oracle for every merge decision.
pub fn verify_conjugacy(
    g1: &BieberbachGroupDesc,
    g2: &BieberbachGroupDesc,
    conj: &AffineConjugacy,
) -> bool {
    if g1.dim() != g2.dim() || g1.holonomy_order() != g2.holonomy_order() {
        return false;
    }
    let m = g1.holonomy_order();
    let k = if m <= 1 { 1 } else { conj.twist % m };
    if k == 0 || k.gcd(&m.max(1)) != 1 || !conj.x.is_unimodular() {
        return false;
    }
    let lhs = &conj.x * g1.rep().generator();
    let rhs = &g2.rep().generator().pow(k) * &conj.x;
    if lhs != rhs {
        return false;
    }
    let h2 = tate_h0(g2.rep());
    let moved = h2.reduce(&conj.x.mul_vec(g1.class_vector()));
    moved == scale_class(&h2, &h2.reduce(g2.class_vector()), k)
}

/// Outcome of the isomorphism test between two extension groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Yes { conjugacy: AffineConjugacy },
    No { witness: String },
    Undecided { detail: String },
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::No { .. })
    }
}

/// Decide isomorphism of two extensions of equal dimension. NO requires an
/// invariant witness or the exhaustion of all unit twists at lattice level;
/// YES carries a verified affine conjugacy; everything else is surfaced as
/// UNDECIDED.
pub fn isomorphic_groups(g1: &BieberbachGroupDesc, g2: &BieberbachGroupDesc) -> IsoVerdict {
    isomorphic_groups_with_budget(g1, g2, &SearchBudget::default())
}

pub fn isomorphic_groups_with_budget(
    g1: &BieberbachGroupDesc,
    g2: &BieberbachGroupDesc,
    budget: &SearchBudget,
) -> IsoVerdict {
    assert_eq!(g1.dim(), g2.dim(), "dimension mismatch");
    let m = g1.holonomy_order();
    if m != g2.holonomy_order() {
        return IsoVerdict::No {
            witness: format!("holonomy order {} vs {}", m, g2.holonomy_order()),
        };
    }
    let f1 = class_fingerprint(g1.rep(), g1.class_vector());
    let f2 = class_fingerprint(g2.rep(), g2.class_vector());
    if f1 != f2 {
        return IsoVerdict::No {
            witness: format!(
                "abelianization/restriction fingerprint {:?} vs {:?}",
                f1, f2
            ),
        };
    }
    let h2 = tate_h0(g2.rep());
    let gens2 = symmetry_generators_with_budget(g2.rep(), budget);
    let t2 = h2.reduce(g2.class_vector());
    let mut class_missed = false;
    let mut lattice_undecided = false;
    for j in 1..=m.max(1) {
        if j.gcd(&m.max(1)) != 1 {
            continue;
        }
        match zequivalent_with_budget(g1.rep(), &g2.rep().galois_twist(j), budget) {
            EquivalenceVerdict::Yes { certificate: x0 } => {
                let start = h2.reduce(&x0.mul_vec(g1.class_vector()));
                let target = scale_class(&h2, &t2, j);
                let orbit = explore_orbit(&h2, &gens2, m, &start);
                if let Some((c, kappa)) = orbit.get(&target) {
                    // target = [kappa⁻¹·C·X₀·v₁] = [j·v₂], so the composed
                    // map conjugates with total twist kappa·j
                    let conj = AffineConjugacy {
                        x: c * &x0,
                        twist: mul_twist(*kappa, j, m),
                    };
                    assert!(verify_conjugacy(g1, g2, &conj));
                    return IsoVerdict::Yes { conjugacy: conj };
                }
                class_missed = true;
            }
            EquivalenceVerdict::No { .. } => {}
            EquivalenceVerdict::Undecided { .. } => lattice_undecided = true,
        }
    }
    if class_missed || lattice_undecided {
        // last resort before giving up: homomorphism counts into small
        // nonabelian groups see extension data the fingerprint misses
        let p1 = crate::homs::hom_profile(g1.rep().generator(), m, g1.class_vector());
        let p2 = crate::homs::hom_profile(g2.rep().generator(), m, g2.class_vector());
        if p1 != p2 {
            return IsoVerdict::No {
                witness: format!(
                    "homomorphism counts into {:?} differ: {:?} vs {:?}",
                    crate::homs::target_names(),
                    p1,
                    p2
                ),
            };
        }
        IsoVerdict::Undecided {
            detail: String::from(
                "lattices conjugate for some twist but no class match found within the generated symmetries",
            ),
        }
    } else {
        IsoVerdict::No {
            witness: String::from("no unit twist conjugates the holonomy representations"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::enumerate_special;
    use crate::exact_linalg::conjugate_by_basis;
    use crate::qclass::QClassDecomposition;
    use crate::zclass::standard_lattice_rep;

    fn rep(m: u64, pairs: &[(u64, u32)], g: IntMatrix) -> LatticeRep {
        LatticeRep::new(m, g, QClassDecomposition::new(m, pairs.to_vec()))
    }

    fn klein_module() -> LatticeRep {
        rep(2, &[(1, 1), (2, 1)], IntMatrix::diag(&[1, -1]))
    }

    #[test]
    fn sign_module_symmetries() {
        let r = klein_module();
        let gens = symmetry_generators(&r);
        let mats: Vec<&IntMatrix> = gens.iter().map(|s| s.matrix()).collect();
        let want = [
            IntMatrix::diag(&[-1, -1]),
            IntMatrix::diag(&[1, -1]),
            IntMatrix::diag(&[-1, 1]),
        ];
        for w in &want {
            assert!(mats.contains(&w), "missing {:?}", w);
        }
        assert!(gens.iter().all(|s| s.twist() == 1));
    }

    #[test]
    fn galois_element_inverts_order_four_generator() {
        let r = rep(4, &[(4, 1)], companion_matrix(4));
        let gens = symmetry_generators(&r);
        let gal: Vec<&SymmetryElement> = gens.iter().filter(|s| s.twist() == 3).collect();
        assert!(!gal.is_empty(), "no Galois element for k=3");
        // relation already verified at construction; check the action again
        let x = gal[0].matrix();
        assert_eq!(
            &(x * r.generator()),
            &(&r.generator().pow(3) * x)
        );
    }

    #[test]
    fn trivial_holonomy_gets_lattice_symmetries() {
        let r = rep(1, &[(1, 2)], IntMatrix::identity(2));
        let gens = symmetry_generators(&r);
        let swap = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(gens.iter().any(|s| s.matrix() == &swap), "no block swap");
        assert!(
            gens.iter()
                .any(|s| !s.matrix().is_identity()
                    && s.matrix()[(0, 0)].is_one()
                    && s.matrix()[(1, 1)].is_one()),
            "no shear"
        );
    }

    #[test]
    fn seventh_root_classes_merge_to_one() {
        let r = standard_lattice_rep(&QClassDecomposition::new(7, alloc::vec![(1, 1), (7, 1)]));
        let specials = enumerate_special(&r);
        assert_eq!(specials.len(), 6);
        let (reps, exact) = orbit_reduce(&r, &specials);
        assert_eq!(reps, alloc::vec![alloc::vec![BigInt::one()]]);
        assert_eq!(exact, Exactness::Certified);
    }

    #[test]
    fn single_class_modules_reduce_to_one() {
        let t2 = rep(2, &[(1, 1)], IntMatrix::identity(1));
        let (reps, exact) = orbit_reduce(&t2, &enumerate_special(&t2));
        assert_eq!(reps.len(), 1);
        assert_eq!(exact, Exactness::Certified);
        let k = klein_module();
        let (reps, exact) = orbit_reduce(&k, &enumerate_special(&k));
        assert_eq!(reps, alloc::vec![alloc::vec![BigInt::one()]]);
        assert_eq!(exact, Exactness::Certified);
    }

    #[test]
    fn twist_merges_classes_one_and_three_mod_four() {
        let r = rep(4, &[(1, 1)], IntMatrix::identity(1));
        let specials = enumerate_special(&r);
        assert_eq!(specials.len(), 2);
        let (reps, _) = orbit_reduce(&r, &specials);
        assert_eq!(reps, alloc::vec![alloc::vec![BigInt::one()]]);
    }

    #[test]
    fn orbit_partition_is_generator_order_independent() {
        let r = standard_lattice_rep(&QClassDecomposition::new(7, alloc::vec![(1, 1), (7, 1)]));
        let h2 = tate_h0(&r);
        let mut gens = symmetry_generators(&r);
        let fwd = explore_orbit(&h2, &gens, 7, &[BigInt::one()]);
        gens.reverse();
        let rev = explore_orbit(&h2, &gens, 7, &[BigInt::one()]);
        let a: Vec<_> = fwd.keys().cloned().collect();
        let b: Vec<_> = rev.keys().cloned().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn orbit_certificates_are_sound() {
        let r = standard_lattice_rep(&QClassDecomposition::new(7, alloc::vec![(1, 1), (7, 1)]));
        let h2 = tate_h0(&r);
        let gens = symmetry_generators(&r);
        let seed = alloc::vec![BigInt::one()];
        let seed_desc = build_extension(&r, &h2.lift(&seed), false).unwrap();
        for (t, (c, kappa)) in explore_orbit(&h2, &gens, 7, &seed) {
            let member = build_extension(&r, &h2.lift(&t), false).unwrap();
            let conj = AffineConjugacy {
                x: c,
                twist: kappa,
            };
            assert!(verify_conjugacy(&seed_desc, &member, &conj), "class {:?}", t);
        }
    }

    #[test]
    fn rebased_klein_bottle_is_isomorphic() {
        let k = klein_module();
        let v = alloc::vec![BigInt::one(), BigInt::zero()];
        let g1 = build_extension(&k, &v, false).unwrap();
        let b = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let g2gen = conjugate_by_basis(k.generator(), &b).unwrap();
        let k2 = rep(2, &[(1, 1), (2, 1)], g2gen);
        let v2 = crate::exact_linalg::inverse_unimodular(&b).mul_vec(&v);
        let g2 = build_extension(&k2, &v2, false).unwrap();
        match isomorphic_groups(&g1, &g2) {
            IsoVerdict::Yes { conjugacy } => assert!(verify_conjugacy(&g1, &g2, &conjugacy)),
            other => panic!("expected yes, got {:?}", other),
        }
    }

    #[test]
    fn klein_bottle_and_torus_differ() {
        let k = klein_module();
        let g1 = build_extension(&k, &[BigInt::one(), BigInt::zero()], false).unwrap();
        let t = rep(1, &[(1, 2)], IntMatrix::identity(2));
        let g2 = build_extension(&t, &[BigInt::zero(), BigInt::zero()], false).unwrap();
        match isomorphic_groups(&g1, &g2) {
            IsoVerdict::No { witness } => assert!(witness.contains("holonomy order")),
            other => panic!("expected no, got {:?}", other),
        }
    }

    #[test]
    fn same_order_groups_separated_by_invariants() {
        // dim 3, m = 2: diag(1,1,-1) with class (1,0,0) against
        // diag(1,-1,-1) with class (1,0,0); different Q-classes, so the
        // fingerprint must already separate them
        let r1 = rep(2, &[(1, 2), (2, 1)], IntMatrix::diag(&[1, 1, -1]));
        let r2 = rep(2, &[(1, 1), (2, 2)], IntMatrix::diag(&[1, -1, -1]));
        let v = alloc::vec![BigInt::one(), BigInt::zero(), BigInt::zero()];
        let g1 = build_extension(&r1, &v, false).unwrap();
        let g2 = build_extension(&r2, &v, false).unwrap();
        assert!(isomorphic_groups(&g1, &g2).is_no());
    }
}
