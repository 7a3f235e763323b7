//! Rational equivalence classes of cyclic-group representations.
//!
//! Over the rationals a representation of Z/m decomposes as a direct sum of
//! the irreducibles rho_d, one for each divisor d of m, so a Q-class is the
//! multiset of multiplicities {(d, a_d)} with total degree
//! sum a_d * phi(d). It is faithful exactly when the d with a_d > 0 have
//! least common multiple m.

use alloc::vec::Vec;

use num_integer::Integer;

use crate::cyclotomic::{divisors, euler_phi};

// `bieberbach_orders` (the admissible orders actually realized by a
// torsion-free extension) lives in `catalog` because it composes the whole
// pipeline; re-exported here next to `admissible_orders`, its upper bound.
pub use crate::catalog::bieberbach_orders;

/// Multiset {(d, a_d)} of divisor/multiplicity pairs for a representation
/// of Z/m. Pairs are sorted by d ascending and carry a_d >= 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QClassDecomposition {
    m: u64,
    pairs: Vec<(u64, u32)>,
}

impl QClassDecomposition {
    pub fn new(m: u64, pairs: Vec<(u64, u32)>) -> Self {
        assert!(m >= 1);
        for w in pairs.windows(2) {
            assert!(w[0].0 < w[1].0, "pairs must be sorted by divisor, distinct");
        }
        for &(d, a) in &pairs {
            assert!(d >= 1 && m % d == 0, "divisor {} does not divide {}", d, m);
            assert!(a >= 1, "zero multiplicity for divisor {}", d);
        }
        QClassDecomposition { m, pairs }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// Total degree sum a_d * phi(d).
    pub fn dim(&self) -> usize {
        self.pairs
            .iter()
            .map(|&(d, a)| euler_phi(d) as usize * a as usize)
            .sum()
    }

    /// Faithful iff lcm of the participating divisors is m.
    pub fn is_faithful(&self) -> bool {
        let l = self.pairs.iter().fold(1u64, |acc, &(d, _)| acc.lcm(&d));
        l == self.m
    }

    pub fn multiplicity(&self, d: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(dd, _)| dd == d)
            .map_or(0, |&(_, a)| a)
    }
}

/// All Q-classes of Z/m in the given dimension: multisets over divisors d
/// of m with phi(d) <= dim and phi-weighted sum exactly dim. With
/// `faithful_only`, keeps those with lcm of divisors equal to m.
/// Output sorted lexicographically; exhaustive and duplicate-free.
pub fn enumerate_qclasses(dim: usize, m: u64, faithful_only: bool) -> Vec<QClassDecomposition> {
    assert!(dim >= 1 && m >= 1);
    let ds: Vec<u64> = divisors(m)
        .into_iter()
        .filter(|&d| euler_phi(d) as usize <= dim)
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<(u64, u32)> = Vec::new();
    fill(dim, &ds, 0, &mut current, &mut out, m);
    if faithful_only {
        out.retain(QClassDecomposition::is_faithful);
    }
    out.sort();
    out
}

fn fill(
    remaining: usize,
    ds: &[u64],
    next: usize,
    current: &mut Vec<(u64, u32)>,
    out: &mut Vec<QClassDecomposition>,
    m: u64,
) {
    if remaining == 0 {
        out.push(QClassDecomposition::new(m, current.clone()));
        return;
    }
    if next == ds.len() {
        return;
    }
    let d = ds[next];
    let w = euler_phi(d) as usize;
    // multiplicity 0 first, then 1..max
    fill(remaining, ds, next + 1, current, out, m);
    for a in 1..=(remaining / w) as u32 {
        current.push((d, a));
        fill(remaining - w * a as usize, ds, next + 1, current, out, m);
        current.pop();
    }
}

/// All orders m admitting a faithful representation of Z/m in the given
/// dimension, i.e. those with a nonempty faithful Q-class list. The scan
/// bound is the product over primes p of the largest p^e with
/// phi(p^e) <= dim, since every prime power dividing an admissible order
/// must itself have phi at most dim.
pub fn admissible_orders(dim: usize) -> Vec<u64> {
    assert!(dim >= 1);
    let mut bound = 1u64;
    let mut p = 2u64;
    while (p - 1) as usize <= dim {
        let mut pe = p;
        while euler_phi(pe * p) as usize <= dim {
            pe *= p;
        }
        bound *= pe;
        p = next_prime(p);
    }
    (1..=bound)
        .filter(|&m| bound % m == 0)
        .filter(|&m| !enumerate_qclasses(dim, m, true).is_empty())
        .collect()
}

fn next_prime(p: u64) -> u64 {
    let mut q = p + 1;
    loop {
        if (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0) {
            return q;
        }
        q += 1;
    }
}
