//! The classification pipeline end to end, and the catalog it produces.
//!
//! For one holonomy order the pipeline runs three steps: enumerate faithful
//! rational classes of the given dimension, enumerate integral classes
//! inside each rational class by centering closure, then reduce the special
//! cohomology classes of each integral class to isomorphism classes of
//! torsion-free extensions. Integral classes conjugate to a coprime power
//! of another are merged first, since a group never distinguishes its
//! holonomy generator from a generator power. Every entry carries a name
//! that encodes the order, the rational class, the integral class and the
//! group index, and parses back to the same data.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::classify::{orbit_reduce_with_budget, Exactness};
use crate::cohomology::{
    abelianization, build_extension, enumerate_special, is_special, subgroup_cohomology, tate_h0,
    torsion_check, BieberbachGroupDesc,
};
use crate::cyclotomic::{divisors, euler_phi, is_prime};
use crate::qclass::{admissible_orders, enumerate_qclasses, QClassDecomposition};
use crate::zclass::{
    centering_closure_with_budget, prime_order_zclasses, zequivalent_with_budget,
    EquivalenceVerdict, LatticeRep, SearchBudget,
};

/// Version stamp for persisted catalogs.
pub const SCHEMA_VERSION: u32 = 1;

/// Parsed form of a catalog name
/// `m/m.a1xf1_b1+...+alxfl_bl.p.q.r`: m is the holonomy order (twice), the
/// middle section lists the rational class as multiplicity x degree _
/// divisor with divisors strictly descending and f = phi(b), p.q indexes
/// the integral class (centering depth, then position within that depth)
/// and r numbers the group within the integral class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupName {
    m: u64,
    /// (multiplicity, divisor) pairs, divisors strictly descending.
    pairs: Vec<(u32, u64)>,
    p: u32,
    q: u32,
    r: u32,
}

impl GroupName {
    pub fn new(qclass: &QClassDecomposition, p: u32, q: u32, r: u32) -> Self {
        assert!(p >= 1 && q >= 1 && r >= 1, "indices are 1-based");
        let mut pairs: Vec<(u32, u64)> = qclass.pairs().iter().map(|&(d, a)| (a, d)).collect();
        pairs.reverse();
        GroupName {
            m: qclass.m(),
            pairs,
            p,
            q,
            r,
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// (multiplicity, divisor) pairs in emission order (divisor descending).
    pub fn pairs(&self) -> &[(u32, u64)] {
        &self.pairs
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.pairs
            .iter()
            .map(|&(a, b)| a as usize * euler_phi(b) as usize)
            .sum()
    }

    /// The rational class the name encodes, in canonical ascending order.
    pub fn qclass(&self) -> QClassDecomposition {
        let mut pairs: Vec<(u64, u32)> = self.pairs.iter().map(|&(a, b)| (b, a)).collect();
        pairs.reverse();
        QClassDecomposition::new(self.m, pairs)
    }

    /// Parse a name back to its structured form; the error names the part
    /// of the grammar that failed.
    pub fn parse(s: &str) -> Result<GroupName, String> {
        let (head, rest) = s
            .split_once('/')
            .ok_or_else(|| String::from("name: missing '/' after the order"))?;
        let m: u64 = head
            .parse()
            .map_err(|_| format!("name: order before '/' not a number: {:?}", head))?;
        let tokens: Vec<&str> = rest.split('.').collect();
        if tokens.len() != 5 {
            return Err(format!(
                "name: expected order.qclass.p.q.r after '/', got {} dot-separated parts",
                tokens.len()
            ));
        }
        let m2: u64 = tokens[0]
            .parse()
            .map_err(|_| format!("name: order after '/' not a number: {:?}", tokens[0]))?;
        if m2 != m {
            return Err(format!("name: order mismatch {} vs {}", m, m2));
        }
        let mut pairs = Vec::new();
        for part in tokens[1].split('+') {
            let (a_str, tail) = part
                .split_once('x')
                .ok_or_else(|| format!("name: pair {:?} missing 'x'", part))?;
            let (f_str, b_str) = tail
                .split_once('_')
                .ok_or_else(|| format!("name: pair {:?} missing '_'", part))?;
            let a: u32 = a_str
                .parse()
                .map_err(|_| format!("name: multiplicity in {:?} not a number", part))?;
            let f: u64 = f_str
                .parse()
                .map_err(|_| format!("name: degree in {:?} not a number", part))?;
            let b: u64 = b_str
                .parse()
                .map_err(|_| format!("name: divisor in {:?} not a number", part))?;
            if a == 0 || b == 0 {
                return Err(format!("name: zero multiplicity or divisor in {:?}", part));
            }
            if f != euler_phi(b) {
                return Err(format!(
                    "name: degree {} in {:?} is not phi({}) = {}",
                    f,
                    part,
                    b,
                    euler_phi(b)
                ));
            }
            pairs.push((a, b));
        }
        for w in pairs.windows(2) {
            if w[0].1 <= w[1].1 {
                return Err(String::from("name: divisors not strictly descending"));
            }
        }
        let lcm = pairs.iter().fold(1u64, |acc, &(_, b)| acc.lcm(&b));
        if lcm != m {
            return Err(format!("name: divisor lcm {} differs from order {}", lcm, m));
        }
        let p: u32 = tokens[2]
            .parse()
            .map_err(|_| format!("name: p index not a number: {:?}", tokens[2]))?;
        let q: u32 = tokens[3]
            .parse()
            .map_err(|_| format!("name: q index not a number: {:?}", tokens[3]))?;
        let r: u32 = tokens[4]
            .parse()
            .map_err(|_| format!("name: r index not a number: {:?}", tokens[4]))?;
        if p == 0 || q == 0 || r == 0 {
            return Err(String::from("name: p, q, r are 1-based"));
        }
        Ok(GroupName { m, pairs, p, q, r })
    }
}

impl core::fmt::Display for GroupName {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}/{}.", self.m, self.m)?;
        for (i, &(a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}x{}_{}", a, euler_phi(b), b)?;
        }
        write!(f, ".{}.{}.{}", self.p, self.q, self.r)
    }
}

impl core::str::FromStr for GroupName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupName::parse(s)
    }
}

/// One classified group: its name, the explicit extension data, and the
/// isomorphism invariants that witness its separation from neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: GroupName,
    pub group: BieberbachGroupDesc,
    /// Rank of the abelianization.
    pub rank: usize,
    /// Torsion invariant factors of the abelianization.
    pub torsion: Vec<BigInt>,
    /// Additive order of the class restricted to each subgroup, keyed by
    /// subgroup order.
    pub restrictions: Vec<(u64, BigInt)>,
    pub exactness: Exactness,
    /// Always true in the default pipeline; false only for the extra
    /// entries of a torsion-allowing run.
    pub torsion_free: bool,
}

/// The full output of a classification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub schema: u32,
    pub dim: usize,
    /// Holonomy orders actually processed, ascending.
    pub orders: Vec<u64>,
    pub budget: SearchBudget,
    /// Whether classes with torsion extensions were admitted (oracle mode).
    pub allow_torsion: bool,
    /// Sorted by (order, rational class, p, q, r); unique by name.
    pub entries: Vec<CatalogEntry>,
    /// Everything the run could not settle: undecided pairings and orbit
    /// counts that are only upper bounds.
    pub diagnostics: Vec<String>,
}

impl Catalog {
    pub fn is_fully_certified(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.exactness == Exactness::Certified)
    }

    /// Entry count per holonomy order, ascending by order.
    pub fn counts_by_order(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for e in &self.entries {
            match out.last_mut() {
                Some((m, c)) if *m == e.name.m() => *c += 1,
                _ => out.push((e.name.m(), 1)),
            }
        }
        out
    }
}

/// The canonical name of an entry.
pub fn name_entry(entry: &CatalogEntry) -> String {
    entry.name.to_string()
}

fn qclass_label(q: &QClassDecomposition) -> String {
    let mut s = String::new();
    for (i, &(d, a)) in q.pairs().iter().rev().enumerate() {
        if i > 0 {
            s.push('+');
        }
        s += &format!("{}x{}_{}", a, euler_phi(d), d);
    }
    s
}

/// Merge integral classes whose generators are conjugate up to a coprime
/// power: returns for each class the index of its orbit representative.
/// Pairings the search cannot settle are reported and left unmerged, so an
/// unsettled pairing can only split one group over two entries, never lose
/// or conflate groups silently.
fn twist_orbits(
    classes: &[LatticeRep],
    m: u64,
    budget: &SearchBudget,
    diagnostics: &mut Vec<String>,
    context: &str,
) -> Vec<usize> {
    let z = classes.len();
    let mut rep_of: Vec<usize> = (0..z).collect();
    for i in 0..z {
        if rep_of[i] != i {
            continue;
        }
        for j in (i + 1)..z {
            if rep_of[j] != j {
                continue;
            }
            'units: for k in 2..m {
                if k.gcd(&m) != 1 {
                    continue;
                }
                match zequivalent_with_budget(&classes[j], &classes[i].galois_twist(k), budget) {
                    EquivalenceVerdict::Yes { .. } => {
                        rep_of[j] = i;
                        break 'units;
                    }
                    EquivalenceVerdict::No { .. } => {}
                    EquivalenceVerdict::Undecided { detail } => {
                        diagnostics.push(format!(
                            "{}: twist pairing of integral classes {} and {} undecided at k={}: {}",
                            context,
                            i + 1,
                            j + 1,
                            k,
                            detail
                        ));
                    }
                }
            }
        }
    }
    rep_of
}

/// Classify one holonomy order in one dimension. Returns entries in
/// canonical order plus diagnostics. With `allow_torsion` every cohomology
/// class is kept, not only the special ones, so the output covers all
/// extensions including those with torsion (oracle mode).
pub fn classify_order(
    dim: usize,
    m: u64,
    budget: &SearchBudget,
    allow_torsion: bool,
) -> (Vec<CatalogEntry>, Vec<String>) {
    let mut entries = Vec::new();
    let mut diagnostics = Vec::new();
    for qclass in enumerate_qclasses(dim, m, true) {
        let context = format!("dim {} order {} qclass {}", dim, m, qclass_label(&qclass));
        let closure = centering_closure_with_budget(&qclass, budget);
        for d in &closure.diagnostics {
            diagnostics.push(format!("{}: {}", context, d));
        }
        // p.q per integral class: centering depth + 1, then position among
        // classes of the same depth in discovery order
        let pq: Vec<(u32, u32)> = closure
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let p = c.depth() as u32 + 1;
                let q = closure.classes[..i]
                    .iter()
                    .filter(|other| other.depth() == c.depth())
                    .count() as u32
                    + 1;
                (p, q)
            })
            .collect();
        let rep_of = twist_orbits(&closure.classes, m, budget, &mut diagnostics, &context);
        for (i, zrep) in closure.classes.iter().enumerate() {
            if rep_of[i] != i {
                continue;
            }
            let h2 = tate_h0(zrep);
            let classes = if allow_torsion {
                h2.elements()
            } else {
                enumerate_special(zrep)
            };
            if classes.is_empty() {
                continue;
            }
            let (class_reps, exactness) = orbit_reduce_with_budget(zrep, &classes, budget);
            if exactness == Exactness::UpperBound {
                diagnostics.push(format!(
                    "{} zclass {}.{}: orbit count {} is an upper bound; some representatives share all invariants",
                    context,
                    pq[i].0,
                    pq[i].1,
                    class_reps.len()
                ));
            }
            for (ri, t) in class_reps.iter().enumerate() {
                let v = h2.lift(t);
                let mut group = build_extension(zrep, &v, allow_torsion)
                    .expect("special classes build torsion-free extensions");
                let name = GroupName::new(&qclass, pq[i].0, pq[i].1, ri as u32 + 1);
                group.set_name(name.to_string());
                let (rank, torsion) = abelianization(&group);
                let restrictions: Vec<(u64, BigInt)> = divisors(m)
                    .into_iter()
                    .filter(|&q| q > 1)
                    .map(|q| {
                        let h = subgroup_cohomology(zrep, q);
                        (q, h.class_order(&h.reduce(&v)))
                    })
                    .collect();
                let torsion_free = if allow_torsion {
                    torsion_check(&group).is_torsion_free()
                } else {
                    true
                };
                entries.push(CatalogEntry {
                    name,
                    group,
                    rank,
                    torsion,
                    restrictions,
                    exactness,
                    torsion_free,
                });
            }
        }
    }
    (entries, diagnostics)
}

/// Orders to process for a dimension: the admissible list, optionally
/// intersected with a caller-provided filter.
fn order_list(dim: usize, orders: Option<&[u64]>) -> Vec<u64> {
    let all = admissible_orders(dim);
    match orders {
        None => all,
        Some(filter) => all.into_iter().filter(|m| filter.contains(m)).collect(),
    }
}

/// Run the full pipeline for a dimension.
pub fn classify_all(dim: usize, orders: Option<&[u64]>) -> Catalog {
    classify_all_with_budget(dim, orders, &SearchBudget::default(), false)
}

pub fn classify_all_with_budget(
    dim: usize,
    orders: Option<&[u64]>,
    budget: &SearchBudget,
    allow_torsion: bool,
) -> Catalog {
    assert!(dim >= 1, "dimension must be positive");
    let orders = order_list(dim, orders);
    let mut entries = Vec::new();
    let mut diagnostics = Vec::new();
    for &m in &orders {
        let (e, d) = classify_order(dim, m, budget, allow_torsion);
        entries.extend(e);
        diagnostics.extend(d);
    }
    assemble(dim, orders, budget, allow_torsion, entries, diagnostics)
}

/// Final catalog assembly: uniqueness check plus the header fields. Kept
/// separate so parallel drivers can merge per-order results themselves.
pub fn assemble(
    dim: usize,
    orders: Vec<u64>,
    budget: &SearchBudget,
    allow_torsion: bool,
    entries: Vec<CatalogEntry>,
    diagnostics: Vec<String>,
) -> Catalog {
    let names: BTreeSet<String> = entries.iter().map(|e| e.name.to_string()).collect();
    assert_eq!(names.len(), entries.len(), "catalog names must be unique");
    Catalog {
        schema: SCHEMA_VERSION,
        dim,
        orders,
        budget: *budget,
        allow_torsion,
        entries,
        diagnostics,
    }
}

/// The admissible orders actually realized by at least one torsion-free
/// extension in the dimension: some integral class admits a special class.
/// Computed by running the enumeration, never hard-coded.
pub fn bieberbach_orders(dim: usize) -> Vec<u64> {
    bieberbach_orders_with_budget(dim, &SearchBudget::default())
}

pub fn bieberbach_orders_with_budget(dim: usize, budget: &SearchBudget) -> Vec<u64> {
    assert!(dim >= 1);
    admissible_orders(dim)
        .into_iter()
        .filter(|&m| {
            enumerate_qclasses(dim, m, true).iter().any(|qclass| {
                centering_closure_with_budget(qclass, budget)
                    .classes
                    .iter()
                    .any(|zrep| !enumerate_special(zrep).is_empty())
            })
        })
        .collect()
}

/// One named check of the verification suite.
#[derive(Clone, Debug)]
pub struct VerificationCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of the cross-oracle suite.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub checks: Vec<VerificationCheck>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(report: &mut VerificationReport, name: String, passed: bool, detail: String) {
    report.checks.push(VerificationCheck {
        name,
        passed,
        detail,
    });
}

/// Every integral class of the dimension, across all orders and rational
/// classes, paired with its ambient order's context label.
fn all_zclasses(dim: usize, budget: &SearchBudget) -> Vec<(String, LatticeRep)> {
    let mut out = Vec::new();
    for m in admissible_orders(dim) {
        for qclass in enumerate_qclasses(dim, m, true) {
            let context = format!("dim {} order {} qclass {}", dim, m, qclass_label(&qclass));
            for zrep in centering_closure_with_budget(&qclass, budget).classes {
                out.push((context.clone(), zrep));
            }
        }
    }
    out
}

/// Cross-oracle suite for one dimension list:
/// - special-class test vs exact torsion check, over every class of every
///   integral class (dims up to 4 by default cost, any dim accepted);
/// - centering closure vs the prime-order structure oracle, with
///   certificate-checked bijective matching;
/// - pipeline counts vs the brute-force pairwise isomorphism partition of
///   all built extensions (dims up to 3);
/// - name grammar round-trip over the produced catalog.
pub fn verify(dims: &[usize], budget: &SearchBudget) -> VerificationReport {
    let mut report = VerificationReport { checks: Vec::new() };
    for &dim in dims {
        verify_dim(dim, budget, &mut report);
    }
    report
}

fn verify_dim(dim: usize, budget: &SearchBudget, report: &mut VerificationReport) {
    // 1. special <-> torsion-free, every class of every integral class
    let mut checked = 0usize;
    let mut failure: Option<String> = None;
    'outer: for (context, zrep) in all_zclasses(dim, budget) {
        let h2 = tate_h0(&zrep);
        for t in h2.elements() {
            let v = h2.lift(&t);
            let special = is_special(&zrep, &v);
            let group = build_extension(&zrep, &v, true).expect("fixed class lifts");
            let torsion_free = torsion_check(&group).is_torsion_free();
            checked += 1;
            if special != torsion_free {
                failure = Some(format!(
                    "{}: class {:?} special={} torsion_free={}",
                    context, t, special, torsion_free
                ));
                break 'outer;
            }
        }
    }
    check(
        report,
        format!("dim {}: special class iff torsion-free", dim),
        failure.is_none(),
        failure.unwrap_or_else(|| format!("{} classes agree", checked)),
    );

    // 2. centering closure vs prime-order structure oracle
    for p in [2u64, 3, 5, 7] {
        if !is_prime(p) || euler_phi(p) as usize > dim {
            continue;
        }
        match prime_order_zclasses(p, dim) {
            Ok(oracle) => {
                let mut pipeline: Vec<LatticeRep> = Vec::new();
                for qclass in enumerate_qclasses(dim, p, true) {
                    pipeline.extend(centering_closure_with_budget(&qclass, budget).classes);
                }
                let (passed, detail) = match_classes(&pipeline, &oracle, budget);
                check(
                    report,
                    format!("dim {}: closure matches prime oracle p={}", dim, p),
                    passed,
                    detail,
                );
            }
            Err(e) => check(
                report,
                format!("dim {}: closure matches prime oracle p={}", dim, p),
                false,
                format!("oracle unavailable: {}", e),
            ),
        }
    }

    // 3. pipeline vs brute-force pairwise isomorphism partition
    if dim <= 3 {
        let catalog = classify_all_with_budget(dim, None, budget, false);
        let (passed, detail) = brute_force_partition_check(dim, &catalog, budget);
        check(
            report,
            format!("dim {}: pipeline count matches brute-force partition", dim),
            passed,
            detail,
        );
        let grammar_ok = catalog.entries.iter().all(|e| {
            GroupName::parse(&e.name.to_string()).as_ref() == Ok(&e.name)
                && e.name.dim() == dim
                && e.name.m() == e.group.holonomy_order()
        });
        check(
            report,
            format!("dim {}: names round-trip", dim),
            grammar_ok,
            format!("{} entries", catalog.entries.len()),
        );
    }
}

/// Bijective matching of two class lists under zequivalent: every left
/// class matches exactly one right class and vice versa.
fn match_classes(
    left: &[LatticeRep],
    right: &[LatticeRep],
    budget: &SearchBudget,
) -> (bool, String) {
    if left.len() != right.len() {
        return (
            false,
            format!("count mismatch: {} vs {}", left.len(), right.len()),
        );
    }
    let mut taken = alloc::vec![false; right.len()];
    for (i, l) in left.iter().enumerate() {
        let mut hit = None;
        for (j, r) in right.iter().enumerate() {
            if taken[j] {
                continue;
            }
            if let EquivalenceVerdict::Yes { .. } = zequivalent_with_budget(l, r, budget) {
                hit = Some(j);
                break;
            }
        }
        match hit {
            Some(j) => taken[j] = true,
            None => return (false, format!("class {} has no unmatched partner", i + 1)),
        }
    }
    (true, format!("{} classes matched bijectively", left.len()))
}

/// Build every extension from every special class of every integral class,
/// partition them by the pairwise isomorphism test, and compare the
/// component count and holonomy-order multiset with the catalog.
fn brute_force_partition_check(
    dim: usize,
    catalog: &Catalog,
    budget: &SearchBudget,
) -> (bool, String) {
    let mut groups: Vec<BieberbachGroupDesc> = Vec::new();
    for (_, zrep) in all_zclasses(dim, budget) {
        let h2 = tate_h0(&zrep);
        for t in enumerate_special(&zrep) {
            let v = h2.lift(&t);
            groups.push(build_extension(&zrep, &v, false).expect("special"));
        }
    }
    // union-find over pairwise verdicts; any undecided pair fails the check
    let mut root: Vec<usize> = (0..groups.len()).collect();
    fn find(root: &mut Vec<usize>, mut i: usize) -> usize {
        while root[i] != i {
            root[i] = root[root[i]];
            i = root[i];
        }
        i
    }
    for i in 0..groups.len() {
        for j in (i + 1)..groups.len() {
            match crate::classify::isomorphic_groups_with_budget(&groups[i], &groups[j], budget) {
                crate::classify::IsoVerdict::Yes { .. } => {
                    let (a, b) = (find(&mut root, i), find(&mut root, j));
                    if a != b {
                        root[a] = b;
                    }
                }
                crate::classify::IsoVerdict::No { .. } => {}
                crate::classify::IsoVerdict::Undecided { detail } => {
                    return (false, format!("pair ({}, {}) undecided: {}", i, j, detail));
                }
            }
        }
    }
    let mut component_orders: Vec<u64> = Vec::new();
    for i in 0..groups.len() {
        if find(&mut root, i) == i {
            component_orders.push(groups[i].holonomy_order());
        }
    }
    component_orders.sort_unstable();
    let mut catalog_orders: Vec<u64> = catalog.entries.iter().map(|e| e.name.m()).collect();
    catalog_orders.sort_unstable();
    if component_orders != catalog_orders {
        return (
            false,
            format!(
                "partition orders {:?} vs catalog orders {:?}",
                component_orders, catalog_orders
            ),
        );
    }
    (
        true,
        format!(
            "{} groups in {} isomorphism classes",
            groups.len(),
            component_orders.len()
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn names_print_and_parse() {
        let q = QClassDecomposition::new(7, vec![(1, 1), (7, 1)]);
        let name = GroupName::new(&q, 1, 1, 1);
        assert_eq!(name.to_string(), "7/7.1x6_7+1x1_1.1.1.1");
        let back = GroupName::parse("7/7.1x6_7+1x1_1.1.1.1").unwrap();
        assert_eq!(back, name);
        assert_eq!(back.dim(), 7);
        assert_eq!(back.qclass(), q);

        let torus7 = GroupName::new(&QClassDecomposition::new(1, vec![(1, 7)]), 1, 1, 1);
        assert_eq!(torus7.to_string(), "1/1.7x1_1.1.1.1");

        // divisors are emitted largest first
        let klein = GroupName::new(&QClassDecomposition::new(2, vec![(1, 1), (2, 1)]), 1, 1, 1);
        assert_eq!(klein.to_string(), "2/2.1x1_2+1x1_1.1.1.1");
    }

    #[test]
    fn malformed_names_are_rejected_with_field_context() {
        let cases = [
            ("7.1x6_7.1.1.1", "missing '/'"),
            ("7/7.1x6_7+1x1_1.1.1", "dot-separated"),
            ("7/6.1x6_7+1x1_1.1.1.1", "order mismatch"),
            ("7/7.1x5_7+1x1_1.1.1.1", "not phi"),
            ("7/7.1x1_1+1x6_7.1.1.1", "descending"),
            ("6/6.1x2_3+1x1_1.1.1.1", "lcm"),
            ("7/7.1x6_7+1x1_1.0.1.1", "1-based"),
        ];
        for (s, frag) in cases {
            let err = GroupName::parse(s).unwrap_err();
            assert!(err.contains(frag), "{:?} -> {:?}", s, err);
        }
    }

    #[test]
    fn circle_and_torus_catalogs() {
        let c1 = classify_all(1, None);
        assert_eq!(c1.entries.len(), 1);
        assert_eq!(c1.entries[0].name.to_string(), "1/1.1x1_1.1.1.1");
        assert_eq!(c1.entries[0].rank, 1);
        assert!(c1.is_fully_certified());
        assert!(c1.diagnostics.is_empty());

        let c2 = classify_all(2, None);
        let names: Vec<String> = c2.entries.iter().map(|e| e.name.to_string()).collect();
        assert_eq!(names, vec!["1/1.2x1_1.1.1.1", "2/2.1x1_2+1x1_1.1.1.1"]);
        assert!(c2.is_fully_certified());
        // Klein bottle invariants: abelianization Z + Z/2, class of order 2
        let klein = &c2.entries[1];
        assert_eq!((klein.rank, klein.torsion.clone()), (1, vec![BigInt::from(2)]));
        assert_eq!(klein.restrictions, vec![(2, BigInt::from(2))]);
    }

    #[test]
    fn dimension_three_has_the_seven_platycosms() {
        let c = classify_all(3, None);
        assert_eq!(c.entries.len(), 7, "{:?}", c.entries.iter().map(name_entry).collect::<Vec<_>>());
        let mut orders: Vec<u64> = c.entries.iter().map(|e| e.name.m()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 4, 6]);
        assert!(c.is_fully_certified(), "{:?}", c.diagnostics);
    }

    #[test]
    fn order_seven_in_dimension_seven() {
        let (entries, diagnostics) = classify_order(7, 7, &SearchBudget::default(), false);
        assert_eq!(entries.len(), 1, "{:?}", diagnostics);
        let e = &entries[0];
        assert_eq!(e.name.to_string(), "7/7.1x6_7+1x1_1.1.1.1");
        assert_eq!(e.exactness, Exactness::Certified);
        // the one group: abelianization Z + (Z/7), restriction order 7
        assert_eq!((e.rank, e.torsion.clone()), (1, vec![BigInt::from(7)]));
    }

    #[test]
    fn realized_orders_in_low_dimensions() {
        assert_eq!(bieberbach_orders(1), vec![1]);
        assert_eq!(bieberbach_orders(2), vec![1, 2]);
        assert_eq!(bieberbach_orders(3), vec![1, 2, 3, 4, 6]);
    }

    #[test]
    fn verification_suite_passes_low_dimensions() {
        let report = verify(&[1, 2], &SearchBudget::default());
        for c in &report.checks {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn counts_by_order_sums_to_total() {
        let c = classify_all(3, None);
        let sum: usize = c.counts_by_order().iter().map(|&(_, n)| n).sum();
        assert_eq!(sum, c.entries.len());
    }
}
