//! Strong blocker duality: posets in which `A** = A` for every antichain.
//!
//! A finite bounded poset has this property exactly when (i) inclusion of atom
//! sets implies order and (ii) every atom set has its complement realized by
//! some element. Equivalently it is a well-complemented induced subposet of a
//! Boolean lattice. The condition check is the production path; the
//! exhaustive antichain check is kept as an independent oracle.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::{subset_label, AtomSet, Poset};

/// Default element bound for exhaustive duality checking.
pub const DEFAULT_EXHAUSTIVE_ELEMENTS: usize = 16;
/// Default cap on the number of antichains enumerated by the exhaustive check.
pub const DEFAULT_ANTICHAIN_BUDGET: usize = 1_000_000;
/// Largest atom count accepted by [`enumerate_duality_posets`].
pub const MAX_ENUMERATION_ATOMS: usize = 5;
/// Largest poset handed to the backtracking involution search.
pub const DEFAULT_INVOLUTION_SEARCH_ELEMENTS: usize = 24;

/// Why the atom-set conditions fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualityViolation {
    /// `Λ(x) ⊆ Λ(y)` but not `x ≤ y`.
    AtomInclusion { x: usize, y: usize },
    /// No element has atom set `Λ ∖ Λ(x)`.
    MissingComplement { x: usize },
}

/// First violation of the atom-set conditions, scanning elements in id order.
pub fn strong_duality_violation(p: &Poset) -> Option<DualityViolation> {
    let m = p.len();
    for x in 0..m {
        for y in 0..m {
            if p.atoms_below(x).is_subset(p.atoms_below(y)) && !p.leq(x, y) {
                return Some(DualityViolation::AtomInclusion { x, y });
            }
        }
    }
    let by_atoms: HashMap<&AtomSet, usize> = (0..m).map(|x| (p.atoms_below(x), x)).collect();
    for x in 0..m {
        if !by_atoms.contains_key(&p.atoms_below(x).complement()) {
            return Some(DualityViolation::MissingComplement { x });
        }
    }
    None
}

pub fn check_strong_duality_conditions(p: &Poset) -> bool {
    strong_duality_violation(p).is_none()
}

/// An antichain with `A** ≠ A`, if any, found by enumerating all antichains.
pub fn find_duality_counterexample(
    p: &Poset,
    max_elements: usize,
    antichain_budget: usize,
) -> Result<Option<crate::poset::Antichain>> {
    if p.len() > max_elements {
        return Err(Error::TooLarge {
            what: "poset for exhaustive duality check",
            size: p.len() as u128,
            limit: max_elements as u128,
        });
    }
    for a in p.antichains(antichain_budget)? {
        if p.blocker(&p.blocker(&a)) != a {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// `A** = A` for every antichain, with the default size guards.
pub fn check_strong_duality_exhaustive(p: &Poset) -> Result<bool> {
    Ok(find_duality_counterexample(p, DEFAULT_EXHAUSTIVE_ELEMENTS, DEFAULT_ANTICHAIN_BUDGET)?.is_none())
}

/// Family of subsets of `{1..n}` given as bit masks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellComplementedFamily {
    ground_size: usize,
    members: Vec<u32>,
}

impl WellComplementedFamily {
    /// Validates the family: empty set, singletons and full set present and
    /// closed under complement.
    pub fn new(ground_size: usize, mut members: Vec<u32>) -> Result<Self> {
        if ground_size == 0 || ground_size > 31 {
            return Err(Error::OutOfRange(format!("ground size {ground_size}")));
        }
        let full = (1u32 << ground_size) - 1;
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&s| s & !full != 0) {
            return Err(Error::OutOfRange("member outside the ground set".into()));
        }
        let has = |s: u32| members.binary_search(&s).is_ok();
        if !has(0) || !has(full) || (0..ground_size).any(|i| !has(1 << i)) {
            return Err(Error::InvalidDeletion("family must contain the empty set, all singletons and the full set".into()));
        }
        if members.iter().any(|&s| !has(full & !s)) {
            return Err(Error::InvalidDeletion("family is not closed under complement".into()));
        }
        Ok(WellComplementedFamily { ground_size, members })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    /// The induced subposet of the Boolean lattice. Elements are in increasing
    /// mask order, so atom `i` is the singleton `{i + 1}`.
    pub fn to_poset(&self) -> Poset {
        let labels = self.members.iter().map(|&s| subset_label(s, self.ground_size)).collect();
        let members = &self.members;
        Poset::from_relation_trusted(labels, |x, y| members[x] & !members[y] == 0)
            .expect("well-complemented family is bounded")
    }
}

/// Removes the given complementary pairs `{S, [n] ∖ S}` from the Boolean
/// lattice on `{1..n}`; sets are bit masks with bit `i` for element `i + 1`.
pub fn build_well_complemented(n: usize, deleted_pairs: &[(u32, u32)]) -> Result<Poset> {
    Ok(well_complemented_family(n, deleted_pairs)?.to_poset())
}

pub fn well_complemented_family(n: usize, deleted_pairs: &[(u32, u32)]) -> Result<WellComplementedFamily> {
    if n == 0 || n > 20 {
        return Err(Error::OutOfRange(format!("ground size {n}")));
    }
    let full = (1u32 << n) - 1;
    let mut deleted = BitSet::new(1 << n);
    for &(s, t) in deleted_pairs {
        if s & !full != 0 || t & !full != 0 || s != full & !t {
            return Err(Error::InvalidDeletion(format!(
                "{} and {} are not complements in [{n}]",
                subset_label(s, n),
                subset_label(t, n)
            )));
        }
        let k = s.count_ones() as usize;
        if k < 2 || k + 2 > n {
            return Err(Error::InvalidDeletion(format!(
                "{} has forbidden cardinality {k}",
                subset_label(s, n)
            )));
        }
        deleted.insert(s as usize);
        deleted.insert(t as usize);
    }
    let members = (0..=full).filter(|&s| !deleted.contains(s as usize)).collect();
    WellComplementedFamily::new(n, members)
}

/// `2^(2^(n-1) - n - 1)`: labeled posets with strong duality on `n` atoms.
/// For `n = 2` only the Boolean lattice qualifies and the count is 1.
pub fn count_labeled_duality_posets(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n}, need n >= 2")));
    }
    if n > 64 {
        return Err(Error::TooLarge {
            what: "atom count",
            size: n as u128,
            limit: 64,
        });
    }
    let exponent = ((1u128 << (n - 1)) - 1).saturating_sub(n as u128);
    let exponent = usize::try_from(exponent).map_err(|_| Error::TooLarge {
        what: "count exponent",
        size: exponent,
        limit: usize::MAX as u128,
    })?;
    Ok(BigUint::from(1u8) << exponent)
}

/// Representatives `S ∋ 1` of the complementary pairs that may be deleted.
fn deletable_pairs(n: usize) -> Vec<(u32, u32)> {
    let full = (1u32 << n) - 1;
    (0..=full)
        .filter(|&s| s & 1 == 1)
        .filter(|&s| {
            let k = s.count_ones() as usize;
            k >= 2 && k + 2 <= n
        })
        .map(|s| (s, full & !s))
        .collect()
}

/// Every labeled strong-duality poset on `n` atoms, one per subset of
/// deletable complementary pairs.
pub fn enumerate_duality_posets(n: usize) -> Result<impl Iterator<Item = Poset>> {
    if !(2..=MAX_ENUMERATION_ATOMS).contains(&n) {
        return Err(Error::TooLarge {
            what: "atom count for enumeration",
            size: n as u128,
            limit: MAX_ENUMERATION_ATOMS as u128,
        });
    }
    let pairs = deletable_pairs(n);
    Ok((0u64..1 << pairs.len()).map(move |choice| {
        let chosen: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| choice & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        build_well_complemented(n, &chosen).expect("deletable pairs are valid")
    }))
}

/// Canonical form of a poset determined by its atom sets: the lexicographically
/// least sorted list of atom masks over all relabelings of the atoms. Complete
/// for posets satisfying the atom-inclusion condition, where the order is
/// recovered from the atom sets.
pub fn atom_canonical_form(p: &Poset) -> Result<Vec<u64>> {
    let k = p.atom_count();
    if k > 8 {
        return Err(Error::TooLarge {
            what: "atom count for canonical form",
            size: k as u128,
            limit: 8,
        });
    }
    let masks: Vec<u64> = (0..p.len())
        .map(|x| p.atoms_below(x).iter().fold(0u64, |m, a| m | 1 << a))
        .collect();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        let mut image: Vec<u64> = masks
            .iter()
            .map(|&m| (0..k).filter(|&a| m & 1 << a != 0).fold(0u64, |acc, a| acc | 1 << perm[a]))
            .collect();
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.unwrap_or_default())
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Groups posets into isomorphism classes by [`atom_canonical_form`];
/// returns the member indices of each class in order of first appearance.
pub fn isomorphism_classes(posets: &[Poset]) -> Result<Vec<Vec<usize>>> {
    let mut classes: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    let mut order = Vec::new();
    for (i, p) in posets.iter().enumerate() {
        let key = atom_canonical_form(p)?;
        let entry = classes.entry(key.clone()).or_default();
        if entry.is_empty() {
            order.push(key);
        }
        entry.push(i);
    }
    Ok(order.into_iter().map(|k| classes.remove(&k).unwrap()).collect())
}

/// Whether `phi` is a fixed-point-free, order-reversing involution of `p`.
pub fn is_involution(p: &Poset, phi: &[usize]) -> bool {
    let m = p.len();
    phi.len() == m
        && (0..m).all(|x| phi[x] < m && phi[x] != x && phi[phi[x]] == x)
        && (0..m).all(|x| (0..m).all(|y| p.leq(x, y) == p.leq(phi[y], phi[x])))
}

/// A fixed-point-free, order-reversing involution. Complementation of atom
/// sets is tried first; otherwise a backtracking search runs on posets with
/// at most `max_search_elements` elements.
pub fn find_involution_with(p: &Poset, max_search_elements: usize) -> Result<Option<Vec<usize>>> {
    if check_strong_duality_conditions(p) {
        let by_atoms: HashMap<&AtomSet, usize> = (0..p.len()).map(|x| (p.atoms_below(x), x)).collect();
        let phi: Vec<usize> = (0..p.len())
            .map(|x| by_atoms[&p.atoms_below(x).complement()])
            .collect();
        if is_involution(p, &phi) {
            return Ok(Some(phi));
        }
    }
    let m = p.len();
    if m % 2 == 1 {
        return Ok(None);
    }
    if m > max_search_elements {
        return Err(Error::TooLarge {
            what: "poset for involution search",
            size: m as u128,
            limit: max_search_elements as u128,
        });
    }
    let ups: Vec<usize> = (0..m).map(|x| p.up_set(x).count()).collect();
    let downs: Vec<usize> = (0..m).map(|x| p.down_set(x).count()).collect();
    let mut phi = vec![usize::MAX; m];
    if search_involution(p, &ups, &downs, &mut phi) {
        Ok(Some(phi))
    } else {
        Ok(None)
    }
}

pub fn find_involution(p: &Poset) -> Result<Option<Vec<usize>>> {
    find_involution_with(p, DEFAULT_INVOLUTION_SEARCH_ELEMENTS)
}

fn search_involution(p: &Poset, ups: &[usize], downs: &[usize], phi: &mut [usize]) -> bool {
    let Some(x) = phi.iter().position(|&v| v == usize::MAX) else {
        return true;
    };
    for y in 0..p.len() {
        if y == x || phi[y] != usize::MAX || ups[x] != downs[y] || downs[x] != ups[y] {
            continue;
        }
        let consistent = (0..p.len()).filter(|&u| phi[u] != usize::MAX).all(|u| {
            let v = phi[u];
            p.leq(x, u) == p.leq(v, y)
                && p.leq(u, x) == p.leq(y, v)
                && p.leq(y, u) == p.leq(v, x)
                && p.leq(u, y) == p.leq(x, v)
        });
        if !consistent {
            continue;
        }
        phi[x] = y;
        phi[y] = x;
        if search_involution(p, ups, downs, phi) {
            return true;
        }
        phi[x] = usize::MAX;
        phi[y] = usize::MAX;
    }
    false
}

/// Every pair has a unique minimal upper bound and a unique maximal lower bound.
pub fn is_lattice(p: &Poset) -> bool {
    let m = p.len();
    for x in 0..m {
        for y in x + 1..m {
            let mut upper = p.up_set(x).clone();
            upper.intersect_with(p.up_set(y));
            let mut lower = p.down_set(x).clone();
            lower.intersect_with(p.down_set(y));
            let minimal_upper = upper.iter().filter(|&z| {
                let mut below = p.down_set(z).clone();
                below.remove(z);
                !below.intersects(&upper)
            });
            if minimal_upper.count() != 1 {
                return false;
            }
            let maximal_lower = lower.iter().filter(|&z| {
                let mut above = p.up_set(z).clone();
                above.remove(z);
                !above.intersects(&lower)
            });
            if maximal_lower.count() != 1 {
                return false;
            }
        }
    }
    true
}
