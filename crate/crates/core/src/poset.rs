//! Finite bounded posets and the blocker calculus on their antichains.
//!
//! A [`Poset`] stores the full order relation as bit rows (both up-sets and
//! down-sets), its unique bottom and top, the atoms (elements covering the
//! bottom) and for every element `x` the set `Λ(x)` of atoms below it.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Subset of the atoms of a fixed poset, keyed by atom index.
pub type AtomSet = BitSet;

/// On-disk poset description: `a` is covered by `b` for every pair `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub labels: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    bottom: usize,
    top: usize,
    atoms: Vec<usize>,
    atom_index: Vec<Option<usize>>,
    atoms_below: Vec<AtomSet>,
}

/// Nonempty set of pairwise incomparable, non-bottom elements, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Antichain {
    elements: Vec<usize>,
}

impl Antichain {
    /// Validates `elements` against `poset`. Duplicates are collapsed.
    pub fn new(poset: &Poset, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elements: Vec<usize> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(Error::InvalidAntichain("no elements".into()));
        }
        for &x in &elements {
            if x >= poset.len() {
                return Err(Error::InvalidAntichain(format!("element id {x} out of range")));
            }
            if x == poset.bottom {
                return Err(Error::InvalidAntichain("contains the bottom element".into()));
            }
        }
        for (i, &x) in elements.iter().enumerate() {
            for &y in &elements[i + 1..] {
                if poset.comparable(x, y) {
                    return Err(Error::InvalidAntichain(format!(
                        "`{}` and `{}` are comparable",
                        poset.label(x),
                        poset.label(y)
                    )));
                }
            }
        }
        Ok(Antichain { elements })
    }

    pub(crate) fn new_unchecked(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Antichain { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

impl Poset {
    /// Builds a poset from its cover pairs; the order is the reflexive-transitive
    /// closure. Elements keep the order of `labels`, and atoms are indexed in
    /// element order.
    pub fn from_covers(labels: Vec<String>, covers: &[(String, String)]) -> Result<Self> {
        let index = label_index(&labels)?;
        let m = labels.len();
        let mut succ = vec![Vec::new(); m];
        let mut indeg = vec![0usize; m];
        for (a, b) in covers {
            let ia = *index.get(a).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            if ia == ib {
                return Err(Error::Cycle(a.clone()));
            }
            succ[ia].push(ib);
            indeg[ib] += 1;
        }
        // Kahn's algorithm; whatever is left over lies on or above a cycle.
        let mut order = Vec::with_capacity(m);
        let mut queue: Vec<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        while let Some(x) = queue.pop() {
            order.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if order.len() < m {
            let stuck = (0..m).find(|&i| indeg[i] > 0).expect("cycle element");
            return Err(Error::Cycle(labels[stuck].clone()));
        }
        let mut up = vec![BitSet::new(m); m];
        for &x in order.iter().rev() {
            let mut row = BitSet::new(m);
            row.insert(x);
            for &y in &succ[x] {
                row.union_with(&up[y]);
            }
            up[x] = row;
        }
        Self::from_up_sets(labels, index, up)
    }

    /// Parses the JSON poset format `{"labels": [...], "covers": [[a, b], ...]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_covers(file.labels, &file.covers)
    }

    /// Builds a poset from an explicit order predicate, checking the partial
    /// order axioms.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let index = label_index(&labels)?;
        let m = labels.len();
        let up: Vec<BitSet> = (0..m)
            .map(|x| BitSet::from_indices(m, (0..m).filter(|&y| leq(x, y))))
            .collect();
        for x in 0..m {
            if !up[x].contains(x) {
                return Err(Error::NotPartialOrder(format!("`{}` is not reflexive", labels[x])));
            }
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::NotPartialOrder(format!(
                        "`{}` and `{}` violate antisymmetry",
                        labels[x], labels[y]
                    )));
                }
                if !up[y].is_subset(&up[x]) {
                    return Err(Error::NotPartialOrder(format!(
                        "transitivity fails above `{}` <= `{}`",
                        labels[x], labels[y]
                    )));
                }
            }
        }
        Self::from_up_sets(labels, index, up)
    }

    /// Trusted constructor for generated posets whose order is known to be valid.
    pub(crate) fn from_relation_trusted(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool + Sync,
    ) -> Result<Self> {
        use rayon::prelude::*;
        let index = label_index(&labels)?;
        let m = labels.len();
        let up: Vec<BitSet> = (0..m)
            .into_par_iter()
            .map(|x| BitSet::from_indices(m, (0..m).filter(|&y| leq(x, y))))
            .collect();
        Self::from_up_sets(labels, index, up)
    }

    fn from_up_sets(labels: Vec<String>, index: HashMap<String, usize>, up: Vec<BitSet>) -> Result<Self> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::NotBounded("no elements".into()));
        }
        let mut down = vec![BitSet::new(m); m];
        for x in 0..m {
            for y in up[x].iter() {
                down[y].insert(x);
            }
        }
        let minimal: Vec<usize> = (0..m).filter(|&x| down[x].count() == 1).collect();
        let maximal: Vec<usize> = (0..m).filter(|&x| up[x].count() == 1).collect();
        if minimal.len() != 1 {
            return Err(Error::NotBounded(format!(
                "{} minimal elements ({})",
                minimal.len(),
                join_labels(&labels, &minimal)
            )));
        }
        if maximal.len() != 1 {
            return Err(Error::NotBounded(format!(
                "{} maximal elements ({})",
                maximal.len(),
                join_labels(&labels, &maximal)
            )));
        }
        let bottom = minimal[0];
        let top = maximal[0];
        let atoms: Vec<usize> = (0..m)
            .filter(|&x| x != bottom && down[x].count() == 2)
            .collect();
        let mut atom_index = vec![None; m];
        for (i, &a) in atoms.iter().enumerate() {
            atom_index[a] = Some(i);
        }
        let atoms_below = (0..m)
            .map(|x| BitSet::from_indices(atoms.len(), atoms.iter().enumerate().filter(|(_, &a)| down[x].contains(a)).map(|(i, _)| i)))
            .collect();
        Ok(Poset {
            labels,
            index,
            up,
            down,
            bottom,
            top,
            atoms,
            atom_index,
            atoms_below,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Position of `x` in the atom list, if `x` is an atom.
    pub fn atom_index(&self, x: usize) -> Option<usize> {
        self.atom_index[x]
    }

    /// `Λ(x)`: the atoms below `x`.
    pub fn atoms_below(&self, x: usize) -> &AtomSet {
        &self.atoms_below[x]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Elements above or equal to `x`.
    pub fn up_set(&self, x: usize) -> &BitSet {
        &self.up[x]
    }

    /// Elements below or equal to `x`.
    pub fn down_set(&self, x: usize) -> &BitSet {
        &self.down[x]
    }

    /// Pairs `(x, y)` with `y` covering `x`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].iter() {
                if y == x {
                    continue;
                }
                let mut between = self.up[x].clone();
                between.intersect_with(&self.down[y]);
                if between.count() == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            labels: self.labels.clone(),
            covers: self
                .cover_pairs()
                .into_iter()
                .map(|(x, y)| (self.labels[x].clone(), self.labels[y].clone()))
                .collect(),
        }
    }

    /// Minimal elements of `set` (duplicates ignored), sorted.
    pub fn min_elements(&self, set: &[usize]) -> Vec<usize> {
        let members = BitSet::from_indices(self.len(), set.iter().copied());
        self.min_of_bitset(&members)
    }

    fn min_of_bitset(&self, members: &BitSet) -> Vec<usize> {
        members
            .iter()
            .filter(|&x| {
                let mut below = self.down[x].clone();
                below.remove(x);
                !below.intersects(members)
            })
            .collect()
    }

    /// The blocker `A*`: minimal elements `x` with `Λ(x) ∩ Λ(a) ≠ ∅` for every `a ∈ A`.
    pub fn blocker(&self, a: &Antichain) -> Antichain {
        let mut hitting = BitSet::new(self.len());
        for x in 0..self.len() {
            let lx = &self.atoms_below[x];
            if a.elements.iter().all(|&e| lx.intersects(&self.atoms_below[e])) {
                hitting.insert(x);
            }
        }
        Antichain::new_unchecked(self.min_of_bitset(&hitting))
    }

    /// `A ≤ B` iff every member of `B` lies above some member of `A`.
    pub fn antichain_leq(&self, a: &Antichain, b: &Antichain) -> bool {
        b.elements
            .iter()
            .all(|&y| a.elements.iter().any(|&x| self.leq(x, y)))
    }

    /// Meet in the lattice of antichains: `min(A ∪ B)`.
    pub fn antichain_meet(&self, a: &Antichain, b: &Antichain) -> Antichain {
        let all: Vec<usize> = a.elements.iter().chain(&b.elements).copied().collect();
        Antichain::new_unchecked(self.min_elements(&all))
    }

    /// Parses a comma-separated label list into a validated antichain. Commas
    /// nested inside `{}`, `()`, `[]` or `<>` belong to the label.
    pub fn parse_antichain(&self, s: &str) -> Result<Antichain> {
        let ids = split_top_level(s)
            .into_iter()
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| self.id(t).ok_or_else(|| Error::UnknownLabel(t.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Antichain::new(self, ids)
    }

    pub fn antichain_labels(&self, a: &Antichain) -> Vec<String> {
        a.elements.iter().map(|&x| self.labels[x].clone()).collect()
    }

    /// Every antichain of the poset (bottom excluded), or `TooLarge` once more
    /// than `budget` have been produced.
    pub fn antichains(&self, budget: usize) -> Result<Vec<Antichain>> {
        let items: Vec<usize> = (0..self.len()).filter(|&x| x != self.bottom).collect();
        let sets = enumerate_antichains(items.len(), |i, j| self.comparable(items[i], items[j]), budget)?;
        Ok(sets
            .into_iter()
            .map(|s| Antichain::new_unchecked(s.into_iter().map(|i| items[i]).collect()))
            .collect())
    }
}

/// All nonempty antichains of an abstract poset on `0..k` given its
/// comparability predicate. Each antichain is returned as a sorted index list.
pub fn enumerate_antichains(
    k: usize,
    comparable: impl Fn(usize, usize) -> bool,
    budget: usize,
) -> Result<Vec<Vec<usize>>> {
    let incomparable: Vec<BitSet> = (0..k)
        .map(|i| BitSet::from_indices(k, (0..k).filter(|&j| j > i && !comparable(i, j))))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        allowed: &BitSet,
        incomparable: &[BitSet],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> Result<()> {
        for i in allowed.iter() {
            current.push(i);
            if out.len() >= budget {
                return Err(Error::TooLarge {
                    what: "antichain enumeration",
                    size: budget as u128 + 1,
                    limit: budget as u128,
                });
            }
            out.push(current.clone());
            let mut next = allowed.clone();
            next.intersect_with(&incomparable[i]);
            if !next.is_empty() {
                rec(&next, incomparable, current, out, budget)?;
            }
            current.pop();
        }
        Ok(())
    }
    rec(&BitSet::full(k), &incomparable, &mut current, &mut out, budget)?;
    Ok(out)
}

/// Splits on commas outside any bracket pair.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '{' | '(' | '[' | '<' => depth += 1,
            '}' | ')' | ']' | '>' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn label_index(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn join_labels(labels: &[String], ids: &[usize]) -> String {
    ids.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(", ")
}

/// Cover pairs of the Boolean lattice on `{1..n}`, labels like `{1,3}`.
pub fn boolean_lattice(n: usize) -> Poset {
    let subsets: Vec<u32> = (0..1u32 << n).collect();
    let labels = subsets.iter().map(|&s| subset_label(s, n)).collect();
    Poset::from_relation_trusted(labels, |x, y| subsets[x] & !subsets[y] == 0)
        .expect("boolean lattice is bounded")
}

/// Label of a subset of `{1..n}` given as a bit mask, e.g. `{1,3}`; `{}` for the empty set.
pub fn subset_label(mask: u32, n: usize) -> String {
    let inner: Vec<String> = (0..n)
        .filter(|&i| mask & (1 << i) != 0)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", inner.join(","))
}
