//! Set partitions of `[n]` and the partition lattice `Π_n`.
//!
//! Set partitions are stored as restricted-growth strings: entry `i` holds the
//! block index of element `i + 1`, with blocks numbered in order of their
//! smallest element.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numpart::{validate_ref_antichain, NumPartition};
use crate::poset::{Antichain, Poset};

pub const MAX_FIBER_N: usize = 10;
pub const MAX_PI_POSET_N: usize = 9;
pub const MAX_BRUTE_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<u8>,
}

impl SetPartition {
    /// Builds a partition from 1-based blocks.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Parse("empty block".into()));
            }
            for &e in block {
                if e == 0 || e > n {
                    return Err(Error::OutOfRange(format!("element {e} not in 1..={n}")));
                }
                if owner[e - 1] != usize::MAX {
                    return Err(Error::Parse(format!("element {e} appears twice")));
                }
                owner[e - 1] = b;
            }
        }
        if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Parse(format!("element {} is not covered", missing + 1)));
        }
        Ok(Self::from_labels(&owner))
    }

    /// Canonicalizes arbitrary block labels by first occurrence.
    fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut seen: HashMap<T, u8> = HashMap::new();
        let rgs = labels
            .iter()
            .map(|l| {
                let next = seen.len() as u8;
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        SetPartition { rgs }
    }

    /// `0̂`: all singletons.
    pub fn bottom(n: usize) -> Self {
        SetPartition { rgs: (0..n as u8).collect() }
    }

    /// `1̂`: one block.
    pub fn top(n: usize) -> Self {
        SetPartition { rgs: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn block_count(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// 1-based blocks, each sorted, ordered by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.rgs.iter().enumerate() {
            blocks[b as usize].push(i + 1);
        }
        blocks
    }

    pub fn is_bottom(&self) -> bool {
        self.block_count() == self.n()
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &SetPartition) -> Result<bool> {
        check_same_n(self, other)?;
        let mut image = vec![u8::MAX; self.block_count()];
        for (&b, &c) in self.rgs.iter().zip(&other.rgs) {
            let slot = &mut image[b as usize];
            if *slot == u8::MAX {
                *slot = c;
            } else if *slot != c {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Common refinement: nonempty intersections of blocks.
    pub fn meet(&self, other: &SetPartition) -> Result<SetPartition> {
        check_same_n(self, other)?;
        let pairs: Vec<(u8, u8)> = self.rgs.iter().copied().zip(other.rgs.iter().copied()).collect();
        Ok(Self::from_labels(&pairs))
    }

    /// Multiset of block sizes.
    pub fn shape(&self) -> NumPartition {
        let mut sizes = vec![0usize; self.block_count()];
        for &b in &self.rgs {
            sizes[b as usize] += 1;
        }
        NumPartition::new(sizes).expect("blocks are nonempty")
    }

    /// Pairs `(i, j)`, `i < j`, 1-based, lying in a common block: the edges of
    /// the corresponding clique graph.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.rgs[i] == self.rgs[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }
}

fn check_same_n(a: &SetPartition, b: &SetPartition) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::MismatchedN(a.n(), b.n()));
    }
    Ok(())
}

/// Index of the atom merging `i < j` (1-based) in lexicographic pair order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    let i0 = i - 1;
    i0 * n - i0 * (i0 + 1) / 2 + (j - i - 1)
}

/// Blocks joined by `|`. Elements are written as digits when `n <= 9`,
/// otherwise comma-separated.
impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() <= 9 { "" } else { "," };
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        f.write_str(&blocks.join("|"))
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for raw in s.split('|') {
            let raw = raw.trim();
            let block = if raw.contains(',') {
                raw.split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad element `{t}`"))))
                    .collect::<Result<Vec<_>>>()?
            } else {
                raw.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::Parse(format!("bad element `{c}`")))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum();
        SetPartition::from_blocks(n, &blocks)
    }
}

/// Every set partition of `[n]` in restricted-growth-string order.
pub fn enumerate_set_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut rgs = Vec::with_capacity(n);
    fn rec(n: usize, max: u8, rgs: &mut Vec<u8>, out: &mut Vec<SetPartition>) {
        if rgs.len() == n {
            out.push(SetPartition { rgs: rgs.clone() });
            return;
        }
        let limit = if rgs.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs.push(b);
            rec(n, max.max(b), rgs, out);
            rgs.pop();
        }
    }
    rec(n, 0, &mut rgs, &mut out);
    out
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// `n! / (∏ λ_i! · ∏ m_k!)` where `m_k` counts parts equal to `k`.
pub fn fiber_size(shape: &NumPartition) -> u128 {
    let mut denom: u128 = shape.parts().iter().map(|&p| factorial(p)).product();
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in shape.parts() {
        *mult.entry(p).or_default() += 1;
    }
    denom *= mult.values().map(|&m| factorial(m)).product::<u128>();
    factorial(shape.n()) / denom
}

/// All set partitions of the given shape, sorted.
pub fn fiber(shape: &NumPartition) -> Result<Vec<SetPartition>> {
    let n = shape.n();
    if n > MAX_FIBER_N {
        return Err(Error::TooLarge {
            what: "fiber ground set",
            size: n as u128,
            limit: MAX_FIBER_N as u128,
        });
    }
    // Multiplicity of each block size still to be opened.
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in shape.parts() {
        *sizes.entry(p).or_default() += 1;
    }
    let mut out = Vec::new();
    let mut rgs = Vec::with_capacity(n);
    let mut open: Vec<usize> = Vec::new(); // remaining capacity per opened block
    fn rec(
        n: usize,
        rgs: &mut Vec<u8>,
        open: &mut Vec<usize>,
        sizes: &mut BTreeMap<usize, usize>,
        out: &mut Vec<SetPartition>,
    ) {
        if rgs.len() == n {
            out.push(SetPartition { rgs: rgs.clone() });
            return;
        }
        for b in 0..open.len() {
            if open[b] > 0 {
                open[b] -= 1;
                rgs.push(b as u8);
                rec(n, rgs, open, sizes, out);
                rgs.pop();
                open[b] += 1;
            }
        }
        let available: Vec<usize> = sizes.iter().filter(|(_, &m)| m > 0).map(|(&s, _)| s).collect();
        for s in available {
            *sizes.get_mut(&s).unwrap() -= 1;
            open.push(s - 1);
            rgs.push((open.len() - 1) as u8);
            rec(n, rgs, open, sizes, out);
            rgs.pop();
            open.pop();
            *sizes.get_mut(&s).unwrap() += 1;
        }
    }
    rec(n, &mut rgs, &mut open, &mut sizes, &mut out);
    out.sort();
    Ok(out)
}

/// `Π_n` materialized as a [`Poset`], together with the element index.
///
/// Elements are ordered by rank, then by their sorted edge lists, so the atom
/// merging `{i, j}` has atom index [`pair_index`]`(n, i, j)`.
#[derive(Debug, Clone)]
pub struct PiLattice {
    n: usize,
    elements: Vec<SetPartition>,
    index: HashMap<SetPartition, usize>,
    poset: Poset,
}

impl PiLattice {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_PI_POSET_N {
            return Err(Error::TooLarge {
                what: "partition lattice size n",
                size: n as u128,
                limit: MAX_PI_POSET_N as u128,
            });
        }
        let mut elements = enumerate_set_partitions(n);
        elements.sort_by_cached_key(|s| (n - s.block_count(), s.edges()));
        let index = elements.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let labels = elements.iter().map(|s| s.to_string()).collect();
        let poset = Poset::from_relation_trusted(labels, |x, y| elements[x].leq(&elements[y]).expect("same n"))?;
        debug_assert!(poset
            .atoms()
            .iter()
            .enumerate()
            .all(|(k, &a)| { let e = elements[a].edges(); e.len() == 1 && pair_index(n, e[0].0, e[0].1) == k }));
        Ok(PiLattice { n, elements, index, poset })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn element(&self, id: usize) -> &SetPartition {
        &self.elements[id]
    }

    pub fn id(&self, s: &SetPartition) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `fi(A)` as an antichain of the materialized lattice.
    pub fn fiber_antichain(&self, shapes: &BTreeSet<NumPartition>) -> Result<Antichain> {
        let n = validate_ref_antichain(shapes)?;
        if n != self.n {
            return Err(Error::MismatchedN(self.n, n));
        }
        let ids = (0..self.elements.len()).filter(|&i| shapes.contains(&self.elements[i].shape()));
        Antichain::new(&self.poset, ids)
    }

    /// Shapes of the blocker of `fi(A)`, computed in the lattice itself.
    /// Fails with `NotSymmetric` if the blocker is not a union of fibers.
    pub fn brute_symmetric_blocker(&self, shapes: &BTreeSet<NumPartition>) -> Result<BTreeSet<NumPartition>> {
        let a = self.fiber_antichain(shapes)?;
        let b = self.poset.blocker(&a);
        let mut counts: BTreeMap<NumPartition, u128> = BTreeMap::new();
        for &x in b.elements() {
            *counts.entry(self.elements[x].shape()).or_default() += 1;
        }
        for (shape, &c) in &counts {
            if c != fiber_size(shape) {
                return Err(Error::NotSymmetric(shape.to_string()));
            }
        }
        Ok(counts.into_keys().collect())
    }
}

/// `Π_n` as a generic poset; see [`PiLattice`] for element and atom order.
pub fn pi_as_poset(n: usize) -> Result<Poset> {
    Ok(PiLattice::new(n)?.poset)
}

/// Blocker of `fi(A)` computed by brute force inside `Π_n`, reported as shapes.
pub fn brute_symmetric_blocker(shapes: &BTreeSet<NumPartition>, n: usize) -> Result<BTreeSet<NumPartition>> {
    if n > MAX_BRUTE_N {
        return Err(Error::TooLarge {
            what: "brute-force partition lattice size n",
            size: n as u128,
            limit: MAX_BRUTE_N as u128,
        });
    }
    PiLattice::new(n)?.brute_symmetric_blocker(shapes)
}

/// Gale–Ryser: a simple bipartite graph with degree sequences `λ` and `μ`
/// exists iff `λ'` dominates `μ`.
pub fn gale_ryser(lambda: &NumPartition, mu: &NumPartition) -> Result<bool> {
    lambda.conjugate().dominates(mu)
}

/// Searches for `σ ∈ fi(λ)`, `τ ∈ fi(μ)` with `σ ∧ τ = 0̂`. One fixed `σ`
/// suffices since the question is invariant under permuting `[n]`.
pub fn meet_trivial_witness(
    lambda: &NumPartition,
    mu: &NumPartition,
    n: usize,
) -> Result<Option<(SetPartition, SetPartition)>> {
    if lambda.n() != n {
        return Err(Error::MismatchedN(n, lambda.n()));
    }
    if mu.n() != n {
        return Err(Error::MismatchedN(n, mu.n()));
    }
    if n > MAX_BRUTE_N {
        return Err(Error::TooLarge {
            what: "meet search ground set",
            size: n as u128,
            limit: MAX_BRUTE_N as u128,
        });
    }
    let sigma = fiber(lambda)?.swap_remove(0);
    for tau in fiber(mu)? {
        if sigma.meet(&tau)?.is_bottom() {
            return Ok(Some((sigma, tau)));
        }
    }
    Ok(None)
}

pub fn exists_meet_trivial_pair(lambda: &NumPartition, mu: &NumPartition, n: usize) -> Result<bool> {
    Ok(meet_trivial_witness(lambda, mu, n)?.is_some())
}
