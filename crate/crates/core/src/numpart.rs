//! Number partitions under the dominance and refinement orders, and the
//! closed-form blocker of symmetric antichains in the partition lattice.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct NumPartition {
    parts: Vec<usize>,
}

impl NumPartition {
    /// Canonicalizes `parts` into decreasing order. Zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::OutOfRange("partition with no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::OutOfRange("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(NumPartition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(1^n)`, the finest partition.
    pub fn ones(n: usize) -> Self {
        NumPartition { parts: vec![1; n] }
    }

    /// The transpose: `λ'_k = #{i : λ_i ≥ k}`.
    pub fn conjugate(&self) -> Self {
        let parts = (1..=self.parts[0])
            .map(|k| self.parts.iter().take_while(|&&p| p >= k).count())
            .collect();
        NumPartition { parts }
    }

    fn prefix_sums(&self) -> impl Iterator<Item = usize> + '_ {
        self.parts.iter().scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
    }

    /// Whether `self` dominates `other`: every prefix sum of `self` is at least
    /// the corresponding prefix sum of `other`.
    pub fn dominates(&self, other: &NumPartition) -> Result<bool> {
        check_same_n(self, other)?;
        let mine: Vec<usize> = self.prefix_sums().collect();
        let n = self.n();
        Ok(other
            .prefix_sums()
            .enumerate()
            .all(|(k, s)| mine.get(k).copied().unwrap_or(n) >= s))
    }

    /// Whether `self` is obtained from `coarser` by splitting its parts, i.e.
    /// the parts of `self` can be grouped so that group sums are the parts of
    /// `coarser`.
    pub fn refines(&self, coarser: &NumPartition) -> Result<bool> {
        check_same_n(self, coarser)?;
        if self.len() < coarser.len() {
            return Ok(false);
        }
        let mut residues = coarser.parts.clone();
        let mut failed = HashSet::new();
        Ok(fill_bins(&self.parts, 0, &mut residues, &mut failed))
    }

    /// `(p, 1^{n-p})`.
    pub fn hook(p: usize, n: usize) -> Result<Self> {
        if p == 0 || p > n {
            return Err(Error::OutOfRange(format!("hook({p}, {n}) needs 1 <= p <= n")));
        }
        let mut parts = vec![p];
        parts.extend(std::iter::repeat_n(1, n - p));
        Ok(NumPartition { parts })
    }

    /// At most one part exceeds 1.
    pub fn is_hook(&self) -> bool {
        self.parts.iter().skip(1).all(|&p| p == 1)
    }
}

// Places parts[i..] (decreasing) into bins with the given residual capacities;
// succeeds when every bin is exactly filled.
fn fill_bins(parts: &[usize], i: usize, residues: &mut [usize], failed: &mut HashSet<(usize, Vec<usize>)>) -> bool {
    if i == parts.len() {
        return residues.iter().all(|&r| r == 0);
    }
    let mut key = residues.to_vec();
    key.sort_unstable();
    if failed.contains(&(i, key.clone())) {
        return false;
    }
    let part = parts[i];
    let mut tried = Vec::new();
    for b in 0..residues.len() {
        let r = residues[b];
        if r < part || tried.contains(&r) {
            continue;
        }
        tried.push(r);
        residues[b] -= part;
        let ok = fill_bins(parts, i + 1, residues, failed);
        residues[b] += part;
        if ok {
            return true;
        }
    }
    failed.insert((i, key));
    false
}

fn check_same_n(a: &NumPartition, b: &NumPartition) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::MismatchedN(a.n(), b.n()));
    }
    Ok(())
}

impl fmt::Display for NumPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join("+"))
    }
}

/// Accepts `4+2` or `4,2`.
impl FromStr for NumPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(['+', ','])
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        NumPartition::new(parts)
    }
}

impl TryFrom<Vec<usize>> for NumPartition {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        NumPartition::new(v)
    }
}

impl From<NumPartition> for Vec<usize> {
    fn from(p: NumPartition) -> Self {
        p.parts
    }
}

/// Parses a semicolon-separated antichain such as `2+2+2;3+1+1+1`.
pub fn parse_partition_set(s: &str) -> Result<BTreeSet<NumPartition>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(NumPartition::from_str)
        .collect()
}

pub fn format_partition_set(set: &BTreeSet<NumPartition>) -> String {
    set.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";")
}

/// All partitions of `n` in reverse lexicographic order.
pub fn enumerate_partitions(n: usize) -> Vec<NumPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<NumPartition>) {
        if remaining == 0 {
            out.push(NumPartition { parts: current.clone() });
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            current.push(p);
            rec(remaining - p, p, current, out);
            current.pop();
        }
    }
    if n > 0 {
        rec(n, n, &mut current, &mut out);
    }
    out
}

/// Checks that `set` is a nonempty antichain of the refinement order on the
/// partitions of a common `n`, and returns that `n`.
pub fn validate_ref_antichain(set: &BTreeSet<NumPartition>) -> Result<usize> {
    let first = set.iter().next().ok_or(Error::Empty)?;
    let n = first.n();
    for p in set {
        if p.n() != n {
            return Err(Error::MismatchedN(n, p.n()));
        }
    }
    let items: Vec<&NumPartition> = set.iter().collect();
    for (i, a) in items.iter().enumerate() {
        for b in &items[i + 1..] {
            if a.refines(b)? || b.refines(a)? {
                return Err(Error::NotAntichain(a.to_string(), b.to_string()));
            }
        }
    }
    Ok(n)
}

/// The shapes `B` with `fi(A)* = fi(B)` in the partition lattice: the
/// refinement-minimal partitions of `n` not dominated by the conjugate of any
/// member of `A`.
pub fn symmetric_blocker(a: &BTreeSet<NumPartition>, n: usize) -> Result<BTreeSet<NumPartition>> {
    let found = validate_ref_antichain(a)?;
    if found != n {
        return Err(Error::MismatchedN(n, found));
    }
    if a.contains(&NumPartition::ones(n)) {
        return Err(Error::InvalidAntichain(format!(
            "{} is the bottom of the partition lattice",
            NumPartition::ones(n)
        )));
    }
    let conjugates: Vec<NumPartition> = a.iter().map(NumPartition::conjugate).collect();
    let mut survivors = Vec::new();
    for mu in enumerate_partitions(n) {
        let mut dominated = false;
        for c in &conjugates {
            if c.dominates(&mu)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            survivors.push(mu);
        }
    }
    let mut out = BTreeSet::new();
    for mu in &survivors {
        let mut minimal = true;
        for nu in &survivors {
            if nu != mu && nu.refines(mu)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.insert(mu.clone());
        }
    }
    Ok(out)
}

/// The dominance-minimal members of `a`.
pub fn dominance_minimal(a: &BTreeSet<NumPartition>) -> Result<BTreeSet<NumPartition>> {
    let mut out = BTreeSet::new();
    for x in a {
        let mut minimal = true;
        for y in a {
            if y != x && x.dominates(y)? {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.insert(x.clone());
        }
    }
    Ok(out)
}

/// All partitions of `n` with exactly `k` parts.
pub fn partitions_with_parts(n: usize, k: usize) -> BTreeSet<NumPartition> {
    enumerate_partitions(n).into_iter().filter(|p| p.len() == k).collect()
}

/// All nonempty antichains of the refinement order on partitions of `n`,
/// excluding those containing `(1^n)`.
pub fn ref_antichains(n: usize, budget: usize) -> Result<Vec<BTreeSet<NumPartition>>> {
    let parts: Vec<NumPartition> = enumerate_partitions(n)
        .into_iter()
        .filter(|p| *p != NumPartition::ones(n))
        .collect();
    let k = parts.len();
    let mut cmp = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            cmp[i * k + j] = parts[i].refines(&parts[j]).expect("same n");
        }
    }
    let sets = crate::poset::enumerate_antichains(k, |i, j| cmp[i * k + j] || cmp[j * k + i], budget)?;
    Ok(sets
        .into_iter()
        .map(|s| s.into_iter().map(|i| parts[i].clone()).collect())
        .collect())
}
