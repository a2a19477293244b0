//! Subspaces of `F_q^n` for prime `q` and the lattice `L_q^n` they form.
//!
//! Subspaces are kept as reduced row-echelon bases, which are unique, so
//! equality of subspaces is equality of bases.

use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{Antichain, Poset};
use crate::turan::{self, SearchOptions};

/// Upper limit on the number of subspaces returned by one enumeration.
pub const DEFAULT_SUBSPACE_LIMIT: u128 = 100_000;
/// Upper limit on the element count of a materialized `L_q^n`.
pub const MAX_LATTICE_ELEMENTS: u128 = 400;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    q: u32,
    n: usize,
    basis: Vec<Vec<u32>>,
}

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

fn check_prime(q: u32) -> Result<()> {
    if is_prime(q) {
        Ok(())
    } else {
        Err(Error::NotPrime(q))
    }
}

fn inverse(a: u32, q: u32) -> u32 {
    // Fermat: a^(q-2) mod q.
    let (mut base, mut exp, mut acc) = (a as u64 % q as u64, q - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q as u64;
        }
        base = base * base % q as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Row-reduces `rows` over `F_q` in place and drops zero rows.
fn rref(q: u32, n: usize, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut pivot_row = 0;
    for col in 0..n {
        let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = inverse(rows[pivot_row][col], q);
        for v in rows[pivot_row].iter_mut() {
            *v = *v * inv % q;
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..n {
                    rows[r][c] = (rows[r][c] + q - factor * rows[pivot_row][c] % q) % q;
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

impl Subspace {
    /// Span of `vectors` (entries reduced mod `q`).
    pub fn span(q: u32, n: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        check_prime(q)?;
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::MismatchedAmbient);
        }
        let rows = vectors.iter().map(|v| v.iter().map(|x| x % q).collect()).collect();
        Ok(Subspace { q, n, basis: rref(q, n, rows) })
    }

    pub fn zero(q: u32, n: usize) -> Self {
        Subspace { q, n, basis: Vec::new() }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        if self.q != other.q || self.n != other.n {
            return Err(Error::MismatchedAmbient);
        }
        if other.dim() > self.dim() {
            return Ok(false);
        }
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).expect("no zero rows"))
            .collect();
        let q = self.q;
        Ok(other.basis.iter().all(|w| {
            let mut v = w.clone();
            for (row, &p) in self.basis.iter().zip(&pivots) {
                let f = v[p];
                if f != 0 {
                    for c in 0..self.n {
                        v[c] = (v[c] + q - f * row[c] % q) % q;
                    }
                }
            }
            v.iter().all(|&x| x == 0)
        }))
    }

    /// Number of 1-dimensional subspaces inside, `(q^d − 1)/(q − 1)`.
    pub fn point_count(&self) -> u128 {
        geometric_sum(self.q, self.dim())
    }
}

/// Rows joined by `,`; entries are digits when `q <= 10`, else separated by `.`.
impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.q <= 10 { "" } else { "." };
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "<{}>", rows.join(","))
    }
}

/// `1 + q + … + q^(d−1)`.
pub fn geometric_sum(q: u32, d: usize) -> u128 {
    (0..d).map(|i| (q as u128).pow(i as u32)).sum()
}

/// Gaussian binomial `[n choose k]_q`: the number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// All `k`-dimensional subspaces of `F_q^n`, ordered by pivot columns and then
/// by free entries.
pub fn enumerate_subspaces(q: u32, n: usize, k: usize) -> Result<Vec<Subspace>> {
    enumerate_subspaces_limited(q, n, k, DEFAULT_SUBSPACE_LIMIT)
}

pub fn enumerate_subspaces_limited(q: u32, n: usize, k: usize, limit: u128) -> Result<Vec<Subspace>> {
    check_prime(q)?;
    if k > n {
        return Err(Error::OutOfRange(format!("dimension {k} exceeds {n}")));
    }
    let count = gaussian_binomial(n, k, q);
    if count > limit {
        return Err(Error::TooLarge {
            what: "subspace count",
            size: count,
            limit,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for pivots in combinations(n, k) {
        // Free positions: row i, columns after its pivot that are not pivots.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (p + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut basis = vec![vec![0u32; n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                basis[i][p] = 1;
            }
            for (&(i, c), &d) in free.iter().zip(&digits) {
                basis[i][c] = d;
            }
            out.push(Subspace { q, n, basis });
            // Odometer over the free entries, last position fastest.
            let mut carry = true;
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < q {
                    carry = false;
                    break;
                }
                *d = 0;
            }
            if carry {
                break;
            }
        }
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `L_q^n` materialized as a poset; elements are ordered by dimension, so the
/// atoms are the 1-dimensional subspaces in enumeration order.
#[derive(Debug, Clone)]
pub struct QLattice {
    q: u32,
    n: usize,
    elements: Vec<Subspace>,
    levels: Vec<Vec<usize>>,
    poset: Poset,
}

impl QLattice {
    pub fn new(q: u32, n: usize) -> Result<Self> {
        check_prime(q)?;
        if n == 0 {
            return Err(Error::OutOfRange("ambient dimension must be positive".into()));
        }
        let total: u128 = (0..=n).map(|k| gaussian_binomial(n, k, q)).sum();
        if total > MAX_LATTICE_ELEMENTS {
            return Err(Error::TooLarge {
                what: "subspace lattice element count",
                size: total,
                limit: MAX_LATTICE_ELEMENTS,
            });
        }
        let mut elements = Vec::new();
        let mut levels = Vec::new();
        for k in 0..=n {
            let level = enumerate_subspaces(q, n, k)?;
            levels.push((elements.len()..elements.len() + level.len()).collect());
            elements.extend(level);
        }
        let labels = elements.iter().map(|s| s.to_string()).collect();
        let poset = Poset::from_relation_trusted(labels, |x, y| elements[y].contains(&elements[x]).expect("same ambient"))?;
        Ok(QLattice { q, n, elements, levels, poset })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn element(&self, id: usize) -> &Subspace {
        &self.elements[id]
    }

    /// Element ids of the `k`-dimensional subspaces.
    pub fn level(&self, k: usize) -> &[usize] {
        &self.levels[k]
    }

    /// `𝒜_k`, all `k`-dimensional subspaces, as an antichain (`k >= 1`).
    pub fn level_antichain(&self, k: usize) -> Result<Antichain> {
        if k == 0 || k > self.n {
            return Err(Error::OutOfRange(format!("level {k} not in 1..={}", self.n)));
        }
        Antichain::new(&self.poset, self.levels[k].iter().copied())
    }
}

/// Computes the blocker of `𝒜_k` in `L_q^n`, checks that it is the level
/// `𝒜_{n−k+1}` and returns that dimension.
pub fn q_blocker_level(q: u32, n: usize, k: usize) -> Result<usize> {
    let lattice = QLattice::new(q, n)?;
    blocker_level_in(&lattice, k)
}

pub fn blocker_level_in(lattice: &QLattice, k: usize) -> Result<usize> {
    let n = lattice.n();
    let a = lattice.level_antichain(k)?;
    let b = lattice.poset().blocker(&a);
    let expected = n - k + 1;
    if b.elements() != lattice.level(expected) {
        return Err(Error::StructureViolation(format!(
            "blocker of level {k} is not level {expected} in L_{}^{n}",
            lattice.q()
        )));
    }
    Ok(expected)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingSet {
    pub size: usize,
    /// Lexicographically first optimal set of points (1-dimensional subspaces).
    pub points: Vec<Subspace>,
    /// `1 + q + … + q^(n−k)`.
    pub lower_bound: u128,
}

/// Smallest set of points meeting every `k`-dimensional subspace of `F_q^n`.
pub fn min_blocking_set(q: u32, n: usize, k: usize, opts: SearchOptions) -> Result<BlockingSet> {
    let lattice = QLattice::new(q, n)?;
    min_blocking_set_in(&lattice, k, opts)
}

pub fn min_blocking_set_in(lattice: &QLattice, k: usize, opts: SearchOptions) -> Result<BlockingSet> {
    let a = lattice.level_antichain(k)?;
    let sol = turan::min_intersecting_set(lattice.poset(), &a, opts)?;
    let lower_bound = geometric_sum(lattice.q(), lattice.n() - k + 1);
    if (sol.size as u128) < lower_bound {
        return Err(Error::StructureViolation(format!(
            "blocking set of size {} below the bound {lower_bound}",
            sol.size
        )));
    }
    let points = sol
        .witness
        .iter()
        .map(|i| lattice.element(lattice.poset().atoms()[i]).clone())
        .collect();
    Ok(BlockingSet {
        size: sol.size,
        points,
        lower_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTuranReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub blocking: BlockingSet,
    /// `min |Λ(b)|` over the blocker of `𝒜_k`.
    pub blocker_min_atoms: usize,
    pub blocker_level: usize,
}

impl QTuranReport {
    pub fn holds(&self) -> bool {
        self.blocking.size == self.blocker_min_atoms
    }
}

pub fn q_turan_check(q: u32, n: usize, k: usize, opts: SearchOptions) -> Result<QTuranReport> {
    let lattice = QLattice::new(q, n)?;
    let blocker_level = blocker_level_in(&lattice, k)?;
    let a = lattice.level_antichain(k)?;
    let (bmin, _) = turan::blocker_min_atoms(lattice.poset(), &a);
    let blocking = min_blocking_set_in(&lattice, k, opts)?;
    Ok(QTuranReport {
        q,
        n,
        k,
        blocking,
        blocker_min_atoms: bmin,
        blocker_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(7));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(9));
        assert_eq!(enumerate_subspaces(4, 2, 1), Err(Error::NotPrime(4)));
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(2, 3, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let b = Subspace::span(2, 3, &[vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        let c = Subspace::span(3, 2, &[vec![2, 1]]).unwrap();
        assert_eq!(c.basis(), &[vec![1, 2]]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_subspaces(2, 3, 1).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces(2, 3, 2).unwrap().len(), 7);
        assert_eq!(enumerate_subspaces(3, 3, 0).unwrap(), vec![Subspace::zero(3, 3)]);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert!(matches!(enumerate_subspaces_limited(2, 4, 2, 10), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn containment() {
        let x = Subspace::span(2, 3, &[vec![1, 0, 0]]).unwrap();
        let xy = Subspace::span(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let full = Subspace::span(2, 3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(xy.contains(&x).unwrap());
        assert!(!x.contains(&xy).unwrap());
        assert!(xy.contains(&xy).unwrap());
        assert!(full.contains(&xy).unwrap());
        let other = Subspace::span(3, 3, &[vec![1, 0, 0]]).unwrap();
        assert_eq!(xy.contains(&other), Err(Error::MismatchedAmbient));
    }

    #[test]
    fn blocker_levels() {
        assert_eq!(q_blocker_level(2, 3, 2).unwrap(), 2);
        assert_eq!(q_blocker_level(2, 3, 1).unwrap(), 3);
        assert_eq!(q_blocker_level(3, 3, 2).unwrap(), 2);
    }

    #[test]
    fn fano_blocking_set_is_a_line() {
        let b = min_blocking_set(2, 3, 2, SearchOptions::default()).unwrap();
        assert_eq!(b.size, 3);
        assert_eq!(b.lower_bound, 3);
        let vectors: Vec<Vec<u32>> = b.points.iter().map(|p| p.basis()[0].clone()).collect();
        let span = Subspace::span(2, 3, &vectors).unwrap();
        assert_eq!(span.dim(), 2);
    }

    #[test]
    fn lattice_guard() {
        assert!(matches!(QLattice::new(5, 4), Err(Error::TooLarge { .. })));
        assert!(matches!(QLattice::new(6, 2), Err(Error::NotPrime(6))));
    }
}
