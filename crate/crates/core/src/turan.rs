//! Minimum `A`-intersecting atom sets and the Turán property.
//!
//! An atom set `S` is `A`-intersecting when it meets `Λ(a)` for every `a ∈ A`.
//! `Λ(b)` is such a set for every `b ∈ A*`, so the minimum intersecting size
//! never exceeds `min |Λ(b)|`; the antichain has the Turán property when the
//! two agree. The minimum is found exactly by iterative deepening over the
//! target size with branch-and-bound.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::numpart::{symmetric_blocker, NumPartition};
use crate::poset::{Antichain, AtomSet, Poset};
use crate::setpart::{PiLattice, MAX_BRUTE_N};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes before giving up with certified bounds.
    pub budget: u64,
    /// Run top-level branches on the rayon pool. Results are identical to the
    /// sequential mode.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_NODE_BUDGET,
            parallel: false,
        }
    }
}

/// Targets to be hit, deduplicated, over atoms `0..atom_universe_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingInstance {
    atom_universe_size: usize,
    targets: Vec<AtomSet>,
}

impl HittingInstance {
    pub fn new(atom_universe_size: usize, targets: impl IntoIterator<Item = AtomSet>) -> Result<Self> {
        let targets: BTreeSet<AtomSet> = targets.into_iter().collect();
        for t in &targets {
            if t.width() != atom_universe_size {
                return Err(Error::OutOfRange("target width differs from the atom universe".into()));
            }
            if t.is_empty() {
                return Err(Error::InvalidAntichain("empty target set cannot be hit".into()));
            }
        }
        Ok(HittingInstance {
            atom_universe_size,
            targets: targets.into_iter().collect(),
        })
    }

    /// The targets `Λ(a)`, `a ∈ A`.
    pub fn from_antichain(p: &Poset, a: &Antichain) -> Result<Self> {
        Self::new(p.atom_count(), a.elements().iter().map(|&x| p.atoms_below(x).clone()))
    }

    pub fn atom_universe_size(&self) -> usize {
        self.atom_universe_size
    }

    pub fn targets(&self) -> &[AtomSet] {
        &self.targets
    }

    /// Drops every target containing another one; hitting the smaller one
    /// hits the larger.
    pub fn reduced(&self) -> HittingInstance {
        let mut sorted: Vec<&AtomSet> = self.targets.iter().collect();
        sorted.sort_by_key(|t| t.count());
        let mut kept: Vec<AtomSet> = Vec::new();
        for t in sorted {
            if !kept.iter().any(|k| k.is_subset(t)) {
                kept.push(t.clone());
            }
        }
        kept.sort();
        HittingInstance {
            atom_universe_size: self.atom_universe_size,
            targets: kept,
        }
    }

    pub fn is_hit_by(&self, s: &AtomSet) -> bool {
        self.targets.iter().all(|t| t.intersects(s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSolution {
    pub size: usize,
    /// Lexicographically smallest optimal hitting set.
    pub witness: AtomSet,
    pub nodes: u64,
}

struct Exhausted;

struct Search<'a> {
    targets: &'a [AtomSet],
    universe: usize,
    budget: u64,
    nodes: AtomicU64,
    parallel: bool,
}

impl Search<'_> {
    fn tick(&self) -> std::result::Result<(), Exhausted> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    /// Whether some `k` atoms from `allowed` hit every target not yet hit by `chosen`.
    fn feasible(&self, chosen: &AtomSet, allowed: &AtomSet, k: usize, root: bool) -> std::result::Result<bool, Exhausted> {
        self.tick()?;
        let mut open: Vec<AtomSet> = Vec::new();
        for t in self.targets {
            if t.intersects(chosen) {
                continue;
            }
            let mut r = t.clone();
            r.intersect_with(allowed);
            if r.is_empty() {
                return Ok(false);
            }
            open.push(r);
        }
        if open.is_empty() {
            return Ok(true);
        }
        if k == 0 || packing_bound(&open) > k {
            return Ok(false);
        }
        let branch = open.iter().min_by_key(|t| t.count()).expect("nonempty").clone();
        let atoms = branch.to_vec();
        // Child i takes atoms[i] and forbids atoms[..i], so no set is visited twice.
        let child = |i: usize| -> std::result::Result<bool, Exhausted> {
            let mut c = chosen.clone();
            c.insert(atoms[i]);
            let mut al = allowed.clone();
            for &a in &atoms[..=i] {
                al.remove(a);
            }
            self.feasible(&c, &al, k - 1, false)
        };
        if root && self.parallel {
            let results: Vec<std::result::Result<bool, Exhausted>> = (0..atoms.len()).into_par_iter().map(child).collect();
            let mut any = false;
            for r in results {
                any |= r?;
            }
            Ok(any)
        } else {
            for i in 0..atoms.len() {
                if child(i)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Size of a greedily chosen family of pairwise disjoint targets; each needs
/// its own atom.
fn packing_bound(targets: &[AtomSet]) -> usize {
    let mut order: Vec<&AtomSet> = targets.iter().collect();
    order.sort_by_key(|t| t.count());
    let Some(first) = order.first() else {
        return 0;
    };
    let mut used = BitSet::new(first.width());
    let mut count = 0;
    for t in order {
        if !t.intersects(&used) {
            used.union_with(t);
            count += 1;
        }
    }
    count
}

fn greedy_cover(inst: &HittingInstance) -> AtomSet {
    let mut chosen = BitSet::new(inst.atom_universe_size);
    let mut open: Vec<&AtomSet> = inst.targets.iter().collect();
    while !open.is_empty() {
        let best = (0..inst.atom_universe_size)
            .max_by_key(|&a| (open.iter().filter(|t| t.contains(a)).count(), std::cmp::Reverse(a)))
            .expect("nonempty universe");
        chosen.insert(best);
        open.retain(|t| !t.contains(best));
    }
    chosen
}

/// Exact minimum hitting set. `seed`, if given, must hit every target and
/// tightens the initial upper bound.
pub fn solve(inst: &HittingInstance, seed: Option<&AtomSet>, opts: SearchOptions) -> Result<HittingSolution> {
    let reduced = inst.reduced();
    let universe = inst.atom_universe_size;
    if reduced.targets.is_empty() {
        return Ok(HittingSolution {
            size: 0,
            witness: BitSet::new(universe),
            nodes: 0,
        });
    }
    let mut upper = greedy_cover(&reduced).count();
    if let Some(s) = seed {
        if !reduced.is_hit_by(s) {
            return Err(Error::OutOfRange("seed does not hit every target".into()));
        }
        upper = upper.min(s.count());
    }
    let lower = packing_bound(&reduced.targets);
    let search = Search {
        targets: &reduced.targets,
        universe,
        budget: opts.budget,
        nodes: AtomicU64::new(0),
        parallel: opts.parallel,
    };
    let all = BitSet::full(universe);
    let empty = BitSet::new(universe);
    let mut size = upper;
    for k in lower..upper {
        match search.feasible(&empty, &all, k, true) {
            Ok(true) => {
                size = k;
                break;
            }
            Ok(false) => {}
            Err(Exhausted) => return Err(Error::BudgetExceeded { lower: k, upper }),
        }
    }
    let witness = lex_min_witness(&search, size).map_err(|_| Error::BudgetExceeded { lower: size, upper: size })?;
    debug_assert!(inst.is_hit_by(&witness));
    Ok(HittingSolution {
        size,
        witness,
        nodes: search.nodes.load(Ordering::Relaxed),
    })
}

/// Picks atoms in increasing order, each the smallest one that still admits a
/// completion of total size `size` from larger atoms.
fn lex_min_witness(search: &Search<'_>, size: usize) -> std::result::Result<AtomSet, Exhausted> {
    let universe = search.universe;
    let mut chosen = BitSet::new(universe);
    let mut next = 0;
    for pos in 0..size {
        let remaining = size - pos - 1;
        let try_atom = |a: usize| -> std::result::Result<bool, Exhausted> {
            let mut c = chosen.clone();
            c.insert(a);
            let allowed = BitSet::from_indices(universe, a + 1..universe);
            search.feasible(&c, &allowed, remaining, false)
        };
        let pick = if search.parallel {
            let results: Vec<std::result::Result<bool, Exhausted>> = (next..universe).into_par_iter().map(try_atom).collect();
            let mut pick = None;
            for (a, r) in (next..universe).zip(results) {
                if r? {
                    pick = Some(a);
                    break;
                }
            }
            pick
        } else {
            let mut pick = None;
            for a in next..universe {
                if try_atom(a)? {
                    pick = Some(a);
                    break;
                }
            }
            pick
        };
        let a = pick.expect("an optimal hitting set of this size exists");
        chosen.insert(a);
        next = a + 1;
    }
    Ok(chosen)
}

/// Minimum `A`-intersecting atom set.
pub fn min_intersecting_set(p: &Poset, a: &Antichain, opts: SearchOptions) -> Result<HittingSolution> {
    solve(&HittingInstance::from_antichain(p, a)?, None, opts)
}

/// `min |Λ(b)|` over `b ∈ A*`, with the first member attaining it.
pub fn blocker_min_atoms(p: &Poset, a: &Antichain) -> (usize, usize) {
    p.blocker(a)
        .elements()
        .iter()
        .map(|&b| (p.atoms_below(b).count(), b))
        .min()
        .expect("blockers are nonempty")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuranReport {
    pub min_intersecting: usize,
    pub intersecting_witness: AtomSet,
    pub blocker: Antichain,
    pub blocker_min_atoms: usize,
    pub blocker_witness: usize,
    pub nodes: u64,
}

impl TuranReport {
    pub fn holds(&self) -> bool {
        self.min_intersecting == self.blocker_min_atoms
    }
}

pub fn has_turan_property(p: &Poset, a: &Antichain, opts: SearchOptions) -> Result<TuranReport> {
    let blocker = p.blocker(a);
    let (bmin, bwit) = blocker_min_atoms(p, a);
    let inst = HittingInstance::from_antichain(p, a)?;
    let sol = solve(&inst, Some(p.atoms_below(bwit)), opts)?;
    if !inst.is_hit_by(&sol.witness) || sol.size > bmin {
        return Err(Error::StructureViolation("hitting witness failed post-check".into()));
    }
    Ok(TuranReport {
        min_intersecting: sol.size,
        intersecting_witness: sol.witness,
        blocker,
        blocker_min_atoms: bmin,
        blocker_witness: bwit,
        nodes: sol.nodes,
    })
}

/// `C(n,2) − Σ C(λ_i,2)`: edges of the complete multipartite graph with parts `λ`.
pub fn complete_multipartite_edges(block_sizes: &NumPartition) -> usize {
    let c2 = |k: usize| k * k.saturating_sub(1) / 2;
    c2(block_sizes.n()) - block_sizes.parts().iter().map(|&k| c2(k)).sum::<usize>()
}

/// Turán check of `fi(A)` in `Π_n`, phrased for graphs on `n` vertices.
#[derive(Debug, Clone, Serialize)]
pub struct SymTuranReport {
    pub n: usize,
    pub shapes: Vec<NumPartition>,
    pub blocker_shapes: Vec<NumPartition>,
    pub total_edges: usize,
    pub min_intersecting: usize,
    pub blocker_min_atoms: usize,
    /// `C(n,2) −` minimum intersecting size: the most edges of a graph with no
    /// clique graph of any shape in `A` as a subgraph.
    pub complement_value: usize,
    /// Edge counts of the complete multipartite graphs complementing each blocker shape.
    pub multipartite_edges: Vec<usize>,
    /// Edges `(i, j)` of the lexicographically first minimum intersecting graph.
    pub witness_edges: Vec<(usize, usize)>,
    pub holds: bool,
    pub nodes: u64,
}

impl SymTuranReport {
    pub fn statement(&self) -> String {
        let avoided: Vec<String> = self.shapes.iter().map(|s| format!("K[{s}]")).collect();
        let candidates: Vec<String> = self
            .blocker_shapes
            .iter()
            .zip(&self.multipartite_edges)
            .map(|(b, e)| format!("#K_{{{}}}={e}", b.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!(
            "max edges of a graph on {} vertices containing no clique graph {} = {}; max{{{}}} = {}",
            self.n,
            avoided.join(" or "),
            self.complement_value,
            candidates.join(", "),
            self.multipartite_edges.iter().max().copied().unwrap_or(0)
        )
    }
}

/// Inverse of [`crate::setpart::pair_index`]: the 1-based pair with the given index.
pub fn pair_from_index(n: usize, mut k: usize) -> (usize, usize) {
    for i in 1..n {
        let row = n - i;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
    }
    panic!("pair index out of range");
}

pub fn turan_sym(shapes: &BTreeSet<NumPartition>, n: usize, opts: SearchOptions) -> Result<SymTuranReport> {
    if n > MAX_BRUTE_N {
        return Err(Error::TooLarge {
            what: "partition lattice size n for Turan check",
            size: n as u128,
            limit: MAX_BRUTE_N as u128,
        });
    }
    let lattice = PiLattice::new(n)?;
    turan_sym_in(&lattice, shapes, opts)
}

/// As [`turan_sym`], reusing an already materialized lattice.
pub fn turan_sym_in(lattice: &PiLattice, shapes: &BTreeSet<NumPartition>, opts: SearchOptions) -> Result<SymTuranReport> {
    let n = lattice.n();
    let p = lattice.poset();
    let a = lattice.fiber_antichain(shapes)?;
    let report = has_turan_property(p, &a, opts)?;
    let blocker_shapes: BTreeSet<NumPartition> = report.blocker.elements().iter().map(|&x| lattice.element(x).shape()).collect();
    debug_assert_eq!(Some(&blocker_shapes), symmetric_blocker(shapes, n).ok().as_ref());
    let total_edges = n * (n - 1) / 2;
    Ok(SymTuranReport {
        n,
        shapes: shapes.iter().cloned().collect(),
        multipartite_edges: blocker_shapes.iter().map(complete_multipartite_edges).collect(),
        blocker_shapes: blocker_shapes.into_iter().collect(),
        total_edges,
        min_intersecting: report.min_intersecting,
        blocker_min_atoms: report.blocker_min_atoms,
        complement_value: total_edges - report.min_intersecting,
        witness_edges: report.intersecting_witness.iter().map(|k| pair_from_index(n, k)).collect(),
        holds: report.holds(),
        nodes: report.nodes,
    })
}
