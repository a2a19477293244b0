//! Independent brute-force oracles checked against the library paths.

use std::collections::HashSet;

use posetblock_core::numpart::{enumerate_partitions, ref_antichains};
use posetblock_core::poset::boolean_lattice;
use posetblock_core::qlattice::{enumerate_subspaces, gaussian_binomial, Subspace};
use posetblock_core::setpart::{enumerate_set_partitions, fiber, fiber_size};
use posetblock_core::turan::{solve, turan_sym_in, HittingInstance, SearchOptions};
use posetblock_core::{Antichain, BitSet, NumPartition, PiLattice};

/// Blocker in 2^[n] computed on bit masks: minimal sets meeting every member.
fn mask_blocker(n: usize, a: &[u32]) -> Vec<u32> {
    let hitting: Vec<u32> = (0..1u32 << n).filter(|&x| a.iter().all(|&s| x & s != 0)).collect();
    hitting
        .iter()
        .copied()
        .filter(|&x| !hitting.iter().any(|&y| y != x && y & !x == 0))
        .collect()
}

#[test]
fn boolean_blocker_matches_mask_oracle() {
    for n in 1..=4 {
        let p = boolean_lattice(n);
        // Element ids of the Boolean lattice coincide with subset masks.
        for a in p.antichains(100_000).unwrap() {
            let masks: Vec<u32> = a.elements().iter().map(|&x| x as u32).collect();
            let want: Vec<usize> = mask_blocker(n, &masks).into_iter().map(|m| m as usize).collect();
            assert_eq!(p.blocker(&a).elements(), &want[..]);
        }
    }
}

#[test]
fn blocker_example_by_subset_enumeration() {
    // {{1},{2,3}} in 2^[3]: sets meeting both are {1,2},{1,3},{1,2,3}.
    assert_eq!(mask_blocker(3, &[0b001, 0b110]), vec![0b011, 0b101]);
}

/// p(n) through the "largest part at most k" recurrence.
fn partition_count(n: usize) -> usize {
    let mut table = vec![vec![0usize; n + 1]; n + 1];
    for k in 0..=n {
        table[0][k] = 1;
    }
    for m in 1..=n {
        for k in 1..=n {
            table[m][k] = table[m][k - 1] + if k <= m { table[m - k][k] } else { 0 };
        }
    }
    table[n][n]
}

#[test]
fn partition_counts_match_recurrence() {
    for n in 1..=20 {
        let all = enumerate_partitions(n);
        assert_eq!(all.len(), partition_count(n), "n = {n}");
        let distinct: HashSet<&NumPartition> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        // Reverse lexicographic order.
        assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
    }
    assert_eq!(partition_count(6), 11);
}

#[test]
fn conjugate_matches_young_diagram_transpose() {
    for n in 1..=12 {
        for lambda in enumerate_partitions(n) {
            let rows = lambda.len();
            let cols = lambda.parts()[0];
            let mut grid = vec![vec![false; cols]; rows];
            for (r, &len) in lambda.parts().iter().enumerate() {
                for cell in grid[r].iter_mut().take(len) {
                    *cell = true;
                }
            }
            let transposed: Vec<usize> = (0..cols).map(|c| (0..rows).filter(|&r| grid[r][c]).count()).collect();
            assert_eq!(lambda.conjugate().parts(), &transposed[..]);
        }
    }
}

/// Bell numbers from the Bell triangle.
fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 1..=n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

#[test]
fn set_partition_counts_are_bell_numbers() {
    for n in 1..=9 {
        assert_eq!(enumerate_set_partitions(n).len(), bell(n), "n = {n}");
    }
    assert_eq!(bell(9), 21147);
}

#[test]
fn fibers_match_filtering_and_multinomial() {
    for n in 1..=9 {
        let all = enumerate_set_partitions(n);
        for lambda in enumerate_partitions(n) {
            let mut filtered: Vec<_> = all.iter().filter(|s| s.shape() == lambda).cloned().collect();
            filtered.sort();
            let generated = fiber(&lambda).unwrap();
            assert_eq!(generated, filtered, "shape {lambda}");
            assert_eq!(generated.len() as u128, fiber_size(&lambda), "shape {lambda}");
        }
    }
}

/// Counts distinct spans of all k-tuples of vectors.
fn count_spans(q: u32, n: usize, k: usize) -> usize {
    let vectors: Vec<Vec<u32>> = (0..(q as usize).pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = (code % q as usize) as u32;
                    code /= q as usize;
                    d
                })
                .collect()
        })
        .collect();
    let mut spans = HashSet::new();
    let mut idx = vec![0usize; k];
    loop {
        let rows: Vec<Vec<u32>> = idx.iter().map(|&i| vectors[i].clone()).collect();
        let s = Subspace::span(q, n, &rows).unwrap();
        if s.dim() == k {
            spans.insert(s);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return spans.len();
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < vectors.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[test]
fn subspace_counts_match_span_enumeration() {
    for (q, n) in [(2u32, 2usize), (2, 3), (2, 4), (3, 2), (3, 3)] {
        for k in 1..=n.min(3) {
            if q == 3 && n == 3 && k == 3 {
                continue;
            }
            let listed = enumerate_subspaces(q, n, k).unwrap();
            let distinct: HashSet<&Subspace> = listed.iter().collect();
            assert_eq!(distinct.len(), listed.len());
            assert_eq!(listed.len(), count_spans(q, n, k), "q={q} n={n} k={k}");
            assert_eq!(listed.len() as u128, gaussian_binomial(n, k, q));
            // Canonical form is a fixed point of re-spanning.
            for s in &listed {
                assert_eq!(&Subspace::span(q, n, s.basis()).unwrap(), s);
            }
        }
    }
}

/// Lexicographically first minimum hitting set by enumerating subsets in
/// increasing size, each size in lexicographic order.
fn brute_min_hitting(universe: usize, targets: &[BitSet]) -> (usize, Vec<usize>) {
    for size in 0..=universe {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let s = BitSet::from_indices(universe, comb.iter().copied());
            if targets.iter().all(|t| t.intersects(&s)) {
                return (size, comb);
            }
            // next combination
            let mut i = size;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if comb[i] < universe - size + i {
                    comb[i] += 1;
                    for j in i + 1..size {
                        comb[j] = comb[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    unreachable!("the full universe hits every nonempty target")
}

#[test]
fn solver_matches_brute_force_on_random_instances() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let universe = rng.gen_range(1..=12);
        let count = rng.gen_range(1..=10);
        let targets: Vec<BitSet> = (0..count)
            .map(|_| {
                let mut t = BitSet::new(universe);
                while t.is_empty() {
                    for a in 0..universe {
                        if rng.gen_bool(0.3) {
                            t.insert(a);
                        }
                    }
                }
                t
            })
            .collect();
        let inst = HittingInstance::new(universe, targets.clone()).unwrap();
        let sol = solve(&inst, None, SearchOptions::default()).unwrap();
        let (size, witness) = brute_min_hitting(universe, &targets);
        assert_eq!(sol.size, size);
        assert_eq!(sol.witness.to_vec(), witness);
    }
}

#[test]
fn no_four_edges_hit_every_perfect_matching_of_k6() {
    let matchings: Vec<BitSet> = fiber(&"2+2+2".parse().unwrap())
        .unwrap()
        .iter()
        .map(|m| {
            BitSet::from_indices(
                15,
                m.edges().into_iter().map(|(i, j)| posetblock_core::setpart::pair_index(6, i, j)),
            )
        })
        .collect();
    let (size, _) = brute_min_hitting(15, &matchings);
    assert_eq!(size, 5);
}

/// For every graph on `n` vertices, the shapes of clique graphs it contains,
/// as a bit mask over `shapes`. Set partitions are regenerated here from all
/// maps `[n] -> [n]` to stay independent of the library enumerators.
fn contained_shapes(n: usize, shapes: &[NumPartition]) -> Vec<u64> {
    let edge_bit = |i: usize, j: usize| -> u32 {
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if (a, b) == (i, j) {
                    return k;
                }
                k += 1;
            }
        }
        unreachable!()
    };
    let mut patterns: Vec<(u32, usize)> = Vec::new();
    let mut seen = HashSet::new();
    for code in 0..n.pow(n as u32) {
        let mut c = code;
        let label: Vec<usize> = (0..n)
            .map(|_| {
                let d = c % n;
                c /= n;
                d
            })
            .collect();
        let mut mask = 0u32;
        for i in 0..n {
            for j in i + 1..n {
                if label[i] == label[j] {
                    mask |= 1 << edge_bit(i, j);
                }
            }
        }
        if !seen.insert(mask) {
            continue;
        }
        let mut sizes: Vec<usize> = (0..n).map(|b| label.iter().filter(|&&l| l == b).count()).filter(|&s| s > 0).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let shape_idx = shapes.iter().position(|s| s.parts() == &sizes[..]).unwrap();
        patterns.push((mask, shape_idx));
    }
    let edges = n * (n - 1) / 2;
    (0..1u32 << edges)
        .map(|g| {
            patterns
                .iter()
                .filter(|(m, _)| m & !g == 0)
                .fold(0u64, |acc, &(_, s)| acc | 1 << s)
        })
        .collect()
}

#[test]
fn turan_numbers_match_exhaustive_graph_search() {
    for n in 3..=6 {
        let shapes = enumerate_partitions(n);
        let contains = contained_shapes(n, &shapes);
        let lattice = PiLattice::new(n).unwrap();
        let total = n * (n - 1) / 2;
        for a in ref_antichains(n, 100_000).unwrap() {
            let forbidden = a
                .iter()
                .fold(0u64, |acc, s| acc | 1 << shapes.iter().position(|t| t == s).unwrap());
            let max_edges = (0..contains.len())
                .filter(|&g| contains[g] & forbidden == 0)
                .map(|g| (g as u32).count_ones() as usize)
                .max()
                .unwrap();
            let report = turan_sym_in(&lattice, &a, SearchOptions::default()).unwrap();
            assert_eq!(report.complement_value, max_edges, "n={n} A={a:?}");
            assert_eq!(report.min_intersecting, total - max_edges);
        }
    }
}

#[test]
fn witness_intersects_every_member() {
    let lattice = PiLattice::new(5).unwrap();
    for a in ref_antichains(5, 10_000).unwrap() {
        let fa: Antichain = lattice.fiber_antichain(&a).unwrap();
        let sol = posetblock_core::turan::min_intersecting_set(lattice.poset(), &fa, SearchOptions::default()).unwrap();
        for &x in fa.elements() {
            assert!(lattice.poset().atoms_below(x).intersects(&sol.witness));
        }
    }
}
