//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use posetblock_core::duality::{
    atom_canonical_form, check_strong_duality_conditions, check_strong_duality_exhaustive, enumerate_duality_posets,
    find_involution, is_involution, is_lattice, isomorphism_classes,
};
use posetblock_core::numpart::{
    enumerate_partitions, parse_partition_set, partitions_with_parts, ref_antichains, symmetric_blocker,
};
use posetblock_core::poset::boolean_lattice;
use posetblock_core::qlattice::{blocker_level_in, geometric_sum, min_blocking_set_in, QLattice};
use posetblock_core::setpart::{exists_meet_trivial_pair, gale_ryser};
use posetblock_core::turan::{has_turan_property, turan_sym_in, SearchOptions};
use posetblock_core::{Antichain, NumPartition, PiLattice, Poset};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:.2?}, limit {limit:?}"))
}

fn set(s: &str) -> BTreeSet<NumPartition> {
    parse_partition_set(s).unwrap()
}

fn fmt_set(s: &BTreeSet<NumPartition>) -> String {
    posetblock_core::numpart::format_partition_set(s)
}

fn ac1_round_trip() -> Outcome {
    let start = Instant::now();
    let a = set("2+2+2;3+1+1+1");
    let b = set("4+2;5+1");
    let fwd = symmetric_blocker(&a, 6).map_err(|e| e.to_string())?;
    let back = symmetric_blocker(&b, 6).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(1), "round trip")?;
    ensure(fwd == b, || format!("blocker of {} is {}", fmt_set(&a), fmt_set(&fwd)))?;
    ensure(back == a, || format!("blocker of {} is {}", fmt_set(&b), fmt_set(&back)))?;
    Ok(format!("{} <-> {}", fmt_set(&a), fmt_set(&b)))
}

fn ac2_formula_vs_brute() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    for n in 2..=7 {
        let lattice = PiLattice::new(n).map_err(|e| e.to_string())?;
        let antichains = ref_antichains(n, 1_000_000).map_err(|e| e.to_string())?;
        let mismatch = antichains.par_iter().find_map_any(|a| {
            let formula = symmetric_blocker(a, n).ok();
            let brute = lattice.brute_symmetric_blocker(a).ok();
            (formula.is_none() || formula != brute).then(|| format!("n={n} A={} formula={formula:?} brute={brute:?}", fmt_set(a)))
        });
        if let Some(m) = mismatch {
            return Err(m);
        }
        checked += antichains.len();
    }
    within(start.elapsed(), Duration::from_secs(600), "sweep")?;
    Ok(format!("{checked} antichains, n = 2..7"))
}

fn ac3_hook_duality() -> Outcome {
    let mut checked = 0;
    for n in 2..=8 {
        for p in 2..=n {
            let hook: BTreeSet<NumPartition> = [NumPartition::hook(p, n).unwrap()].into();
            let layer = partitions_with_parts(n, p - 1);
            let b = symmetric_blocker(&hook, n).map_err(|e| e.to_string())?;
            ensure(b == layer, || format!("n={n} p={p}: blocker of hook is {}", fmt_set(&b)))?;
            let back = symmetric_blocker(&layer, n).map_err(|e| e.to_string())?;
            ensure(back == hook, || format!("n={n} p={p}: blocker of layer is {}", fmt_set(&back)))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (p, n) pairs"))
}

fn hook_count(b: &BTreeSet<NumPartition>) -> usize {
    b.iter().filter(|x| x.is_hook()).count()
}

fn ac4_hook_containment() -> Outcome {
    let mut checked = 0;
    for n in 2..=7 {
        for a in ref_antichains(n, 1_000_000).map_err(|e| e.to_string())? {
            let b = symmetric_blocker(&a, n).map_err(|e| e.to_string())?;
            ensure(hook_count(&b) == 1, || format!("n={n} A={} B={}", fmt_set(&a), fmt_set(&b)))?;
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pool: Vec<NumPartition> = enumerate_partitions(8).into_iter().filter(|p| *p != NumPartition::ones(8)).collect();
    for _ in 0..1000 {
        let mut order = pool.clone();
        order.shuffle(&mut rng);
        let target = rng.gen_range(1..=6);
        let mut a: BTreeSet<NumPartition> = BTreeSet::new();
        for x in order {
            if a.iter().all(|y| !x.refines(y).unwrap() && !y.refines(&x).unwrap()) {
                a.insert(x);
                if a.len() == target {
                    break;
                }
            }
        }
        let b = symmetric_blocker(&a, 8).map_err(|e| e.to_string())?;
        ensure(hook_count(&b) == 1, || format!("n=8 A={} B={}", fmt_set(&a), fmt_set(&b)))?;
        checked += 1;
    }
    Ok(format!("{checked} antichains (all for n <= 7, 1000 random at n = 8)"))
}

fn ac5_gale_ryser() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for n in 1..=7 {
        let all = enumerate_partitions(n);
        for l in &all {
            for m in &all {
                let gr = gale_ryser(l, m).map_err(|e| e.to_string())?;
                let pair = exists_meet_trivial_pair(l, m, n).map_err(|e| e.to_string())?;
                ensure(gr == pair, || format!("n={n} lambda={l} mu={m}: gale_ryser={gr} meet-trivial={pair}"))?;
                checked += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(300), "sweep")?;
    Ok(format!("{checked} partition pairs"))
}

fn ac6_turan_numbers() -> Outcome {
    let lattice = PiLattice::new(6).map_err(|e| e.to_string())?;
    let cases: [(&str, usize, bool); 3] = [("3+1+1+1", 9, true), ("2+2+2;3+1+1+1", 8, true), ("4+2;5+1", 12, true)];
    let mut lines = Vec::new();
    for (shapes, value, verdict) in cases {
        let start = Instant::now();
        let r = turan_sym_in(&lattice, &set(shapes), SearchOptions::default()).map_err(|e| e.to_string())?;
        within(start.elapsed(), Duration::from_secs(30), shapes)?;
        ensure(r.complement_value == value && r.holds == verdict, || {
            format!("{shapes}: value {} verdict {}", r.complement_value, r.holds)
        })?;
        lines.push(format!("{shapes}:{value}"));
    }
    let start = Instant::now();
    let r = turan_sym_in(&lattice, &set("2+2+2"), SearchOptions::default()).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(30), "2+2+2")?;
    ensure(!r.holds && r.min_intersecting == 5 && r.blocker_min_atoms == 6, || {
        format!("2+2+2: verdict {} min {} blocker-min {}", r.holds, r.min_intersecting, r.blocker_min_atoms)
    })?;
    lines.push("2+2+2: 5 < 6".into());
    Ok(lines.join(", "))
}

fn ac7_pi3_atoms() -> Outcome {
    let lattice = PiLattice::new(3).map_err(|e| e.to_string())?;
    let p = lattice.poset();
    let atoms = p.atoms().to_vec();
    let mut pairs = 0;
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            let a = Antichain::new(p, [atoms[i], atoms[j]]).map_err(|e| e.to_string())?;
            let r = has_turan_property(p, &a, SearchOptions::default()).map_err(|e| e.to_string())?;
            ensure(!r.holds() && r.min_intersecting == 2 && r.blocker_min_atoms == 3, || {
                format!("pair {i},{j}: {} vs {}", r.min_intersecting, r.blocker_min_atoms)
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} atom pairs, 2 < 3"))
}

fn poset(labels: &[&str], covers: &[(&str, &str)]) -> Poset {
    Poset::from_covers(
        labels.iter().map(|s| s.to_string()).collect(),
        &covers.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect::<Vec<_>>(),
    )
    .unwrap()
}

/// 2^[4] with only `{1,2}` removed; its complement `{3,4}` stays.
fn boolean_minus_one() -> Poset {
    let b = boolean_lattice(4);
    let keep: Vec<usize> = (0..16).filter(|&m| m != 0b0011).collect();
    Poset::from_relation(keep.iter().map(|&m| b.label(m).to_string()).collect(), |i, j| {
        keep[i] & !keep[j] == 0
    })
    .unwrap()
}

fn handcrafted_failing() -> Vec<(&'static str, Poset)> {
    vec![
        ("3-chain", poset(&["0", "a", "1"], &[("0", "a"), ("a", "1")])),
        (
            "4-chain",
            poset(&["0", "a", "b", "1"], &[("0", "a"), ("a", "b"), ("b", "1")]),
        ),
        (
            "0<a,b<c<1",
            poset(&["0", "a", "b", "c", "1"], &[("0", "a"), ("0", "b"), ("a", "c"), ("b", "c"), ("c", "1")]),
        ),
        (
            "M3",
            poset(
                &["0", "a", "b", "c", "1"],
                &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
            ),
        ),
        (
            "N5",
            poset(&["0", "a", "b", "c", "1"], &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]),
        ),
        ("2^[4] minus {1,2}", boolean_minus_one()),
    ]
}

fn ac8_strong_duality() -> Outcome {
    let agree = |p: &Poset| -> Result<bool, String> {
        let cond = check_strong_duality_conditions(p);
        let exh = check_strong_duality_exhaustive(p).map_err(|e| e.to_string())?;
        ensure(cond == exh, || format!("conditions={cond} exhaustive={exh} on {:?}", p.to_file()))?;
        Ok(cond)
    };
    let enumerated: Vec<Poset> = enumerate_duality_posets(4).map_err(|e| e.to_string())?.collect();
    ensure(enumerated.len() == 8, || format!("{} enumerated posets", enumerated.len()))?;
    for p in &enumerated {
        ensure(agree(p)?, || "enumerated poset without strong duality".into())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut holding = 0;
    for _ in 0..500 {
        let inner = rng.gen_range(0..=8);
        let density = rng.gen_range(0.05..0.7);
        let p = common::random_bounded_poset(&mut rng, inner, density);
        if agree(&p)? {
            holding += 1;
        }
    }
    let failing = handcrafted_failing();
    for (name, p) in &failing {
        ensure(!agree(p)?, || format!("{name} unexpectedly has strong duality"))?;
    }
    Ok(format!(
        "8 enumerated, 500 random ({holding} with duality), {} handcrafted failing",
        failing.len()
    ))
}

fn ac9_counting() -> Outcome {
    let n3 = enumerate_duality_posets(3).map_err(|e| e.to_string())?.count();
    ensure(n3 == 1, || format!("{n3} posets for n = 3"))?;
    let posets: Vec<Poset> = enumerate_duality_posets(4).map_err(|e| e.to_string())?.collect();
    ensure(posets.len() == 8, || format!("{} posets for n = 4", posets.len()))?;
    let classes = isomorphism_classes(&posets).map_err(|e| e.to_string())?;
    ensure(classes.len() == 4, || format!("{} isomorphism classes", classes.len()))?;
    let non_lattice = classes.iter().filter(|c| !is_lattice(&posets[c[0]])).count();
    ensure(non_lattice == 3, || format!("{non_lattice} non-lattice classes"))?;
    for (i, p) in posets.iter().enumerate() {
        let phi = find_involution(p).map_err(|e| e.to_string())?;
        ensure(phi.as_ref().is_some_and(|f| is_involution(p, f)), || format!("no involution on poset {i}"))?;
    }
    let lattices: Vec<&Poset> = posets.iter().filter(|p| is_lattice(p)).collect();
    ensure(lattices.len() == 1, || format!("{} lattices", lattices.len()))?;
    let boolean = atom_canonical_form(&boolean_lattice(4)).map_err(|e| e.to_string())?;
    ensure(atom_canonical_form(lattices[0]).map_err(|e| e.to_string())? == boolean, || {
        "the lattice is not Boolean".into()
    })?;
    Ok("n=3: 1, n=4: 8 in 4 classes, 3 non-lattice; involutions found; lattice is 2^[4]".into())
}

fn ac10_triple_blocker() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let check = |p: &Poset, a: &Antichain| -> Result<(), String> {
        let b1 = p.blocker(a);
        let b3 = p.blocker(&p.blocker(&b1));
        ensure(b3 == b1, || format!("A={:?}", p.antichain_labels(a)))
    };
    for _ in 0..600 {
        let inner = rng.gen_range(0..=10);
        let density = rng.gen_range(0.05..0.6);
        let p = common::random_bounded_poset(&mut rng, inner, density);
        let a = common::random_antichain(&mut rng, &p);
        check(&p, &a)?;
    }
    let lattices: Vec<PiLattice> = (2..=6).map(|n| PiLattice::new(n).unwrap()).collect();
    for _ in 0..400 {
        let lattice = &lattices[rng.gen_range(0..lattices.len())];
        let a = common::random_antichain(&mut rng, lattice.poset());
        check(lattice.poset(), &a)?;
    }
    Ok("600 random posets, 400 in partition lattices n = 2..6".into())
}

fn ac11_q_analogue() -> Outcome {
    let mut lines = Vec::new();
    for (q, n, k) in [(2u32, 3usize, 2usize), (2, 4, 2), (2, 4, 3), (3, 3, 2)] {
        let start = Instant::now();
        let lattice = QLattice::new(q, n).map_err(|e| e.to_string())?;
        let b = min_blocking_set_in(&lattice, k, SearchOptions::default()).map_err(|e| e.to_string())?;
        within(start.elapsed(), Duration::from_secs(60), &format!("q={q} n={n} k={k}"))?;
        let want = geometric_sum(q, n - k + 1);
        ensure(b.size as u128 == want, || format!("q={q} n={n} k={k}: size {} expected {want}", b.size))?;
        lines.push(format!("({q},{n},{k}):{}", b.size));
    }
    for q in [2u32, 3] {
        for n in 1..=4 {
            let start = Instant::now();
            let lattice = QLattice::new(q, n).map_err(|e| e.to_string())?;
            for k in 1..=n {
                let level = blocker_level_in(&lattice, k).map_err(|e| e.to_string())?;
                ensure(level == n - k + 1, || format!("q={q} n={n} k={k}: blocker level {level}"))?;
            }
            within(start.elapsed(), Duration::from_secs(60), &format!("blocker identity q={q} n={n}"))?;
        }
    }
    lines.push("blocker identity for q in {2,3}, n <= 4".into());
    Ok(lines.join(", "))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("AC1  symmetric blocker round-trip", ac1_round_trip),
        ("AC2  formula equals brute force in Pi_n", ac2_formula_vs_brute),
        ("AC3  hook duality", ac3_hook_duality),
        ("AC4  hook containment", ac4_hook_containment),
        ("AC5  Gale-Ryser oracle", ac5_gale_ryser),
        ("AC6  Turan numbers at n = 6", ac6_turan_numbers),
        ("AC7  atom pairs of Pi_3", ac7_pi3_atoms),
        ("AC8  strong duality conditions", ac8_strong_duality),
        ("AC9  counting and involutions", ac9_counting),
        ("AC10 triple-blocker law", ac10_triple_blocker),
        ("AC11 q-analogue", ac11_q_analogue),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} [{secs:.2}s] {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {name} [{secs:.2}s] {reason}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
