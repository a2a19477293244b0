use std::path::Path;

use anyhow::{bail, Context, Result};
use posetblock_core::duality::{
    count_labeled_duality_posets, enumerate_duality_posets, find_duality_counterexample, is_lattice,
    isomorphism_classes, strong_duality_violation, DualityViolation, DEFAULT_EXHAUSTIVE_ELEMENTS,
};
use posetblock_core::numpart::{format_partition_set, parse_partition_set, symmetric_blocker};
use posetblock_core::qlattice::{geometric_sum, q_turan_check};
use posetblock_core::setpart::brute_symmetric_blocker;
use posetblock_core::turan::{has_turan_property, turan_sym, SearchOptions};
use posetblock_core::Poset;

use crate::output::*;
use crate::{Cli, Command, DualityCommand, Method, PartitionsCommand, PiCommand, TuranArgs};

pub fn run(cli: &Cli) -> Result<Output> {
    let opts = SearchOptions {
        budget: cli.budget,
        parallel: cli.parallel,
    };
    let antichain_budget = usize::try_from(cli.budget).unwrap_or(usize::MAX);
    Ok(match &cli.command {
        Command::Blocker { poset, antichain } => {
            let p = load_poset(poset)?;
            let a = p.parse_antichain(antichain)?;
            Output::Blocker(BlockerOut {
                antichain: p.antichain_labels(&a),
                blocker: p.antichain_labels(&p.blocker(&a)),
            })
        }
        Command::Duality(DualityCommand::Check { poset }) => duality_check(&load_poset(poset)?, antichain_budget)?,
        Command::Duality(DualityCommand::Enumerate { n, count_only }) => duality_enumerate(*n, *count_only)?,
        Command::Partitions(PartitionsCommand::SymBlocker { n, antichain }) => {
            let a = parse_partition_set(antichain)?;
            let b = symmetric_blocker(&a, *n)?;
            Output::SymBlocker(SymBlockerOut {
                n: *n,
                antichain: format_partition_set(&a),
                blocker: format_partition_set(&b),
            })
        }
        Command::Pi(PiCommand::Blocker { n, shapes, method }) => {
            let a = parse_partition_set(shapes)?;
            let formula = match method {
                Method::Formula | Method::Both => Some(symmetric_blocker(&a, *n)?),
                Method::Brute => None,
            };
            let brute = match method {
                Method::Brute | Method::Both => Some(brute_symmetric_blocker(&a, *n)?),
                Method::Formula => None,
            };
            let agree = match (&formula, &brute) {
                (Some(f), Some(b)) => Some(f == b),
                _ => None,
            };
            Output::PiBlocker(PiBlockerOut {
                n: *n,
                shapes: format_partition_set(&a),
                method: format!("{method:?}").to_lowercase(),
                formula: formula.as_ref().map(format_partition_set),
                brute: brute.as_ref().map(format_partition_set),
                agree,
            })
        }
        Command::Turan(args) => turan(args, opts)?,
        Command::Qblock { q, n, k } => qblock(*q, *n, *k, opts)?,
    })
}

fn load_poset(path: &Path) -> Result<Poset> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Poset::from_json_str(&text).with_context(|| format!("loading {}", path.display()))
}

fn duality_check(p: &Poset, antichain_budget: usize) -> Result<Output> {
    let violation = strong_duality_violation(p);
    let (condition, witness, missing_atoms) = match violation {
        None => (None, vec![], vec![]),
        Some(DualityViolation::AtomInclusion { x, y }) => (
            Some("atom-inclusion".to_string()),
            vec![p.label(x).to_string(), p.label(y).to_string()],
            vec![],
        ),
        Some(DualityViolation::MissingComplement { x }) => {
            let missing = p
                .atoms_below(x)
                .complement()
                .iter()
                .map(|i| p.label(p.atoms()[i]).to_string())
                .collect();
            (Some("missing-complement".to_string()), vec![p.label(x).to_string()], missing)
        }
    };
    let counterexample = if violation.is_some() && p.len() <= DEFAULT_EXHAUSTIVE_ELEMENTS {
        find_duality_counterexample(p, DEFAULT_EXHAUSTIVE_ELEMENTS, antichain_budget)
            .ok()
            .flatten()
            .map(|a| Counterexample {
                antichain: p.antichain_labels(&a),
                double_blocker: p.antichain_labels(&p.blocker(&p.blocker(&a))),
            })
    } else {
        None
    };
    Ok(Output::DualityCheck(DualityCheckOut {
        strong_duality: condition.is_none(),
        condition,
        witness,
        missing_atoms,
        counterexample,
    }))
}

fn duality_enumerate(n: usize, count_only: bool) -> Result<Output> {
    let count = count_labeled_duality_posets(n)?.to_string();
    if count_only {
        return Ok(Output::DualityEnumerate(DualityEnumerateOut {
            n,
            count,
            posets: None,
            class_sizes: None,
        }));
    }
    let posets: Vec<Poset> = enumerate_duality_posets(n)?.collect();
    let classes = isomorphism_classes(&posets)?;
    let mut class_of = vec![0; posets.len()];
    for (c, members) in classes.iter().enumerate() {
        for &i in members {
            class_of[i] = c;
        }
    }
    let listed = posets
        .iter()
        .zip(&class_of)
        .map(|(p, &class)| EnumeratedPoset {
            elements: p.labels().to_vec(),
            lattice: is_lattice(p),
            class,
        })
        .collect();
    Ok(Output::DualityEnumerate(DualityEnumerateOut {
        n,
        count,
        posets: Some(listed),
        class_sizes: Some(classes.iter().map(Vec::len).collect()),
    }))
}

fn turan(args: &TuranArgs, opts: SearchOptions) -> Result<Output> {
    match (args.n, &args.shapes, &args.poset, &args.antichain) {
        (Some(n), Some(shapes), None, None) => {
            let a = parse_partition_set(shapes)?;
            let r = turan_sym(&a, n, opts)?;
            let blocker = r.blocker_shapes.iter().cloned().collect();
            Ok(Output::TuranSym(TuranSymOut {
                n,
                shapes: format_partition_set(&a),
                blocker: format_partition_set(&blocker),
                total_edges: r.total_edges,
                min_hitting: r.min_intersecting,
                blocker_min: r.blocker_min_atoms,
                holds: r.holds,
                complement_value: r.complement_value,
                multipartite_edges: r.multipartite_edges.clone(),
                statement: r.statement(),
                witness_edges: r.witness_edges.iter().map(|&(i, j)| [i, j]).collect(),
            }))
        }
        (None, None, Some(path), Some(antichain)) => {
            let p = load_poset(path)?;
            let a = p.parse_antichain(antichain)?;
            let r = has_turan_property(&p, &a, opts)?;
            Ok(Output::TuranPoset(TuranPosetOut {
                antichain: p.antichain_labels(&a),
                blocker: p.antichain_labels(&r.blocker),
                min_hitting: r.min_intersecting,
                blocker_min: r.blocker_min_atoms,
                holds: r.holds(),
                witness: r.intersecting_witness.iter().map(|i| p.label(p.atoms()[i]).to_string()).collect(),
                blocker_witness: p.label(r.blocker_witness).to_string(),
            }))
        }
        _ => bail!("turan needs either --n and --shapes, or --poset and --antichain"),
    }
}

fn qblock(q: u32, n: usize, k: usize, opts: SearchOptions) -> Result<Output> {
    if k == 0 || k > n {
        bail!("--k must satisfy 1 <= k <= n");
    }
    let r = q_turan_check(q, n, k, opts)?;
    let linear = format!("1-dimensional subspaces of F_{q}^{n} meeting every {k}-dimensional subspace");
    let projective = if k == 1 {
        format!("points of PG({},{q}) meeting every point", n - 1)
    } else {
        format!("points of PG({},{q}) meeting every {}-dimensional projective subspace", n - 1, k - 1)
    };
    Ok(Output::Qblock(QblockOut {
        q,
        n,
        k,
        min_blocking_size: r.blocking.size,
        bound: geometric_sum(q, n - k + 1).to_string(),
        blocker_level: r.blocker_level,
        blocker_min: r.blocker_min_atoms,
        holds: r.holds(),
        linear,
        projective,
        witness: r.blocking.points.iter().map(|s| s.to_string()).collect(),
    }))
}
