#![allow(dead_code)]

use posetblock_core::{Antichain, Poset};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random bounded poset: a random DAG on `inner` elements between a fresh
/// bottom and top.
pub fn random_bounded_poset<R: Rng>(rng: &mut R, inner: usize, density: f64) -> Poset {
    let mut labels = vec!["bot".to_string()];
    labels.extend((0..inner).map(|i| format!("e{i}")));
    labels.push("top".to_string());
    let mut covers = Vec::new();
    for i in 0..inner {
        covers.push(("bot".to_string(), format!("e{i}")));
        covers.push((format!("e{i}"), "top".to_string()));
        for j in i + 1..inner {
            if rng.gen_bool(density) {
                covers.push((format!("e{i}"), format!("e{j}")));
            }
        }
    }
    if inner == 0 {
        covers.push(("bot".to_string(), "top".to_string()));
    }
    Poset::from_covers(labels, &covers).expect("random DAG with bounds is a bounded poset")
}

/// Random antichain: elements in random order, kept when incomparable to all
/// kept so far, until a random target size is reached.
pub fn random_antichain<R: Rng>(rng: &mut R, p: &Poset) -> Antichain {
    let mut pool: Vec<usize> = (0..p.len()).filter(|&x| x != p.bottom()).collect();
    pool.shuffle(rng);
    let target = rng.gen_range(1..=pool.len().min(6));
    let mut chosen: Vec<usize> = Vec::new();
    for x in pool {
        if chosen.iter().all(|&y| !p.comparable(x, y)) {
            chosen.push(x);
            if chosen.len() == target {
                break;
            }
        }
    }
    Antichain::new(p, chosen).expect("pairwise incomparable")
}
