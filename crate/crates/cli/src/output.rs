use std::fmt;

use serde::{Deserialize, Serialize};

/// Everything a subcommand reports. The text form and the `--json` form are
/// rendered from the same value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Output {
    Blocker(BlockerOut),
    DualityCheck(DualityCheckOut),
    DualityEnumerate(DualityEnumerateOut),
    SymBlocker(SymBlockerOut),
    PiBlocker(PiBlockerOut),
    TuranSym(TuranSymOut),
    TuranPoset(TuranPosetOut),
    Qblock(QblockOut),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockerOut {
    pub antichain: Vec<String>,
    pub blocker: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCheckOut {
    pub strong_duality: bool,
    /// `atom-inclusion` or `missing-complement`.
    pub condition: Option<String>,
    /// `[x, y]` for atom inclusion, `[x]` for a missing complement.
    pub witness: Vec<String>,
    /// Atoms of the complement that no element realizes.
    pub missing_atoms: Vec<String>,
    /// An antichain `A` with `A** != A`, when the poset is small enough to search.
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub antichain: Vec<String>,
    pub double_blocker: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityEnumerateOut {
    pub n: usize,
    /// Decimal string; the count outgrows 64 bits quickly.
    pub count: String,
    pub posets: Option<Vec<EnumeratedPoset>>,
    pub class_sizes: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratedPoset {
    pub elements: Vec<String>,
    pub lattice: bool,
    pub class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymBlockerOut {
    pub n: usize,
    pub antichain: String,
    pub blocker: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiBlockerOut {
    pub n: usize,
    pub shapes: String,
    pub method: String,
    pub formula: Option<String>,
    pub brute: Option<String>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuranSymOut {
    pub n: usize,
    pub shapes: String,
    pub blocker: String,
    pub total_edges: usize,
    pub min_hitting: usize,
    pub blocker_min: usize,
    pub holds: bool,
    pub complement_value: usize,
    pub multipartite_edges: Vec<usize>,
    pub statement: String,
    pub witness_edges: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuranPosetOut {
    pub antichain: Vec<String>,
    pub blocker: Vec<String>,
    pub min_hitting: usize,
    pub blocker_min: usize,
    pub holds: bool,
    /// Atoms of the lexicographically first minimum intersecting set.
    pub witness: Vec<String>,
    /// Blocker member attaining the minimum atom count.
    pub blocker_witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QblockOut {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub min_blocking_size: usize,
    pub bound: String,
    pub blocker_level: usize,
    pub blocker_min: usize,
    pub holds: bool,
    pub linear: String,
    pub projective: String,
    /// Each witness point as a spanning vector.
    pub witness: Vec<String>,
}

impl Output {
    /// `Some(false)` when the command reports a negative verdict.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Output::DualityCheck(d) => Some(d.strong_duality),
            Output::PiBlocker(p) => p.agree,
            Output::TuranSym(t) => Some(t.holds),
            Output::TuranPoset(t) => Some(t.holds),
            Output::Qblock(q) => Some(q.holds),
            _ => None,
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Blocker(b) => writeln!(f, "{}", b.blocker.join(",")),
            Output::DualityCheck(d) => {
                writeln!(f, "strong-duality: {}", yes_no(d.strong_duality))?;
                match d.condition.as_deref() {
                    Some("atom-inclusion") => {
                        writeln!(f, "failing condition: atom-inclusion (atoms below x lie below y, but x is not below y)")?;
                        writeln!(f, "witness: x={} y={}", d.witness[0], d.witness[1])?;
                    }
                    Some(other) => {
                        writeln!(f, "failing condition: {other} (no element has exactly the complementary atoms)")?;
                        writeln!(f, "witness: x={}", d.witness[0])?;
                        writeln!(f, "missing atom set: {{{}}}", d.missing_atoms.join(","))?;
                    }
                    None => {}
                }
                if let Some(c) = &d.counterexample {
                    writeln!(f, "antichain: {}", c.antichain.join(","))?;
                    writeln!(f, "double blocker: {}", c.double_blocker.join(","))?;
                }
                Ok(())
            }
            Output::DualityEnumerate(e) => {
                match &e.posets {
                    None => writeln!(f, "{}", e.count)?,
                    Some(posets) => {
                        writeln!(f, "count: {}", e.count)?;
                        for (i, p) in posets.iter().enumerate() {
                            writeln!(
                                f,
                                "poset {i}: class {} lattice {} elements {}",
                                p.class,
                                yes_no(p.lattice),
                                p.elements.join(" ")
                            )?;
                        }
                    }
                }
                if let Some(sizes) = &e.class_sizes {
                    let s: Vec<String> = sizes.iter().map(|x| x.to_string()).collect();
                    writeln!(f, "isomorphism classes: {} (sizes {})", sizes.len(), s.join(","))?;
                }
                Ok(())
            }
            Output::SymBlocker(s) => writeln!(f, "{}", s.blocker),
            Output::PiBlocker(p) => {
                if let Some(x) = &p.formula {
                    writeln!(f, "formula: {x}")?;
                }
                if let Some(x) = &p.brute {
                    writeln!(f, "brute-force: {x}")?;
                }
                if let Some(a) = p.agree {
                    writeln!(f, "agreement: {}", yes_no(a))?;
                }
                Ok(())
            }
            Output::TuranSym(t) => {
                writeln!(f, "min-hitting size: {}", t.min_hitting)?;
                writeln!(f, "blocker minimum: {} (blocker {})", t.blocker_min, t.blocker)?;
                writeln!(f, "verdict: {}", t.holds)?;
                writeln!(f, "{}", t.statement)?;
                let edges: Vec<String> = t.witness_edges.iter().map(|[i, j]| format!("{i}-{j}")).collect();
                writeln!(f, "witness edges: {}", edges.join(" "))
            }
            Output::TuranPoset(t) => {
                writeln!(f, "min-hitting size: {}", t.min_hitting)?;
                writeln!(f, "blocker minimum: {} (attained by {})", t.blocker_min, t.blocker_witness)?;
                writeln!(f, "verdict: {}", t.holds)?;
                writeln!(f, "blocker: {}", t.blocker.join(","))?;
                writeln!(f, "witness atoms: {}", t.witness.join(","))
            }
            Output::Qblock(q) => {
                writeln!(f, "min blocking size: {}", q.min_blocking_size)?;
                writeln!(f, "bound 1+q+...+q^(n-k): {}", q.bound)?;
                writeln!(f, "blocker level: {} (blocker minimum {})", q.blocker_level, q.blocker_min)?;
                writeln!(f, "verdict: {}", q.holds)?;
                writeln!(f, "linear: {}", q.linear)?;
                writeln!(f, "projective: {}", q.projective)?;
                writeln!(f, "witness: {}", q.witness.join(" "))
            }
        }
    }
}
