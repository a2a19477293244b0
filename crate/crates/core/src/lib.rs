//! Blockers of antichains in finite bounded posets.
//!
//! The crate covers the general blocker calculus ([`poset`]), strong blocker
//! duality ([`duality`]), number partitions under dominance and refinement
//! ([`numpart`]), the partition lattice ([`setpart`]), exact minimum hitting
//! sets and the Turán property ([`turan`]) and subspace lattices over prime
//! fields ([`qlattice`]).

pub mod bitset;
pub mod duality;
pub mod error;
pub mod numpart;
pub mod poset;
pub mod qlattice;
pub mod setpart;
pub mod turan;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use numpart::NumPartition;
pub use poset::{Antichain, AtomSet, Poset, PosetFile};
pub use qlattice::Subspace;
pub use setpart::{PiLattice, SetPartition};
