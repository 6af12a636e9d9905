//! Cycle length modularity problems: given a graph `G`, a modulus `m` and a
//! set `S` of residues, does `G` contain a simple cycle whose length is
//! congruent mod `m` to a member of `S`?
//!
//! The crate classifies instances of the directed (`DC`) and undirected
//! (`UC`) variants by tractability, and ships the matching deciders:
//!
//! * [`classify`] — residue-set arithmetic, the complement-closure condition
//!   that separates polynomial cases from NP-complete ones, and the divisor
//!   reduction used on the undirected side.
//! * [`walks`] — closed-walk residue detection on digraphs (SCC periods,
//!   product-graph BFS) and the decision procedure built on it.
//! * [`matrix`] — bit-packed boolean matrix families indexed by residue,
//!   with a doubling search for the shortest qualifying cycle length.
//! * [`undirected`] — bipartiteness and block-decomposition based detection
//!   of odd and even cycles, plus the divisor-reduction decision procedure.
//! * [`reduction`] — the edge-subdivision gadget mapping cycle-through-two-
//!   vertices instances into hard `DC` instances.
//! * [`oracle`] — exhaustive simple-cycle enumeration for cross-checking
//!   everything above at small sizes.
//!
//! All algorithms are `no_std` (with `alloc`); parsing, serialization and
//! the command line live in the companion `modcycle` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod classify;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod reduction;
pub mod undirected;
pub mod walks;

pub use classify::{Classification, DivisorReduction, ResidueSet, Verdict};
pub use graph::{CycleWitness, Graph, GraphKind};

/// Greatest common divisor; `gcd(x, 0) == x` and `gcd(0, 0) == 0`.
pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
