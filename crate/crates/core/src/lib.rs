//! Energy of graphs carrying self-loops.
//!
//! For a graph `G` on `n` vertices with loops on `σ` of them, the looped
//! energy is `Σ |λ_i − σ/n|` over the eigenvalues of `A(G) + I_σ`. This crate
//! computes it, checks the `pG ∪ qG^l` equality family against the plain
//! energy `Σ |λ_i|`, and scans small labeled graphs for loop placements where
//! the two energies coincide.

pub mod energy;
pub mod error;
pub mod format;
pub mod graph;
pub mod graph6;
pub mod search;
pub mod spectra;

pub use energy::{
    energy_gap, energy_looped, energy_simple, family_energy_closed_form, theorem1_condition,
    theorem2_condition, verify_theorem1, verify_theorem2, ConditionCheck, EnergyReport,
    TheoremVerdict,
};
pub use error::{Error, Result};
pub use graph::{Graph, LoopedGraph};
pub use search::{Class, DedupePolicy, SearchConfig, SearchRecord, SigmaPolicy};
pub use spectra::{char_poly, eigenvalues, CharPoly, Spectrum, SymmetricMatrix};
