//! Construction and exact spectral verification of the Cayley graphs
//! `Γ_H(G) = Cay(G × G, S_H)` with
//! `S_H = {(g,1), (1,g), (g,g) : g ∈ G ∖ H}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: finite groups as multiplication tables, subgroups, atoms,
//!   products and quotients.
//! * [`characters`]: exact character tables of abelian groups, used as an
//!   independent spectral oracle.
//! * [`cayley`]: connection sets, Cayley graphs and the structural maps
//!   between the three component graphs.
//! * [`spectrum`]: exact integer eigenvalue multiplicities, numeric
//!   handling of irrational residue, integrality and isospectrality.
//! * [`qsrg`]: common-neighbour statistics and QSRG parameters.
//! * [`closed_form`]: predicted spectra and bounds as functions of `(n, k)`.
//! * [`harness`]: corpus, sweeps, verification and reports behind the CLI.

pub mod adjacency;
pub mod cayley;
pub mod characters;
pub mod closed_form;
pub mod error;
pub mod group;
pub mod harness;
pub mod par;
pub mod qsrg;
pub mod spectrum;

pub use error::{Error, Result};
pub use par::Execution;
