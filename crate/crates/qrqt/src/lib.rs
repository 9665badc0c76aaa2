//! Quantitative security and feasibility analysis for quantum teleportation
//! protocols whose classical channel is protected by post-quantum (lattice)
//! cryptography.
//!
//! The crate models both sides of such a hybrid protocol:
//!
//! * the quantum side: single-qubit teleportation through an amplitude-damped
//!   Bell pair, entanglement-swap interception, and the Holevo information an
//!   eavesdropper extracts from partial knowledge of the classical
//!   correction bits ([`teleport`], [`leakage`], [`qmath`]);
//! * the classical side: lattice-reduction attacks on the LWE-based channel,
//!   modeled through the geometric series assumption and Lindner-Peikert
//!   nearest-planes decoding ([`lattice`]);
//! * their combination: the joint attack probability over time, the optimal
//!   attack window, epsilon-security checks ([`threat`]), and the
//!   memory-lifetime / distance feasibility envelope ([`feasibility`]).
//!
//! Every closed form ships with an independent brute-force counterpart
//! (density-matrix oracles, statevector simulation, exhaustive lattice
//! enumeration, Monte Carlo sampling) used by the test suite and by the
//! `validate` CLI subcommand.
//!
//! Monte Carlo and sweep kernels run data-parallel through [rayon] when the
//! default `parallel` feature is enabled and fall back to equivalent
//! sequential loops without it; results are bit-identical either way because
//! every sample draws from a counter-based RNG keyed on `(seed, index)`.

pub mod erf;
pub mod exec;
pub mod feasibility;
pub mod lattice;
pub mod leakage;
pub mod qmath;
pub mod rng;
pub mod teleport;
pub mod threat;
pub mod units;

/// Errors reported by the modeling routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A matrix or state vector failed a structural validity check.
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// A scalar argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Inputs lie outside the region where a cost or physics model is defined.
    #[error("model domain error: {0}")]
    ModelDomain(String),
    /// A lattice basis is not usable (wrong shape, near-singular, too large).
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    /// Arguments are structurally inconsistent (lengths, ranges, combinations).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A text input (scheme table file, unit-suffixed quantity) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
    /// An underlying I/O operation failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
