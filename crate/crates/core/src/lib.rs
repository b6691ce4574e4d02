//! Entanglement distribution on networks of Werner-state links.
//!
//! The library is organized around the protocol pipeline:
//!
//! * [`werner`] — exact two-qubit state algebra: Werner and Bell-diagonal
//!   states, entanglement swapping, BBPSSW purification, and their
//!   noisy-operation variants.
//! * [`protocol`] — the direct strategy and the swap-and-purify quantum
//!   protocol for arbitrary segment plans, with the three admissibility
//!   constraints and good-interval endpoints.
//! * [`spp`] — closed-form and numerical analysis of the single
//!   purification protocol: extremal points, thresholds, multiple
//!   purifications, large-path asymptotics, noisy gain surfaces.
//! * [`graph`] — Erdős–Rényi sampling, shortest paths, enumeration of
//!   purification configurations, and analytic density formulas.
//! * [`mc`] — reproducible seeded Monte Carlo runner with per-trial
//!   RNG substreams.
//! * [`critical`] — analytics at the percolation critical point Np = 1:
//!   the gain-density integral, the asymptotic constant, and the
//!   finite-length discrete sum.

pub mod critical;
pub mod graph;
pub mod mc;
pub mod numeric;
pub mod protocol;
pub mod spp;
pub mod werner;

/// Errors surfaced by domain checks and numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter lies outside its mathematical domain.
    #[error("{name} = {value} violates {constraint}")]
    Domain {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    /// The requested geometry admits no interval where the quantum
    /// protocol beats the direct strategy.
    #[error("no good interval exists for this geometry")]
    NoGoodInterval,
    /// The governing equation vanishes identically; there is no root to
    /// report.
    #[error("degenerate equation: {0}")]
    Degenerate(&'static str),
    /// A bracketing root finder was called on an interval without a sign
    /// change.
    #[error("no sign change in [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
    /// Adaptive quadrature hit its subdivision limit before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge to the requested tolerance")]
    QuadratureDidNotConverge,
    /// The leading perturbative term vanishes; the expansion starts at a
    /// higher order than this routine computes.
    #[error("leading term vanishes: {0}")]
    HigherOrder(&'static str),
    /// A regime/parameter combination without a supported formula.
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    /// Malformed external input (edge lists etc.).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
