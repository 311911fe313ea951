//! Max-plus algebra modelling of stochastic acyclic fork-join queueing
//! networks.
//!
//! A fork-join network is a collection of single-server FIFO queues wired
//! into a directed acyclic graph: when a node finishes serving a customer it
//! forks one copy to every successor, and a node only starts serving once it
//! has joined one customer from every predecessor. With saturated sources the
//! vector of k-th departure epochs evolves linearly in the max-plus semiring,
//!
//! ```text
//! x(k) = A(k) ⊗ x(k-1),    A(k) = (E ⊕ T(k) ⊗ Gᵀ)^⊗p ⊗ T(k),
//! ```
//!
//! where `T(k)` is the diagonal matrix of the k-th service times, `G` the
//! 0/ε adjacency matrix of the graph and `p` its longest path length. The
//! crate provides:
//!
//! * [`maxplus`] / [`matrix`] — the scalar and matrix algebra (⊕ = max,
//!   ⊗ = +, null element ε = −∞);
//! * [`network`] — validated acyclic topologies, their standard adjacency
//!   matrices and a line-oriented text format;
//! * [`dynamics`] — the state recursion, an independent event-level oracle
//!   and per-cycle algebraic envelopes for the completion-time norm;
//! * [`stochastic`] — service-time models, seeded sampling, the analytic
//!   mean-cycle-time bounds `max_i E[τ_i] ≤ γ ≤ E[max_i τ_i]` and Monte
//!   Carlo estimation of γ;
//! * [`experiment`] — reproducible sweep presets and CSV reports.
//!
//! Runnable walk-throughs live in `examples/`; the `forkjoin` binary exposes
//! the `bounds`, `simulate` and `table` subcommands over the same library
//! calls.

pub mod dynamics;
pub mod experiment;
pub mod matrix;
pub mod maxplus;
pub mod network;
pub mod quad;
pub mod rng;
pub mod stochastic;

pub use dynamics::{ServiceSample, Trajectory};
pub use matrix::MaxPlusMatrix;
pub use maxplus::MaxPlus;
pub use network::Topology;
pub use stochastic::{BoundsReport, ServiceModel};
