//! Closed graph manifolds as decorated graphs.
//!
//! A graph manifold satisfying the usual reduction hypotheses (every JSJ piece
//! is a trivial circle bundle over a surface of genus at least two, and every
//! JSJ torus separates two distinct pieces) is described by a directed
//! multigraph whose edges carry 2x2 integer gluing matrices. On top of that
//! model the crate provides:
//!
//! - [`seifert`]: exact invariants of closed Seifert manifolds, the
//!   Milnor-Wood and Eisenbud-Hirsch-Neumann criteria and commutator
//!   realizability of translation classes.
//! - [`graph`]: validation, slope transport, canonical framings, absolute
//!   Euler number and the JSON exchange format.
//! - [`coverings`]: characteristic and genus-raising finite covers with
//!   Riemann-Hurwitz bookkeeping and checkable certificates.
//! - [`volume`]: Seifert-volume lower-bound certificates for an explicit
//!   finite cover.
//! - [`classify`]: finiteness of mapping-degree sets for prime manifolds.
//! - [`cli`]: the `gmanvol` command-line front end.
//!
//! All arithmetic is exact; rationals are [`Rational`] values and multiples of
//! pi squared are carried as their rational coefficient.

pub mod classify;
pub mod cli;
pub mod coverings;
mod error;
pub mod graph;
mod rational;
pub mod sample;
pub mod seifert;
pub mod volume;

pub use error::{Error, Result};
pub use rational::Rational;
