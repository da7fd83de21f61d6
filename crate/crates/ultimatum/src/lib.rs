//! Simulation and equilibrium analysis for the two-proposal ultimatum game
//! and its quantum realizations.
//!
//! Player 1 proposes a fair split `(money/2, money/2)` or an unfair one
//! `(delta·money, (1-delta)·money)` with `1/2 < delta < 1`; player 2 accepts
//! or rejects. Classically the game favors player 1: the only credible
//! equilibrium is unfair acceptance. The crate implements two quantizations
//! of the 2x4 normal form over a three-qubit register — one restricted to
//! identity/bit-flip strategies on a shared initial state, one with
//! two-parameter unitaries over an entangled basis — plus the sequential
//! measurement procedure and the extraction of the extensive game tree it
//! induces.
//!
//! Module map:
//!
//! - [`qstate`] — dense three-qubit linear algebra: states, operators,
//!   tensor products, first-qubit measurement.
//! - [`classical`] — the extensive game, outcome function, and 2x4 normal
//!   representation.
//! - [`mw`] — the identity/bit-flip quantization, its payoff matrix, and
//!   the named initial states.
//! - [`ewl`] — the two-parameter unitary quantization: numeric and closed
//!   form payoffs, the classical embedding, and the fair equilibrium
//!   families.
//! - [`sequential`] — outcome operators, sequential measured play, outcome
//!   equivalence, and quantum game-tree extraction.
//! - [`equilibrium`] — pure-equilibrium enumeration, weak dominance, and
//!   grid deviation search.
//! - [`verify`] — the runnable suite of quantitative claims.
//!
//! ```
//! use ultimatum::classical::{build_gamma1, normal_representation, GameParams};
//! use ultimatum::equilibrium::pure_nash;
//!
//! let params = GameParams::new(0.7, 1.0)?;
//! let report = pure_nash(&normal_representation(&build_gamma1(&params)));
//! assert_eq!(report.pure_ne.len(), 3);
//! assert_eq!(report.dominant_column.as_deref(), Some("d0e0"));
//! # Ok::<(), ultimatum::Error>(())
//! ```
//!
//! Runnable walkthroughs live in `examples/`; see the repository README.

pub mod classical;
pub mod equilibrium;
pub mod error;
pub mod ewl;
pub mod mw;
pub mod qstate;
pub mod sequential;
pub mod verify;

pub use error::{Error, Result};
