//! Belief-function fusion on Shafer's model.
//!
//! The crate provides:
//!
//! * [`Frame`], [`FocalSet`] and sparse [`MassFunction`]s with validation;
//! * the [`conjunctive`] and [`disjunctive`] operators and the
//!   [`conflict`] decomposition;
//! * the two-source combination [`rules`]: Dempster, Smets, Yager,
//!   Dubois & Prade (and its alias DSmH), Inagaki's generic and extreme
//!   rules, the adaptive rules (generic ACR and symmetric SACR) and
//!   proportional conflict redistribution (PCR);
//! * the pignistic transform and max-BetP [`decision`];
//! * a seeded [`scenario`] simulator for sequential target identification
//!   from ESM emitter reports;
//! * a JSON text format for mass functions in [`io`].
//!
//! ```
//! use belief_fusion::{rules, Frame, MassFunction};
//!
//! let frame = Frame::new(["A", "B"])?;
//! let a = frame.set(["A"])?;
//! let b = frame.set(["B"])?;
//! let m1 = MassFunction::new(&frame, [(a.clone(), 0.6), (frame.full_set(), 0.4)])?;
//! let m2 = MassFunction::new(&frame, [(b.clone(), 0.3), (frame.full_set(), 0.7)])?;
//!
//! let fused = rules::pcr(&m1, &m2)?;
//! assert!((fused.mass(&a) - 0.54).abs() < 1e-12);
//! assert!((fused.mass(&b) - 0.18).abs() < 1e-12);
//! # Ok::<(), belief_fusion::Error>(())
//! ```
//!
//! A guide with the background for each rule lives in the `book/`
//! directory of the repository; its code listings are compiled and run as
//! doc-tests of this crate.

pub mod combine;
pub mod decision;
mod error;
pub mod frame;
pub mod io;
pub mod mass;
pub mod rules;
pub mod scenario;

pub use combine::{conflict, conjunctive, disjunctive, ConflictDecomposition, ConflictPair};
pub use decision::{betp, decide, Decision, PignisticDistribution};
pub use error::{Error, Result};
pub use frame::{FocalSet, Frame};
pub use mass::{MassFunction, ValidationReport, Violation, MASS_TOLERANCE};
pub use rules::{AcrCoefficients, PcrShare, RuleId, WeightAssignment};

// The guide's listings run as doc-tests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/mass-functions.md")]
    mod mass_functions {}
    #[doc = include_str!("../../../book/src/conflict.md")]
    mod conflict {}
    #[doc = include_str!("../../../book/src/classical-rules.md")]
    mod classical_rules {}
    #[doc = include_str!("../../../book/src/adaptive-rules.md")]
    mod adaptive_rules {}
    #[doc = include_str!("../../../book/src/pcr.md")]
    mod pcr {}
    #[doc = include_str!("../../../book/src/decision.md")]
    mod decision {}
    #[doc = include_str!("../../../book/src/scenario.md")]
    mod scenario {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
