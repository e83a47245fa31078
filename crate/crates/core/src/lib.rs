// SPDX-License-Identifier: Apache-2.0

//! Exact models of the classical and transfinite fixed-point-free
//! nonexpansive maps on sup-norm balls.
//!
//! Everything is computed in exact rational arithmetic:
//!
//! * [`ordinal`]: ordinals below epsilon-zero in Cantor normal form, used as
//!   the index set of step functions.
//! * [`stepfn`]: eventually-constant ordinal-indexed functions and closed
//!   balls in the sup norm.
//! * [`dynamics`]: the double and single shifts, gap maps, witnesses of
//!   fixed-point-freeness and the retraction transfer.
//! * [`pl`]: piecewise-linear functions, the clamp-shift on `[-1, 1]`, and the
//!   sampling/interpolation pair between `C_b[0, inf)` and sequences.
//! * [`hyperconvex`]: pairwise ball intersection and the sup-formula witness.
//! * [`harness`]: seeded property suites producing [`harness::Report`]s.

pub mod dynamics;
pub mod error;
pub mod harness;
pub mod hyperconvex;
pub mod ordinal;
pub mod pl;
pub mod rational;
pub mod stepfn;

pub use dynamics::OperatorDescriptor;
pub use error::{Error, ParseError, Result};
pub use harness::{Report, Suite};
pub use ordinal::{Ordinal, OrdinalKind};
pub use pl::{Domain, PLFunction, SeqRep};
pub use rational::Rational;
pub use stepfn::{Ball, StepFn};
