//! Cohen-Macaulayness, Buchsbaumness and Castelnuovo–Mumford regularity of
//! projective monomial curves, computed from degree slices of their
//! semigroups.
//!
//! A curve is given by its degree `d` and the exponent set
//! `G_M = {α : x^α y^(d-α) ∈ M}` with `0, d ∈ G_M`. All computations reduce
//! to Minkowski sums of finite integer sets.

pub mod error;
pub mod formulas;
pub mod invariants;
pub mod poset;
pub mod report;
pub mod semigroup;
pub mod sets;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use formulas::{classify, reg_bounds, BoundsReport, Classification, CurveKind};
pub use invariants::{invariant_report, regularity, InvariantReport, Verdict};
pub use report::{analyze, render_text, AnalysisReport};
pub use semigroup::{macaulayfication, CurveSpec, StarData};
pub use sets::{ExponentSet, GapProfile};
