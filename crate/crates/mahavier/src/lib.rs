//! Dynamics of closed relations on compact metric spaces.
//!
//! A closed relation `F` on a space `X` is a closed subset of `X x X`,
//! viewed as a multivalued map. Its level-`n` Mahavier product is the set
//! of `n`-tuples whose consecutive coordinate pairs lie in `F`; the orbit
//! space of the induced shift map carries the relation's dynamics. This
//! crate computes those objects exactly for two carriers:
//!
//! * finite labeled point sets ([`finite`]): Mahavier levels, shift entropy
//!   via the vertex-shift spectral radius cross-checked by walk-count
//!   growth, CR-turbulence and reverse CR-turbulence decisions with
//!   extracted witnesses, and itinerary realization;
//! * the unit interval ([`interval`]): relations built from monotone
//!   piecewise-linear branches with exact rational arithmetic, an exact
//!   image engine, verified turbulence-witness search for expanding /
//!   contracting branch pairs, periodic-itinerary certification, and
//!   Cantor-graph constructions that provably exclude turbulence.
//!
//! [`transforms`] hosts the classical turbulence verifiers and the
//! constructive conversions between function-system witnesses and
//! relation witnesses; [`zigzag`] holds the alternation-counting
//! combinatorics used for the fan results. [`report`] and [`gallery`]
//! back the `mahavier` command line tool.
//!
//! Everything is deterministic: set enumerations follow a canonical
//! order, searches return the least verified parameter, and reports are
//! byte-stable. All interval arithmetic is exact rational; floating
//! point appears only in entropy values. Operations are pure functions
//! of immutable values, so concurrent use is safe; the exhaustive
//! sweeps may parallelize internally (capped by `MAHAVIER_THREADS` in
//! the command line tool) without affecting any result.

// Error values here carry exact rationals for diagnosis; they are cold
// paths, so their size is fine.
#![allow(clippy::result_large_err)]

pub mod cli;
pub mod files;
pub mod finite;
pub mod gallery;
pub mod interval;
pub mod rational;
pub mod report;
pub mod svg;
pub mod transforms;
pub mod zigzag;

mod interval_union;

pub use interval_union::IntervalUnion;
pub use rational::Rational;

use serde::{Deserialize, Serialize};

/// Which inclusion direction a turbulence witness claims.
///
/// A `Cr` witness at level `n` consists of two disjoint nonempty sets of
/// length-`n` tuples whose first-coordinate projections are contained in
/// both last-coordinate projections; `ReverseCr` swaps first and last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    Cr,
    ReverseCr,
}

impl std::fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WitnessKind::Cr => write!(f, "cr"),
            WitnessKind::ReverseCr => write!(f, "reverse-cr"),
        }
    }
}
