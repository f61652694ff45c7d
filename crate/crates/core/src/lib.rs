//! Exact arithmetic for the stable category of vector bundles on a
//! weighted projective line with three weights.

#![allow(clippy::needless_range_loop)]

pub mod bundles;
pub mod error;
pub mod graded;
pub mod k0;
pub mod lgroup;
pub mod quiver;
pub mod replay;
pub mod stablehom;
pub mod syntax;

pub use error::{Error, Result};
pub use k0::K0Class;
pub use lgroup::{LElement, WeightTriple};
pub use bundles::{ExtBundle, Formal, SequenceRecord, StableObject, Term};
pub use quiver::Quiver;
pub use replay::{replay, ReplayReport};
