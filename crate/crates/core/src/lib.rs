//! Legendrian classes of connected sums of knots in the standard tight
//! three-sphere, computed from per-summand atlases of `(tb, r)` data.
//!
//! * [`atlas`]: classes of one prime knot type.
//! * [`sumcalc`]: classes of a connected sum as a quotient of tuples.
//! * [`front`]: front diagrams, used to check the invariant formulas.
//! * [`experiments`]: reproducible example families and checks.

pub mod atlas;
mod dsu;
pub mod error;
pub mod experiments;
pub mod front;
pub mod sumcalc;

pub use atlas::{ClassRef, PrimeAtlas, Sign, TbR};
pub use error::{Error, Result};
pub use front::{FrontDiagram, FrontInvariants};
pub use sumcalc::{SumClassId, SumSpec, SumTuple};
