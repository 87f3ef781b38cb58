//! Finite semigroups, their subsemigroup lattices and partial automorphism monoids.
//!
//! Every carrier is a validated Cayley table over dense indices `0..n`.
//! Partial maps act on the right, so `x(α·β) = (xα)β`.

pub mod construct;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod green;
pub mod isotest;
pub mod pam;
pub mod pbij;
pub mod props;
mod search;
pub mod semigroup;
pub mod set;
pub mod sublat;
pub mod verify;

pub use error::{Error, Result};
pub use green::{GreenData, NaturalOrder, Partition};
pub use pbij::PartialBijection;
pub use semigroup::{CarrierId, ElementProfile, Semigroup};
pub use set::ElemSet;
