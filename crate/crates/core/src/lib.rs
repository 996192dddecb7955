//! Zero-sum invariants of small finite groups.

pub mod cache;
pub mod clock;
pub mod error;
pub mod fraction;
pub mod group;
pub mod invariants;
pub mod lattice;
pub mod literal;
pub mod products;
pub mod search;
pub mod sequence;
pub mod smooth;
pub mod theorems;

pub use error::{Error, Result};
pub use fraction::Fraction;
pub use group::{Element, FiniteGroup, GroupKind, GroupSpec};
pub use products::{Certificate, Mode};
pub use sequence::Sequence;
