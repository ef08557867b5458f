//! Schubert cells of generalized flag varieties, described and recognized
//! through vanishing patterns of Plücker coordinates.

pub mod base;
pub mod bounds;
pub mod cartan;
pub mod cells;
pub mod error;
pub mod flags;
pub mod group;
pub mod patterns;
pub mod perm;
pub mod plucker;
pub mod recognition;
pub mod roots;

pub use cartan::{CartanDatum, CartanType, Weight};
pub use error::{Error, Result};
pub use group::{WeylElement, WeylGroup};
pub use perm::{Perm, Subset, TypeAGroup};
pub use roots::Root;
