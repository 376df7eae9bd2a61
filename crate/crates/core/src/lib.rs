//! Lie nilpotency indices of modular group algebras `KG` over `GF(p)`.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod classify;
pub mod echelon;
pub mod error;
pub mod expr;
pub mod group;
pub mod proof;
pub mod series;

pub use algebra::{AlgebraContext, AlgebraElement};
pub use catalog::{parse_catalog, GroupSpec};
pub use echelon::EchelonBasis;
pub use error::{Error, Result};
pub use group::{Group, Permutation, Subgroup};
pub use series::{LieChain, SeriesReport};
