//! Exact dual-group combinatorics for splitting models of reductive groups
//! over local fields: root data with Galois action, characters and
//! branching, Kottwitz invariants of very special elements, affine
//! Deligne–Lusztig dimension and component counts, and determinant
//! divisors of Satake pairings.

pub mod adlv;
pub mod catalog;
pub mod char_engine;
pub mod cli;
pub mod error;
pub mod group_model;
pub mod kottwitz;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod satake;
pub mod sweep;

pub use error::{Error, Result};
pub use group_model::{GroupModel, RootDatum};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
