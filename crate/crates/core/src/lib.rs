//! Initial sequences of symbolic powers of planar point configurations,
//! bracketing and certification of their Waldschmidt constants, and the
//! classification checks built on top of them.

pub mod arith;
pub mod bounds;
pub mod cache;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod serde_big;
pub mod verify;

pub use error::{Result, WaldError};
