//! The {5,4} pentagonal tessellation of the hyperbolic plane, restricted to
//! a quarter: cornucopia decomposition, Fibonacci-tree tile coordinates,
//! point location, the embedding calculus on quarters, neighbourhoods of
//! ends, and the two halting-driven quarter-sequence constructions.
//!
//! Everything is computed in the hyperboloid model; the Poincare disc is
//! used for rendering only. Start with [`quarter::Quarter::base`] and
//! [`tiling::decompose`], or run the examples:
//!
//! ```text
//! cargo run --example fibonacci_tiling
//! cargo run --example halting_turn
//! ```

pub mod geometry;
pub mod pentagon;
pub mod quarter;
pub mod tiling;

pub use geometry::{IdealPoint, MLine, MPoint};
pub use pentagon::{constants, Pentagon};
pub use quarter::{Hat, Quarter};
