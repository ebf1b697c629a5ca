//! Exact computations on normal primitive compactifications of the affine plane,
//! driven by their key sequences.

// Matrix and tower code reads closer to the math with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod classification;
pub mod error;
pub mod g2a_actions;
pub mod key_sequence;
pub mod resolution;
pub mod surface_invariants;
pub mod symbolic;

pub use error::{Error, Result};
pub use key_sequence::KeySequence;
