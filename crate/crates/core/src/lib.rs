//! Exact partial traces of symmetrizers on tensor powers, together with the
//! symmetric-group character machinery they depend on.
//!
//! Everything is exact: characters are integers, operators carry rational
//! entries, and each identity check compares both sides entry by entry.

pub mod characters;
pub mod cli;
pub mod config;
pub mod error;
pub mod identities;
mod par;
pub mod partitions;
pub mod symgroup;
pub mod tensorop;

pub use config::{Config, Execution};
pub use error::{Error, Result};
pub use partitions::{Composition, Partition};
pub use symgroup::Permutation;
pub use tensorop::{ExactOperator, Scalar};
