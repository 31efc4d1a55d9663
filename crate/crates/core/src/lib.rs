//! Exact symmetry-breaking parameters of small graphs.
//!
//! The crate computes distinguishing numbers, determining numbers, `d`-paint
//! costs, cost numbers and frugal distinguishing numbers by exhaustive search
//! over the automorphism group, and evaluates the closed forms known for book
//! graphs `B(m,n)` and products `K_{2^m} □ H` so the two can be compared.

pub mod autsearch;
pub mod cli;
pub mod closed;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod group;
pub mod params;
pub mod perm;

pub use error::{Error, Result};
pub use graph::{BookLayout, Family, Graph};
pub use group::PermutationGroup;
pub use perm::Permutation;
