//! Exact enumeration toolkit for pattern-avoiding inversion sequences.
//!
//! An inversion sequence of size `n` is a word `σ = σ₁…σₙ` of nonnegative
//! integers with `σᵢ ≤ i − 1`. This crate enumerates inversion sequences that
//! avoid a set of patterns, four independent ways:
//!
//! * brute force over a tree of prefixes ([`enumerate`]),
//! * a generating tree that grows sequences on the left ([`tree`]),
//! * succession rules on label sequences ([`rules`]),
//! * exact algebraic generating functions and recurrences ([`series`],
//!   [`recurrence`]).
//!
//! All arithmetic is exact (arbitrary-precision integers and rationals);
//! agreement between the independent routes is what the test suites check.
//! All operations are pure functions over immutable values, so independent
//! computations can safely run concurrently.

pub mod count;
pub mod enumerate;
pub mod recurrence;
pub mod rules;
pub mod seq;
pub mod series;
pub mod tree;
pub mod sites;

pub use count::CountTable;
pub use seq::{InversionSequence, Pattern, SequenceStats};
