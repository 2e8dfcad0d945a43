//! Count tables: exact per-size counts produced by the various counting
//! routes (enumeration, trees, succession rules, recurrences, series).

use std::fmt;
use std::ops::Index;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Exact counts indexed by size, from 0 up to some `n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    counts: Vec<BigUint>,
}

impl CountTable {
    /// Wraps a vector of counts; index `n` holds the count at size `n`.
    pub fn new(counts: Vec<BigUint>) -> Self {
        Self { counts }
    }

    pub fn from_u64s(counts: &[u64]) -> Self {
        Self {
            counts: counts.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    /// Largest size covered (the table holds sizes `0..=n_max`).
    pub fn n_max(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(n)
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// The counts as `u64`s, or `None` if any entry overflows.
    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.counts.iter().map(|c| c.to_u64()).collect()
    }

    /// Whether the two tables agree on every size they both cover.
    pub fn agrees_with(&self, other: &CountTable) -> bool {
        self.counts
            .iter()
            .zip(other.counts.iter())
            .all(|(a, b)| a == b)
    }

    /// Shortens the table to sizes `0..=n_max`.
    pub fn truncated(&self, n_max: usize) -> CountTable {
        CountTable {
            counts: self.counts[..=n_max.min(self.n_max())].to_vec(),
        }
    }
}

impl Index<usize> for CountTable {
    type Output = BigUint;

    fn index(&self, n: usize) -> &BigUint {
        &self.counts[n]
    }
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl FromIterator<BigUint> for CountTable {
    fn from_iter<T: IntoIterator<Item = BigUint>>(iter: T) -> Self {
        Self {
            counts: iter.into_iter().collect(),
        }
    }
}
