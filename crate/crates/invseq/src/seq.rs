//! Core types: inversion sequences, patterns, occurrences, and statistics.
//!
//! Positions are 1-based throughout the public API. The empty sequence `ε`
//! is a valid inversion sequence of size 0.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors raised by sequence and pattern constructors and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeqError {
    /// An entry violates the inversion-sequence bound `σᵢ ≤ i − 1`.
    #[error("entry {value} at position {position} exceeds the bound {bound}")]
    EntryOutOfRange {
        position: usize,
        value: usize,
        bound: usize,
    },
    /// The value set of the candidate pattern is not an interval `{0,…,m}`.
    #[error("not a pattern: value set must be an integer interval starting at 0")]
    NotAPattern,
    /// A sequence or pattern literal could not be parsed.
    #[error("unparseable literal {0:?}")]
    BadLiteral(String),
}

/// An inversion sequence: a word `σ₁…σₙ` with `0 ≤ σᵢ ≤ i − 1`.
///
/// Values are immutable after construction; the bound is enforced by
/// [`InversionSequence::new`] and preserved by every operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InversionSequence {
    entries: Vec<usize>,
}

impl InversionSequence {
    /// Validates the inversion-sequence bound and wraps the entries.
    pub fn new(entries: Vec<usize>) -> Result<Self, SeqError> {
        for (i, &v) in entries.iter().enumerate() {
            if v > i {
                return Err(SeqError::EntryOutOfRange {
                    position: i + 1,
                    value: v,
                    bound: i,
                });
            }
        }
        Ok(Self { entries })
    }

    /// The empty sequence `ε`.
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at 1-based position `i` (panics if out of range).
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    /// Positions and derived zero/value statistics of the sequence.
    pub fn statistics(&self) -> SequenceStats {
        let n = self.len();
        let zeros: BTreeSet<usize> = (1..=n).filter(|&i| self.at(i) == 0).collect();
        let prefix_zeros = self.entries.iter().take_while(|&&v| v == 0).count();
        let suffix_zeros = self.entries.iter().rev().take_while(|&&v| v == 0).count();
        let leading: BTreeSet<usize> = (1..=prefix_zeros).collect();
        let trailing: BTreeSet<usize> = zeros.difference(&leading).copied().collect();
        let vals: BTreeSet<usize> = self.entries.iter().copied().collect();
        let s_pair_201_210 = prefix_zeros + usize::from(!trailing.is_empty());
        SequenceStats {
            n,
            z: zeros.len(),
            zeros,
            prefix_zeros,
            suffix_zeros,
            ell: prefix_zeros,
            leading,
            trailing,
            s_pair_201_210,
            min_val: self.entries.iter().min().copied(),
            max_val: self.entries.iter().max().copied(),
            vals,
        }
    }

    /// All occurrences of `rho`, capped at [`DEFAULT_OCCURRENCE_LIMIT`] tuples.
    pub fn occurrences(&self, rho: &Pattern) -> OccurrenceList {
        self.occurrences_capped(rho, DEFAULT_OCCURRENCE_LIMIT)
    }

    /// All occurrences of `rho` as 1-based position tuples, in lexicographic
    /// order, listing at most `limit` tuples (the report says whether the
    /// list was truncated).
    pub fn occurrences_capped(&self, rho: &Pattern, limit: usize) -> OccurrenceList {
        let mut tuples = Vec::new();
        let mut truncated = false;
        let mut chosen = Vec::with_capacity(rho.len());
        collect_occurrences(
            &self.entries,
            rho.values(),
            0,
            &mut chosen,
            limit,
            &mut tuples,
            &mut truncated,
        );
        OccurrenceList {
            tuples,
            truncated,
            limit,
        }
    }

    /// Number of occurrences of `rho`, by an incremental left-to-right scan
    /// (no tuple is materialized). Supports patterns of length ≤ 3 and
    /// constant patterns of any length; other patterns fall back to
    /// enumeration.
    pub fn count_occurrences(&self, rho: &Pattern) -> u64 {
        if let Some(counts) = scan_counts(&self.entries, rho, false) {
            return counts;
        }
        // General fallback: count by enumeration without storing tuples.
        let mut count = 0u64;
        let mut chosen = Vec::with_capacity(rho.len());
        count_occurrences_rec(&self.entries, rho.values(), 0, &mut chosen, &mut count);
        count
    }

    /// Whether `rho` occurs in the sequence.
    pub fn contains(&self, rho: &Pattern) -> bool {
        if let Some(counts) = scan_counts(&self.entries, rho, true) {
            return counts > 0;
        }
        self.count_occurrences(rho) > 0
    }

    /// Whether the sequence avoids `rho`.
    pub fn avoids(&self, rho: &Pattern) -> bool {
        !self.contains(rho)
    }

    /// Whether the sequence avoids every pattern in `patterns`.
    pub fn avoids_all(&self, patterns: &[Pattern]) -> bool {
        patterns.iter().all(|p| self.avoids(p))
    }
}

/// Default cap on the number of occurrence tuples listed per call.
pub const DEFAULT_OCCURRENCE_LIMIT: usize = 1_000_000;

/// Occurrence listing together with its truncation status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceList {
    /// 1-based position tuples, lexicographically ordered.
    pub tuples: Vec<Vec<usize>>,
    /// True when more occurrences exist than `limit` allowed to list.
    pub truncated: bool,
    /// The cap that was in force.
    pub limit: usize,
}

impl OccurrenceList {
    pub fn count(&self) -> usize {
        self.tuples.len()
    }
}

fn collect_occurrences(
    entries: &[usize],
    pattern: &[usize],
    start: usize,
    chosen: &mut Vec<usize>,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
    truncated: &mut bool,
) {
    if chosen.len() == pattern.len() {
        if out.len() == limit {
            *truncated = true;
            return;
        }
        out.push(chosen.iter().map(|&idx| idx + 1).collect());
        return;
    }
    let k = chosen.len();
    for idx in start..entries.len() {
        if *truncated {
            return;
        }
        if extends_isomorphically(entries, pattern, chosen, k, idx) {
            chosen.push(idx);
            collect_occurrences(entries, pattern, idx + 1, chosen, limit, out, truncated);
            chosen.pop();
        }
    }
}

fn count_occurrences_rec(
    entries: &[usize],
    pattern: &[usize],
    start: usize,
    chosen: &mut Vec<usize>,
    count: &mut u64,
) {
    if chosen.len() == pattern.len() {
        *count += 1;
        return;
    }
    let k = chosen.len();
    for idx in start..entries.len() {
        if extends_isomorphically(entries, pattern, chosen, k, idx) {
            chosen.push(idx);
            count_occurrences_rec(entries, pattern, idx + 1, chosen, count);
            chosen.pop();
        }
    }
}

/// Order-isomorphism check for appending `entries[idx]` as the `k`-th letter:
/// equalities in the pattern must map to equalities, strict inequalities to
/// strict inequalities.
fn extends_isomorphically(
    entries: &[usize],
    pattern: &[usize],
    chosen: &[usize],
    k: usize,
    idx: usize,
) -> bool {
    chosen
        .iter()
        .enumerate()
        .all(|(j, &cj)| entries[cj].cmp(&entries[idx]) == pattern[j].cmp(&pattern[k]))
}

/// Incremental scan counting occurrences of `rho`; `None` when the pattern
/// shape is not supported by the scan (non-constant length > 3).
fn scan_counts(entries: &[usize], rho: &Pattern, early_exit: bool) -> Option<u64> {
    let guard = crate::enumerate::ForbiddenPattern::classical(rho.clone()).ok()?;
    let mut scan = crate::enumerate::ScanState::new(entries.len());
    let mut total = 0u64;
    for &v in entries {
        total += scan.occurrences_created(&guard, v);
        if early_exit && total > 0 {
            return Some(total);
        }
        scan.append(v);
    }
    Some(total)
}

/// Zero-structure and value statistics of one inversion sequence.
///
/// `min_val`/`max_val` are `None` on the empty sequence; the conventions
/// `min(ε) = +∞` and `max(ε) = −1` are realized by [`min_ge_max`] rather
/// than by sentinel numbers inside the value domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceStats {
    /// Size of the sequence.
    pub n: usize,
    /// 1-based positions holding a zero.
    pub zeros: BTreeSet<usize>,
    /// Number of zeros.
    pub z: usize,
    /// Length of the maximal all-zero prefix.
    pub prefix_zeros: usize,
    /// Length of the maximal all-zero suffix.
    pub suffix_zeros: usize,
    /// Zero positions inside the leading block (1..=prefix_zeros).
    pub leading: BTreeSet<usize>,
    /// Zero positions to the right of some positive entry.
    pub trailing: BTreeSet<usize>,
    /// `|leading|` (equals `prefix_zeros`).
    pub ell: usize,
    /// `ell + 1` if `trailing` is nonempty, else `ell`; the number of
    /// zero-choice degrees of freedom in the {201,210}-restricted tree.
    pub s_pair_201_210: usize,
    /// Set of values appearing in the sequence.
    pub vals: BTreeSet<usize>,
    /// Minimum value; `None` means `+∞` (empty sequence).
    pub min_val: Option<usize>,
    /// Maximum value; `None` means `−1` (empty sequence).
    pub max_val: Option<usize>,
}

/// Compares a segment minimum against a segment maximum under the empty-range
/// conventions `min(∅) = +∞` and `max(∅) = −1`.
pub fn min_ge_max(min: Option<usize>, max: Option<usize>) -> bool {
    match (min, max) {
        (None, _) => true,
        (_, None) => true,
        (Some(a), Some(b)) => a >= b,
    }
}

/// A pattern: a nonempty word over the nonnegative integers whose value set
/// is exactly `{0, 1, …, m}` for some `m ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    values: Vec<usize>,
}

impl Pattern {
    /// Validates the interval condition on the value set.
    pub fn new(values: Vec<usize>) -> Result<Self, SeqError> {
        if values.is_empty() {
            return Err(SeqError::NotAPattern);
        }
        let max = *values.iter().max().expect("nonempty");
        let seen: BTreeSet<usize> = values.iter().copied().collect();
        if seen.len() != max + 1 {
            return Err(SeqError::NotAPattern);
        }
        Ok(Self { values })
    }

    /// The constant pattern `0^k` (requires `k ≥ 1`).
    pub fn constant(k: usize) -> Result<Self, SeqError> {
        Self::new(vec![0; k])
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether every letter equals zero.
    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// Parses entry lists in the two accepted literal forms: a comma-free digit
/// string when every entry is a single digit ("0021"), or comma-separated
/// decimal values ("0,1,10"). The empty string denotes the empty list.
pub(crate) fn parse_entry_literal(s: &str) -> Result<Vec<usize>, SeqError> {
    let s = s.trim();
    if s.is_empty() || s == "ε" {
        return Ok(Vec::new());
    }
    let bad = || SeqError::BadLiteral(s.to_string());
    if s.contains(',') {
        s.split(',')
            .map(|part| part.trim().parse::<usize>().map_err(|_| bad()))
            .collect()
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect()
    }
}

fn format_entries(entries: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if entries.iter().all(|&v| v <= 9) {
        for v in entries {
            write!(f, "{v}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = entries.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Display for InversionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_entries(&self.entries, f)
    }
}

impl FromStr for InversionSequence {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_entry_literal(s)?)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_entries(&self.values, f)
    }
}

impl FromStr for Pattern {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::new(parse_entry_literal(s)?)
    }
}
