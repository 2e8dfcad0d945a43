//! Brute-force enumeration of pattern-avoiding inversion sequences.
//!
//! The enumerator extends prefixes depth-first, pruning as soon as an
//! appended entry completes an occurrence of a forbidden pattern. For
//! length-≤3 patterns and constant patterns the check is incremental
//! (see [`ScanState`]); other shapes fall back to a full rescan.

use num_bigint::BigUint;
use thiserror::Error;

use crate::count::CountTable;
use crate::seq::{InversionSequence, Pattern};

/// Errors from constructing incremental pattern guards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GuardError {
    /// The incremental scan supports patterns of length ≤ 3 and constant
    /// patterns of any length; anything else is out of scope.
    #[error("no incremental guard for pattern shape {0}")]
    UnsupportedShape(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GuardKind {
    /// Constant pattern 0^k (k ≥ 1): an append of v completes
    /// C(#earlier copies of v, k−1) new occurrences.
    Constant(usize),
    /// Length-2 pattern: count earlier letters comparing to the new one
    /// the way the first pattern letter compares to the second.
    Pair,
    /// Length-3 pattern: count earlier ordered pairs matching the first
    /// two pattern letters whose relations to the new letter also match.
    Triple,
}

/// A forbidden pattern compiled for the incremental scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenPattern {
    pattern: Pattern,
    kind: GuardKind,
}

impl ForbiddenPattern {
    /// Compiles `pattern` for incremental checking; errors when the shape
    /// is unsupported (non-constant and longer than 3).
    pub fn classical(pattern: Pattern) -> Result<Self, GuardError> {
        let kind = if pattern.is_constant() {
            GuardKind::Constant(pattern.len())
        } else {
            match pattern.len() {
                2 => GuardKind::Pair,
                3 => GuardKind::Triple,
                _ => return Err(GuardError::UnsupportedShape(pattern.to_string())),
            }
        };
        Ok(Self { pattern, kind })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }
}

/// Incrementally maintained occurrence state for a word read left to right:
/// per-value letter counts and ordered pair counts. Appends are invertible,
/// so a depth-first enumerator can share one state across the whole search.
#[derive(Debug, Clone)]
pub struct ScanState {
    /// cnt[v] = number of letters equal to v so far.
    cnt: Vec<u64>,
    /// pairs[a*capacity + b] = number of index pairs i < j with word (a, b).
    pairs: Vec<u64>,
    capacity: usize,
    stack: Vec<usize>,
}

impl ScanState {
    /// A state accepting letters in `0..capacity`.
    pub fn new(capacity: usize) -> Self {
        Self {
            cnt: vec![0; capacity],
            pairs: vec![0; capacity * capacity],
            capacity,
            stack: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.stack.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stack.is_empty()
    }

    /// Appends a letter (must satisfy `v < capacity`).
    pub fn append(&mut self, v: usize) {
        for a in 0..self.capacity {
            self.pairs[a * self.capacity + v] += self.cnt[a];
        }
        self.cnt[v] += 1;
        self.stack.push(v);
    }

    /// Removes the most recently appended letter.
    pub fn pop(&mut self) {
        let v = self.stack.pop().expect("pop on empty scan state");
        self.cnt[v] -= 1;
        for a in 0..self.capacity {
            self.pairs[a * self.capacity + v] -= self.cnt[a];
        }
    }

    /// Number of new occurrences of the guarded pattern that appending `v`
    /// would complete (the state itself is not modified).
    pub fn occurrences_created(&self, guard: &ForbiddenPattern, v: usize) -> u64 {
        let p = guard.pattern.values();
        match guard.kind {
            GuardKind::Constant(k) => binomial_u64(self.cnt[v], (k - 1) as u64),
            GuardKind::Pair => {
                let rel = p[0].cmp(&p[1]);
                (0..self.capacity)
                    .filter(|&a| a.cmp(&v) == rel)
                    .map(|a| self.cnt[a])
                    .sum()
            }
            GuardKind::Triple => {
                let mut total = 0;
                for a in 0..self.capacity {
                    if self.cnt[a] == 0 || a.cmp(&v) != p[0].cmp(&p[2]) {
                        continue;
                    }
                    for b in 0..self.capacity {
                        if b.cmp(&v) == p[1].cmp(&p[2]) && a.cmp(&b) == p[0].cmp(&p[1]) {
                            total += self.pairs[a * self.capacity + b];
                        }
                    }
                }
                total
            }
        }
    }
}

fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u64 = 1;
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// One forbidden pattern, compiled incrementally where possible.
enum Guard {
    Scan(ForbiddenPattern),
    Rescan(Pattern),
}

fn build_guards(patterns: &[Pattern]) -> Vec<Guard> {
    patterns
        .iter()
        .map(|p| match ForbiddenPattern::classical(p.clone()) {
            Ok(g) => Guard::Scan(g),
            Err(_) => Guard::Rescan(p.clone()),
        })
        .collect()
}

/// Whether appending `v` to `prefix` keeps all guards unviolated.
fn extension_allowed(guards: &[Guard], scan: &ScanState, prefix: &[usize], v: usize) -> bool {
    guards.iter().all(|g| match g {
        Guard::Scan(fp) => scan.occurrences_created(fp, v) == 0,
        Guard::Rescan(p) => {
            let mut word = prefix.to_vec();
            word.push(v);
            !naive_contains(&word, p.values())
        }
    })
}

/// All members of `I_n(patterns)`, each exactly once, in lexicographic order.
pub fn enumerate_avoiders(n: usize, patterns: &[Pattern]) -> Vec<InversionSequence> {
    let guards = build_guards(patterns);
    let mut scan = ScanState::new(n.max(1));
    let mut prefix = Vec::with_capacity(n);
    let mut out = Vec::new();
    dfs_collect(n, &guards, &mut scan, &mut prefix, &mut out);
    out
}

fn dfs_collect(
    n: usize,
    guards: &[Guard],
    scan: &mut ScanState,
    prefix: &mut Vec<usize>,
    out: &mut Vec<InversionSequence>,
) {
    if prefix.len() == n {
        out.push(InversionSequence::new(prefix.clone()).expect("bound kept by the search"));
        return;
    }
    let i = prefix.len();
    for v in 0..=i {
        if extension_allowed(guards, scan, prefix, v) {
            scan.append(v);
            prefix.push(v);
            dfs_collect(n, guards, scan, prefix, out);
            prefix.pop();
            scan.pop();
        }
    }
}

/// `|I_m(patterns)|` for every `m ≤ n_max`, by pruned depth-first search.
pub fn count_avoiding_levels(n_max: usize, patterns: &[Pattern]) -> CountTable {
    let guards = build_guards(patterns);
    let mut scan = ScanState::new(n_max.max(1));
    let mut prefix = Vec::with_capacity(n_max);
    let mut counts = vec![0u64; n_max + 1];
    counts[0] = 1;
    dfs_count(n_max, &guards, &mut scan, &mut prefix, &mut counts);
    CountTable::new(counts.into_iter().map(BigUint::from).collect())
}

fn dfs_count(
    n_max: usize,
    guards: &[Guard],
    scan: &mut ScanState,
    prefix: &mut Vec<usize>,
    counts: &mut [u64],
) {
    let i = prefix.len();
    if i == n_max {
        return;
    }
    for v in 0..=i {
        if extension_allowed(guards, scan, prefix, v) {
            scan.append(v);
            prefix.push(v);
            counts[i + 1] += 1;
            dfs_count(n_max, guards, scan, prefix, counts);
            prefix.pop();
            scan.pop();
        }
    }
}

/// Occurrence test by explicit subsequence search; the slow oracle used to
/// validate the incremental scan.
pub fn naive_contains(word: &[usize], pattern: &[usize]) -> bool {
    fn rec(word: &[usize], pattern: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == pattern.len() {
            return true;
        }
        let k = chosen.len();
        for idx in start..word.len() {
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(j, &cj)| word[cj].cmp(&word[idx]) == pattern[j].cmp(&pattern[k]));
            if ok {
                chosen.push(idx);
                if rec(word, pattern, idx + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(pattern.len());
    rec(word, pattern, 0, &mut chosen)
}

/// Whether `entries` avoids every pattern in `patterns` (slow oracle).
pub fn is_avoider(entries: &[usize], patterns: &[Pattern]) -> bool {
    patterns.iter().all(|p| !naive_contains(entries, p.values()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pats(specs: &[&str]) -> Vec<Pattern> {
        specs.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn unrestricted_level_three_is_lexicographic() {
        let all = enumerate_avoiders(3, &[]);
        let rendered: Vec<String> = all.iter().map(|s| s.to_string()).collect();
        assert_eq!(rendered, vec!["000", "001", "002", "010", "011", "012"]);
    }

    #[test]
    fn unrestricted_counts_are_factorials() {
        let t = count_avoiding_levels(7, &[]);
        assert_eq!(t.to_u64s(), Some(vec![1, 1, 2, 6, 24, 120, 720, 5040]));
    }

    #[test]
    fn small_avoider_counts() {
        assert_eq!(enumerate_avoiders(3, &pats(&["011"])).len(), 5);
        assert_eq!(enumerate_avoiders(4, &pats(&["201", "210"])).len(), 24);
        assert_eq!(enumerate_avoiders(4, &pats(&["000"])).len(), 16);
        assert_eq!(enumerate_avoiders(4, &pats(&["120"])).len(), 23);
        assert_eq!(enumerate_avoiders(4, &pats(&["010"])).len(), 15);
        assert_eq!(enumerate_avoiders(4, &pats(&["100"])).len(), 23);
    }

    #[test]
    fn constant_pattern_forces_distinct_values() {
        // Avoiding 00 forces all entries distinct, so σ = (0,1,…,n−1).
        let t = count_avoiding_levels(5, &pats(&["00"]));
        assert_eq!(t.to_u64s(), Some(vec![1, 1, 1, 1, 1, 1]));
        let only = enumerate_avoiders(4, &pats(&["00"]));
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].to_string(), "0123");
    }

    #[test]
    fn enumeration_matches_slow_oracle() {
        let families = [
            vec!["000"],
            vec!["001"],
            vec!["010"],
            vec!["011"],
            vec!["012"],
            vec!["021"],
            vec!["100"],
            vec!["101"],
            vec!["102"],
            vec!["110"],
            vec!["120"],
            vec!["201"],
            vec!["210"],
            vec!["201", "210"],
            vec!["010", "102"],
            vec!["00"],
            vec!["0000"],
        ];
        let universe = enumerate_avoiders(6, &[]);
        for family in families {
            let patterns = pats(&family);
            let fast = enumerate_avoiders(6, &patterns);
            let slow: Vec<InversionSequence> = universe
                .iter()
                .filter(|s| is_avoider(s.entries(), &patterns))
                .cloned()
                .collect();
            assert_eq!(fast, slow, "family {family:?}");
        }
    }

    #[test]
    fn levels_agree_with_per_level_enumeration() {
        let patterns = pats(&["102"]);
        let t = count_avoiding_levels(6, &patterns);
        for n in 0..=6 {
            assert_eq!(
                t[n],
                BigUint::from(enumerate_avoiders(n, &patterns).len()),
                "size {n}"
            );
        }
    }

    #[test]
    fn scan_state_pop_restores_counts() {
        let mut scan = ScanState::new(5);
        let guard = ForbiddenPattern::classical("012".parse().unwrap()).unwrap();
        scan.append(0);
        scan.append(1);
        let before = scan.occurrences_created(&guard, 2);
        assert_eq!(before, 1);
        scan.append(2);
        scan.pop();
        assert_eq!(scan.occurrences_created(&guard, 2), before);
        scan.pop();
        scan.pop();
        assert!(scan.is_empty());
        assert_eq!(scan.occurrences_created(&guard, 2), 0);
    }

    #[test]
    fn rescan_guard_handles_long_patterns() {
        // 0123 is not scan-supported; the rescan fallback must still prune.
        let patterns = pats(&["0123"]);
        let t = count_avoiding_levels(6, &patterns);
        let universe = enumerate_avoiders(6, &[]);
        let slow = universe
            .iter()
            .filter(|s| is_avoider(s.entries(), &patterns))
            .count();
        assert_eq!(t[6], BigUint::from(slow));
    }
}
