//! The generating tree that grows inversion sequences on the left.
//!
//! A sequence σ of size n has one child per subset Z of its zero positions:
//! prepend a zero, add 1 to every positive entry, and add 1 to the zeros at
//! positions in Z. Deleting the leftmost entry and subtracting 1 from every
//! positive entry recovers the parent, so every inversion sequence of size
//! n+1 arises exactly once and σ has `2^{|Zeros(σ)|}` children.
//!
//! Restricting the tree to the avoiders of a pattern ρ keeps it a tree only
//! for some ρ (the avoiders must be closed under taking parents); the
//! closure predicate and an exhaustive checker live here, as does the
//! modified tree with level jumps used for the class avoiding {010, 102}.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use thiserror::Error;

use crate::count::CountTable;
use crate::enumerate::enumerate_avoiders;
use crate::seq::{InversionSequence, Pattern};

/// Errors from tree operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("Z must be a subset of the zero positions of the sequence")]
    InvalidZeroSubset,
    #[error("the empty sequence has no parent")]
    EmptySequence,
    #[error("sequence contains the pattern {0}")]
    ContainsForbidden(Pattern),
    #[error("the avoiders of {0} are not closed under the parent map")]
    NotClosedUnderTree(Pattern),
}

/// The child of `sigma` for the zero subset `Z`: prepend 0, then add
/// `χ(σᵢ > 0) + χ(i ∈ Z)` to each entry.
pub fn child(
    sigma: &InversionSequence,
    z_set: &BTreeSet<usize>,
) -> Result<InversionSequence, TreeError> {
    let zeros = &sigma.statistics().zeros;
    if !z_set.is_subset(zeros) {
        return Err(TreeError::InvalidZeroSubset);
    }
    Ok(child_unchecked(sigma, z_set))
}

fn child_unchecked(sigma: &InversionSequence, z_set: &BTreeSet<usize>) -> InversionSequence {
    let mut entries = Vec::with_capacity(sigma.len() + 1);
    entries.push(0);
    for (idx, &v) in sigma.entries().iter().enumerate() {
        let bump = usize::from(v > 0) + usize::from(z_set.contains(&(idx + 1)));
        entries.push(v + bump);
    }
    InversionSequence::new(entries).expect("the child formula preserves the bound")
}

/// The parent of a nonempty sequence: delete the leftmost entry and subtract
/// 1 from every positive entry.
pub fn parent(tau: &InversionSequence) -> Result<InversionSequence, TreeError> {
    if tau.is_empty() {
        return Err(TreeError::EmptySequence);
    }
    let entries = tau.entries()[1..]
        .iter()
        .map(|&v| v.saturating_sub(1))
        .collect();
    Ok(InversionSequence::new(entries).expect("the parent map preserves the bound"))
}

/// The zero subsets of `sigma` in the canonical order: increasing binary
/// encoding, where bit value 2^i stands for position i.
pub fn zero_subsets(sigma: &InversionSequence) -> Vec<BTreeSet<usize>> {
    let zeros: Vec<usize> = sigma.statistics().zeros.into_iter().collect();
    let z = zeros.len();
    assert!(z < usize::BITS as usize - 1, "too many zero positions to enumerate subsets");
    // Mapping rank-mask bits to increasing positions preserves binary order,
    // so iterating rank masks 0..2^z yields position encodings in increasing
    // order as well.
    (0u64..(1u64 << z))
        .map(|mask| {
            zeros
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &p)| p)
                .collect()
        })
        .collect()
}

/// All children of `sigma` that avoid every pattern in `patterns`, in the
/// canonical subset order. `sigma` itself is expected to avoid them.
pub fn children(sigma: &InversionSequence, patterns: &[Pattern]) -> Vec<InversionSequence> {
    zero_subsets(sigma)
        .iter()
        .map(|z_set| child_unchecked(sigma, z_set))
        .filter(|tau| patterns.iter().all(|rho| tau.avoids(rho)))
        .collect()
}

/// The zero subsets Z for which `child(sigma, Z)` still avoids {201, 210}:
/// exactly those with `Z ∩ R ∈ {∅, R}`, where R is the set of zero positions
/// to the right of some positive entry.
pub fn valid_zero_subsets_201210(
    sigma: &InversionSequence,
) -> Result<Vec<BTreeSet<usize>>, TreeError> {
    for word in [vec![2, 0, 1], vec![2, 1, 0]] {
        let rho = Pattern::new(word).expect("valid pattern");
        if sigma.contains(&rho) {
            return Err(TreeError::ContainsForbidden(rho));
        }
    }
    let trailing = sigma.statistics().trailing;
    Ok(zero_subsets(sigma)
        .into_iter()
        .filter(|z_set| {
            let meet: BTreeSet<usize> = z_set.intersection(&trailing).copied().collect();
            meet.is_empty() || meet == trailing
        })
        .collect())
}

/// Whether the avoiders of `rho` are predicted to be closed under the parent
/// map: `rho` contains a single zero, or exactly two zeros and begins 00.
pub fn closure_predicted(rho: &Pattern) -> bool {
    let zeros = rho.values().iter().filter(|&&v| v == 0).count();
    zeros == 1 || (zeros == 2 && rho.values().starts_with(&[0, 0]))
}

/// Outcome of an exhaustive closure search for one pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureVerdict {
    pub pattern: Pattern,
    /// No avoider with a ρ-containing parent was found up to the bound.
    pub closed: bool,
    /// What [`closure_predicted`] says; must agree with `closed`.
    pub predicted_closed: bool,
    /// When not closed: (σ containing ρ, child of σ avoiding ρ).
    pub counterexample: Option<(InversionSequence, InversionSequence)>,
    /// Parents were searched through this size.
    pub n_checked: usize,
}

/// Searches all σ ∈ I_n (n ≤ n_max) in size-then-lexicographic order for a
/// σ containing `rho` with some child avoiding `rho`; the first hit shows
/// the restriction is not closed under the parent map.
pub fn closure_check(rho: &Pattern, n_max: usize) -> ClosureVerdict {
    let mut counterexample = None;
    'search: for n in 1..=n_max {
        for sigma in enumerate_avoiders(n, &[]) {
            if sigma.avoids(rho) {
                continue;
            }
            for z_set in zero_subsets(&sigma) {
                let tau = child_unchecked(&sigma, &z_set);
                if tau.avoids(rho) {
                    counterexample = Some((sigma, tau));
                    break 'search;
                }
            }
        }
    }
    ClosureVerdict {
        pattern: rho.clone(),
        closed: counterexample.is_none(),
        predicted_closed: closure_predicted(rho),
        counterexample,
        n_checked: n_max,
    }
}

/// Per-level node counts of the tree restricted to avoiders of `patterns`,
/// for levels 0..=n_max. Errors unless every pattern passes the closure
/// predicate (otherwise the restriction is not a tree).
pub fn restricted_level_counts(
    patterns: &[Pattern],
    n_max: usize,
) -> Result<CountTable, TreeError> {
    for rho in patterns {
        if !closure_predicted(rho) {
            return Err(TreeError::NotClosedUnderTree(rho.clone()));
        }
    }
    let mut counts = vec![0u64; n_max + 1];
    counts[0] = 1;
    descend(&InversionSequence::empty(), patterns, n_max, &mut counts);
    Ok(CountTable::new(counts.into_iter().map(BigUint::from).collect()))
}

fn descend(sigma: &InversionSequence, patterns: &[Pattern], n_max: usize, counts: &mut [u64]) {
    let level = sigma.len();
    if level == n_max {
        return;
    }
    for tau in children(sigma, patterns) {
        counts[level + 1] += 1;
        descend(&tau, patterns, n_max, counts);
    }
}

fn patterns_010_102() -> [Pattern; 2] {
    [
        Pattern::new(vec![0, 1, 0]).expect("valid pattern"),
        Pattern::new(vec![1, 0, 2]).expect("valid pattern"),
    ]
}

/// Parent step in the modified tree for the class avoiding {010, 102},
/// together with the length of the edge climbed (0 or 1).
///
/// Rules, in order of precedence, for a nonempty avoider τ:
/// (a) if some entry of value 1 lies to the right of an entry greater
///     than 1: remove the leftmost entry of value 1 (jump 1);
/// (b) else if τ contains the value 1: turn the leftmost 1 into 0 (jump 0);
/// (c) else: remove the first zero and subtract 1 from every nonzero entry
///     (jump 1).
pub fn modified_parent_010_102(
    tau: &InversionSequence,
) -> Result<(InversionSequence, usize), TreeError> {
    if tau.is_empty() {
        return Err(TreeError::EmptySequence);
    }
    for rho in patterns_010_102() {
        if tau.contains(&rho) {
            return Err(TreeError::ContainsForbidden(rho));
        }
    }
    let entries = tau.entries();
    let leftmost_one = entries.iter().position(|&v| v == 1);
    if let Some(one_idx) = leftmost_one {
        let big_before_some_one = entries
            .iter()
            .enumerate()
            .any(|(i, &v)| v > 1 && entries[i + 1..].contains(&1));
        if big_before_some_one {
            // (a): every 1 sits in one consecutive block here, and the block
            // lies right of the greater entry; drop the leftmost 1.
            let removed: Vec<usize> = entries
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != one_idx)
                .map(|(_, &v)| v)
                .collect();
            let parent = InversionSequence::new(removed)
                .expect("removing a 1 after a greater value keeps the bound");
            return Ok((parent, 1));
        }
        // (b): τ = 0^a 1^b with nothing greater before the 1s.
        let mut entries = entries.to_vec();
        entries[one_idx] = 0;
        let parent =
            InversionSequence::new(entries).expect("decrementing an entry keeps the bound");
        return Ok((parent, 0));
    }
    // (c): no value 1 at all, so the zeros form a prefix block.
    let rest: Vec<usize> = entries[1..]
        .iter()
        .map(|&v| v.saturating_sub(1))
        .collect();
    let parent = InversionSequence::new(rest).expect("the parent map preserves the bound");
    Ok((parent, 1))
}

/// Walks the modified parent map from every avoider of {010, 102} of size
/// ≤ n_max, checking each walk reaches ε with jump lengths summing to the
/// starting size; returns the per-size counts.
pub fn verify_modified_tree(n_max: usize) -> Result<CountTable, TreeError> {
    let patterns = patterns_010_102();
    let mut counts = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let avoiders = enumerate_avoiders(n, &patterns);
        for sigma in &avoiders {
            let mut cursor = sigma.clone();
            let mut jump_total = 0usize;
            let mut steps = 0usize;
            while !cursor.is_empty() {
                let (up, jump) = modified_parent_010_102(&cursor)?;
                jump_total += jump;
                cursor = up;
                steps += 1;
                assert!(
                    steps <= 2 * n + 2,
                    "parent walk from {sigma} did not terminate"
                );
            }
            assert_eq!(
                jump_total, n,
                "jump lengths along the walk from {sigma} must sum to its size"
            );
        }
        counts.push(BigUint::from(avoiders.len()));
    }
    Ok(CountTable::new(counts))
}
