//! Active sites for value-1 insertion.
//!
//! For a sequence avoiding 010 and 102 with no entry equal to 1, the
//! positions where a 1 can be inserted without creating either pattern
//! admit a closed description: writing z for the number of zeros (which all
//! sit in a prefix block here), position `i ∈ [z+1, n+1]` is active exactly
//! when every entry strictly between the zero block and the site is ≥ every
//! entry from the site onward. The oracle below instead performs each
//! insertion and tests avoidance directly; the two must agree.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::enumerate::enumerate_avoiders;
use crate::seq::{min_ge_max, InversionSequence, Pattern};

/// Precondition failures for the active-site computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SiteError {
    #[error("active sites are undefined for the empty sequence")]
    Empty,
    #[error("sequence contains the value 1")]
    ContainsOne,
    #[error("sequence contains the pattern {0}")]
    ContainsForbidden(Pattern),
}

fn forbidden_patterns() -> [Pattern; 2] {
    [
        Pattern::new(vec![0, 1, 0]).expect("valid pattern"),
        Pattern::new(vec![1, 0, 2]).expect("valid pattern"),
    ]
}

fn check_avoids_010_102(sigma: &InversionSequence) -> Result<(), SiteError> {
    for rho in forbidden_patterns() {
        if sigma.contains(&rho) {
            return Err(SiteError::ContainsForbidden(rho));
        }
    }
    Ok(())
}

/// Active sites by the closed description. Requires a nonempty sequence
/// avoiding {010, 102} with no entry equal to 1.
pub fn active_sites(sigma: &InversionSequence) -> Result<BTreeSet<usize>, SiteError> {
    if sigma.is_empty() {
        return Err(SiteError::Empty);
    }
    if sigma.entries().contains(&1) {
        return Err(SiteError::ContainsOne);
    }
    check_avoids_010_102(sigma)?;
    let n = sigma.len();
    let z = sigma.statistics().z;
    let mut sites = BTreeSet::new();
    for i in (z + 1)..=(n + 1) {
        let prefix_min = ((z + 1)..i).map(|j| sigma.at(j)).min();
        let suffix_max = (i..=n).map(|j| sigma.at(j)).max();
        if min_ge_max(prefix_min, suffix_max) {
            sites.insert(i);
        }
    }
    Ok(sites)
}

/// The sequence obtained by inserting the value 1 at position `i`
/// (entries at positions ≥ i shift right). Requires `2 ≤ i ≤ n+1`.
pub fn insert_one(sigma: &InversionSequence, i: usize) -> InversionSequence {
    assert!(
        (2..=sigma.len() + 1).contains(&i),
        "insertion position out of range"
    );
    let mut entries = Vec::with_capacity(sigma.len() + 1);
    entries.extend_from_slice(&sigma.entries()[..i - 1]);
    entries.push(1);
    entries.extend_from_slice(&sigma.entries()[i - 1..]);
    InversionSequence::new(entries).expect("insertion preserves the bound")
}

/// Active sites by direct experiment: inserts the value 1 at every position
/// in `[2, n+1]` and keeps those insertions that still avoid {010, 102}.
/// Requires a sequence avoiding {010, 102}.
pub fn active_sites_oracle(sigma: &InversionSequence) -> Result<BTreeSet<usize>, SiteError> {
    check_avoids_010_102(sigma)?;
    let forbidden = forbidden_patterns();
    let mut sites = BTreeSet::new();
    for i in 2..=(sigma.len() + 1) {
        let tau = insert_one(sigma, i);
        if forbidden.iter().all(|rho| tau.avoids(rho)) {
            sites.insert(i);
        }
    }
    Ok(sites)
}

/// All size-n inversion sequences that avoid {010, 102} and have no entry
/// equal to 1 — the natural domain of [`active_sites`].
pub fn enumerate_one_free_avoiders(n: usize) -> Vec<InversionSequence> {
    enumerate_avoiders(n, &forbidden_patterns())
        .into_iter()
        .filter(|sigma| !sigma.entries().contains(&1))
        .collect()
}
