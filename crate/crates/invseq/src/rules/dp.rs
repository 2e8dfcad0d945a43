//! Level-count dynamic program over label distributions.
//!
//! Starting from the axiom, each level's label masses are pushed through
//! [`production`](super::production). Edges of jump length j ≥ 1 deposit
//! mass j levels down; same-level edges (jump 0) are iterated within the
//! level to a fixpoint, which terminates because every same-level edge
//! strictly decreases the z parameter of its source label.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::count::CountTable;

use super::{axiom, production, Label, RuleError, RuleId};

/// Levels beyond this are refused for the composition-labelled rule, whose
/// distinct-label count grows exponentially with the level.
pub const COMPOSITION_LEVEL_LIMIT: usize = 18;

/// Node counts per level, with the full label distribution retained.
#[derive(Debug, Clone)]
pub struct LevelCounts {
    totals: CountTable,
    by_label: Vec<BTreeMap<Label, BigUint>>,
}

impl LevelCounts {
    /// Total node count per level, index 0 ..= n_max.
    pub fn totals(&self) -> &CountTable {
        &self.totals
    }

    /// The label → count distribution at `level`.
    pub fn by_label(&self, level: usize) -> &BTreeMap<Label, BigUint> {
        &self.by_label[level]
    }

    pub fn n_max(&self) -> usize {
        self.totals.n_max()
    }
}

/// Whether the rule declares same-level (jump-0) edges.
fn has_same_level_edges(rule: RuleId) -> bool {
    matches!(rule, RuleId::Omega010_102)
}

/// Whether a node labelled `label` is counted by `rule`, for rules that
/// track scaffolding nodes beyond the objects being enumerated. Rules
/// without a counting filter count every node.
pub fn label_is_counted(rule: RuleId, label: &Label) -> bool {
    let param = |i: usize| label.params().get(i).copied().unwrap_or(0);
    match rule {
        RuleId::Omega000 => param(0) <= 2,
        RuleId::Omega0k(k) => param(0) < k as i64,
        RuleId::Omega100 => param(1) - param(0) <= 1,
        RuleId::Omega010 | RuleId::Omega120Prime => param(1) == 0,
        _ => true,
    }
}

fn expand(rule: RuleId, n_max: usize) -> Result<Vec<BTreeMap<Label, BigUint>>, RuleError> {
    if matches!(rule, RuleId::Omega120) && n_max > COMPOSITION_LEVEL_LIMIT {
        return Err(RuleError::LevelTooDeep {
            rule,
            max_level: COMPOSITION_LEVEL_LIMIT,
        });
    }
    let mut levels: Vec<BTreeMap<Label, BigUint>> = vec![BTreeMap::new(); n_max + 1];
    levels[0].insert(axiom(rule), BigUint::one());
    for level in 0..=n_max {
        let budget = n_max - level;
        if budget == 0 && !has_same_level_edges(rule) {
            // Every edge jumps at least one level, so the last level
            // produces nothing within range.
            continue;
        }
        // Worklist of masses not yet pushed through the productions.
        // Same-level edges feed back into it (keyed per label, so mass
        // arriving after a label was popped is produced separately).
        let mut pending = levels[level].clone();
        while let Some((label, mass)) = pending.pop_first() {
            for item in production(rule, &label, budget)? {
                let added = &mass * &item.multiplicity;
                let target = level + item.jump;
                *levels[target].entry(item.label.clone()).or_default() += &added;
                if item.jump == 0 {
                    *pending.entry(item.label).or_default() += added;
                }
            }
        }
    }
    Ok(levels)
}

fn totals_of(levels: &[BTreeMap<Label, BigUint>]) -> CountTable {
    CountTable::new(
        levels
            .iter()
            .map(|level| level.values().sum::<BigUint>())
            .collect(),
    )
}

/// All tree nodes per level, 0 ..= n_max.
pub fn level_counts(rule: RuleId, n_max: usize) -> Result<LevelCounts, RuleError> {
    let by_label = expand(rule, n_max)?;
    Ok(LevelCounts {
        totals: totals_of(&by_label),
        by_label,
    })
}

/// Counted tree nodes per level: the level counts restricted to labels
/// passing [`label_is_counted`]. For every rule this equals the number of
/// size-n sequences in the rule's class.
pub fn counted_levels(rule: RuleId, n_max: usize) -> Result<LevelCounts, RuleError> {
    let mut by_label = expand(rule, n_max)?;
    for level in &mut by_label {
        level.retain(|label, _| label_is_counted(rule, label));
    }
    Ok(LevelCounts {
        totals: totals_of(&by_label),
        by_label,
    })
}
