//! Differential checks of every succession rule against brute-force
//! enumeration: level counts (conservation), per-label distributions for
//! the rules whose labels are direct sequence statistics, agreement of the
//! three 120-avoiding rules, and termination of same-level rewriting.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use invseq::enumerate::{count_avoiding_levels, enumerate_avoiders};
use invseq::rules::dp::{counted_levels, level_counts};
use invseq::rules::{axiom, info, label_of_sequence, production, Label, RuleId};
use invseq::Pattern;

fn pattern(word: &str) -> Pattern {
    word.parse().expect("valid pattern literal")
}

/// Every rule in the catalog reproduces the level counts of its class, as
/// measured by direct enumeration, through size 9. Rules that track
/// scaffolding labels are counted through their filter.
#[test]
fn every_rule_reproduces_its_class_census_through_size_nine() {
    const N_MAX: usize = 9;
    for rule in RuleId::catalog() {
        let class = info(rule).patterns.unwrap_or_default();
        let brute = count_avoiding_levels(N_MAX, &class);
        let counted = counted_levels(rule, N_MAX).expect("expansion succeeds");
        assert_eq!(
            counted.totals(),
            &brute,
            "rule {rule} diverges from enumeration of its class"
        );
    }
}

fn label_census(
    n_max: usize,
    class: &[Pattern],
    rule: RuleId,
) -> Vec<BTreeMap<Label, BigUint>> {
    (0..=n_max)
        .map(|n| {
            let mut census: BTreeMap<Label, BigUint> = BTreeMap::new();
            for sigma in enumerate_avoiders(n, class) {
                let label = label_of_sequence(rule, &sigma).expect("statistic applies");
                *census.entry(label).or_default() += 1u32;
            }
            census
        })
        .collect()
}

/// For rules whose labels are plain sequence statistics, the per-label
/// counts produced by the rule match a census of the statistic over the
/// enumerated class, level by level, through size 8. Where one rule serves
/// two single-pattern classes, both classes are checked against it.
#[test]
fn label_distributions_match_statistic_census_through_size_eight() {
    const N_MAX: usize = 8;
    let cases: Vec<(RuleId, Vec<Pattern>)> = vec![
        (RuleId::OmegaLeft, vec![]),
        (RuleId::OmegaPCat, vec![pattern("101")]),
        (RuleId::Omega101_110, vec![pattern("110")]),
        (
            RuleId::Omega201_210,
            vec![pattern("201"), pattern("210")],
        ),
        (RuleId::Omega102, vec![pattern("102")]),
        (RuleId::Omega201_210Table, vec![pattern("201")]),
        (RuleId::Omega201_210Table, vec![pattern("210")]),
        (RuleId::Omega000, vec![pattern("000")]),
        (RuleId::Omega0k(4), vec![pattern("0000")]),
        (RuleId::Omega100, vec![pattern("100")]),
        (RuleId::Omega120, vec![pattern("120")]),
    ];
    for (rule, class) in cases {
        let counted = counted_levels(rule, N_MAX).expect("expansion succeeds");
        let census = label_census(N_MAX, &class, rule);
        for (n, expected) in census.iter().enumerate() {
            assert_eq!(
                counted.by_label(n),
                expected,
                "label distribution of rule {rule} diverges at size {n} for class {class:?}"
            );
        }
    }
}

/// The three rules for the 120-avoiding class agree with each other level
/// by level through size 14 (well past the range covered by enumeration),
/// and with the frozen census through size 12.
#[test]
fn all_three_rules_for_120_agree_through_size_fourteen() {
    const N_MAX: usize = 14;
    let runs = level_counts(RuleId::Omega120, N_MAX).expect("expansion succeeds");
    let commit = counted_levels(RuleId::Omega120Prime, N_MAX).expect("expansion succeeds");
    let jump = level_counts(RuleId::Omega120DoublePrime, N_MAX).expect("expansion succeeds");
    assert_eq!(runs.totals(), commit.totals(), "runs vs commit form");
    assert_eq!(runs.totals(), jump.totals(), "runs vs jump form");

    let frozen: [u64; 13] = [
        1,
        1,
        2,
        6,
        23,
        103,
        515,
        2_803,
        16_334,
        100_700,
        650_905,
        4_380_595,
        30_528_410,
    ];
    for (n, &expected) in frozen.iter().enumerate() {
        assert_eq!(
            runs.totals().get(n).expect("within range"),
            &BigUint::from(expected),
            "120-avoiding census at size {n}"
        );
    }
}

/// Same-level edges (jump 0) must strictly decrease the leading parameter,
/// so a level can only be rewritten finitely often. Checked on every label
/// the lettered rule reaches through size 10.
#[test]
fn same_level_edges_strictly_decrease_their_parameter() {
    const N_MAX: usize = 10;
    let rule = RuleId::Omega010_102;
    let expansion = level_counts(rule, N_MAX).expect("expansion succeeds");
    let mut labels_seen = 0usize;
    for n in 0..=N_MAX {
        for label in expansion.by_label(n).keys() {
            labels_seen += 1;
            for item in production(rule, label, usize::MAX).expect("reachable label") {
                if item.jump == 0 {
                    assert!(
                        item.label.params()[0] < label.params()[0],
                        "same-level edge {label} -> {} does not descend",
                        item.label
                    );
                }
            }
        }
    }
    assert!(labels_seen > 100, "the walk should visit many labels");
}

/// Out-degree identities: the unrestricted rule at label (k) has total
/// multiplicity 2^k, and the {201, 210} rule at label (s) has total
/// multiplicity 2^s.
#[test]
fn out_degrees_are_powers_of_two() {
    for k in 0..=16i64 {
        for (rule, name) in [
            (RuleId::OmegaLeft, "unrestricted"),
            (RuleId::Omega201_210, "{201, 210}"),
        ] {
            let total: BigUint = production(rule, &Label::of(&[k]), usize::MAX)
                .expect("label is reachable")
                .into_iter()
                .map(|item| item.multiplicity)
                .sum();
            assert_eq!(
                total,
                BigUint::from(1u32) << k as u32,
                "{name} rule at ({k})"
            );
        }
    }
}

/// The root of every rule carries the axiom label and exactly one node.
#[test]
fn every_rule_starts_from_a_single_axiom_node() {
    for rule in RuleId::catalog() {
        let expansion = level_counts(rule, 3).expect("expansion succeeds");
        let root = expansion.by_label(0);
        assert_eq!(root.len(), 1, "rule {rule} has a unique root label");
        let (label, count) = root.iter().next().expect("root level is nonempty");
        assert_eq!(label, &axiom(rule), "rule {rule} root label");
        assert_eq!(count, &BigUint::from(1u32), "rule {rule} root count");
    }
}
