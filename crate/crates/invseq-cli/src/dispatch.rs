//! Argument interpretation for the `count` command: parsing class
//! descriptors (pattern sets or rule names) and dispatching to the five
//! counting engines.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use clap::ValueEnum;
use num_bigint::BigUint;

use invseq::enumerate::count_avoiding_levels;
use invseq::recurrence::count_010_102;
use invseq::rules::dp::counted_levels;
use invseq::rules::{info, RuleId};
use invseq::series::gf::{class_010_102_series, class_201_210_series};
use invseq::tree::{closure_predicted, restricted_level_counts, verify_modified_tree};
use invseq::{CountTable, Pattern};

use crate::report::CountReport;
use crate::CliError;

/// Exhaustive enumeration is factorial; the contract caps it here.
pub const BRUTE_N_MAX: usize = 11;
/// Tree traversal materializes every node; the unrestricted tree has n!
/// of them per level, so the cap sits just above the brute-force one.
pub const TREE_N_MAX: usize = 12;
/// The modified tree only holds class members, which grow at a tame
/// exponential rate, so it can afford a few more levels.
pub const MODIFIED_TREE_N_MAX: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Exhaustive enumeration with incremental occurrence scanning.
    Brute,
    /// Left-growing tree traversal (modified tree for the class {010, 102}).
    Tree,
    /// Succession-rule label dynamic programming.
    Rule,
    /// The three-statistic counting recurrence ({010, 102} only).
    Recurrence,
    /// Coefficients of the algebraic closed form ({201, 210} and {010, 102}).
    Series,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Brute => "brute",
            Method::Tree => "tree",
            Method::Rule => "rule",
            Method::Recurrence => "recurrence",
            Method::Series => "series",
        };
        write!(f, "{name}")
    }
}

/// A parsed `--class` argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSpec {
    /// A comma-separated set of pattern words, possibly empty.
    Patterns(Vec<Pattern>),
    /// A succession-rule name from the catalog.
    Rule(RuleId),
}

/// Parses a class descriptor: a known rule name first, else a
/// comma-separated list of pattern words ("201,210"); empty, "all", and
/// "none" mean the unrestricted class.
pub fn parse_class(input: &str) -> Result<ClassSpec, CliError> {
    let trimmed = input.trim();
    if trimmed.is_empty() || trimmed == "all" || trimmed == "none" {
        return Ok(ClassSpec::Patterns(Vec::new()));
    }
    if let Ok(rule) = RuleId::from_str(trimmed) {
        return Ok(ClassSpec::Rule(rule));
    }
    let mut patterns = Vec::new();
    for word in trimmed.split(',') {
        let word = word.trim();
        let pattern = Pattern::from_str(word).map_err(|e| {
            CliError::Usage(format!(
                "--class {input:?}: {word:?} is neither a rule name nor a pattern ({e})"
            ))
        })?;
        patterns.push(pattern);
    }
    patterns.sort();
    patterns.dedup();
    Ok(ClassSpec::Patterns(patterns))
}

/// The pattern set a class descriptor denotes (for rules, the class the
/// rule counts; the unrestricted tree gives the empty set).
pub fn patterns_of(class: &ClassSpec) -> Vec<Pattern> {
    match class {
        ClassSpec::Patterns(patterns) => patterns.clone(),
        ClassSpec::Rule(rule) => {
            let mut patterns = info(*rule).patterns.unwrap_or_default();
            patterns.sort();
            patterns.dedup();
            patterns
        }
    }
}

fn pattern_set(words: &[&str]) -> Vec<Pattern> {
    let mut patterns: Vec<Pattern> = words
        .iter()
        .map(|w| Pattern::from_str(w).expect("valid pattern literal"))
        .collect();
    patterns.sort();
    patterns
}

/// Finds a catalog rule counting exactly the given pattern class. The
/// 120-avoiding class goes to the committed two-parameter form, which has
/// no depth restriction; constant patterns outside the catalog get the
/// generic zero-counting rule.
pub fn rule_for_patterns(patterns: &[Pattern]) -> Option<RuleId> {
    if patterns == pattern_set(&["120"]) {
        return Some(RuleId::Omega120Prime);
    }
    for rule in RuleId::catalog() {
        let mut class = info(rule).patterns.unwrap_or_default();
        class.sort();
        if class == patterns {
            return Some(rule);
        }
    }
    if let [single] = patterns {
        if single.is_constant() && single.len() >= 2 {
            return Some(RuleId::Omega0k(single.len()));
        }
    }
    None
}

fn check_cap(method: Method, n: usize, cap: usize) -> Result<(), CliError> {
    if n > cap {
        return Err(CliError::Usage(format!(
            "--method {method} supports --n up to {cap} (got {n})"
        )));
    }
    Ok(())
}

fn series_counts(series: invseq::series::PowerSeries) -> Result<CountTable, CliError> {
    let ints = series
        .integer_coeffs()
        .ok_or_else(|| CliError::Failed("closed form produced a non-integer count".into()))?;
    let counts = ints
        .into_iter()
        .map(|c| {
            c.to_biguint()
                .ok_or_else(|| CliError::Failed("closed form produced a negative count".into()))
        })
        .collect::<Result<Vec<BigUint>, CliError>>()?;
    Ok(CountTable::new(counts))
}

/// Computes counts[0..=n] of the class by the chosen method.
pub fn run_count(class_input: &str, method: Method, n: usize) -> Result<CountReport, CliError> {
    let class = parse_class(class_input)?;
    let patterns = patterns_of(&class);
    let started = Instant::now();

    let table: CountTable = match method {
        Method::Brute => {
            check_cap(method, n, BRUTE_N_MAX)?;
            count_avoiding_levels(n, &patterns)
        }
        Method::Tree => {
            if patterns == pattern_set(&["010", "102"]) {
                check_cap(method, n, MODIFIED_TREE_N_MAX)?;
                verify_modified_tree(n).map_err(|e| CliError::Failed(e.to_string()))?
            } else if patterns.iter().all(closure_predicted) {
                check_cap(method, n, TREE_N_MAX)?;
                restricted_level_counts(&patterns, n)
                    .map_err(|e| CliError::Failed(e.to_string()))?
            } else {
                return Err(CliError::Usage(format!(
                    "--method tree needs a class closed under leftmost-entry deletion \
                     or exactly the pair 010,102; {class_input:?} is neither"
                )));
            }
        }
        Method::Rule => {
            let rule = match class {
                ClassSpec::Rule(rule) => rule,
                ClassSpec::Patterns(ref patterns) => {
                    rule_for_patterns(patterns).ok_or_else(|| {
                        CliError::Usage(format!(
                            "no catalog rule counts the class {class_input:?}; \
                             see `invseq rules list`"
                        ))
                    })?
                }
            };
            counted_levels(rule, n)
                .map_err(|e| CliError::Usage(e.to_string()))?
                .totals()
                .clone()
        }
        Method::Recurrence => {
            if patterns != pattern_set(&["010", "102"]) {
                return Err(CliError::Usage(
                    "--method recurrence only counts the class 010,102".into(),
                ));
            }
            count_010_102(n)
        }
        Method::Series => {
            if patterns == pattern_set(&["201", "210"]) {
                series_counts(
                    class_201_210_series(n).map_err(|e| CliError::Failed(e.to_string()))?,
                )?
            } else if patterns == pattern_set(&["010", "102"]) {
                series_counts(
                    class_010_102_series(n).map_err(|e| CliError::Failed(e.to_string()))?,
                )?
            } else {
                return Err(CliError::Usage(
                    "--method series only covers the classes 201,210 and 010,102".into(),
                ));
            }
        }
    };

    Ok(CountReport::new(
        class_input,
        &method.to_string(),
        &table,
        started.elapsed(),
    ))
}
