//! Verification suites for the `verify` command. Each check re-derives a
//! stated fact from scratch (enumeration against formula, table against
//! census, residual against zero) and reports one line; the command exits
//! nonzero if any line fails.

use clap::ValueEnum;
use num_bigint::BigUint;
use num_traits::Zero;

use invseq::enumerate::count_avoiding_levels;
use invseq::recurrence::{b_level_totals, brute_b_check, build_b_table, count_010_102};
use invseq::rules::dp::counted_levels;
use invseq::rules::{info, RuleId};
use invseq::series::gf::{
    class_010_102_equation, class_010_102_series, class_201_210_series,
    commit_multiplicity_series, jump_multiplicity_series, one_free_nonconstant_equation,
};
use invseq::series::PowerSeries;
use invseq::sites::{active_sites, active_sites_oracle, enumerate_one_free_avoiders};
use invseq::tree::{closure_check, closure_predicted};
use invseq::{recurrence, CountTable, Pattern};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Which triple patterns survive leftmost-entry deletion.
    Closure,
    /// Every succession rule against direct enumeration.
    Rules,
    /// Active-site computation against the insertion oracle.
    Sites,
    /// The three-statistic recurrence table against a brute census.
    BTable,
    /// Closed-form series against counts, residuals against zero.
    Gf,
    /// Everything above.
    All,
}

/// One verification result.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    pub fn render(&self) -> String {
        let tag = if self.passed { " ok " } else { "FAIL" };
        format!("[{tag}] {} — {}", self.name, self.detail)
    }
}

/// Runs one suite. `n` overrides the suite's default size/order bound.
pub fn run_suite(suite: Suite, n: Option<usize>) -> Result<Vec<CheckLine>, CliError> {
    let mut lines = Vec::new();
    match suite {
        Suite::Closure => closure_suite(n.unwrap_or(7), &mut lines),
        Suite::Rules => rules_suite(n.unwrap_or(9), &mut lines)?,
        Suite::Sites => sites_suite(n.unwrap_or(9), &mut lines),
        Suite::BTable => b_table_suite(n.unwrap_or(10), &mut lines)?,
        Suite::Gf => gf_suite(n.unwrap_or(40), &mut lines),
        Suite::All => {
            closure_suite(7, &mut lines);
            rules_suite(9, &mut lines)?;
            sites_suite(9, &mut lines);
            b_table_suite(10, &mut lines)?;
            gf_suite(40, &mut lines);
        }
    }
    Ok(lines)
}

fn seq_literal(entries: &[usize]) -> String {
    if entries.is_empty() {
        "ε".to_owned()
    } else {
        entries
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("")
    }
}

fn closure_suite(n_max: usize, lines: &mut Vec<CheckLine>) {
    let all_triples = [
        "000", "001", "010", "011", "012", "021", "100", "101", "102", "110", "120", "201", "210",
    ];
    for word in all_triples {
        let rho: Pattern = word.parse().expect("valid pattern literal");
        let verdict = closure_check(&rho, n_max);
        let consistent = verdict.closed == closure_predicted(&rho);
        let (passed, detail) = match verdict.counterexample {
            None => (
                consistent && verdict.closed,
                format!("avoiders closed under leftmost-entry deletion (parents ≤ {n_max})"),
            ),
            Some((ref sigma, ref tau)) => {
                let witness_valid = sigma.contains(&rho) && tau.avoids(&rho);
                (
                    consistent && witness_valid && !verdict.closed,
                    format!(
                        "not closed: {} contains the pattern, its child {} avoids it",
                        seq_literal(sigma.entries()),
                        seq_literal(tau.entries())
                    ),
                )
            }
        };
        lines.push(CheckLine::new(format!("closure {word}"), passed, detail));
    }
}

fn rules_suite(n_max: usize, lines: &mut Vec<CheckLine>) -> Result<(), CliError> {
    if n_max > 11 {
        return Err(CliError::Usage(format!(
            "the rules suite enumerates exhaustively; --n is capped at 11 (got {n_max})"
        )));
    }
    for rule in RuleId::catalog() {
        let meta = info(rule);
        let class = meta.patterns.clone().unwrap_or_default();
        let brute = count_avoiding_levels(n_max, &class);
        let counted = counted_levels(rule, n_max)
            .map_err(|e| CliError::Failed(e.to_string()))?;
        let passed = counted.totals() == &brute;
        let class_text = if class.is_empty() {
            "the unrestricted class".to_owned()
        } else {
            format!(
                "avoiders of {}",
                class
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        };
        let detail = if passed {
            format!("counted levels ≡ enumeration of {class_text} (sizes ≤ {n_max})")
        } else {
            format!(
                "counted levels {:?} ≠ enumeration {:?}",
                counted.totals().to_u64s(),
                brute.to_u64s()
            )
        };
        lines.push(CheckLine::new(format!("rule {}", meta.name), passed, detail));
    }
    Ok(())
}

fn sites_suite(n_max: usize, lines: &mut Vec<CheckLine>) {
    for n in 1..=n_max {
        let members = enumerate_one_free_avoiders(n);
        let mut divergences = 0usize;
        for sigma in &members {
            let fast = active_sites(sigma);
            let slow = active_sites_oracle(sigma);
            let agree = matches!((&fast, &slow), (Ok(a), Ok(b)) if a == b);
            if !agree {
                divergences += 1;
            }
        }
        lines.push(CheckLine::new(
            format!("sites size {n}"),
            divergences == 0,
            format!(
                "direct computation ≡ insertion oracle on {} sequences ({divergences} divergences)",
                members.len()
            ),
        ));
    }
}

fn b_table_suite(n_max: usize, lines: &mut Vec<CheckLine>) -> Result<(), CliError> {
    if n_max > 11 {
        return Err(CliError::Usage(format!(
            "the b-table suite enumerates exhaustively; --n is capped at 11 (got {n_max})"
        )));
    }
    let check = brute_b_check(n_max);
    lines.push(CheckLine::new(
        "b-table census",
        check.table_agrees,
        match check.first_mismatch {
            None => format!(
                "recurrence table ≡ census of {} sequences over (size, zeros, sites)",
                check.sequences
            ),
            Some((n, z, s)) => format!("first mismatch at (n, z, s) = ({n}, {z}, {s})"),
        },
    ));
    lines.push(CheckLine::new(
        "b-table zero prefix",
        check.prefix_law_holds,
        "every counted sequence starts with two zeros",
    ));
    lines.push(CheckLine::new(
        "b-table boundary sites",
        check.boundary_sites_hold,
        "positions z+1 and n+1 are always active",
    ));

    let table = build_b_table(n_max);
    let mut support_ok = true;
    for n in 0..=n_max {
        for z in 0..=n_max + 1 {
            for s in 0..=n_max + 2 {
                let value = table.get(n, z, s);
                let legal = n >= 3 && (2..=n - 1).contains(&z) && (2..=n + 1 - z).contains(&s);
                if !value.is_zero() && !legal {
                    support_ok = false;
                }
            }
        }
    }
    lines.push(CheckLine::new(
        "b-table support",
        support_ok,
        format!("nonzero entries confined to n ≥ 3, 2 ≤ z ≤ n−1, 2 ≤ s ≤ n+1−z (n ≤ {n_max})"),
    ));

    let totals = b_level_totals(14);
    let mut monotone = true;
    for n in 3..14 {
        if totals.get(n + 1) < totals.get(n) {
            monotone = false;
        }
    }
    lines.push(CheckLine::new(
        "b-table growth",
        monotone,
        "level totals never decrease from size 3 on (checked through 14)",
    ));
    Ok(())
}

fn integer_counts(series: &PowerSeries) -> Option<CountTable> {
    let ints = series.integer_coeffs()?;
    let counts = ints
        .into_iter()
        .map(|c| c.to_biguint())
        .collect::<Option<Vec<BigUint>>>()?;
    Some(CountTable::new(counts))
}

fn gf_suite(order: usize, lines: &mut Vec<CheckLine>) {
    // Closed form for the pair class {201, 210} against its rule.
    let check = match class_201_210_series(order) {
        Err(e) => CheckLine::new("gf 201,210", false, format!("expansion failed: {e}")),
        Ok(series) => match integer_counts(&series) {
            None => CheckLine::new("gf 201,210", false, "non-integer coefficient"),
            Some(counts) => {
                let rule = counted_levels(RuleId::Omega201_210, order)
                    .expect("rule expansion succeeds");
                CheckLine::new(
                    "gf 201,210",
                    &counts == rule.totals(),
                    format!("closed-form coefficients ≡ rule counts (sizes ≤ {order})"),
                )
            }
        },
    };
    lines.push(check);

    // Cubic solution for {010, 102} against the recurrence.
    let check = match class_010_102_series(order) {
        Err(e) => CheckLine::new("gf 010,102", false, format!("solving failed: {e}")),
        Ok(series) => match integer_counts(&series) {
            None => CheckLine::new("gf 010,102", false, "non-integer coefficient"),
            Some(counts) => CheckLine::new(
                "gf 010,102",
                counts == count_010_102(order),
                format!("cubic-equation coefficients ≡ recurrence counts (sizes ≤ {order})"),
            ),
        },
    };
    lines.push(check);

    // Residuals of the two cubics on independently assembled series.
    match recurrence::f_series_from_recurrence(order) {
        Err(e) => lines.push(CheckLine::new(
            "gf residual F",
            false,
            format!("assembly failed: {e}"),
        )),
        Ok(series) => {
            let residual = class_010_102_equation().residual(&series);
            lines.push(CheckLine::new(
                "gf residual F",
                residual.vanishes(),
                format!("class cubic vanishes on the recurrence series through t^{order}"),
            ));
        }
    }
    let b_series = recurrence::one_free_nonconstant_series(order);
    let residual = one_free_nonconstant_equation().residual(&b_series);
    lines.push(CheckLine::new(
        "gf residual B",
        residual.vanishes(),
        format!("three-statistic cubic vanishes on the level totals through t^{order}"),
    ));

    // Negative control: a wrong series must not satisfy the class cubic.
    let all_ones = PowerSeries::new(invseq::series::rationals(&vec![1; order + 1]));
    let control = class_010_102_equation().residual(&all_ones);
    lines.push(CheckLine::new(
        "gf negative control",
        !control.vanishes(),
        "the all-ones series fails the class cubic, as it must",
    ));

    // The two bivariate multiplicity series expand exactly and stay
    // nonnegative integers on a sample box.
    let (l_max, k_max) = (12, 8);
    let check = match commit_multiplicity_series(l_max, k_max) {
        Err(e) => CheckLine::new("gf commit box", false, format!("expansion failed: {e}")),
        Ok(grid) => CheckLine::new(
            "gf commit box",
            grid.is_nonnegative_integral(),
            format!("exact division succeeded; entries on {l_max}×{k_max} are counts"),
        ),
    };
    lines.push(check);
    let check = match jump_multiplicity_series(l_max, k_max) {
        Err(e) => CheckLine::new("gf jump box", false, format!("expansion failed: {e}")),
        Ok(grid) => CheckLine::new(
            "gf jump box",
            grid.is_nonnegative_integral(),
            format!("exact division succeeded; entries on {l_max}×{k_max} are counts"),
        ),
    };
    lines.push(check);
}
