//! Polynomial-time counting of the class avoiding {010, 102} via the
//! three-index recurrence on b_{n,z,s}.
//!
//! b_{n,z,s} counts size-n avoiders of {010, 102} that skip the value 1,
//! are not all zero, have z zeros (which necessarily form a prefix) and
//! s active sites. The recurrence, for n ≥ 3, z ∈ [2, n−1], s ∈ [2, n−z+1],
//! with every entry zero outside that support, is
//!
//! ```text
//! b_{n,z,s} = b_{n−1,z−1,s}
//!           + χ(z+s = n+1)
//!           + χ(s = 2) · Σ_{z' ≥ z} b_{n−1,z'}
//!           + Σ_{k ≥ 1} b_{n−k−1,z−1,s−k}
//!           + χ(s ≥ 3) · Σ_{n' ≤ n−2} Σ_{s' ≥ s} b_{n',z−1,s'}
//! ```
//!
//! The three sums are maintained as running suffix/diagonal/cumulative
//! tables, so filling all levels up to n costs O(n³).
//!
//! The class count follows by inserting the value 1 at an active site:
//! |I_n(010,102)| = b_{n+1} + 1.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::count::CountTable;
use crate::series::gf::class_010_102_equation;
use crate::series::{PowerSeries, SeriesError};
use crate::sites::{active_sites, enumerate_one_free_avoiders};

type Grid = Vec<Vec<BigUint>>;

fn zero_grid(rows: usize, cols: usize) -> Grid {
    vec![vec![BigUint::zero(); cols]; rows]
}

/// Rolling recurrence state: the last completed level, the diagonal sums
/// feeding the k-sum, and the cumulative suffix sums feeding the n'-sum.
struct Stepper {
    /// Level of `curr`.
    level: usize,
    /// b[level][z][s].
    curr: Grid,
    /// diag[z][s] = Σ_{k ≥ 0} b[level−1−k][z][s−k].
    diag: Grid,
    /// cum[z][s] = Σ_{n' ≤ level−1} Σ_{s' ≥ s} b[n'][z][s'].
    cum: Grid,
}

impl Stepper {
    /// State at level 2 (levels 0..=2 hold no sequences in the table).
    fn new(n_max: usize) -> Self {
        let rows = n_max + 2;
        let cols = n_max + 3;
        Stepper {
            level: 2,
            curr: zero_grid(rows, cols),
            diag: zero_grid(rows, cols),
            cum: zero_grid(rows, cols),
        }
    }

    /// Computes the next level from the five recurrence terms and rolls
    /// the auxiliary sums forward.
    fn advance(&mut self) {
        let n = self.level + 1;
        let rows = self.curr.len();
        let cols = self.curr[0].len();

        // Suffix sums over z of the previous level's z-marginals,
        // feeding the s = 2 term.
        let mut suffix_marginal = vec![BigUint::zero(); rows + 1];
        for z in (0..rows).rev() {
            suffix_marginal[z] =
                &suffix_marginal[z + 1] + self.curr[z].iter().sum::<BigUint>();
        }

        let mut next = zero_grid(rows, cols);
        for z in 2..=n.saturating_sub(1) {
            for s in 2..=(n + 1 - z) {
                let mut value = self.curr[z - 1][s].clone();
                if z + s == n + 1 {
                    value += 1u32;
                }
                if s == 2 {
                    value += &suffix_marginal[z];
                }
                value += &self.diag[z - 1][s - 1];
                if s >= 3 {
                    value += &self.cum[z - 1][s];
                }
                next[z][s] = value;
            }
        }

        // diag[z][s] ← b[n−1][z][s] + diag[z][s−1], descending in s so the
        // shifted value read is still the previous level's.
        for z in 0..rows {
            for s in (0..cols).rev() {
                let shifted = if s == 0 {
                    BigUint::zero()
                } else {
                    self.diag[z][s - 1].clone()
                };
                self.diag[z][s] = &self.curr[z][s] + shifted;
            }
        }
        // cum[z][s] ← cum[z][s] + Σ_{s' ≥ s} b[n−1][z][s'].
        for z in 0..rows {
            let mut run = BigUint::zero();
            for s in (0..cols).rev() {
                run += &self.curr[z][s];
                self.cum[z][s] += &run;
            }
        }

        self.curr = next;
        self.level = n;
    }
}

/// The filled recurrence table b_{n,z,s} for n ≤ n_max.
#[derive(Debug, Clone)]
pub struct BTable {
    n_max: usize,
    /// levels[n][z][s]; every level grid has uniform dimensions.
    levels: Vec<Grid>,
}

impl BTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// b_{n,z,s}; zero outside the stored range.
    pub fn get(&self, n: usize, z: usize, s: usize) -> BigUint {
        self.levels
            .get(n)
            .and_then(|grid| grid.get(z))
            .and_then(|row| row.get(s))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// The marginal b_{n,z} = Σ_s b_{n,z,s}.
    pub fn marginal(&self, n: usize, z: usize) -> BigUint {
        self.levels
            .get(n)
            .and_then(|grid| grid.get(z))
            .map(|row| row.iter().sum())
            .unwrap_or_else(BigUint::zero)
    }

    /// The level total b_n = Σ_{z,s} b_{n,z,s}.
    pub fn level_total(&self, n: usize) -> BigUint {
        self.levels
            .get(n)
            .map(|grid| grid.iter().flatten().sum())
            .unwrap_or_else(BigUint::zero)
    }

    /// b_0 .. b_{n_max} as a count table.
    pub fn totals(&self) -> CountTable {
        CountTable::new((0..=self.n_max).map(|n| self.level_total(n)).collect())
    }
}

/// Fills the table for all n ≤ n_max by the five-term recurrence.
pub fn build_b_table(n_max: usize) -> BTable {
    let mut stepper = Stepper::new(n_max);
    let empty = zero_grid(stepper.curr.len(), stepper.curr[0].len());
    let mut levels = vec![empty; (n_max + 1).min(3)];
    for _ in 3..=n_max {
        stepper.advance();
        levels.push(stepper.curr.clone());
    }
    BTable { n_max, levels }
}

/// b_0 .. b_{n_max} without retaining the per-level grids, for orders
/// where the full table would be bulky.
pub fn b_level_totals(n_max: usize) -> CountTable {
    let mut stepper = Stepper::new(n_max);
    let mut totals = vec![BigUint::zero(); (n_max + 1).min(3)];
    for _ in 3..=n_max {
        stepper.advance();
        totals.push(stepper.curr.iter().flatten().sum());
    }
    CountTable::new(totals)
}

/// |I_n(010,102)| for n ≤ n_max, via the recurrence and the identity
/// |I_n(010,102)| = b_{n+1} + 1.
pub fn count_010_102(n_max: usize) -> CountTable {
    let totals = b_level_totals(n_max + 1);
    CountTable::new(
        (0..=n_max)
            .map(|n| totals.get(n + 1).expect("level within table") + 1u32)
            .collect(),
    )
}

/// The class counting series Σ |I_n(010,102)| tⁿ assembled from the
/// recurrence: (Σ b_n tⁿ + 1/(1−t) − 1) / t, exactly.
pub fn f_series_from_recurrence(order: usize) -> Result<PowerSeries, SeriesError> {
    let b = one_free_nonconstant_series(order + 1);
    let one = PowerSeries::one(order + 1);
    let geometric = one.div(&PowerSeries::polynomial(&[1, -1], order + 1))?;
    let numerator = &(&b + &geometric) - &one;
    Ok(numerator.div_t_power(1)?.truncated(order))
}

/// Σ b_n tⁿ as an exact power series.
pub fn one_free_nonconstant_series(order: usize) -> PowerSeries {
    let totals = b_level_totals(order);
    PowerSeries::new(
        totals
            .counts()
            .iter()
            .map(|b| BigRational::from_integer(BigInt::from(b.clone())))
            .collect(),
    )
}

/// Outcome of checking the recurrence table against a census of the
/// sequences it claims to count.
#[derive(Debug, Clone)]
pub struct BTableCheck {
    pub n_max: usize,
    /// Number of censused sequences (avoiding {010,102}, skipping the
    /// value 1, not all zero) across all sizes ≤ n_max.
    pub sequences: usize,
    /// Whether the census triple table equals the recurrence table.
    pub table_agrees: bool,
    /// First (n, z, s) where the two disagree, if any.
    pub first_mismatch: Option<(usize, usize, usize)>,
    /// Every censused sequence begins with two zeros.
    pub prefix_law_holds: bool,
    /// Positions z+1 and n+1 are active sites of every censused sequence.
    pub boundary_sites_hold: bool,
}

impl BTableCheck {
    pub fn passed(&self) -> bool {
        self.table_agrees && self.prefix_law_holds && self.boundary_sites_hold
    }
}

/// Enumerates the counted sequences directly, computes (z, s) for each via
/// statistics and active sites, and compares the resulting triple table
/// with [`build_b_table`]. Feasible for n_max ≤ 11.
pub fn brute_b_check(n_max: usize) -> BTableCheck {
    assert!(n_max <= 11, "census is exponential in n");
    let table = build_b_table(n_max);
    let mut census: BTreeMap<(usize, usize, usize), BigUint> = BTreeMap::new();
    let mut sequences = 0usize;
    let mut prefix_law_holds = true;
    let mut boundary_sites_hold = true;
    for n in 0..=n_max {
        for sigma in enumerate_one_free_avoiders(n) {
            if sigma.entries().iter().all(|&v| v == 0) {
                continue;
            }
            sequences += 1;
            let stats = sigma.statistics();
            let sites = active_sites(&sigma).expect("censused sequence is in the domain");
            prefix_law_holds &= sigma.at(1) == 0 && sigma.at(2) == 0;
            boundary_sites_hold &=
                sites.contains(&(stats.z + 1)) && sites.contains(&(n + 1));
            *census.entry((n, stats.z, sites.len())).or_default() += 1u32;
        }
    }

    let mut first_mismatch = None;
    'scan: for n in 0..=n_max {
        for z in 0..=n_max + 1 {
            for s in 0..=n_max + 1 {
                let counted = census
                    .get(&(n, z, s))
                    .cloned()
                    .unwrap_or_else(BigUint::zero);
                if counted != table.get(n, z, s) {
                    first_mismatch = Some((n, z, s));
                    break 'scan;
                }
            }
        }
    }
    BTableCheck {
        n_max,
        sequences,
        table_agrees: first_mismatch.is_none(),
        first_mismatch,
        prefix_law_holds,
        boundary_sites_hold,
    }
}

/// Residual of the class counting series against its cubic equation,
/// with the series produced by the recurrence.
pub fn class_series_residual(order: usize) -> Result<bool, SeriesError> {
    let f = f_series_from_recurrence(order)?;
    Ok(class_010_102_equation().residual(&f).vanishes())
}
