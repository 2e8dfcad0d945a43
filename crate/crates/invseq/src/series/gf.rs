//! Closed-form generating functions for the counting routes: the algebraic
//! closed form for the class avoiding {201, 210}, the cubic equations tied
//! to the class avoiding {010, 102}, and the two bivariate series whose
//! coefficients serve as edge multiplicities in the 120-avoiding rules.

use super::algebraic::AlgebraicEquation;
use super::bivariate::BivariateSeries;
use super::{rationals, PowerSeries, SeriesError};

/// Counting series for inversion sequences avoiding {201, 210}:
/// (2 − t − t·√(1 − 8t)) / (4t² − 4t + 2), expanded to `order`.
pub fn class_201_210_series(order: usize) -> Result<PowerSeries, SeriesError> {
    let root = PowerSeries::polynomial(&[1, -8], order).sqrt()?;
    let t = PowerSeries::polynomial(&[0, 1], order);
    let numerator = &PowerSeries::polynomial(&[2, -1], order) - &(&t * &root);
    let denominator = PowerSeries::polynomial(&[2, -4, 4], order);
    numerator.div(&denominator)
}

/// The cubic equation satisfied by the counting series F of inversion
/// sequences avoiding {010, 102}.
pub fn class_010_102_equation() -> AlgebraicEquation {
    AlgebraicEquation::new(&[
        (3, &[0, 1, -3, 4, -3, 1]),
        (2, &[0, -2, 6, -8, 4]),
        (1, &[-1, 6, -11, 8, -1]),
        (0, &[1, -4, 5, -2]),
    ])
}

/// The cubic equation satisfied by Σ bₙ tⁿ, where bₙ counts the size-n
/// avoiders of {010, 102} that skip the value 1 and are not all zero.
pub fn one_free_nonconstant_equation() -> AlgebraicEquation {
    AlgebraicEquation::new(&[
        (3, &[-1, 2, -2, 1]),
        (2, &[0, -1, -1, 1]),
        (1, &[0, 1, -4, 2, -1]),
        (0, &[0, 0, 0, 0, -1]),
    ])
}

/// Counting series for inversion sequences avoiding {010, 102}, obtained by
/// solving the cubic from the enumerated seed 1, 1.
pub fn class_010_102_series(order: usize) -> Result<PowerSeries, SeriesError> {
    class_010_102_equation().solve(&rationals(&[1, 1]), order)
}

/// Bivariate series Σ a_{ℓ,k} tˡuᵏ of edge multiplicities for the
/// commitment form of the 120-avoiding rule:
/// (2t − 1 + √(4t²u + 4t² − 4tu − 4t + 1)) / (2u(t − 1)),
/// expanded on the box ℓ ≤ l_max, k ≤ k_max.
pub fn commit_multiplicity_series(
    l_max: usize,
    k_max: usize,
) -> Result<BivariateSeries, SeriesError> {
    // One u-order is consumed by the exact division by u.
    let (tn, un) = (l_max, k_max + 1);
    let radicand = BivariateSeries::from_terms(
        &[(2, 1, 4), (2, 0, 4), (1, 1, -4), (1, 0, -4), (0, 0, 1)],
        tn,
        un,
    );
    let numerator = BivariateSeries::from_terms(&[(1, 0, 2), (0, 0, -1)], tn, un)
        .add(&radicand.sqrt()?);
    let denominator = BivariateSeries::from_terms(&[(1, 0, 2), (0, 0, -2)], tn, k_max);
    numerator.div_u()?.div(&denominator)
}

/// Bivariate series Σ b_{ℓ,k} tˡuᵏ of edge multiplicities for the
/// long-jump form of the 120-avoiding rule:
/// (−2tu + 2t + u − 1 + √(−4t²u + 4t² + 4tu + u² − 4t − 2u + 1)) / (2(t − 1)),
/// expanded on the box ℓ ≤ l_max, k ≤ k_max.
pub fn jump_multiplicity_series(
    l_max: usize,
    k_max: usize,
) -> Result<BivariateSeries, SeriesError> {
    let (tn, un) = (l_max, k_max);
    let radicand = BivariateSeries::from_terms(
        &[
            (2, 1, -4),
            (2, 0, 4),
            (1, 1, 4),
            (0, 2, 1),
            (1, 0, -4),
            (0, 1, -2),
            (0, 0, 1),
        ],
        tn,
        un,
    );
    let numerator =
        BivariateSeries::from_terms(&[(1, 1, -2), (1, 0, 2), (0, 1, 1), (0, 0, -1)], tn, un)
            .add(&radicand.sqrt()?);
    let denominator = BivariateSeries::from_terms(&[(1, 0, 2), (0, 0, -2)], tn, un);
    numerator.div(&denominator)
}
