//! Polynomial equations P(t, Y) = 0 over the integers, evaluated on
//! truncated series: residual checking and coefficient-by-coefficient
//! solving from a seed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{PowerSeries, SeriesError};

/// P(t, Y) as a list of (Y-power, polynomial in t) pairs with integer
/// coefficients, ascending in the t-polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicEquation {
    terms: Vec<(u32, Vec<BigInt>)>,
}

/// Where the residual series P(t, S) first fails to vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    /// Coefficients t⁰..t^checked_through were examined.
    pub checked_through: usize,
    /// First index with a nonzero residual coefficient, if any.
    pub first_nonzero: Option<usize>,
}

impl Residual {
    /// True when every examined coefficient vanished.
    pub fn vanishes(&self) -> bool {
        self.first_nonzero.is_none()
    }
}

impl AlgebraicEquation {
    /// Builds the equation from (Y-power, ascending t-coefficients) pairs.
    pub fn new(terms: &[(u32, &[i64])]) -> Self {
        assert!(!terms.is_empty(), "an equation needs at least one term");
        assert!(
            terms.iter().any(|(k, _)| *k >= 1),
            "an equation needs a Y-dependent term"
        );
        Self {
            terms: terms
                .iter()
                .map(|(k, poly)| (*k, poly.iter().map(|&c| BigInt::from(c)).collect()))
                .collect(),
        }
    }

    pub fn y_degree(&self) -> u32 {
        self.terms.iter().map(|(k, _)| *k).max().unwrap_or(0)
    }

    /// P(t, s) truncated to the order of `s`.
    pub fn evaluate(&self, s: &PowerSeries) -> PowerSeries {
        let order = s.order();
        // Powers of s up to the Y-degree, computed once.
        let deg = self.y_degree() as usize;
        let mut powers: Vec<PowerSeries> = Vec::with_capacity(deg + 1);
        powers.push(PowerSeries::one(order));
        for _ in 1..=deg {
            let next = &powers[powers.len() - 1] * s;
            powers.push(next);
        }
        let mut acc = PowerSeries::zero(order);
        for (k, poly) in &self.terms {
            let poly_series = PowerSeries::new(
                (0..=order)
                    .map(|i| {
                        poly.get(i)
                            .map(|c| BigRational::from_integer(c.clone()))
                            .unwrap_or_else(BigRational::zero)
                    })
                    .collect(),
            );
            acc = &acc + &(&poly_series * &powers[*k as usize]);
        }
        acc
    }

    /// ∂P/∂Y as an equation (used to linearize when solving).
    pub fn derivative_y(&self) -> AlgebraicEquation {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| *k >= 1)
            .map(|(k, poly)| {
                (
                    k - 1,
                    poly.iter().map(|c| c * BigInt::from(*k)).collect::<Vec<_>>(),
                )
            })
            .collect();
        AlgebraicEquation { terms }
    }

    /// Evaluates P on `s` and reports where the residual first fails to
    /// vanish, through the order of `s`.
    pub fn residual(&self, s: &PowerSeries) -> Residual {
        let r = self.evaluate(s);
        Residual {
            checked_through: r.order(),
            first_nonzero: r.coeffs().iter().position(|c| !c.is_zero()),
        }
    }

    /// Extends `seed` to the unique series solution of P(t, Y) = 0 through
    /// `order`, determining one coefficient at a time: with D = ∂P/∂Y at the
    /// current approximation and ν the valuation of D, the coefficient cₘ
    /// is −R_{m+ν}/D_ν, provided the lower residual coefficients vanish.
    pub fn solve(
        &self,
        seed: &[BigRational],
        order: usize,
    ) -> Result<PowerSeries, SeriesError> {
        let mut coeffs: Vec<BigRational> = seed.to_vec();
        if coeffs.is_empty() {
            return Err(SeriesError::SeedTooShort);
        }
        if coeffs.len() > order + 1 {
            coeffs.truncate(order + 1);
        }
        let derivative = self.derivative_y();
        while coeffs.len() <= order {
            let m = coeffs.len();
            let mut padded = coeffs.clone();
            padded.resize(2 * m + 1, BigRational::zero());
            let approx = PowerSeries::new(padded);
            let residual = self.evaluate(&approx);
            let d = derivative.evaluate(&approx);
            let nu = match d.valuation() {
                Some(nu) => nu,
                None => {
                    // The linearization gives no handle on cₘ: either the
                    // prefix already contradicts the equation, or the next
                    // coefficient is genuinely not pinned down.
                    return Err(match residual.valuation() {
                        Some(bad) => SeriesError::Inconsistent { at: bad },
                        None => SeriesError::BranchAmbiguity { at: m },
                    });
                }
            };
            if m <= nu {
                // cₘ would interact with its own square; the seed must
                // already cover these coefficients.
                return Err(SeriesError::SeedTooShort);
            }
            if let Some(bad) = residual
                .coeffs()
                .iter()
                .take(m + nu)
                .position(|c| !c.is_zero())
            {
                return Err(SeriesError::Inconsistent { at: bad });
            }
            let next = -(residual.coeff(m + nu) / d.coeff(nu));
            coeffs.push(next);
        }
        let result = PowerSeries::new(coeffs);
        // The seed itself is vouched for only as far as the construction
        // could check; a final full residual pass catches bad seeds whose
        // damage hides beyond the stepwise windows.
        match self.residual(&result).first_nonzero {
            Some(bad) => Err(SeriesError::Inconsistent { at: bad }),
            None => Ok(result),
        }
    }
}
