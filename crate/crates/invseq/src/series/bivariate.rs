//! Bivariate truncated series in t and u: a vector of u-series, one per
//! power of t. All arithmetic is exact inside the (t_order, u_order) box.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rat, PowerSeries, SeriesError};

/// A series Σ c_{i,j} tⁱ uʲ truncated at t-order N and u-order M; `rows[i]`
/// is the u-series multiplying tⁱ, and every row carries the same u-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    rows: Vec<PowerSeries>,
}

impl BivariateSeries {
    pub fn new(rows: Vec<PowerSeries>) -> Self {
        assert!(!rows.is_empty(), "a series carries at least t-order 0");
        let u_order = rows[0].order();
        assert!(
            rows.iter().all(|r| r.order() == u_order),
            "all rows must share one u-order"
        );
        Self { rows }
    }

    pub fn zero(t_order: usize, u_order: usize) -> Self {
        Self {
            rows: vec![PowerSeries::zero(u_order); t_order + 1],
        }
    }

    /// Polynomial from (t-power, u-power, coefficient) terms; terms outside
    /// the box are ignored.
    pub fn from_terms(terms: &[(usize, usize, i64)], t_order: usize, u_order: usize) -> Self {
        let mut grid = vec![vec![BigRational::zero(); u_order + 1]; t_order + 1];
        for &(i, j, c) in terms {
            if i <= t_order && j <= u_order {
                grid[i][j] += rat(c);
            }
        }
        Self {
            rows: grid.into_iter().map(PowerSeries::new).collect(),
        }
    }

    pub fn t_order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn u_order(&self) -> usize {
        self.rows[0].order()
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigRational {
        self.rows[i].coeff(j)
    }

    pub fn row(&self, i: usize) -> &PowerSeries {
        &self.rows[i]
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (tn, un) = self.common_box(rhs);
        Self {
            rows: (0..=tn)
                .map(|i| &self.rows[i].truncated(un) + &rhs.rows[i].truncated(un))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let (tn, un) = self.common_box(rhs);
        Self {
            rows: (0..=tn)
                .map(|i| &self.rows[i].truncated(un) - &rhs.rows[i].truncated(un))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let (tn, un) = self.common_box(rhs);
        let mut rows = vec![PowerSeries::zero(un); tn + 1];
        for i in 0..=tn {
            for k in 0..=i {
                let prod = &self.rows[k].truncated(un) * &rhs.rows[i - k].truncated(un);
                rows[i] = &rows[i] + &prod;
            }
        }
        Self { rows }
    }

    fn common_box(&self, rhs: &Self) -> (usize, usize) {
        (
            self.t_order().min(rhs.t_order()),
            self.u_order().min(rhs.u_order()),
        )
    }

    /// Long division in t; the divisor's t⁰ row must be a unit in u
    /// (nonzero constant coefficient).
    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        if rhs.coeff(0, 0).is_zero() {
            return Err(SeriesError::DivisionByNonUnit);
        }
        let (tn, un) = self.common_box(rhs);
        let b0 = rhs.rows[0].truncated(un);
        let mut rows: Vec<PowerSeries> = Vec::with_capacity(tn + 1);
        for n in 0..=tn {
            let mut acc = self.rows[n].truncated(un);
            for k in 1..=n {
                acc = &acc - &(&rhs.rows[k].truncated(un) * &rows[n - k]);
            }
            rows.push(acc.div(&b0)?);
        }
        Ok(Self { rows })
    }

    /// Square root with constant coefficient 1: the t⁰ row's u-series root
    /// is taken first, then each t-row follows from the product recurrence.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.coeff(0, 0).is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let tn = self.t_order();
        let un = self.u_order();
        let s0 = self.rows[0].sqrt()?;
        let double_s0 = s0.scaled(&rat(2));
        let mut rows = vec![PowerSeries::zero(un); tn + 1];
        rows[0] = s0;
        for n in 1..=tn {
            let mut acc = self.rows[n].clone();
            for i in 1..n {
                acc = &acc - &(&rows[i] * &rows[n - i]);
            }
            rows[n] = acc.div(&double_s0)?;
        }
        Ok(Self { rows })
    }

    /// Exact division by u: every row's u⁰ coefficient must vanish; the
    /// u-order drops by 1.
    pub fn div_u(&self) -> Result<Self, SeriesError> {
        if self.u_order() == 0 {
            return Err(SeriesError::NotDivisible("u".to_string()));
        }
        if self.rows.iter().any(|r| !r.coeff(0).is_zero()) {
            return Err(SeriesError::NotDivisible("u".to_string()));
        }
        Ok(Self {
            rows: self
                .rows
                .iter()
                .map(|r| PowerSeries::new(r.coeffs()[1..].to_vec()))
                .collect(),
        })
    }

    /// All coefficients as integers, row-major by t-power, or `None` if any
    /// denominator is not 1.
    pub fn integer_grid(&self) -> Option<Vec<Vec<BigInt>>> {
        self.rows
            .iter()
            .map(|r| r.integer_coeffs())
            .collect()
    }

    /// Whether every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.rows.iter().all(|r| {
            r.coeffs()
                .iter()
                .all(|c| c.is_integer() && !c.is_negative())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_products_are_exact_in_the_box() {
        // (1 + tu)(1 − tu) = 1 − t²u².
        let a = BivariateSeries::from_terms(&[(0, 0, 1), (1, 1, 1)], 4, 4);
        let b = BivariateSeries::from_terms(&[(0, 0, 1), (1, 1, -1)], 4, 4);
        let expect = BivariateSeries::from_terms(&[(0, 0, 1), (2, 2, -1)], 4, 4);
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn division_round_trips() {
        let a = BivariateSeries::from_terms(&[(0, 0, 3), (1, 0, 1), (2, 1, 5), (0, 2, 2)], 5, 5);
        let b = BivariateSeries::from_terms(&[(0, 0, 2), (1, 1, -1), (0, 1, 7)], 5, 5);
        let q = a.div(&b).unwrap();
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn division_by_u_multiple_is_rejected() {
        let a = BivariateSeries::from_terms(&[(0, 0, 1)], 3, 3);
        let b = BivariateSeries::from_terms(&[(0, 1, 1), (1, 0, 1)], 3, 3);
        assert_eq!(a.div(&b).unwrap_err(), SeriesError::DivisionByNonUnit);
    }

    #[test]
    fn sqrt_handles_u_dependent_constant_row() {
        // (1 − u + tu)² expanded, then rooted back.
        let base = BivariateSeries::from_terms(&[(0, 0, 1), (0, 1, -1), (1, 1, 1)], 5, 5);
        let square = base.mul(&base);
        let root = square.sqrt().unwrap();
        assert_eq!(root, base);
    }

    #[test]
    fn sqrt_squares_back_on_a_generic_series() {
        let a = BivariateSeries::from_terms(
            &[(0, 0, 1), (0, 1, 4), (1, 0, -2), (1, 2, 3), (2, 1, 1)],
            6,
            6,
        );
        let s = a.sqrt().unwrap();
        assert_eq!(s.mul(&s), a);
    }

    #[test]
    fn exact_u_division() {
        let a = BivariateSeries::from_terms(&[(0, 1, 2), (1, 2, 3)], 3, 3);
        let q = a.div_u().unwrap();
        assert_eq!(q.u_order(), 2);
        assert_eq!(*q.coeff(0, 0), rat(2));
        assert_eq!(*q.coeff(1, 1), rat(3));
        let not_div = BivariateSeries::from_terms(&[(1, 0, 1)], 3, 3);
        assert_eq!(
            not_div.div_u().unwrap_err(),
            SeriesError::NotDivisible("u".to_string())
        );
    }
}
