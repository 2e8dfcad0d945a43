//! Exact truncated power series over arbitrary-precision rationals, the
//! bivariate variant, algebraic-equation residuals, and the closed-form
//! generating functions used by the counting routes.

pub mod algebraic;
pub mod bivariate;
pub mod gf;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use algebraic::{AlgebraicEquation, Residual};
pub use bivariate::BivariateSeries;

/// Errors from series arithmetic and equation solving.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("division requires a nonzero constant term")]
    DivisionByNonUnit,
    #[error("square root requires constant term exactly 1")]
    ConstantTermNotOne,
    #[error("numerator is not exactly divisible by {0}")]
    NotDivisible(String),
    #[error("coefficient of t^{at} is not uniquely determined")]
    BranchAmbiguity { at: usize },
    #[error("no series extends the seed: contradiction at t^{at}")]
    Inconsistent { at: usize },
    #[error("seed must cover more terms than the derivative's valuation")]
    SeedTooShort,
}

pub(crate) fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Exact rationals from machine integers (seed/test convenience).
pub fn rationals(xs: &[i64]) -> Vec<BigRational> {
    xs.iter().map(|&x| rat(x)).collect()
}

/// A power series truncated at a fixed order: coefficients of t⁰..tᴺ,
/// exact within the truncation. Arithmetic results carry the minimum of
/// the operand orders, so precision is never silently overstated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    /// Wraps explicit coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least order 0");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Polynomial with the given ascending integer coefficients, truncated
    /// or zero-padded to `order`.
    pub fn polynomial(coeffs: &[i64], order: usize) -> Self {
        let mut c = vec![BigRational::zero(); order + 1];
        for (i, &x) in coeffs.iter().enumerate().take(order + 1) {
            c[i] = rat(x);
        }
        Self { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Long division; the divisor needs a nonzero constant term.
    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        if rhs.coeffs[0].is_zero() {
            return Err(SeriesError::DivisionByNonUnit);
        }
        let order = self.order().min(rhs.order());
        let mut q = vec![BigRational::zero(); order + 1];
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                acc -= &rhs.coeffs[k] * &q[n - k];
            }
            q[n] = acc / &rhs.coeffs[0];
        }
        Ok(Self { coeffs: q })
    }

    /// The square root with constant term 1, by the coefficient recurrence
    /// sₙ = (aₙ − Σ_{0<i<n} sᵢ s_{n−i}) / 2.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let order = self.order();
        let mut s = vec![BigRational::zero(); order + 1];
        s[0] = BigRational::one();
        let two = rat(2);
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for i in 1..n {
                acc -= &s[i] * &s[n - i];
            }
            s[n] = acc / &two;
        }
        Ok(Self { coeffs: s })
    }

    /// Exact division by tᵏ: the k lowest coefficients must vanish; the
    /// order drops by k.
    pub fn div_t_power(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order() {
            return Err(SeriesError::NotDivisible(format!("t^{k}")));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisible(format!("t^{k}")));
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// The coefficients as integers, or `None` if any denominator is not 1.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Whether every coefficient is a nonnegative integer.
    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut c = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: c }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
