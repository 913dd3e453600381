use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::Polynomial;
use crate::error::{Error, Result};

/// Truncated (Laurent) series `sum_{e = offset}^{order - 1} c_e x^e + O(x^order)`.
///
/// Every coefficient below `order` is known exactly; nothing is claimed beyond it.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    offset: i64,
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Coefficients for exponents `offset, offset + 1, ...`; the known order is
    /// `offset + coeffs.len()`.
    pub fn new(offset: i64, coeffs: Vec<BigRational>) -> Self {
        Self { offset, coeffs }
    }

    /// `O(x^order)`.
    pub fn zero(order: i64) -> Self {
        Self { offset: order, coeffs: Vec::new() }
    }

    pub fn from_polynomial(p: &Polynomial, order: i64) -> Self {
        let n = order.max(0) as usize;
        Self::new(0, (0..n).map(|i| p.coeff(i)).collect())
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Exponent bound: coefficients are known for all exponents below this.
    pub fn order(&self) -> i64 {
        self.offset + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^e`; asking at or beyond the known order is an error.
    pub fn coeff(&self, e: i64) -> Result<BigRational> {
        if e >= self.order() {
            return Err(Error::InsufficientOrder { have: self.order(), need: e + 1 });
        }
        Ok(self.raw(e))
    }

    fn raw(&self, e: i64) -> BigRational {
        if e < self.offset {
            BigRational::zero()
        } else {
            self.coeffs.get((e - self.offset) as usize).cloned().unwrap_or_else(BigRational::zero)
        }
    }

    /// Exponent of the first nonzero known coefficient, or the order if none.
    pub fn valuation(&self) -> i64 {
        self.first_nonzero().map_or(self.order(), |(e, _)| e)
    }

    pub fn first_nonzero(&self) -> Option<(i64, &BigRational)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(i, c)| (self.offset + i as i64, c))
    }

    /// All known coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }

    fn build(offset: i64, order: i64, f: impl Fn(i64) -> BigRational) -> Result<Self> {
        if order < 0 {
            return Err(Error::OrderUnderflow { order });
        }
        let offset = offset.min(order);
        Ok(Self::new(offset, (offset..order).map(f).collect()))
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let offset = self.offset.min(other.offset).min(order);
        Self::new(offset, (offset..order).map(|e| self.raw(e) + other.raw(e)).collect())
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.add(&other.scalar_mul(&-BigRational::from_integer(1.into())))
    }

    pub fn scalar_mul(&self, c: &BigRational) -> TruncatedSeries {
        Self::new(self.offset, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Product; the known order is `min(order_a + val_b, order_b + val_a)`.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = (self.order() + other.valuation()).min(other.order() + self.valuation());
        let offset = self.offset + other.offset;
        let mut out = vec![BigRational::zero(); (order - offset).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= out.len() {
                    break;
                }
                out[k] += a * b;
            }
        }
        Self::build(offset, order, |e| {
            let k = e - offset;
            if k >= 0 {
                out[k as usize].clone()
            } else {
                BigRational::zero()
            }
        })
    }

    /// Product with an exact polynomial.
    pub fn mul_polynomial(&self, p: &Polynomial) -> Result<TruncatedSeries> {
        let Some(low) = p.lowest_degree() else {
            return Ok(Self::zero(self.order()));
        };
        let order = self.order() + low as i64;
        let offset = self.offset + low as i64;
        Self::build(offset, order, |e| {
            let mut acc = BigRational::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc += c * self.raw(e - i as i64);
                }
            }
            acc
        })
    }

    pub fn add_polynomial(&self, p: &Polynomial) -> TruncatedSeries {
        let order = self.order();
        let offset = self.offset.min(0).min(order);
        Self::new(
            offset,
            (offset..order)
                .map(|e| {
                    let pc = if e >= 0 { p.coeff(e as usize) } else { BigRational::zero() };
                    self.raw(e) + pc
                })
                .collect(),
        )
    }

    pub fn sub_polynomial(&self, p: &Polynomial) -> TruncatedSeries {
        self.add_polynomial(&-p)
    }

    /// Formal `d/dx`: the term `c x^e` becomes `e c x^(e-1)`.
    pub fn derivative(&self) -> Result<TruncatedSeries> {
        let order = self.order() - 1;
        // the constant term differentiates to zero, so a series starting at x^0 keeps offset 0
        let offset = if self.offset == 0 { 0 } else { self.offset - 1 };
        Self::build(offset, order, |e| self.raw(e + 1) * BigRational::from_integer((e + 1).into()))
    }

    pub fn nth_derivative(&self, k: usize) -> Result<TruncatedSeries> {
        (0..k).try_fold(self.clone(), |s, _| s.derivative())
    }

    /// Multiplication by `x^m` (`m` may be negative).
    pub fn shift_by_power(&self, m: i64) -> TruncatedSeries {
        Self::new(self.offset + m, self.coeffs.clone())
    }

    /// The known part as a polynomial (requires nonnegative offset).
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        if self.offset < 0 && self.coeffs.iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidArgument("series has negative powers".into()));
        }
        let n = self.order().max(0);
        Ok(Polynomial::new((0..n).map(|e| self.raw(e)).collect()))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*x^{}", self.offset + i as i64)?;
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(x^{})", self.order())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries({self})")
    }
}
