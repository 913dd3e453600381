use num_rational::BigRational;
use num_traits::Zero;

use super::LinearODE;
use crate::algebra::{Polynomial, RationalFunction};
use crate::error::{Error, Result};

/// `r(t) + lambda log t`, differentiated analytically as `r'(t) + lambda / t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogCoefficient {
    pub rational: RationalFunction,
    pub log: BigRational,
}

impl LogCoefficient {
    pub fn new(rational: RationalFunction, log: BigRational) -> Self {
        Self { rational, log }
    }

    pub fn rational(r: RationalFunction) -> Self {
        Self::new(r, BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::rational(RationalFunction::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.log.is_zero()
    }

    pub fn derivative(&self) -> RationalFunction {
        &self.rational.derivative() + &RationalFunction::inverse_power(1).scale(&self.log)
    }
}

/// `L = a qdot^2 + 2 b qdot q + c q^2 + 2 d qdot + 2 e q + f`.
///
/// Only `b` may carry a logarithm; the other coefficients enter the equation
/// of motion undifferentiated or need to stay rational after differentiation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticLagrangian {
    pub a: RationalFunction,
    pub b: LogCoefficient,
    pub c: RationalFunction,
    pub d: RationalFunction,
    pub e: RationalFunction,
    pub f: RationalFunction,
}

impl QuadraticLagrangian {
    pub fn new(
        a: RationalFunction,
        b: LogCoefficient,
        c: RationalFunction,
        d: RationalFunction,
        e: RationalFunction,
        f: RationalFunction,
    ) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidLagrangian("a(t) vanishes, so the equation is not second order".into()));
        }
        Ok(Self { a, b, c, d, e, f })
    }

    /// `(t^2/2) qdot^2 + (t^3/3 + 2 log t + 1/t + C) qdot q + (t^2/2) q^2 - (1/t) qdot + (1/t) q`.
    pub fn example_6_5(constant: &BigRational) -> Self {
        let half = BigRational::new(1.into(), 2.into());
        let t2 = RationalFunction::from(Polynomial::monomial(half.clone(), 2));
        let inv_t = RationalFunction::inverse_power(1);
        let b = &(&RationalFunction::from(Polynomial::monomial(BigRational::new(1.into(), 6.into()), 3))
            + &inv_t.scale(&half))
            + &RationalFunction::constant(constant * &half);
        Self {
            a: t2.clone(),
            b: LogCoefficient::new(b, BigRational::from_integer(1.into())),
            c: t2,
            d: inv_t.scale(&-half.clone()),
            e: inv_t.scale(&half),
            f: RationalFunction::zero(),
        }
    }

    /// `a q'' + a' q' + (b' - c) q = e - d'`, denominators cleared.
    pub fn euler_lagrange(&self) -> Result<LinearODE> {
        let c0 = &self.b.derivative() - &self.c;
        let rhs = &self.e - &self.d.derivative();
        LinearODE::from_rational(&[c0, self.a.derivative(), self.a.clone()], &rhs)
    }
}
