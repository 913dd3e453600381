//! The solution `w1(x) = (1/x) exp(-1/x)` of `x^2 w'' + (3x - 1) w' + w = 0`
//! away from the origin.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{FormalCheck, LinearODE};
use crate::algebra::{factorial, Polynomial, TruncatedSeries};
use crate::error::{Error, Result};
use crate::padic::{padic_exp, PadicContext, PadicNumber, Valuation};

fn f0_second_order() -> LinearODE {
    let p = Polynomial::from_ints;
    LinearODE::new(vec![p(&[1]), p(&[-1, 3]), p(&[0, 0, 1])], Polynomial::zero()).unwrap()
}

/// `W(y) = w1(1/y) = sum (-1)^n y^(n+1) / n!` through `y^order`.
pub fn w1_in_inverse_variable(order: usize) -> TruncatedSeries {
    let mut c = vec![BigRational::from_integer(0.into())];
    for n in 0..order as u64 {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        c.push(BigRational::new(BigInt::from(sign), factorial(n)));
    }
    TruncatedSeries::new(0, c)
}

/// Formal check in the variable `y = 1/x`: the equation is carried to `y`
/// and applied to the expansion of `W`; every Laurent coefficient of the
/// residual down to `x^(-order)` must vanish.
pub fn verify_w1_formal(order: usize) -> Result<FormalCheck> {
    let inv = f0_second_order().invert_variable()?;
    inv.verify_series(&w1_in_inverse_variable(order + 2))
}

/// Whether `x` lies in `|x|_p > p^(1/(p-1))`, i.e. `(p-1) v(x) < -1`.
pub fn in_w1_region(x: &PadicNumber) -> bool {
    match x.valuation() {
        Valuation::Exact(v) => (x.prime() as i64 - 1) * v < -1,
        _ => false,
    }
}

/// Residual of the equation at `x`, using `w' = -y^2 W'` and `w'' = y^4 W'' + 2 y^3 W'`
/// with `W = y e^(-y)`, `W' = e^(-y)(1 - y)`, `W'' = e^(-y)(y - 2)`, `y = 1/x`.
pub fn w1_residual_at(x: &PadicNumber) -> Result<PadicNumber> {
    if !in_w1_region(x) {
        return Err(Error::OutsideDomain(format!("{x} is not in |x|_p > p^(1/(p-1))")));
    }
    let ctx = x.context().clone();
    let y = ctx.one().div(x)?;
    let e = padic_exp(&y.neg())?;
    let one = ctx.one();
    let two = ctx.from_integer(2);
    let w = y.mul(&e)?;
    let wy = e.mul(&one.sub(&y)?)?;
    let wyy = e.mul(&y.sub(&two)?)?;
    let y2 = y.mul(&y)?;
    let y3 = y2.mul(&y)?;
    let dw = y2.mul(&wy)?.neg();
    let ddw = y3.mul(&y)?.mul(&wyy)?.add(&two.mul(&y3)?.mul(&wy)?)?;
    let c1 = ctx.from_integer(3).mul(x)?.sub(&one)?;
    x.mul(x)?.mul(&ddw)?.add(&c1.mul(&dw)?)?.add(&w)
}

#[derive(Clone, Debug)]
pub struct W1Report {
    pub formal: FormalCheck,
    pub p: u64,
    /// Lower bound on the valuation of the pointwise residual at `x = 1/p`.
    pub pointwise_valuation: Valuation,
}

/// Formal check through `x^(-order)` and pointwise check at `x = 1/p` with
/// `precision` digits. The pointwise part needs odd `p`.
pub fn verify_w1(p: u64, order: usize, precision: u32) -> Result<W1Report> {
    if p == 2 {
        return Err(Error::ExpDomain { p, valuation: 1 });
    }
    let formal = verify_w1_formal(order)?;
    // headroom for the p^-2 factor in x^2 w''
    let ctx = PadicContext::new(p, precision + 4)?;
    let x = ctx.from_rational(&BigRational::new(BigInt::one(), BigInt::from(p)));
    let r = w1_residual_at(&x)?;
    Ok(W1Report { formal, p, pointwise_valuation: r.valuation() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn formal_residual_vanishes() {
        let FormalCheck::Verified { through } = verify_w1_formal(40).unwrap() else { panic!() };
        assert!(through >= 40);
    }

    #[test]
    fn descending_monomial_oracle() {
        // x^2 w'' + (3x - 1) w' + w sends x^(-k) to (k-1)^2 x^(-k) + k x^(-k-1),
        // so the coefficient of x^(-k) in the image of sum c_k x^(-k) is
        // (k-1)^2 c_k + (k-1) c_(k-1)
        let c = |k: i64| rat(k * k - 3, k + 2);
        let w = TruncatedSeries::new(0, (0..30).map(c).collect());
        let r = f0_second_order().invert_variable().unwrap().apply(&w).unwrap();
        for k in 1..r.order() {
            let expected = rat((k - 1) * (k - 1), 1) * c(k) + rat(k - 1, 1) * c(k - 1);
            assert_eq!(r.coeff(k).unwrap(), expected, "k = {k}");
        }
    }

    #[test]
    fn pointwise_residual() {
        for p in [3, 5, 7] {
            let r = verify_w1(p, 40, 30).unwrap();
            assert!(r.formal.is_verified());
            assert!(r.pointwise_valuation.at_least(30), "p = {p}: {}", r.pointwise_valuation);
        }
    }

    #[test]
    fn domain_checks() {
        let c5 = PadicContext::new(5, 20).unwrap();
        assert!(matches!(w1_residual_at(&c5.one()), Err(Error::OutsideDomain(_))));
        assert!(matches!(verify_w1(2, 40, 20), Err(Error::ExpDomain { .. })));
        let c2 = PadicContext::new(2, 20).unwrap();
        assert!(!in_w1_region(&c2.from_fraction(1, 2).unwrap()));
        assert!(in_w1_region(&c2.from_fraction(1, 4).unwrap()));
    }
}
