//! Rational closed forms `x^k S_k + U_k(x) F_0 = V_{k-1}(x)` for
//! `S_k = sum n! n^k x^n`, and their p-adic evaluation at rational points.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{binomial, Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::factorial::{evaluate_padic, FactorialPolynomial, FactorialSeries};
use crate::padic::{rational_valuation, PadicContext, PadicNumber};

/// Series order used to validate every derived identity.
pub const ORACLE_ORDER: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumIdentity {
    pub k: u32,
    /// `U_k`, of degree `k`.
    pub u: Polynomial,
    /// `V_{k-1}`, of degree `k - 1`.
    pub v: Polynomial,
}

impl SumIdentity {
    /// `u_k(x) = U_k(x) / x^k`.
    pub fn u_rational(&self) -> RationalFunction {
        &RationalFunction::from(self.u.clone()) * &RationalFunction::inverse_power(self.k as usize)
    }

    /// `v_k(x) = V_{k-1}(x) / x^k`.
    pub fn v_rational(&self) -> RationalFunction {
        &RationalFunction::from(self.v.clone()) * &RationalFunction::inverse_power(self.k as usize)
    }

    /// `x^k expand(S_k) + U_k expand(F_0) - V_{k-1}` vanishes through `x^order`.
    pub fn check_formal(&self, order: usize) -> Result<bool> {
        let s = FactorialSeries::power(self.k).expand(order);
        let f0 = FactorialSeries::f0().expand(order);
        let lhs = s
            .mul_polynomial(&Polynomial::monomial(BigRational::one(), self.k as usize))?
            .add(&f0.mul_polynomial(&self.u)?);
        Ok(lhs.sub_polynomial(&self.v).is_zero())
    }

    /// `P(n) = n^k + u_k(t)` for the point identity `sum n! P(n) t^n = v_k(t)`.
    pub fn poly_at(&self, t: &BigRational) -> Result<FactorialPolynomial> {
        let u = self.u_rational().eval(t).ok_or_else(|| Error::OutsideDomain("t = 0 is a pole of u_k".into()))?;
        let mut c = vec![BigRational::zero(); self.k as usize + 1];
        c[0] = u;
        c[self.k as usize] += BigRational::one();
        FactorialPolynomial::from_polynomial(Polynomial::new(c))
    }
}

impl fmt::Display for SumIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U_{} = {}, V_{} = {}", self.k, self.u.render("x"), self.k - 1, self.v.render("x"))
    }
}

/// Runs the recurrence built on `n * n! = (n+1)! - n!`:
/// `S_k = (1/x) [sum_{j<k} C(k-1, j) (-1)^(k-1-j) S_j - (-1)^(k-1)] - S_{k-1}`,
/// tracking `S_j = R_j F_0 + T_j`. Each result is checked against the
/// series expansion before it is returned.
pub fn derive_uv(k: u32) -> Result<SumIdentity> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let inv_x = RationalFunction::inverse_power(1);
    let mut r = vec![RationalFunction::one()];
    let mut t = vec![RationalFunction::zero()];
    for kk in 1..=k as u64 {
        let mut acc_r = RationalFunction::zero();
        let mut acc_t = RationalFunction::zero();
        for j in 0..kk {
            let sign = if (kk - 1 - j) % 2 == 0 { 1 } else { -1 };
            let c = BigRational::from_integer(binomial(kk - 1, j) * sign);
            acc_r = &acc_r + &r[j as usize].scale(&c);
            acc_t = &acc_t + &t[j as usize].scale(&c);
        }
        let last = if (kk - 1) % 2 == 0 { 1 } else { -1 };
        acc_t = &acc_t - &RationalFunction::constant(BigRational::from_integer(last.into()));
        let prev = kk as usize - 1;
        r.push(&(&acc_r * &inv_x) - &r[prev]);
        t.push(&(&acc_t * &inv_x) - &t[prev]);
    }
    let xk = RationalFunction::from(Polynomial::monomial(BigRational::one(), k as usize));
    let u = -(&xk * &r[k as usize]);
    let v = &xk * &t[k as usize];
    let (Some(u), Some(v)) = (u.as_polynomial(), v.as_polynomial()) else {
        return Err(Error::Derivation(format!("U_{k} or V_{} is not a polynomial", k - 1)));
    };
    let id = SumIdentity { k, u: u.clone(), v: v.clone() };
    if !id.check_formal(ORACLE_ORDER)? {
        return Err(Error::Derivation(format!("k = {k} fails the series check")));
    }
    Ok(id)
}

/// Both sides of a point identity modulo `p^M`.
#[derive(Clone, Debug)]
pub struct PointSum {
    pub lhs: PadicNumber,
    pub rhs: PadicNumber,
    pub matches: bool,
}

/// `sum n! P(n) x^n` against the rational `expected`, both modulo `p^m`.
pub fn check_point_sum(
    poly: FactorialPolynomial,
    x: &BigRational,
    expected: &BigRational,
    p: u64,
    m: u32,
) -> Result<PointSum> {
    if rational_valuation(x, p).is_some_and(|v| v < 0) {
        return Err(Error::OutsideDomain(format!("x = {x} is not in Z_{p}")));
    }
    let d = poly.denominator_deficit(p);
    let ctx = PadicContext::new(p, m + d as u32 + 1)?;
    let lhs = evaluate_padic(&FactorialSeries::new(poly), &ctx.from_rational(x), m as i64)?;
    let rhs = ctx.from_rational(expected);
    let matches = lhs.agrees_mod(&rhs, m as i64);
    Ok(PointSum { lhs, rhs, matches })
}

/// `sum n! [n^k + u_k(t)] t^n = v_k(t)` modulo `p^m`.
pub fn sum_at_point(k: u32, t: &BigRational, p: u64, m: u32) -> Result<PointSum> {
    if t.is_zero() {
        return Err(Error::OutsideDomain("t = 0 is a pole of u_k".into()));
    }
    let id = derive_uv(k)?;
    let rhs = id.v_rational().eval(t).expect("t is nonzero");
    check_point_sum(id.poly_at(t)?, t, &rhs, p, m)
}

/// A rational combination `sum c_i [n^(k_i) + u_(k_i)(t)]` against `sum c_i v_(k_i)(t)`.
pub fn combined_sum_at_point(terms: &[(BigRational, u32)], t: &BigRational, p: u64, m: u32) -> Result<PointSum> {
    if t.is_zero() {
        return Err(Error::OutsideDomain("t = 0 is a pole of u_k".into()));
    }
    let mut poly = Polynomial::zero();
    let mut rhs = BigRational::zero();
    for (c, k) in terms {
        let id = derive_uv(*k)?;
        poly = &poly + &id.poly_at(t)?.to_polynomial().scale(c);
        rhs += c * id.v_rational().eval(t).expect("t is nonzero");
    }
    check_point_sum(FactorialPolynomial::from_polynomial(poly)?, t, &rhs, p, m)
}

/// The three evaluation points of the first-order equation for `sum n! (n+a) x^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PhiVariant {
    /// `x = 1/(1-a)`: `sum n! (n+a) (1/(1-a))^n = a - 1`.
    AtInverse,
    /// `x = 1`: `sum n! (n+a)(a n + 1) = -a^2 + a - 1`.
    AtOne,
    /// `x = -1`: `sum (-1)^n n! (n+a)[(a-2)n + 2a - 5] = a^2 - 3a + 1`.
    AtMinusOne,
}

impl PhiVariant {
    pub const ALL: [PhiVariant; 3] = [PhiVariant::AtInverse, PhiVariant::AtOne, PhiVariant::AtMinusOne];

    pub fn key(&self) -> &'static str {
        match self {
            PhiVariant::AtInverse => "5.8",
            PhiVariant::AtOne => "5.9",
            PhiVariant::AtMinusOne => "5.10",
        }
    }
}

pub fn phi_alpha_sum(alpha: &BigRational, variant: PhiVariant, p: u64, m: u32) -> Result<PointSum> {
    let a = alpha.clone();
    let one = BigRational::one();
    let int = |n: i64| BigRational::from_integer(BigInt::from(n));
    let base = Polynomial::linear(a.clone());
    let (poly, x, rhs) = match variant {
        PhiVariant::AtInverse => {
            let w = &one - &a;
            if w.is_zero() {
                return Err(Error::OutsideDomain("alpha = 1 has no point 1/(1-alpha)".into()));
            }
            if rational_valuation(&w, p).is_some_and(|v| v > 0) {
                return Err(Error::OutsideDomain(format!("|1 - alpha|_{p} < 1, so 1/(1-alpha) is not in Z_{p}")));
            }
            (base, w.recip(), &a - &one)
        }
        PhiVariant::AtOne => {
            let second = Polynomial::new(vec![one.clone(), a.clone()]);
            (&base * &second, one.clone(), -(&a * &a) + &a - &one)
        }
        PhiVariant::AtMinusOne => {
            let second = Polynomial::new(vec![&(&int(2) * &a) - int(5), &a - int(2)]);
            (&base * &second, -one.clone(), &(&a * &a) - &(&int(3) * &a) + one.clone())
        }
    };
    check_point_sum(FactorialPolynomial::from_polynomial(poly)?, &x, &rhs, p, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};

    fn poly(s: &str) -> Polynomial {
        parse_polynomial(s, &["x"]).unwrap()
    }

    #[test]
    fn derive_uv_known_rows() {
        let expect = [
            (1, "x - 1", "-1"),
            (2, "-x^2 + 3*x - 1", "2*x - 1"),
            (3, "x^3 - 7*x^2 + 6*x - 1", "-3*x^2 + 5*x - 1"),
            (4, "-x^4 + 15*x^3 - 25*x^2 + 10*x - 1", "4*x^3 - 17*x^2 + 9*x - 1"),
            (5, "x^5 - 31*x^4 + 90*x^3 - 65*x^2 + 15*x - 1", "-5*x^4 + 49*x^3 - 52*x^2 + 14*x - 1"),
        ];
        for (k, u, v) in expect {
            let id = derive_uv(k).unwrap();
            assert_eq!(id.u, poly(u), "U_{k}");
            assert_eq!(id.v, poly(v), "V_{}", k - 1);
        }
    }

    #[test]
    fn degrees_through_eight() {
        for k in 1..=8 {
            let id = derive_uv(k).unwrap();
            assert_eq!(id.u.degree(), Some(k as usize));
            assert_eq!(id.v.degree(), Some(k as usize - 1));
        }
        assert!(derive_uv(0).is_err());
    }

    #[test]
    fn printed_point_sums() {
        // sum (-1)^n n! (n^k + c_k) = r_k at t = -1
        let rows = [(1, 2, 1), (2, -5, -3), (3, 15, 9), (4, -52, -31), (5, 203, 121)];
        for (k, c, r) in rows {
            let id = derive_uv(k).unwrap();
            assert_eq!(id.u_rational().eval(&rat(-1, 1)).unwrap(), rat(c, 1));
            assert_eq!(id.v_rational().eval(&rat(-1, 1)).unwrap(), rat(r, 1));
            for p in [2, 3, 5, 7] {
                assert!(sum_at_point(k, &rat(-1, 1), p, 25).unwrap().matches, "k = {k}, p = {p}");
            }
        }
    }

    #[test]
    fn k2_at_one() {
        let id = derive_uv(2).unwrap();
        assert_eq!(id.u_rational().eval(&rat(1, 1)).unwrap(), rat(1, 1));
        assert_eq!(id.v_rational().eval(&rat(1, 1)).unwrap(), rat(1, 1));
        for p in [2, 3, 5, 7] {
            assert!(sum_at_point(2, &rat(1, 1), p, 25).unwrap().matches);
        }
    }

    #[test]
    fn zero_point_rejected() {
        assert!(matches!(sum_at_point(1, &rat(0, 1), 5, 10), Err(Error::OutsideDomain(_))));
        assert!(matches!(sum_at_point(1, &rat(1, 5), 5, 10), Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn phi_alpha_examples() {
        for p in [2, 3, 5, 7] {
            assert!(phi_alpha_sum(&rat(0, 1), PhiVariant::AtOne, p, 20).unwrap().matches);
            assert!(phi_alpha_sum(&rat(2, 1), PhiVariant::AtMinusOne, p, 20).unwrap().matches);
            assert!(phi_alpha_sum(&rat(2, 1), PhiVariant::AtInverse, p, 20).unwrap().matches);
        }
        assert!(phi_alpha_sum(&rat(1, 1), PhiVariant::AtInverse, 5, 10).is_err());
        // 1 - alpha = 5 has |.|_5 < 1
        assert!(phi_alpha_sum(&rat(-4, 1), PhiVariant::AtInverse, 5, 10).is_err());
        assert!(phi_alpha_sum(&rat(-4, 1), PhiVariant::AtInverse, 3, 10).unwrap().matches);
    }

    #[test]
    fn combination_of_identities() {
        let terms = [(rat(3, 2), 1), (rat(-2, 1), 4), (rat(1, 7), 5)];
        for p in [2, 3, 5] {
            assert!(combined_sum_at_point(&terms, &rat(2, 1), p, 15).unwrap().matches);
        }
    }
}
