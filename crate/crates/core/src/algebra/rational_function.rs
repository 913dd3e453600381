use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Polynomial;
use crate::error::{Error, Result};

/// Quotient of polynomials in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lead = den.leading().recip();
        Ok(Self { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn zero() -> Self {
        Self { num: Polynomial::zero(), den: Polynomial::one() }
    }

    pub fn one() -> Self {
        Self::from(Polynomial::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from(Polynomial::constant(c))
    }

    /// `x^(-m)`.
    pub fn inverse_power(m: usize) -> Self {
        Self { num: Polynomial::one(), den: Polynomial::monomial(BigRational::one(), m) }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.is_polynomial() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den).unwrap()
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// `f(1/x)`.
    pub fn invert_variable(&self) -> Self {
        // p(1/x) = rev(p)(x) / x^deg p
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let mut num = self.num.reversed();
        let mut den = self.den.reversed();
        if dn > dd {
            den = den.shift(dn - dd);
        } else {
            num = num.shift(dd - dn);
        }
        Self::new(num, den).unwrap()
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_polynomial() {
            let c = self.den.coeff(0);
            return self.num.scale(&c.recip()).render(var);
        }
        format!("({}) / ({})", self.num.render(var), self.den.render(var))
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self { num: p, den: Polynomial::one() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: RationalFunction) -> RationalFunction {
        &self + &rhs
    }
}

impl Sub for RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: RationalFunction) -> RationalFunction {
        &self - &rhs
    }
}

impl Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: RationalFunction) -> RationalFunction {
        &self * &rhs
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

/// Multiplies a list of rational functions by the monic least common multiple
/// of their denominators. Returns the polynomial numerators and that factor.
pub fn clear_denominators(items: &[RationalFunction]) -> (Vec<Polynomial>, Polynomial) {
    let lcm = items.iter().fold(Polynomial::one(), |acc, f| {
        let g = acc.gcd(f.denom());
        (&acc * f.denom()).exact_div(&g).expect("gcd divides").monic()
    });
    let polys = items
        .iter()
        .map(|f| {
            let cofactor = lcm.exact_div(f.denom()).expect("denominator divides lcm");
            &f.num * &cofactor
        })
        .collect();
    (polys, lcm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn normalizes_to_lowest_terms() {
        let f = rf(&[-1, 0, 1], &[-2, 2]); // (x^2-1)/(2x-2) = (x+1)/2
        assert!(f.is_polynomial());
        assert_eq!(f.numer(), &Polynomial::new(vec![rat(1, 2), rat(1, 2)]));
        assert_eq!(f.denom(), &Polynomial::one());
        assert_eq!(RationalFunction::new(p(&[1]), Polynomial::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx 1/x = -1/x^2
        let f = RationalFunction::inverse_power(1);
        assert_eq!(f.derivative(), rf(&[-1], &[0, 0, 1]));
    }

    #[test]
    fn clear_denominator_examples() {
        let (polys, factor) = clear_denominators(&[RationalFunction::inverse_power(1), RationalFunction::one()]);
        assert_eq!(polys, vec![p(&[1]), p(&[0, 1])]);
        assert_eq!(factor, p(&[0, 1]));

        let (polys, factor) = clear_denominators(&[rf(&[0, 0, 1], &[-1, 1]), rf(&[1], &[-1, 1])]);
        assert_eq!(polys, vec![p(&[0, 0, 1]), p(&[1])]);
        assert_eq!(factor, p(&[-1, 1]));
    }

    #[test]
    fn divided_equation_clears_back() {
        // coefficients x^2(x-1), x^2-3x+1, x divided by x, then re-cleared
        let coeffs = [p(&[0, 0, -1, 1]), p(&[1, -3, 1]), p(&[0, 1])];
        let divided: Vec<_> =
            coeffs.iter().map(|c| &RationalFunction::from(c.clone()) * &RationalFunction::inverse_power(1)).collect();
        let (polys, factor) = clear_denominators(&divided);
        assert_eq!(factor, p(&[0, 1]));
        assert_eq!(polys, coeffs.to_vec());
    }

    #[test]
    fn invert_variable() {
        // (x+1)/x^3 at 1/x = (1/x + 1) x^3 = x^2 + x^3
        let f = rf(&[1, 1], &[0, 0, 0, 1]);
        assert_eq!(f.invert_variable(), RationalFunction::from(p(&[0, 0, 1, 1])));
        assert_eq!(f.invert_variable().invert_variable(), f);
    }
}
