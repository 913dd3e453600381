use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{clear_denominators, Polynomial, RationalFunction, TruncatedSeries};
use crate::error::{Error, Result};
use crate::factorial::FactorialSeries;

/// `sum_j c_j(x) w^(j) = rhs(x)` with polynomial coefficients.
///
/// Stored primitive: integer coefficients with gcd 1, and the leading
/// coefficient of the top-order polynomial positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearODE {
    coeffs: Vec<Polynomial>,
    rhs: Polynomial,
}

impl LinearODE {
    /// `coeffs[j]` multiplies the `j`-th derivative.
    pub fn new(mut coeffs: Vec<Polynomial>, rhs: Polynomial) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument("differential equation must have order >= 1".into()));
        }
        let mut ode = Self { coeffs, rhs };
        ode.normalize();
        Ok(ode)
    }

    /// From rational-function coefficients, multiplied through by their common denominator.
    pub fn from_rational(coeffs: &[RationalFunction], rhs: &RationalFunction) -> Result<Self> {
        let mut all = coeffs.to_vec();
        all.push(rhs.clone());
        let (mut polys, _) = clear_denominators(&all);
        let rhs = polys.pop().unwrap();
        Self::new(polys, rhs)
    }

    fn normalize(&mut self) {
        let all = self.coeffs.iter().chain(std::iter::once(&self.rhs));
        let den = all.clone().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
        let num = all.fold(BigInt::zero(), |acc, p| {
            p.coeffs().iter().fold(acc, |a, c| a.gcd(&(c * BigRational::from_integer(den.clone())).to_integer()))
        });
        let mut scale = BigRational::new(den, num);
        if self.coeffs.last().unwrap().leading().is_negative() {
            scale = -scale;
        }
        for c in &mut self.coeffs {
            *c = c.scale(&scale);
        }
        self.rhs = self.rhs.scale(&scale);
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Polynomial {
        self.coeffs.get(j).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn rhs(&self) -> &Polynomial {
        &self.rhs
    }

    pub fn is_homogeneous(&self) -> bool {
        self.rhs.is_zero()
    }

    pub fn max_coeff_degree(&self) -> usize {
        self.coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
    }

    /// Same equation divided by the gcd of all its polynomials.
    pub fn reduced(&self) -> Self {
        let g = self.coeffs.iter().chain(std::iter::once(&self.rhs)).fold(Polynomial::zero(), |acc, p| acc.gcd(p));
        let coeffs = self.coeffs.iter().map(|c| c.exact_div(&g).unwrap()).collect();
        Self::new(coeffs, self.rhs.exact_div(&g).unwrap()).unwrap()
    }

    /// Whether both sides define the same equation up to a polynomial factor.
    pub fn equivalent(&self, other: &LinearODE) -> bool {
        self.reduced() == other.reduced()
    }

    /// The equation multiplied by a nonzero polynomial.
    pub fn multiplied_by(&self, m: &Polynomial) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::InvalidArgument("multiplier must be nonzero".into()));
        }
        Self::new(self.coeffs.iter().map(|c| c * m).collect(), &self.rhs * m)
    }

    /// `sum_j c_j s^(j) - rhs`, with the known order propagated exactly.
    pub fn apply(&self, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        let need = (self.order() + self.max_coeff_degree()) as i64;
        if s.order() < need {
            return Err(Error::InsufficientOrder { have: s.order(), need });
        }
        let mut deriv = s.clone();
        let mut acc: Option<TruncatedSeries> = None;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                deriv = deriv.derivative()?;
            }
            if c.is_zero() {
                continue;
            }
            let term = deriv.mul_polynomial(c)?;
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        Ok(acc.expect("top coefficient is nonzero").sub_polynomial(&self.rhs))
    }

    /// Checks that the residual of a truncated series vanishes identically.
    pub fn verify_series(&self, s: &TruncatedSeries) -> Result<FormalCheck> {
        let r = self.apply(s)?;
        Ok(match r.first_nonzero() {
            None => FormalCheck::Verified { through: r.order() - 1 },
            Some((exponent, residual)) => FormalCheck::Counterexample { exponent, residual: residual.clone() },
        })
    }

    /// Substitutes the expansion of `series` through `x^order` and checks the residual.
    pub fn verify_formal(&self, series: &FactorialSeries, order: usize) -> Result<FormalCheck> {
        if order < self.order() + 2 {
            return Err(Error::InvalidArgument(format!(
                "order {order} too small for an equation of order {}",
                self.order()
            )));
        }
        self.verify_series(&series.expand(order))
    }

    /// The equation satisfied by `W(y) = w(1/y)`, using
    /// `w' = -y^2 W'` and `w'' = y^4 W'' + 2 y^3 W'`.
    pub fn invert_variable(&self) -> Result<Self> {
        if self.order() > 2 {
            return Err(Error::InvalidArgument("variable inversion implemented for order <= 2".into()));
        }
        let inv = |p: &Polynomial| RationalFunction::from(p.clone()).invert_variable();
        let y = |k: usize| RationalFunction::from(Polynomial::monomial(BigRational::one(), k));
        let c0 = inv(&self.coeff(0));
        let c1 = inv(&self.coeff(1));
        let c2 = inv(&self.coeff(2));
        let two = RationalFunction::constant(BigRational::from_integer(2.into()));
        let new1 = &(&(&c2 * &two) * &y(3)) - &(&c1 * &y(2));
        let new2 = &c2 * &y(4);
        let coeffs = if self.order() == 2 { vec![c0, new1, new2] } else { vec![c0, new1] };
        Self::from_rational(&coeffs, &inv(&self.rhs))
    }

    pub fn render(&self, var: &str, fun: &str) -> String {
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let d = match j {
                0 => fun.to_string(),
                1 => format!("{fun}'"),
                2 => format!("{fun}''"),
                _ => format!("{fun}^({j})"),
            };
            parts.push(format!("({})*{d}", c.render(var)));
        }
        format!("{} = {}", parts.join(" + "), self.rhs.render(var))
    }
}

impl fmt::Display for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x", "w"))
    }
}

impl fmt::Debug for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearODE({self})")
    }
}

/// Outcome of a formal residual check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormalCheck {
    /// The residual vanishes for every exponent up to and including `through`.
    Verified { through: i64 },
    /// First exponent with a nonzero residual coefficient.
    Counterexample { exponent: i64, residual: BigRational },
}

impl FormalCheck {
    pub fn is_verified(&self) -> bool {
        matches!(self, FormalCheck::Verified { .. })
    }
}

impl fmt::Display for FormalCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormalCheck::Verified { through } => write!(f, "verified through x^{through}"),
            FormalCheck::Counterexample { exponent, residual } => {
                write!(f, "residual {residual} at x^{exponent}")
            }
        }
    }
}

/// First-order equation `A(x) w' + B(x) w = C(x)` kept in rational-function
/// form, as needed by the constructions that divide by coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstOrderForm {
    pub a: RationalFunction,
    pub b: RationalFunction,
    pub c: RationalFunction,
}

impl FirstOrderForm {
    pub fn new(a: RationalFunction, b: RationalFunction, c: RationalFunction) -> Self {
        Self { a, b, c }
    }

    pub fn from_polys(a: Polynomial, b: Polynomial, c: Polynomial) -> Self {
        Self::new(a.into(), b.into(), c.into())
    }

    /// `x^2 w' + (x - 1) w = -1`, satisfied by `sum n! x^n`.
    pub fn for_f0() -> Self {
        Self::from_polys(
            Polynomial::from_ints(&[0, 0, 1]),
            Polynomial::from_ints(&[-1, 1]),
            Polynomial::from_ints(&[-1]),
        )
    }

    /// Recovers the form from a first-order polynomial equation.
    pub fn from_ode(ode: &LinearODE) -> Result<Self> {
        if ode.order() != 1 {
            return Err(Error::InvalidArgument("expected a first-order equation".into()));
        }
        Ok(Self::from_polys(ode.coeff(1), ode.coeff(0), ode.rhs().clone()))
    }

    pub fn to_ode(&self) -> Result<LinearODE> {
        LinearODE::from_rational(&[self.b.clone(), self.a.clone()], &self.c)
    }
}
