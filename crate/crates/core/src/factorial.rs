//! Factorial series `sum n! P(n) x^n`: coefficient laws, truncated expansion,
//! rigorous p-adic evaluation and recentering of `sum n! x^n`.
//!
//! All tail bounds come from Legendre's formula: a term `n! P(n) x^n` with
//! `x` in Z_p has valuation at least `v_p(n!) - d`, where `d` bounds the
//! p-adic valuation of the denominators of `P`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{binomial, factorial, Polynomial, TruncatedSeries};
use crate::error::{Error, Result};
use crate::padic::{rational_valuation, PadicContext, PadicNumber, Valuation};

/// A factor `(n + shift)^multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    pub shift: BigRational,
    pub multiplicity: u32,
}

impl LinearFactor {
    pub fn new(shift: BigRational, multiplicity: u32) -> Self {
        Self { shift, multiplicity }
    }
}

/// The polynomial `P(n)` of a factorial series, in coefficient form or as a
/// scaled product of linear factors.
#[derive(Clone, Debug)]
pub enum FactorialPolynomial {
    Coefficients(Polynomial),
    Product { scale: BigRational, factors: Vec<LinearFactor> },
}

impl FactorialPolynomial {
    pub fn one() -> Self {
        Self::Product { scale: BigRational::one(), factors: Vec::new() }
    }

    /// `n^k + C_{k-1} n^{k-1} + ... + C_0` from `[C_0, ..., C_{k-1}]`.
    pub fn monic(lower: Vec<BigRational>) -> Self {
        let mut c = lower;
        c.push(BigRational::one());
        Self::Coefficients(Polynomial::new(c))
    }

    /// Any nonzero polynomial in `n`.
    pub fn from_polynomial(p: Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::InvalidArgument("P(n) must be nonzero".into()));
        }
        Ok(Self::Coefficients(p))
    }

    pub fn product(factors: Vec<LinearFactor>) -> Self {
        Self::Product { scale: BigRational::one(), factors }
    }

    /// `n^k`.
    pub fn power(k: u32) -> Self {
        Self::product(vec![LinearFactor::new(BigRational::zero(), k)])
    }

    pub fn to_polynomial(&self) -> Polynomial {
        match self {
            Self::Coefficients(p) => p.clone(),
            Self::Product { scale, factors } => factors.iter().fold(Polynomial::constant(scale.clone()), |acc, f| {
                &acc * &Polynomial::linear(f.shift.clone()).pow(f.multiplicity)
            }),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Self::Coefficients(p) => p.degree().unwrap_or(0),
            Self::Product { factors, .. } => factors.iter().map(|f| f.multiplicity as usize).sum(),
        }
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        match self {
            Self::Coefficients(p) => p.eval(n),
            Self::Product { scale, factors } => factors
                .iter()
                .fold(scale.clone(), |acc, f| acc * num_traits::pow(n + &f.shift, f.multiplicity as usize)),
        }
    }

    /// `P(n + mu)`.
    pub fn shifted(&self, mu: &BigRational) -> Self {
        match self {
            Self::Coefficients(p) => Self::Coefficients(p.compose_linear(&BigRational::one(), mu)),
            Self::Product { scale, factors } => Self::Product {
                scale: scale.clone(),
                factors: factors.iter().map(|f| LinearFactor::new(&f.shift + mu, f.multiplicity)).collect(),
            },
        }
    }

    /// Product form, if `P` splits into linear factors over Q.
    pub fn to_product_form(&self) -> Option<Self> {
        if let Self::Product { .. } = self {
            return Some(self.clone());
        }
        let p = self.to_polynomial();
        let scale = p.leading();
        let mut rest = p.monic();
        let mut factors: Vec<LinearFactor> = Vec::new();
        while rest.degree().unwrap_or(0) > 0 {
            let root = rational_root(&rest)?;
            let lin = Polynomial::linear(-root.clone());
            let mut mult = 0;
            while let Some(q) = rest.exact_div(&lin) {
                rest = q;
                mult += 1;
            }
            factors.push(LinearFactor::new(-root, mult));
        }
        factors.sort_by(|a, b| a.shift.cmp(&b.shift));
        Some(Self::Product { scale, factors })
    }

    /// Largest p-adic valuation of a coefficient denominator (0 if none).
    pub fn denominator_deficit(&self, p: u64) -> i64 {
        self.to_polynomial()
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| -rational_valuation(c, p).unwrap().min(0))
            .max()
            .unwrap_or(0)
    }
}

impl PartialEq for FactorialPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.to_polynomial() == other.to_polynomial()
    }
}

impl fmt::Display for FactorialPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Coefficients(p) => write!(f, "{}", p.render("n")),
            Self::Product { scale, factors } => {
                if factors.is_empty() {
                    return write!(f, "{scale}");
                }
                if !scale.is_one() {
                    write!(f, "{scale}*")?;
                }
                let parts: Vec<String> = factors
                    .iter()
                    .map(|lf| {
                        let base = Polynomial::linear(lf.shift.clone()).render("n");
                        let base = if lf.shift.is_zero() { base } else { format!("({base})") };
                        if lf.multiplicity == 1 {
                            base
                        } else {
                            format!("{base}^{}", lf.multiplicity)
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

/// Some rational root of a polynomial with rational coefficients, by the
/// rational root theorem. Gives up (returns `None`) on huge coefficients.
fn rational_root(p: &Polynomial) -> Option<BigRational> {
    let scale = BigRational::from_integer(p.denominator_lcm());
    let ints: Vec<BigInt> = p.scale(&scale).coeffs().iter().map(|c| c.to_integer()).collect();
    if ints[0].is_zero() {
        return Some(BigRational::zero());
    }
    let a0 = ints[0].abs().to_u64()?;
    let ad = ints.last().unwrap().abs().to_u64()?;
    for num in divisors(a0) {
        for den in divisors(ad) {
            for sign in [1i64, -1] {
                let r = BigRational::new(BigInt::from(num) * sign, BigInt::from(den));
                if p.eval(&r).is_zero() {
                    return Some(r);
                }
            }
        }
    }
    None
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// The series `sum_{n >= 0} n! P(n) x^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorialSeries {
    poly: FactorialPolynomial,
}

impl FactorialSeries {
    pub fn new(poly: FactorialPolynomial) -> Self {
        Self { poly }
    }

    /// `sum n! x^n`.
    pub fn f0() -> Self {
        Self::new(FactorialPolynomial::one())
    }

    /// `sum n! n^k x^n`.
    pub fn power(k: u32) -> Self {
        Self::new(FactorialPolynomial::power(k))
    }

    /// `sum n! prod (n + shift_i) x^n`.
    pub fn with_shifts(shifts: &[BigRational]) -> Self {
        Self::new(FactorialPolynomial::product(shifts.iter().map(|s| LinearFactor::new(s.clone(), 1)).collect()))
    }

    /// `sum n! prod_{i=1}^k (n + i)^multiplicity x^n`.
    pub fn rising(k: u32, multiplicity: u32) -> Self {
        Self::new(FactorialPolynomial::product(
            (1..=k).map(|i| LinearFactor::new(BigRational::from_integer(i.into()), multiplicity)).collect(),
        ))
    }

    pub fn poly(&self) -> &FactorialPolynomial {
        &self.poly
    }

    /// `n! P(n)`.
    pub fn coefficient(&self, n: u64) -> BigRational {
        BigRational::from_integer(factorial(n)) * self.poly.eval(&BigRational::from_integer(n.into()))
    }

    /// Coefficients for `n = 0 ..= order`.
    pub fn expand(&self, order: usize) -> TruncatedSeries {
        let mut fact = BigInt::one();
        let coeffs = (0..=order as u64)
            .map(|n| {
                if n > 0 {
                    fact *= n;
                }
                BigRational::from_integer(fact.clone()) * self.poly.eval(&BigRational::from_integer(n.into()))
            })
            .collect();
        TruncatedSeries::new(0, coeffs)
    }

    /// The `mu`-th derivative, which is again a factorial series:
    /// `sum n! prod_{i=1}^mu (n+i)^2 P(n+mu) x^n`.
    pub fn derivative_series(&self, mu: u32) -> Self {
        let shifted = self.poly.shifted(&BigRational::from_integer(mu.into()));
        let poly = match shifted {
            FactorialPolynomial::Product { scale, mut factors } => {
                factors.extend((1..=mu).map(|i| LinearFactor::new(BigRational::from_integer(i.into()), 2)));
                FactorialPolynomial::Product { scale, factors }
            }
            FactorialPolynomial::Coefficients(p) => {
                let square_part = Self::rising(mu, 2).poly.to_polynomial();
                FactorialPolynomial::Coefficients(&p * &square_part)
            }
        };
        Self::new(poly)
    }
}

impl fmt::Display for FactorialSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sum n! [{}] x^n", self.poly)
    }
}

/// `v_p(n!) = sum_{i >= 1} floor(n / p^i)`.
pub fn legendre_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

/// Smallest `n` with `v_p(n!) >= threshold`; all later indices satisfy it too.
pub fn tail_cut(p: u64, threshold: i64) -> u64 {
    if threshold <= 0 {
        return 0;
    }
    // v_p(n!) >= (n - (p-1) log_p n)/(p-1) grows linearly; start near the answer.
    let mut n = (threshold as u64).saturating_sub(1) * (p - 1);
    while n > 0 && legendre_valuation(n, p) >= threshold as u64 {
        n -= 1;
    }
    while (legendre_valuation(n, p) as i64) < threshold {
        n += 1;
    }
    n
}

/// Evaluates `F(x)` for `x` in Z_p, guaranteed modulo `p^target`.
///
/// The summation stops at the first index `n` with `v_p(n!) - d >= target`
/// where `d` is the denominator deficit of `P`; every later term then has
/// valuation at least `target`.
pub fn evaluate_padic(series: &FactorialSeries, x: &PadicNumber, target: i64) -> Result<PadicNumber> {
    let ctx = x.context().clone();
    let p = ctx.prime();
    match x.valuation() {
        Valuation::Exact(v) | Valuation::AtLeast(v) if v < 0 => {
            return Err(Error::OutsideDomain(format!("x = {x} is not in Z_p")));
        }
        _ => {}
    }
    let d = series.poly.denominator_deficit(p);
    let available = ctx.precision() as i64 - d;
    if available < target {
        return Err(Error::PrecisionUnreachable { requested: target, available });
    }
    let cut = tail_cut(p, target + d);
    let mut sum = ctx.zero();
    let mut xpow = ctx.one();
    for n in 0..cut {
        if n > 0 {
            xpow = xpow.mul(x)?;
        }
        let term = ctx.from_rational(&series.coefficient(n)).mul(&xpow)?;
        sum = sum.add(&term)?;
    }
    let result = sum.with_abs_precision(target);
    match result.abs_precision() {
        Some(a) if a < target => Err(Error::PrecisionUnreachable { requested: target, available: a }),
        _ => Ok(result),
    }
}

fn check_unit_ball(beta: &BigRational, p: u64) -> Result<()> {
    match rational_valuation(beta, p) {
        Some(v) if v < 0 => Err(Error::OutsideDomain(format!("beta = {beta} has |beta|_{p} > 1"))),
        _ => Ok(()),
    }
}

/// `b_n = sum_{k >= n} (-1)^(k-n) k! C(k, n) beta^(k-n)` modulo `p^target`.
///
/// These solve `sum_{n >= k} b_n C(n, k) beta^(n-k) = k!`, which makes them the
/// Taylor coefficients of `sum n! x^n` at `-beta`: the expansion is in powers of `x + beta`.
pub fn recenter(beta: &BigRational, n: u64, ctx: &PadicContext, target: i64) -> Result<PadicNumber> {
    let p = ctx.prime();
    check_unit_ball(beta, p)?;
    if (ctx.precision() as i64) < target {
        return Err(Error::PrecisionUnreachable { requested: target, available: ctx.precision() as i64 });
    }
    let cut = tail_cut(p, target);
    let mut sum = BigRational::zero();
    let mut beta_pow = BigRational::one();
    for k in n..cut.max(n) {
        let sign = if (k - n).is_odd() { -1 } else { 1 };
        let term = BigRational::from_integer(factorial(k) * binomial(k, n) * sign) * &beta_pow;
        sum += term;
        beta_pow *= beta;
    }
    Ok(ctx.from_rational(&sum).with_abs_precision(target))
}

/// Row `k` of the recentering system: returns `sum_{n >= k} b_n C(n,k) beta^(n-k)`
/// modulo `p^target`, to be compared with `k!`.
pub fn recentering_row(beta: &BigRational, k: u64, ctx: &PadicContext, target: i64) -> Result<PadicNumber> {
    let p = ctx.prime();
    check_unit_ball(beta, p)?;
    // b_n = O(p^target) for n >= cut, so the row truncates there.
    let cut = tail_cut(p, target);
    let beta_p = ctx.from_rational(beta);
    let mut sum = ctx.zero();
    let mut beta_pow = ctx.one();
    for n in k..cut.max(k) {
        let b = recenter(beta, n, ctx, target)?;
        let term = b.mul(&ctx.from_bigint(&binomial(n, k)))?.mul(&beta_pow)?;
        sum = sum.add(&term)?;
        beta_pow = beta_pow.mul(&beta_p)?;
    }
    Ok(sum.with_abs_precision(target))
}

/// `sum_n b_n (x + beta)^n` for `x + beta` in Z_p, modulo `p^target`.
pub fn evaluate_recentered(
    beta: &BigRational,
    x: &BigRational,
    ctx: &PadicContext,
    target: i64,
) -> Result<PadicNumber> {
    let h = x + beta;
    check_unit_ball(&h, ctx.prime())?;
    let cut = tail_cut(ctx.prime(), target);
    let hp = ctx.from_rational(&h);
    let mut sum = ctx.zero();
    let mut hpow = ctx.one();
    for n in 0..cut {
        sum = sum.add(&recenter(beta, n, ctx, target)?.mul(&hpow)?)?;
        hpow = hpow.mul(&hp)?;
    }
    Ok(sum.with_abs_precision(target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn ints(s: &TruncatedSeries) -> Vec<BigRational> {
        s.coeffs().to_vec()
    }

    #[test]
    fn expand_examples() {
        let r = |v: &[i64]| v.iter().map(|&c| rat(c, 1)).collect::<Vec<_>>();
        assert_eq!(ints(&FactorialSeries::f0().expand(4)), r(&[1, 1, 2, 6, 24]));
        assert_eq!(ints(&FactorialSeries::rising(1, 1).expand(3)), r(&[1, 2, 6, 24]));
        assert_eq!(ints(&FactorialSeries::power(2).expand(3)), r(&[0, 1, 8, 54]));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_valuation(0, 7), 0);
        assert_eq!(legendre_valuation(25, 5), 6);
        assert_eq!(legendre_valuation(10, 2), 8);
    }

    #[test]
    fn tail_cut_is_minimal() {
        for p in [2u64, 3, 5, 7] {
            for m in 0..40i64 {
                let n = tail_cut(p, m);
                assert!(legendre_valuation(n, p) as i64 >= m);
                if n > 0 {
                    assert!((legendre_valuation(n - 1, p) as i64) < m);
                }
            }
        }
    }

    #[test]
    fn product_form_roundtrip() {
        // (n+1)^2 (n - 1/2)
        let p = FactorialPolynomial::product(vec![LinearFactor::new(rat(1, 1), 2), LinearFactor::new(rat(-1, 2), 1)]);
        let coeff = FactorialPolynomial::Coefficients(p.to_polynomial());
        let back = coeff.to_product_form().unwrap();
        assert_eq!(back, p);
        let FactorialPolynomial::Product { factors, .. } = back else { unreachable!() };
        assert_eq!(factors.len(), 2);
        // n^2 + 1 has no rational roots
        let irreducible = FactorialPolynomial::Coefficients(Polynomial::from_ints(&[1, 0, 1]));
        assert!(irreducible.to_product_form().is_none());
    }

    #[test]
    fn derivative_series_matches_formal_derivative() {
        let f = FactorialSeries::f0();
        for mu in 0..4u32 {
            let direct = f.expand(30).nth_derivative(mu as usize).unwrap();
            let law = f.derivative_series(mu).expand(30 - mu as usize);
            assert_eq!(direct, law, "mu = {mu}");
        }
    }

    #[test]
    fn evaluate_examples() {
        let c5 = PadicContext::new(5, 30).unwrap();
        let v = evaluate_padic(&FactorialSeries::f0(), &c5.zero(), 10).unwrap();
        assert!(v.agrees_mod(&c5.one(), 10));
        let v = evaluate_padic(&FactorialSeries::f0(), &c5.one(), 2).unwrap();
        // oracle: sum_{n <= 9} n! = 409114 = 14 mod 25
        let oracle: u64 = (0..10u64).map(|n| (1..=n).product::<u64>()).sum();
        assert_eq!(oracle, 409114);
        assert_eq!(v.residue(2).unwrap(), BigInt::from(oracle % 25));
        for p in [2u64, 3, 5, 7] {
            let c = PadicContext::new(p, 40).unwrap();
            let s = FactorialSeries::with_shifts(&[rat(2, 1)]);
            let v = evaluate_padic(&s, &c.from_integer(-1), 25).unwrap();
            assert!(v.agrees_mod(&c.one(), 25), "p = {p}: {v}");
        }
    }

    #[test]
    fn evaluate_rejects_outside_unit_ball() {
        let c = PadicContext::new(3, 20).unwrap();
        let x = c.from_fraction(1, 3).unwrap();
        assert!(matches!(evaluate_padic(&FactorialSeries::f0(), &x, 5), Err(Error::OutsideDomain(_))));
        assert!(matches!(
            evaluate_padic(&FactorialSeries::f0(), &c.one(), 25),
            Err(Error::PrecisionUnreachable { .. })
        ));
    }

    #[test]
    fn recenter_examples() {
        let c = PadicContext::new(5, 20).unwrap();
        for n in 0..8u64 {
            let b = recenter(&rat(0, 1), n, &c, 15).unwrap();
            assert!(b.agrees_mod(&c.from_bigint(&factorial(n)), 15));
        }
        let b0 = recenter(&rat(5, 1), 0, &c, 3).unwrap();
        assert_eq!(b0.residue(3).unwrap(), BigInt::from(46));
        let row = recentering_row(&rat(5, 1), 1, &c, 6).unwrap();
        assert!(row.agrees_mod(&c.one(), 6));
        assert!(matches!(recenter(&rat(1, 5), 0, &c, 3), Err(Error::OutsideDomain(_))));
    }
}
