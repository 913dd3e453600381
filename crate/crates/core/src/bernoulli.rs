//! Bernoulli numbers, Riemann sums for the Volkenborn integral over Z_p, and
//! the factorial-Bernoulli sums obtained by integrating `x^k S_k + U_k F_0 = V_{k-1}`
//! term by term.
//!
//! Bernoulli numbers follow `B_0 = 1`, `sum_{i=0}^{n-1} C(n, i) B_i = 0` for `n >= 2`,
//! which gives `B_1 = -1/2`, the value of the integral of `x`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{binomial, factorial, Polynomial};
use crate::error::{Error, Result};
use crate::factorial::tail_cut;
use crate::padic::{rational_valuation, PadicContext, PadicNumber};
use crate::sums::{derive_uv, SumIdentity};

/// Exact `B_0, ..., B_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn get(&self, n: usize) -> Option<&BigRational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest `v_p(B_n)` over the table (exact zeros skipped).
    pub fn min_valuation(&self, p: u64) -> Option<i64> {
        self.values.iter().filter_map(|b| rational_valuation(b, p)).min()
    }
}

/// `B_0 .. B_n` via `B_m = -1/(m+1) sum_{i<m} C(m+1, i) B_i`.
pub fn bernoulli(n: usize) -> BernoulliTable {
    let mut values: Vec<BigRational> = Vec::with_capacity(n + 1);
    values.push(BigRational::one());
    for m in 1..=n as u64 {
        let s = values
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (i, b)| acc + b * BigRational::from_integer(binomial(m + 1, i as u64)));
        values.push(-s / BigRational::from_integer((m + 1).into()));
    }
    BernoulliTable { values }
}

/// The recurrence with the sum starting at `i = 1`. Row `n = 2` forces `B_1 = 0`
/// and every later row then forces the next value to 0 as well.
pub fn bernoulli_index_one(n: usize) -> BernoulliTable {
    let mut values = vec![BigRational::one()];
    for m in 2..=n as u64 + 1 {
        // sum_{i=1}^{m-1} C(m, i) B_i = 0 solved for B_{m-1}
        let s = (1..m - 1)
            .fold(BigRational::zero(), |acc, i| acc + &values[i as usize] * BigRational::from_integer(binomial(m, i)));
        values.push(-s / BigRational::from_integer(binomial(m, m - 1)));
    }
    values.truncate(n + 1);
    BernoulliTable { values }
}

/// `p^(-m) sum_{x=0}^{p^m - 1} f(x)`, exactly.
pub fn volkenborn_numeric(f: &Polynomial, p: u64, m: u32) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::InvalidArgument("level m must be at least 1".into()));
    }
    let n = BigInt::from(p).pow(m);
    let count: u64 = p.pow(m);
    let mut sum = BigRational::zero();
    for x in 0..count {
        sum += f.eval(&BigRational::from_integer(x.into()));
    }
    Ok(sum / BigRational::from_integer(n))
}

/// `sum_n s^n n! sum_j c_j(n) B_(n + j + shift)` with `s = -1` when alternating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliIntegrand {
    /// `c_j(n)`, integer polynomials in `n`.
    pub coeffs: Vec<Polynomial>,
    pub alternating: bool,
    pub shift: usize,
}

impl BernoulliIntegrand {
    /// Termwise integral of `x^shift [x^k S_k + U_k F_0]`, after `x -> -x` when alternating.
    pub fn from_identity(id: &SumIdentity, alternating: bool, shift: usize) -> Self {
        let k = id.k as usize;
        let mut coeffs: Vec<Polynomial> = (0..=k).map(|j| Polynomial::constant(id.u.coeff(j))).collect();
        coeffs[k] = &coeffs[k] + &Polynomial::monomial(BigRational::one(), k);
        if alternating {
            for (j, c) in coeffs.iter_mut().enumerate() {
                if j % 2 == 1 {
                    *c = -&*c;
                }
            }
        }
        Self { coeffs, alternating, shift }
    }

    /// Same sum up to an overall sign.
    pub fn same_up_to_sign(&self, other: &Self) -> bool {
        let neg: Vec<Polynomial> = other.coeffs.iter().map(|c| -c).collect();
        self.alternating == other.alternating
            && self.shift == other.shift
            && (self.coeffs == other.coeffs || self.coeffs == neg)
    }

    pub fn negated(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    /// Last index `n` summed for precision `m` (terms past it have valuation `>= m`).
    pub fn cut(&self, p: u64, m: u32) -> u64 {
        // v_p(B_e) >= -1 and integer c_j(n)
        tail_cut(p, m as i64 + 1)
    }

    /// Exact partial sum over `n < terms`.
    pub fn partial_sum(&self, terms: u64, table: &BernoulliTable) -> Result<BigRational> {
        let need = terms as usize + self.coeffs.len() + self.shift;
        if table.len() < need {
            return Err(Error::InvalidArgument(format!("Bernoulli table has {} entries, need {need}", table.len())));
        }
        let mut sum = BigRational::zero();
        for n in 0..terms {
            let nr = BigRational::from_integer(n.into());
            let mut inner = BigRational::zero();
            for (j, c) in self.coeffs.iter().enumerate() {
                inner += c.eval(&nr) * table.get(n as usize + j + self.shift).unwrap();
            }
            let mut term = BigRational::from_integer(factorial(n)) * inner;
            if self.alternating && n % 2 == 1 {
                term = -term;
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Value modulo `p^m`, with `extra` terms beyond the guaranteed cut.
    pub fn evaluate(&self, p: u64, m: u32, extra: u64) -> Result<PadicNumber> {
        let terms = self.cut(p, m) + extra;
        let table = bernoulli(terms as usize + self.coeffs.len() + self.shift);
        let ctx = PadicContext::new(p, m + 2)?;
        Ok(ctx.from_rational(&self.partial_sum(terms, &table)?).with_abs_precision(m as i64))
    }
}

/// `integral of x^shift V_{k-1}(s x)` with `s = -1` when alternating: `sum_i s^i V_i B_(i+shift)`.
pub fn integral_of_rhs(id: &SumIdentity, alternating: bool, shift: usize) -> BigRational {
    let table = bernoulli(id.k as usize + shift);
    id.v.coeffs().iter().enumerate().fold(BigRational::zero(), |acc, (i, c)| {
        let b = table.get(i + shift).unwrap();
        if alternating && i % 2 == 1 {
            acc - c * b
        } else {
            acc + c * b
        }
    })
}

/// A published factorial-Bernoulli sum: the bracket and the stated value.
#[derive(Clone, Debug)]
pub struct PrintedBernoulliSum {
    pub key: String,
    pub integrand: BernoulliIntegrand,
    pub value: BigRational,
}

fn ints(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// The published brackets `c_0(n), ..., c_k(n)` and values.
pub fn printed_bernoulli_sum(k: u32, alternating: bool) -> Option<PrintedBernoulliSum> {
    let (coeffs, value) = match (k, alternating) {
        (1, false) => (vec![ints(&[-1]), ints(&[1, 1])], r(-1, 1)),
        (2, false) => (vec![ints(&[-1]), ints(&[3]), ints(&[-1, 0, 1])], r(-2, 1)),
        (3, false) => (vec![ints(&[-1]), ints(&[6]), ints(&[-7]), ints(&[1, 0, 0, 1])], r(-4, 1)),
        (4, false) => (vec![ints(&[-1]), ints(&[10]), ints(&[-25]), ints(&[15]), ints(&[-1, 0, 0, 0, 1])], r(-25, 3)),
        (5, false) => (
            vec![ints(&[-1]), ints(&[15]), ints(&[-65]), ints(&[90]), ints(&[-31]), ints(&[1, 0, 0, 0, 0, 1])],
            r(-33, 2),
        ),
        (1, true) => (vec![ints(&[1]), ints(&[1, 1])], r(1, 1)),
        (2, true) => (vec![ints(&[-1]), ints(&[-3]), ints(&[-1, 0, 1])], r(-2, 1)),
        _ => return None,
    };
    let key = if alternating { format!("bernoulli-alt-k{k}") } else { format!("bernoulli-k{k}") };
    Some(PrintedBernoulliSum { key, integrand: BernoulliIntegrand { coeffs, alternating, shift: 0 }, value })
}

#[derive(Clone, Debug)]
pub struct BernoulliSum {
    pub key: String,
    pub k: u32,
    pub shift: usize,
    pub alternating: bool,
    pub value: PadicNumber,
    /// Integral of the right-hand side, in the sign convention of the published bracket when there is one.
    pub expected: BigRational,
    pub matches_expected: bool,
    pub printed: Option<BigRational>,
    pub matches_printed: Option<bool>,
    /// Whether the published bracket agrees, up to sign, with the derived one.
    pub bracket_agrees: Option<bool>,
}

fn run_sum(k: u32, alternating: bool, shift: usize, p: u64, m: u32) -> Result<BernoulliSum> {
    let id = derive_uv(k)?;
    let mut integrand = BernoulliIntegrand::from_identity(&id, alternating, shift);
    let mut expected = integral_of_rhs(&id, alternating, shift);
    let printed = if shift == 0 { printed_bernoulli_sum(k, alternating) } else { None };
    let mut bracket_agrees = None;
    if let Some(pr) = &printed {
        let agrees = integrand.same_up_to_sign(&pr.integrand);
        bracket_agrees = Some(agrees);
        if agrees && integrand != pr.integrand {
            integrand = integrand.negated();
            expected = -expected;
        }
    }
    let value = integrand.evaluate(p, m, 0)?;
    let ctx = value.context().clone();
    let matches_expected = value.agrees_mod(&ctx.from_rational(&expected), m as i64);
    let matches_printed = printed.as_ref().map(|pr| value.agrees_mod(&ctx.from_rational(&pr.value), m as i64));
    let key = match (&printed, shift) {
        (Some(pr), _) => pr.key.clone(),
        (None, 0) if alternating => format!("bernoulli-alt-k{k}"),
        (None, 0) => format!("bernoulli-k{k}"),
        (None, s) => format!("bernoulli-k{k}-m{s}"),
    };
    Ok(BernoulliSum {
        key,
        k,
        shift,
        alternating,
        value,
        expected,
        matches_expected,
        printed: printed.map(|pr| pr.value),
        matches_printed,
        bracket_agrees,
    })
}

/// `sum n! [n^k B_(n+k) + sum_j U_(k,j) B_(n+j)]` modulo `p^m`.
pub fn bernoulli_factorial_sum(k: u32, p: u64, m: u32) -> Result<BernoulliSum> {
    run_sum(k, false, 0, p, m)
}

/// The same after `x -> -x`, carrying a factor `(-1)^n`.
pub fn alternating_bernoulli_sum(k: u32, p: u64, m: u32) -> Result<BernoulliSum> {
    run_sum(k, true, 0, p, m)
}

/// The identity multiplied by `x^shift` before integration.
pub fn generalized_bernoulli_sum(k: u32, shift: usize, p: u64, m: u32) -> Result<BernoulliSum> {
    run_sum(k, false, shift, p, m)
}
