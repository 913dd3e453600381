//! Fixed-precision arithmetic in the p-adic field.
//!
//! A nonzero [`PadicNumber`] is stored as `u * p^v` where `u` is a unit known
//! modulo `p^r` (its relative precision, capped at the context precision `N`).
//! Its absolute precision is `v + r`: the value is determined modulo `p^(v + r)`.
//! Two kinds of zero exist: the exact zero, and a value that is only known to
//! be divisible by `p^A` ("zero to precision A").

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default number of p-adic digits carried by every value.
pub const DEFAULT_PRECISION: u32 = 64;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `p`-adic valuation of a nonzero integer; `None` for zero.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

/// `p`-adic valuation of a nonzero rational; `None` for zero.
pub fn rational_valuation(q: &BigRational, p: u64) -> Option<i64> {
    let a = int_valuation(q.numer(), p)? as i64;
    let b = int_valuation(q.denom(), p).unwrap_or(0) as i64;
    Some(a - b)
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

struct ContextInner {
    p: u64,
    precision: u32,
    powers: Vec<BigInt>,
}

/// A prime together with the working precision `N` (values known modulo `p^N`
/// relative to their valuation).
#[derive(Clone)]
pub struct PadicContext {
    inner: Arc<ContextInner>,
}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        let pb = BigInt::from(p);
        let mut powers = Vec::with_capacity(precision as usize + 1);
        let mut acc = BigInt::one();
        for _ in 0..=precision {
            powers.push(acc.clone());
            acc *= &pb;
        }
        Ok(Self { inner: Arc::new(ContextInner { p, precision, powers }) })
    }

    pub fn with_default_precision(p: u64) -> Result<Self> {
        Self::new(p, DEFAULT_PRECISION)
    }

    pub fn prime(&self) -> u64 {
        self.inner.p
    }

    pub fn precision(&self) -> u32 {
        self.inner.precision
    }

    /// `p^k` as a big integer.
    pub fn pow(&self, k: u64) -> BigInt {
        match self.inner.powers.get(k as usize) {
            Some(v) => v.clone(),
            None => num_traits::pow(BigInt::from(self.inner.p), k as usize),
        }
    }

    fn same(&self, other: &PadicContext) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.precision == other.inner.precision)
    }

    pub fn zero(&self) -> PadicNumber {
        PadicNumber { ctx: self.clone(), repr: Repr::Zero }
    }

    pub fn one(&self) -> PadicNumber {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> PadicNumber {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> PadicNumber {
        self.from_rational(&BigRational::from_integer(n.clone()))
    }

    /// Embeds `a / b` into the field.
    pub fn from_fraction(&self, a: i64, b: i64) -> Result<PadicNumber> {
        if b == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.from_rational(&BigRational::new(a.into(), b.into())))
    }

    pub fn from_rational(&self, q: &BigRational) -> PadicNumber {
        if q.is_zero() {
            return self.zero();
        }
        let p = self.inner.p;
        let va = int_valuation(q.numer(), p).unwrap();
        let vb = int_valuation(q.denom(), p).unwrap_or(0);
        let n = self.precision();
        let modulus = self.pow(n as u64);
        let a = q.numer() / self.pow(va);
        let b = q.denom() / self.pow(vb);
        let binv = mod_inverse(&b, &modulus).expect("unit part is invertible");
        let unit = (a * binv).mod_floor(&modulus);
        PadicNumber { ctx: self.clone(), repr: Repr::Unit { val: va as i64 - vb as i64, unit, rel: n } }
    }

    /// A value known only to be divisible by `p^abs`.
    pub fn zero_to_precision(&self, abs: i64) -> PadicNumber {
        PadicNumber { ctx: self.clone(), repr: Repr::ZeroTo(abs) }
    }

    /// Builds `scaled * p^shift`, known modulo `p^abs` (`None` = exact).
    fn normalize(&self, scaled: BigInt, shift: i64, abs: Option<i64>) -> PadicNumber {
        let n = self.precision() as i64;
        let p = self.inner.p;
        match abs {
            None => {
                if scaled.is_zero() {
                    return self.zero();
                }
                let k = int_valuation(&scaled, p).unwrap();
                let val = shift + k as i64;
                let unit = (scaled / self.pow(k)).mod_floor(&self.pow(n as u64));
                PadicNumber { ctx: self.clone(), repr: Repr::Unit { val, unit, rel: n as u32 } }
            }
            Some(abs) => {
                let span = abs - shift;
                if span <= 0 {
                    return self.zero_to_precision(abs);
                }
                let reduced = scaled.mod_floor(&self.pow(span as u64));
                if reduced.is_zero() {
                    return self.zero_to_precision(abs);
                }
                let k = int_valuation(&reduced, p).unwrap();
                let val = shift + k as i64;
                let rel = (abs - val).min(n);
                let unit = (reduced / self.pow(k)).mod_floor(&self.pow(rel as u64));
                PadicNumber { ctx: self.clone(), repr: Repr::Unit { val, unit, rel: rel as u32 } }
            }
        }
    }
}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicContext(p={}, N={})", self.inner.p, self.inner.precision)
    }
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Zero,
    ZeroTo(i64),
    Unit { val: i64, unit: BigInt, rel: u32 },
}

/// Valuation information for a value that may only be known approximately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// Exact zero.
    Infinite,
    /// Zero to the stated absolute precision; the true valuation is at least this.
    AtLeast(i64),
    Exact(i64),
}

impl Valuation {
    /// Whether the valuation is provably `>= m`.
    pub fn at_least(&self, m: i64) -> bool {
        match *self {
            Valuation::Infinite => true,
            Valuation::AtLeast(a) | Valuation::Exact(a) => a >= m,
        }
    }

    /// Lower bound on the valuation, `None` meaning infinite.
    pub fn lower_bound(&self) -> Option<i64> {
        match *self {
            Valuation::Infinite => None,
            Valuation::AtLeast(a) | Valuation::Exact(a) => Some(a),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Infinite => write!(f, "inf"),
            Valuation::AtLeast(a) => write!(f, ">={a}"),
            Valuation::Exact(a) => write!(f, "{a}"),
        }
    }
}

/// An element of Q_p at the precision of its context.
#[derive(Clone)]
pub struct PadicNumber {
    ctx: PadicContext,
    repr: Repr,
}

impl PadicNumber {
    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn prime(&self) -> u64 {
        self.ctx.prime()
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    pub fn is_zero_to_precision(&self) -> bool {
        matches!(self.repr, Repr::ZeroTo(_))
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::Zero => Valuation::Infinite,
            Repr::ZeroTo(a) => Valuation::AtLeast(*a),
            Repr::Unit { val, .. } => Valuation::Exact(*val),
        }
    }

    /// Absolute precision; `None` for exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::ZeroTo(a) => Some(*a),
            Repr::Unit { val, rel, .. } => Some(val + *rel as i64),
        }
    }

    /// Unit part and its relative precision, for nonzero values.
    pub fn unit(&self) -> Option<(&BigInt, u32)> {
        match &self.repr {
            Repr::Unit { unit, rel, .. } => Some((unit, *rel)),
            _ => None,
        }
    }

    /// `|x|_p = p^(-v)` as an exact rational. `None` when the value is only
    /// known to be zero to some precision (its norm is then merely bounded).
    pub fn norm(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Zero => Some(BigRational::zero()),
            Repr::ZeroTo(_) => None,
            Repr::Unit { val, .. } => {
                let pk = self.ctx.pow(val.unsigned_abs());
                Some(if *val >= 0 { BigRational::new(BigInt::one(), pk) } else { BigRational::from_integer(pk) })
            }
        }
    }

    /// Whether the value is provably divisible by `p^m`.
    pub fn is_zero_mod(&self, m: i64) -> bool {
        self.valuation().at_least(m)
    }

    /// Whether `self - other` is provably divisible by `p^m`.
    pub fn agrees_mod(&self, other: &PadicNumber, m: i64) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_zero_mod(m),
            Err(_) => false,
        }
    }

    fn check(&self, other: &PadicNumber) -> Result<()> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Lowest exponent carried by the representation, for alignment.
    fn low(&self) -> i64 {
        match &self.repr {
            Repr::Zero => i64::MAX,
            Repr::ZeroTo(a) => *a,
            Repr::Unit { val, .. } => *val,
        }
    }

    fn scaled_at(&self, m: i64) -> BigInt {
        match &self.repr {
            Repr::Unit { val, unit, .. } => unit * self.ctx.pow((val - m) as u64),
            _ => BigInt::zero(),
        }
    }

    pub fn add(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.check(other)?;
        if self.is_exact_zero() {
            return Ok(other.clone());
        }
        if other.is_exact_zero() {
            return Ok(self.clone());
        }
        let abs = self.abs_precision().unwrap().min(other.abs_precision().unwrap());
        let m = self.low().min(other.low()).min(abs);
        let s = self.scaled_at(m) + other.scaled_at(m);
        Ok(self.ctx.normalize(s, m, Some(abs)))
    }

    pub fn neg(&self) -> PadicNumber {
        let repr = match &self.repr {
            Repr::Unit { val, unit, rel } => Repr::Unit {
                val: *val,
                unit: (self.ctx.pow(*rel as u64) - unit).mod_floor(&self.ctx.pow(*rel as u64)),
                rel: *rel,
            },
            other => other.clone(),
        };
        PadicNumber { ctx: self.ctx.clone(), repr }
    }

    pub fn sub(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Repr::Zero,
            (Repr::ZeroTo(a), Repr::ZeroTo(b)) => Repr::ZeroTo(a + b),
            (Repr::ZeroTo(a), Repr::Unit { val, .. }) | (Repr::Unit { val, .. }, Repr::ZeroTo(a)) => {
                Repr::ZeroTo(a + val)
            }
            (Repr::Unit { val: va, unit: ua, rel: ra }, Repr::Unit { val: vb, unit: ub, rel: rb }) => {
                let rel = *ra.min(rb);
                Repr::Unit { val: va + vb, unit: (ua * ub).mod_floor(&self.ctx.pow(rel as u64)), rel }
            }
        };
        Ok(PadicNumber { ctx: self.ctx.clone(), repr })
    }

    pub fn div(&self, other: &PadicNumber) -> Result<PadicNumber> {
        self.check(other)?;
        let (vb, ub, rb) = match &other.repr {
            Repr::Unit { val, unit, rel } => (*val, unit, *rel),
            _ => return Err(Error::DivisionByZero),
        };
        let repr = match &self.repr {
            Repr::Zero => Repr::Zero,
            Repr::ZeroTo(a) => Repr::ZeroTo(a - vb),
            Repr::Unit { val, unit, rel } => {
                let rel = (*rel).min(rb);
                let m = self.ctx.pow(rel as u64);
                let inv = mod_inverse(ub, &m).expect("units are invertible");
                Repr::Unit { val: val - vb, unit: (unit * inv).mod_floor(&m), rel }
            }
        };
        Ok(PadicNumber { ctx: self.ctx.clone(), repr })
    }

    pub fn pow(&self, mut e: u32) -> PadicNumber {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Forgets everything beyond absolute precision `m`.
    pub fn with_abs_precision(&self, m: i64) -> PadicNumber {
        match &self.repr {
            Repr::Zero => self.ctx.zero_to_precision(m),
            Repr::ZeroTo(a) => self.ctx.zero_to_precision((*a).min(m)),
            Repr::Unit { val, unit, rel } => {
                if *val >= m {
                    return self.ctx.zero_to_precision(m);
                }
                let r = (*rel as i64).min(m - val) as u32;
                PadicNumber {
                    ctx: self.ctx.clone(),
                    repr: Repr::Unit { val: *val, unit: unit.mod_floor(&self.ctx.pow(r as u64)), rel: r },
                }
            }
        }
    }

    /// The residue in `[0, p^m)` of an integral value known to absolute precision `m`.
    pub fn residue(&self, m: u32) -> Result<BigInt> {
        match &self.repr {
            Repr::Zero => Ok(BigInt::zero()),
            Repr::ZeroTo(a) => {
                if *a >= m as i64 {
                    Ok(BigInt::zero())
                } else {
                    Err(Error::PrecisionUnreachable { requested: m as i64, available: *a })
                }
            }
            Repr::Unit { val, unit, rel } => {
                if *val < 0 {
                    return Err(Error::OutsideDomain("value is not a p-adic integer".into()));
                }
                let abs = val + *rel as i64;
                if abs < m as i64 {
                    return Err(Error::PrecisionUnreachable { requested: m as i64, available: abs });
                }
                Ok((unit * self.ctx.pow(*val as u64)).mod_floor(&self.ctx.pow(m as u64)))
            }
        }
    }

    /// Base-`p` digits of the unit, least significant first.
    pub fn unit_digits(&self) -> Vec<u64> {
        let Repr::Unit { unit, rel, .. } = &self.repr else {
            return Vec::new();
        };
        let pb = BigInt::from(self.ctx.prime());
        let mut digits = Vec::with_capacity(*rel as usize);
        let mut u = unit.clone();
        for _ in 0..*rel {
            let (q, r) = u.div_rem(&pb);
            digits.push(r.try_into().unwrap_or(0));
            u = q;
        }
        digits
    }

    /// Smallest-height rational `a/b` congruent to the value, found by lattice
    /// reduction on the known residue. Returns `None` if no rational of height
    /// below `sqrt(p^A / 2)` fits.
    pub fn rational_reconstruction(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Zero | Repr::ZeroTo(_) => Some(BigRational::zero()),
            Repr::Unit { val, unit, rel } => {
                let m = self.ctx.pow(*rel as u64);
                let bound = (&m / 2u32).sqrt();
                let (mut r0, mut r1) = (m.clone(), unit.clone());
                let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
                while r1 > bound {
                    let q = &r0 / &r1;
                    let r2 = &r0 - &q * &r1;
                    let t2 = &t0 - &q * &t1;
                    r0 = std::mem::replace(&mut r1, r2);
                    t0 = std::mem::replace(&mut t1, t2);
                }
                if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
                    return None;
                }
                let base = BigRational::new(r1, t1);
                let pk = BigRational::from_integer(self.ctx.pow(val.unsigned_abs()));
                Some(if *val >= 0 { base * pk } else { base / pk })
            }
        }
    }
}

impl PartialEq for PadicNumber {
    /// Equality to the smaller of the two precisions.
    fn eq(&self, other: &Self) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_exact_zero() || d.is_zero_to_precision(),
            Err(_) => false,
        }
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.ctx.prime();
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::ZeroTo(a) => write!(f, "O({p}^{a})"),
            Repr::Unit { val, unit, rel } => {
                write!(f, "{p}^{val} * {unit} + O({p}^{})", val + *rel as i64)
            }
        }
    }
}

/// The p-adic exponential `sum z^n / n!`.
///
/// Requires `v_p(z) > 1/(p-1)`: `v >= 1` for odd `p`, `v >= 2` for `p = 2`.
pub fn padic_exp(z: &PadicNumber) -> Result<PadicNumber> {
    let ctx = z.context().clone();
    let p = ctx.prime();
    let min_val = if p == 2 { 2 } else { 1 };
    let n_cap = ctx.precision() as i64;
    let v = match z.valuation() {
        Valuation::Infinite => return Ok(ctx.one()),
        Valuation::AtLeast(a) => {
            if a < min_val {
                return Err(Error::ExpDomain { p, valuation: a });
            }
            return Ok(ctx.one().with_abs_precision(a.min(n_cap)));
        }
        Valuation::Exact(v) => v,
    };
    if v < min_val {
        return Err(Error::ExpDomain { p, valuation: v });
    }
    let target = z.abs_precision().unwrap().min(n_cap);
    // v(z^n / n!) >= n v - floor((n-1)/(p-1)), nondecreasing in n.
    let bound = |n: i64| n * v - (n - 1) / (p as i64 - 1);
    let mut sum = ctx.one();
    let mut term = ctx.one();
    let mut n = 1i64;
    while bound(n) < target {
        term = term.mul(z)?.div(&ctx.from_integer(n))?;
        sum = sum.add(&term)?;
        n += 1;
    }
    Ok(sum.with_abs_precision(target))
}
