//! Exact symbolic layer over Q.

mod parse;
mod polynomial;
mod rational_function;
mod series;

pub use parse::{parse_polynomial, parse_rational, parse_rational_function};
pub use polynomial::Polynomial;
pub use rational_function::{clear_denominators, RationalFunction};
pub use series::TruncatedSeries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// `a / b` as a big rational.
pub fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
