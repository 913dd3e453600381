//! Exact p-adic computer algebra for factorial series `sum n! P(n) x^n`:
//! their linear differential equations, rational summation identities and
//! Bernoulli-number sums obtained by Volkenborn integration.

pub mod algebra;
pub mod bernoulli;
pub mod error;
pub mod factorial;
pub mod ode;
pub mod padic;
pub mod sums;

pub use error::{Error, Result};
pub use padic::{padic_exp, PadicContext, PadicNumber, Valuation};
