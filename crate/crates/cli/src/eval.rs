use std::fmt::Write as _;

use padic_ode::algebra::{parse_polynomial, parse_rational};
use padic_ode::factorial::{evaluate_padic, FactorialPolynomial, FactorialSeries};
use padic_ode::{PadicContext, Result};

/// `sum n! P(n) x^n` modulo `p^prec`, rendered for the terminal.
pub fn eval(series: &str, x: &str, p: u64, prec: u32) -> Result<String> {
    let poly = FactorialPolynomial::from_polynomial(parse_polynomial(series, &["n"])?)?;
    let d = poly.denominator_deficit(p);
    let ctx = PadicContext::new(p, prec + d as u32 + 1)?;
    let xv = ctx.from_rational(&parse_rational(x)?);
    let value = evaluate_padic(&FactorialSeries::new(poly), &xv, prec as i64)?;
    let mut out = String::new();
    match value.residue(prec) {
        Ok(r) => {
            let _ = writeln!(out, "{r} mod {p}^{prec}");
        }
        Err(_) => {
            let _ = writeln!(out, "{value}");
        }
    }
    let _ = writeln!(out, "valuation: {}", value.valuation());
    let digits = value.unit_digits();
    if !digits.is_empty() {
        let shown: Vec<String> = digits.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "unit digits (least significant first): {}", shown.join(" "));
    }
    if let Some(q) = value.rational_reconstruction() {
        let _ = writeln!(out, "rational reconstruction: {q}");
    }
    Ok(out)
}
