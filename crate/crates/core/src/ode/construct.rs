use num_rational::BigRational;
use num_traits::Zero;

use super::{FirstOrderForm, LinearODE};
use crate::algebra::{Polynomial, RationalFunction};
use crate::error::{Error, Result};
use crate::factorial::{FactorialPolynomial, FactorialSeries};

fn x() -> RationalFunction {
    Polynomial::x().into()
}

fn constant(c: BigRational) -> RationalFunction {
    RationalFunction::constant(c)
}

/// One differentiation step for `A F' + B F = C` with constant `C`:
/// `A1 = -A B / B'`, `B1 = (B' A - A' B - B^2) / B'`, so that `A1 F'' + B1 F' = C`.
pub fn prop1_step(a: &RationalFunction, b: &RationalFunction) -> Result<(RationalFunction, RationalFunction)> {
    let db = b.derivative();
    if db.is_zero() {
        return Err(Error::ConstantB { step: 1 });
    }
    let a1 = (-&(a * b)).checked_div(&db)?;
    let num = &(&(&db * a) - &(&a.derivative() * b)) - &(b * b);
    let b1 = num.checked_div(&db)?;
    Ok((a1, b1))
}

/// Applies [`prop1_step`] `mu` times. The result is a first-order equation for
/// `F^(mu)`, which is the factorial series with `P(n)` replaced by
/// `prod_{i=1}^mu (n+i)^2 P(n+mu)`.
pub fn prop1_iterate(form: &FirstOrderForm, mu: u32) -> Result<FirstOrderForm> {
    if form.c.as_constant().is_none() {
        return Err(Error::NonConstantRhs);
    }
    let (mut a, mut b) = (form.a.clone(), form.b.clone());
    for step in 1..=mu {
        (a, b) = prop1_step(&a, &b).map_err(|e| match e {
            Error::ConstantB { .. } => Error::ConstantB { step: step as usize },
            other => other,
        })?;
    }
    Ok(FirstOrderForm::new(a, b, form.c.clone()))
}

/// Differentiated companion of `A F' + B F = C`.
///
/// Constant `C` gives `A F'' + (A' + B) F' + B' F = 0`. Otherwise the equation
/// is divided by `C` first, giving
/// `A C F'' + (A' C - A C' + B C) F' + (B' C - B C') F = 0`.
pub fn first_to_second(form: &FirstOrderForm) -> Result<LinearODE> {
    let FirstOrderForm { a, b, c } = form;
    if c.as_constant().is_some() {
        return LinearODE::from_rational(
            &[b.derivative(), a.derivative() + b.clone(), a.clone()],
            &RationalFunction::zero(),
        );
    }
    let dc = c.derivative();
    let c2 = a * c;
    let c1 = &(&(&a.derivative() * c) - &(a * &dc)) + &(b * c);
    let c0 = &(&b.derivative() * c) - &(b * &dc);
    LinearODE::from_rational(&[c0, c1, c2], &RationalFunction::zero())
}

/// Equation for `G = x^m F`: `A1 = A / x^m`, `B1 = B / x^m - m A / x^(m+1)`.
pub fn prop2_shift(form: &FirstOrderForm, m: u32) -> FirstOrderForm {
    let inv_m = RationalFunction::inverse_power(m as usize);
    let a1 = &form.a * &inv_m;
    let mm = constant(BigRational::from_integer(m.into()));
    let b1 = &(&form.b * &inv_m) - &(&(&form.a * &mm) * &RationalFunction::inverse_power(m as usize + 1));
    FirstOrderForm::new(a1, b1, form.c.clone())
}

/// `x^2 w'' + (3x - 1) w' + w + R [x^2 w' + (x - 1) w + 1] = 0`, cleared.
pub fn combine(r: &RationalFunction) -> Result<LinearODE> {
    let x = x();
    let one = RationalFunction::one();
    let c2 = &x * &x;
    let c1 = &(&(&x * &constant(BigRational::from_integer(3.into()))) - &one) + &(r * &c2);
    let c0 = &one + &(r * &(&x - &one));
    LinearODE::from_rational(&[c0, c1, c2], &-r)
}

/// From `A Phi' + B Phi = C` satisfied by `sum n! P(n) x^n`, the equation for
/// `Psi = x Phi' + beta Phi = sum n! P(n) (n + beta) x^n`.
///
/// With `D = beta A - x B` one has `Phi = (A Psi - x C) / D`; substituting back gives
/// `A D Psi' + (A' D - A D' + B D) Psi = [C D^2 + x B C D + A C D + x A C' D - x A C D'] / A`.
pub fn multiply_by_linear_factor(form: &FirstOrderForm, beta: &BigRational) -> Result<FirstOrderForm> {
    let FirstOrderForm { a, b, c } = form;
    let x = x();
    let d = &(a * &constant(beta.clone())) - &(&x * b);
    if d.is_zero() {
        return Err(Error::Degenerate(format!("factor (n + {beta}) annihilates the equation")));
    }
    let dd = d.derivative();
    let new_a = a * &d;
    let new_b = &(&(&a.derivative() * &d) - &(a * &dd)) + &(b * &d);
    let terms = [
        &(c * &d) * &d,
        &(&(&x * b) * c) * &d,
        &(a * c) * &d,
        &(&(&x * a) * &c.derivative()) * &d,
        -&(&(&(&x * a) * c) * &dd),
    ];
    let sum = terms.iter().fold(RationalFunction::zero(), |acc, t| &acc + t);
    let new_c = sum.checked_div(a)?;
    FirstOrderForm::from_ode(&FirstOrderForm::new(new_a, new_b, new_c).to_ode()?.reduced())
}

/// First-order equation for `sum n! P(n) x^n` whenever `P` splits into rational
/// linear factors, built from the equation for `sum n! x^n` one factor at a time.
pub fn first_order_for(series: &FactorialSeries) -> Result<FirstOrderForm> {
    let product = series
        .poly()
        .to_product_form()
        .ok_or_else(|| Error::InvalidArgument(format!("{} does not split over Q", series.poly())))?;
    let FactorialPolynomial::Product { scale, factors } = product else {
        unreachable!("to_product_form returns product form")
    };
    let mut form = FirstOrderForm::for_f0();
    for f in &factors {
        for _ in 0..f.multiplicity {
            form = multiply_by_linear_factor(&form, &f.shift)?;
        }
    }
    if scale.is_zero() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    form.c = form.c.scale(&scale);
    Ok(form)
}
