use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;
use padic_ode::algebra::{parse_rational, parse_rational_function, RationalFunction, TruncatedSeries};
use padic_ode::ode::{
    first_to_second, formal_solution_space, printed_6_4, prop1_iterate, prop2_shift, FirstOrderForm, FormalCheck,
    LogCoefficient, QuadraticLagrangian,
};
use padic_ode::sums::{derive_uv, ORACLE_ORDER};
use padic_ode::{Error, Result};
use serde::Deserialize;

/// Order of the power-series solution used to check derived equations.
pub const CHECK_ORDER: usize = 40;

pub struct Derived {
    pub text: String,
    pub verified: bool,
}

pub fn derive_k(k: u32) -> Result<Derived> {
    let id = derive_uv(k)?;
    let verified = id.check_formal(ORACLE_ORDER)?;
    let mut text = String::new();
    let _ = writeln!(text, "U_{k} = {}", id.u.render("x"));
    let _ = writeln!(text, "V_{} = {}", k - 1, id.v.render("x"));
    let _ = writeln!(text, "{id}");
    let _ = writeln!(
        text,
        "status: {}",
        if verified { format!("verified through x^{ORACLE_ORDER}") } else { "failed".into() }
    );
    Ok(Derived { text, verified })
}

fn parse_form(parts: &[&str]) -> Result<FirstOrderForm> {
    let f = |s: &str| parse_rational_function(s.trim(), &["x"]);
    Ok(FirstOrderForm::new(f(parts[0])?, f(parts[1])?, f(parts[2])?))
}

fn split(src: &str, n: usize, what: &str) -> Result<Vec<String>> {
    let parts: Vec<String> = src.split(';').map(str::to_string).collect();
    if parts.len() != n {
        return Err(Error::InvalidArgument(format!("{what} expects {n} fields separated by ';', got {}", parts.len())));
    }
    Ok(parts)
}

/// A power series `F` with `A F' + B F = C`, found inside the solution space of
/// the differentiated homogeneous equation.
pub fn power_series_solution(form: &FirstOrderForm, order: usize) -> Result<Option<TruncatedSeries>> {
    let second = first_to_second(form)?;
    let space = formal_solution_space(&second, order)?;
    let first = form.to_ode()?;
    let c = TruncatedSeries::from_polynomial(first.rhs(), order as i64 + 1);
    let Some((e, lead)) = c.first_nonzero().map(|(e, v)| (e, v.clone())) else {
        return Ok(None);
    };
    for b in &space.basis {
        // apply returns L[b] - C
        let r = first.apply(b)?.add_polynomial(first.rhs());
        if r.order() <= e {
            continue;
        }
        let kappa: BigRational = r.coeff(e)? / &lead;
        if kappa == BigRational::from_integer(0.into()) {
            continue;
        }
        let s = b.scalar_mul(&kappa.recip());
        if first.verify_series(&s)?.is_verified() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

fn status_line(check: Option<FormalCheck>) -> (String, bool) {
    match check {
        Some(c) => (format!("status: {c}"), c.is_verified()),
        None => ("status: unverified (no power-series solution of the input equation)".into(), false),
    }
}

pub fn derive_prop1(src: &str) -> Result<Derived> {
    let parts = split(src, 4, "--prop1")?;
    let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
    let form = parse_form(&refs[..3])?;
    let mu: u32 = refs[3]
        .trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("mu must be a nonnegative integer, got {:?}", refs[3].trim())))?;
    let out = prop1_iterate(&form, mu)?;
    let ode = out.to_ode()?;
    let check = match power_series_solution(&form, CHECK_ORDER)? {
        Some(f) => Some(ode.verify_series(&f.nth_derivative(mu as usize)?)?),
        None => None,
    };
    let (status, verified) = status_line(check);
    let text = format!(
        "A_{mu} = {}\nB_{mu} = {}\nequation for F^({mu}): {ode}\n{status}\n",
        out.a.render("x"),
        out.b.render("x")
    );
    Ok(Derived { text, verified })
}

pub fn derive_shift(m: u32, form_src: Option<&str>) -> Result<Derived> {
    let form = match form_src {
        Some(src) => {
            let parts = split(src, 3, "--form")?;
            let refs: Vec<&str> = parts.iter().map(String::as_str).collect();
            parse_form(&refs)?
        }
        None => FirstOrderForm::for_f0(),
    };
    let ode = prop2_shift(&form, m).to_ode()?;
    let check = match power_series_solution(&form, CHECK_ORDER)? {
        Some(f) => Some(ode.verify_series(&f.shift_by_power(m as i64))?),
        None => None,
    };
    let (status, verified) = status_line(check);
    Ok(Derived { text: format!("equation for x^{m} F: {ode}\n{status}\n"), verified })
}

/// Coefficients of `L = a qdot^2 + 2 b qdot q + c q^2 + 2 d qdot + 2 e q + f` as
/// rational functions of `t`; `b_log` is the coefficient of `log t` in `b`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LagrangianFile {
    pub a: String,
    #[serde(default = "zero")]
    pub b: String,
    #[serde(default = "zero")]
    pub b_log: String,
    #[serde(default = "zero")]
    pub c: String,
    #[serde(default = "zero")]
    pub d: String,
    #[serde(default = "zero")]
    pub e: String,
    #[serde(default = "zero")]
    pub f: String,
}

fn zero() -> String {
    "0".into()
}

impl LagrangianFile {
    pub fn build(&self) -> Result<QuadraticLagrangian> {
        let t = |s: &str| -> Result<RationalFunction> { parse_rational_function(s, &["t"]) };
        QuadraticLagrangian::new(
            t(&self.a)?,
            LogCoefficient::new(t(&self.b)?, parse_rational(&self.b_log)?),
            t(&self.c)?,
            t(&self.d)?,
            t(&self.e)?,
            t(&self.f)?,
        )
    }
}

pub fn derive_euler_lagrange(source: &str) -> Result<Derived> {
    let (l, builtin) = if source == "example_6_5" {
        (QuadraticLagrangian::example_6_5(&BigRational::from_integer(0.into())), true)
    } else {
        let raw = std::fs::read_to_string(Path::new(source))
            .map_err(|e| Error::InvalidArgument(format!("cannot read {source}: {e}")))?;
        let file: LagrangianFile =
            toml::from_str(&raw).map_err(|e| Error::InvalidArgument(format!("{source}: {e}")))?;
        (file.build()?, false)
    };
    let ode = l.euler_lagrange()?;
    let mut text = format!("{}\n", ode.render("t", "q"));
    let mut verified = true;
    if builtin {
        verified = ode == printed_6_4();
        let _ = writeln!(text, "status: {}", if verified { "matches 6.4" } else { "differs from 6.4" });
    }
    Ok(Derived { text, verified })
}
