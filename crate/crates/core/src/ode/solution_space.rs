//! Power-series solutions of homogeneous equations via the coefficient recurrence.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LinearODE;
use crate::algebra::{Polynomial, RationalFunction, TruncatedSeries};
use crate::error::{Error, Result};

/// `sum_d q_d(s) a_{s+d} = 0` for every `s >= 0`, with `a_m = 0` for `m < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    /// `(d, q_d)` with strictly increasing `d` and nonzero `q_d`.
    pub terms: Vec<(i64, Polynomial)>,
}

impl Recurrence {
    /// The recurrence obtained by substituting `sum a_n x^n`: the term
    /// `c x^i w^(j)` contributes `c prod_{t=1}^j (s - i + t)` to `q_{j-i}`.
    pub fn from_ode(ode: &LinearODE) -> Self {
        let mut acc: Vec<(i64, Polynomial)> = Vec::new();
        for (j, c) in ode.coeffs().iter().enumerate() {
            for (i, cij) in c.coeffs().iter().enumerate() {
                if cij.is_zero() {
                    continue;
                }
                let mut factor = Polynomial::constant(cij.clone());
                for t in 1..=j as i64 {
                    factor = &factor * &Polynomial::linear(BigRational::from_integer((t - i as i64).into()));
                }
                let d = j as i64 - i as i64;
                match acc.iter_mut().find(|(e, _)| *e == d) {
                    Some((_, q)) => *q = &*q + &factor,
                    None => acc.push((d, factor)),
                }
            }
        }
        acc.retain(|(_, q)| !q.is_zero());
        acc.sort_by_key(|(d, _)| *d);
        Self { terms: acc }
    }

    pub fn min_shift(&self) -> i64 {
        self.terms.first().map_or(0, |t| t.0)
    }

    pub fn max_shift(&self) -> i64 {
        self.terms.last().map_or(0, |t| t.0)
    }

    pub fn q(&self, d: i64) -> Polynomial {
        self.terms.iter().find(|(e, _)| *e == d).map_or_else(Polynomial::zero, |(_, q)| q.clone())
    }

    /// Divided by the gcd of all `q_d`, with the top coefficient's leading term made 1.
    pub fn normalized(&self) -> Self {
        let g = self.terms.iter().fold(Polynomial::zero(), |acc, (_, q)| acc.gcd(q));
        if g.is_zero() {
            return self.clone();
        }
        let lead = self.terms.last().unwrap().1.exact_div(&g).unwrap().leading().recip();
        let terms = self.terms.iter().map(|(d, q)| (*d, q.exact_div(&g).unwrap().scale(&lead))).collect();
        Self { terms }
    }

    /// For a two-term recurrence with adjacent shifts, `a_{n+1} / a_n` as a function of `n`.
    pub fn first_order_ratio(&self) -> Option<RationalFunction> {
        let [(d0, q0), (d1, q1)] = self.terms.as_slice() else {
            return None;
        };
        if d1 - d0 != 1 {
            return None;
        }
        // row s relates a_{s+d0} and a_{s+d1}; put n = s + d0
        let back = BigRational::from_integer((-d0).into());
        let num = q0.compose_linear(&BigRational::one(), &back);
        let den = q1.compose_linear(&BigRational::one(), &back);
        Some(-RationalFunction::new(num, den).ok()?)
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.normalized().first_order_ratio() {
            return write!(f, "a_{{n+1}} = ({})*a_n", r.render("n"));
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(d, q)| format!("({})*a_{{n{:+}}}", q.render("n"), d)).collect();
        write!(f, "{} = 0", parts.join(" + "))
    }
}

/// Truncated solution space of a homogeneous equation among series `sum_{n<=N} a_n x^n`.
#[derive(Clone, Debug)]
pub struct SolutionSpace {
    pub order: usize,
    pub dimension: usize,
    /// One basis vector per free coefficient; basis `k` has coefficient 1 at
    /// `pivots[k]` and 0 at every other pivot.
    pub basis: Vec<TruncatedSeries>,
    pub pivots: Vec<usize>,
    pub recurrence: Recurrence,
    /// Rows `s` where the top recurrence coefficient vanished, so the
    /// coefficient it would have fixed became free and the row a constraint.
    pub vanishing_rows: Vec<i64>,
    /// Rows where every recurrence coefficient vanished.
    pub degenerate_rows: Vec<i64>,
}

impl SolutionSpace {
    /// Whether a series known through `x^order` lies in the span of the basis.
    pub fn contains(&self, s: &TruncatedSeries) -> Result<bool> {
        let mut combo = TruncatedSeries::zero(0);
        let mut first = true;
        for (b, &m) in self.basis.iter().zip(&self.pivots) {
            let term = b.scalar_mul(&s.coeff(m as i64)?);
            combo = if first { term } else { combo.add(&term) };
            first = false;
        }
        if first {
            combo = TruncatedSeries::from_polynomial(&Polynomial::zero(), self.order as i64 + 1);
        }
        for e in 0..=self.order as i64 {
            if combo.coeff(e)? != s.coeff(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

type Expr = Vec<BigRational>;

fn axpy(acc: &mut Expr, c: &BigRational, v: &Expr) {
    if acc.len() < v.len() {
        acc.resize(v.len(), BigRational::zero());
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += c * b;
    }
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Expr>, width: usize) -> Vec<usize> {
    for r in rows.iter_mut() {
        r.resize(width, BigRational::zero());
    }
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..width {
        let Some(pr) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(top, pr);
        let inv = rows[top][col].recip();
        for v in rows[top].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != top && !row[col].is_zero() {
                let f = -row[col].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

/// Solves for `a_0 .. a_N` treating undetermined coefficients as symbols.
pub fn formal_solution_space(ode: &LinearODE, order: usize) -> Result<SolutionSpace> {
    if !ode.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if order < 10 {
        return Err(Error::InvalidArgument(format!("order {order} below the minimum of 10")));
    }
    let rec = Recurrence::from_ode(ode);
    let dmax = rec.max_shift();
    let n = order as i64;
    let mut coeffs: Vec<Expr> = Vec::new();
    let mut symbol_at: Vec<usize> = Vec::new();
    let mut constraints: Vec<Expr> = Vec::new();
    let mut vanishing = Vec::new();
    let mut degenerate = Vec::new();

    let mut fresh = |coeffs: &mut Vec<Expr>, m: usize| {
        let k = symbol_at.len();
        symbol_at.push(m);
        let mut e = vec![BigRational::zero(); k + 1];
        e[k] = BigRational::one();
        coeffs.push(e);
    };

    let s0 = (-dmax).max(0);
    for m in 0..(s0 + dmax).max(0) {
        fresh(&mut coeffs, m as usize);
    }
    let mut s = s0;
    while s + dmax <= n {
        let sr = BigRational::from_integer(s.into());
        let mut rest: Expr = Vec::new();
        let mut all_zero = true;
        for (d, q) in &rec.terms {
            let v = q.eval(&sr);
            if !v.is_zero() {
                all_zero = false;
            }
            if *d == dmax || s + d < 0 || v.is_zero() {
                continue;
            }
            axpy(&mut rest, &v, &coeffs[(s + d) as usize]);
        }
        if all_zero {
            degenerate.push(s);
        }
        let top = rec.q(dmax).eval(&sr);
        if top.is_zero() {
            vanishing.push(s);
            fresh(&mut coeffs, (s + dmax) as usize);
            constraints.push(rest);
        } else {
            let f = -top.recip();
            let mut e = Vec::new();
            axpy(&mut e, &f, &rest);
            coeffs.push(e);
        }
        s += 1;
    }
    let nsym = symbol_at.len();
    let pivots = rref(&mut constraints, nsym);
    let free: Vec<usize> = (0..nsym).filter(|c| !pivots.contains(c)).collect();

    let mut basis = Vec::new();
    for &fc in &free {
        // symbol values: free column 1, other free 0, pivots solved from the rref rows
        let mut vals = vec![BigRational::zero(); nsym];
        vals[fc] = BigRational::one();
        for (row, &pc) in constraints.iter().zip(&pivots) {
            vals[pc] = -row[fc].clone();
        }
        let series: Vec<BigRational> =
            coeffs.iter().map(|e| e.iter().zip(&vals).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)).collect();
        basis.push(TruncatedSeries::new(0, series));
    }
    Ok(SolutionSpace {
        order,
        dimension: free.len(),
        pivots: free.iter().map(|&c| symbol_at[c]).collect(),
        basis,
        recurrence: rec,
        vanishing_rows: vanishing,
        degenerate_rows: degenerate,
    })
}
