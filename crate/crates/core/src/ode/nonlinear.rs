use super::LinearODE;
use crate::algebra::TruncatedSeries;
use crate::error::Result;
use crate::factorial::FactorialSeries;

#[derive(Clone, Debug)]
pub struct ProductCheck {
    /// `sum_j c_j u^(j) - rhs` for each factor.
    pub brackets: Vec<TruncatedSeries>,
    /// Indices of the brackets that vanish through their known order.
    pub vanishing: Vec<usize>,
    pub product: TruncatedSeries,
}

impl ProductCheck {
    pub fn is_verified(&self) -> bool {
        self.product.is_zero()
    }
}

/// Substitutes `u` into each first-order factor and multiplies the brackets.
pub fn nonlinear_product_check(factors: &[LinearODE], u: &FactorialSeries, order: usize) -> Result<ProductCheck> {
    let s = u.expand(order);
    let brackets = factors.iter().map(|f| f.apply(&s)).collect::<Result<Vec<_>>>()?;
    let vanishing = brackets.iter().enumerate().filter(|(_, b)| b.is_zero()).map(|(i, _)| i).collect();
    let mut product = brackets[0].clone();
    for b in &brackets[1..] {
        product = product.mul(b)?;
    }
    Ok(ProductCheck { brackets, vanishing, product })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Polynomial};

    fn factors() -> Vec<LinearODE> {
        let p = Polynomial::from_ints;
        vec![
            LinearODE::new(vec![p(&[-1, 1]), p(&[0, 0, 1])], p(&[-1])).unwrap(),
            LinearODE::new(vec![p(&[-1, 2]), p(&[0, 0, 1])], p(&[-1])).unwrap(),
        ]
    }

    #[test]
    fn both_solutions() {
        let c = nonlinear_product_check(&factors(), &FactorialSeries::f0(), 40).unwrap();
        assert!(c.is_verified());
        assert_eq!(c.vanishing, vec![0]);
        assert!(c.product.order() >= 38);
        let c = nonlinear_product_check(&factors(), &FactorialSeries::rising(1, 1), 40).unwrap();
        assert!(c.is_verified());
        assert_eq!(c.vanishing, vec![1]);
    }

    #[test]
    fn neither_bracket_vanishes() {
        // u(0) = 0, so both brackets have constant term 1
        let c = nonlinear_product_check(&factors(), &FactorialSeries::power(1), 40).unwrap();
        assert!(c.vanishing.is_empty());
        let (e, v) = c.product.first_nonzero().unwrap();
        assert_eq!((e, v.clone()), (0, rat(1, 1)));
    }
}
