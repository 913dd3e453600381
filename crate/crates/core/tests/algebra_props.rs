use num_rational::BigRational;
use padic_ode::algebra::{Polynomial, RationalFunction, TruncatedSeries};
use proptest::prelude::*;

fn q() -> impl Strategy<Value = BigRational> {
    (-20i64..20, 1i64..6).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(q(), 0..6).prop_map(Polynomial::new)
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(q(), 12..16).prop_map(|c| TruncatedSeries::new(0, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn polynomial_leibniz(a in poly(), b in poly()) {
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn division_with_remainder(a in poly(), b in nonzero_poly()) {
        let (quot, rem) = a.div_rem(&b);
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.degree().unwrap_or(0) < b.degree().unwrap().max(1) || rem.is_zero());
    }

    #[test]
    fn rational_function_quotient_rule(a in poly(), b in nonzero_poly(), c in poly(), d in nonzero_poly()) {
        let f = RationalFunction::new(a, b).unwrap();
        let g = RationalFunction::new(c, d).unwrap();
        prop_assert_eq!((&f * &g).derivative(), &(&f.derivative() * &g) + &(&f * &g.derivative()));
    }

    #[test]
    fn series_leibniz(s in series(), t in series()) {
        let lhs = s.mul(&t).unwrap().derivative().unwrap();
        let rhs = s.derivative().unwrap().mul(&t).unwrap().add(&s.mul(&t.derivative().unwrap()).unwrap());
        prop_assert!(lhs.sub(&rhs).is_zero());
    }
}
