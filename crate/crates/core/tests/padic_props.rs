use num_rational::BigRational;
use padic_ode::padic::rational_valuation;
use padic_ode::{padic_exp, PadicContext, Valuation};
use proptest::prelude::*;

const PREC: u32 = 20;

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11])
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-10_000i64..10_000, 1i64..500).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    rational().prop_filter("nonzero", |q| q != &BigRational::from_integer(0.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn embedding_is_a_ring_homomorphism(p in prime(), a in rational(), b in rational()) {
        let ctx = PadicContext::new(p, PREC).unwrap();
        let (x, y) = (ctx.from_rational(&a), ctx.from_rational(&b));
        let m = PREC as i64 - 8;
        prop_assert!(x.add(&y).unwrap().agrees_mod(&ctx.from_rational(&(&a + &b)), m));
        prop_assert!(x.mul(&y).unwrap().agrees_mod(&ctx.from_rational(&(&a * &b)), m));
    }

    #[test]
    fn valuation_is_multiplicative(p in prime(), a in nonzero_rational(), b in nonzero_rational()) {
        let ctx = PadicContext::new(p, PREC).unwrap();
        let prod = ctx.from_rational(&a).mul(&ctx.from_rational(&b)).unwrap();
        let expected = rational_valuation(&a, p).unwrap() + rational_valuation(&b, p).unwrap();
        prop_assert_eq!(prod.valuation(), Valuation::Exact(expected));
    }

    #[test]
    fn ultrametric_inequality(p in prime(), a in nonzero_rational(), b in nonzero_rational()) {
        let ctx = PadicContext::new(p, PREC).unwrap();
        let s = ctx.from_rational(&a).add(&ctx.from_rational(&b)).unwrap();
        let floor = rational_valuation(&a, p).unwrap().min(rational_valuation(&b, p).unwrap());
        prop_assert!(s.valuation().at_least(floor));
    }

    #[test]
    fn division_inverts_multiplication(p in prime(), a in rational(), b in nonzero_rational()) {
        let ctx = PadicContext::new(p, PREC).unwrap();
        let (x, y) = (ctx.from_rational(&a), ctx.from_rational(&b));
        let back = x.mul(&y).unwrap().div(&y).unwrap();
        prop_assert!(back.agrees_mod(&x, PREC as i64 - 10));
    }

    #[test]
    fn exp_is_additive(p in prop::sample::select(vec![3u64, 5, 7]), a in -50i64..50, b in -50i64..50) {
        let ctx = PadicContext::new(p, PREC).unwrap();
        let pp = p as i64;
        let (x, y) = (ctx.from_integer(a * pp), ctx.from_integer(b * pp));
        let lhs = padic_exp(&x.add(&y).unwrap()).unwrap();
        let rhs = padic_exp(&x).unwrap().mul(&padic_exp(&y).unwrap()).unwrap();
        prop_assert!(lhs.agrees_mod(&rhs, PREC as i64 - 2));
    }
}
