use num_rational::BigRational;
use num_traits::Zero;
use padic_ode::algebra::rat;
use padic_ode::sums::{combined_sum_at_point, sum_at_point};
use proptest::prelude::*;

// denominators stay prime to p, so every value below is a p-adic integer
fn coeff() -> impl Strategy<Value = BigRational> {
    (-9i64..10, prop::sample::select(vec![1i64, 2])).prop_map(|(a, b)| rat(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn point_sums_are_linear(
        c1 in coeff(), c2 in coeff(),
        k1 in 1u32..5, k2 in 1u32..5,
        t in prop::sample::select(vec![1i64, -1, 2]),
        p in prop::sample::select(vec![3u64, 5, 7]),
    ) {
        prop_assume!(!c1.is_zero() && !c2.is_zero() && k1 != k2);
        let t = rat(t, 1);
        let m = 12;
        let s = combined_sum_at_point(&[(c1.clone(), k1), (c2.clone(), k2)], &t, p, m).unwrap();
        prop_assert!(s.matches);
        let (a, b) = (sum_at_point(k1, &t, p, m).unwrap(), sum_at_point(k2, &t, p, m).unwrap());
        let modulus = num_bigint::BigInt::from(p).pow(m);
        let embed = |c: &BigRational| s.lhs.context().from_rational(c).residue(m).unwrap();
        let combo = embed(&c1) * a.lhs.residue(m).unwrap() + embed(&c2) * b.lhs.residue(m).unwrap();
        let diff = (combo - s.lhs.residue(m).unwrap()) % &modulus;
        prop_assert!(diff.is_zero());
    }
}
