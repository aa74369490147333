use proptest::prelude::*;
use uqminus::scalars::{symmetrize_residual, LaurentInt, RatFunc};

fn laurent() -> impl Strategy<Value = LaurentInt> {
    (-4i64..4, prop::collection::vec(-5i64..6, 0..5)).prop_map(|(low, cs)| {
        LaurentInt::from_pairs(&cs.iter().enumerate().map(|(k, &c)| (low + k as i64, c)).collect::<Vec<_>>())
    })
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentInt> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (laurent(), nonzero_laurent()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
    }

    #[test]
    fn ratfunc_ring_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn bar_is_involutive(a in laurent(), r in ratfunc()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!(r.bar().bar(), r.clone());
    }

    #[test]
    fn bar_is_a_ring_map(a in ratfunc(), b in ratfunc()) {
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn symmetrize_residual_properties(p in laurent()) {
        let s = symmetrize_residual(&p);
        prop_assert!(s.is_bar_invariant());
        prop_assert!((&p - &s).in_q_zq());
    }

    #[test]
    fn normalization_is_unique(n in laurent(), d in nonzero_laurent(), c in nonzero_laurent()) {
        let x = RatFunc::new(n.clone(), d.clone()).unwrap();
        let y = RatFunc::new(&c * &n, &c * &d).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(x.den().low_exp(), Some(0));
        prop_assert!(x.den().leading_coeff().unwrap() > &0.into());
    }

    #[test]
    fn series_reconstructs_laurent(p in laurent()) {
        let r = RatFunc::from(p.clone());
        let hi = p.high_exp().unwrap_or(0);
        prop_assert_eq!(r.integral_series_upto(hi).unwrap(), p);
    }
}
