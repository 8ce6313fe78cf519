use dilator_core::ordinal::{self, Ordinal};
use proptest::prelude::*;

prop_compose! {
    fn small()(k in 0..4u64) -> Ordinal { Ordinal::nat(k) }
}

fn ord() -> impl Strategy<Value = Ordinal> {
    small().prop_recursive(2, 16, 3, |inner| {
        prop::collection::vec((inner, 1..3u64), 1..3).prop_map(|terms| {
            terms.into_iter().fold(Ordinal::zero(), |acc, (e, c)| ordinal::add(&acc, &Ordinal::monomial(e, c)))
        })
    })
}

proptest! {
    #[test]
    fn addition_is_associative(a in ord(), b in ord(), c in ord()) {
        prop_assert_eq!(ordinal::add(&ordinal::add(&a, &b), &c), ordinal::add(&a, &ordinal::add(&b, &c)));
    }

    #[test]
    fn multiplication_distributes_on_the_left(a in ord(), b in ord(), c in ord()) {
        let lhs = ordinal::mul(&a, &ordinal::add(&b, &c));
        prop_assert_eq!(lhs, ordinal::add(&ordinal::mul(&a, &b), &ordinal::mul(&a, &c)));
    }

    #[test]
    fn multiplication_is_associative(a in ord(), b in ord(), c in ord()) {
        prop_assert_eq!(ordinal::mul(&ordinal::mul(&a, &b), &c), ordinal::mul(&a, &ordinal::mul(&b, &c)));
    }

    #[test]
    fn powers_turn_sums_into_products(a in ord(), b in ord()) {
        let s = ordinal::add(&a, &b);
        prop_assert_eq!(ordinal::omega_pow(&s), ordinal::mul(&ordinal::omega_pow(&a), &ordinal::omega_pow(&b)));
        prop_assert_eq!(ordinal::two_pow(&s), ordinal::mul(&ordinal::two_pow(&a), &ordinal::two_pow(&b)));
    }

    #[test]
    fn f_satisfies_its_recursion(a in ord()) {
        let f = ordinal::f_eval(&a);
        let step = ordinal::add(&ordinal::add(&f, &Ordinal::one()), &a);
        prop_assert_eq!(ordinal::f_eval(&a.succ()), step);
        if a.is_limit() {
            // continuity: f(λ) is the supremum of f(λ[n])
            let approx: Vec<Ordinal> = (0..30).map(|k| ordinal::f_eval(&ordinal::fund_seq(&a, k).unwrap())).collect();
            prop_assert!(approx.iter().all(|x| *x < f));
            prop_assert!(approx.windows(2).all(|w| w[0] <= w[1]));
            if f.is_limit() {
                let target = ordinal::fund_seq(&f, 3).unwrap();
                prop_assert!(approx.iter().any(|x| *x > target));
            }
        }
    }

    #[test]
    fn f_and_g_are_monotone(a in ord(), b in ord()) {
        if a < b {
            prop_assert!(ordinal::f_eval(&a) < ordinal::f_eval(&b));
            prop_assert!(ordinal::g_eval(&a) < ordinal::g_eval(&b));
        }
    }
}
