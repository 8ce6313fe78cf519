use dilator_cli::expr::parse_ordinal;
use dilator_core::ordinal::{self, Ordinal};
use proptest::prelude::*;

fn ordinal_strategy() -> impl Strategy<Value = Ordinal> {
    let leaf = (0..5u64).prop_map(Ordinal::nat);
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop::collection::vec((inner, 1..4u64), 1..4).prop_map(|terms| {
            terms.into_iter().fold(Ordinal::zero(), |acc, (e, c)| ordinal::add(&acc, &Ordinal::monomial(e, c)))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(a in ordinal_strategy()) {
        prop_assert_eq!(parse_ordinal(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn whitespace_is_ignored(a in ordinal_strategy()) {
        let spaced: String = a.to_string().chars().flat_map(|c| [c, ' ']).collect();
        prop_assert_eq!(parse_ordinal(&spaced).unwrap(), a);
    }
}
