mod common;

use proptest::prelude::*;

use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn word_and_network_round_trip(net in two_layer(12)) {
        word_net_round_trip(&net)?;
    }

    #[test]
    fn reflection_is_an_involution(net in two_layer(14)) {
        reflection_involution(&net)?;
    }

    #[test]
    fn untangling_preserves_shape_and_sorting(net in generalized(9)) {
        untangle_invariants(&net)?;
    }

    #[test]
    fn relabeling_keeps_the_class(
        (net, pi) in two_layer(14).prop_flat_map(|net| {
            let n = net.n();
            (Just(net), permutation(n))
        })
    ) {
        permutation_keeps_class(&net, &pi)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parallel_generation_is_deterministic(n in 3usize..=22, v in variant()) {
        jobs_determinism(n, v)?;
    }
}
