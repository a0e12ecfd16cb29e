//! Strategies and property bodies shared by the property suite and the
//! acceptance run.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::SizeRange;
use proptest::test_runner::TestCaseError;

use twolayer::generator::{
    count_classes_with_jobs, generate_classes_with_jobs, reflect_sentence, GrammarVariant,
};
use twolayer::network::{first_layer_parberry, Comparator, Layer, Network, Permutation};
use twolayer::oracle::{equivalence_witness, SearchSpace};
use twolayer::word::{net_of_sentence, sentence_of, Sentence};

/// A layer on `n` channels: a random partial matching with random
/// orientations.
pub fn layer(n: usize, standard: bool) -> impl Strategy<Value = Layer> {
    let order = Just((1..=n).collect::<Vec<_>>()).prop_shuffle();
    let pairs = 0..=n / 2;
    let flips = proptest::collection::vec(any::<bool>(), SizeRange::from(n / 2));
    (order, pairs, flips).prop_map(move |(order, k, flips)| {
        let cs = (0..k)
            .map(|i| {
                let (a, b) = (order[2 * i], order[2 * i + 1]);
                if standard || !flips[i] {
                    Comparator::between(a, b)
                } else {
                    Comparator {
                        lo: a.max(b),
                        hi: a.min(b),
                    }
                }
            })
            .collect();
        Layer::new(cs).expect("disjoint comparators")
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).expect("shuffled identity"))
}

/// A two-layer network on `F_n` with a random standard second layer.
pub fn two_layer(max_n: usize) -> impl Strategy<Value = Network> {
    (2..=max_n).prop_flat_map(|n| {
        layer(n, true)
            .prop_map(move |l| Network::two_layer(n, first_layer_parberry(n).unwrap(), l).unwrap())
    })
}

/// A generalized network of small depth.
pub fn generalized(max_n: usize) -> impl Strategy<Value = Network> {
    (2..=max_n, 1..=4usize).prop_flat_map(|(n, depth)| {
        proptest::collection::vec(layer(n, false), depth)
            .prop_map(move |layers| Network::new(n, layers).unwrap())
    })
}

pub fn variant() -> impl Strategy<Value = GrammarVariant> {
    prop_oneof![
        Just(GrammarVariant::Full),
        Just(GrammarVariant::Saturated),
        Just(GrammarVariant::SaturatedModuloReflection),
    ]
}

/// The sentence survives printing and parsing, and the network built from
/// it is equivalent to the original.
pub fn word_net_round_trip(net: &Network) -> Result<(), TestCaseError> {
    let n = net.n();
    let s = sentence_of(net).unwrap();
    prop_assert!(s.is_canonical(), "{s}");
    let reparsed: Sentence = s.to_string().parse().unwrap();
    prop_assert_eq!(&reparsed, &s);
    let rebuilt = net_of_sentence(&s, n).unwrap();
    prop_assert_eq!(&rebuilt.layers()[0], &net.layers()[0]);
    prop_assert_eq!(sentence_of(&rebuilt).unwrap(), s.clone());
    let witness = equivalence_witness(net, &rebuilt, SearchSpace::PairPreserving).unwrap();
    prop_assert!(witness.is_some(), "{s} not realised by {rebuilt}");
    Ok(())
}

/// Reflection twice is the identity, on networks and on sentences, and the
/// two agree.
pub fn reflection_involution(net: &Network) -> Result<(), TestCaseError> {
    let s = sentence_of(net).unwrap();
    let r = reflect_sentence(&s);
    prop_assert!(r.is_canonical());
    prop_assert_eq!(reflect_sentence(&r), s.clone());
    let reflected = net.reflect();
    prop_assert_eq!(sentence_of(&reflected).unwrap(), r);
    prop_assert_eq!(sentence_of(&reflected.reflect()).unwrap(), s);
    Ok(())
}

/// Untangling yields a standard network of the same shape whose outputs are
/// a relabeling of the original's, and leaves standard networks alone.
pub fn untangle_invariants(net: &Network) -> Result<(), TestCaseError> {
    let u = net.untangle();
    prop_assert!(u.is_standard());
    prop_assert_eq!(u.n(), net.n());
    prop_assert_eq!(u.depth(), net.depth());
    prop_assert_eq!(u.size(), net.size());
    let weights = |net: &Network| {
        let mut h = vec![0usize; net.n() + 1];
        for v in net.outputs().unwrap().iter() {
            h[v.count_ones() as usize] += 1;
        }
        h
    };
    prop_assert_eq!(weights(&u), weights(net));
    prop_assert_eq!(&u.untangle(), &u);
    Ok(())
}

/// Relabeling channels and untangling keeps the class.
pub fn permutation_keeps_class(net: &Network, pi: &Permutation) -> Result<(), TestCaseError> {
    let moved = net.permute(pi).unwrap().untangle();
    prop_assert_eq!(sentence_of(&moved).unwrap(), sentence_of(net).unwrap());
    Ok(())
}

pub fn jobs_determinism(n: usize, v: GrammarVariant) -> Result<(), TestCaseError> {
    let one = generate_classes_with_jobs(n, v, 1).unwrap();
    let four = generate_classes_with_jobs(n, v, 4).unwrap();
    prop_assert_eq!(one.as_slice(), four.as_slice());
    prop_assert_eq!(
        count_classes_with_jobs(n, v, 1).unwrap(),
        count_classes_with_jobs(n, v, 4).unwrap()
    );
    prop_assert_eq!(count_classes_with_jobs(n, v, 1).unwrap(), one.len() as u64);
    Ok(())
}
