//! Saturation of two-layer networks: the output-set definition, the
//! forbidden-pattern characterisation, and the word-level test.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::network::{first_layer_parberry, ChannelRole, Comparator, Network};
use crate::word::{is_canonical, Sentence, WordKind};

/// The forbidden two-layer patterns of a non-saturated network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternId {
    /// An unused min channel and an unused max channel on different
    /// first-layer comparators.
    P1,
    /// A free channel unused at layer 2 next to another unused free channel.
    P2a,
    /// ... next to an unused min channel.
    P2b,
    /// ... next to an unused max channel.
    P2c,
    /// Two unused min channels whose first-layer partners are joined at layer 2.
    P3a,
    /// Two unused max channels whose first-layer partners are joined at layer 2.
    P3b,
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PatternId::P1 => "1",
            PatternId::P2a => "2a",
            PatternId::P2b => "2b",
            PatternId::P2c => "2c",
            PatternId::P3a => "3a",
            PatternId::P3b => "3b",
        };
        f.write_str(s)
    }
}

fn check_two_layer(net: &Network) -> Result<()> {
    if net.depth() != 2 {
        return Err(Error::Unsupported(format!(
            "saturation is defined here for two-layer networks, got depth {}",
            net.depth()
        )));
    }
    if !net.layers()[0].is_maximal(net.n()) {
        return Err(Error::Unsupported("first layer must be maximal".into()));
    }
    Ok(())
}

/// Channels not touched by layer 2, ascending.
fn unused_at_second_layer(net: &Network) -> Vec<usize> {
    let second = net.layers()[1].partner_table(net.n());
    (1..=net.n()).filter(|&c| second[c].is_none()).collect()
}

/// Comparators that may be added to layer 2 when probing saturation: both
/// orientations of every pair of layer-2-unused channels, except a pair
/// already joined at layer 1 (re-adding it only makes the network
/// redundant). A descending addition matters because equivalent networks
/// see each other's standard comparators as descending ones.
pub fn candidate_additions(net: &Network) -> Vec<Comparator> {
    let unused = unused_at_second_layer(net);
    let first = &net.layers()[0];
    let mut out = Vec::new();
    for (i, &a) in unused.iter().enumerate() {
        for &b in &unused[i + 1..] {
            let c = Comparator::between(a, b);
            if !first.contains(&c) {
                out.push(c);
                out.push(Comparator { lo: b, hi: a });
            }
        }
    }
    out
}

/// An addable comparator whose network has outputs contained in the
/// original's, if one exists.
pub fn shrinking_addition(net: &Network) -> Result<Option<Comparator>> {
    check_two_layer(net)?;
    let outputs = net.outputs()?;
    Ok(candidate_additions(net)
        .into_iter()
        .find(|&c| outputs.closed_under(c)))
}

/// Saturation from the definition: non-redundant, and no addition to layer 2
/// yields a subset of the outputs.
pub fn is_saturated_semantic(net: &Network) -> Result<bool> {
    if shrinking_addition(net)?.is_some() {
        return Ok(false);
    }
    Ok(!net.is_redundant()?)
}

/// Which forbidden patterns occur among the layer-2-unused channels.
pub fn forbidden_patterns(net: &Network) -> Result<BTreeSet<PatternId>> {
    check_two_layer(net)?;
    let n = net.n();
    let roles = net.channel_roles()?;
    let first = net.layers()[0].partner_table(n);
    let second = net.layers()[1].partner_table(n);
    let unused = unused_at_second_layer(net);
    let role = |c: usize| roles[c - 1];
    let mut found = BTreeSet::new();
    for (i, &a) in unused.iter().enumerate() {
        for &b in &unused[i + 1..] {
            match (role(a), role(b)) {
                (ChannelRole::Min, ChannelRole::Max) | (ChannelRole::Max, ChannelRole::Min) => {
                    if first[a] != Some(b) {
                        found.insert(PatternId::P1);
                    }
                }
                (ChannelRole::Free, other) | (other, ChannelRole::Free) => {
                    found.insert(match other {
                        ChannelRole::Free => PatternId::P2a,
                        ChannelRole::Min => PatternId::P2b,
                        ChannelRole::Max => PatternId::P2c,
                    });
                }
                (ChannelRole::Min, ChannelRole::Min) | (ChannelRole::Max, ChannelRole::Max) => {
                    let (pa, pb) = (first[a], first[b]);
                    if let (Some(pa), Some(pb)) = (pa, pb) {
                        if second[pa] == Some(pb) {
                            found.insert(if role(a) == ChannelRole::Min {
                                PatternId::P3a
                            } else {
                                PatternId::P3b
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(found)
}

/// Syntactic saturation for networks with first layer `F_n`: no layer-2
/// comparator repeats a layer-1 comparator, and no forbidden pattern occurs.
pub fn is_saturated_syntactic(net: &Network) -> Result<bool> {
    check_two_layer(net)?;
    let n = net.n();
    if n >= 2 && net.layers()[0] != first_layer_parberry(n)? {
        return Err(Error::Unsupported(
            "syntactic saturation check expects first layer F_n".into(),
        ));
    }
    let first = &net.layers()[0];
    if net.layers()[1]
        .comparators()
        .iter()
        .any(|c| first.contains(c))
    {
        return Ok(false);
    }
    Ok(forbidden_patterns(net)?.is_empty())
}

/// Saturation read directly off a canonical sentence.
///
/// 1. if it contains `0` or `12`, every other word is a Cycle;
/// 2. no Stick has length 4;
/// 3. every Stick of length at least 4 starts and ends with the same symbol;
/// 4. the unused-end symbols of all Heads and Sticks (other than `0` and
///    `12`) coincide;
/// 5. it does not contain the doubled pair `1`.
pub fn word_saturation_check(sentence: &Sentence) -> Result<bool> {
    if !sentence.is_canonical() {
        return Err(Error::InvalidArgument(format!(
            "sentence {sentence} is not canonical"
        )));
    }
    let words = sentence.words();
    if words.iter().any(|w| w.is_doubled_pair()) {
        return Ok(false);
    }
    let special = words
        .iter()
        .filter(|w| w.is_lone_free() || w.is_lone_pair())
        .count();
    let non_cycles = words.iter().filter(|w| w.kind() != WordKind::Cycle).count();
    if special > 0 && non_cycles > 1 {
        return Ok(false);
    }
    let mut polarity: Option<u8> = None;
    for w in words {
        if w.kind() == WordKind::Cycle || w.is_lone_free() || w.is_lone_pair() {
            continue;
        }
        let ends = w.unused_end_symbols();
        if w.kind() == WordKind::Stick && (w.len() == 4 || ends[0] != ends[1]) {
            return Ok(false);
        }
        for e in ends {
            match polarity {
                None => polarity = Some(e),
                Some(p) if p != e => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

/// The same check, rejecting words that are not canonical one by one.
pub fn word_saturation_check_words(sentence: &Sentence) -> Result<bool> {
    if let Some(w) = sentence.words().iter().find(|w| !is_canonical(w)) {
        return Err(Error::InvalidArgument(format!("word {w} is not canonical")));
    }
    word_saturation_check(sentence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Layer;
    use crate::word::{net_of_sentence, sentence_of};

    fn f4_net(second: &[(usize, usize)]) -> Network {
        Network::two_layer(
            4,
            first_layer_parberry(4).unwrap(),
            Layer::from_pairs(second).unwrap(),
        )
        .unwrap()
    }

    fn sat_word(text: &str) -> bool {
        word_saturation_check(&text.parse().unwrap()).unwrap()
    }

    #[test]
    fn semantic_examples() {
        assert!(is_saturated_semantic(&f4_net(&[(1, 3), (2, 4)])).unwrap());
        let g = f4_net(&[(2, 4)]);
        assert!(!is_saturated_semantic(&g).unwrap());
        assert_eq!(
            shrinking_addition(&g).unwrap(),
            Some(Comparator::between(1, 3))
        );
        let h = f4_net(&[]);
        assert!(!is_saturated_semantic(&h).unwrap());
        // e: only a descending comparator shrinks its outputs
        let e = f4_net(&[(1, 4)]);
        assert_eq!(
            shrinking_addition(&e).unwrap(),
            Some(Comparator { lo: 3, hi: 2 })
        );
    }

    #[test]
    fn pattern_examples() {
        let g = f4_net(&[(2, 4)]);
        assert_eq!(
            forbidden_patterns(&g).unwrap(),
            BTreeSet::from([PatternId::P3a])
        );
        let d = f4_net(&[(1, 3)]);
        assert_eq!(
            forbidden_patterns(&d).unwrap(),
            BTreeSet::from([PatternId::P3b])
        );
        let f = f4_net(&[(2, 3)]);
        assert_eq!(
            forbidden_patterns(&f).unwrap(),
            BTreeSet::from([PatternId::P1])
        );
        let five = Network::two_layer(
            5,
            first_layer_parberry(5).unwrap(),
            Layer::from_pairs(&[(1, 3)]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            forbidden_patterns(&five).unwrap(),
            BTreeSet::from([PatternId::P2c, PatternId::P3b])
        );
    }

    #[test]
    fn syntactic_matches_semantic_on_four_and_five_channels() {
        for (n, expected) in [(4usize, 2usize), (5, 10)] {
            let mut count = 0;
            crate::oracle::for_each_second_layer(n, |l| {
                let net =
                    Network::two_layer(n, first_layer_parberry(n).unwrap(), l.clone()).unwrap();
                let sem = is_saturated_semantic(&net).unwrap();
                assert_eq!(sem, is_saturated_syntactic(&net).unwrap(), "{l}");
                count += usize::from(sem);
            })
            .unwrap();
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn word_level_examples() {
        assert!(sat_word("12;122;122"));
        assert!(!sat_word("1221"));
        assert!(sat_word("0;121"));
        assert!(!sat_word("0;12"));
        assert!(!sat_word("1;122"));
        assert!(!sat_word("121212"));
        assert!(sat_word("121221;12122121"));
        assert!(!sat_word("121221;211212"));
        assert!(sat_word("01221;121221"));
        assert!(!sat_word("01212;121221"));
        assert!(sat_word("01221;12122"));
    }

    #[test]
    fn word_level_agrees_with_semantics_on_examples() {
        for (text, n) in [("0;121", 5), ("0;12", 3), ("12;122;122", 10), ("1221", 4)] {
            let s: Sentence = text.parse().unwrap();
            let net = net_of_sentence(&s, n).unwrap();
            assert_eq!(sentence_of(&net).unwrap(), s);
            assert_eq!(
                is_saturated_semantic(&net).unwrap(),
                word_saturation_check(&s).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn non_canonical_sentence_is_rejected() {
        let s: Sentence = "2121".parse().unwrap();
        assert!(matches!(
            word_saturation_check(&s),
            Err(Error::InvalidArgument(_))
        ));
        assert!(word_saturation_check_words(&s).is_err());
    }
}
