//! Agreement checks between the fast machinery and the brute-force oracles.
//! Each check returns the number of cases examined and a description of
//! every disagreement.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::counting::g_count;
use crate::error::Result;
use crate::generator::{count_classes, generate_classes, labeled_count, GrammarVariant};
use crate::network::{first_layer_parberry, Network};
use crate::oracle::{
    brute_force_table, equivalence_witness, for_each_second_layer, graphs_isomorphic, to_graph,
    SearchSpace,
};
use crate::saturation::{is_saturated_semantic, is_saturated_syntactic, word_saturation_check};
use crate::word::{sentence_of, Sentence};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Agreement {
    pub cases: u64,
    pub mismatches: Vec<String>,
}

impl Agreement {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn fail(&mut self, msg: String) {
        // keep reports readable when something is badly wrong
        if self.mismatches.len() < 20 {
            self.mismatches.push(msg);
        }
    }
}

fn all_networks(n: usize) -> Result<Vec<Network>> {
    let first = first_layer_parberry(n)?;
    let mut nets = Vec::new();
    for_each_second_layer(n, |l| {
        nets.push(Network::two_layer(n, first.clone(), l.clone()).expect("valid layers"));
    })?;
    Ok(nets)
}

/// Over all ordered pairs of two-layer networks on `n` channels: equal
/// sentences, permutation equivalence and graph isomorphism coincide. With
/// `full_search` the permutation search also runs over all of `S_n`.
pub fn equivalence_agreement(n: usize, full_search: bool) -> Result<Agreement> {
    let nets = all_networks(n)?;
    let sentences = nets.iter().map(sentence_of).collect::<Result<Vec<_>>>()?;
    let graphs: Vec<_> = nets.iter().map(to_graph).collect();
    let mut out = Agreement::default();
    for (i, a) in nets.iter().enumerate() {
        for (j, b) in nets.iter().enumerate() {
            out.cases += 1;
            let same_word = sentences[i] == sentences[j];
            let equivalent = equivalence_witness(a, b, SearchSpace::PairPreserving)?.is_some();
            let iso = graphs_isomorphic(&graphs[i], &graphs[j]);
            let full = if full_search {
                equivalence_witness(a, b, SearchSpace::Full)?.is_some()
            } else {
                equivalent
            };
            if same_word != equivalent || equivalent != iso || equivalent != full {
                out.fail(format!(
                    "n={n} layers {} / {}: sentence {same_word}, permutation {equivalent}, graph {iso}, full search {full}",
                    a.layers()[1],
                    b.layers()[1]
                ));
            }
        }
    }
    Ok(out)
}

/// Over all second layers on `n` channels: the definition, the forbidden
/// patterns and the word-level test agree.
pub fn saturation_agreement(n: usize) -> Result<Agreement> {
    let first = first_layer_parberry(n)?;
    let mut out = Agreement::default();
    let mut failure = None;
    for_each_second_layer(n, |l| {
        if failure.is_some() {
            return;
        }
        let net = Network::two_layer(n, first.clone(), l.clone()).expect("valid layers");
        let verdicts = (|| {
            Ok::<_, crate::Error>((
                is_saturated_semantic(&net)?,
                is_saturated_syntactic(&net)?,
                word_saturation_check(&sentence_of(&net)?)?,
            ))
        })();
        match verdicts {
            Ok((sem, syn, word)) => {
                out.cases += 1;
                if sem != syn || syn != word {
                    out.fail(format!(
                        "n={n} layer {l}: semantic {sem}, syntactic {syn}, word {word}"
                    ));
                }
            }
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(out)
}

/// The generated classes are exactly the sentences of all labeled networks,
/// and the saturated ones exactly those of semantically saturated networks.
pub fn generator_agreement(n: usize) -> Result<Agreement> {
    let mut full = BTreeSet::new();
    let mut saturated = BTreeSet::new();
    for net in all_networks(n)? {
        let s = sentence_of(&net)?;
        if is_saturated_semantic(&net)? {
            saturated.insert(s.clone());
        }
        full.insert(s);
    }
    let mut out = Agreement::default();
    for (variant, expected) in [
        (GrammarVariant::Full, full),
        (GrammarVariant::Saturated, saturated),
    ] {
        let got: BTreeSet<Sentence> = generate_classes(n, variant)?
            .into_vec()
            .into_iter()
            .collect();
        out.cases += 1;
        if got != expected {
            let missing: Vec<String> = expected.difference(&got).map(|s| s.to_string()).collect();
            let extra: Vec<String> = got.difference(&expected).map(|s| s.to_string()).collect();
            out.fail(format!(
                "n={n} {variant}: missing {missing:?}, unexpected {extra:?}"
            ));
        }
    }
    Ok(out)
}

/// The brute-force row for `n` against recurrence, orbit sums and generator
/// counts.
pub fn brute_force_agreement(n: usize) -> Result<Agreement> {
    let row = brute_force_table(n)?;
    let mut out = Agreement::default();
    let mut compare = |name: &str, brute: BigUint, fast: BigUint| {
        out.cases += 1;
        if brute != fast {
            out.fail(format!("n={n} {name}: brute force {brute}, fast {fast}"));
        }
    };
    compare("G", row.g.into(), g_count(n));
    compare(
        "S",
        row.s.into(),
        labeled_count(n, GrammarVariant::Saturated, 1)?,
    );
    for (name, brute, variant) in [
        ("RG", row.rg, GrammarVariant::Full),
        ("RS", row.rs, GrammarVariant::Saturated),
        ("R", row.r, GrammarVariant::SaturatedModuloReflection),
    ] {
        if let Some(b) = brute {
            compare(name, b.into(), count_classes(n, variant)?.into());
        }
    }
    Ok(out)
}
