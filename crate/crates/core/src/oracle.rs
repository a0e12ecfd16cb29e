//! Brute-force ground truth used to validate the word-based machinery.
//!
//! Nothing here looks at words or sentences except [`check_conjecture`],
//! which needs one representative per saturated class.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::generator::{generate_classes, GrammarVariant};
use crate::network::{first_layer_parberry, Comparator, Layer, Network, OutputSet, Permutation};
use crate::saturation::is_saturated_semantic;
use crate::word::{net_of_sentence, Sentence};

/// Largest `n` for exhaustive second-layer enumeration.
pub const SECOND_LAYERS_MAX_N: usize = 14;
/// Largest `n` for equivalence search over all of `S_n`.
pub const FULL_SEARCH_MAX_N: usize = 8;
/// Largest `n` for equivalence search over pair-preserving permutations.
pub const PAIR_SEARCH_MAX_N: usize = 12;
/// Largest `n` for subsumption search.
pub const SUBSUMPTION_MAX_N: usize = 10;
/// Largest `n` for labeled counts in [`brute_force_table`].
pub const LABELED_MAX_N: usize = 13;
/// Largest `n` for class counts by pairwise equivalence in [`brute_force_table`].
pub const CLASSING_MAX_N: usize = 8;

fn limit(what: &'static str, n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::ResourceLimit { what, n, bound });
    }
    Ok(())
}

/// Calls `f` on every matching of channels `1..=n`, the empty one included.
pub fn for_each_second_layer(n: usize, mut f: impl FnMut(&Layer)) -> Result<()> {
    limit("second-layer enumeration", n, SECOND_LAYERS_MAX_N)?;
    let mut used = vec![false; n + 1];
    let mut current = Vec::with_capacity(n / 2);
    matchings(1, n, &mut used, &mut current, &mut f);
    Ok(())
}

fn matchings(
    from: usize,
    n: usize,
    used: &mut [bool],
    current: &mut Vec<Comparator>,
    f: &mut impl FnMut(&Layer),
) {
    let Some(a) = (from..=n).find(|&c| !used[c]) else {
        let layer = Layer::new(current.clone()).expect("matching is a valid layer");
        f(&layer);
        return;
    };
    used[a] = true;
    matchings(a + 1, n, used, current, f);
    for b in a + 1..=n {
        if used[b] {
            continue;
        }
        used[b] = true;
        current.push(Comparator::between(a, b));
        matchings(a + 1, n, used, current, f);
        current.pop();
        used[b] = false;
    }
    used[a] = false;
}

/// All matchings on `n` channels.
pub fn enumerate_second_layers(n: usize) -> Result<Vec<Layer>> {
    let mut out = Vec::new();
    for_each_second_layer(n, |l| out.push(l.clone()))?;
    Ok(out)
}

/// Which permutations [`equivalence_witness`] tries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchSpace {
    /// Permutations carrying the first-layer pairs of one network onto those
    /// of the other, in either orientation.
    PairPreserving,
    /// Every permutation of the channels.
    Full,
}

/// A permutation `pi` with `untangle(pi(c2)) == c1`, if one exists.
pub fn equivalence_witness(
    c1: &Network,
    c2: &Network,
    space: SearchSpace,
) -> Result<Option<Permutation>> {
    let n = c1.n();
    if c2.n() != n {
        return Err(Error::InvalidArgument(format!(
            "channel counts differ: {} and {}",
            n,
            c2.n()
        )));
    }
    if c1.depth() != c2.depth()
        || c1.size() != c2.size()
        || c1
            .layers()
            .iter()
            .zip(c2.layers())
            .any(|(a, b)| a.len() != b.len())
    {
        return Ok(None);
    }
    let mut found = None;
    let mut test = |images: &[usize]| {
        let pi = Permutation::new(images.to_vec()).expect("search yields permutations");
        let image = c2.permute(&pi).expect("same channel count").untangle();
        if image == *c1 {
            found = Some(pi);
            true
        } else {
            false
        }
    };
    match space {
        SearchSpace::Full => {
            limit("full permutation search", n, FULL_SEARCH_MAX_N)?;
            let mut images: Vec<usize> = (1..=n).collect();
            heap_permutations(&mut images, &mut test);
        }
        SearchSpace::PairPreserving => {
            limit("pair-preserving permutation search", n, PAIR_SEARCH_MAX_N)?;
            let empty = Layer::empty();
            let l1 = c1.layers().first().unwrap_or(&empty);
            let l2 = c2.layers().first().unwrap_or(&empty);
            pair_preserving_permutations(n, l1, l2, &mut test);
        }
    }
    Ok(found)
}

/// Equivalence by exhaustive search over pair-preserving permutations.
pub fn equivalent_brute(c1: &Network, c2: &Network) -> Result<bool> {
    Ok(equivalence_witness(c1, c2, SearchSpace::PairPreserving)?.is_some())
}

/// Visits permutations (as image vectors) until `f` returns true.
fn heap_permutations(a: &mut [usize], f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    let k = a.len();
    let mut c = vec![0usize; k];
    if f(a) {
        return true;
    }
    let mut i = 1;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            if f(a) {
                return true;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Permutations mapping the pairs of `from` onto the pairs of `to` and the
/// remaining channels onto the remaining channels.
fn pair_preserving_permutations(
    n: usize,
    to: &Layer,
    from: &Layer,
    f: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if to.len() != from.len() {
        return false;
    }
    let free =
        |l: &Layer| -> Vec<usize> { (1..=n).filter(|&c| l.comparator_at(c).is_none()).collect() };
    let (free_to, free_from) = (free(to), free(from));
    let to_pairs = to.comparators();
    let from_pairs = from.comparators();
    let k = to_pairs.len();
    let mut order: Vec<usize> = (0..k).collect();
    let mut free_order: Vec<usize> = (0..free_to.len()).collect();
    let mut images = vec![0usize; n];
    heap_permutations(&mut order, &mut |order| {
        for orient in 0u64..(1u64 << k) {
            for (i, c) in from_pairs.iter().enumerate() {
                let t = to_pairs[order[i]];
                let (x, y) = if orient >> i & 1 == 0 {
                    (t.lo, t.hi)
                } else {
                    (t.hi, t.lo)
                };
                images[c.lo - 1] = x;
                images[c.hi - 1] = y;
            }
            let done = heap_permutations(&mut free_order, &mut |fo| {
                for (i, &c) in free_from.iter().enumerate() {
                    images[c - 1] = free_to[fo[i]];
                }
                f(&images)
            });
            if done {
                return true;
            }
        }
        false
    })
}

/// Label of a graph edge: which output of the source comparator it carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Min,
    Max,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeLabel::Min => "min",
            EdgeLabel::Max => "max",
        })
    }
}

/// The comparator graph of a network: one vertex per comparator, an edge
/// `(u, label, v)` when output `label` of `u` is the next input of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkGraph {
    vertices: Vec<Comparator>,
    edges: BTreeSet<(usize, EdgeLabel, usize)>,
}

impl NetworkGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// The comparator of vertex `v`; vertices are numbered layer by layer.
    pub fn comparator(&self, v: usize) -> Comparator {
        self.vertices[v]
    }

    pub fn edges(&self) -> &BTreeSet<(usize, EdgeLabel, usize)> {
        &self.edges
    }

    fn signature(&self, v: usize) -> [u8; 4] {
        let mut s = [0u8; 4];
        for &(a, l, b) in &self.edges {
            if b == v {
                s[l as usize] += 1;
            }
            if a == v {
                s[2 + l as usize] += 1;
            }
        }
        s
    }

    fn labels_between(&self, u: usize, v: usize) -> [bool; 2] {
        [
            self.edges.contains(&(u, EdgeLabel::Min, v)),
            self.edges.contains(&(u, EdgeLabel::Max, v)),
        ]
    }

    fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, _, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Whether `map` (vertex of `self` to vertex of `other`) is a label- and
    /// direction-preserving isomorphism.
    pub fn is_isomorphism(&self, other: &NetworkGraph, map: &[usize]) -> bool {
        let k = self.vertex_count();
        if other.vertex_count() != k || map.len() != k || self.edges.len() != other.edges.len() {
            return false;
        }
        let mut seen = vec![false; k];
        for &m in map {
            if m >= k || seen[m] {
                return false;
            }
            seen[m] = true;
        }
        self.edges
            .iter()
            .all(|&(a, l, b)| other.edges.contains(&(map[a], l, map[b])))
    }
}

/// Builds the comparator graph. Channels that no comparator touches leave no
/// trace.
pub fn to_graph(net: &Network) -> NetworkGraph {
    let mut last: Vec<Option<(usize, EdgeLabel)>> = vec![None; net.n() + 1];
    let mut vertices = Vec::with_capacity(net.size());
    let mut edges = BTreeSet::new();
    for layer in net.layers() {
        for &c in layer.comparators() {
            let v = vertices.len();
            vertices.push(c);
            for ch in [c.lo, c.hi] {
                if let Some((u, l)) = last[ch] {
                    edges.insert((u, l, v));
                }
            }
            last[c.lo] = Some((v, EdgeLabel::Min));
            last[c.hi] = Some((v, EdgeLabel::Max));
        }
    }
    NetworkGraph { vertices, edges }
}

/// A vertex bijection that is an isomorphism, if one exists.
pub fn graph_isomorphism(g1: &NetworkGraph, g2: &NetworkGraph) -> Option<Vec<usize>> {
    let k = g1.vertex_count();
    if g2.vertex_count() != k || g1.edges.len() != g2.edges.len() {
        return None;
    }
    let sig1: Vec<[u8; 4]> = (0..k).map(|v| g1.signature(v)).collect();
    let sig2: Vec<[u8; 4]> = (0..k).map(|v| g2.signature(v)).collect();
    let mut s1 = sig1.clone();
    let mut s2 = sig2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    // visit vertices so that each one after the first of its component has
    // an already mapped neighbour
    let mut order = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    for start in 0..k {
        if placed[start] {
            continue;
        }
        placed[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for w in g1.neighbours(v) {
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; k];
    if extend_isomorphism(g1, g2, &sig1, &sig2, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_isomorphism(
    g1: &NetworkGraph,
    g2: &NetworkGraph,
    sig1: &[[u8; 4]],
    sig2: &[[u8; 4]],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..map.len() {
        if used[w] || sig1[v] != sig2[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            g1.labels_between(u, v) == g2.labels_between(map[u], w)
                && g1.labels_between(v, u) == g2.labels_between(w, map[u])
        }) && g1.labels_between(v, v) == g2.labels_between(w, w);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend_isomorphism(g1, g2, sig1, sig2, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

pub fn graphs_isomorphic(g1: &NetworkGraph, g2: &NetworkGraph) -> bool {
    graph_isomorphism(g1, g2).is_some()
}

fn bit(n: usize, ch: usize) -> u64 {
    1u64 << (n - ch)
}

/// A permutation `pi` with `b ⊆ pi(a)`, if one exists.
///
/// Channels `1, 2, ...` of `a` are assigned images one at a time; after each
/// step every vector of `b`, read at the assigned images, must agree with
/// some vector of `a` read at the assigned channels.
pub fn subsumption_witness(a: &OutputSet, b: &OutputSet) -> Result<Option<Permutation>> {
    let n = a.n();
    if b.n() != n {
        return Err(Error::InvalidArgument(
            "output sets of different lengths".into(),
        ));
    }
    limit("subsumption search", n, SUBSUMPTION_MAX_N)?;
    if b.len() > a.len() {
        return Ok(None);
    }
    let mut wa = vec![0usize; n + 1];
    let mut wb = vec![0usize; n + 1];
    for x in a.iter_bits() {
        wa[x.count_ones() as usize] += 1;
    }
    for y in b.iter_bits() {
        wb[y.count_ones() as usize] += 1;
    }
    if wb.iter().zip(&wa).any(|(x, y)| x > y) {
        return Ok(None);
    }
    // prefixes[k] = set of k-bit prefixes (channels 1..=k) of vectors in a
    let prefixes: Vec<Vec<bool>> = (0..=n)
        .map(|k| {
            let mut set = vec![false; 1 << k];
            for x in a.iter_bits() {
                set[(x >> (n - k)) as usize] = true;
            }
            set
        })
        .collect();
    let bs: Vec<u64> = b.iter_bits().collect();
    let mut keys = vec![0u64; bs.len()];
    let mut images = vec![0usize; n];
    let mut used = vec![false; n + 1];
    let found = extend_subsumption(n, 0, &prefixes, &bs, &mut keys, &mut images, &mut used);
    Ok(found.then(|| Permutation::new(images).expect("search yields permutations")))
}

fn extend_subsumption(
    n: usize,
    k: usize,
    prefixes: &[Vec<bool>],
    bs: &[u64],
    keys: &mut Vec<u64>,
    images: &mut [usize],
    used: &mut [bool],
) -> bool {
    if k == n {
        return true;
    }
    for target in 1..=n {
        if used[target] {
            continue;
        }
        let mask = bit(n, target);
        let next: Vec<u64> = keys
            .iter()
            .zip(bs)
            .map(|(&key, &y)| key << 1 | u64::from(y & mask != 0))
            .collect();
        if next.iter().all(|&p| prefixes[k + 1][p as usize]) {
            let saved = std::mem::replace(keys, next);
            images[k] = target;
            used[target] = true;
            if extend_subsumption(n, k + 1, prefixes, bs, keys, images, used) {
                return true;
            }
            used[target] = false;
            *keys = saved;
        }
    }
    false
}

/// Whether `F_n; la` subsumes `F_n; lb`: a witness `pi` with
/// `outputs(F_n; lb) ⊆ pi(outputs(F_n; la))`.
pub fn subsumes(la: &Layer, lb: &Layer, n: usize) -> Result<Option<Permutation>> {
    limit("subsumption search", n, SUBSUMPTION_MAX_N)?;
    let first = first_layer_parberry(n)?;
    let a = Network::two_layer(n, first.clone(), la.clone())?.outputs()?;
    let b = Network::two_layer(n, first, lb.clone())?.outputs()?;
    subsumption_witness(&a, &b)
}

/// A pair of distinct saturated classes where the first subsumes the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub subsuming: Sentence,
    pub subsumed: Sentence,
    pub witness: Permutation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: usize,
    pub classes: usize,
    pub pairs_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks that no saturated class subsumes a different saturated class.
pub fn check_conjecture(n: usize) -> Result<ConjectureReport> {
    limit("conjecture check", n, SUBSUMPTION_MAX_N)?;
    let classes = generate_classes(n, GrammarVariant::Saturated)?.into_vec();
    let outputs = classes
        .iter()
        .map(|s| net_of_sentence(s, n)?.outputs())
        .collect::<Result<Vec<_>>>()?;
    let mut report = ConjectureReport {
        n,
        classes: classes.len(),
        pairs_checked: 0,
        counterexamples: Vec::new(),
    };
    for (i, a) in outputs.iter().enumerate() {
        for (j, b) in outputs.iter().enumerate() {
            if i == j {
                continue;
            }
            report.pairs_checked += 1;
            if let Some(witness) = subsumption_witness(a, b)? {
                report.counterexamples.push(Counterexample {
                    subsuming: classes[i].clone(),
                    subsumed: classes[j].clone(),
                    witness,
                });
            }
        }
    }
    Ok(report)
}

/// Counts obtained without words: labeled enumeration with semantic
/// saturation, and (for small `n`) classing by permutation search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceRow {
    pub n: usize,
    pub g: u64,
    pub s: u64,
    pub rg: Option<u64>,
    pub rs: Option<u64>,
    pub r: Option<u64>,
}

/// Cheap equivalence invariant used to bucket networks before searching.
fn invariant(net: &Network, outputs: &OutputSet) -> (Vec<usize>, Vec<usize>) {
    let mut hist = vec![0usize; net.n() + 1];
    for x in outputs.iter_bits() {
        hist[x.count_ones() as usize] += 1;
    }
    (net.layers().iter().map(Layer::len).collect(), hist)
}

/// Representatives of the equivalence classes of `nets`, one per class, in
/// order of first appearance.
pub fn class_representatives(nets: &[Network]) -> Result<Vec<Network>> {
    let mut buckets: HashMap<(Vec<usize>, Vec<usize>), Vec<usize>> = HashMap::new();
    let mut reps: Vec<Network> = Vec::new();
    for net in nets {
        let key = invariant(net, &net.outputs()?);
        let bucket = buckets.entry(key).or_default();
        let mut known = false;
        for &r in bucket.iter() {
            if equivalent_brute(&reps[r], net)? {
                known = true;
                break;
            }
        }
        if !known {
            bucket.push(reps.len());
            reps.push(net.clone());
        }
    }
    Ok(reps)
}

/// Number of classes left after identifying each class with the class of
/// its reflection.
pub fn count_modulo_reflection(reps: &[Network]) -> Result<u64> {
    let keys = reps
        .iter()
        .map(|r| Ok(invariant(r, &r.outputs()?)))
        .collect::<Result<Vec<_>>>()?;
    let mut parent: Vec<usize> = (0..reps.len()).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, rep) in reps.iter().enumerate() {
        let refl = rep.reflect();
        let key = invariant(&refl, &refl.outputs()?);
        for (j, other) in reps.iter().enumerate() {
            if keys[j] == key && equivalent_brute(other, &refl)? {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a] = b;
                break;
            }
        }
    }
    Ok((0..reps.len())
        .filter(|&i| root(&mut parent, i) == i)
        .count() as u64)
}

/// One row of the count table computed by brute force.
pub fn brute_force_table(n: usize) -> Result<BruteForceRow> {
    limit("labeled enumeration", n, LABELED_MAX_N)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let first = first_layer_parberry(n)?;
    let classing = n <= CLASSING_MAX_N;
    let (mut g, mut s) = (0u64, 0u64);
    let mut all = Vec::new();
    let mut saturated = Vec::new();
    let mut failure = None;
    for_each_second_layer(n, |l| {
        if failure.is_some() {
            return;
        }
        g += 1;
        let net = Network::two_layer(n, first.clone(), l.clone()).expect("valid layers");
        match is_saturated_semantic(&net) {
            Ok(true) => {
                s += 1;
                if classing {
                    saturated.push(net.clone());
                }
            }
            Ok(false) => {}
            Err(e) => failure = Some(e),
        }
        if classing {
            all.push(net);
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let (rg, rs, r) = if classing {
        let rs_reps = class_representatives(&saturated)?;
        (
            Some(class_representatives(&all)?.len() as u64),
            Some(rs_reps.len() as u64),
            Some(count_modulo_reflection(&rs_reps)?),
        )
    } else {
        (None, None, None)
    };
    Ok(BruteForceRow { n, g, s, rg, rs, r })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4(second: &[(usize, usize)]) -> Network {
        Network::two_layer(
            4,
            first_layer_parberry(4).unwrap(),
            Layer::from_pairs(second).unwrap(),
        )
        .unwrap()
    }

    fn layered(n: usize, layers: &[&[(usize, usize)]]) -> Network {
        Network::new(
            n,
            layers
                .iter()
                .map(|l| Layer::from_pairs(l).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn matching_counts() {
        let counts: Vec<usize> = (0..=8)
            .map(|n| enumerate_second_layers(n).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 1, 2, 4, 10, 26, 76, 232, 764]);
        assert!(matches!(
            for_each_second_layer(15, |_| {}),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn case_study_equivalences() {
        let (b, c) = (f4(&[(1, 2)]), f4(&[(3, 4)]));
        let pi = equivalence_witness(&b, &c, SearchSpace::Full)
            .unwrap()
            .unwrap();
        assert_eq!(c.permute(&pi).unwrap().untangle(), b);
        assert!(equivalent_brute(&f4(&[(1, 4)]), &f4(&[(2, 3)])).unwrap());
        let (i, j) = (f4(&[(1, 3), (2, 4)]), f4(&[(1, 4), (2, 3)]));
        assert!(!equivalent_brute(&i, &j).unwrap());
        assert!(!equivalent_brute(&j, &i).unwrap());
        assert!(equivalence_witness(&i, &j, SearchSpace::Full)
            .unwrap()
            .is_none());
    }

    #[test]
    fn equivalence_across_first_layers() {
        let a = layered(
            4,
            &[&[(1, 2), (3, 4)], &[(1, 4)], &[(1, 3), (2, 4)], &[(2, 3)]],
        );
        let b = layered(
            4,
            &[&[(1, 2), (3, 4)], &[(2, 3)], &[(1, 2), (3, 4)], &[(2, 3)]],
        );
        assert!(equivalent_brute(&b, &a).unwrap());
        let refl = layered(5, &[&[(1, 2), (3, 4)], &[(1, 3)]]).reflect();
        assert!(equivalent_brute(&refl, &layered(5, &[&[(2, 3), (4, 5)], &[(3, 5)]])).unwrap());
    }

    #[test]
    fn graph_of_example_network() {
        let a = layered(
            4,
            &[&[(1, 2), (3, 4)], &[(1, 4)], &[(1, 3), (2, 4)], &[(2, 3)]],
        );
        let g = to_graph(&a);
        // a=(1,2) b=(3,4) c=(1,4) d=(1,3) e=(2,4) f=(2,3)
        use EdgeLabel::{Max, Min};
        let expected = BTreeSet::from([
            (0, Min, 2),
            (0, Max, 4),
            (1, Min, 3),
            (1, Max, 2),
            (2, Min, 3),
            (2, Max, 4),
            (3, Max, 5),
            (4, Min, 5),
        ]);
        assert_eq!(g.edges(), &expected);
        let b = layered(
            4,
            &[&[(1, 2), (3, 4)], &[(2, 3)], &[(1, 2), (3, 4)], &[(2, 3)]],
        );
        let h = to_graph(&b);
        // u=(1,2) v=(3,4) w=(2,3) x=(1,2) y=(3,4) z=(2,3)
        assert!(g.is_isomorphism(&h, &[1, 0, 2, 3, 4, 5]));
        assert!(graphs_isomorphic(&g, &h));
    }

    #[test]
    fn trivial_graphs() {
        let single = layered(2, &[&[(1, 2)]]);
        let g = to_graph(&single);
        assert_eq!((g.vertex_count(), g.edges().len()), (1, 0));
        let f = to_graph(&Network::new(4, vec![first_layer_parberry(4).unwrap()]).unwrap());
        assert_eq!((f.vertex_count(), f.edges().len()), (2, 0));
        assert!(graphs_isomorphic(&g, &g));
        let (i, j) = (
            to_graph(&f4(&[(1, 3), (2, 4)])),
            to_graph(&f4(&[(1, 4), (2, 3)])),
        );
        assert!(!graphs_isomorphic(&i, &j));
    }

    #[test]
    fn subsumption_examples() {
        let g = Layer::from_pairs(&[(2, 4)]).unwrap();
        let i = Layer::from_pairs(&[(1, 3), (2, 4)]).unwrap();
        let j = Layer::from_pairs(&[(1, 4), (2, 3)]).unwrap();
        assert!(subsumes(&g, &i, 4).unwrap().is_some());
        assert_eq!(subsumes(&i, &i, 4).unwrap(), Some(Permutation::identity(4)));
        assert!(subsumes(&i, &j, 4).unwrap().is_none());
        assert!(subsumes(&j, &i, 4).unwrap().is_none());
        assert!(subsumes(&i, &g, 4).unwrap().is_none());
    }

    #[test]
    fn subsumption_witness_is_checked() {
        let h = f4(&[]).outputs().unwrap();
        let j = f4(&[(1, 4), (2, 3)]).outputs().unwrap();
        let pi = subsumption_witness(&h, &j).unwrap().unwrap();
        assert!(j.is_subset(&h.permuted(&pi)));
    }

    #[test]
    fn conjecture_small() {
        for n in 3..=6 {
            let report = check_conjecture(n).unwrap();
            assert!(report.holds(), "{:?}", report.counterexamples);
        }
        assert_eq!(check_conjecture(4).unwrap().pairs_checked, 2);
    }

    #[test]
    fn brute_rows_for_four_and_five() {
        let row = brute_force_table(4).unwrap();
        assert_eq!(
            (row.g, row.s, row.rg, row.rs, row.r),
            (10, 2, Some(8), Some(2), Some(2))
        );
        let row = brute_force_table(5).unwrap();
        assert_eq!(
            (row.g, row.s, row.rg, row.rs, row.r),
            (26, 10, Some(16), Some(6), Some(4))
        );
    }
}
