//! Comparator networks on `n` channels and their exact zero-one semantics.
//!
//! Channels are numbered from 1. A comparator `(lo, hi)` leaves the smaller
//! value on `lo` and the larger on `hi`; when `lo > hi` the comparator is
//! *generalized* and orders its two channels descending.
//!
//! Binary vectors are packed into a `u64` with channel 1 as the most
//! significant of the `n` low bits, so numeric order agrees with the usual
//! left-to-right string order (`0011 < 0101`).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Environment variable overriding the largest `n` for which output sets are
/// computed.
pub const OUTPUTS_CAP_ENV: &str = "TWOLAYER_OUTPUTS_MAX_N";

/// Default bound on `n` for output-set computations (2^n inputs).
pub const DEFAULT_OUTPUTS_CAP: usize = 24;

/// Hard ceiling regardless of the environment: the bitset needs 2^n bits.
const ABSOLUTE_OUTPUTS_CAP: usize = 32;

/// The current bound on `n` for [`Network::outputs`].
pub fn outputs_cap() -> usize {
    std::env::var(OUTPUTS_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(ABSOLUTE_OUTPUTS_CAP))
        .unwrap_or(DEFAULT_OUTPUTS_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Comparator {
    pub lo: usize,
    pub hi: usize,
}

impl Comparator {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo == hi {
            return Err(Error::InvalidArgument(format!(
                "comparator ({lo},{hi}) joins a channel to itself"
            )));
        }
        if lo == 0 || hi == 0 {
            return Err(Error::InvalidArgument(
                "channel indices are 1-based".to_string(),
            ));
        }
        Ok(Comparator { lo, hi })
    }

    /// The standard comparator on the unordered pair `{a, b}`.
    pub fn between(a: usize, b: usize) -> Self {
        Comparator {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.lo < self.hi
    }

    /// The same channel pair oriented ascending.
    pub fn normalized(&self) -> Self {
        Comparator::between(self.lo, self.hi)
    }

    pub fn touches(&self, channel: usize) -> bool {
        self.lo == channel || self.hi == channel
    }

    /// The other endpoint, if `channel` is one of the two.
    pub fn partner(&self, channel: usize) -> Option<usize> {
        if self.lo == channel {
            Some(self.hi)
        } else if self.hi == channel {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// A set of comparators touching each channel at most once.
///
/// Comparators are kept sorted so that structural equality is set equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer {
    comparators: Vec<Comparator>,
}

impl Layer {
    pub fn new(mut comparators: Vec<Comparator>) -> Result<Self> {
        let mut seen = HashSet::new();
        for c in &comparators {
            if c.lo == c.hi {
                return Err(Error::InvalidArgument(format!(
                    "comparator {c} joins a channel to itself"
                )));
            }
            for ch in [c.lo, c.hi] {
                if !seen.insert(ch) {
                    return Err(Error::InvalidArgument(format!(
                        "channel {ch} occurs twice in one layer"
                    )));
                }
            }
        }
        comparators.sort();
        Ok(Layer { comparators })
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let comparators = pairs
            .iter()
            .map(|&(lo, hi)| Comparator::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Layer::new(comparators)
    }

    pub fn empty() -> Self {
        Layer::default()
    }

    pub fn comparators(&self) -> &[Comparator] {
        &self.comparators
    }

    pub fn len(&self) -> usize {
        self.comparators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comparators.is_empty()
    }

    pub fn is_standard(&self) -> bool {
        self.comparators.iter().all(Comparator::is_standard)
    }

    /// A layer on `n` channels is maximal when it has `floor(n/2)` comparators.
    pub fn is_maximal(&self, n: usize) -> bool {
        self.comparators.len() == n / 2
    }

    pub fn contains(&self, c: &Comparator) -> bool {
        self.comparators.binary_search(c).is_ok()
    }

    /// The comparator touching `channel`, if any.
    pub fn comparator_at(&self, channel: usize) -> Option<Comparator> {
        self.comparators
            .iter()
            .copied()
            .find(|c| c.touches(channel))
    }

    /// `partners[ch]` is the channel joined to `ch` in this layer (index 0 unused).
    pub fn partner_table(&self, n: usize) -> Vec<Option<usize>> {
        let mut table = vec![None; n + 1];
        for c in &self.comparators {
            table[c.lo] = Some(c.hi);
            table[c.hi] = Some(c.lo);
        }
        table
    }

    /// This layer with one more comparator.
    pub fn with(&self, c: Comparator) -> Result<Self> {
        let mut cs = self.comparators.clone();
        cs.push(c);
        Layer::new(cs)
    }

    pub fn without(&self, index: usize) -> Self {
        let mut cs = self.comparators.clone();
        cs.remove(index);
        Layer { comparators: cs }
    }

    fn max_channel(&self) -> usize {
        self.comparators
            .iter()
            .map(|c| c.lo.max(c.hi))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comparators.is_empty() {
            return write!(f, "-");
        }
        for (i, c) in self.comparators.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Layer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_layer_line(s, 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetworkKind {
    Standard,
    Generalized,
}

/// A layered comparator network on `n` channels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Network {
    n: usize,
    layers: Vec<Layer>,
}

impl Network {
    pub fn new(n: usize, layers: Vec<Layer>) -> Result<Self> {
        for layer in &layers {
            let m = layer.max_channel();
            if m > n {
                return Err(Error::InvalidArgument(format!(
                    "channel {m} out of range for n = {n}"
                )));
            }
        }
        Ok(Network { n, layers })
    }

    /// A two-layer network `first; second`.
    pub fn two_layer(n: usize, first: Layer, second: Layer) -> Result<Self> {
        Network::new(n, vec![first, second])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, index: usize) -> Option<&Layer> {
        self.layers.get(index)
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn size(&self) -> usize {
        self.layers.iter().map(Layer::len).sum()
    }

    pub fn kind(&self) -> NetworkKind {
        if self.layers.iter().all(Layer::is_standard) {
            NetworkKind::Standard
        } else {
            NetworkKind::Generalized
        }
    }

    pub fn is_standard(&self) -> bool {
        self.kind() == NetworkKind::Standard
    }

    /// Concatenation `self; other`.
    pub fn then(&self, other: &Network) -> Result<Network> {
        if self.n != other.n {
            return Err(Error::InvalidArgument(format!(
                "cannot concatenate networks on {} and {} channels",
                self.n, other.n
            )));
        }
        let mut layers = self.layers.clone();
        layers.extend(other.layers.iter().cloned());
        Ok(Network { n: self.n, layers })
    }

    /// Propagates a binary input through every layer.
    pub fn apply(&self, input: &BitVector) -> Result<BitVector> {
        if input.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "input has length {}, network has {} channels",
                input.len(),
                self.n
            )));
        }
        let masks = self.layer_masks();
        let bits = masks
            .iter()
            .fold(input.bits(), |x, layer| apply_masks(x, layer));
        Ok(BitVector::from_bits(self.n, bits))
    }

    /// The set of outputs over all `2^n` binary inputs.
    pub fn outputs(&self) -> Result<OutputSet> {
        self.outputs_with_cap(outputs_cap())
    }

    pub fn outputs_with_cap(&self, cap: usize) -> Result<OutputSet> {
        let cap = cap.min(ABSOLUTE_OUTPUTS_CAP);
        if self.n > cap {
            return Err(Error::ResourceLimit {
                what: "output-set computation",
                n: self.n,
                bound: cap,
            });
        }
        let mut set = OutputSet::empty(self.n);
        let Some((first, rest)) = self.layers.split_first() else {
            for x in 0..(1u64 << self.n) {
                set.insert_bits(x);
            }
            return Ok(set);
        };
        // The image of the full cube under one layer is a product set.
        let rest: Vec<Vec<(u64, u64)>> = rest.iter().map(|l| layer_masks(self.n, l)).collect();
        for x in first_layer_image(self.n, first) {
            let y = rest.iter().fold(x, |v, layer| apply_masks(v, layer));
            set.insert_bits(y);
        }
        Ok(set)
    }

    /// Zero-one principle: sorting iff every binary output is ascending.
    pub fn is_sorting_network(&self) -> Result<bool> {
        Ok(self.outputs()?.iter_bits().all(|x| x & (x + 1) == 0))
    }

    /// Relabels every comparator `(i, j)` as `(pi(i), pi(j))`. The result may
    /// be generalized; see [`Network::untangle`].
    pub fn permute(&self, pi: &Permutation) -> Result<Network> {
        if pi.n() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation on {} points applied to {} channels",
                pi.n(),
                self.n
            )));
        }
        let layers = self
            .layers
            .iter()
            .map(|layer| {
                let cs = layer
                    .comparators()
                    .iter()
                    .map(|c| Comparator {
                        lo: pi.apply(c.lo),
                        hi: pi.apply(c.hi),
                    })
                    .collect();
                Layer::new(cs)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Network { n: self.n, layers })
    }

    /// Rewrites a generalized network into a standard one with the same
    /// channel count, depth and size.
    ///
    /// Layers are scanned left to right under a running relabeling of the
    /// wires. A comparator that descends under the current labels is flipped
    /// and its two labels are exchanged for all later layers.
    pub fn untangle(&self) -> Network {
        let n = self.n;
        // label[ch] = physical wire now carrying what the input network calls ch
        let mut label: Vec<usize> = (0..=n).collect();
        let mut layers = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            let mut out = Vec::with_capacity(layer.len());
            let mut swaps = Vec::new();
            for c in layer.comparators() {
                let (p, q) = (label[c.lo], label[c.hi]);
                if p < q {
                    out.push(Comparator { lo: p, hi: q });
                } else {
                    out.push(Comparator { lo: q, hi: p });
                    swaps.push((p, q));
                }
            }
            for (p, q) in swaps {
                for l in label.iter_mut().skip(1) {
                    if *l == p {
                        *l = q;
                    } else if *l == q {
                        *l = p;
                    }
                }
            }
            out.sort();
            layers.push(Layer { comparators: out });
        }
        Network { n, layers }
    }

    /// Replaces each comparator `(i, j)` by `(n-j+1, n-i+1)`, then untangles.
    pub fn reflect(&self) -> Network {
        let n = self.n;
        let layers = self
            .layers
            .iter()
            .map(|layer| {
                let mut cs: Vec<Comparator> = layer
                    .comparators()
                    .iter()
                    .map(|c| Comparator {
                        lo: n - c.hi + 1,
                        hi: n - c.lo + 1,
                    })
                    .collect();
                cs.sort();
                Layer { comparators: cs }
            })
            .collect();
        Network { n, layers }.untangle()
    }

    /// True iff deleting some single comparator leaves the output set unchanged.
    pub fn is_redundant(&self) -> Result<bool> {
        let outputs = self.outputs()?;
        for (li, layer) in self.layers.iter().enumerate() {
            for ci in 0..layer.len() {
                let mut layers = self.layers.clone();
                layers[li] = layer.without(ci);
                let reduced = Network { n: self.n, layers };
                if reduced.outputs()? == outputs {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Roles of channels 1..=n relative to the first layer (index 0 is channel 1).
    pub fn channel_roles(&self) -> Result<Vec<ChannelRole>> {
        let first = self
            .layers
            .first()
            .ok_or_else(|| Error::InvalidArgument("network has no layers".into()))?;
        Ok(channel_roles_of(self.n, first))
    }

    fn layer_masks(&self) -> Vec<Vec<(u64, u64)>> {
        self.layers.iter().map(|l| layer_masks(self.n, l)).collect()
    }
}

impl fmt::Display for Network {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for layer in &self.layers {
            writeln!(f, "{layer}")?;
        }
        Ok(())
    }
}

impl FromStr for Network {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut nets = parse_networks(s)?;
        match nets.len() {
            1 => Ok(nets.remove(0)),
            0 => Err(Error::parse(1, 1, "no network found")),
            k => Err(Error::parse(
                1,
                1,
                format!("expected one network, found {k}"),
            )),
        }
    }
}

/// Role of a channel relative to the first layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelRole {
    Min,
    Max,
    Free,
}

pub fn channel_roles_of(n: usize, first: &Layer) -> Vec<ChannelRole> {
    let mut roles = vec![ChannelRole::Free; n];
    for c in first.comparators() {
        roles[c.lo - 1] = ChannelRole::Min;
        roles[c.hi - 1] = ChannelRole::Max;
    }
    roles
}

/// `F_n = {(2k-1, 2k)}`; channel `n` is free when `n` is odd.
pub fn first_layer_parberry(n: usize) -> Result<Layer> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    Ok(Layer {
        comparators: (1..=n / 2)
            .map(|k| Comparator {
                lo: 2 * k - 1,
                hi: 2 * k,
            })
            .collect(),
    })
}

/// `F'_n = {(i, n-i+1)}`, the first layer fixed by reflection.
pub fn first_layer_reflective(n: usize) -> Result<Layer> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    Ok(Layer {
        comparators: (1..=n / 2)
            .map(|i| Comparator {
                lo: i,
                hi: n - i + 1,
            })
            .collect(),
    })
}

fn bit(n: usize, channel: usize) -> u64 {
    1u64 << (n - channel)
}

fn layer_masks(n: usize, layer: &Layer) -> Vec<(u64, u64)> {
    layer
        .comparators()
        .iter()
        .map(|c| (bit(n, c.lo), bit(n, c.hi)))
        .collect()
}

#[inline]
fn apply_masks(mut x: u64, masks: &[(u64, u64)]) -> u64 {
    for &(lo, hi) in masks {
        if x & lo != 0 && x & hi == 0 {
            x ^= lo | hi;
        }
    }
    x
}

/// All outputs of a single layer over the full cube, enumerated as a product.
fn first_layer_image(n: usize, first: &Layer) -> Vec<u64> {
    let mut used = 0u64;
    let mut factors: Vec<[u64; 3]> = Vec::new();
    let mut singles: Vec<u64> = Vec::new();
    for c in first.comparators() {
        let (lo, hi) = (bit(n, c.lo), bit(n, c.hi));
        used |= lo | hi;
        factors.push([0, hi, lo | hi]);
    }
    for ch in 1..=n {
        if used & bit(n, ch) == 0 {
            singles.push(bit(n, ch));
        }
    }
    let mut acc = vec![0u64];
    for f in &factors {
        acc = acc
            .iter()
            .flat_map(|&x| f.iter().map(move |&p| x | p))
            .collect();
    }
    for &s in &singles {
        acc = acc.iter().flat_map(|&x| [x, x | s]).collect();
    }
    acc
}

/// A binary vector of length `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    n: usize,
    bits: u64,
}

impl BitVector {
    pub fn from_bits(n: usize, bits: u64) -> Self {
        debug_assert!(n <= 64);
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        BitVector {
            n,
            bits: bits & mask,
        }
    }

    pub fn zeros(n: usize) -> Self {
        BitVector { n, bits: 0 }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Value on 1-based `channel`.
    pub fn get(&self, channel: usize) -> bool {
        self.bits & bit(self.n, channel) != 0
    }

    pub fn count_ones(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_sorted(&self) -> bool {
        self.bits & (self.bits + 1) == 0
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ch in 1..=self.n {
            f.write_str(if self.get(ch) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > 64 {
            return Err(Error::InvalidArgument("bit vector longer than 64".into()));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            bits <<= 1;
            match ch {
                '0' => {}
                '1' => bits |= 1,
                _ => {
                    return Err(Error::parse(
                        1,
                        i + 1,
                        format!("unexpected {ch:?} in bit vector"),
                    ))
                }
            }
        }
        Ok(BitVector { n: s.len(), bits })
    }
}

/// A set of binary vectors of length `n`, stored as a bitset over `2^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OutputSet {
    n: usize,
    words: Vec<u64>,
}

impl OutputSet {
    pub fn empty(n: usize) -> Self {
        let bits = 1usize << n;
        OutputSet {
            n,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert_bits(&mut self, x: u64) {
        self.words[(x >> 6) as usize] |= 1u64 << (x & 63);
    }

    pub fn insert(&mut self, v: &BitVector) {
        self.insert_bits(v.bits());
    }

    pub fn contains_bits(&self, x: u64) -> bool {
        self.words[(x >> 6) as usize] & (1u64 << (x & 63)) != 0
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.n && self.contains_bits(v.bits())
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &OutputSet) -> bool {
        self.n == other.n
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// Members in ascending numeric (= string) order.
    pub fn iter_bits(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(((wi as u64) << 6) | t)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = BitVector> + '_ {
        let n = self.n;
        self.iter_bits().map(move |b| BitVector::from_bits(n, b))
    }

    /// The image of this set under one more comparator.
    pub fn after_comparator(&self, c: Comparator) -> OutputSet {
        let masks = [(bit(self.n, c.lo), bit(self.n, c.hi))];
        let mut out = OutputSet::empty(self.n);
        for x in self.iter_bits() {
            out.insert_bits(apply_masks(x, &masks));
        }
        out
    }

    /// Whether appending comparator `c` yields a subset of this set.
    ///
    /// Only vectors that `c` actually changes need checking.
    pub fn closed_under(&self, c: Comparator) -> bool {
        let (lo, hi) = (bit(self.n, c.lo), bit(self.n, c.hi));
        self.iter_bits()
            .filter(|&x| x & lo != 0 && x & hi == 0)
            .all(|x| self.contains_bits(x ^ lo ^ hi))
    }

    /// The image `{pi(x)}` of this set under a channel permutation.
    pub fn permuted(&self, pi: &Permutation) -> OutputSet {
        let n = self.n;
        let mut out = OutputSet::empty(n);
        for x in self.iter_bits() {
            let mut y = 0u64;
            for ch in 1..=n {
                if x & bit(n, ch) != 0 {
                    y |= bit(n, pi.apply(ch));
                }
            }
            out.insert_bits(y);
        }
        out
    }
}

impl fmt::Debug for OutputSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|v| v.to_string()))
            .finish()
    }
}

/// A bijection on channels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    // images[i - 1] = pi(i)
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidArgument(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `(1 3)(2 4)`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::InvalidArgument(format!(
                        "point out of range in {cycle:?}"
                    )));
                }
                images[a - 1] = b;
            }
        }
        Permutation::new(images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { images: inv }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut any = false;
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.apply(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

fn parse_layer_line(line: &str, line_no: usize) -> Result<Layer> {
    let trimmed = line.trim();
    if trimmed == "-" {
        return Ok(Layer::empty());
    }
    let mut comparators = Vec::new();
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                let start = i;
                let close = line[i..]
                    .find(')')
                    .map(|k| i + k)
                    .ok_or_else(|| Error::parse(line_no, start + 1, "unterminated comparator"))?;
                let inner = &line[i + 1..close];
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::parse(line_no, start + 1, "expected (lo,hi)"))?;
                let lo: usize = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, start + 2, format!("bad channel {a:?}")))?;
                let hi: usize = b.trim().parse().map_err(|_| {
                    Error::parse(
                        line_no,
                        start + 2 + a.len() + 1,
                        format!("bad channel {b:?}"),
                    )
                })?;
                let c = Comparator::new(lo, hi)
                    .map_err(|e| Error::parse(line_no, start + 1, e.to_string()))?;
                comparators.push(c);
                i = close + 1;
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    i + 1,
                    format!("unexpected character {:?}", other as char),
                ))
            }
        }
    }
    Layer::new(comparators).map_err(|e| Error::parse(line_no, 1, e.to_string()))
}

/// Parses zero or more networks in the text format:
///
/// ```text
/// n=4
/// (1,2) (3,4)
/// (1,3) (2,4)
///
/// ```
///
/// A blank line ends a block; `-` stands for an empty layer; lines starting
/// with `#` are comments.
pub fn parse_networks(text: &str) -> Result<Vec<Network>> {
    let mut nets = Vec::new();
    let mut current: Option<(usize, Vec<Layer>, usize)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end();
        if line.trim_start().starts_with('#') {
            continue;
        }
        if line.trim().is_empty() {
            if let Some((n, layers, header_line)) = current.take() {
                nets.push(finish_network(n, layers, header_line)?);
            }
            continue;
        }
        match current.as_mut() {
            None => {
                let rest = line
                    .trim()
                    .strip_prefix("n=")
                    .ok_or_else(|| Error::parse(line_no, 1, "expected header `n=<channels>`"))?;
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, 3, format!("bad channel count {rest:?}")))?;
                current = Some((n, Vec::new(), line_no));
            }
            Some((n, layers, _)) => {
                let layer = parse_layer_line(line, line_no)?;
                if let Some(c) = layer.comparators().iter().find(|c| c.lo.max(c.hi) > *n) {
                    return Err(Error::parse(
                        line_no,
                        1,
                        format!("comparator {c} leaves channels 1..={n}"),
                    ));
                }
                layers.push(layer);
            }
        }
    }
    if let Some((n, layers, header_line)) = current.take() {
        nets.push(finish_network(n, layers, header_line)?);
    }
    Ok(nets)
}

fn finish_network(n: usize, layers: Vec<Layer>, header_line: usize) -> Result<Network> {
    Network::new(n, layers).map_err(|e| Error::parse(header_line, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(n: usize, layers: &[&[(usize, usize)]]) -> Network {
        Network::new(
            n,
            layers
                .iter()
                .map(|l| Layer::from_pairs(l).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn output_strings(net: &Network) -> Vec<String> {
        net.outputs()
            .unwrap()
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    #[test]
    fn parberry_first_layer() {
        let f4 = first_layer_parberry(4).unwrap();
        assert_eq!(f4, Layer::from_pairs(&[(1, 2), (3, 4)]).unwrap());
        let f5 = first_layer_parberry(5).unwrap();
        assert_eq!(f5, f4);
        assert!(f5.comparator_at(5).is_none());
        assert_eq!(
            first_layer_parberry(2).unwrap(),
            Layer::from_pairs(&[(1, 2)]).unwrap()
        );
        assert!(matches!(
            first_layer_parberry(1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn reflective_first_layer() {
        assert_eq!(
            first_layer_reflective(4).unwrap(),
            Layer::from_pairs(&[(1, 4), (2, 3)]).unwrap()
        );
        let f5 = first_layer_reflective(5).unwrap();
        assert_eq!(f5, Layer::from_pairs(&[(1, 5), (2, 4)]).unwrap());
        assert!(f5.comparator_at(3).is_none());
        assert!(first_layer_reflective(0).is_err());
        for n in 2..12 {
            let f = first_layer_reflective(n).unwrap();
            let net = Network::new(n, vec![f.clone()]).unwrap();
            assert_eq!(net.reflect().layers()[0], f);
        }
    }

    #[test]
    fn apply_examples() {
        let f4 = net(4, &[&[(1, 2), (3, 4)]]);
        assert_eq!(f4.apply(&bv("1010")).unwrap(), bv("0101"));
        assert_eq!(f4.apply(&bv("0000")).unwrap(), bv("0000"));
        let i = net(4, &[&[(1, 2), (3, 4)], &[(1, 3), (2, 4)]]);
        assert_eq!(i.apply(&bv("1100")).unwrap(), bv("0011"));
        assert!(matches!(
            i.apply(&bv("110")),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn generalized_comparator_orders_descending() {
        let g = net(2, &[&[(2, 1)]]);
        assert!(!g.is_standard());
        assert_eq!(g.apply(&bv("01")).unwrap(), bv("10"));
        assert_eq!(g.apply(&bv("10")).unwrap(), bv("10"));
    }

    #[test]
    fn outputs_of_four_channel_case_study() {
        let d = net(4, &[&[(1, 2), (3, 4)], &[(1, 3)]]);
        let g = net(4, &[&[(1, 2), (3, 4)], &[(2, 4)]]);
        let i = net(4, &[&[(1, 2), (3, 4)], &[(1, 3), (2, 4)]]);
        assert_eq!(
            output_strings(&d),
            ["0000", "0001", "0011", "0100", "0101", "0110", "0111", "1111"]
        );
        assert_eq!(
            output_strings(&g),
            ["0000", "0001", "0011", "0101", "0111", "1001", "1101", "1111"]
        );
        assert_eq!(
            output_strings(&i),
            ["0000", "0001", "0011", "0101", "0111", "1111"]
        );
    }

    #[test]
    fn outputs_respect_cap() {
        let big = Network::new(30, vec![first_layer_parberry(30).unwrap()]).unwrap();
        assert!(matches!(
            big.outputs_with_cap(24),
            Err(Error::ResourceLimit { n: 30, .. })
        ));
    }

    #[test]
    fn outputs_without_layers_is_the_cube() {
        let empty = Network::new(3, vec![]).unwrap();
        assert_eq!(empty.outputs().unwrap().len(), 8);
    }

    #[test]
    fn sorting_network_examples() {
        let sorter = net(4, &[&[(1, 2), (3, 4)], &[(1, 3), (2, 4)], &[(2, 3)]]);
        assert!(sorter.is_sorting_network().unwrap());
        assert!(!net(4, &[&[(1, 2), (3, 4)]]).is_sorting_network().unwrap());
        assert!(net(2, &[&[(1, 2)]]).is_sorting_network().unwrap());
    }

    #[test]
    fn permute_examples() {
        let f4 = net(4, &[&[(1, 2), (3, 4)]]);
        assert_eq!(f4.permute(&Permutation::identity(4)).unwrap(), f4);
        let swapped = f4
            .permute(&Permutation::from_cycles(4, &[&[1, 2]]).unwrap())
            .unwrap();
        assert_eq!(swapped.kind(), NetworkKind::Generalized);
        assert_eq!(
            swapped.layers()[0].comparators(),
            &[Comparator { lo: 2, hi: 1 }, Comparator { lo: 3, hi: 4 }]
        );
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
    }

    #[test]
    fn untangle_maps_network_a_to_network_b() {
        let a = net(
            4,
            &[&[(1, 2), (3, 4)], &[(1, 4)], &[(1, 3), (2, 4)], &[(2, 3)]],
        );
        let b = net(
            4,
            &[&[(1, 2), (3, 4)], &[(2, 3)], &[(1, 2), (3, 4)], &[(2, 3)]],
        );
        assert!(a.is_sorting_network().unwrap());
        assert!(b.is_sorting_network().unwrap());
        let pi = Permutation::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap();
        assert_eq!(a.permute(&pi).unwrap().untangle(), b);
        assert_eq!(b.untangle(), b);
    }

    #[test]
    fn reflect_examples() {
        let i = net(4, &[&[(1, 2), (3, 4)], &[(1, 3), (2, 4)]]);
        assert_eq!(i.reflect(), i);
        let g = net(4, &[&[(1, 2), (3, 4)], &[(2, 4)]]);
        assert_eq!(g.reflect().reflect(), g);
    }

    #[test]
    fn redundancy_examples() {
        assert!(net(4, &[&[(1, 2), (3, 4)], &[(1, 2)]])
            .is_redundant()
            .unwrap());
        assert!(!net(4, &[&[(1, 2), (3, 4)], &[(1, 3), (2, 4)]])
            .is_redundant()
            .unwrap());
        assert!(!net(4, &[&[(1, 2), (3, 4)], &[]]).is_redundant().unwrap());
    }

    #[test]
    fn channel_role_examples() {
        use ChannelRole::*;
        let f5 = Network::new(5, vec![first_layer_parberry(5).unwrap()]).unwrap();
        assert_eq!(f5.channel_roles().unwrap(), [Min, Max, Min, Max, Free]);
        let f4 = Network::new(4, vec![first_layer_parberry(4).unwrap()]).unwrap();
        assert!(!f4.channel_roles().unwrap().contains(&Free));
        let r5 = Network::new(5, vec![first_layer_reflective(5).unwrap()]).unwrap();
        assert_eq!(r5.channel_roles().unwrap(), [Min, Min, Free, Max, Max]);
    }

    #[test]
    fn layer_rejects_shared_channel() {
        assert!(Layer::from_pairs(&[(1, 2), (2, 3)]).is_err());
        assert!(Comparator::new(3, 3).is_err());
        assert!(Network::new(3, vec![Layer::from_pairs(&[(1, 4)]).unwrap()]).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let text = "n=4\n(1,2) (3,4)\n-\n\nn=5\n(1,2) (3,4)\n(1,5) (2,4)\n";
        let nets = parse_networks(text).unwrap();
        assert_eq!(nets.len(), 2);
        assert!(nets[0].layers()[1].is_empty());
        let printed: String = nets.iter().map(|n| format!("{n}\n")).collect();
        assert_eq!(parse_networks(&printed).unwrap(), nets);
        assert_eq!(nets[1].to_string(), "n=5\n(1,2) (3,4)\n(1,5) (2,4)\n");
    }

    #[test]
    fn text_format_errors_carry_positions() {
        match parse_networks("n=4\n(1,2) [3,4)\n") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!((line, column), (2, 7));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_networks("(1,2)\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_networks("n=3\n(1,x)\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn permutation_display_uses_cycles() {
        let pi = Permutation::from_cycles(4, &[&[1, 3], &[2, 4]]).unwrap();
        assert_eq!(pi.to_string(), "(1 3)(2 4)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(pi.inverse(), pi);
    }

    #[test]
    fn closed_under_matches_explicit_image() {
        let g = net(4, &[&[(1, 2), (3, 4)], &[(2, 4)]]);
        let out = g.outputs().unwrap();
        for (a, b) in [(1, 3), (1, 4), (2, 3)] {
            let c = Comparator::between(a, b);
            assert_eq!(out.closed_under(c), out.after_comparator(c).is_subset(&out));
        }
    }
}
