//! Path words and sentences for two-layer networks with a maximal first layer.
//!
//! Every connected component of such a network is a path or a cycle that
//! alternates between first-layer and second-layer comparators. Reading the
//! channel roles along it (`0` free, `1` min, `2` max) gives a word:
//!
//! * **Head**  `0(12|21)*` - the component holding the free channel;
//! * **Stick** `(12|21)+` - a path with two channels unused by layer 2;
//! * **Cycle** `12(12|21)*(1|2)` - every channel used by layer 2, read from
//!   the lexicographically least starting point with its last letter
//!   dropped. The doubled pair (a layer-2 comparator repeating a layer-1
//!   comparator) reads `1`.
//!
//! A sentence is the sorted multiset of component words; two networks are
//! equivalent exactly when their sentences agree.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::network::{ChannelRole, Comparator, Layer, Network};

/// Largest number of first-layer comparators a word may traverse (a Head
/// may traverse one fewer, so that every word fits in 64 channels).
pub const MAX_PAIRS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordKind {
    Head,
    Stick,
    Cycle,
}

/// One component word.
///
/// Stored as the sequence of first-layer comparators it traverses: bit `k`
/// (most significant first) is 0 when comparator `k` is crossed min-to-max
/// (`12`) and 1 when crossed max-to-min (`21`). For a Cycle the final letter
/// is implied and not printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    kind: WordKind,
    pairs: u8,
    bits: u64,
}

#[inline]
fn mask(m: usize) -> u64 {
    if m >= 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Reverse the order of `m` pair-bits and swap `12` with `21`.
#[inline]
pub(crate) fn reverse_complement(bits: u64, m: usize) -> u64 {
    if m == 0 {
        return 0;
    }
    (bits.reverse_bits() >> (64 - m)) ^ mask(m)
}

#[inline]
pub(crate) fn rotate(bits: u64, m: usize, r: usize) -> u64 {
    if r == 0 || m == 0 {
        return bits;
    }
    ((bits << r) | (bits >> (m - r))) & mask(m)
}

impl Word {
    pub fn new(kind: WordKind, pairs: usize, bits: u64) -> Result<Self> {
        if 2 * pairs + usize::from(kind == WordKind::Head) > 2 * MAX_PAIRS {
            return Err(Error::InvalidArgument(format!(
                "word on {pairs} comparators exceeds {} channels",
                2 * MAX_PAIRS
            )));
        }
        if pairs == 0 && kind != WordKind::Head {
            return Err(Error::InvalidArgument(
                "sticks and cycles traverse at least one comparator".into(),
            ));
        }
        if bits & !mask(pairs) != 0 {
            return Err(Error::InvalidArgument(
                "pair bits exceed word length".into(),
            ));
        }
        Ok(Word {
            kind,
            pairs: pairs as u8,
            bits,
        })
    }

    pub(crate) const fn raw(kind: WordKind, pairs: usize, bits: u64) -> Self {
        Word {
            kind,
            pairs: pairs as u8,
            bits,
        }
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    /// Number of first-layer comparators in the component.
    pub fn pairs(&self) -> usize {
        self.pairs as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of channels the component occupies.
    pub fn channels(&self) -> usize {
        match self.kind {
            WordKind::Head => 2 * self.pairs() + 1,
            WordKind::Stick | WordKind::Cycle => 2 * self.pairs(),
        }
    }

    /// Length of the printed word.
    pub fn len(&self) -> usize {
        match self.kind {
            WordKind::Head => 2 * self.pairs() + 1,
            WordKind::Stick => 2 * self.pairs(),
            WordKind::Cycle => 2 * self.pairs() - 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether the `k`-th traversed comparator is crossed max-to-min.
    pub fn pair_reversed(&self, k: usize) -> bool {
        (self.bits >> (self.pairs() - 1 - k)) & 1 == 1
    }

    /// The printed symbols, as ASCII digits.
    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        let head = (self.kind == WordKind::Head).then_some(b'0');
        let len = self.len();
        let skip_head = usize::from(head.is_some());
        head.into_iter().chain(
            (0..self.pairs())
                .flat_map(move |k| {
                    if self.pair_reversed(k) {
                        *b"21"
                    } else {
                        *b"12"
                    }
                })
                .take(len - skip_head),
        )
    }

    /// The doubled pair `1`.
    pub fn is_doubled_pair(&self) -> bool {
        self.kind == WordKind::Cycle && self.pairs == 1
    }

    /// The lone first-layer comparator `12`.
    pub fn is_lone_pair(&self) -> bool {
        self.kind == WordKind::Stick && self.pairs == 1
    }

    /// The isolated free channel `0`.
    pub fn is_lone_free(&self) -> bool {
        self.kind == WordKind::Head && self.pairs == 0
    }

    /// Symbols of the channels left unused by layer 2 (excluding a free
    /// channel): the last letter of a Head, both end letters of a Stick.
    pub fn unused_end_symbols(&self) -> Vec<u8> {
        let syms: Vec<u8> = self.symbols().collect();
        match self.kind {
            WordKind::Head if self.pairs > 0 => vec![syms[syms.len() - 1]],
            WordKind::Stick => vec![syms[0], syms[syms.len() - 1]],
            _ => Vec::new(),
        }
    }

    /// The least reading of the same component, computed on the pair bits.
    pub fn canonical(&self) -> Word {
        let m = self.pairs();
        let bits = match self.kind {
            WordKind::Head => self.bits,
            WordKind::Stick => self.bits.min(reverse_complement(self.bits, m)),
            WordKind::Cycle => {
                let rc = reverse_complement(self.bits, m);
                (0..m)
                    .flat_map(|r| [rotate(self.bits, m, r), rotate(rc, m, r)])
                    .min()
                    .unwrap_or(self.bits)
            }
        };
        Word { bits, ..*self }
    }

    /// Number of readings of the component that produce this exact word;
    /// for a canonical word this is the order of its automorphism group
    /// acting on first-layer comparators.
    pub fn self_symmetries(&self) -> u64 {
        let m = self.pairs();
        match self.kind {
            WordKind::Head => 1,
            WordKind::Stick => 1 + u64::from(reverse_complement(self.bits, m) == self.bits),
            WordKind::Cycle => {
                let rc = reverse_complement(self.bits, m);
                (0..m)
                    .map(|r| {
                        u64::from(rotate(self.bits, m, r) == self.bits)
                            + u64::from(rotate(rc, m, r) == self.bits)
                    })
                    .sum()
            }
        }
    }

    /// Swaps the roles `1` and `2` without recanonicalizing.
    pub(crate) fn swapped(&self) -> Word {
        Word {
            bits: self.bits ^ mask(self.pairs()),
            ..*self
        }
    }
}

impl Word {
    /// A key whose numeric order is the string order of the printed word:
    /// two bits per symbol (`0`, `1`, `2` become 1, 2, 3), left aligned, with
    /// zero padding so that a proper prefix sorts first.
    pub fn sort_key(&self) -> u128 {
        let mut key = 0u128;
        let mut shift = 126i32;
        for s in self.symbols() {
            key |= u128::from(s - b'0' + 1) << shift;
            shift -= 2;
        }
        key
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.symbols().map(char::from).collect();
        f.write_str(&s)
    }
}

fn parse_pairs(syms: &[u8], column: usize) -> Result<u64> {
    let mut bits = 0u64;
    for (k, pair) in syms.chunks(2).enumerate() {
        bits <<= 1;
        match pair {
            b"12" => {}
            b"21" => bits |= 1,
            _ => {
                return Err(Error::parse(
                    1,
                    column + 2 * k,
                    format!(
                        "expected `12` or `21`, found {:?}",
                        String::from_utf8_lossy(pair)
                    ),
                ))
            }
        }
    }
    Ok(bits)
}

impl FromStr for Word {
    type Err = Error;

    /// Parses a word per the grammar; the kind follows from its shape
    /// (leading `0` is a Head, even length a Stick, odd length a Cycle).
    fn from_str(s: &str) -> Result<Self> {
        let syms = s.as_bytes();
        if syms.is_empty() {
            return Err(Error::parse(1, 1, "empty word"));
        }
        if let Some(bad) = syms.iter().position(|b| !matches!(b, b'0' | b'1' | b'2')) {
            return Err(Error::parse(
                1,
                bad + 1,
                "words use only the symbols 0, 1, 2",
            ));
        }
        let too_long = || Error::parse(1, 1, format!("word longer than {MAX_PAIRS} comparators"));
        if syms[0] == b'0' {
            let rest = &syms[1..];
            if !rest.len().is_multiple_of(2) {
                return Err(Error::parse(
                    1,
                    syms.len(),
                    "head word has a dangling symbol",
                ));
            }
            let m = rest.len() / 2;
            if m >= MAX_PAIRS {
                return Err(too_long());
            }
            return Ok(Word::raw(WordKind::Head, m, parse_pairs(rest, 2)?));
        }
        if syms.len().is_multiple_of(2) {
            let m = syms.len() / 2;
            if m > MAX_PAIRS {
                return Err(too_long());
            }
            return Ok(Word::raw(WordKind::Stick, m, parse_pairs(syms, 1)?));
        }
        // cycle
        if syms == b"1" {
            return Ok(Word::raw(WordKind::Cycle, 1, 0));
        }
        if !syms.starts_with(b"12") {
            return Err(Error::parse(1, 1, "cycle word must start with `12`"));
        }
        let m = syms.len().div_ceil(2);
        if m > MAX_PAIRS {
            return Err(too_long());
        }
        let mut full = syms.to_vec();
        full.push(if syms[syms.len() - 1] == b'1' {
            b'2'
        } else {
            b'1'
        });
        Ok(Word::raw(WordKind::Cycle, m, parse_pairs(&full, 1)?))
    }
}

/// A sorted multiset of words naming one equivalence class.
///
/// Sentences order lexicographically as sequences of words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sentence {
    words: Vec<Word>,
}

impl Sentence {
    pub fn new(mut words: Vec<Word>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidArgument(
                "a sentence has at least one word".into(),
            ));
        }
        let heads = words.iter().filter(|w| w.kind == WordKind::Head).count();
        if heads > 1 {
            return Err(Error::InvalidArgument(format!(
                "a sentence has at most one Head word, found {heads}"
            )));
        }
        words.sort();
        Ok(Sentence { words })
    }

    pub(crate) fn from_sorted_unchecked(words: Vec<Word>) -> Self {
        Sentence { words }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn channels(&self) -> usize {
        self.words.iter().map(Word::channels).sum()
    }

    pub fn is_canonical(&self) -> bool {
        self.words.iter().all(is_canonical)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl FromStr for Sentence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut words = Vec::new();
        let mut column = 1;
        for part in s.split(';') {
            let w = part.parse::<Word>().map_err(|e| match e {
                Error::Parse {
                    column: c, message, ..
                } => Error::parse(1, column + c - 1, message),
                other => other,
            })?;
            words.push(w);
            column += part.len() + 1;
        }
        Sentence::new(words).map_err(|e| Error::parse(1, 1, e.to_string()))
    }
}

struct TwoLayerView {
    n: usize,
    first: Vec<Option<usize>>,
    second: Vec<Option<usize>>,
    roles: Vec<ChannelRole>,
}

impl TwoLayerView {
    fn new(net: &Network) -> Result<Self> {
        if net.depth() != 2 {
            return Err(Error::Unsupported(format!(
                "word representation needs exactly two layers, got {}",
                net.depth()
            )));
        }
        let n = net.n();
        let l1 = &net.layers()[0];
        if !l1.is_maximal(n) {
            return Err(Error::Unsupported(
                "word representation needs a maximal first layer".into(),
            ));
        }
        if !l1.is_standard() {
            return Err(Error::Unsupported(
                "word representation needs a standard first layer".into(),
            ));
        }
        Ok(TwoLayerView {
            n,
            first: l1.partner_table(n),
            second: net.layers()[1].partner_table(n),
            roles: crate::network::channel_roles_of(n, l1),
        })
    }

    fn symbol(&self, ch: usize) -> u8 {
        match self.roles[ch - 1] {
            ChannelRole::Free => b'0',
            ChannelRole::Min => b'1',
            ChannelRole::Max => b'2',
        }
    }

    /// Walks from `start`, alternating layers, beginning with the given layer.
    fn walk(&self, start: usize, first_layer_first: bool) -> Vec<usize> {
        let mut path = vec![start];
        let mut seen = vec![false; self.n + 1];
        seen[start] = true;
        let mut use_first = first_layer_first;
        let mut cur = start;
        loop {
            let next = if use_first {
                self.first[cur]
            } else {
                self.second[cur]
            };
            match next {
                Some(x) if !seen[x] => {
                    seen[x] = true;
                    path.push(x);
                    cur = x;
                    use_first = !use_first;
                }
                _ => break,
            }
        }
        path
    }

    fn word_of(&self, path: &[usize]) -> Vec<u8> {
        path.iter().map(|&c| self.symbol(c)).collect()
    }
}

/// Connected components of a two-layer network, each as a sorted channel
/// list, ordered by smallest channel.
pub fn components(net: &Network) -> Result<Vec<Vec<usize>>> {
    let view = TwoLayerView::new(net)?;
    let n = view.n;
    let mut comp_of = vec![usize::MAX; n + 1];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 1..=n {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp_of[start] = id;
        while let Some(c) = stack.pop() {
            members.push(c);
            for next in [view.first[c], view.second[c]].into_iter().flatten() {
                if comp_of[next] == usize::MAX {
                    comp_of[next] = id;
                    stack.push(next);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    Ok(comps)
}

/// The canonical word of one connected component, read off the network.
pub fn word_of_component(net: &Network, component: &[usize]) -> Result<Word> {
    let view = TwoLayerView::new(net)?;
    word_of_component_in(&view, component)
}

fn word_of_component_in(view: &TwoLayerView, component: &[usize]) -> Result<Word> {
    let malformed = |why: &str| Error::Internal(format!("component {component:?}: {why}"));
    if component.is_empty() {
        return Err(malformed("empty"));
    }
    let free: Vec<usize> = component
        .iter()
        .copied()
        .filter(|&c| view.roles[c - 1] == ChannelRole::Free)
        .collect();
    let symbols = match free.as_slice() {
        [f] => {
            let path = view.walk(*f, false);
            if path.len() != component.len() {
                return Err(malformed("head path does not cover the component"));
            }
            view.word_of(&path)
        }
        [] => {
            let ends: Vec<usize> = component
                .iter()
                .copied()
                .filter(|&c| view.second[c].is_none())
                .collect();
            match ends.as_slice() {
                [a, b] => {
                    let wa = view.word_of(&view.walk(*a, true));
                    let wb = view.word_of(&view.walk(*b, true));
                    if wa.len() != component.len() || wb.len() != component.len() {
                        return Err(malformed("stick path does not cover the component"));
                    }
                    wa.min(wb)
                }
                [] => {
                    let mut best: Option<Vec<u8>> = None;
                    for &c in component {
                        let w = view.word_of(&view.walk(c, true));
                        if w.len() != component.len() {
                            return Err(malformed("cycle path does not cover the component"));
                        }
                        if best.as_ref().is_none_or(|b| w < *b) {
                            best = Some(w);
                        }
                    }
                    let mut w = best.unwrap_or_default();
                    w.pop();
                    w
                }
                _ => return Err(malformed("more than two layer-2 unused channels")),
            }
        }
        _ => return Err(malformed("more than one free channel")),
    };
    let text = String::from_utf8(symbols).map_err(|e| Error::Internal(e.to_string()))?;
    text.parse::<Word>()
        .map_err(|e| Error::Internal(format!("read invalid word {text:?}: {e}")))
}

/// The sentence (sorted multiset of component words) of a two-layer network
/// with maximal first layer.
pub fn sentence_of(net: &Network) -> Result<Sentence> {
    let view = TwoLayerView::new(net)?;
    let mut words = components(net)?
        .iter()
        .map(|c| word_of_component_in(&view, c))
        .collect::<Result<Vec<_>>>()?;
    words.sort();
    Ok(Sentence { words })
}

/// Layer-2 comparators realising `word` on the given first-layer slots.
///
/// `slots[k]` is the `k`-th comparator the word traverses; `free` is the free
/// channel for a Head word.
pub fn place_word(
    word: &Word,
    slots: &[Comparator],
    free: Option<usize>,
) -> Result<Vec<Comparator>> {
    let m = word.pairs();
    if slots.len() != m {
        return Err(Error::InvalidArgument(format!(
            "word {word} needs {m} first-layer comparators, got {}",
            slots.len()
        )));
    }
    let ends: Vec<(usize, usize)> = (0..m)
        .map(|k| {
            let s = slots[k];
            if word.pair_reversed(k) {
                (s.hi, s.lo)
            } else {
                (s.lo, s.hi)
            }
        })
        .collect();
    let mut out = Vec::with_capacity(m + 1);
    if word.kind() == WordKind::Head {
        let f = free.ok_or_else(|| {
            Error::InvalidArgument(format!("head word {word} needs a free channel"))
        })?;
        if m > 0 {
            out.push(Comparator::between(f, ends[0].0));
        }
    }
    for k in 0..m.saturating_sub(1) {
        out.push(Comparator::between(ends[k].1, ends[k + 1].0));
    }
    if word.kind() == WordKind::Cycle {
        out.push(Comparator::between(ends[m - 1].1, ends[0].0));
    }
    Ok(out)
}

fn parberry_slots(n: usize) -> Vec<Comparator> {
    (1..=n / 2)
        .map(|k| Comparator::between(2 * k - 1, 2 * k))
        .collect()
}

/// The two-layer network of a single word, with first layer `F_n`.
pub fn net_of_word(word: &Word) -> Network {
    let n = word.channels();
    let slots = parberry_slots(n);
    let free = (n % 2 == 1).then_some(n);
    let second = place_word(word, &slots, free).expect("slot count matches word");
    Network::two_layer(
        n,
        Layer::new(slots).expect("F_n is a layer"),
        Layer::new(second).expect("a placed word is a layer"),
    )
    .expect("channels within range")
}

/// Lays the words of `sentence` out consecutively over `F_n`, in sentence
/// order; a Head's free channel is channel `n`.
pub fn net_of_sentence(sentence: &Sentence, n: usize) -> Result<Network> {
    let total = sentence.channels();
    if total != n {
        return Err(Error::InvalidArgument(format!(
            "sentence {sentence} occupies {total} channels, not {n}"
        )));
    }
    let slots = parberry_slots(n);
    let mut second = Vec::new();
    let mut offset = 0;
    for w in sentence.words() {
        let m = w.pairs();
        let free = (w.kind() == WordKind::Head).then_some(n);
        second.extend(place_word(w, &slots[offset..offset + m], free)?);
        offset += m;
    }
    Network::two_layer(n, Layer::new(slots)?, Layer::new(second)?)
}

/// A word is canonical when reading back the network it builds returns it.
pub fn is_canonical(word: &Word) -> bool {
    let net = net_of_word(word);
    let all: Vec<usize> = (1..=net.n()).collect();
    matches!(word_of_component(&net, &all), Ok(w) if w == *word)
}

/// Exchanges min and max roles and recanonicalizes.
pub fn reflect_word(word: &Word) -> Word {
    word.swapped().canonical()
}
