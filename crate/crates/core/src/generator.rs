//! Isomorph-free generation of two-layer prefixes as sentences.
//!
//! Every equivalence class of two-layer networks with first layer `F_n` is a
//! multiset of canonical words with at most one Head totalling `n` channels.
//! The generator builds those multisets directly: a Head (exactly when `n` is
//! odd), then Sticks, then Cycles, each group drawn in nondecreasing order
//! from a pool of canonical words, so no class is produced twice.
//!
//! The saturated variant restricts pools and combinations so that every
//! emitted sentence passes the word-level saturation test; the reflection
//! variant further keeps a sentence only if it is not larger than its
//! reflection.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::word::{reflect_word, reverse_complement, rotate, Sentence, Word, WordKind};

/// Largest channel count accepted by the generator.
pub const MAX_CHANNELS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GrammarVariant {
    /// All classes, `R(G_n)`.
    Full,
    /// Saturated classes, `R(S_n)`.
    Saturated,
    /// Saturated classes modulo reflection, `R_n`.
    SaturatedModuloReflection,
}

impl GrammarVariant {
    fn saturated(self) -> bool {
        !matches!(self, GrammarVariant::Full)
    }
}

impl fmt::Display for GrammarVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrammarVariant::Full => "RG",
            GrammarVariant::Saturated => "RS",
            GrammarVariant::SaturatedModuloReflection => "R",
        })
    }
}

impl FromStr for GrammarVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "RG" | "full" => Ok(GrammarVariant::Full),
            "RS" | "saturated" => Ok(GrammarVariant::Saturated),
            "R" | "reflection" => Ok(GrammarVariant::SaturatedModuloReflection),
            other => Err(Error::InvalidArgument(format!(
                "unknown variant {other:?} (expected RG, RS or R)"
            ))),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CHANNELS {
        return Err(Error::InvalidArgument(format!(
            "channel count must be in 1..={MAX_CHANNELS}, got {n}"
        )));
    }
    Ok(())
}

fn is_canonical_bits(kind: WordKind, m: usize, bits: u64) -> bool {
    match kind {
        WordKind::Head => true,
        WordKind::Stick => bits <= reverse_complement(bits, m),
        WordKind::Cycle => {
            let rc = reverse_complement(bits, m);
            (0..m).all(|r| rotate(bits, m, r) >= bits && rotate(rc, m, r) >= bits)
        }
    }
}

/// All canonical words of one kind using at most `budget` channels, in
/// string order.
pub fn enumerate_canonical_words(budget: usize, kind: WordKind) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_canonical_word(budget, kind, |w| out.push(w));
    out.sort();
    out
}

fn for_each_canonical_word(budget: usize, kind: WordKind, mut f: impl FnMut(Word)) {
    let (min_m, max_m) = match kind {
        WordKind::Head if budget >= 1 => (0, (budget - 1) / 2),
        WordKind::Stick | WordKind::Cycle if budget >= 2 => (1, budget / 2),
        _ => return,
    };
    let max_m = max_m.min(match kind {
        WordKind::Head => crate::word::MAX_PAIRS - 1,
        _ => crate::word::MAX_PAIRS,
    });
    for m in min_m..=max_m {
        // a canonical cycle on two or more comparators starts with `12`
        let limit: u64 = match kind {
            WordKind::Cycle if m == 1 => 1,
            WordKind::Cycle => 1u64 << (m - 1),
            _ => 1u64 << m,
        };
        for bits in 0..limit {
            if is_canonical_bits(kind, m, bits) {
                f(Word::raw(kind, m, bits));
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    word: Word,
    size: usize,
    /// Shared symbol of the layer-2-unused ends, 0 when not applicable.
    polarity: u8,
    /// `0` or `12`: allowed in a saturated sentence only beside Cycles.
    special: bool,
    key: u128,
    reflect_key: u128,
}

impl Entry {
    fn new(word: Word) -> Self {
        let ends = word.unused_end_symbols();
        let polarity = match ends.as_slice() {
            [a] => *a,
            [a, b] if a == b => *a,
            _ => 0,
        };
        Entry {
            word,
            size: word.channels(),
            polarity,
            special: word.is_lone_free() || word.is_lone_pair(),
            key: word.sort_key(),
            reflect_key: reflect_word(&word).sort_key(),
        }
    }
}

/// Canonical words admissible for a variant, grouped by kind and sorted by
/// channel count.
struct Pool {
    entries: Vec<Entry>,
    /// `by_size[s]` = index of the first entry with size >= s.
    by_size: Vec<usize>,
}

impl Pool {
    fn new(mut entries: Vec<Entry>, budget: usize) -> Self {
        entries.sort_by_key(|e| (e.size, e.key));
        let mut by_size = vec![entries.len(); budget + 2];
        for s in (0..=budget + 1).rev() {
            by_size[s] = entries.partition_point(|e| e.size < s);
        }
        Pool { entries, by_size }
    }

    fn first_with_size_at_least(&self, s: usize) -> usize {
        self.by_size[s.min(self.by_size.len() - 1)]
    }
}

struct Pools {
    heads: Pool,
    sticks: Pool,
    cycles: Pool,
}

impl Pools {
    fn new(n: usize, variant: GrammarVariant) -> Self {
        let saturated = variant.saturated();
        let collect = |kind: WordKind, budget: usize| {
            let mut v = Vec::new();
            for_each_canonical_word(budget, kind, |w| {
                if saturated && !admissible_saturated(&w) {
                    return;
                }
                v.push(Entry::new(w));
            });
            Pool::new(v, n)
        };
        let heads = if n % 2 == 1 {
            collect(WordKind::Head, n)
        } else {
            Pool::new(Vec::new(), n)
        };
        Pools {
            heads,
            sticks: collect(WordKind::Stick, n),
            cycles: collect(WordKind::Cycle, n),
        }
    }
}

/// Per-word conditions of saturation.
fn admissible_saturated(w: &Word) -> bool {
    match w.kind() {
        WordKind::Cycle => !w.is_doubled_pair(),
        WordKind::Head => true,
        WordKind::Stick => {
            if w.is_lone_pair() {
                return true;
            }
            let ends = w.unused_end_symbols();
            w.len() != 4 && ends[0] == ends[1]
        }
    }
}

/// Enumeration state shared by one partition.
struct Walker<'a, F: FnMut(&[Entry])> {
    pools: &'a Pools,
    saturated: bool,
    chosen: Vec<Entry>,
    polarity: u8,
    special: bool,
    non_cycles: usize,
    visit: F,
}

impl<F: FnMut(&[Entry])> Walker<'_, F> {
    fn accepts(&self, e: &Entry) -> bool {
        if !self.saturated {
            return true;
        }
        if e.special {
            return self.non_cycles == 0;
        }
        if self.special {
            return false;
        }
        self.polarity == 0 || self.polarity == e.polarity
    }

    fn push(&mut self, e: Entry) -> (u8, bool) {
        let saved = (self.polarity, self.special);
        if e.special {
            self.special = true;
        } else if e.polarity != 0 {
            self.polarity = e.polarity;
        }
        self.non_cycles += 1;
        self.chosen.push(e);
        saved
    }

    fn pop(&mut self, saved: (u8, bool)) {
        self.chosen.pop();
        self.non_cycles -= 1;
        (self.polarity, self.special) = saved;
    }

    fn sticks(&mut self, start: usize, remaining: usize) {
        self.cycles(0, remaining);
        let pool = &self.pools.sticks;
        let end = pool.first_with_size_at_least(remaining + 1);
        for i in start..end {
            let e = pool.entries[i];
            if !self.accepts(&e) {
                continue;
            }
            let saved = self.push(e);
            self.sticks(i, remaining - e.size);
            self.pop(saved);
        }
    }

    fn cycles(&mut self, start: usize, remaining: usize) {
        if remaining == 0 {
            (self.visit)(&self.chosen);
            return;
        }
        let pool = &self.pools.cycles;
        // the next cycle either fills `remaining` exactly or leaves room
        // for another cycle at least as large
        let half_end = pool.first_with_size_at_least(remaining / 2 + 1);
        for i in start..half_end {
            let e = pool.entries[i];
            self.chosen.push(e);
            self.cycles(i, remaining - e.size);
            self.chosen.pop();
        }
        let exact = pool
            .first_with_size_at_least(remaining)
            .max(start)
            .max(half_end);
        let exact_end = pool.first_with_size_at_least(remaining + 1);
        for i in exact..exact_end {
            self.chosen.push(pool.entries[i]);
            (self.visit)(&self.chosen);
            self.chosen.pop();
        }
    }
}

/// One independent slice of the search: a fixed Head (odd `n`) or a fixed
/// first Stick choice (even `n`; `None` means no Sticks at all).
#[derive(Clone, Copy, Debug)]
enum Partition {
    Head(usize),
    NoSticks,
    FirstStick(usize),
}

fn partitions(n: usize, pools: &Pools) -> Vec<Partition> {
    if n % 2 == 1 {
        let end = pools.heads.first_with_size_at_least(n + 1);
        (0..end).map(Partition::Head).collect()
    } else {
        let end = pools.sticks.first_with_size_at_least(n + 1);
        std::iter::once(Partition::NoSticks)
            .chain((0..end).map(Partition::FirstStick))
            .collect()
    }
}

fn run_partition<F: FnMut(&[Entry])>(
    n: usize,
    variant: GrammarVariant,
    pools: &Pools,
    part: Partition,
    visit: F,
) {
    let mut w = Walker {
        pools,
        saturated: variant.saturated(),
        chosen: Vec::new(),
        polarity: 0,
        special: false,
        non_cycles: 0,
        visit,
    };
    match part {
        Partition::Head(i) => {
            let e = pools.heads.entries[i];
            w.push(e);
            w.sticks(0, n - e.size);
        }
        Partition::NoSticks => w.cycles(0, n),
        Partition::FirstStick(i) => {
            let e = pools.sticks.entries[i];
            w.push(e);
            w.sticks(i, n - e.size);
        }
    }
}

/// Whether a chosen multiset survives the reflection filter: it is kept when
/// it is not larger than its reflection in sentence order.
fn keep_under_reflection(chosen: &[Entry], keys: &mut Vec<u128>, refl: &mut Vec<u128>) -> bool {
    keys.clear();
    refl.clear();
    keys.extend(chosen.iter().map(|e| e.key));
    refl.extend(chosen.iter().map(|e| e.reflect_key));
    keys.sort_unstable();
    refl.sort_unstable();
    keys <= refl
}

fn to_sentence(chosen: &[Entry]) -> Sentence {
    let mut words: Vec<Word> = chosen.iter().map(|e| e.word).collect();
    words.sort();
    Sentence::from_sorted_unchecked(words)
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("cannot start worker pool: {e}")))
}

/// The canonical sentences of one variant on `n` channels, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassStream {
    pub n: usize,
    pub variant: GrammarVariant,
    items: Vec<Sentence>,
}

impl ClassStream {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sentence> {
        self.items.iter()
    }

    pub fn into_vec(self) -> Vec<Sentence> {
        self.items
    }

    pub fn as_slice(&self) -> &[Sentence] {
        &self.items
    }
}

impl<'a> IntoIterator for &'a ClassStream {
    type Item = &'a Sentence;
    type IntoIter = std::slice::Iter<'a, Sentence>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// Generates every class of `variant` on `n` channels exactly once, sorted.
pub fn generate_classes(n: usize, variant: GrammarVariant) -> Result<ClassStream> {
    generate_classes_with_jobs(n, variant, 1)
}

/// As [`generate_classes`], spreading partitions over `jobs` worker threads.
/// The result does not depend on `jobs`.
pub fn generate_classes_with_jobs(
    n: usize,
    variant: GrammarVariant,
    jobs: usize,
) -> Result<ClassStream> {
    check_n(n)?;
    let pools = Pools::new(n, variant);
    let parts = partitions(n, &pools);
    let reflect = variant == GrammarVariant::SaturatedModuloReflection;
    let collect_part = |part: &Partition| {
        let mut out = Vec::new();
        let (mut keys, mut refl) = (Vec::new(), Vec::new());
        run_partition(n, variant, &pools, *part, |chosen| {
            if !reflect || keep_under_reflection(chosen, &mut keys, &mut refl) {
                out.push(to_sentence(chosen));
            }
        });
        out
    };
    let chunks: Vec<Vec<Sentence>> = if jobs <= 1 {
        parts.iter().map(collect_part).collect()
    } else {
        thread_pool(jobs)?.install(|| parts.par_iter().map(collect_part).collect())
    };
    let mut items: Vec<Sentence> = chunks.into_iter().flatten().collect();
    items.sort_unstable();
    Ok(ClassStream { n, variant, items })
}

/// Number of classes, without building sentences.
pub fn count_classes(n: usize, variant: GrammarVariant) -> Result<u64> {
    count_classes_with_jobs(n, variant, 1)
}

pub fn count_classes_with_jobs(n: usize, variant: GrammarVariant, jobs: usize) -> Result<u64> {
    count_matching(n, variant, jobs, |_| true)
}

/// Number of classes containing the word `word` (e.g. the doubled pair `1`,
/// which marks redundant networks).
pub fn count_classes_containing(n: usize, variant: GrammarVariant, word: &Word) -> Result<u64> {
    let target = word.sort_key();
    count_matching(n, variant, 1, |chosen| {
        chosen.iter().any(|e| e.key == target)
    })
}

fn count_matching(
    n: usize,
    variant: GrammarVariant,
    jobs: usize,
    pred: impl Fn(&[Entry]) -> bool + Sync,
) -> Result<u64> {
    check_n(n)?;
    let pools = Pools::new(n, variant);
    let parts = partitions(n, &pools);
    let reflect = variant == GrammarVariant::SaturatedModuloReflection;
    let count_part = |part: &Partition| {
        let mut count = 0u64;
        let (mut keys, mut refl) = (Vec::new(), Vec::new());
        run_partition(n, variant, &pools, *part, |chosen| {
            if (!reflect || keep_under_reflection(chosen, &mut keys, &mut refl)) && pred(chosen) {
                count += 1;
            }
        });
        count
    };
    Ok(if jobs <= 1 {
        parts.iter().map(count_part).sum()
    } else {
        thread_pool(jobs)?.install(|| parts.par_iter().map(count_part).sum())
    })
}

/// The class of the reflected network: every word reflected, re-sorted.
pub fn reflect_sentence(s: &Sentence) -> Sentence {
    let mut words: Vec<Word> = s.words().iter().map(reflect_word).collect();
    words.sort();
    Sentence::from_sorted_unchecked(words)
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::one(), |acc, x| acc * x)
}

/// Number of labeled second layers over `F_n` whose sentence is `s`.
///
/// Classes are orbits of the permutations of the `floor(n/2)` first-layer
/// comparators, so the orbit size is `floor(n/2)!` over the stabilizer order:
/// the product of `multiplicity!` over repeated words times the
/// self-symmetries of every component.
pub fn orbit_size(s: &Sentence, n: usize) -> Result<BigUint> {
    if s.channels() != n {
        return Err(Error::InvalidArgument(format!(
            "sentence {s} occupies {} channels, not {n}",
            s.channels()
        )));
    }
    let mut stabilizer = BigUint::one();
    let words = s.words();
    let mut i = 0;
    while i < words.len() {
        let mut j = i;
        while j < words.len() && words[j] == words[i] {
            stabilizer *= words[j].self_symmetries();
            j += 1;
        }
        stabilizer *= factorial(j - i);
        i = j;
    }
    Ok(factorial(n / 2) / stabilizer)
}

/// Sum of orbit sizes over the classes of `variant`: `|G_n|` for the full
/// grammar, `|S_n|` for the saturated one.
pub fn labeled_count(n: usize, variant: GrammarVariant, jobs: usize) -> Result<BigUint> {
    if variant == GrammarVariant::SaturatedModuloReflection {
        return Err(Error::InvalidArgument(
            "labeled counts are defined for RG and RS only".into(),
        ));
    }
    let classes = generate_classes_with_jobs(n, variant, jobs)?;
    let mut total = BigUint::default();
    for s in &classes {
        total += orbit_size(s, n)?;
    }
    Ok(total)
}
