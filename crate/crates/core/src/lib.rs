//! Two-layer comparator-network prefixes modulo permutation and reflection.
//!
//! A two-layer network with first layer `F_n` is named by a sentence: one
//! canonical word per connected component of its layers. Two networks are
//! equivalent exactly when their sentences coincide, which lets
//! [`generator`] enumerate one network per class directly.

pub mod cli;
pub mod counting;
pub mod crosscheck;
pub mod error;
pub mod generator;
pub mod network;
pub mod oracle;
pub mod saturation;
pub mod word;

pub use error::{Error, Result};
pub use generator::{count_classes, generate_classes, GrammarVariant};
pub use network::{Comparator, Layer, Network, OutputSet, Permutation};
pub use word::{Sentence, Word, WordKind};
