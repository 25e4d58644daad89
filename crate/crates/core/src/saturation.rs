//! Closure of word sets under the allowed swaps of adjacent letters on independent data.

use std::collections::BTreeSet;
use std::fmt;

use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub word: Word,
    /// The swap exchanges positions `position` and `position + 1`.
    pub position: usize,
    pub missing: Word,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "swap at {} of `{}` gives `{}`, which is absent", self.position, self.word, self.missing)
    }
}

/// Whether positions `i` and `i + 1` of `w` may be exchanged.
pub fn swappable(w: &Word, i: usize) -> bool {
    let (t1, t2) = (&w.entries[i].letter, &w.entries[i + 1].letter);
    w.independent_at(i, i + 1) && (t1.polarity().is_p() || t2.polarity().is_o())
}

/// Every allowed one-swap variant of `w`.
pub fn swap_variants(w: &Word) -> Vec<(usize, Word)> {
    (0..w.len().saturating_sub(1)).filter(|&i| swappable(w, i)).map(|i| (i, w.swapped(i))).collect()
}

/// Lists each word of `words` whose allowed swap leaves the set.
pub fn check_saturated(words: &BTreeSet<Word>) -> Vec<Violation> {
    let mut out = Vec::new();
    for w in words {
        for (position, missing) in swap_variants(w) {
            if !words.contains(&missing) {
                out.push(Violation { word: w.clone(), position, missing });
            }
        }
    }
    out
}

/// Smallest superset of `words` closed under allowed swaps.
pub fn saturate(words: &BTreeSet<Word>) -> BTreeSet<Word> {
    let mut out = words.clone();
    let mut todo: Vec<Word> = words.iter().cloned().collect();
    while let Some(w) = todo.pop() {
        for (_, v) in swap_variants(&w) {
            if out.insert(v.clone()) {
                todo.push(v);
            }
        }
    }
    out
}
