//! Canonical data words: each datum is named by the position of the question that introduced it.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::forest::DataValue;
use crate::moves::{Letter, LetterError};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordEntry {
    pub letter: Letter,
    /// Position of the question that introduced the datum.
    pub datum: usize,
    /// For a non-root question, the position introducing the parent datum.
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub entries: Vec<WordEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error(transparent)]
    Letter(#[from] LetterError),
    #[error("malformed entry `{0}`")]
    Entry(String),
    #[error("entry {0} breaks the canonical naming discipline: {1}")]
    Discipline(usize, String),
}

impl Word {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.entries.iter().map(|e| &e.letter)
    }

    /// Appends a question introducing a fresh datum below `parent`.
    pub fn push_question(&mut self, letter: Letter, parent: Option<usize>) {
        let k = self.entries.len();
        self.entries.push(WordEntry { letter, datum: k, parent });
    }

    pub fn push_answer(&mut self, letter: Letter, datum: usize) {
        self.entries.push(WordEntry { letter, datum, parent: None });
    }

    /// Parent datum (as an introducing position) of the datum introduced at `k`.
    pub fn datum_parent(&self, k: usize) -> Option<usize> {
        self.entries[k].parent
    }

    pub fn datum_level(&self, k: usize) -> u32 {
        let mut level = 0;
        let mut cur = k;
        while let Some(p) = self.datum_parent(cur) {
            level += 1;
            cur = p;
        }
        level
    }

    fn is_ancestor_or_self(&self, a: usize, mut d: usize) -> bool {
        loop {
            if a == d {
                return true;
            }
            match self.datum_parent(d) {
                Some(p) => d = p,
                None => return false,
            }
        }
    }

    /// Independence of the data carried at positions `i` and `j`.
    pub fn independent_at(&self, i: usize, j: usize) -> bool {
        let (a, b) = (self.entries[i].datum, self.entries[j].datum);
        !self.is_ancestor_or_self(a, b) && !self.is_ancestor_or_self(b, a)
    }

    /// The data of the word as forest values; ids are introducing positions.
    pub fn forest_values(&self) -> Vec<DataValue> {
        let mut out: Vec<Option<DataValue>> = vec![None; self.len()];
        for (k, e) in self.entries.iter().enumerate() {
            if e.datum == k {
                out[k] = Some(match e.parent {
                    None => DataValue::root(k as u32),
                    Some(p) => DataValue::child(k as u32, &out[p].expect("parent introduced earlier")),
                });
            }
        }
        self.entries.iter().map(|e| out[e.datum].expect("datum introduced")).collect()
    }

    /// Swaps positions `i` and `i + 1` and renames data to stay canonical.
    pub fn swapped(&self, i: usize) -> Word {
        let perm = |k: usize| {
            if k == i {
                i + 1
            } else if k == i + 1 {
                i
            } else {
                k
            }
        };
        let mut entries = self.entries.clone();
        entries.swap(i, i + 1);
        for e in &mut entries {
            e.datum = perm(e.datum);
            e.parent = e.parent.map(perm);
        }
        Word { entries }
    }

    /// Checks the canonical naming discipline and the two-occurrence rule.
    pub fn validate(&self) -> Result<(), WordError> {
        let mut answered = vec![false; self.len()];
        for (k, e) in self.entries.iter().enumerate() {
            let bad = |m: &str| Err(WordError::Discipline(k, m.to_string()));
            if e.letter.is_question() {
                if e.datum != k {
                    return bad("a question must introduce a fresh datum");
                }
                if let Some(p) = e.parent {
                    if p >= k || !self.entries[p].letter.is_question() || self.entries[p].datum != p {
                        return bad("parent must be an earlier question");
                    }
                }
            } else {
                if e.parent.is_some() {
                    return bad("answers carry no parent");
                }
                if e.datum >= k || self.entries[e.datum].datum != e.datum {
                    return bad("an answer must reuse an introduced datum");
                }
                if !self.entries[e.datum].letter.is_question() {
                    return bad("an answer must reuse a question's datum");
                }
                if answered[e.datum] {
                    return bad("a datum occurs at most twice");
                }
                answered[e.datum] = true;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match e.parent {
                Some(p) => write!(f, "({},{}<{})", e.letter, e.datum, p)?,
                None => write!(f, "({},{})", e.letter, e.datum)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Reads `(letter,k)` and `(letter,k<p)` entries separated by whitespace.
    fn from_str(s: &str) -> Result<Self, WordError> {
        let mut entries = Vec::new();
        for raw in s.split_whitespace() {
            let inner = raw
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| WordError::Entry(raw.to_string()))?;
            let (letter_txt, data_txt) =
                inner.rsplit_once(',').ok_or_else(|| WordError::Entry(raw.to_string()))?;
            let letter: Letter = letter_txt.parse()?;
            let num = |t: &str| t.parse::<usize>().map_err(|_| WordError::Entry(raw.to_string()));
            let (datum, parent) = match data_txt.split_once('<') {
                Some((d, p)) => (num(d)?, Some(num(p)?)),
                None => (num(data_txt)?, None),
            };
            entries.push(WordEntry { letter, datum, parent });
        }
        let w = Word { entries };
        w.validate()?;
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const RACE_WORD: &str = "(q,0) (run^{f},1<0) (run^{f.1},2<1) (done^{f.1},2) \
        (run^{c},4<0) (done^{c},4) (done^{f},1) (1,0)";

    #[test]
    fn parse_and_print() {
        let w: Word = RACE_WORD.parse().unwrap();
        assert_eq!(w.len(), 8);
        assert_eq!(w.to_string(), RACE_WORD.split_whitespace().collect::<Vec<_>>().join(" "));
        assert!(w.independent_at(1, 4));
        assert!(!w.independent_at(0, 2));
        assert_eq!(w.datum_level(2), 2);
    }

    #[test]
    fn rejects_broken_naming() {
        assert!("(run,0) (done,1)".parse::<Word>().is_err());
        assert!("(run,0) (done,0) (done,0)".parse::<Word>().is_err());
        assert!("(run,1)".parse::<Word>().is_err());
    }

    #[test]
    fn swapping_renames_data() {
        let w: Word = "(run,0) (run^{1},1<0) (run^{2},2<0) (done^{1},1) (done^{2},2) (done,0)"
            .parse()
            .unwrap();
        let s = w.swapped(2);
        assert_eq!(
            s.to_string(),
            "(run,0) (run^{1},1<0) (done^{1},1) (run^{2},3<0) (done^{2},3) (done,0)"
        );
        assert!(s.validate().is_ok());
    }

    #[test]
    fn forest_values_follow_parents() {
        let w: Word = RACE_WORD.parse().unwrap();
        let vals = w.forest_values();
        assert_eq!(vals[2].level, 2);
        assert_eq!(vals[3], vals[2]);
        assert_eq!(vals[4].parent, Some(0));
        assert_eq!(vals[1].parent, vals[4].parent);
    }
}
