//! Justified sequences, legality (FORK and WAIT), completeness and the swap preorder.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::moves::Letter;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayMove {
    pub letter: Letter,
    pub justifier: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Play {
    pub moves: Vec<PlayMove>,
}

impl Play {
    /// Builds a play from `(letter text, justifier)` pairs.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, Option<usize>)>) -> Self {
        Self {
            moves: pairs
                .into_iter()
                .map(|(l, j)| PlayMove { letter: l.parse().expect("valid letter"), justifier: j })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

impl fmt::Display for Play {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.moves.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match m.justifier {
                Some(j) => write!(f, "{}->{}", m.letter, j)?,
                None => write!(f, "{}", m.letter)?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("position {0}: the justifier datum was never introduced")]
    DanglingJustifier(usize),
    #[error("position {0}: a question reuses an already introduced datum")]
    RepeatedQuestionDatum(usize),
}

/// Reads justification pointers off the data: answers point at the question that
/// introduced their datum, a question with index `rho` at the introducer of `pred^(rho+1)`.
pub fn decode(word: &Word) -> Result<Play, DecodeError> {
    let mut moves = Vec::with_capacity(word.len());
    for (k, e) in word.entries.iter().enumerate() {
        let justifier = if e.letter.is_question() {
            if e.datum != k {
                return Err(DecodeError::RepeatedQuestionDatum(k));
            }
            let mut cur = Some(k);
            for _ in 0..=e.letter.rho {
                cur = match cur {
                    Some(c) => word.datum_parent(c),
                    None => return Err(DecodeError::DanglingJustifier(k)),
                };
            }
            cur
        } else {
            if e.datum >= k {
                return Err(DecodeError::DanglingJustifier(k));
            }
            Some(e.datum)
        };
        moves.push(PlayMove { letter: e.letter.clone(), justifier });
    }
    Ok(Play { moves })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("prefix of length {prefix}: {reason}")]
pub struct PlayViolation {
    pub prefix: usize,
    pub reason: String,
}

/// Checks justification, FORK and WAIT, naming the first offending prefix.
pub fn check_play_diag(play: &Play) -> Result<(), PlayViolation> {
    let n = play.len();
    let mut answered = vec![false; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, m) in play.moves.iter().enumerate() {
        let fail = |reason: String| Err(PlayViolation { prefix: i + 1, reason });
        match m.justifier {
            None => {
                if i != 0 {
                    return fail(format!("`{}` has no justifier", m.letter));
                }
                if !m.letter.is_initial() {
                    return fail(format!("`{}` is not an initial move", m.letter));
                }
            }
            Some(j) => {
                if j >= i {
                    return fail(format!("`{}` points forward", m.letter));
                }
                let q = &play.moves[j].letter;
                if !q.enables(&m.letter) {
                    return fail(format!("`{q}` does not enable `{}`", m.letter));
                }
                if answered[j] {
                    return fail(format!("FORK: `{q}` at {j} is no longer pending"));
                }
                if m.letter.is_question() {
                    children[j].push(i);
                } else {
                    if let Some(&open) = children[j].iter().find(|&&c| !answered[c]) {
                        return fail(format!("WAIT: question at {open} is still pending"));
                    }
                    answered[j] = true;
                }
            }
        }
    }
    Ok(())
}

pub fn check_play(play: &Play) -> bool {
    check_play_diag(play).is_ok()
}

/// Every question has been answered.
pub fn is_complete(play: &Play) -> bool {
    let answered: BTreeSet<usize> = play
        .moves
        .iter()
        .filter(|m| !m.letter.is_question())
        .filter_map(|m| m.justifier)
        .collect();
    play.moves
        .iter()
        .enumerate()
        .all(|(i, m)| !m.letter.is_question() || answered.contains(&i))
}

fn swap_adjacent(play: &Play, i: usize) -> Play {
    let perm = |k: usize| {
        if k == i {
            i + 1
        } else if k == i + 1 {
            i
        } else {
            k
        }
    };
    let mut moves = play.moves.clone();
    moves.swap(i, i + 1);
    for m in &mut moves {
        m.justifier = m.justifier.map(perm);
    }
    Play { moves }
}

/// Plays one step below `play` in the swap preorder: an O-move moves left or a P-move moves right.
pub fn swap_successors(play: &Play) -> BTreeSet<Play> {
    let mut out = BTreeSet::new();
    for i in 0..play.len().saturating_sub(1) {
        let (m1, m2) = (&play.moves[i].letter, &play.moves[i + 1].letter);
        if m2.polarity().is_o() || m1.polarity().is_p() {
            let s = swap_adjacent(play, i);
            if check_play(&s) {
                out.insert(s);
            }
        }
    }
    out
}

/// Transitive closure of [`swap_successors`], including `play` itself.
pub fn swap_closure(play: &Play) -> BTreeSet<Play> {
    let mut seen = BTreeSet::from([play.clone()]);
    let mut todo = vec![play.clone()];
    while let Some(p) = todo.pop() {
        for s in swap_successors(&p) {
            if seen.insert(s.clone()) {
                todo.push(s);
            }
        }
    }
    seen
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn decodes_the_race_word() {
        let w: Word = "(q,0) (run^{f},1<0) (run^{f.1},2<1) (done^{f.1},2) (run^{c},4<0) \
                       (done^{c},4) (done^{f},1) (1,0)"
            .parse()
            .unwrap();
        assert_eq!(decode(&w).unwrap(), s2());
    }

    #[test]
    fn decodes_skip() {
        let w: Word = "(run,0) (done,0)".parse().unwrap();
        let p = decode(&w).unwrap();
        assert_eq!(p, Play::from_pairs([("run", None), ("done", Some(0))]));
        assert!(check_play(&p) && is_complete(&p));
    }

    #[test]
    fn decodes_a_raised_pointer() {
        let w: Word = "(q,0) (run^{f},1<0) (run^{f.1},2<1) (run^{c,2},3<2)".parse().unwrap();
        let p = decode(&w).unwrap();
        assert_eq!(p.moves[3].justifier, Some(0));
        assert!(check_play(&p));
    }

    #[test]
    fn decode_errors() {
        let w: Word = "(run^{c,3},0)".parse().unwrap();
        assert_eq!(decode(&w), Err(DecodeError::DanglingJustifier(0)));
        let bad = Word {
            entries: vec![
                crate::word::WordEntry { letter: "run".parse().unwrap(), datum: 0, parent: None },
                crate::word::WordEntry { letter: "run^{c}".parse().unwrap(), datum: 0, parent: None },
            ],
        };
        assert_eq!(decode(&bad), Err(DecodeError::RepeatedQuestionDatum(1)));
    }

    #[test]
    fn legality() {
        assert!(check_play(&s1()));
        assert!(check_play(&s2()));
        assert!(check_play(&s3()));
        let wrong = Play::from_pairs([("q", None), ("run^{f}", Some(0)), ("done^{f}", Some(0))]);
        assert!(!check_play(&wrong));
        let early = Play::from_pairs([
            ("run", None),
            ("run^{1}", Some(0)),
            ("done", Some(0)),
        ]);
        let err = check_play_diag(&early).unwrap_err();
        assert_eq!(err.prefix, 3);
        assert!(err.reason.starts_with("WAIT"));
    }

    #[test]
    fn completeness() {
        assert!(is_complete(&s2()));
        assert!(!is_complete(&s1()));
        assert!(is_complete(&Play::default()));
    }

    #[test]
    fn swap_preorder_examples() {
        assert!(swap_closure(&s4()).contains(&s5()));
        assert!(swap_closure(&s2()).contains(&s3()));
        assert!(!swap_closure(&s3()).contains(&s2()));
    }

    #[test]
    fn swaps_never_move_p_left_past_o() {
        for p in [s2(), s3(), s4(), s5()] {
            for s in swap_successors(&p) {
                let i = (0..p.len()).find(|&i| p.moves[i].letter != s.moves[i].letter).unwrap();
                let (a, b) = (&p.moves[i].letter, &p.moves[i + 1].letter);
                assert!(!(a.polarity().is_o() && b.polarity().is_p()));
            }
        }
    }
}
