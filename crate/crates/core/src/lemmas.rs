//! Executable commutation properties of configurations.
//!
//! Each [`Lemma`] names a pattern of two consecutive steps and the reordered
//! pattern that must reach the same configuration.

use crate::automaton::{Automaton, RuleIndex};
use crate::config::{Configuration, Instance};
use crate::forest::DataValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lemma {
    /// A silent step followed by an O-step can run the other way round.
    EpsO,
    /// A P-step followed by a silent step can run the other way round.
    PEps,
    /// Two labelled steps on independent data, the first a P-step or the second an O-step.
    Swap,
}

impl Lemma {
    pub const ALL: [Lemma; 3] = [Lemma::EpsO, Lemma::PEps, Lemma::Swap];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::EpsO => "eps-O",
            Lemma::PEps => "P-eps",
            Lemma::Swap => "independent swap",
        }
    }
}

fn fresh_after(c: &Configuration, taken: u32) -> u32 {
    c.seen.iter().map(|d| d.id + 1).max().unwrap_or(0).max(taken)
}

fn is_o(aut: &Automaton, i: &Instance) -> bool {
    aut.letter_of(i.rule).is_some_and(|l| l.polarity().is_o())
}

fn is_p(aut: &Automaton, i: &Instance) -> bool {
    aut.letter_of(i.rule).is_some_and(|l| l.polarity().is_p())
}

fn independent(c: &Configuration, a: &DataValue, b: &DataValue) -> bool {
    let ancestor = |x: &DataValue, y: &DataValue| {
        let mut cur = Some(*y);
        while let Some(v) = cur {
            if v.id == x.id {
                return true;
            }
            cur = v.parent.and_then(|p| c.seen.iter().find(|d| d.id == p).copied());
        }
        false
    };
    !ancestor(a, b) && !ancestor(b, a)
}

fn labelled_from(c: &Configuration, ix: &RuleIndex, taken: u32) -> Vec<Instance> {
    c.labelled_instances(ix, fresh_after(c, taken))
}

/// Every step pair from `c` that matches the premise of `lemma`.
pub fn premises(aut: &Automaton, ix: &RuleIndex, c: &Configuration, lemma: Lemma) -> Vec<(Instance, Instance)> {
    let mut out = Vec::new();
    let firsts = match lemma {
        Lemma::EpsO => c.eps_instances(aut, ix),
        Lemma::PEps | Lemma::Swap => labelled_from(c, ix, 0),
    };
    for first in firsts {
        if lemma == Lemma::PEps && !is_p(aut, &first) {
            continue;
        }
        let Ok(mid) = c.fire(aut, &first) else { continue };
        let seconds = match lemma {
            Lemma::PEps => mid.eps_instances(aut, ix),
            Lemma::EpsO | Lemma::Swap => labelled_from(&mid, ix, first.datum.id + 1),
        };
        for second in seconds {
            let ok = match lemma {
                Lemma::EpsO => is_o(aut, &second),
                Lemma::PEps => true,
                Lemma::Swap => {
                    (is_p(aut, &first) || is_o(aut, &second))
                        && independent(&mid, &first.datum, &second.datum)
                }
            };
            if ok {
                out.push((first, second));
            }
        }
    }
    out
}

/// Whether the reordered pattern from `c` reaches the same configuration as `first` then `second`.
pub fn commutes(aut: &Automaton, ix: &RuleIndex, c: &Configuration, lemma: Lemma, first: Instance, second: Instance) -> bool {
    let Ok(target) = c.fire(aut, &first).and_then(|m| m.fire(aut, &second)) else {
        return false;
    };
    match lemma {
        Lemma::EpsO | Lemma::Swap => {
            let Ok(mid) = c.fire(aut, &second) else { return false };
            if lemma == Lemma::Swap {
                return mid.fire(aut, &first).is_ok_and(|end| end == target);
            }
            mid.eps_instances(aut, ix).iter().any(|e| mid.fire(aut, e).is_ok_and(|end| end == target))
        }
        Lemma::PEps => c
            .eps_instances(aut, ix)
            .iter()
            .filter_map(|e| c.fire(aut, e).ok())
            .any(|mid| mid.fire(aut, &first).is_ok_and(|end| end == target)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::handbuilt::race_automaton;
    use crate::search::{reachable, Bounds};

    #[test]
    fn every_premise_on_the_race_automaton_commutes() {
        let a = race_automaton(1);
        let ix = a.index();
        let (configs, _) = reachable(&a, Bounds::new(8, 1));
        let mut seen = [0usize; 3];
        for c in &configs {
            for (k, lemma) in Lemma::ALL.into_iter().enumerate() {
                for (x, y) in premises(&a, &ix, c, lemma) {
                    assert!(commutes(&a, &ix, c, lemma, x, y), "{} fails", lemma.name());
                    seen[k] += 1;
                }
            }
        }
        assert!(seen.iter().all(|&n| n > 0), "{seen:?}");
    }

    #[test]
    fn o_then_eps_need_not_commute() {
        // The silent step may depend on the state the O-answer just produced.
        let a = race_automaton(1);
        let ix = a.index();
        let (configs, _) = reachable(&a, Bounds::new(8, 1));
        let reversed = configs.iter().any(|c| {
            labelled_from(c, &ix, 0).into_iter().filter(|i| is_o(&a, i)).any(|o| {
                let mid = c.fire(&a, &o).unwrap();
                mid.eps_instances(&a, &ix).into_iter().any(|e| {
                    let end = mid.fire(&a, &e).unwrap();
                    !c.eps_instances(&a, &ix)
                        .iter()
                        .filter_map(|e2| c.fire(&a, e2).ok())
                        .any(|m2| m2.fire(&a, &o).is_ok_and(|x| x == end))
                })
            })
        });
        assert!(reversed);
    }
}
