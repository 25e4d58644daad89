//! Structural checks every compiled automaton should pass.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::automaton::{bag_includes, Automaton};
use crate::search::{reachable, Bounds};

/// At most one `delOdd` target per source state and letter.
pub fn check_oa(aut: &Automaton) -> bool {
    let mut seen = BTreeMap::new();
    aut.del_odd.iter().all(|t| *seen.entry((t.source, &t.letter)).or_insert(t.target) == t.target)
}

/// At most one `addOdd` source per letter and target state.
pub fn check_pq(aut: &Automaton) -> bool {
    let mut seen = BTreeMap::new();
    aut.add_odd.iter().all(|t| *seen.entry((&t.letter, t.target)).or_insert(t.source) == t.source)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaReport {
    pub holds: bool,
    /// Exploration stopped at a bound, so `holds` only covers what was visited.
    pub truncated: bool,
    pub counterexample: Option<String>,
}

/// Whenever a final answer's source bag fits inside the root label, the root is a
/// childless node labelled with exactly that bag.
pub fn check_fa(aut: &Automaton, bounds: Bounds) -> FaReport {
    let finals: BTreeSet<_> = aut.del_even.iter().filter(|t| t.letter.tag.is_empty()).map(|t| &t.source).collect();
    let (configs, truncated) = reachable(aut, bounds);
    for c in &configs {
        let Some(root) = c.root() else { continue };
        let Some(label) = root.bag() else { continue };
        for src in &finals {
            if bag_includes(label, src) && (root.children > 0 || label != *src) {
                let counterexample = Some(format!(
                    "root label {} contains final source {} with {} live children",
                    aut.bag_text(label),
                    aut.bag_text(src),
                    root.children
                ));
                return FaReport { holds: false, truncated, counterexample };
            }
        }
    }
    FaReport { holds: true, truncated, counterexample: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{bag, AddEven, AddOdd, DelEven, DelOdd};
    use crate::handbuilt::race_automaton;
    use crate::moves::Letter;

    fn l(s: &str) -> Letter {
        s.parse().unwrap()
    }

    fn tiny() -> Automaton {
        let mut a = Automaton::new(1);
        let [p, q, r] = ["p", "q", "r"].map(|n| a.add_state(n, 0));
        let o = a.add_state("o", 1);
        a.add_even.push(AddEven { source: None, letter: l("run"), target: bag([p, r]) });
        a.add_odd.push(AddOdd { source: p, letter: l("run^{c}"), target: o });
        a.del_odd.push(DelOdd { source: o, letter: l("done^{c}"), target: q });
        a.del_even.push(DelEven { source: bag([r]), letter: l("done") });
        a.normalize();
        a
    }

    #[test]
    fn race_automaton_is_deterministic_where_required() {
        let a = race_automaton(1);
        assert!(check_oa(&a) && check_pq(&a));
        assert!(check_fa(&a, Bounds::new(8, 1)).holds);
    }

    #[test]
    fn two_answer_targets_break_oa() {
        let mut a = tiny();
        assert!(check_oa(&a));
        let (o, p) = (a.state_named("o").unwrap(), a.state_named("p").unwrap());
        a.del_odd.push(DelOdd { source: o, letter: l("done^{c}"), target: p });
        assert!(!check_oa(&a));
    }

    #[test]
    fn two_question_sources_break_pq() {
        let mut a = tiny();
        assert!(check_pq(&a));
        let (q, o) = (a.state_named("q").unwrap(), a.state_named("o").unwrap());
        a.add_odd.push(AddOdd { source: q, letter: l("run^{c}"), target: o });
        assert!(!check_pq(&a));
    }

    #[test]
    fn premature_final_answer_breaks_fa() {
        let r = check_fa(&tiny(), Bounds::new(6, 1));
        assert!(!r.holds);
        assert!(r.counterexample.unwrap().contains("{r}"));
    }
}
