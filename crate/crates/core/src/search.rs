//! Bounded enumeration of traces and accepted words, membership, and reachable configurations.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::automaton::{Automaton, Rule, RuleIndex};
use crate::config::{Configuration, Instance};
use crate::word::{Word, WordEntry};

/// Caps on enumeration. `max_copies` limits ADD firings below odd states per
/// (parent node, letter); `max_eps_chain` limits ε-steps between letters (`None`: unlimited, memoised).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    #[serde(rename = "maxWordLen")]
    pub max_word_len: usize,
    #[serde(rename = "maxCopies")]
    pub max_copies: usize,
    #[serde(rename = "maxEpsChain")]
    pub max_eps_chain: Option<usize>,
}

impl Bounds {
    pub fn new(max_word_len: usize, max_copies: usize) -> Self {
        Self { max_word_len, max_copies, max_eps_chain: None }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Self::new(12, 2)
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "maxWordLen={} maxCopies={} maxEpsChain=", self.max_word_len, self.max_copies)?;
        match self.max_eps_chain {
            Some(n) => write!(f, "{n}"),
            None => f.write_str("unlimited"),
        }
    }
}

/// Result of a bounded sweep.
#[derive(Clone, Debug, Default)]
pub struct Exploration {
    pub traces: BTreeSet<Word>,
    pub language: BTreeSet<Word>,
    /// Some run was cut short by a bound.
    pub truncated: bool,
}

type ConfigSet = BTreeSet<Configuration>;

/// An automaton prepared for search.
pub struct Runner<'a> {
    pub aut: &'a Automaton,
    ix: RuleIndex,
    bounds: Bounds,
}

impl<'a> Runner<'a> {
    pub fn new(aut: &'a Automaton, bounds: Bounds) -> Self {
        Self { aut, ix: aut.index(), bounds }
    }

    pub fn index(&self) -> &RuleIndex {
        &self.ix
    }

    /// Closes a set under ε-steps; reports whether the chain cap cut anything off.
    pub fn eps_closure(&self, start: ConfigSet) -> (ConfigSet, bool) {
        let mut seen: ConfigSet = start.clone();
        let mut queue: VecDeque<(Configuration, usize)> = start.into_iter().map(|c| (c, 0)).collect();
        let mut cut = false;
        while let Some((c, depth)) = queue.pop_front() {
            let insts = c.eps_instances(self.aut, &self.ix);
            if self.bounds.max_eps_chain.is_some_and(|m| depth >= m) {
                cut |= !insts.is_empty();
                continue;
            }
            for inst in insts {
                let next = c.fire(self.aut, &inst).expect("enumerated instances are enabled");
                if seen.insert(next.clone()) {
                    queue.push_back((next, depth + 1));
                }
            }
        }
        (seen, cut)
    }

    fn entry_for(&self, word: &Word, inst: &Instance) -> WordEntry {
        entry_of(self.aut, word.len(), inst)
    }

    fn over_copy_cap(&self, word: &Word, e: &WordEntry, rule: Rule) -> bool {
        let Rule::AddEven(i) = rule else { return false };
        if self.aut.add_even[i].source.is_none() {
            return false;
        }
        let used = word
            .entries
            .iter()
            .filter(|x| x.parent == e.parent && x.letter == e.letter)
            .count();
        used >= self.bounds.max_copies
    }

    /// One labelled step from every configuration in `set`, grouped by the word entry read.
    pub fn successors(&self, word: &Word, set: &ConfigSet) -> (BTreeMap<WordEntry, ConfigSet>, bool) {
        let mut out: BTreeMap<WordEntry, ConfigSet> = BTreeMap::new();
        let mut capped = false;
        let fresh = word.len() as u32;
        for c in set {
            for inst in c.labelled_instances(&self.ix, fresh) {
                let e = self.entry_for(word, &inst);
                if self.over_copy_cap(word, &e, inst.rule) {
                    capped = true;
                    continue;
                }
                let next = c.fire(self.aut, &inst).expect("enumerated instances are enabled");
                out.entry(e).or_default().insert(next);
            }
        }
        (out, capped)
    }

    /// Visits every bounded trace with its ε-closed set of configurations.
    pub fn explore(&self, mut visit: impl FnMut(&Word, &ConfigSet)) -> bool {
        let (start, mut truncated) = self.eps_closure(BTreeSet::from([Configuration::empty()]));
        let mut layer: Vec<(Word, ConfigSet)> = vec![(Word::new(), start)];
        for len in 0..=self.bounds.max_word_len {
            let mut next_layer = Vec::new();
            for (w, set) in &layer {
                visit(w, set);
                let (succ, capped) = self.successors(w, set);
                truncated |= capped;
                if len == self.bounds.max_word_len {
                    truncated |= !succ.is_empty();
                    continue;
                }
                for (e, s) in succ {
                    let (closed, cut) = self.eps_closure(s);
                    truncated |= cut;
                    let mut w2 = w.clone();
                    w2.entries.push(e);
                    next_layer.push((w2, closed));
                }
            }
            layer = next_layer;
        }
        truncated
    }

    pub fn exploration(&self) -> Exploration {
        let mut ex = Exploration::default();
        ex.truncated = self.explore(|w, set| {
            ex.traces.insert(w.clone());
            if !w.is_empty() && set.iter().any(Configuration::is_accepting) {
                ex.language.insert(w.clone());
            }
        });
        ex
    }

    /// Configurations after reading `word`, or an empty set if it is not a trace.
    pub fn run_word(&self, word: &Word) -> ConfigSet {
        let (mut set, _) = self.eps_closure(BTreeSet::from([Configuration::empty()]));
        let mut prefix = Word::new();
        for e in &word.entries {
            let fresh = prefix.len() as u32;
            let mut next = ConfigSet::new();
            for c in &set {
                for inst in c.labelled_instances(&self.ix, fresh) {
                    if self.entry_for(&prefix, &inst) == *e {
                        next.insert(c.fire(self.aut, &inst).expect("enabled"));
                    }
                }
            }
            if next.is_empty() {
                return next;
            }
            set = self.eps_closure(next).0;
            prefix.entries.push(e.clone());
        }
        set
    }
}

pub fn traces(aut: &Automaton, bounds: Bounds) -> (BTreeSet<Word>, bool) {
    let ex = Runner::new(aut, bounds).exploration();
    (ex.traces, ex.truncated)
}

pub fn language(aut: &Automaton, bounds: Bounds) -> (BTreeSet<Word>, bool) {
    let ex = Runner::new(aut, bounds).exploration();
    (ex.language, ex.truncated)
}

/// Membership of a canonical word; ε-steps are unbounded and memoised.
pub fn accepts(aut: &Automaton, word: &Word) -> bool {
    if word.is_empty() {
        return false;
    }
    let bounds = Bounds { max_word_len: word.len(), max_copies: usize::MAX, max_eps_chain: None };
    Runner::new(aut, bounds).run_word(word).iter().any(Configuration::is_accepting)
}

/// Reachable configurations within the bounds, one per isomorphism class, in discovery order.
pub fn reachable(aut: &Automaton, bounds: Bounds) -> (Vec<Configuration>, bool) {
    let mut keys = HashSet::new();
    let mut out = Vec::new();
    let truncated = Runner::new(aut, bounds).explore(|_, set| {
        for c in set {
            if keys.insert(c.iso_key()) {
                out.push(c.clone());
            }
        }
    });
    (out, truncated)
}

/// One step of a concrete run; `instance` is `None` for the starting configuration.
#[derive(Clone, Debug)]
pub struct RunStep {
    pub instance: Option<Instance>,
    pub config: Configuration,
}

/// A concrete run reading `word` (ε-steps included), ending accepting when possible.
pub fn witness_run(aut: &Automaton, word: &Word) -> Option<Vec<RunStep>> {
    let ix = aut.index();
    type Key = (usize, Configuration);
    let start: Key = (0, Configuration::empty());
    let mut back: HashMap<Key, Option<(Key, Instance)>> = HashMap::new();
    back.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut best: Option<Key> = None;
    while let Some(key) = queue.pop_front() {
        let (pos, c) = &key;
        if *pos == word.len() {
            if c.is_accepting() && !word.is_empty() {
                best = Some(key.clone());
                break;
            }
            if best.is_none() {
                best = Some(key.clone());
            }
        }
        let mut moves: Vec<(usize, Instance)> =
            c.eps_instances(aut, &ix).into_iter().map(|i| (*pos, i)).collect();
        if let Some(e) = word.entries.get(*pos) {
            for inst in c.labelled_instances(&ix, *pos as u32) {
                if entry_of(aut, *pos, &inst) == *e {
                    moves.push((pos + 1, inst));
                }
            }
        }
        for (p2, inst) in moves {
            let next = (p2, c.fire(aut, &inst).expect("enabled"));
            if !back.contains_key(&next) {
                back.insert(next.clone(), Some((key.clone(), inst)));
                queue.push_back(next);
            }
        }
    }
    let mut cur = best?;
    let mut steps = Vec::new();
    loop {
        match back[&cur].clone() {
            Some((prev, inst)) => {
                steps.push(RunStep { instance: Some(inst), config: cur.1.clone() });
                cur = prev;
            }
            None => {
                steps.push(RunStep { instance: None, config: cur.1.clone() });
                break;
            }
        }
    }
    steps.reverse();
    Some(steps)
}

/// The canonical word entry read by a labelled instance after `len` letters.
pub fn entry_of(aut: &Automaton, len: usize, inst: &Instance) -> WordEntry {
    let letter = aut.letter_of(inst.rule).expect("labelled").clone();
    if letter.is_question() {
        WordEntry { letter, datum: len, parent: inst.datum.parent.map(|p| p as usize) }
    } else {
        WordEntry { letter, datum: inst.datum.id as usize, parent: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::parse_automaton;

    const SKIP: &str = "sata v1\nstates 0 s\nadd-even † --run--> {s}\ndel-even {s} --done--> †\n";
    const DIV: &str = "sata v1\nstates 0 s\nadd-even † --run--> {s}\n";

    fn words(ws: &[&str]) -> BTreeSet<Word> {
        ws.iter().map(|w| w.parse().unwrap()).collect()
    }

    #[test]
    fn no_transitions_give_only_the_empty_trace() {
        let a = parse_automaton("sata v1\n").unwrap();
        let (t, truncated) = traces(&a, Bounds::new(4, 1));
        assert_eq!(t, words(&[""]));
        assert!(!truncated);
    }

    #[test]
    fn skip_traces_and_language() {
        let a = parse_automaton(SKIP).unwrap();
        let (t, _) = traces(&a, Bounds::new(6, 1));
        assert_eq!(t, words(&["", "(run,0)", "(run,0) (done,0)"]));
        let (l, _) = language(&a, Bounds::new(6, 1));
        assert_eq!(l, words(&["(run,0) (done,0)"]));
        assert!(accepts(&a, &"(run,0) (done,0)".parse().unwrap()));
        assert!(!accepts(&a, &Word::new()));
        assert!(!accepts(&a, &"(run,0)".parse().unwrap()));
    }

    #[test]
    fn div_accepts_nothing() {
        let a = parse_automaton(DIV).unwrap();
        assert!(language(&a, Bounds::new(6, 1)).0.is_empty());
    }

    #[test]
    fn truncation_is_flagged() {
        let a = parse_automaton(SKIP).unwrap();
        assert!(traces(&a, Bounds::new(1, 1)).1);
        assert!(!traces(&a, Bounds::new(2, 1)).1);
    }

    #[test]
    fn copies_are_capped_per_parent_and_letter() {
        let src = "sata v1\nstates 0 a b\nstates 1 c\nstates 2 x\n\
                   add-even † --run--> {a}\nadd-odd a --run^{f}--> c\n\
                   add-even c --run^{f.1}--> {x}\ndel-even {x} --done^{f.1}--> †\n\
                   del-odd c --done^{f}--> b\ndel-even {b} --done--> †\n";
        let a = parse_automaton(src).unwrap();
        let count_calls = |copies| {
            language(&a, Bounds::new(12, copies))
                .0
                .iter()
                .map(|w| w.letters().filter(|l| l.to_string() == "run^{f.1}").count())
                .max()
                .unwrap()
        };
        assert_eq!(count_calls(1), 1);
        assert_eq!(count_calls(2), 2);
        assert_eq!(count_calls(3), 3);
    }

    #[test]
    fn witness_runs_end_accepting() {
        let a = parse_automaton(SKIP).unwrap();
        let run = witness_run(&a, &"(run,0) (done,0)".parse().unwrap()).unwrap();
        assert_eq!(run.len(), 3);
        assert!(run.last().unwrap().config.is_accepting());
        assert_eq!(reachable(&a, Bounds::new(4, 1)).0.len(), 3);
    }
}
