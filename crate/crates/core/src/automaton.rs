//! Saturating automata: level-partitioned control states and the six transition families.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::moves::{Letter, Polarity};

pub type StateId = usize;

/// A multiset of states, kept sorted.
pub type Bag = Vec<StateId>;

pub fn bag(items: impl IntoIterator<Item = StateId>) -> Bag {
    let mut b: Bag = items.into_iter().collect();
    b.sort_unstable();
    b
}

/// `sub` is contained in `sup` as multisets; both sorted.
pub fn bag_includes(sup: &[StateId], sub: &[StateId]) -> bool {
    let mut it = sup.iter();
    'outer: for x in sub {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// Multiset difference `sup - sub`, assuming inclusion.
pub fn bag_minus(sup: &[StateId], sub: &[StateId]) -> Bag {
    let mut out = Vec::with_capacity(sup.len());
    let mut j = 0;
    for &x in sup {
        if j < sub.len() && sub[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    out
}

pub fn bag_union(a: &[StateId], b: &[StateId]) -> Bag {
    bag(a.iter().chain(b).copied())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pub name: String,
    pub level: u32,
}

/// ADD at an even level: `† --q--> D` at the root, or `c --q--> D` below an odd state.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AddEven {
    pub source: Option<StateId>,
    pub letter: Letter,
    pub target: Bag,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AddOdd {
    pub source: StateId,
    pub letter: Letter,
    pub target: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DelEven {
    pub source: Bag,
    pub letter: Letter,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DelOdd {
    pub source: StateId,
    pub letter: Letter,
    pub target: StateId,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpsEven {
    pub source: Bag,
    pub target: Bag,
}

/// Reads cell `cell` (1-based) of the ancestor at `mem_level`; `read == None` matches anything.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpsMem {
    pub mem_level: u32,
    pub cell: u32,
    pub read: Option<u32>,
    pub source: StateId,
    pub write: u32,
    pub target: StateId,
}

/// Names one transition inside an automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    AddEven(usize),
    AddOdd(usize),
    DelEven(usize),
    DelOdd(usize),
    EpsEven(usize),
    EpsMem(usize),
}

impl Rule {
    pub fn is_eps(self) -> bool {
        matches!(self, Rule::EpsEven(_) | Rule::EpsMem(_))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Automaton {
    pub max: u32,
    /// Depth `k`: the highest state level.
    pub depth: u32,
    /// Memory cells per even-level node.
    pub memory: u32,
    pub sigma: BTreeSet<Letter>,
    pub states: Vec<State>,
    pub add_even: Vec<AddEven>,
    pub add_odd: Vec<AddOdd>,
    pub del_even: Vec<DelEven>,
    pub del_odd: Vec<DelOdd>,
    pub eps_even: Vec<EpsEven>,
    pub eps_mem: Vec<EpsMem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct Defect(pub String);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SizeStats {
    pub states: usize,
    pub transitions: usize,
    #[serde(rename = "transitionsExpanded")]
    pub transitions_expanded: usize,
    pub k: u32,
    #[serde(rename = "N")]
    pub n: u32,
}

impl Automaton {
    pub fn new(max: u32) -> Self {
        Self { max, ..Self::default() }
    }

    pub fn add_state(&mut self, name: impl Into<String>, level: u32) -> StateId {
        self.states.push(State { name: name.into(), level });
        self.depth = self.depth.max(level);
        self.states.len() - 1
    }

    pub fn state_named(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s.name == name)
    }

    pub fn level(&self, s: StateId) -> u32 {
        self.states[s].level
    }

    pub fn transition_count(&self) -> usize {
        self.add_even.len()
            + self.add_odd.len()
            + self.del_even.len()
            + self.del_odd.len()
            + self.eps_even.len()
            + self.eps_mem.len()
    }

    /// Counts with each wildcard transition also expanded to `max + 1` concrete ones.
    pub fn size_stats(&self) -> SizeStats {
        let wild = self.eps_mem.iter().filter(|t| t.read.is_none()).count();
        let total = self.transition_count();
        SizeStats {
            states: self.states.len(),
            transitions: total,
            transitions_expanded: total + wild * self.max as usize,
            k: self.depth,
            n: self.memory,
        }
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        (0..self.add_even.len())
            .map(Rule::AddEven)
            .chain((0..self.add_odd.len()).map(Rule::AddOdd))
            .chain((0..self.del_even.len()).map(Rule::DelEven))
            .chain((0..self.del_odd.len()).map(Rule::DelOdd))
            .chain((0..self.eps_even.len()).map(Rule::EpsEven))
            .chain((0..self.eps_mem.len()).map(Rule::EpsMem))
    }

    pub fn letter_of(&self, r: Rule) -> Option<&Letter> {
        match r {
            Rule::AddEven(i) => Some(&self.add_even[i].letter),
            Rule::AddOdd(i) => Some(&self.add_odd[i].letter),
            Rule::DelEven(i) => Some(&self.del_even[i].letter),
            Rule::DelOdd(i) => Some(&self.del_odd[i].letter),
            Rule::EpsEven(_) | Rule::EpsMem(_) => None,
        }
    }

    /// Letters used by the transitions.
    pub fn used_letters(&self) -> BTreeSet<Letter> {
        self.rules().filter_map(|r| self.letter_of(r).cloned()).collect()
    }

    /// Sorts and deduplicates every family, then recomputes depth and sigma.
    pub fn normalize(&mut self) {
        fn tidy<T: Ord>(v: &mut Vec<T>) {
            v.sort();
            v.dedup();
        }
        tidy(&mut self.add_even);
        tidy(&mut self.add_odd);
        tidy(&mut self.del_even);
        tidy(&mut self.del_odd);
        tidy(&mut self.eps_even);
        tidy(&mut self.eps_mem);
        self.depth = self.states.iter().map(|s| s.level).max().unwrap_or(0);
        self.sigma = self.used_letters();
    }

    /// Drops states that no transition sequence from `†` can place in a configuration,
    /// along with every transition that needs one of them.
    pub fn prune(&mut self) {
        let mut live = vec![false; self.states.len()];
        let mut changed = true;
        let mark = |live: &mut Vec<bool>, s: StateId, changed: &mut bool| {
            if !live[s] {
                live[s] = true;
                *changed = true;
            }
        };
        while changed {
            changed = false;
            for t in &self.add_even {
                if t.source.is_none_or(|s| live[s]) {
                    t.target.iter().for_each(|&s| mark(&mut live, s, &mut changed));
                }
            }
            for t in &self.add_odd {
                if live[t.source] {
                    mark(&mut live, t.target, &mut changed);
                }
            }
            for t in &self.del_odd {
                if live[t.source] {
                    mark(&mut live, t.target, &mut changed);
                }
            }
            for t in &self.eps_even {
                if t.source.iter().all(|&s| live[s]) {
                    t.target.iter().for_each(|&s| mark(&mut live, s, &mut changed));
                }
            }
            for t in &self.eps_mem {
                if live[t.source] {
                    mark(&mut live, t.target, &mut changed);
                }
            }
        }
        let mut remap = vec![usize::MAX; self.states.len()];
        let mut states = Vec::new();
        for (i, s) in self.states.iter().enumerate() {
            if live[i] {
                remap[i] = states.len();
                states.push(s.clone());
            }
        }
        let ok = |s: &StateId| live[*s];
        let m = |s: StateId| remap[s];
        let mb = |b: &Bag| bag(b.iter().map(|&s| remap[s]));
        self.add_even = self
            .add_even
            .iter()
            .filter(|t| t.source.as_ref().is_none_or(ok))
            .map(|t| AddEven { source: t.source.map(m), letter: t.letter.clone(), target: mb(&t.target) })
            .collect();
        self.add_odd = self
            .add_odd
            .iter()
            .filter(|t| ok(&t.source))
            .map(|t| AddOdd { source: m(t.source), letter: t.letter.clone(), target: m(t.target) })
            .collect();
        self.del_even = self
            .del_even
            .iter()
            .filter(|t| t.source.iter().all(ok))
            .map(|t| DelEven { source: mb(&t.source), letter: t.letter.clone() })
            .collect();
        self.del_odd = self
            .del_odd
            .iter()
            .filter(|t| ok(&t.source))
            .map(|t| DelOdd { source: m(t.source), letter: t.letter.clone(), target: m(t.target) })
            .collect();
        self.eps_even = self
            .eps_even
            .iter()
            .filter(|t| t.source.iter().all(ok))
            .map(|t| EpsEven { source: mb(&t.source), target: mb(&t.target) })
            .collect();
        self.eps_mem = self
            .eps_mem
            .iter()
            .filter(|t| ok(&t.source))
            .map(|t| EpsMem { source: m(t.source), target: m(t.target), ..t.clone() })
            .collect();
        self.states = states;
        self.normalize();
    }

    /// Level and polarity discipline of every component.
    pub fn validate(&self) -> Vec<Defect> {
        let mut out = Vec::new();
        let mut bad = |msg: String| out.push(Defect(msg));
        let n = self.states.len();
        for s in &self.states {
            if s.level > self.depth {
                bad(format!("state {} has level {} above depth {}", s.name, s.level, self.depth));
            }
        }
        let mut names = BTreeSet::new();
        for s in &self.states {
            if !names.insert(&s.name) {
                bad(format!("duplicate state name {}", s.name));
            }
        }
        for l in &self.sigma {
            for v in [l.base.value()].into_iter().flatten() {
                if v > self.max {
                    bad(format!("letter {l} carries a value above max"));
                }
            }
        }
        let exists = |s: StateId| s < n;
        let check_letter = |bad: &mut dyn FnMut(String), what: &str, l: &Letter, want: Polarity| {
            if !self.sigma.contains(l) {
                bad(format!("{what}: letter {l} is not in sigma"));
            }
            if l.polarity() != want {
                bad(format!("{what}: letter {l} is {} but {want} is required", l.polarity()));
            }
        };
        let bag_at = |bad: &mut dyn FnMut(String), what: &str, b: &Bag, level: Option<u32>| {
            if let Some(&s) = b.iter().find(|&&s| !exists(s)) {
                bad(format!("{what}: unknown state {s}"));
                return None;
            }
            let levels: BTreeSet<u32> = b.iter().map(|&s| self.level(s)).collect();
            if levels.len() > 1 {
                bad(format!("{what}: multiset mixes levels"));
            }
            let l = levels.first().copied();
            if let Some(l) = l {
                if l % 2 == 1 {
                    bad(format!("{what}: multiset at odd level {l}"));
                }
                if level.is_some_and(|want| want != l) {
                    bad(format!("{what}: multiset at level {l}, expected {}", level.unwrap()));
                }
            }
            l
        };
        for t in &self.add_even {
            let what = format!("add-even {}", t.letter);
            check_letter(&mut bad, &what, &t.letter, Polarity::OQ);
            match t.source {
                None => {
                    bag_at(&mut bad, &what, &t.target, Some(0));
                }
                Some(s) if exists(s) => {
                    let l = self.level(s);
                    if l.is_multiple_of(2) {
                        bad(format!("{what}: source at even level {l}"));
                    }
                    bag_at(&mut bad, &what, &t.target, Some(l + 1));
                }
                Some(s) => bad(format!("{what}: unknown state {s}")),
            }
        }
        for (what, src, tgt, letter, want, even_src) in self
            .add_odd
            .iter()
            .map(|t| ("add-odd", t.source, t.target, &t.letter, Polarity::PQ, true))
            .chain(self.del_odd.iter().map(|t| ("del-odd", t.source, t.target, &t.letter, Polarity::OA, false)))
        {
            let what = format!("{what} {letter}");
            check_letter(&mut bad, &what, letter, want);
            if !exists(src) || !exists(tgt) {
                bad(format!("{what}: unknown state"));
                continue;
            }
            let (ls, lt) = (self.level(src), self.level(tgt));
            if (ls % 2 == 0) != even_src {
                bad(format!("{what}: source at level {ls} has the wrong parity"));
            }
            let expected = if even_src { ls + 1 } else { ls.wrapping_sub(1) };
            if lt != expected {
                bad(format!("{what}: target at level {lt}, expected {expected}"));
            }
        }
        for t in &self.del_even {
            let what = format!("del-even {}", t.letter);
            check_letter(&mut bad, &what, &t.letter, Polarity::PA);
            bag_at(&mut bad, &what, &t.source, None);
        }
        for t in &self.eps_even {
            let l = bag_at(&mut bad, "eps-even", &t.source, None);
            bag_at(&mut bad, "eps-even", &t.target, l);
        }
        for t in &self.eps_mem {
            if !exists(t.source) || !exists(t.target) {
                bad("eps-mem: unknown state".into());
                continue;
            }
            let (ls, lt) = (self.level(t.source), self.level(t.target));
            if ls % 2 == 1 || ls != lt {
                bad(format!("eps-mem: states at levels {ls} and {lt}"));
            }
            if t.mem_level % 2 == 1 || t.mem_level > ls {
                bad(format!("eps-mem: memory level {} against state level {ls}", t.mem_level));
            }
            if t.cell == 0 || t.cell > self.memory {
                bad(format!("eps-mem: cell {} outside 1..={}", t.cell, self.memory));
            }
            if t.read.is_some_and(|v| v > self.max) || t.write > self.max {
                bad("eps-mem: value above max".into());
            }
        }
        out
    }

    /// Transitions grouped by the states they consume, for quick enumeration.
    pub fn index(&self) -> RuleIndex {
        let mut ix = RuleIndex::default();
        for (i, t) in self.add_even.iter().enumerate() {
            match t.source {
                None => ix.roots.push(i),
                Some(s) => ix.add_even.entry(s).or_default().push(i),
            }
        }
        for (i, t) in self.add_odd.iter().enumerate() {
            ix.add_odd.entry(t.source).or_default().push(i);
        }
        for (i, t) in self.del_even.iter().enumerate() {
            ix.del_even.entry(t.source.clone()).or_default().push(i);
        }
        for (i, t) in self.del_odd.iter().enumerate() {
            ix.del_odd.entry(t.source).or_default().push(i);
        }
        for (i, t) in self.eps_even.iter().enumerate() {
            match t.source.first() {
                Some(&s) => ix.eps_even.entry(s).or_default().push(i),
                None => ix.eps_even_empty.push(i),
            }
        }
        for (i, t) in self.eps_mem.iter().enumerate() {
            ix.eps_mem.entry(t.source).or_default().push(i);
        }
        ix
    }

    pub fn bag_text(&self, b: &[StateId]) -> String {
        let names: Vec<&str> = b.iter().map(|&s| self.states[s].name.as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }

    pub fn rule_text(&self, r: Rule) -> String {
        let name = |s: StateId| self.states[s].name.as_str();
        match r {
            Rule::AddEven(i) => {
                let t = &self.add_even[i];
                let src = t.source.map_or("†", name);
                format!("add-even {src} --{}--> {}", t.letter, self.bag_text(&t.target))
            }
            Rule::AddOdd(i) => {
                let t = &self.add_odd[i];
                format!("add-odd {} --{}--> {}", name(t.source), t.letter, name(t.target))
            }
            Rule::DelEven(i) => {
                let t = &self.del_even[i];
                format!("del-even {} --{}--> †", self.bag_text(&t.source), t.letter)
            }
            Rule::DelOdd(i) => {
                let t = &self.del_odd[i];
                format!("del-odd {} --{}--> {}", name(t.source), t.letter, name(t.target))
            }
            Rule::EpsEven(i) => {
                let t = &self.eps_even[i];
                format!("eps-even {} --> {}", self.bag_text(&t.source), self.bag_text(&t.target))
            }
            Rule::EpsMem(i) => {
                let t = &self.eps_mem[i];
                let read = t.read.map_or("?".to_string(), |v| v.to_string());
                format!(
                    "eps-mem ({},{},{read}) {} --> ({}) {}",
                    t.mem_level,
                    t.cell,
                    name(t.source),
                    t.write,
                    name(t.target)
                )
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RuleIndex {
    pub roots: Vec<usize>,
    pub add_even: HashMap<StateId, Vec<usize>>,
    pub add_odd: HashMap<StateId, Vec<usize>>,
    pub del_even: HashMap<Bag, Vec<usize>>,
    pub del_odd: HashMap<StateId, Vec<usize>>,
    pub eps_even: HashMap<StateId, Vec<usize>>,
    pub eps_even_empty: Vec<usize>,
    pub eps_mem: HashMap<StateId, Vec<usize>>,
}

impl fmt::Display for Automaton {
    /// The `sata v1` text form; [`parse_automaton`] reads it back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "sata v1")?;
        writeln!(f, "max {}", self.max)?;
        writeln!(f, "depth {}", self.depth)?;
        writeln!(f, "memory {}", self.memory)?;
        for p in Polarity::all() {
            let ls: Vec<String> =
                self.sigma.iter().filter(|l| l.polarity() == p).map(Letter::to_string).collect();
            if !ls.is_empty() {
                writeln!(f, "letters {p} {}", ls.join(" "))?;
            }
        }
        let mut by_level: BTreeMap<u32, Vec<&str>> = BTreeMap::new();
        for s in &self.states {
            by_level.entry(s.level).or_default().push(&s.name);
        }
        for (l, names) in by_level {
            writeln!(f, "states {l} {}", names.join(" "))?;
        }
        for r in self.rules() {
            writeln!(f, "{}", self.rule_text(r))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

/// Reads the `sata v1` text form. Lines starting with `#` are comments.
pub fn parse_automaton(src: &str) -> Result<Automaton, FormatError> {
    let mut aut = Automaton::new(1);
    let mut declared: Option<BTreeSet<Letter>> = None;
    let mut seen_header = false;
    for (i, raw) in src.lines().enumerate() {
        let line_no = i + 1;
        let err = |m: String| FormatError { line: line_no, message: m };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_header {
            if line != "sata v1" {
                return Err(err("expected the header `sata v1`".into()));
            }
            seen_header = true;
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let num = |t: &str| t.parse::<u32>().map_err(|_| err(format!("expected a number, found `{t}`")));
        let state = |aut: &Automaton, t: &str| {
            aut.state_named(t.trim()).ok_or_else(|| err(format!("unknown state `{}`", t.trim())))
        };
        let bag_of = |aut: &Automaton, t: &str| -> Result<Bag, FormatError> {
            let inner = t
                .trim()
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| err(format!("expected a multiset `{{...}}`, found `{t}`")))?;
            let mut b = Vec::new();
            for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                b.push(state(aut, part)?);
            }
            Ok(bag(b))
        };
        let labelled = |t: &str| -> Result<(String, Letter, String), FormatError> {
            let (lhs, after) = t.split_once("--").ok_or_else(|| err("expected `--letter-->`".into()))?;
            let (letter, rhs) = after.split_once("-->").ok_or_else(|| err("expected `-->`".into()))?;
            let letter = letter.trim().parse().map_err(|e| err(format!("{e}")))?;
            Ok((lhs.trim().to_string(), letter, rhs.trim().to_string()))
        };
        match kw {
            "max" => aut.max = num(rest)?,
            "depth" => aut.depth = num(rest)?,
            "memory" => aut.memory = num(rest)?,
            "letters" => {
                let mut parts = rest.split_whitespace();
                let pol: Polarity = parts.next().unwrap_or("").parse().map_err(err)?;
                let set = declared.get_or_insert_with(BTreeSet::new);
                for p in parts {
                    let l: Letter = p.parse().map_err(|e| err(format!("{e}")))?;
                    if l.polarity() != pol {
                        return Err(err(format!("letter {l} is {}, not {pol}", l.polarity())));
                    }
                    set.insert(l);
                }
            }
            "states" => {
                let mut parts = rest.split_whitespace();
                let level = num(parts.next().unwrap_or(""))?;
                for name in parts {
                    if aut.state_named(name).is_some() {
                        return Err(err(format!("state `{name}` declared twice")));
                    }
                    aut.states.push(State { name: name.to_string(), level });
                }
            }
            "add-even" => {
                let (lhs, letter, rhs) = labelled(rest)?;
                let source = if lhs == "†" || lhs == "root" { None } else { Some(state(&aut, &lhs)?) };
                let target = bag_of(&aut, &rhs)?;
                aut.add_even.push(AddEven { source, letter, target });
            }
            "add-odd" | "del-odd" => {
                let (lhs, letter, rhs) = labelled(rest)?;
                let (source, target) = (state(&aut, &lhs)?, state(&aut, &rhs)?);
                if kw == "add-odd" {
                    aut.add_odd.push(AddOdd { source, letter, target });
                } else {
                    aut.del_odd.push(DelOdd { source, letter, target });
                }
            }
            "del-even" => {
                let (lhs, letter, rhs) = labelled(rest)?;
                if rhs != "†" && rhs != "root" {
                    return Err(err("a del-even transition ends in `†`".into()));
                }
                let source = bag_of(&aut, &lhs)?;
                aut.del_even.push(DelEven { source, letter });
            }
            "eps-even" => {
                let (lhs, rhs) = rest.split_once("-->").ok_or_else(|| err("expected `-->`".into()))?;
                let (source, target) = (bag_of(&aut, lhs)?, bag_of(&aut, rhs)?);
                aut.eps_even.push(EpsEven { source, target });
            }
            "eps-mem" => {
                let (lhs, rhs) = rest.split_once("-->").ok_or_else(|| err("expected `-->`".into()))?;
                let (op, src) = split_paren(lhs).ok_or_else(|| err("expected `(level,cell,read) state`".into()))?;
                let (w, tgt) = split_paren(rhs).ok_or_else(|| err("expected `(write) state`".into()))?;
                let fields: Vec<&str> = op.split(',').map(str::trim).collect();
                if fields.len() != 3 {
                    return Err(err("memory operation needs `(level,cell,read)`".into()));
                }
                let read = if fields[2] == "?" { None } else { Some(num(fields[2])?) };
                aut.eps_mem.push(EpsMem {
                    mem_level: num(fields[0])?,
                    cell: num(fields[1])?,
                    read,
                    source: state(&aut, src)?,
                    write: num(w.trim())?,
                    target: state(&aut, tgt)?,
                });
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    if !seen_header {
        return Err(FormatError { line: 0, message: "empty document".into() });
    }
    let levels = aut.states.iter().map(|s| s.level).max().unwrap_or(0);
    aut.depth = aut.depth.max(levels);
    aut.sigma = declared.unwrap_or_else(|| aut.used_letters());
    Ok(aut)
}

fn split_paren(s: &str) -> Option<(&str, &str)> {
    let s = s.trim().strip_prefix('(')?;
    let (inside, rest) = s.split_once(')')?;
    Some((inside, rest.trim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SKIP: &str = "sata v1\nmax 1\nstates 0 s\nadd-even † --run--> {s}\ndel-even {s} --done--> †\n";

    #[test]
    fn bag_operations() {
        assert!(bag_includes(&[1, 2, 2, 5], &[2, 5]));
        assert!(!bag_includes(&[1, 2, 5], &[2, 2]));
        assert!(bag_includes(&[1], &[]));
        assert_eq!(bag_minus(&[1, 2, 2, 5], &[2]), vec![1, 2, 5]);
        assert_eq!(bag_union(&[3], &[1, 3]), vec![1, 3, 3]);
    }

    #[test]
    fn text_round_trip() {
        let a = parse_automaton(SKIP).unwrap();
        assert_eq!(a.states.len(), 1);
        assert!(a.validate().is_empty());
        let again = parse_automaton(&a.to_string()).unwrap();
        assert_eq!(again, a);
        assert_eq!(a.size_stats().transitions, 2);
    }

    #[test]
    fn defects_are_reported() {
        let odd_source = "sata v1\nstates 0 a\nstates 1 b\nstates 2 c\nadd-odd b --run^{f}--> c\n";
        let a = parse_automaton(odd_source).unwrap();
        assert_eq!(a.validate().len(), 1, "{:?}", a.validate());
        let deep = "sata v1\nmemory 1\nstates 0 a b\neps-mem (2,1,0) a --> (1) b\n";
        assert_eq!(parse_automaton(deep).unwrap().validate().len(), 1);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_automaton("sata v1\nstates 0 a\nadd-even † --run--> {zz}\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_automaton("letters OQ run").is_err());
        let e = parse_automaton("sata v1\nletters PA run\n").unwrap_err();
        assert_eq!(e.line, 2);
    }

    #[test]
    fn prune_drops_unreachable_parts() {
        let src = "sata v1\nstates 0 s dead\nadd-even † --run--> {s}\ndel-even {s} --done--> †\n\
                   del-even {dead} --done--> †\n";
        let mut a = parse_automaton(src).unwrap();
        a.prune();
        assert_eq!(a.states.len(), 1);
        assert_eq!(a.del_even.len(), 1);
    }
}
