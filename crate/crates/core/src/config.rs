//! Configurations `(D, E, f, m)` and the ADD / DEL / EPS step relation.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::automaton::{bag_includes, bag_minus, bag_union, Automaton, Bag, RuleIndex, Rule, StateId};
use crate::forest::DataValue;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    /// Even-level nodes carry a multiset of jobs.
    Bag(Bag),
    /// Odd-level nodes carry one state.
    State(StateId),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub value: DataValue,
    pub label: Label,
    /// Empty at odd levels.
    pub memory: Vec<u32>,
    pub children: u32,
}

impl Node {
    pub fn bag(&self) -> Option<&Bag> {
        match &self.label {
            Label::Bag(b) => Some(b),
            Label::State(_) => None,
        }
    }
}

/// `seen` is `D`; `nodes` holds `E` together with `f` and `m` on it.
/// Labels of deleted leaves stay in `retired` and take no part in comparisons.
#[derive(Clone, Debug, Default)]
pub struct Configuration {
    pub seen: BTreeSet<DataValue>,
    pub nodes: BTreeMap<u32, Node>,
    pub retired: BTreeMap<u32, Label>,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.seen == other.seen
    }
}

impl Eq for Configuration {}

impl Hash for Configuration {
    fn hash<H: Hasher>(&self, h: &mut H) {
        // Configurations reached on one word share `seen`; the tree alone spreads them well.
        self.nodes.hash(h);
    }
}

impl PartialOrd for Configuration {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Configuration {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.nodes, &self.seen).cmp(&(&other.nodes, &other.seen))
    }
}

/// A transition together with the datum it acts on.
///
/// For ADD the datum is the fresh value being introduced; for DEL the leaf;
/// for EPS the even-level node whose label changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Instance {
    pub rule: Rule,
    pub datum: DataValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FireError {
    #[error("datum {0} has already been seen")]
    NotFresh(u32),
    #[error("the root transition needs an empty set of seen data")]
    RootAfterStart,
    #[error("node {0} is not in the tree")]
    Missing(u32),
    #[error("node {0} is not a leaf")]
    NotLeaf(u32),
    #[error("label of node {0} does not match the transition source")]
    LabelMismatch(u32),
    #[error("memory cell does not hold the value the transition reads")]
    MemoryMismatch,
    #[error("datum level {0} does not suit the transition")]
    WrongLevel(u32),
}

impl Configuration {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Accepting configurations have an empty tree.
    pub fn is_accepting(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<&Node> {
        self.nodes.values().find(|n| n.value.parent.is_none())
    }

    fn ancestor(&self, d: &DataValue, up: u32) -> Option<&Node> {
        let mut cur = self.nodes.get(&d.id)?;
        for _ in 0..up {
            cur = self.nodes.get(&cur.value.parent?)?;
        }
        Some(cur)
    }

    fn ancestor_id(&self, d: &DataValue, up: u32) -> Option<u32> {
        self.ancestor(d, up).map(|n| n.value.id)
    }

    fn insert_child(&mut self, d: DataValue, label: Label, memory: Vec<u32>) {
        if let Some(p) = d.parent {
            self.nodes.get_mut(&p).expect("parent present").children += 1;
        }
        self.seen.insert(d);
        self.nodes.insert(d.id, Node { value: d, label, memory, children: 0 });
    }

    fn remove_leaf(&mut self, id: u32) -> Node {
        let n = self.nodes.remove(&id).expect("leaf present");
        if let Some(p) = n.value.parent {
            self.nodes.get_mut(&p).expect("parent present").children -= 1;
        }
        self.retired.insert(id, n.label.clone());
        n
    }

    fn check_fresh(&self, d: &DataValue) -> Result<(), FireError> {
        if self.seen.iter().any(|s| s.id == d.id) {
            return Err(FireError::NotFresh(d.id));
        }
        Ok(())
    }

    fn parent_node(&self, d: &DataValue) -> Result<&Node, FireError> {
        let p = d.parent.ok_or(FireError::WrongLevel(d.level))?;
        let n = self.nodes.get(&p).ok_or(FireError::Missing(p))?;
        if n.value.level + 1 != d.level {
            return Err(FireError::WrongLevel(d.level));
        }
        Ok(n)
    }

    fn leaf(&self, d: &DataValue) -> Result<&Node, FireError> {
        let n = self.nodes.get(&d.id).ok_or(FireError::Missing(d.id))?;
        if n.children > 0 {
            return Err(FireError::NotLeaf(d.id));
        }
        Ok(n)
    }

    /// Applies one transition instance.
    pub fn fire(&self, aut: &Automaton, inst: &Instance) -> Result<Configuration, FireError> {
        let d = inst.datum;
        let mut next = self.clone();
        match inst.rule {
            Rule::AddEven(i) => {
                let t = &aut.add_even[i];
                self.check_fresh(&d)?;
                match t.source {
                    None => {
                        if !self.seen.is_empty() {
                            return Err(FireError::RootAfterStart);
                        }
                        if d.parent.is_some() {
                            return Err(FireError::WrongLevel(d.level));
                        }
                    }
                    Some(c) => {
                        let p = self.parent_node(&d)?;
                        if p.label != Label::State(c) {
                            return Err(FireError::LabelMismatch(p.value.id));
                        }
                    }
                }
                next.insert_child(d, Label::Bag(t.target.clone()), vec![0; aut.memory as usize]);
            }
            Rule::AddOdd(i) => {
                let t = &aut.add_odd[i];
                self.check_fresh(&d)?;
                let p = self.parent_node(&d)?;
                let b = p.bag().ok_or(FireError::WrongLevel(d.level))?;
                if !b.contains(&t.source) {
                    return Err(FireError::LabelMismatch(p.value.id));
                }
                let rest = bag_minus(b, &[t.source]);
                let pid = p.value.id;
                next.nodes.get_mut(&pid).expect("parent").label = Label::Bag(rest);
                next.insert_child(d, Label::State(t.target), Vec::new());
            }
            Rule::DelEven(i) => {
                let t = &aut.del_even[i];
                let n = self.leaf(&d)?;
                if n.label != Label::Bag(t.source.clone()) {
                    return Err(FireError::LabelMismatch(d.id));
                }
                next.remove_leaf(d.id);
            }
            Rule::DelOdd(i) => {
                let t = &aut.del_odd[i];
                let n = self.leaf(&d)?;
                if n.label != Label::State(t.source) {
                    return Err(FireError::LabelMismatch(d.id));
                }
                let removed = next.remove_leaf(d.id);
                let pid = removed.value.parent.ok_or(FireError::WrongLevel(d.level))?;
                let parent = next.nodes.get_mut(&pid).expect("parent");
                let b = parent.bag().expect("odd nodes hang below even ones");
                parent.label = Label::Bag(bag_union(b, &[t.target]));
            }
            Rule::EpsEven(i) => {
                let t = &aut.eps_even[i];
                let n = self.nodes.get(&d.id).ok_or(FireError::Missing(d.id))?;
                let b = n.bag().ok_or(FireError::WrongLevel(d.level))?;
                if !bag_includes(b, &t.source) {
                    return Err(FireError::LabelMismatch(d.id));
                }
                let nb = bag_union(&bag_minus(b, &t.source), &t.target);
                next.nodes.get_mut(&d.id).expect("node").label = Label::Bag(nb);
            }
            Rule::EpsMem(i) => {
                let t = &aut.eps_mem[i];
                let n = self.nodes.get(&d.id).ok_or(FireError::Missing(d.id))?;
                let b = n.bag().ok_or(FireError::WrongLevel(d.level))?;
                if !b.contains(&t.source) {
                    return Err(FireError::LabelMismatch(d.id));
                }
                let src_level = aut.level(t.source);
                if n.value.level != src_level || t.mem_level > src_level {
                    return Err(FireError::WrongLevel(n.value.level));
                }
                let anc = self
                    .ancestor_id(&d, src_level - t.mem_level)
                    .ok_or(FireError::WrongLevel(t.mem_level))?;
                let cell = t.cell as usize - 1;
                let cur = self.nodes[&anc].memory.get(cell).copied().ok_or(FireError::MemoryMismatch)?;
                if t.read.is_some_and(|v| v != cur) {
                    return Err(FireError::MemoryMismatch);
                }
                let nb = bag_union(&bag_minus(b, &[t.source]), &[t.target]);
                next.nodes.get_mut(&d.id).expect("node").label = Label::Bag(nb);
                next.nodes.get_mut(&anc).expect("ancestor").memory[cell] = t.write;
            }
        }
        Ok(next)
    }

    /// Every enabled ε-instance.
    pub fn eps_instances(&self, aut: &Automaton, ix: &RuleIndex) -> Vec<Instance> {
        let mut out = Vec::new();
        for n in self.nodes.values() {
            let Some(b) = n.bag() else { continue };
            let d = n.value;
            let mut prev = None;
            for &s in b {
                if prev == Some(s) {
                    continue;
                }
                prev = Some(s);
                for &i in ix.eps_even.get(&s).into_iter().flatten() {
                    if bag_includes(b, &aut.eps_even[i].source) {
                        out.push(Instance { rule: Rule::EpsEven(i), datum: d });
                    }
                }
                for &i in ix.eps_mem.get(&s).into_iter().flatten() {
                    let t = &aut.eps_mem[i];
                    let lvl = aut.level(t.source);
                    if lvl != d.level || t.mem_level > lvl {
                        continue;
                    }
                    let Some(anc) = self.ancestor(&d, lvl - t.mem_level) else { continue };
                    let Some(&cur) = anc.memory.get(t.cell as usize - 1) else { continue };
                    if t.read.is_none_or(|v| v == cur) {
                        out.push(Instance { rule: Rule::EpsMem(i), datum: d });
                    }
                }
            }
            for &i in &ix.eps_even_empty {
                out.push(Instance { rule: Rule::EpsEven(i), datum: d });
            }
        }
        out
    }

    /// Every enabled labelled instance; a new datum for a question gets id `fresh`.
    pub fn labelled_instances(&self, ix: &RuleIndex, fresh: u32) -> Vec<Instance> {
        let mut out = Vec::new();
        if self.seen.is_empty() {
            for &i in &ix.roots {
                out.push(Instance { rule: Rule::AddEven(i), datum: DataValue::root(fresh) });
            }
        }
        for n in self.nodes.values() {
            let d = n.value;
            let leaf = n.children == 0;
            match &n.label {
                Label::State(c) => {
                    for &i in ix.add_even.get(c).into_iter().flatten() {
                        out.push(Instance { rule: Rule::AddEven(i), datum: DataValue::child(fresh, &d) });
                    }
                    if leaf {
                        for &i in ix.del_odd.get(c).into_iter().flatten() {
                            out.push(Instance { rule: Rule::DelOdd(i), datum: d });
                        }
                    }
                }
                Label::Bag(b) => {
                    let mut prev = None;
                    for &s in b {
                        if prev == Some(s) {
                            continue;
                        }
                        prev = Some(s);
                        for &i in ix.add_odd.get(&s).into_iter().flatten() {
                            out.push(Instance { rule: Rule::AddOdd(i), datum: DataValue::child(fresh, &d) });
                        }
                    }
                    if leaf {
                        for &i in ix.del_even.get(b).into_iter().flatten() {
                            out.push(Instance { rule: Rule::DelEven(i), datum: d });
                        }
                    }
                }
            }
        }
        out
    }

    /// Isomorphism-invariant description: the tree shape with labels and memory, ignoring data ids.
    pub fn iso_key(&self) -> String {
        fn node_key(c: &Configuration, kids: &BTreeMap<u32, Vec<u32>>, id: u32) -> String {
            let n = &c.nodes[&id];
            let mut ks: Vec<String> = kids
                .get(&id)
                .into_iter()
                .flatten()
                .map(|&k| node_key(c, kids, k))
                .collect();
            ks.sort();
            format!("[{:?}|{:?}|{}]", n.label, n.memory, ks.concat())
        }
        let mut kids: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        let mut roots = Vec::new();
        for n in self.nodes.values() {
            match n.value.parent {
                Some(p) => kids.entry(p).or_default().push(n.value.id),
                None => roots.push(n.value.id),
            }
        }
        let body: String = roots.iter().map(|&r| node_key(self, &kids, r)).collect();
        format!("{}{}", if self.seen.is_empty() { "fresh" } else { "started" }, body)
    }

    /// Label of `d`, falling back to the retired label of a deleted leaf.
    pub fn label_of(&self, id: u32) -> Option<&Label> {
        self.nodes.get(&id).map(|n| &n.label).or_else(|| self.retired.get(&id))
    }
}
