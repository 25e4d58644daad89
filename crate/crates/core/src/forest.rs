//! The data forest: values with a parent function and levels.

use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DataValue {
    pub id: u32,
    pub parent: Option<u32>,
    pub level: u32,
}

impl DataValue {
    pub fn root(id: u32) -> Self {
        Self { id, parent: None, level: 0 }
    }

    pub fn child(id: u32, parent: &DataValue) -> Self {
        Self { id, parent: Some(parent.id), level: parent.level + 1 }
    }
}

/// Allocator for a single run; ids are handed out in order and never reused.
#[derive(Clone, Debug, Default)]
pub struct Forest {
    values: HashMap<u32, DataValue>,
    next: u32,
}

impl Forest {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh_child(&mut self, parent: Option<&DataValue>) -> DataValue {
        let id = self.next;
        self.next += 1;
        let d = match parent {
            None => DataValue::root(id),
            Some(p) => DataValue::child(id, p),
        };
        self.values.insert(id, d);
        d
    }

    pub fn get(&self, id: u32) -> Option<&DataValue> {
        self.values.get(&id)
    }

    pub fn pred(&self, d: &DataValue) -> Option<DataValue> {
        d.parent.map(|p| self.values[&p])
    }

    /// `pred` applied `k` times; `None` once the root is passed.
    pub fn pred_n(&self, d: &DataValue, k: u32) -> Option<DataValue> {
        let mut cur = *d;
        for _ in 0..k {
            cur = self.pred(&cur)?;
        }
        Some(cur)
    }

    pub fn is_ancestor_or_self(&self, a: &DataValue, d: &DataValue) -> bool {
        if a.level > d.level {
            return false;
        }
        self.pred_n(d, d.level - a.level).is_some_and(|x| x.id == a.id)
    }

    /// Neither value lies on the other's path to the root.
    pub fn independent(&self, d1: &DataValue, d2: &DataValue) -> bool {
        !self.is_ancestor_or_self(d1, d2) && !self.is_ancestor_or_self(d2, d1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn allocation_and_levels() {
        let mut f = Forest::new();
        let d0 = f.fresh_child(None);
        assert_eq!((d0.id, d0.level, d0.parent), (0, 0, None));
        let d1 = f.fresh_child(Some(&d0));
        assert_eq!(d1.level, 1);
        assert_eq!(f.pred(&d1), Some(d0));
        let d2 = f.fresh_child(Some(&d1));
        assert_eq!(d2.level, 2);
        assert_eq!(f.pred(&d2), Some(d1));
    }

    #[test]
    fn independence_examples() {
        let mut f = Forest::new();
        let d0 = f.fresh_child(None);
        let d1 = f.fresh_child(Some(&d0));
        let d1b = f.fresh_child(Some(&d0));
        let d2 = f.fresh_child(Some(&d1));
        assert!(!f.independent(&d1, &d1));
        assert!(f.independent(&d1, &d1b));
        assert!(!f.independent(&d0, &d2));
        assert!(f.independent(&d2, &d1b));
    }

    proptest! {
        #[test]
        fn forest_laws(parents in proptest::collection::vec(proptest::option::of(0usize..50), 1..40)) {
            let mut f = Forest::new();
            let mut all: Vec<DataValue> = Vec::new();
            for p in parents {
                let parent = p.and_then(|i| all.get(i % all.len().max(1)).copied());
                let d = f.fresh_child(parent.as_ref());
                all.push(d);
            }
            for d in &all {
                prop_assert_eq!(f.pred_n(d, d.level + 1), None);
                prop_assert!(f.pred_n(d, d.level).is_some());
                for e in &all {
                    prop_assert_eq!(f.independent(d, e), f.independent(e, d));
                }
                prop_assert!(!f.independent(d, d));
            }
        }
    }
}
