//! Run-wide configuration: the finite value range and the unary operator table.

use std::collections::BTreeMap;
use std::fmt;

/// A unary operation on `{0..max}`. The second argument is `max`.
pub type OpFn = fn(u32, u32) -> u32;

fn succ(v: u32, max: u32) -> u32 {
    if v >= max {
        0
    } else {
        v + 1
    }
}

fn pred(v: u32, max: u32) -> u32 {
    if v == 0 {
        max
    } else {
        v - 1
    }
}

/// Registry of unary operators, keyed by their surface name.
#[derive(Clone)]
pub struct OpTable {
    ops: BTreeMap<String, OpFn>,
}

impl OpTable {
    pub fn empty() -> Self {
        Self { ops: BTreeMap::new() }
    }

    pub fn register(&mut self, name: impl Into<String>, op: OpFn) {
        self.ops.insert(name.into(), op);
    }

    pub fn get(&self, name: &str) -> Option<OpFn> {
        self.ops.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.ops.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.ops.keys().map(String::as_str)
    }
}

impl Default for OpTable {
    /// `succ` and `pred`, both wrapping around modulo `max + 1`.
    fn default() -> Self {
        let mut t = Self::empty();
        t.register("succ", succ);
        t.register("pred", pred);
        t
    }
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ops.keys()).finish()
    }
}

/// Shared by the parser, type checker, interpreter and compiler.
#[derive(Clone, Debug)]
pub struct Settings {
    /// Values range over `{0..=max}`.
    pub max: u32,
    pub ops: OpTable,
}

impl Settings {
    pub fn with_max(max: u32) -> Self {
        Self { max, ops: OpTable::default() }
    }

    pub fn values(&self) -> impl Iterator<Item = u32> + Clone {
        0..=self.max
    }

    /// Applies operator `name`; `None` when it is not registered.
    pub fn apply_op(&self, name: &str, v: u32) -> Option<u32> {
        self.ops.get(name).map(|op| op(v, self.max))
    }
}

impl Default for Settings {
    fn default() -> Self {
        Self::with_max(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn succ_and_pred_wrap() {
        let s = Settings::with_max(2);
        assert_eq!(s.apply_op("succ", 2), Some(0));
        assert_eq!(s.apply_op("succ", 1), Some(2));
        assert_eq!(s.apply_op("pred", 0), Some(2));
        assert_eq!(s.apply_op("pred", 2), Some(1));
        assert_eq!(s.apply_op("nope", 0), None);
    }
}
