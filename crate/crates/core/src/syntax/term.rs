use std::collections::BTreeSet;
use std::fmt;

/// Ground types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseType {
    Com,
    Exp,
    Var,
    Sem,
}

impl BaseType {
    pub fn keyword(self) -> &'static str {
        match self {
            BaseType::Com => "com",
            BaseType::Exp => "exp",
            BaseType::Var => "var",
            BaseType::Sem => "sem",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Some(match s {
            "com" => BaseType::Com,
            "exp" => BaseType::Exp,
            "var" => BaseType::Var,
            "sem" => BaseType::Sem,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Type {
    Base(BaseType),
    Arrow(Box<Type>, Box<Type>),
}

impl Type {
    pub const COM: Type = Type::Base(BaseType::Com);
    pub const EXP: Type = Type::Base(BaseType::Exp);
    pub const VAR: Type = Type::Base(BaseType::Var);
    pub const SEM: Type = Type::Base(BaseType::Sem);

    pub fn arrow(arg: Type, result: Type) -> Type {
        Type::Arrow(Box::new(arg), Box::new(result))
    }

    /// `a1 -> a2 -> ... -> result`.
    pub fn curried(args: impl IntoIterator<Item = Type>, result: Type) -> Type {
        let args: Vec<Type> = args.into_iter().collect();
        args.into_iter().rev().fold(result, |acc, a| Type::arrow(a, acc))
    }

    /// Splits into the argument list (leftmost first) and the final base type.
    pub fn uncurry(&self) -> (Vec<&Type>, BaseType) {
        let mut args = Vec::new();
        let mut t = self;
        loop {
            match t {
                Type::Base(b) => return (args, *b),
                Type::Arrow(a, r) => {
                    args.push(a.as_ref());
                    t = r;
                }
            }
        }
    }

    pub fn base(&self) -> Option<BaseType> {
        match self {
            Type::Base(b) => Some(*b),
            Type::Arrow(..) => None,
        }
    }

    pub fn result_base(&self) -> BaseType {
        self.uncurry().1
    }

    pub fn arity(&self) -> usize {
        self.uncurry().0.len()
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Type::Base(b) => f.write_str(b.keyword()),
            Type::Arrow(a, r) => match a.as_ref() {
                Type::Base(_) => write!(f, "{a} -> {r}"),
                Type::Arrow(..) => write!(f, "({a}) -> {r}"),
            },
        }
    }
}

/// Abstract syntax of FICA terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Skip,
    Div(Type),
    Num(u32),
    Op(String, Box<Term>),
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
    Cond(Box<Term>, Box<Term>, Box<Term>),
    While(Box<Term>, Box<Term>),
    Id(String),
    Lam(String, Type, Box<Term>),
    App(Box<Term>, Box<Term>),
    Assign(Box<Term>, Box<Term>),
    Deref(Box<Term>),
    NewVar(String, u32, Box<Term>),
    NewSem(String, u32, Box<Term>),
    Grab(Box<Term>),
    Release(Box<Term>),
}

/// Smart constructors; they keep test code and the parser readable.
impl Term {
    pub fn id(x: impl Into<String>) -> Term {
        Term::Id(x.into())
    }
    pub fn op(name: impl Into<String>, t: Term) -> Term {
        Term::Op(name.into(), Box::new(t))
    }
    pub fn seq(a: Term, b: Term) -> Term {
        Term::Seq(Box::new(a), Box::new(b))
    }
    pub fn par(a: Term, b: Term) -> Term {
        Term::Par(Box::new(a), Box::new(b))
    }
    pub fn cond(g: Term, t: Term, e: Term) -> Term {
        Term::Cond(Box::new(g), Box::new(t), Box::new(e))
    }
    pub fn while_(g: Term, body: Term) -> Term {
        Term::While(Box::new(g), Box::new(body))
    }
    pub fn lam(x: impl Into<String>, ty: Type, body: Term) -> Term {
        Term::Lam(x.into(), ty, Box::new(body))
    }
    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }
    /// `f a1 a2 ... an`.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }
    pub fn assign(target: Term, value: Term) -> Term {
        Term::Assign(Box::new(target), Box::new(value))
    }
    pub fn deref(t: Term) -> Term {
        Term::Deref(Box::new(t))
    }
    pub fn newvar(x: impl Into<String>, init: u32, body: Term) -> Term {
        Term::NewVar(x.into(), init, Box::new(body))
    }
    pub fn newsem(x: impl Into<String>, init: u32, body: Term) -> Term {
        Term::NewSem(x.into(), init, Box::new(body))
    }
    pub fn grab(t: Term) -> Term {
        Term::Grab(Box::new(t))
    }
    pub fn release(t: Term) -> Term {
        Term::Release(Box::new(t))
    }

    /// Constants in the operational sense: `skip` and numerals.
    pub fn is_constant(&self) -> bool {
        matches!(self, Term::Skip | Term::Num(_))
    }

    /// Immediate subterms, left to right.
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Skip | Term::Div(_) | Term::Num(_) | Term::Id(_) => vec![],
            Term::Op(_, a)
            | Term::Deref(a)
            | Term::Grab(a)
            | Term::Release(a)
            | Term::Lam(_, _, a)
            | Term::NewVar(_, _, a)
            | Term::NewSem(_, _, a) => vec![a],
            Term::Seq(a, b)
            | Term::Par(a, b)
            | Term::While(a, b)
            | Term::App(a, b)
            | Term::Assign(a, b) => vec![a, b],
            Term::Cond(a, b, c) => vec![a, b, c],
        }
    }

    /// Decomposes `h a1 ... an` into `(h, [a1..an])`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, a) = t {
            args.push(a.as_ref());
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Term::Id(x) => {
                if !bound.iter().any(|b| b == x) {
                    out.insert(x.clone());
                }
            }
            Term::Lam(x, _, b) | Term::NewVar(x, _, b) | Term::NewSem(x, _, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    /// Every name occurring in the term, bound or free.
    pub fn all_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |t| match t {
            Term::Id(x) | Term::Lam(x, _, _) | Term::NewVar(x, _, _) | Term::NewSem(x, _, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    pub fn visit(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Capture-avoiding substitution `self[value/x]`.
    pub fn subst(&self, x: &str, value: &Term) -> Term {
        let fv = value.free_vars();
        self.subst_with(x, value, &fv)
    }

    fn subst_with(&self, x: &str, value: &Term, fv: &BTreeSet<String>) -> Term {
        let binder = |y: &String, body: &Term, rebuild: &dyn Fn(String, Term) -> Term| -> Term {
            if y == x {
                return rebuild(y.clone(), body.clone());
            }
            if fv.contains(y) {
                let mut avoid = fv.clone();
                avoid.extend(body.all_names());
                avoid.insert(x.to_string());
                let fresh = fresh_name(y, &avoid);
                let renamed = body.subst(y, &Term::Id(fresh.clone()));
                rebuild(fresh, renamed.subst_with(x, value, fv))
            } else {
                rebuild(y.clone(), body.subst_with(x, value, fv))
            }
        };
        match self {
            Term::Id(y) if y == x => value.clone(),
            Term::Skip | Term::Div(_) | Term::Num(_) | Term::Id(_) => self.clone(),
            Term::Lam(y, ty, b) => binder(y, b, &|n, b| Term::Lam(n, ty.clone(), Box::new(b))),
            Term::NewVar(y, i, b) => binder(y, b, &|n, b| Term::NewVar(n, *i, Box::new(b))),
            Term::NewSem(y, i, b) => binder(y, b, &|n, b| Term::NewSem(n, *i, Box::new(b))),
            _ => self.map_children(|c| c.subst_with(x, value, fv)),
        }
    }

    /// Rebuilds a non-binding node with `f` applied to each child.
    pub(crate) fn map_children(&self, mut f: impl FnMut(&Term) -> Term) -> Term {
        let mut b = |t: &Term| Box::new(f(t));
        match self {
            Term::Skip | Term::Div(_) | Term::Num(_) | Term::Id(_) => self.clone(),
            Term::Op(n, a) => Term::Op(n.clone(), b(a)),
            Term::Seq(x, y) => Term::Seq(b(x), b(y)),
            Term::Par(x, y) => Term::Par(b(x), b(y)),
            Term::Cond(g, t, e) => Term::Cond(b(g), b(t), b(e)),
            Term::While(g, x) => Term::While(b(g), b(x)),
            Term::Lam(n, ty, x) => Term::Lam(n.clone(), ty.clone(), b(x)),
            Term::App(x, y) => Term::App(b(x), b(y)),
            Term::Assign(x, y) => Term::Assign(b(x), b(y)),
            Term::Deref(x) => Term::Deref(b(x)),
            Term::NewVar(n, i, x) => Term::NewVar(n.clone(), *i, b(x)),
            Term::NewSem(n, i, x) => Term::NewSem(n.clone(), *i, b(x)),
            Term::Grab(x) => Term::Grab(b(x)),
            Term::Release(x) => Term::Release(b(x)),
        }
    }
}

/// Number of abstract-syntax nodes.
pub fn term_size(term: &Term) -> usize {
    1 + term.children().into_iter().map(term_size).sum::<usize>()
}

/// First of `base`, `base1`, `base2`, ... not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "z" } else { stem };
    if !avoid.contains(stem) {
        return stem.to_string();
    }
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded supply of names")
}

/// Ordered typing context with pairwise distinct names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context {
    entries: Vec<(String, Type)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a context; a repeated name keeps its first position but takes the later type.
    pub fn from_entries(entries: impl IntoIterator<Item = (String, Type)>) -> Self {
        let mut c = Self::new();
        for (n, t) in entries {
            c.push(n, t);
        }
        c
    }

    pub fn push(&mut self, name: impl Into<String>, ty: Type) {
        let name = name.into();
        if let Some(slot) = self.entries.iter_mut().find(|(n, _)| *n == name) {
            slot.1 = ty;
        } else {
            self.entries.push((name, ty));
        }
    }

    pub fn with(&self, name: impl Into<String>, ty: Type) -> Self {
        let mut c = self.clone();
        c.push(name, ty);
        c
    }

    pub fn lookup(&self, name: &str) -> Option<&Type> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|(n, _)| n == name)
    }

    pub fn entries(&self) -> &[(String, Type)] {
        &self.entries
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, t)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}:{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(term_size(&Term::Skip), 1);
        assert_eq!(term_size(&Term::seq(Term::Skip, Term::Skip)), 3);
    }

    #[test]
    fn arrow_display_is_right_associated() {
        let t = Type::curried([Type::arrow(Type::COM, Type::COM), Type::EXP], Type::COM);
        assert_eq!(t.to_string(), "(com -> com) -> exp -> com");
        let (args, b) = t.uncurry();
        assert_eq!(args.len(), 2);
        assert_eq!(b, BaseType::Com);
    }

    #[test]
    fn substitution_avoids_capture() {
        // (fun y -> x; y)[y/x] must not capture.
        let body = Term::lam("y", Type::COM, Term::seq(Term::id("x"), Term::id("y")));
        let out = body.subst("x", &Term::id("y"));
        match out {
            Term::Lam(b, _, inner) => {
                assert_ne!(b, "y");
                assert_eq!(*inner, Term::seq(Term::id("y"), Term::id(b)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn shadowed_binder_blocks_substitution() {
        let t = Term::newvar("x", 0, Term::deref(Term::id("x")));
        assert_eq!(t.subst("x", &Term::Skip), t);
    }

    #[test]
    fn context_keeps_order() {
        let c = Context::from_entries([("f".into(), Type::COM), ("c".into(), Type::EXP)]);
        assert_eq!(c.position("c"), Some(1));
        assert_eq!(c.to_string(), "f:com, c:exp");
    }
}
