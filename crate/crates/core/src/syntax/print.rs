//! Pretty printer whose output parses back to the same tree.

use std::fmt;

use super::term::{Term, Type};

// Binding strength of each syntactic position, loosest first.
const TOP: u8 = 0;
const SEQ: u8 = 1;
const ASSIGN: u8 = 2;
const APP: u8 = 3;
const PREFIX: u8 = 4;

pub fn print(term: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, term, TOP);
    out
}

fn is_long_form(t: &Term) -> bool {
    matches!(
        t,
        Term::Cond(..) | Term::While(..) | Term::NewVar(..) | Term::NewSem(..) | Term::Lam(..)
    )
}

fn level_of(t: &Term) -> u8 {
    match t {
        Term::Par(..) => TOP,
        Term::Seq(..) => SEQ,
        Term::Assign(..) => ASSIGN,
        Term::App(..) => APP,
        Term::Op(..) | Term::Deref(..) => PREFIX,
        _ if is_long_form(t) => TOP,
        _ => PREFIX + 1,
    }
}

fn write_type(out: &mut String, ty: &Type) {
    out.push_str(&ty.to_string());
}

fn write_term(out: &mut String, t: &Term, ctx: u8) {
    // Long forms swallow everything to their right, so they only go bare at the top.
    let needs_parens = if is_long_form(t) { ctx > TOP } else { level_of(t) < ctx };
    if needs_parens {
        out.push('(');
        write_term(out, t, TOP);
        out.push(')');
        return;
    }
    match t {
        Term::Skip => out.push_str("skip"),
        Term::Div(ty) => {
            out.push_str("div : ");
            if matches!(ty, Type::Arrow(..)) {
                out.push('(');
                write_type(out, ty);
                out.push(')');
            } else {
                write_type(out, ty);
            }
        }
        Term::Num(n) => out.push_str(&n.to_string()),
        Term::Id(x) => out.push_str(x),
        Term::Op(name, a) => {
            out.push_str(name);
            out.push(' ');
            write_term(out, a, PREFIX);
        }
        Term::Deref(a) => {
            out.push('!');
            write_term(out, a, PREFIX);
        }
        Term::Par(a, b) => {
            write_term(out, a, SEQ);
            out.push_str(" || ");
            write_term(out, b, TOP);
        }
        Term::Seq(a, b) => {
            write_term(out, a, ASSIGN);
            out.push_str("; ");
            write_term(out, b, SEQ);
        }
        Term::Assign(a, b) => {
            write_term(out, a, APP);
            out.push_str(" := ");
            write_term(out, b, APP);
        }
        Term::App(f, a) => {
            write_term(out, f, APP);
            out.push(' ');
            write_term(out, a, PREFIX + 1);
        }
        Term::Grab(a) | Term::Release(a) => {
            out.push_str(if matches!(t, Term::Grab(_)) { "grab(" } else { "release(" });
            write_term(out, a, TOP);
            out.push(')');
        }
        Term::Cond(g, a, b) => {
            out.push_str("if ");
            write_term(out, g, TOP);
            out.push_str(" then ");
            write_term(out, a, TOP);
            out.push_str(" else ");
            write_term(out, b, TOP);
        }
        Term::While(g, b) => {
            out.push_str("while ");
            write_term(out, g, TOP);
            out.push_str(" do ");
            write_term(out, b, TOP);
        }
        Term::NewVar(x, i, b) | Term::NewSem(x, i, b) => {
            out.push_str(if matches!(t, Term::NewVar(..)) { "newvar " } else { "newsem " });
            out.push_str(x);
            out.push_str(&format!(" := {i} in "));
            write_term(out, b, TOP);
        }
        Term::Lam(x, ty, b) => {
            out.push_str("fun ");
            out.push_str(x);
            out.push_str(" : ");
            write_type(out, ty);
            out.push_str(" -> ");
            write_term(out, b, TOP);
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::settings::OpTable;
    use crate::syntax::parse::parse;
    use proptest::prelude::*;

    fn roundtrip(t: &Term) {
        let s = print(t);
        let back = parse(&s, &OpTable::default()).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(&back, t, "printed as {s}");
    }

    #[test]
    fn fixed_cases() {
        roundtrip(&Term::seq(Term::while_(Term::Num(1), Term::Skip), Term::Skip));
        roundtrip(&Term::app(Term::id("f"), Term::lam("y", Type::COM, Term::id("y"))));
        roundtrip(&Term::apps(Term::Div(Type::arrow(Type::COM, Type::COM)), [Term::Skip]));
        roundtrip(&Term::par(Term::par(Term::Skip, Term::Skip), Term::Skip));
        roundtrip(&Term::seq(Term::seq(Term::Skip, Term::Skip), Term::Skip));
        roundtrip(&Term::op("succ", Term::op("pred", Term::app(Term::id("f"), Term::Num(0)))));
    }

    fn arb_type() -> impl Strategy<Value = Type> {
        let leaf = prop_oneof![Just(Type::COM), Just(Type::EXP), Just(Type::VAR), Just(Type::SEM)];
        leaf.prop_recursive(3, 8, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| Type::arrow(a, b))
        })
    }

    pub(crate) fn arb_term() -> impl Strategy<Value = Term> {
        let name = prop_oneof![Just("x"), Just("y"), Just("f"), Just("c")].prop_map(String::from);
        let leaf = prop_oneof![
            Just(Term::Skip),
            (0u32..3).prop_map(Term::Num),
            name.clone().prop_map(Term::Id),
            arb_type().prop_map(Term::Div),
        ];
        leaf.prop_recursive(5, 40, 3, move |inner| {
            let b = || inner.clone();
            prop_oneof![
                (prop_oneof![Just("succ"), Just("pred")], b())
                    .prop_map(|(n, a)| Term::op(n, a)),
                (b(), b()).prop_map(|(x, y)| Term::seq(x, y)),
                (b(), b()).prop_map(|(x, y)| Term::par(x, y)),
                (b(), b(), b()).prop_map(|(g, x, y)| Term::cond(g, x, y)),
                (b(), b()).prop_map(|(g, x)| Term::while_(g, x)),
                (name.clone(), arb_type(), b()).prop_map(|(x, t, m)| Term::lam(x, t, m)),
                (b(), b()).prop_map(|(x, y)| Term::app(x, y)),
                (b(), b()).prop_map(|(x, y)| Term::assign(x, y)),
                b().prop_map(Term::deref),
                (name.clone(), 0u32..2, b()).prop_map(|(x, i, m)| Term::newvar(x, i, m)),
                (name.clone(), 0u32..2, b()).prop_map(|(x, i, m)| Term::newsem(x, i, m)),
                b().prop_map(Term::grab),
                b().prop_map(Term::release),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_after_print_is_identity(t in arb_term()) {
            let s = print(&t);
            let back = parse(&s, &OpTable::default());
            prop_assert_eq!(back, Ok(t), "printed as {}", s);
        }
    }
}
