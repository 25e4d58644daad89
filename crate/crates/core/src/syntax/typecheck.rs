use thiserror::Error;

use super::term::{BaseType, Context, Term, Type};
use crate::settings::Settings;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("[{rule}] in `{subterm}`: {message}")]
    Rule { rule: &'static str, subterm: String, message: String },
    #[error("[{rule}] in `{subterm}`: result type {ty} is not supported (only com and exp)")]
    Unsupported { rule: &'static str, subterm: String, ty: Type },
}

fn rule<T>(rule: &'static str, t: &Term, message: impl Into<String>) -> Result<T, TypeError> {
    Err(TypeError::Rule { rule, subterm: t.to_string(), message: message.into() })
}

fn expect(rule_name: &'static str, whole: &Term, got: &Type, want: &Type) -> Result<(), TypeError> {
    if got == want {
        Ok(())
    } else {
        rule(rule_name, whole, format!("expected {want}, found {got}"))
    }
}

/// Computes the type of `term` under `ctx`.
pub fn typecheck(ctx: &Context, term: &Term, settings: &Settings) -> Result<Type, TypeError> {
    let tc = |t: &Term| typecheck(ctx, t, settings);
    match term {
        Term::Skip => Ok(Type::COM),
        Term::Div(ty) => Ok(ty.clone()),
        Term::Num(i) => {
            if *i <= settings.max {
                Ok(Type::EXP)
            } else {
                rule("const", term, format!("numeral exceeds max = {}", settings.max))
            }
        }
        Term::Op(name, a) => {
            if !settings.ops.contains(name) {
                return rule("op", term, format!("unknown operator `{name}`"));
            }
            expect("op", term, &tc(a)?, &Type::EXP)?;
            Ok(Type::EXP)
        }
        Term::Seq(a, b) => {
            expect("seq", term, &tc(a)?, &Type::COM)?;
            let tb = tc(b)?;
            base_result("seq", term, tb)
        }
        Term::Par(a, b) => {
            expect("par", term, &tc(a)?, &Type::COM)?;
            expect("par", term, &tc(b)?, &Type::COM)?;
            Ok(Type::COM)
        }
        Term::Cond(g, a, b) => {
            expect("if", term, &tc(g)?, &Type::EXP)?;
            let ta = tc(a)?;
            let tb = tc(b)?;
            if ta != tb {
                return rule("if", term, format!("branches have types {ta} and {tb}"));
            }
            base_result("if", term, ta)
        }
        Term::While(g, b) => {
            expect("while", term, &tc(g)?, &Type::EXP)?;
            expect("while", term, &tc(b)?, &Type::COM)?;
            Ok(Type::COM)
        }
        Term::Id(x) => match ctx.lookup(x) {
            Some(t) => Ok(t.clone()),
            None => rule("var", term, format!("unbound identifier `{x}`")),
        },
        Term::Lam(x, ty, b) => {
            let inner = ctx.with(x.clone(), ty.clone());
            let tb = typecheck(&inner, b, settings)?;
            Ok(Type::arrow(ty.clone(), tb))
        }
        Term::App(f, a) => match tc(f)? {
            Type::Arrow(arg, res) => {
                expect("app", term, &tc(a)?, &arg)?;
                Ok(*res)
            }
            other => rule("app", term, format!("applying a term of type {other}")),
        },
        Term::Assign(target, value) => {
            expect("assign", term, &tc(target)?, &Type::VAR)?;
            expect("assign", term, &tc(value)?, &Type::EXP)?;
            Ok(Type::COM)
        }
        Term::Deref(a) => {
            expect("deref", term, &tc(a)?, &Type::VAR)?;
            Ok(Type::EXP)
        }
        Term::Grab(a) | Term::Release(a) => {
            let name = if matches!(term, Term::Grab(_)) { "grab" } else { "release" };
            expect(name, term, &tc(a)?, &Type::SEM)?;
            Ok(Type::COM)
        }
        Term::NewVar(x, init, b) | Term::NewSem(x, init, b) => {
            let (name, bound) = match term {
                Term::NewVar(..) => ("newvar", Type::VAR),
                _ => ("newsem", Type::SEM),
            };
            if *init > settings.max {
                return rule(name, term, format!("initial value exceeds max = {}", settings.max));
            }
            let inner = ctx.with(x.clone(), bound);
            let tb = typecheck(&inner, b, settings)?;
            match tb.base() {
                Some(BaseType::Com | BaseType::Exp) => Ok(tb),
                _ => rule(name, term, format!("body must have type com or exp, found {tb}")),
            }
        }
    }
}

fn base_result(rule_name: &'static str, term: &Term, ty: Type) -> Result<Type, TypeError> {
    match ty.base() {
        Some(BaseType::Com | BaseType::Exp) => Ok(ty),
        Some(_) => {
            Err(TypeError::Unsupported { rule: rule_name, subterm: term.to_string(), ty })
        }
        None => rule(rule_name, term, format!("result must have a base type, found {ty}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::settings::OpTable;
    use crate::syntax::parse::{parse, parse_context};

    fn check(ctx: &str, src: &str) -> Result<Type, TypeError> {
        let t = parse(src, &OpTable::default()).unwrap();
        typecheck(&parse_context(ctx).unwrap(), &t, &Settings::default())
    }

    #[test]
    fn race_term_is_exp() {
        let ty = check(
            "f:com->com, c:com",
            "newvar x := 0 in (f(x := 1) || if !x then c else div); !x",
        );
        assert_eq!(ty, Ok(Type::EXP));
    }

    #[test]
    fn skip_is_com() {
        assert_eq!(check("", "skip"), Ok(Type::COM));
    }

    #[test]
    fn assigning_to_a_numeral_fails() {
        match check("", "1 := 2") {
            Err(TypeError::Rule { rule, .. }) => assert_eq!(rule, "assign"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn numeral_range_is_enforced() {
        assert!(check("", "2").is_err());
        assert!(check("", "newvar x := 2 in skip").is_err());
    }

    #[test]
    fn var_typed_conditional_is_unsupported() {
        assert!(matches!(
            check("a:var, b:var", "if 1 then a else b"),
            Err(TypeError::Unsupported { .. })
        ));
        assert!(matches!(check("a:var", "skip; a"), Err(TypeError::Unsupported { .. })));
    }

    #[test]
    fn higher_order() {
        assert_eq!(
            check("g:(com->com)->com", "g (fun y : com -> y; y)"),
            Ok(Type::COM)
        );
        assert_eq!(
            check("", "fun x : exp -> succ x"),
            Ok(Type::arrow(Type::EXP, Type::EXP))
        );
        assert!(check("f:com->com", "f 1").is_err());
        assert!(check("", "newsem s in grab(s); release(s)").is_ok());
    }
}
