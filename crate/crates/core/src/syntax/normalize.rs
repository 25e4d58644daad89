//! Reduction to beta-normal eta-long form.

use std::collections::BTreeSet;

use super::term::{fresh_name, Context, Term, Type};
use super::typecheck::{typecheck, TypeError};
use crate::settings::Settings;

/// Normalises a well-typed term; returns the type error otherwise.
pub fn normalize(ctx: &Context, term: &Term, settings: &Settings) -> Result<Term, TypeError> {
    let ty = typecheck(ctx, term, settings)?;
    Ok(norm_at(ctx, term, &ty))
}

pub fn is_normal(ctx: &Context, term: &Term, settings: &Settings) -> bool {
    matches!(normalize(ctx, term, settings), Ok(n) if n == *term)
}

fn avoid_set(ctx: &Context, t: &Term) -> BTreeSet<String> {
    let mut s = ctx.names();
    s.extend(t.all_names());
    s
}

fn norm_at(ctx: &Context, t: &Term, ty: &Type) -> Term {
    match ty {
        Type::Arrow(a, r) => match t {
            Term::Lam(x, _, body) => {
                Term::lam(x.clone(), (**a).clone(), norm_at(&ctx.with(x.clone(), (**a).clone()), body, r))
            }
            _ => {
                let z = fresh_name("z", &avoid_set(ctx, t));
                let applied = Term::app(t.clone(), Term::id(z.clone()));
                Term::lam(z.clone(), (**a).clone(), norm_at(&ctx.with(z, (**a).clone()), &applied, r))
            }
        },
        Type::Base(_) => norm_base(ctx, t, ty),
    }
}

fn norm_base(ctx: &Context, t: &Term, ty: &Type) -> Term {
    let (head, args) = t.spine();
    if !args.is_empty() {
        return match head {
            Term::Lam(x, _, body) => {
                let reduced = Term::apps(body.subst(x, args[0]), args[1..].iter().map(|a| (*a).clone()));
                norm_base(ctx, &reduced, ty)
            }
            Term::Id(f) => {
                let fty = ctx.lookup(f).expect("well-typed head identifier");
                let (params, _) = fty.uncurry();
                let normal_args = args.iter().zip(params).map(|(a, p)| norm_at(ctx, a, p));
                Term::apps(Term::Id(f.clone()), normal_args)
            }
            Term::Div(_) => Term::Div(ty.clone()),
            other => {
                // Only base-typed constructors remain, and those cannot be applied.
                unreachable!("ill-typed application head {other:?}")
            }
        };
    }
    let n = |t: &Term, ty: &Type| norm_at(ctx, t, ty);
    match t {
        Term::Skip | Term::Num(_) | Term::Id(_) => t.clone(),
        Term::Div(_) => Term::Div(ty.clone()),
        Term::Op(name, a) => Term::op(name.clone(), n(a, &Type::EXP)),
        Term::Seq(a, b) => Term::seq(n(a, &Type::COM), n(b, ty)),
        Term::Par(a, b) => Term::par(n(a, &Type::COM), n(b, &Type::COM)),
        Term::Cond(g, a, b) => Term::cond(n(g, &Type::EXP), n(a, ty), n(b, ty)),
        Term::While(g, b) => Term::while_(n(g, &Type::EXP), n(b, &Type::COM)),
        Term::Assign(a, b) => Term::assign(n(a, &Type::VAR), n(b, &Type::EXP)),
        Term::Deref(a) => Term::deref(n(a, &Type::VAR)),
        Term::Grab(a) => Term::grab(n(a, &Type::SEM)),
        Term::Release(a) => Term::release(n(a, &Type::SEM)),
        Term::NewVar(x, i, b) => {
            Term::newvar(x.clone(), *i, norm_at(&ctx.with(x.clone(), Type::VAR), b, ty))
        }
        Term::NewSem(x, i, b) => {
            Term::newsem(x.clone(), *i, norm_at(&ctx.with(x.clone(), Type::SEM), b, ty))
        }
        Term::Lam(..) | Term::App(..) => unreachable!("handled above or ill-typed at base type"),
    }
}

/// Moves leading binders into the context, renaming any that clash with it.
pub fn strip_binders(ctx: &Context, term: &Term) -> (Context, Term) {
    let mut ctx = ctx.clone();
    let mut t = term.clone();
    while let Term::Lam(x, ty, body) = t {
        let mut name = x.clone();
        let mut body = *body;
        if ctx.lookup(&x).is_some() {
            name = fresh_name(&x, &avoid_set(&ctx, &body));
            body = body.subst(&x, &Term::id(name.clone()));
        }
        ctx.push(name, ty);
        t = body;
    }
    (ctx, t)
}
