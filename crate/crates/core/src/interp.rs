//! Small-step reduction and the may-termination oracle.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::settings::Settings;
use crate::syntax::Term;

/// Active cells, keyed by their generated names (`#0`, `#1`, ...).
pub type Store = BTreeMap<String, u32>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MachineState {
    pub store: Store,
    pub term: Term,
}

impl MachineState {
    pub fn new(term: Term) -> Self {
        Self { store: Store::new(), term }
    }
}

/// All one-step successors.
pub fn step(state: &MachineState, settings: &Settings) -> BTreeSet<MachineState> {
    successors(&state.store, &state.term, settings)
        .into_iter()
        .map(|(store, term)| MachineState { store, term })
        .collect()
}

fn cell<'a>(s: &Store, t: &'a Term) -> Option<&'a str> {
    match t {
        Term::Id(v) if s.contains_key(v) => Some(v),
        _ => None,
    }
}

fn fresh_cell(s: &Store) -> String {
    (0..).map(|k| format!("#{k}")).find(|n| !s.contains_key(n)).expect("names are unbounded")
}

/// Lifts the successors of a subterm through a one-hole context.
fn inside(
    s: &Store,
    sub: &Term,
    settings: &Settings,
    wrap: impl Fn(Term) -> Term,
) -> Vec<(Store, Term)> {
    successors(s, sub, settings).into_iter().map(|(s2, t2)| (s2, wrap(t2))).collect()
}

fn successors(s: &Store, t: &Term, settings: &Settings) -> Vec<(Store, Term)> {
    match t {
        Term::Skip | Term::Num(_) | Term::Div(_) | Term::Id(_) | Term::Lam(..) => vec![],
        Term::Par(a, b) => {
            let mut out = Vec::new();
            if **a == Term::Skip && **b == Term::Skip {
                out.push((s.clone(), Term::Skip));
            }
            out.extend(inside(s, a, settings, |a2| Term::Par(Box::new(a2), b.clone())));
            out.extend(inside(s, b, settings, |b2| Term::Par(a.clone(), Box::new(b2))));
            out
        }
        // `skip; M -> M` for every M, not only constants.
        Term::Seq(a, b) if **a == Term::Skip => vec![(s.clone(), (**b).clone())],
        Term::Seq(a, b) => inside(s, a, settings, |a2| Term::Seq(Box::new(a2), b.clone())),
        Term::Op(name, a) => match **a {
            Term::Num(i) => {
                let v = settings.apply_op(name, i).expect("operator checked by the type checker");
                vec![(s.clone(), Term::Num(v))]
            }
            _ => inside(s, a, settings, |a2| Term::op(name.clone(), a2)),
        },
        Term::Cond(g, a, b) => match **g {
            Term::Num(0) => vec![(s.clone(), (**b).clone())],
            Term::Num(_) => vec![(s.clone(), (**a).clone())],
            _ => inside(s, g, settings, |g2| Term::Cond(Box::new(g2), a.clone(), b.clone())),
        },
        Term::While(g, b) => vec![(
            s.clone(),
            Term::cond((**g).clone(), Term::seq((**b).clone(), t.clone()), Term::Skip),
        )],
        Term::App(f, a) => match &**f {
            Term::Lam(x, _, body) => vec![(s.clone(), body.subst(x, a))],
            _ => inside(s, f, settings, |f2| Term::App(Box::new(f2), a.clone())),
        },
        Term::Deref(a) => match cell(s, a) {
            Some(v) => vec![(s.clone(), Term::Num(s[v]))],
            None => inside(s, a, settings, Term::deref),
        },
        Term::Assign(target, value) => match **value {
            Term::Num(i) => match cell(s, target) {
                Some(v) => {
                    let mut s2 = s.clone();
                    s2.insert(v.to_string(), i);
                    vec![(s2, Term::Skip)]
                }
                None => inside(s, target, settings, |t2| Term::assign(t2, Term::Num(i))),
            },
            _ => inside(s, value, settings, |v2| Term::Assign(target.clone(), Box::new(v2))),
        },
        Term::Grab(a) | Term::Release(a) => {
            let grab = matches!(t, Term::Grab(_));
            match cell(s, a) {
                Some(v) => {
                    let cur = s[v];
                    let fires = if grab { cur == 0 } else { cur != 0 };
                    if !fires {
                        return vec![];
                    }
                    let mut s2 = s.clone();
                    s2.insert(v.to_string(), if grab { 1 } else { 0 });
                    vec![(s2, Term::Skip)]
                }
                None if grab => inside(s, a, settings, Term::grab),
                None => inside(s, a, settings, Term::release),
            }
        }
        Term::NewVar(x, init, body) | Term::NewSem(x, init, body) => {
            if body.is_constant() {
                return vec![(s.clone(), (**body).clone())];
            }
            let is_var = matches!(t, Term::NewVar(..));
            let v = fresh_cell(s);
            let mut inner = s.clone();
            inner.insert(v.clone(), *init);
            let opened = body.subst(x, &Term::id(v.clone()));
            successors(&inner, &opened, settings)
                .into_iter()
                .map(|(mut s2, t2)| {
                    let now = s2.remove(&v).expect("cell stays allocated during a step");
                    let closed = Box::new(t2.subst(&v, &Term::id(x.clone())));
                    let rebuilt = if is_var {
                        Term::NewVar(x.clone(), now, closed)
                    } else {
                        Term::NewSem(x.clone(), now, closed)
                    };
                    (s2, rebuilt)
                })
                .collect()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    Terminates,
    Diverges,
    BudgetExceeded,
}

impl Termination {
    pub fn label(self) -> &'static str {
        match self {
            Termination::Terminates => "TERMINATES",
            Termination::Diverges => "DIVERGES",
            Termination::BudgetExceeded => "BUDGET-EXCEEDED",
        }
    }
}

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Searches for a reduction sequence from a closed term to a constant.
///
/// Cell contents live inside the `newvar`/`newsem` binders between steps, so
/// the top-level store is always empty and terms alone identify states.
pub fn may_terminate(term: &Term, settings: &Settings, budget: usize) -> Termination {
    let mut seen: HashSet<Term> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(term.clone());
    queue.push_back(term.clone());
    let empty = Store::new();
    while let Some(t) = queue.pop_front() {
        if t.is_constant() {
            return Termination::Terminates;
        }
        for (_, next) in successors(&empty, &t, settings) {
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Termination::BudgetExceeded;
                }
                queue.push_back(next);
            }
        }
    }
    Termination::Diverges
}
