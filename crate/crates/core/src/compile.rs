//! Inductive translation of β-normal η-long terms into saturating automata.
//!
//! Sub-automata are built over one shared state arena, so gluing two pieces only
//! concatenates transition lists. Each piece keeps its level-0 entry (`roots`) and
//! exit (`finals`) transitions apart, since almost every case rewires exactly those.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::automaton::{bag, AddEven, AddOdd, Automaton, Bag, DelEven, DelOdd, EpsEven, EpsMem, State, StateId};
use crate::invariants::{check_oa, check_pq};
use crate::moves::{BaseMove, Letter, Tag};
use crate::settings::Settings;
use crate::syntax::{is_normal, strip_binders, typecheck, BaseType, Context, Term, Type, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("term is not in beta-normal eta-long form: {0}")]
    NotNormal(String),
    #[error("unsupported construct: {0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompileStats {
    pub states: usize,
    pub transitions: usize,
    #[serde(rename = "transitionsExpanded")]
    pub transitions_expanded: usize,
    pub k: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub oa: bool,
    pub pq: bool,
}

#[derive(Clone, Debug)]
pub struct CompileResult {
    pub automaton: Automaton,
    /// Type of the compiled term.
    pub ty: Type,
    pub stats: CompileStats,
    pub invariants: InvariantReport,
}

#[derive(Clone, Debug)]
enum Labelled {
    AddEven(AddEven),
    AddOdd(AddOdd),
    DelEven(DelEven),
    DelOdd(DelOdd),
}

impl Labelled {
    fn letter_mut(&mut self) -> &mut Letter {
        match self {
            Labelled::AddEven(t) => &mut t.letter,
            Labelled::AddOdd(t) => &mut t.letter,
            Labelled::DelEven(t) => &mut t.letter,
            Labelled::DelOdd(t) => &mut t.letter,
        }
    }
}

/// A partially built automaton.
#[derive(Debug, Default)]
struct Frag {
    states: Vec<StateId>,
    roots: Vec<(BaseMove, Bag)>,
    finals: Vec<(Bag, BaseMove)>,
    /// Memory transitions on this piece's own level-0 cells.
    mem0: Vec<EpsMem>,
    /// Memory transitions on deeper levels, private to nodes this piece created.
    deep_mem: Vec<EpsMem>,
    eps: Vec<EpsEven>,
    /// Labelled transitions below level 0, keyed by the context identifier heading their letter.
    free: BTreeMap<String, Vec<Labelled>>,
    memory: u32,
}

/// Appends the shorter vector onto the longer one.
fn append<T>(a: &mut Vec<T>, mut b: Vec<T>) {
    if b.len() > a.len() {
        std::mem::swap(a, &mut b);
    }
    a.append(&mut b);
}

impl Frag {
    /// Merges everything except entry, exit and memory size.
    fn absorb(&mut self, other: Frag) {
        append(&mut self.states, other.states);
        append(&mut self.mem0, other.mem0);
        append(&mut self.deep_mem, other.deep_mem);
        append(&mut self.eps, other.eps);
        for (k, v) in other.free {
            append(self.free.entry(k).or_default(), v);
        }
    }

    fn shift_cells(&mut self, by: u32) {
        for t in &mut self.mem0 {
            t.cell += by;
        }
    }

    fn push_free(&mut self, head: &str, t: Labelled) {
        self.free.entry(head.to_string()).or_default().push(t);
    }
}

fn initial_question(b: BaseType) -> BaseMove {
    BaseMove::questions_of(b, 0)[0]
}

struct Compiler<'s> {
    settings: &'s Settings,
    states: Vec<State>,
}

impl<'s> Compiler<'s> {
    fn state(&mut self, kind: &str, level: u32, frag: &mut Frag) -> StateId {
        let id = self.states.len();
        self.states.push(State { name: format!("{kind}{id}"), level });
        frag.states.push(id);
        id
    }

    fn base_of(&self, ctx: &Context, t: &Term) -> Result<BaseType, CompileError> {
        let ty = typecheck(ctx, t, self.settings)?;
        ty.base().ok_or_else(|| CompileError::NotNormal(format!("`{t}` is not of ground type")))
    }

    /// A constant answer to the initial question: `† --q--> {s}`, `{s} --a--> †` for each `a`.
    fn leaf(&mut self, kind: &str, q: BaseMove, answers: &[BaseMove]) -> Frag {
        let mut f = Frag::default();
        let s = self.state(kind, 0, &mut f);
        f.roots.push((q, vec![s]));
        for &a in answers {
            f.finals.push((vec![s], a));
        }
        f
    }

    fn comp(&mut self, ctx: &Context, t: &Term) -> Result<Frag, CompileError> {
        let max = self.settings.max;
        Ok(match t {
            Term::Skip => self.leaf("skip", BaseMove::Run, &[BaseMove::Done]),
            Term::Num(i) => self.leaf("num", BaseMove::Q, &[BaseMove::Val(*i)]),
            Term::Div(ty) => {
                let mut f = Frag::default();
                let s = self.state("div", 0, &mut f);
                for q in BaseMove::questions_of(ty.result_base(), max) {
                    f.roots.push((q, vec![s]));
                }
                f
            }
            Term::Op(name, m) => {
                let mut f = self.comp(ctx, m)?;
                for (_, a) in &mut f.finals {
                    if let BaseMove::Val(i) = *a {
                        let v = self
                            .settings
                            .apply_op(name, i)
                            .ok_or_else(|| CompileError::Unsupported(format!("unknown operator `{name}`")))?;
                        *a = BaseMove::Val(v);
                    }
                }
                f
            }
            Term::Par(a, b) => {
                let fa = self.comp(ctx, a)?;
                let mut fb = self.comp(ctx, b)?;
                fb.shift_cells(fa.memory);
                let mut f = Frag { memory: fa.memory + fb.memory, ..Frag::default() };
                let open = [self.state("par_in", 0, &mut f), self.state("par_in", 0, &mut f)];
                let shut = [self.state("par_out", 0, &mut f), self.state("par_out", 0, &mut f)];
                f.roots.push((BaseMove::Run, bag(open)));
                f.finals.push((bag(shut), BaseMove::Done));
                for (u, mut part) in [fa, fb].into_iter().enumerate() {
                    for (_, d) in std::mem::take(&mut part.roots) {
                        f.eps.push(EpsEven { source: vec![open[u]], target: d });
                    }
                    for (d, _) in std::mem::take(&mut part.finals) {
                        f.eps.push(EpsEven { source: d, target: vec![shut[u]] });
                    }
                    f.absorb(part);
                }
                f
            }
            Term::Seq(a, b) => {
                let mut fa = self.comp(ctx, a)?;
                let mut fb = self.comp(ctx, b)?;
                let q = initial_question(self.base_of(ctx, b)?);
                fb.shift_cells(fa.memory);
                let mut f = Frag { memory: fa.memory + fb.memory, ..Frag::default() };
                let mid = self.state("seq_mid", 0, &mut f);
                f.roots = fa.roots.drain(..).map(|(_, d)| (q, d)).collect();
                for (d, _) in fa.finals.drain(..) {
                    f.eps.push(EpsEven { source: d, target: vec![mid] });
                }
                for (_, d) in fb.roots.drain(..) {
                    f.eps.push(EpsEven { source: vec![mid], target: d });
                }
                f.finals = std::mem::take(&mut fb.finals);
                f.absorb(fa);
                f.absorb(fb);
                f
            }
            Term::Cond(g, a, b) => {
                let mut fg = self.comp(ctx, g)?;
                let mut fa = self.comp(ctx, a)?;
                let mut fb = self.comp(ctx, b)?;
                let q = initial_question(self.base_of(ctx, a)?);
                fa.shift_cells(fg.memory);
                fb.shift_cells(fg.memory + fa.memory);
                let mut f = Frag { memory: fg.memory + fa.memory + fb.memory, ..Frag::default() };
                f.roots = fg.roots.drain(..).map(|(_, d)| (q, d)).collect();
                for (d, ans) in fg.finals.drain(..) {
                    let branch = if ans.value() == Some(0) { &fb } else { &fa };
                    for (_, e) in &branch.roots {
                        f.eps.push(EpsEven { source: d.clone(), target: e.clone() });
                    }
                }
                f.finals.append(&mut fa.finals);
                f.finals.append(&mut fb.finals);
                fa.roots.clear();
                fb.roots.clear();
                f.absorb(fg);
                f.absorb(fa);
                f.absorb(fb);
                f
            }
            Term::While(g, body) => {
                let mut fg = self.comp(ctx, g)?;
                let mut fb = self.comp(ctx, body)?;
                fb.shift_cells(fg.memory);
                let mut f = Frag { memory: fg.memory + fb.memory, ..Frag::default() };
                let test = self.state("while_test", 0, &mut f);
                let exit = self.state("while_exit", 0, &mut f);
                f.roots.push((BaseMove::Run, vec![test]));
                f.finals.push((vec![exit], BaseMove::Done));
                for (_, d) in fg.roots.drain(..) {
                    f.eps.push(EpsEven { source: vec![test], target: d });
                }
                for (d, ans) in fg.finals.drain(..) {
                    if ans.value() == Some(0) {
                        f.eps.push(EpsEven { source: d, target: vec![exit] });
                    } else {
                        for (_, e) in &fb.roots {
                            f.eps.push(EpsEven { source: d.clone(), target: e.clone() });
                        }
                    }
                }
                for (d, _) in fb.finals.drain(..) {
                    f.eps.push(EpsEven { source: d, target: vec![test] });
                }
                fb.roots.clear();
                f.absorb(fg);
                f.absorb(fb);
                f
            }
            Term::Assign(target, value) => {
                let mut ft = self.comp(ctx, target)?;
                let mut fv = self.comp(ctx, value)?;
                ft.shift_cells(fv.memory);
                let mut f = Frag { memory: fv.memory + ft.memory, ..Frag::default() };
                f.roots = fv.roots.drain(..).map(|(_, d)| (BaseMove::Run, d)).collect();
                for (d, ans) in fv.finals.drain(..) {
                    for (q, e) in &ft.roots {
                        if *q == BaseMove::Write(ans.value().unwrap_or(0)) && ans.value().is_some() {
                            f.eps.push(EpsEven { source: d.clone(), target: e.clone() });
                        }
                    }
                }
                for (d, ans) in ft.finals.drain(..) {
                    if ans == BaseMove::Ok {
                        f.finals.push((d, BaseMove::Done));
                    }
                }
                ft.roots.clear();
                f.absorb(fv);
                f.absorb(ft);
                f
            }
            Term::Deref(m) => {
                let mut f = self.comp(ctx, m)?;
                f.roots.retain(|(q, _)| *q == BaseMove::Read);
                f.roots.iter_mut().for_each(|(q, _)| *q = BaseMove::Q);
                f.finals.retain(|(_, a)| a.value().is_some());
                f
            }
            Term::Grab(m) | Term::Release(m) => {
                let want = if matches!(t, Term::Grab(_)) { BaseMove::Grab } else { BaseMove::Release };
                let mut f = self.comp(ctx, m)?;
                f.roots.retain(|(q, _)| *q == want);
                f.roots.iter_mut().for_each(|(q, _)| *q = BaseMove::Run);
                f.finals.retain(|(_, a)| *a == BaseMove::Ok);
                f.finals.iter_mut().for_each(|(_, a)| *a = BaseMove::Done);
                f
            }
            Term::NewVar(x, init, body) | Term::NewSem(x, init, body) => {
                let is_var = matches!(t, Term::NewVar(..));
                let ty = if is_var { Type::VAR } else { Type::SEM };
                let inner = self.comp(&ctx.with(x.clone(), ty), body)?;
                self.bind_cell(x, *init, is_var, inner)
            }
            Term::Id(_) | Term::App(..) => self.application(ctx, t)?,
            Term::Lam(..) => {
                return Err(CompileError::NotNormal(format!("abstraction `{t}` in ground position")))
            }
        })
    }

    /// Turns the uses of a local variable or semaphore into memory transitions on a new level-0 cell.
    fn bind_cell(&mut self, x: &str, init: u32, is_var: bool, mut inner: Frag) -> Frag {
        let max = self.settings.max;
        let cell = inner.memory + 1;
        let uses = inner.free.remove(x).unwrap_or_default();
        let mut answers: HashMap<StateId, Vec<(BaseMove, StateId)>> = HashMap::new();
        for t in &uses {
            if let Labelled::DelOdd(t) = t {
                answers.entry(t.source).or_default().push((t.letter.base, t.target));
            }
        }
        let mem = |read, source, write, target| EpsMem { mem_level: 0, cell, read, source, write, target };
        let mut f = Frag { memory: cell, ..Frag::default() };
        for t in &uses {
            let Labelled::AddOdd(q) = t else { continue };
            for &(a, e) in answers.get(&q.target).into_iter().flatten() {
                match (q.letter.base, a) {
                    (BaseMove::Write(j), BaseMove::Ok) if is_var => f.mem0.push(mem(None, q.source, j, e)),
                    (BaseMove::Read, BaseMove::Val(j)) if is_var => f.mem0.push(mem(Some(j), q.source, j, e)),
                    (BaseMove::Grab, BaseMove::Ok) if !is_var => f.mem0.push(mem(Some(0), q.source, 1, e)),
                    (BaseMove::Release, BaseMove::Ok) if !is_var => {
                        for v in 1..=max {
                            f.mem0.push(mem(Some(v), q.source, 0, e));
                        }
                    }
                    _ => {}
                }
            }
        }
        let kind = if is_var { "var" } else { "sem" };
        let start = self.state(&format!("{kind}_init"), 0, &mut f);
        let ready = self.state(&format!("{kind}_ready"), 0, &mut f);
        f.mem0.push(mem(None, start, init, ready));
        for (q, d) in inner.roots.drain(..) {
            f.roots.push((q, vec![start]));
            f.eps.push(EpsEven { source: vec![ready], target: d });
        }
        f.roots.dedup();
        f.finals = std::mem::take(&mut inner.finals);
        f.absorb(inner);
        f
    }

    /// `f M_l ... M_1` with `f` from the context, including the zero-argument case.
    fn application(&mut self, ctx: &Context, t: &Term) -> Result<Frag, CompileError> {
        let max = self.settings.max;
        let (head, args) = t.spine();
        let Term::Id(fname) = head else {
            return Err(CompileError::NotNormal(format!("application head `{head}` is not an identifier")));
        };
        let fty = ctx
            .lookup(fname)
            .ok_or_else(|| CompileError::Type(TypeError::Rule {
                rule: "identifier",
                subterm: fname.clone(),
                message: "not in the context".into(),
            }))?
            .clone();
        let (arg_types, base) = fty.uncurry();
        if arg_types.len() != args.len() {
            return Err(CompileError::NotNormal(format!("`{fname}` is not fully applied in `{t}`")));
        }
        let l = args.len() as u32;
        let mut f = Frag::default();
        let mut calls = Vec::new();
        for q in BaseMove::questions_of(base, max) {
            let zero = self.state("app_wait", 0, &mut f);
            let one = self.state("app_call", 1, &mut f);
            calls.push(one);
            f.roots.push((q, vec![zero]));
            let call = Letter::new(q, Tag::named(fname.clone(), []), 0);
            f.push_free(fname, Labelled::AddOdd(AddOdd { source: zero, letter: call, target: one }));
            for a in BaseMove::answers_to(q, max) {
                let back = self.state("app_back", 0, &mut f);
                let ret = Letter::new(a, Tag::named(fname.clone(), []), 0);
                f.push_free(fname, Labelled::DelOdd(DelOdd { source: one, letter: ret, target: back }));
                f.finals.push((vec![back], a));
            }
        }
        for (i, (arg, aty)) in args.into_iter().zip(arg_types).enumerate() {
            let u = l - i as u32;
            let arity = aty.arity();
            let (inner_ctx, body) = strip_binders(ctx, arg);
            if inner_ctx.len() != ctx.len() + arity {
                return Err(CompileError::NotNormal(format!("argument `{arg}` is not eta-long")));
            }
            let binders: HashMap<String, u32> = inner_ctx.entries()[ctx.len()..]
                .iter()
                .enumerate()
                .map(|(j, (y, _))| (y.clone(), (arity - j) as u32))
                .collect();
            let mut part = self.comp(&inner_ctx, &body)?;
            for &s in &part.states {
                self.states[s].level += 2;
            }
            for mut m in part.mem0.drain(..).chain(part.deep_mem.drain(..)) {
                m.mem_level += 2;
                f.deep_mem.push(m);
            }
            for (h, mut ts) in std::mem::take(&mut part.free) {
                match binders.get(&h) {
                    Some(&w) => {
                        for t in &mut ts {
                            let letter = t.letter_mut();
                            let mut path = vec![u, w];
                            path.extend(&letter.tag.path);
                            letter.tag = Tag::named(fname.clone(), path);
                        }
                        append(f.free.entry(fname.clone()).or_default(), ts);
                    }
                    None => {
                        for t in &mut ts {
                            let letter = t.letter_mut();
                            if letter.is_question() && letter.tag.path.is_empty() {
                                letter.rho += 2;
                            }
                        }
                        append(f.free.entry(h).or_default(), ts);
                    }
                }
            }
            let tag = Tag::named(fname.clone(), [u]);
            for (q, d) in part.roots.drain(..) {
                for &one in &calls {
                    let letter = Letter::new(q, tag.clone(), 0);
                    f.push_free(fname, Labelled::AddEven(AddEven { source: Some(one), letter, target: d.clone() }));
                }
            }
            for (d, a) in part.finals.drain(..) {
                let letter = Letter::new(a, tag.clone(), 0);
                f.push_free(fname, Labelled::DelEven(DelEven { source: d, letter }));
            }
            f.memory = f.memory.max(part.memory);
            f.absorb(part);
        }
        Ok(f)
    }

    fn finish(self, mut f: Frag, binders: &HashMap<String, u32>) -> Automaton {
        let mut a = Automaton::new(self.settings.max);
        a.states = self.states;
        a.memory = f.memory;
        for (q, d) in f.roots.drain(..) {
            a.add_even.push(AddEven { source: None, letter: Letter::plain(q), target: d });
        }
        for (d, ans) in f.finals.drain(..) {
            a.del_even.push(DelEven { source: d, letter: Letter::plain(ans) });
        }
        a.eps_mem = f.mem0;
        a.eps_mem.append(&mut f.deep_mem);
        a.eps_even = f.eps;
        for (h, ts) in f.free {
            for mut t in ts {
                if let Some(&w) = binders.get(&h) {
                    let letter = t.letter_mut();
                    let mut path = vec![w];
                    path.extend(&letter.tag.path);
                    letter.tag = Tag::anon(path);
                }
                match t {
                    Labelled::AddEven(t) => a.add_even.push(t),
                    Labelled::AddOdd(t) => a.add_odd.push(t),
                    Labelled::DelEven(t) => a.del_even.push(t),
                    Labelled::DelOdd(t) => a.del_odd.push(t),
                }
            }
        }
        a.prune();
        a
    }
}

/// Compiles `ctx |- term`. The term must already be β-normal and η-long;
/// leading abstractions become anonymous argument tags `1, 2, ...` counted from the right.
pub fn compile(ctx: &Context, term: &Term, settings: &Settings) -> Result<CompileResult, CompileError> {
    let start = Instant::now();
    let ty = typecheck(ctx, term, settings)?;
    if !is_normal(ctx, term, settings) {
        return Err(CompileError::NotNormal(format!("`{term}`")));
    }
    let (inner_ctx, body) = strip_binders(ctx, term);
    let arity = ty.arity();
    let binders: HashMap<String, u32> = inner_ctx.entries()[ctx.len()..]
        .iter()
        .enumerate()
        .map(|(j, (y, _))| (y.clone(), (arity - j) as u32))
        .collect();
    let mut c = Compiler { settings, states: Vec::new() };
    let frag = c.comp(&inner_ctx, &body)?;
    let automaton = c.finish(frag, &binders);
    let millis = start.elapsed().as_secs_f64() * 1000.0;
    let s = automaton.size_stats();
    let stats = CompileStats {
        states: s.states,
        transitions: s.transitions,
        transitions_expanded: s.transitions_expanded,
        k: s.k,
        n: s.n,
        millis,
    };
    let invariants = InvariantReport { oa: check_oa(&automaton), pq: check_pq(&automaton) };
    Ok(CompileResult { automaton, ty, stats, invariants })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{accepts, language, traces, Bounds};
    use crate::syntax::{parse, parse_context};
    use crate::word::Word;
    use crate::OpTable;
    use std::collections::BTreeSet;

    fn build(ctx: &str, src: &str) -> Automaton {
        let ctx = parse_context(ctx).unwrap();
        let t = parse(src, &OpTable::default()).unwrap();
        let r = compile(&ctx, &t, &Settings::default()).unwrap();
        assert!(r.automaton.validate().is_empty(), "{:?}", r.automaton.validate());
        r.automaton
    }

    fn lang(a: &Automaton, len: usize, copies: usize) -> BTreeSet<String> {
        language(a, Bounds::new(len, copies)).0.iter().map(Word::to_string).collect()
    }

    fn set(ws: &[&str]) -> BTreeSet<String> {
        ws.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn skip_has_one_state_and_two_transitions() {
        let a = build("", "skip");
        assert_eq!(a.states.len(), 1);
        assert_eq!(a.transition_count(), 2);
        let (t, _) = traces(&a, Bounds::new(4, 1));
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn numerals_and_operators() {
        assert_eq!(lang(&build("", "1"), 4, 1), set(&["(q,0) (1,0)"]));
        assert_eq!(lang(&build("", "succ 1"), 4, 1), set(&["(q,0) (0,0)"]));
        assert!(lang(&build("", "div : exp"), 4, 1).is_empty());
    }

    #[test]
    fn sequencing_and_parallel_identifiers() {
        let seq = lang(&build("c:com", "c; c"), 6, 1);
        assert_eq!(seq, set(&["(run,0) (run^{c},1<0) (done^{c},1) (run^{c},3<0) (done^{c},3) (done,0)"]));
        let par = lang(&build("c:com", "c || c"), 6, 1);
        assert_eq!(par.len(), 3);
        assert!(par.contains("(run,0) (run^{c},1<0) (run^{c},2<0) (done^{c},1) (done^{c},2) (done,0)"));
    }

    #[test]
    fn conditional_and_loop() {
        assert_eq!(lang(&build("", "if 1 then 1 else 0"), 4, 1), set(&["(q,0) (1,0)"]));
        assert_eq!(lang(&build("", "if 0 then 1 else 0"), 4, 1), set(&["(q,0) (0,0)"]));
        assert!(lang(&build("", "while 1 do skip"), 4, 1).is_empty());
        assert_eq!(lang(&build("", "while 0 do skip"), 4, 1), set(&["(run,0) (done,0)"]));
    }

    #[test]
    fn local_state() {
        assert_eq!(lang(&build("", "newvar x := 0 in x := 1; !x"), 4, 1), set(&["(q,0) (1,0)"]));
        assert_eq!(lang(&build("", "newvar x := 1 in !x"), 4, 1), set(&["(q,0) (1,0)"]));
        assert!(lang(&build("", "newsem s in grab(s); grab(s)"), 4, 1).is_empty());
        let ok = build("", "newsem s in grab(s); release(s); grab(s)");
        assert_eq!(lang(&ok, 4, 1), set(&["(run,0) (done,0)"]));
    }

    #[test]
    fn free_variable_access() {
        let a = build("x:var", "x := succ !x");
        assert!(accepts(&a, &"(run,0) (read^{x},1<0) (0^{x},1) (write(1)^{x},3<0) (ok^{x},3) (done,0)".parse().unwrap()));
        let g = build("s:sem", "grab(s)");
        assert_eq!(lang(&g, 4, 1), set(&["(run,0) (grab^{s},1<0) (ok^{s},1) (done,0)"]));
    }

    #[test]
    fn race_term_accepts_the_race_word() {
        let a = build(
            "f:com->com, c:com",
            "newvar x := 0 in (f(x := 1) || if !x then c else div); !x",
        );
        let w: Word = "(q,0) (run^{f},1<0) (run^{f.1},2<1) (done^{f.1},2) (run^{c},4<0) (done^{c},4) (done^{f},1) (1,0)"
            .parse()
            .unwrap();
        assert!(accepts(&a, &w));
        assert_eq!(a.depth, 2);
    }

    #[test]
    fn pointer_index_is_raised_under_an_argument() {
        let a = build("f:com->com, c:com", "f(c)");
        let w: Word = "(run,0) (run^{f},1<0) (run^{f.1},2<1) (run^{c,2},3<2) (done^{c},3) (done^{f.1},2) (done^{f},1) (done,0)"
            .parse()
            .unwrap();
        assert!(accepts(&a, &w));
    }

    #[test]
    fn higher_order_binders_become_argument_paths() {
        let a = build("f:(com->com)->com", "f(fun y : com -> y)");
        let w: Word = "(run,0) (run^{f},1<0) (run^{f.1},2<1) (run^{f.1.1},3<2) (done^{f.1.1},3) \
                       (done^{f.1},2) (done^{f},1) (done,0)"
            .parse()
            .unwrap();
        assert!(accepts(&a, &w));
    }

    #[test]
    fn leading_abstractions_become_anonymous_tags() {
        let a = build("", "fun y : com -> y");
        assert_eq!(lang(&a, 4, 1), set(&["(run,0) (run^{1},1<0) (done^{1},1) (done,0)"]));
    }

    #[test]
    fn race_term_matches_the_hand_built_automaton() {
        let a = build(
            "f:com->com, c:com",
            "newvar x := 0 in (f(x := 1) || if !x then c else div); !x",
        );
        let h = crate::handbuilt::race_automaton(1);
        for copies in [1, 2] {
            assert_eq!(lang(&a, 8, copies), lang(&h, 8, copies));
            let t = |x| traces(x, Bounds::new(8, copies)).0;
            assert_eq!(t(&a), t(&h));
        }
    }

    #[test]
    fn non_normal_input_is_rejected() {
        let ctx = parse_context("").unwrap();
        let t = parse("(fun y : com -> y) skip", &OpTable::default()).unwrap();
        assert!(matches!(compile(&ctx, &t, &Settings::default()), Err(CompileError::NotNormal(_))));
        let f = parse_context("f:com->com").unwrap();
        let bare = parse("f", &OpTable::default()).unwrap();
        assert!(matches!(compile(&f, &bare, &Settings::default()), Err(CompileError::NotNormal(_))));
    }
}
