#![allow(dead_code)]

use fica_sata::compile::{compile, CompileResult};
use fica_sata::corpus::OPEN_TERMS;
use fica_sata::syntax::{normalize, parse, parse_context, Term};
use fica_sata::Settings;

pub fn term(src: &str) -> Term {
    parse(src, &Settings::default().ops).unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// Normalizes and compiles under default settings.
pub fn build(ctx: &str, src: &str) -> CompileResult {
    let s = Settings::default();
    let ctx = parse_context(ctx).unwrap_or_else(|e| panic!("{ctx}: {e}"));
    let nf = normalize(&ctx, &term(src), &s).unwrap_or_else(|e| panic!("{src}: {e}"));
    compile(&ctx, &nf, &s).unwrap_or_else(|e| panic!("{src}: {e}"))
}

pub fn open_corpus() -> Vec<(&'static str, CompileResult)> {
    OPEN_TERMS.iter().map(|&(c, t)| (t, build(c, t))).collect()
}

/// Constructor names occurring in `t`.
pub fn constructs(t: &Term) -> Vec<&'static str> {
    let mut out = Vec::new();
    t.visit(&mut |s| {
        out.push(match s {
            Term::Skip => "skip",
            Term::Div(_) => "div",
            Term::Num(_) => "num",
            Term::Op(..) => "op",
            Term::Seq(..) => "seq",
            Term::Par(..) => "par",
            Term::Cond(..) => "cond",
            Term::While(..) => "while",
            Term::Id(_) => "id",
            Term::Lam(..) => "lam",
            Term::App(..) => "app",
            Term::Assign(..) => "assign",
            Term::Deref(_) => "deref",
            Term::NewVar(..) => "newvar",
            Term::NewSem(..) => "newsem",
            Term::Grab(_) => "grab",
            Term::Release(_) => "release",
        })
    });
    out
}

/// `skip; skip; ...` with `n` commands.
pub fn seq_family(n: usize) -> String {
    vec!["skip"; n].join("; ")
}

pub fn par_family(n: usize) -> String {
    vec!["skip"; n].join(" || ")
}

/// `n` nested local variables, each assigned once in sequence.
pub fn newvar_family(n: usize) -> String {
    let decls: String = (1..=n).map(|i| format!("newvar x{i} := 0 in ")).collect();
    let body: Vec<String> = (1..=n).map(|i| format!("x{i} := 1")).collect();
    format!("{decls}{}", body.join("; "))
}

/// Least-squares line through `(x, y)`, returned with the root-mean-square residual over the mean of `y`.
pub fn linear_fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let icept = my - slope * mx;
    let rss: f64 = points.iter().map(|(x, y)| (y - slope * x - icept).powi(2)).sum();
    (slope, icept, (rss / n).sqrt() / my)
}
