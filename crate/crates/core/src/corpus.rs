//! Sample programs used by the test suites and the runnable examples.

/// `(context, term)` pairs in normal form; each compiles under the default settings.
pub const OPEN_TERMS: &[(&str, &str)] = &[
    ("", "skip"),
    ("c:com", "c; c"),
    ("c:com", "c || c"),
    ("f:com->com, c:com", "newvar x := 0 in (f(x := 1) || if !x then c else div); !x"),
    ("x:var", "x := succ !x"),
    ("f:com->com", "f(skip)"),
    ("f:com->com, c:com", "f(c) || c"),
    ("s:sem, c:com", "grab(s); c; release(s)"),
    ("f:exp->com", "newvar x := 1 in f(!x)"),
    ("f:com->com", "newvar x := 0 in f(x := 1); !x"),
    ("c:com, d:com", "newsem s in (grab(s); c; release(s)) || (grab(s); d; release(s))"),
    ("b:exp, c:com", "while b do c"),
    ("f:(com->com)->com", "f(fun y : com -> y; y)"),
    ("f:com->com->com, c:com", "f c (c || c)"),
    ("g:exp->exp", "g (g 0)"),
    ("x:var", "(x := 1) || (if !x then x := 0 else skip)"),
    ("f:(exp->com)->com, c:com", "f(fun v : exp -> if v then c else skip)"),
    ("", "fun y : com -> y || y"),
];

/// Closed commands with their may-termination verdict under the default settings.
pub const CLOSED_COMMANDS: &[(&str, bool)] = &[
    ("skip", true),
    ("div : com", false),
    ("skip; skip", true),
    ("skip || skip", true),
    ("skip; div : com", false),
    ("skip || div : com", false),
    ("while 0 do skip", true),
    ("while 1 do skip", false),
    ("if 0 then skip else div : com", false),
    ("if 1 then skip else div : com", true),
    ("newvar x := 0 in x := 1; while !x do x := 0", true),
    ("newvar x := 1 in while !x do skip", false),
    ("newvar x := 0 in (x := 1 || skip); while !x do x := 0", true),
    ("newvar x := 0 in (x := 1) || (while (if !x then 0 else 1) do skip)", true),
    ("newvar x := 0 in while (if !x then 0 else 1) do skip", false),
    ("newsem s in grab(s); release(s); grab(s)", true),
    ("newsem s in grab(s); grab(s)", false),
    ("newsem s in (grab(s); release(s)) || (grab(s); release(s))", true),
    ("newsem s := 1 in grab(s)", false),
    ("newsem s := 1 in release(s); grab(s)", true),
    ("newvar x := 0 in newsem s in (grab(s); x := 1) || (grab(s); x := 1)", false),
    ("newvar x := 0 in (x := 1 || x := 0); if !x then skip else skip", true),
    ("newvar x := 0 in if succ !x then skip else div : com", true),
    ("newvar x := 0 in while !x do skip; x := 1; if !x then skip else div : com", true),
];
