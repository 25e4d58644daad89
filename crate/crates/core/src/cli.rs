//! The `fica` command line.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 unreadable or ill-typed input,
//! 3 interpreter budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::automaton::{parse_automaton, Automaton};
use crate::compile::{compile, CompileResult};
use crate::dot::run_to_dot;
use crate::interp::{may_terminate, Termination, DEFAULT_BUDGET};
use crate::invariants::check_fa;
use crate::saturation::check_saturated;
use crate::search::{accepts, witness_run, Bounds, Runner};
use crate::settings::Settings;
use crate::syntax::{normalize, parse, parse_context, print, typecheck, Context, Term};
use crate::word::Word;

#[derive(Parser, Debug)]
#[command(name = "fica", about = "Compile concurrent Algol programs to saturating automata and explore them")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Typing context for open terms, e.g. "f:com->com, c:com".
    #[arg(long, default_value = "")]
    ctx: String,
    /// Largest value of the finite integer type.
    #[arg(long, default_value_t = 1)]
    max: u32,
}

#[derive(Args, Debug, Clone)]
struct BoundArgs {
    /// Longest word explored.
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    /// Copies of each O-question allowed below one parent.
    #[arg(long, default_value_t = 2)]
    max_copies: usize,
    /// Cap on consecutive silent steps; unlimited when absent.
    #[arg(long)]
    max_eps_chain: Option<usize>,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        Bounds { max_word_len: self.max_len, max_copies: self.max_copies, max_eps_chain: self.max_eps_chain }
    }
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Program file, or inline source when no such file exists.
    term: String,
    /// Read TERM as a serialized automaton instead of a program.
    #[arg(long)]
    sata: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the type of a term.
    Typecheck {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Print the beta-normal eta-long form.
    Normalize {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Decide may-termination of a closed term by exhaustive reduction.
    Interp {
        #[command(flatten)]
        common: Common,
        term: String,
        /// Largest number of distinct terms visited.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Print the automaton followed by statistics and invariant checks.
    Compile {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bounds: BoundArgs,
        term: String,
        /// Also check final readiness by bounded exploration.
        #[arg(long)]
        fa: bool,
    },
    /// List every bounded trace.
    Traces {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        input: Input,
    },
    /// List every bounded accepted word.
    Language {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        input: Input,
    },
    /// Decide whether one word is accepted.
    Accepts {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        /// Canonical word, e.g. "(run,0) (done,0)".
        word: String,
    },
    /// Check that bounded traces and language are closed under allowed swaps.
    SaturationCheck {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        input: Input,
    },
    /// Compare the bounded languages of two terms.
    Equiv {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        bounds: BoundArgs,
        first: String,
        second: String,
    },
    /// Write the configurations of a run on a word as a DOT graph.
    Dot {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        /// Canonical word to run.
        word: String,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<String>,
    },
}

/// A failure that ends the command with the given exit code.
struct Exit(i32, String);

type Res<T> = Result<T, Exit>;

fn bad_input(msg: impl std::fmt::Display) -> Exit {
    Exit(2, msg.to_string())
}

fn source(arg: &str) -> Res<String> {
    let p = Path::new(arg);
    if p.exists() && !p.is_dir() {
        std::fs::read_to_string(p).map_err(|e| bad_input(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn load(common: &Common, arg: &str) -> Res<(Context, Term, Settings)> {
    let settings = Settings::with_max(common.max);
    let ctx = parse_context(&common.ctx).map_err(|e| bad_input(format!("context: {e}")))?;
    let term = parse(&source(arg)?, &settings.ops).map_err(|e| bad_input(format!("term: {e}")))?;
    Ok((ctx, term, settings))
}

fn compiled(common: &Common, arg: &str) -> Res<CompileResult> {
    let (ctx, term, settings) = load(common, arg)?;
    let nf = normalize(&ctx, &term, &settings).map_err(bad_input)?;
    compile(&ctx, &nf, &settings).map_err(bad_input)
}

fn automaton(common: &Common, input: &Input) -> Res<Automaton> {
    if input.sata {
        parse_automaton(&source(&input.term)?).map_err(bad_input)
    } else {
        Ok(compiled(common, &input.term)?.automaton)
    }
}

fn word(s: &str) -> Res<Word> {
    s.parse().map_err(|e| bad_input(format!("word: {e}")))
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.to_string()
    }
}

fn bounds_line(b: Bounds, truncated: bool) -> String {
    let note = if truncated { " (bounds reached; results are partial)" } else { "" };
    format!("# bounds {b}{note}")
}

fn listing(common: &Common, bounds: &BoundArgs, input: &Input, accepted: bool, out: &mut dyn Write) -> Res<i32> {
    let a = automaton(common, input)?;
    let ex = Runner::new(&a, bounds.bounds()).exploration();
    let words = if accepted { &ex.language } else { &ex.traces };
    let mut text = bounds_line(bounds.bounds(), ex.truncated);
    text.push_str(&format!("\n# {} {}\n", words.len(), if accepted { "accepted words" } else { "traces" }));
    for w in words {
        text.push_str(&show(w));
        text.push('\n');
    }
    out.write_all(text.as_bytes()).map_err(|e| Exit(2, e.to_string()))?;
    Ok(0)
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Res<i32> {
    let io = |e: std::io::Error| Exit(2, e.to_string());
    match cmd {
        Cmd::Typecheck { common, term } => {
            let (ctx, t, s) = load(&common, &term)?;
            let ty = typecheck(&ctx, &t, &s).map_err(bad_input)?;
            writeln!(out, "{ty}").map_err(io)?;
        }
        Cmd::Normalize { common, term } => {
            let (ctx, t, s) = load(&common, &term)?;
            let nf = normalize(&ctx, &t, &s).map_err(bad_input)?;
            writeln!(out, "{}", print(&nf)).map_err(io)?;
        }
        Cmd::Interp { common, term, budget } => {
            let (ctx, t, s) = load(&common, &term)?;
            if !ctx.is_empty() {
                return Err(bad_input("interp runs closed terms only; drop --ctx"));
            }
            typecheck(&ctx, &t, &s).map_err(bad_input)?;
            let verdict = may_terminate(&t, &s, budget);
            writeln!(out, "{}", verdict.label()).map_err(io)?;
            return Ok(match verdict {
                Termination::Terminates => 0,
                Termination::Diverges => 1,
                Termination::BudgetExceeded => 3,
            });
        }
        Cmd::Compile { common, bounds, term, fa } => {
            let r = compiled(&common, &term)?;
            write!(out, "{}", r.automaton).map_err(io)?;
            writeln!(out, "# type {}", r.ty).map_err(io)?;
            writeln!(out, "# stats {}", serde_json::to_string(&r.stats).expect("plain data")).map_err(io)?;
            let fa_field = if fa {
                let rep = check_fa(&r.automaton, bounds.bounds());
                json!({ "holds": rep.holds, "truncated": rep.truncated, "bounds": bounds.bounds() })
            } else {
                json!("unchecked")
            };
            let inv = json!({ "oa": r.invariants.oa, "pq": r.invariants.pq, "fa": fa_field });
            writeln!(out, "# invariants {inv}").map_err(io)?;
        }
        Cmd::Traces { common, bounds, input } => return listing(&common, &bounds, &input, false, out),
        Cmd::Language { common, bounds, input } => return listing(&common, &bounds, &input, true, out),
        Cmd::Accepts { common, input, word: w } => {
            let a = automaton(&common, &input)?;
            let ok = accepts(&a, &word(&w)?);
            writeln!(out, "{}", if ok { "ACCEPTED" } else { "REJECTED" }).map_err(io)?;
            return Ok(if ok { 0 } else { 1 });
        }
        Cmd::SaturationCheck { common, bounds, input } => {
            let a = automaton(&common, &input)?;
            let ex = Runner::new(&a, bounds.bounds()).exploration();
            writeln!(out, "{}", bounds_line(bounds.bounds(), ex.truncated)).map_err(io)?;
            let mut violations = check_saturated(&ex.traces);
            violations.extend(check_saturated(&ex.language));
            if violations.is_empty() {
                writeln!(
                    out,
                    "SATURATED: {} traces, {} accepted words, no violations",
                    ex.traces.len(),
                    ex.language.len()
                )
                .map_err(io)?;
            } else {
                writeln!(out, "NOT SATURATED: {} violations", violations.len()).map_err(io)?;
                for v in &violations {
                    writeln!(out, "  {v}").map_err(io)?;
                }
                return Ok(1);
            }
        }
        Cmd::Equiv { common, bounds, first, second } => {
            let a = compiled(&common, &first)?;
            let b = compiled(&common, &second)?;
            writeln!(out, "# bounds {}", bounds.bounds()).map_err(io)?;
            if a.ty != b.ty {
                writeln!(out, "DIFFER: types {} and {}", a.ty, b.ty).map_err(io)?;
                return Ok(1);
            }
            let la = Runner::new(&a.automaton, bounds.bounds()).exploration().language;
            let lb = Runner::new(&b.automaton, bounds.bounds()).exploration().language;
            let witness = la
                .symmetric_difference(&lb)
                .min_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
            match witness {
                None => writeln!(out, "EQUAL-UP-TO-BOUNDS: {} accepted words each", la.len()).map_err(io)?,
                Some(w) => {
                    let side = if la.contains(w) { "first" } else { "second" };
                    writeln!(out, "DIFFER: {} accepted only by the {side} term", show(w)).map_err(io)?;
                    return Ok(1);
                }
            }
        }
        Cmd::Dot { common, input, word: w, output } => {
            let a = automaton(&common, &input)?;
            let w = word(&w)?;
            let Some(steps) = witness_run(&a, &w) else {
                writeln!(out, "NOT A TRACE: {}", show(&w)).map_err(io)?;
                return Ok(1);
            };
            let dot = run_to_dot(&a, &steps);
            match output {
                Some(path) => std::fs::write(&path, dot).map_err(|e| bad_input(format!("{path}: {e}")))?,
                None => out.write_all(dot.as_bytes()).map_err(io)?,
            }
        }
    }
    Ok(0)
}

/// Runs the command line `argv` (program name first), writing results to `out` and errors to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return e.exit_code();
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

/// Runs against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
