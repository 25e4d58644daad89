//! Translates an open term into an automaton and prints it with its size.

use fica_sata::compile::compile;
use fica_sata::syntax::{parse, parse_context};
use fica_sata::Settings;

fn main() {
    let s = Settings::default();
    let ctx = parse_context("f:com->com, c:com").unwrap();
    let t = parse("newvar x := 0 in (f(x := 1) || if !x then c else div); !x", &s.ops).unwrap();
    let r = compile(&ctx, &t, &s).unwrap();
    print!("{}", r.automaton);
    println!("# type {}", r.ty);
    println!("# {} states, {} transitions, nesting {}", r.stats.states, r.stats.transitions, r.stats.k);
    println!("# oa={} pq={}", r.invariants.oa, r.invariants.pq);
}
