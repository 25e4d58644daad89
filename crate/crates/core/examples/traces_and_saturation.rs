//! Enumerates traces and accepted words to a bound, then checks closure under swaps.

use fica_sata::compile::compile;
use fica_sata::saturation::check_saturated;
use fica_sata::search::{Bounds, Runner};
use fica_sata::syntax::{parse, parse_context};
use fica_sata::Settings;

fn main() {
    let s = Settings::default();
    let ctx = parse_context("c:com").unwrap();
    let t = parse("c || c", &s.ops).unwrap();
    let aut = compile(&ctx, &t, &s).unwrap().automaton;
    let ex = Runner::new(&aut, Bounds::new(6, 2)).exploration();
    println!("{} traces, truncated: {}", ex.traces.len(), ex.truncated);
    for w in &ex.language {
        println!("  {w}");
    }
    let bad = check_saturated(&ex.traces);
    println!("saturated: {}", bad.is_empty());
}
