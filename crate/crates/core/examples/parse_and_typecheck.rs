//! Parses a term, infers its type and prints its η-long β-normal form.

use fica_sata::syntax::{normalize, parse, parse_context, print, typecheck};
use fica_sata::Settings;

fn main() {
    let s = Settings::default();
    let ctx = parse_context("f:com->com, c:com").unwrap();
    let t = parse("(fun k : com -> com -> k c) f", &s.ops).unwrap();
    println!("term   {}", print(&t));
    println!("type   {}", typecheck(&ctx, &t, &s).unwrap());
    println!("normal {}", print(&normalize(&ctx, &t, &s).unwrap()));
}
