//! Decides may-termination of closed commands with the reference interpreter.

use fica_sata::interp::{may_terminate, DEFAULT_BUDGET};
use fica_sata::syntax::parse;
use fica_sata::Settings;

fn main() {
    let s = Settings::default();
    for src in [
        "newvar x := 0 in (x := 1 || while !x do skip)",
        "newvar x := 0 in while (if !x then 0 else 1) do skip",
        "newsem s := 1 in grab(s)",
    ] {
        let t = parse(src, &s.ops).unwrap();
        println!("{:<16} {src}", may_terminate(&t, &s, DEFAULT_BUDGET).label());
    }
}
