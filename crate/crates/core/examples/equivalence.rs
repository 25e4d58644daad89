//! Compares two terms by their accepted words up to a bound.

use fica_sata::compile::compile;
use fica_sata::search::{language, Bounds};
use fica_sata::syntax::{parse, parse_context};
use fica_sata::Settings;

fn words(ctx: &str, src: &str) -> std::collections::BTreeSet<fica_sata::word::Word> {
    let s = Settings::default();
    let ctx = parse_context(ctx).unwrap();
    let aut = compile(&ctx, &parse(src, &s.ops).unwrap(), &s).unwrap().automaton;
    language(&aut, Bounds::new(8, 2)).0
}

fn main() {
    for (l, r) in [("skip; c", "c"), ("c; c", "c || c")] {
        let (a, b) = (words("c:com", l), words("c:com", r));
        match a.symmetric_difference(&b).next() {
            None => println!("{l}  ~  {r}"),
            Some(w) => println!("{l}  /~  {r}   witness {w}"),
        }
    }
}
