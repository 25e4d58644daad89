//! Loads an automaton from text and checks its structural invariants.

use fica_sata::automaton::parse_automaton;
use fica_sata::invariants::{check_fa, check_oa, check_pq};
use fica_sata::search::Bounds;

const PAIR: &str = "sata v1
states 0 a b x y
states 1 p q
add-even † --run--> {a, b}
add-odd a --run^{c}--> p
add-odd b --run^{d}--> q
del-odd p --done^{c}--> x
del-odd q --done^{d}--> y
del-even {x, y} --done--> †
";

fn main() {
    let aut = parse_automaton(PAIR).unwrap();
    println!("oa {} pq {}", check_oa(&aut), check_pq(&aut));
    let fa = check_fa(&aut, Bounds::new(8, 2));
    println!("fa {} (truncated: {})", fa.holds, fa.truncated);
}
