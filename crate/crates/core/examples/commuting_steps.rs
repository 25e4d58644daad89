//! Counts step pairs that can be reordered, over configurations reachable within a bound.

use fica_sata::handbuilt::race_automaton;
use fica_sata::lemmas::{commutes, premises, Lemma};
use fica_sata::search::{reachable, Bounds};

fn main() {
    let aut = race_automaton(1);
    let ix = aut.index();
    let (configs, _) = reachable(&aut, Bounds::new(8, 1));
    for lemma in Lemma::ALL {
        let (mut ok, mut total) = (0, 0);
        for c in &configs {
            for (x, y) in premises(&aut, &ix, c, lemma) {
                total += 1;
                ok += commutes(&aut, &ix, c, lemma, x, y) as usize;
            }
        }
        println!("{:<17} {ok}/{total}", lemma.name());
    }
}
