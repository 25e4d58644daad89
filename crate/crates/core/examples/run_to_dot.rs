//! Finds an accepting run for a word and renders every configuration as DOT.

use fica_sata::dot::run_to_dot;
use fica_sata::handbuilt::race_automaton;
use fica_sata::search::witness_run;
use fica_sata::word::Word;

fn main() {
    let aut = race_automaton(1);
    let w: Word = "(q,0) (run^{f},1<0) (run^{f.1},2<1) (run^{c},3<0) (done^{c},3) (done^{f.1},2) (done^{f},1) (1,0)".parse().unwrap();
    match witness_run(&aut, &w) {
        Some(steps) => print!("{}", run_to_dot(&aut, &steps)),
        None => eprintln!("no run reads {w}"),
    }
}
