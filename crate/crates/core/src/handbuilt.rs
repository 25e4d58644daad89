//! A hand-written automaton for the race term
//! `newvar x := 0 in (f(x := 1) || if !x then c else div); !x` under `f:com->com, c:com`.
//!
//! `l` states track the left branch (the call to `f`), `r` states the conditional.
//! The single level-0 memory cell holds `x`.

use crate::automaton::{bag, AddEven, AddOdd, Automaton, DelEven, DelOdd, EpsMem};
use crate::moves::Letter;

fn letter(s: &str) -> Letter {
    s.parse().expect("well-formed letter")
}

pub fn race_automaton(max: u32) -> Automaton {
    let mut a = Automaton::new(max);
    a.memory = 1;
    let [l1, l2, r1, r2, r3, r4] = ["l1", "l2", "r1", "r2", "r3", "r4"].map(|n| a.add_state(n, 0));
    let [l1p, r1p] = ["l1'", "r1'"].map(|n| a.add_state(n, 1));
    let [l1pp, l2pp] = ["l1''", "l2''"].map(|n| a.add_state(n, 2));

    a.add_even.push(AddEven { source: None, letter: letter("q"), target: bag([l1, r1]) });
    a.del_even.push(DelEven { source: bag([l2, r4]), letter: letter("1") });

    a.add_odd.push(AddOdd { source: l1, letter: letter("run^{f}"), target: l1p });
    a.del_odd.push(DelOdd { source: l1p, letter: letter("done^{f}"), target: l2 });
    a.add_odd.push(AddOdd { source: r3, letter: letter("run^{c}"), target: r1p });
    a.del_odd.push(DelOdd { source: r1p, letter: letter("done^{c}"), target: r4 });

    a.add_even.push(AddEven { source: Some(l1p), letter: letter("run^{f.1}"), target: bag([l1pp]) });
    a.del_even.push(DelEven { source: bag([l2pp]), letter: letter("done^{f.1}") });

    let mem = |read, source, write, target| EpsMem { mem_level: 0, cell: 1, read, source, write, target };
    a.eps_mem.push(mem(Some(0), r1, 0, r2));
    for i in 1..=max {
        a.eps_mem.push(mem(Some(i), r1, i, r3));
    }
    a.eps_mem.push(mem(None, l1pp, 1, l2pp));
    a.normalize();
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{accepts, language, Bounds};
    use crate::word::Word;

    const RACE_WORD: &str = "(q,0) (run^{f},1<0) (run^{f.1},2<1) (done^{f.1},2) (run^{c},4<0) \
                             (done^{c},4) (done^{f},1) (1,0)";

    #[test]
    fn shape() {
        let a = race_automaton(1);
        assert!(a.validate().is_empty(), "{:?}", a.validate());
        assert_eq!((a.depth, a.memory, a.states.len()), (2, 1, 10));
        assert_eq!(a.sigma.len(), 8);
    }

    #[test]
    fn accepts_the_race_word_only_with_value_one() {
        let a = race_automaton(1);
        assert!(accepts(&a, &RACE_WORD.parse().unwrap()));
        assert!(!accepts(&a, &"(q,0) (0,0)".parse::<Word>().unwrap()));
    }

    #[test]
    fn every_accepted_word_calls_c_after_the_argument_ran() {
        let a = race_automaton(1);
        let (l, _) = language(&a, Bounds::new(8, 1));
        assert!(!l.is_empty());
        for w in &l {
            let pos = |s: &str| w.letters().position(|x| x.to_string() == s).unwrap();
            assert!(pos("run^{f.1}") < pos("run^{c}"), "{w}");
        }
    }
}
