//! Decodes words into plays and checks legality and swap closure.

use fica_sata::play::{check_play_diag, decode, is_complete, swap_closure};
use fica_sata::word::Word;

fn main() {
    let w: Word = "(run,0) (run^{c},1<0) (run^{c},2<0) (done^{c},2) (done^{c},1) (done,0)".parse().unwrap();
    let p = decode(&w).unwrap();
    println!("legal: {:?}", check_play_diag(&p).is_ok());
    println!("complete: {}", is_complete(&p));
    println!("{} plays reachable by swaps", swap_closure(&p).len());
}
