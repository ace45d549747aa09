// Strict alternating cycles and reversal of pair sets.

use planedim::gen::standard;
use planedim::poset::{find_strict_alternating_cycle, is_reversible, reverse_set, Pair};

pub fn run_example() -> Result<bool, planedim::Error> {
    let s3 = standard(3)?.poset;
    // (a_i, b_i) for all i forms a strict alternating cycle.
    let all: Vec<Pair> = (0..3).map(|i| Pair::new(i, 3 + i)).collect();
    let cycle = find_strict_alternating_cycle(&s3, &all)?.expect("S_3 is not reversible as a whole");
    println!("cycle of length {}: {:?}", cycle.pairs.len(), cycle.pairs);
    let part = &all[..2];
    let ext = reverse_set(&s3, &all[..1])?;
    println!("{{(a1, b1)}} is reversed by {:?}", ext.order);
    println!("two standard pairs reversible: {}", is_reversible(&s3, part));
    Ok(is_reversible(&s3, &all[..1]))
}

fn main() {
    run_example().expect("cycle example");
}
