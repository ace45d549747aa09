// The largest standard example spanned by incomparable pairs.

use planedim::gen::{kelly, standard};
use planedim::poset::{incomparable_pairs, se_exact, SeOptions};

pub fn run_example() -> Result<(usize, usize), planedim::Error> {
    let s5 = standard(5)?.poset;
    let a = se_exact(&s5, &incomparable_pairs(&s5), SeOptions::default())?;
    println!("se(S_5) = {} via {:?}", a.s, a.witness);
    let k = kelly(5)?;
    let b = se_exact(&k.poset, &incomparable_pairs(&k.poset), SeOptions::default())?;
    let names: Vec<String> = b.witness.iter().map(|p| format!("({}, {})", k.labels[p.a], k.labels[p.b])).collect();
    println!("se(Kelly_5) = {} (exact: {}) via {}", b.s, b.exact, names.join(" "));
    Ok((a.s, b.s))
}

fn main() {
    run_example().expect("se example");
}
