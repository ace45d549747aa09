// Exact dimension of small posets with a minimum covering by reversible sets.

use planedim::gen::{chain, standard};
use planedim::poset::{build_poset, dim_exact, incomparable_pairs, DimOptions};

pub fn run_example() -> Result<Vec<usize>, planedim::Error> {
    let mut dims = Vec::new();
    for n in 2..=4 {
        let s = standard(n)?.poset;
        let r = dim_exact(&s, &incomparable_pairs(&s), DimOptions::default())?;
        println!("dim(S_{n}) = {} with classes of sizes {:?}", r.d, r.covering.classes.iter().map(Vec::len).collect::<Vec<_>>());
        dims.push(r.d);
    }
    // Two disjoint 3-element chains.
    let two_chains = build_poset(6, &[(0, 1), (1, 2), (3, 4), (4, 5)])?;
    let r = dim_exact(&two_chains, &incomparable_pairs(&two_chains), DimOptions::default())?;
    println!("two disjoint chains: dim = {}", r.d);
    dims.push(r.d);
    let c = chain(5)?.poset;
    println!("a chain has {} incomparable pairs", incomparable_pairs(&c).len());
    Ok(dims)
}

fn main() {
    run_example().expect("dimension example");
}
