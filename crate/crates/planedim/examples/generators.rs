// The generator families and seeded perturbations of embedded posets.

use planedim::gen::{generate, perturb, wheel, Family};

pub fn run_example() -> Result<Vec<usize>, planedim::Error> {
    let mut sizes = Vec::new();
    for (family, n) in [
        (Family::Standard, 4),
        (Family::Kelly, 4),
        (Family::Wheel, 4),
        (Family::Chain, 5),
        (Family::Antichain, 5),
        (Family::Forest, 12),
        (Family::RandomPlanar, 30),
        (Family::RootedPlanar, 30),
    ] {
        let g = generate(family, n, 1)?;
        let faces = g.plane.as_ref().map(|p| p.faces().len());
        println!("{family:?}({n}): {} elements, {} covers, faces {faces:?}", g.poset.n(), g.poset.covers().len());
        sizes.push(g.poset.n());
    }
    let w = perturb(&wheel(5)?, 0.1, 0.2, 3)?;
    println!("perturbed wheel: {} elements, {} covers", w.poset.n(), w.poset.covers().len());
    sizes.push(w.poset.n());
    Ok(sizes)
}

fn main() {
    run_example().expect("generator example");
}
