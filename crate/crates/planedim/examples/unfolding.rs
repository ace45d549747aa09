// Unfolding a connected poset into layers and contracting a layer class
// into a rooted instance.

use planedim::gen::random_planar;
use planedim::instance::{contract_to_instance, supported_split, unfold};

pub fn run_example() -> Result<usize, planedim::Error> {
    let g = random_planar(40, 7)?;
    let plane = g.plane.expect("random planar posets are drawn");
    let p = g.poset;
    let z0 = p.minimal_elements()[0];
    let u = unfold(&p, z0)?;
    println!("layers from {z0}: {:?}", u.layers.iter().map(Vec::len).collect::<Vec<_>>());
    let split = supported_split(&p, &p.incomparable_pairs(), &u)?;
    let mut built = 0;
    for (&k, class) in split.from_above.iter().chain(split.from_below.iter()) {
        if k == 0 {
            continue;
        }
        let c = contract_to_instance(&p, &plane, &u, k, class)?;
        println!(
            "layer {k}: {} pairs, contracted instance on {} elements (dual: {})",
            class.len(),
            c.instance.poset().n(),
            c.dual_applied
        );
        built += 1;
    }
    Ok(built)
}

fn main() {
    run_example().expect("unfolding example");
}
