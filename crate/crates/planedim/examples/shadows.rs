// Shadow decompositions: blocks, reversing elements and shadow depth.

use planedim::gen::wheel;
use planedim::instance::Instance;

pub fn run_example() -> Result<usize, planedim::Error> {
    let g = wheel(4)?;
    let inst = Instance::new(g.poset.clone(), g.plane.clone().expect("wheels are drawn"), Vec::new())?;
    let mut deepest = 0;
    for &b in inst.b_elements() {
        let s = inst.shadow_decomposition(b)?;
        if s.blocks.iter().any(|blk| !blk.degenerate) {
            println!(
                "{:>5}: {} blocks, reversing {:?}, depth {}",
                g.labels[b],
                s.blocks.len(),
                s.reversing_elements().iter().map(|&v| g.labels[v].as_str()).collect::<Vec<_>>(),
                s.depth()
            );
        }
        deepest = deepest.max(s.depth());
    }
    println!("largest shadow depth: {deepest}");
    Ok(deepest)
}

fn main() {
    run_example().expect("shadow example");
}
