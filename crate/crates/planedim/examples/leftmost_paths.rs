// Leftmost and rightmost witnessing paths of an instance.

use planedim::gen::kelly;
use planedim::instance::Instance;

pub fn run_example() -> Result<usize, planedim::Error> {
    let g = kelly(4)?;
    let inst = Instance::new(g.poset.clone(), g.plane.clone().expect("Kelly posets are drawn"), Vec::new())?;
    let name = |path: Vec<usize>| path.iter().map(|&v| g.labels[v].clone()).collect::<Vec<_>>().join("-");
    for &b in inst.b_elements() {
        println!("{:>3}: W_L = {:<16} W_R = {}", g.labels[b], name(inst.leftmost_path(b)?), name(inst.rightmost_path(b)?));
    }
    Ok(inst.b_elements().len())
}

fn main() {
    run_example().expect("paths example");
}
