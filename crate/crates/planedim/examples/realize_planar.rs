// End-to-end realizer of a Kelly poset with the pipeline report.

use planedim::gen::kelly;
use planedim::pipeline::{realize_planar, PipelineOptions};
use planedim::poset::verify_realizer;

pub fn run_example() -> Result<usize, planedim::Error> {
    let g = kelly(6)?;
    let plane = g.plane.expect("Kelly posets are drawn");
    let pairs = g.poset.incomparable_pairs();
    let (r, report) = realize_planar(&g.poset, &pairs, &plane, &PipelineOptions::default())?;
    let check = verify_realizer(&g.poset, &r);
    println!("{} extensions, verified: {}", r.len(), check.ok);
    println!("s = {} (exact: {}), bound {}", report.s, report.s_exact, report.bound);
    println!("stages: {:?}", report.stages);
    Ok(r.len())
}

fn main() {
    run_example().expect("pipeline example");
}
