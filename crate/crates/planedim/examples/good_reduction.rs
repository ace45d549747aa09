// Risky and dangerous pairs, addresses and maximal good instances.

use planedim::gen::wheel;
use planedim::goodinst::{good_reduction, maximalize};
use planedim::instance::Instance;

pub fn run_example() -> Result<usize, planedim::Error> {
    let g = wheel(6)?;
    let plane = g.plane.expect("wheels are drawn");
    let p = g.poset;
    let pairs = p.incomparable_pairs().into_iter().filter(|q| p.leq(plane.x0(), q.b)).collect();
    let inst = Instance::new(p, plane, pairs)?;
    let red = good_reduction(&inst)?;
    println!("not risky: {} + {} pairs", red.nonrisky[0].len(), red.nonrisky[1].len());
    let mut good = 0;
    for class in &red.classes {
        print!("address ({}, {}) parity {}: {} pairs", class.address.j, class.address.x, class.theta, class.pairs.len());
        if let Some(gi) = &class.good {
            let m = maximalize(gi)?;
            print!(", {} dangerous, {} after maximalization", gi.instance().pairs().len(), m.instance().pairs().len());
            good += 1;
        }
        println!();
    }
    Ok(good)
}

fn main() {
    run_example().expect("good reduction example");
}
