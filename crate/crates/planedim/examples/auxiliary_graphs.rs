// The six auxiliary digraphs of a maximal good instance and the colouring
// built from their longest paths.

use planedim::auxgraph::{kappa_coloring, Analysis, AuxKind};
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
    let good = red.classes.iter().find_map(|c| c.good.as_ref()).expect("wheel 6 has dangerous pairs");
    let m = maximalize(good)?;
    let an = Analysis::new(&m)?;
    for kind in AuxKind::ALL {
        let h = an.digraph(kind);
        println!("{:>5}: {} edges, longest path {}", kind.name(), h.edges.len(), h.max_path()?);
    }
    let k = kappa_coloring(&m)?;
    println!("{} pairs in {} colour classes (s = {:?}, modulus {:?})", k.colors.len(), k.classes.len(), k.s, k.modulus);
    print!("{}", an.digraph(AuxKind::OO).to_dot().lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("\n  ...");
    Ok(k.classes.len())
}

fn main() {
    run_example().expect("auxiliary graph example");
}
