// Rotation systems, faces, the ordering of darts and comparison of paths.

use planedim::embed::{build_plane_graph, Anchor};
use planedim::poset::build_poset;

pub fn run_example() -> Result<usize, planedim::Error> {
    // 0 below 1, 2, 3 (left to right), all below 4.
    let p = build_poset(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])?;
    let rotation = vec![vec![1, 2, 3], vec![4, 0], vec![4, 0], vec![4, 0], vec![3, 2, 1]];
    let plane = build_plane_graph(&p, &rotation, Anchor { vertex: 0, after: Some(3) }, None)?;
    println!("{} faces, outer face {}", plane.faces().len(), plane.outer_face());
    let order = plane.compare_paths((0, plane.anchor()), &[0, 1, 4], &[0, 3, 4])?;
    println!("0-1-4 compared with 0-3-4: {order:?}");
    let region = plane.region_of_cycle(&[0, 1, 4, 3])?;
    println!("the cycle 0-1-4-3 encloses {} inner face(s)", region.inner_faces.count_ones(..));
    // Swapping two neighbours of the bottom leaves a rotation of genus one.
    let mut twisted = rotation.clone();
    twisted[0].swap(1, 2);
    match build_plane_graph(&p, &twisted, Anchor { vertex: 0, after: Some(3) }, None) {
        Err(e) => println!("twisted rotation rejected: {e}"),
        Ok(_) => return Err(planedim::Error::InvariantViolation("twisted rotation accepted".into())),
    }
    Ok(plane.faces().len())
}

fn main() {
    run_example().expect("embedding example");
}
