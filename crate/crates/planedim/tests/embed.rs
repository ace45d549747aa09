use planedim::embed::{Anchor, PathOrder, PlaneGraph};
use planedim::gen::plane_from_coords;
use planedim::poset::build_poset;
use planedim::Error;

/// Clockwise rotation lists from coordinates, for graphs that are not cover graphs.
fn rotation_from_coords(n: usize, edges: &[(usize, usize)], xy: &[(f64, f64)]) -> Vec<Vec<usize>> {
    let mut nbrs = vec![Vec::new(); n];
    for &(u, v) in edges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    for (v, list) in nbrs.iter_mut().enumerate() {
        let ang = |w: usize| (xy[w].1 - xy[v].1).atan2(xy[w].0 - xy[v].0);
        list.sort_by(|&p, &q| ang(q).total_cmp(&ang(p)));
    }
    nbrs
}

fn k4() -> (Vec<(usize, usize)>, Vec<Vec<usize>>) {
    let edges = vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
    let xy = [(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (2.0, 1.5)];
    let rot = rotation_from_coords(4, &edges, &xy);
    (edges, rot)
}

/// The wheel with hub 4 inside the square 0 1 2 3.
fn square_wheel() -> PlaneGraph {
    let edges = vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)];
    let xy = [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0), (1.0, 1.0)];
    let rot = rotation_from_coords(5, &edges, &xy);
    // Anchor at 0 pointing down-left, between 3 and 1 in clockwise order.
    PlaneGraph::new(5, &edges, &rot, Anchor { vertex: 0, after: Some(1) }, None).unwrap()
}

#[test]
fn single_edge_has_one_face() {
    let g = PlaneGraph::new(2, &[(0, 1)], &[vec![1], vec![0]], Anchor { vertex: 0, after: Some(1) }, None)
        .unwrap();
    assert_eq!(g.faces().len(), 1);
    assert_eq!(g.faces()[0].boundary.len(), 2);
    assert_eq!(g.outer_face(), 0);
    assert!(g.on_outer_face(1));
}

#[test]
fn k4_has_four_faces_and_twist_is_rejected() {
    let (edges, rot) = k4();
    let g = PlaneGraph::new(4, &edges, &rot, Anchor { vertex: 0, after: Some(2) }, None).unwrap();
    assert_eq!(g.faces().len(), 4);
    assert!(g.faces().iter().all(|f| f.boundary.len() == 3));
    let mut twisted = rot.clone();
    twisted[3].swap(0, 1);
    let err = PlaneGraph::new(4, &edges, &twisted, Anchor { vertex: 0, after: Some(2) }, None).unwrap_err();
    assert!(matches!(err, Error::NonPlanarRotation { .. }), "{err:?}");
}

#[test]
fn anchor_picks_outer_face_and_hint_is_checked() {
    let (edges, rot) = k4();
    // At 0 the clockwise order is 2, 3, 1; the outer sector is between 1 and 2.
    let g = PlaneGraph::new(4, &edges, &rot, Anchor { vertex: 0, after: Some(1) }, None).unwrap();
    let outer: Vec<usize> = g.faces()[g.outer_face()].boundary.iter().map(|&d| g.tail(d)).collect();
    assert_eq!(outer.len(), 3);
    assert!(!outer.contains(&3));
    let ok = PlaneGraph::new(4, &edges, &rot, Anchor { vertex: 0, after: Some(1) }, Some(&outer));
    assert!(ok.is_ok());
    let bad = PlaneGraph::new(4, &edges, &rot, Anchor { vertex: 0, after: Some(1) }, Some(&[0, 1, 3]));
    assert!(matches!(bad, Err(Error::AnchorNotOnOuterFace)));
}

#[test]
fn rotation_mismatch_is_reported() {
    let err = PlaneGraph::new(3, &[(0, 1), (1, 2)], &[vec![1], vec![0], vec![1]], Anchor { vertex: 0, after: Some(1) }, None)
        .unwrap_err();
    assert!(matches!(err, Error::RotationMismatch(_)));
}

#[test]
fn u_ordering_starts_at_given_dart() {
    let g = square_wheel();
    let d01 = g.dart_between(0, 1).unwrap();
    let order = g.u_ordering(0, d01).unwrap();
    assert_eq!(order[0], d01);
    let heads: Vec<usize> = order.iter().map(|&d| g.head(d)).collect();
    // Clockwise at the bottom-left corner: 1 (east), then the anchor, then 3 (north), 4 (north-east).
    assert_eq!(heads.iter().filter(|&&h| h != usize::MAX).copied().collect::<Vec<_>>(), vec![1, 3, 4]);
    for (r, &d) in order.iter().enumerate() {
        assert_eq!(g.rank(d01, d), r);
    }
    assert!(matches!(g.u_ordering(1, d01), Err(Error::DartNotAtVertex(..))));
}

#[test]
fn region_membership_agrees_with_edge_test() {
    let g = square_wheel();
    for cycle in [vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![0, 1, 4], vec![1, 2, 3, 4]] {
        let region = g.region_of_cycle(&cycle).unwrap();
        for &w in &region.boundary {
            for &d in g.rotation(w) {
                if g.head(d) == usize::MAX {
                    continue;
                }
                let on_boundary = region.boundary_darts.iter().any(|&b| b / 2 == d / 2);
                let expected = on_boundary || region.inner_edges.contains(d / 2);
                assert_eq!(g.edge_in_region(&region, w, d).unwrap(), expected, "cycle {cycle:?} dart {d}");
            }
        }
        let square = cycle.len() == 4 && cycle.contains(&0);
        assert_eq!(region.interior(4), square);
    }
    let tri = g.region_of_cycle(&[0, 1, 4]).unwrap();
    assert!(!tri.contains(2) && !tri.contains(3));
    assert_eq!(tri.inner_faces.count_ones(..), 1);
}

#[test]
fn non_cycles_are_rejected() {
    let g = square_wheel();
    assert!(matches!(g.region_of_cycle(&[0, 2, 4]), Err(Error::NotSimpleCycle(_))));
    assert!(matches!(g.region_of_cycle(&[0, 1, 0]), Err(Error::NotSimpleCycle(_))));
}

fn grid() -> PlaneGraph {
    // 3 x 3 grid ordered as a product of chains.
    let id = |i: usize, j: usize| 3 * i + j;
    let mut covers = Vec::new();
    let mut xy = vec![(0.0, 0.0); 9];
    for i in 0..3 {
        for j in 0..3 {
            xy[id(i, j)] = (j as f64, i as f64);
            if i + 1 < 3 {
                covers.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < 3 {
                covers.push((id(i, j), id(i, j + 1)));
            }
        }
    }
    let p = build_poset(9, &covers).unwrap();
    plane_from_coords(&p, &xy, 0, -2.356).unwrap()
}

fn simple_paths(g: &PlaneGraph, from: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![vec![from]];
    while let Some(p) = stack.pop() {
        out.push(p.clone());
        if p.len() > max_len {
            continue;
        }
        let v = *p.last().unwrap();
        for &d in g.rotation(v) {
            let w = g.head(d);
            if w != usize::MAX && !p.contains(&w) {
                let mut q = p.clone();
                q.push(w);
                stack.push(q);
            }
        }
    }
    out
}

#[test]
fn path_order_is_a_strict_order() {
    let g = grid();
    assert_eq!(g.faces().len(), 5);
    let base = (0, g.anchor());
    let paths = simple_paths(&g, 0, 4);
    let cmp = |u: &[usize], v: &[usize]| g.compare_paths(base, u, v).unwrap();
    for u in &paths {
        assert_eq!(cmp(u, u), PathOrder::Equal);
        for v in &paths {
            let uv = cmp(u, v);
            let vu = cmp(v, u);
            assert_eq!(uv.is_left(), vu.is_right());
            assert_eq!(uv.is_subpath(), vu.is_subpath());
        }
    }
    for u in &paths {
        for v in &paths {
            if !cmp(u, v).is_left() {
                continue;
            }
            for w in &paths {
                if cmp(v, w).is_left() {
                    assert!(cmp(u, w).is_left(), "{u:?} {v:?} {w:?}");
                }
            }
        }
    }
}

#[test]
fn left_path_hugs_the_anchor() {
    let g = grid();
    // From the bottom-left corner with the anchor pointing outward, going up
    // the west side is left of going along the south side.
    let up = [0, 3, 6];
    let east = [0, 1, 2];
    let order = g.compare_paths((0, g.anchor()), &up, &east).unwrap();
    assert!(order.is_left());
    assert_eq!(order.divergence(), Some(0));
    assert!(matches!(g.compare_paths((0, g.anchor()), &[0, 4], &east), Err(Error::PathNotInGraph(_))));
}
