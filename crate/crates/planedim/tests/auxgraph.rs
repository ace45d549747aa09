mod common;

use common::perturbed_good_instances;
use planedim::auxgraph::{kappa_class_bound, kappa_coloring, Analysis, AuxKind, CycleType};
use planedim::instance::Instance;
use planedim::poset::{find_strict_alternating_cycle, se_exact, SeOptions};

/// Every walk that climbs inside `B` from the root to some `z` in `Z(a)`
/// and descends to `a` through elements outside `B`.
fn m_walks(inst: &Instance, a: usize, z: &[usize]) -> Vec<Vec<usize>> {
    let p = inst.poset();
    let mut out = Vec::new();
    let mut stack = vec![(vec![inst.x0()], false)];
    while let Some((walk, down)) = stack.pop() {
        let v = *walk.last().unwrap();
        if down && v == a {
            out.push(walk);
            continue;
        }
        if !down {
            for &w in p.upper_covers(v) {
                if inst.in_b(w) && z.iter().any(|&t| p.leq(w, t)) {
                    let mut q = walk.clone();
                    q.push(w);
                    stack.push((q, false));
                }
            }
        }
        if down || z.contains(&v) {
            for &w in p.lower_covers(v) {
                if p.leq(a, w) && !inst.in_b(w) {
                    let mut q = walk.clone();
                    q.push(w);
                    stack.push((q, true));
                }
            }
        }
    }
    out
}

#[test]
fn extreme_m_paths_match_enumeration() {
    let mut checked = 0;
    for m in perturbed_good_instances(4..=6, 0..15) {
        let inst = m.instance();
        let an = Analysis::new(&m).unwrap();
        for a in inst.a_elements() {
            let zd = an.z_sets(a).unwrap();
            let mp = an.m_paths(a).unwrap();
            assert!(zd.z.contains(&mp.z_left) && zd.z.contains(&mp.z_right));
            let walks = m_walks(inst, a, &zd.z);
            assert!(walks.contains(&mp.left) && walks.contains(&mp.right));
            for w in &walks {
                assert!(!inst.compare_from_root(w, &mp.left).is_left(), "walk {w:?} left of M_L {:?}", mp.left);
                assert!(!inst.compare_from_root(w, &mp.right).is_right());
            }
            checked += walks.len();
        }
    }
    assert!(checked > 200, "only {checked} walks");
}

#[test]
fn z_sets_admit_exposed_paths() {
    for m in perturbed_good_instances(4..=5, 0..10) {
        let inst = m.instance();
        let an = Analysis::new(&m).unwrap();
        for a in inst.a_elements() {
            let zd = an.z_sets(a).unwrap();
            assert!(!zd.z.is_empty());
            for &z in &zd.z {
                assert!(zd.y.contains(&z));
                let path = an.exposed_path(a, z).unwrap();
                assert_eq!((path[0], *path.last().unwrap()), (a, z));
                assert!(path[..path.len() - 1].iter().all(|&v| !inst.in_b(v)));
            }
        }
    }
}

#[test]
fn regions_agree_with_path_properties() {
    let mut cycles = 0;
    let mut kinds = std::collections::BTreeSet::new();
    for m in perturbed_good_instances(4..=7, 0..40) {
        let an = Analysis::new(&m).unwrap();
        let p = m.instance().poset();
        let pairs = an.pairs().to_vec();
        for &p1 in &pairs {
            for &p2 in &pairs {
                if !an.is_regular(p1, p2) {
                    continue;
                }
                let pr = an.test_properties(p1, p2).unwrap();
                assert!(!(pr.l12 && pr.l21) && !(pr.r12 && pr.r21));
                if !(p.leq(p1.a, p2.b) && p.leq(p2.a, p1.b)) {
                    continue;
                }
                let expected = match (pr.r12, pr.r21, pr.l12, pr.l21) {
                    (true, false, true, false) => CycleType::InIn,
                    (true, false, false, true) => CycleType::InOut,
                    (false, true, true, false) => CycleType::OutIn,
                    (false, true, false, true) => CycleType::OutOut,
                    other => panic!("cycle {p1:?} {p2:?} has properties {other:?}"),
                };
                let left = an.left_region(p1, p2).unwrap();
                assert!(left.region.interior(p1.b), "b1 outside its left region");
                let right = an.right_region(p1, p2).unwrap();
                assert!(right.region.interior(p2.b), "b2 outside its right region");
                assert_eq!(an.classify_cycle2(p1, p2).unwrap(), expected);
                kinds.insert(expected);
                cycles += 1;
            }
        }
    }
    assert!(cycles > 500, "only {cycles} cycles");
    assert!(kinds.len() >= 2, "{kinds:?}");
}

#[test]
fn longest_paths_are_bounded_by_se() {
    let mut nonempty = 0;
    for m in perturbed_good_instances(4..=7, 0..40) {
        let an = Analysis::new(&m).unwrap();
        let s = se_exact(m.instance().poset(), m.instance().pairs(), SeOptions::default()).unwrap();
        assert!(s.exact);
        for kind in [AuxKind::OO, AuxKind::IIL, AuxKind::IIR, AuxKind::IILR] {
            let g = an.digraph(kind);
            nonempty += usize::from(!g.edges.is_empty());
            assert!(g.max_path().unwrap() <= s.s, "{kind:?}");
        }
    }
    assert!(nonempty > 10);
}

#[test]
fn weighted_edges_separate_modulo_m() {
    let mut heavy = 0;
    for m in perturbed_good_instances(4..=7, 0..40) {
        let an = Analysis::new(&m).unwrap();
        let s = se_exact(m.instance().poset(), m.instance().pairs(), SeOptions::default()).unwrap().s;
        let modulus = 2 * s * (2 * s + 6);
        let io = an.digraph(AuxKind::IO);
        let from = io.max_weight_from().unwrap();
        let oi = an.digraph(AuxKind::OI);
        let to = oi.max_weight_to().unwrap();
        for (g, f) in [(&io, &from), (&oi, &to)] {
            for e in g.edges.iter().filter(|e| e.weight == Some(1)) {
                assert_ne!(f[e.from] % modulus, f[e.to] % modulus, "{:?} edge {e:?}", g.kind);
                heavy += 1;
            }
        }
    }
    assert!(heavy > 50, "only {heavy} weight-one edges");
}

#[test]
fn kappa_classes_are_reversible_and_few() {
    for m in perturbed_good_instances(4..=6, 0..15) {
        let k = kappa_coloring(&m).unwrap();
        let p = m.instance().poset();
        assert_eq!(k.colors.len(), m.instance().pairs().len());
        let s = k.s.unwrap();
        assert_eq!(k.modulus, Some(2 * s * (2 * s + 6)));
        assert!((k.classes.len() as u128) <= kappa_class_bound(s));
        let total: usize = k.classes.classes.iter().map(Vec::len).sum();
        assert_eq!(total, m.instance().pairs().len());
        for class in &k.classes.classes {
            assert!(find_strict_alternating_cycle(p, class).unwrap().is_none());
        }
    }
}

#[test]
fn dot_lists_every_edge() {
    let m = perturbed_good_instances(5..=5, 0..5).into_iter().max_by_key(|m| m.instance().pairs().len()).unwrap();
    let an = Analysis::new(&m).unwrap();
    for kind in AuxKind::ALL {
        let g = an.digraph(kind);
        let dot = g.to_dot();
        assert!(dot.starts_with(&format!("digraph {} {{", kind.name())));
        assert_eq!(dot.matches(" -> ").count(), g.edges.len());
        assert_eq!(dot.matches("[label=").count(), g.vertices.len());
        assert_eq!(kind.name().parse::<AuxKind>().unwrap(), kind);
    }
}
