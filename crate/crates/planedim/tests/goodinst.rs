mod common;

use common::{contracted_instances, strict_cycles};
use planedim::goodinst::{
    escape_address, good_reduction, is_dangerous, is_risky, maximalize, GoodInstance, MaximalGoodInstance,
};
use planedim::instance::ShadowLocation;
use planedim::poset::{is_reversible, Pair};

#[test]
fn dangerous_pairs_are_risky_with_lower_element_outside_b() {
    let mut dangerous = 0;
    for inst in contracted_instances(0..30, 24) {
        for &p in inst.pairs() {
            if is_dangerous(&inst, p) {
                dangerous += 1;
                assert!(is_risky(&inst, p));
                assert!(!inst.in_b(p.a));
            }
        }
    }
    assert!(dangerous > 0);
}

#[test]
fn escape_numbers_are_least() {
    for inst in contracted_instances(0..20, 24) {
        for &p in inst.pairs() {
            let addr = escape_address(&inst, p).unwrap();
            let s = inst.shadow(p.b);
            assert!(addr.j <= s.depth() + 1);
            assert_eq!(s.locate(p.a, addr.j), ShadowLocation::Outside);
            for j in 0..addr.j {
                assert_ne!(s.locate(p.a, j), ShadowLocation::Outside);
            }
            if addr.j == 0 {
                assert_eq!(addr.x, inst.x0());
            }
        }
    }
}

#[test]
fn strict_cycles_of_risky_pairs_share_an_address() {
    let mut cycles = 0;
    for inst in contracted_instances(0..40, 20) {
        let risky: Vec<Pair> = inst.pairs().iter().copied().filter(|&p| is_risky(&inst, p)).collect();
        if risky.len() > 40 {
            continue;
        }
        for cycle in strict_cycles(&inst, &risky, 4) {
            let addrs: Vec<_> = cycle.iter().map(|&p| escape_address(&inst, p).unwrap()).collect();
            if addrs.iter().any(|a| a.j % 2 != addrs[0].j % 2) {
                continue;
            }
            cycles += 1;
            assert!(addrs.iter().all(|a| *a == addrs[0]), "{cycle:?} {addrs:?}");
            let j = addrs[0].j;
            for x in &cycle {
                for y in &cycle {
                    if x != y {
                        assert_eq!(inst.shadow(x.b).locate(y.b, j), ShadowLocation::Outside);
                    }
                }
            }
        }
    }
    assert!(cycles > 0);
}

#[test]
fn good_reduction_covers_and_is_sound() {
    let mut classes = 0;
    for inst in contracted_instances(0..40, 24) {
        let red = good_reduction(&inst).unwrap();
        for set in &red.nonrisky {
            assert!(is_reversible(inst.poset(), set));
        }
        let mut seen: Vec<Pair> = red.nonrisky.concat();
        for c in &red.classes {
            classes += 1;
            seen.extend(c.pairs.iter().copied());
            assert_eq!(c.theta, c.address.j % 2);
            for set in &c.nondangerous {
                assert!(is_reversible(inst.poset(), set));
            }
            let mut parts: Vec<Pair> = c.nondangerous.concat();
            if let Some(g) = &c.good {
                let sub = g.instance();
                assert_eq!(c.origin[sub.x0()], c.address.x);
                for &p in sub.pairs() {
                    assert!(!sub.in_shadow(p.a, p.b));
                    parts.push(c.lift(p));
                }
            }
            parts.sort();
            let mut expected = c.pairs.clone();
            expected.sort();
            assert_eq!(parts, expected);
        }
        seen.sort();
        assert_eq!(seen, inst.pairs());
    }
    assert!(classes > 20, "{classes}");
}

#[test]
fn maximalization_only_adds_and_is_idempotent() {
    let mut grown = 0;
    for inst in contracted_instances(0..40, 24) {
        let red = good_reduction(&inst).unwrap();
        for c in red.classes {
            let Some(g) = c.good else { continue };
            let m = maximalize(&g).unwrap();
            let before = g.instance().pairs();
            let after = m.instance().pairs();
            assert!(before.iter().all(|p| after.contains(p)));
            if after.len() > before.len() {
                grown += 1;
            }
            let again = maximalize(m.good()).unwrap();
            assert_eq!(again.instance().pairs(), after);
            assert!(MaximalGoodInstance::new(m.good().clone()).is_ok());
            assert!(GoodInstance::new(m.instance().clone()).is_ok());
        }
    }
    println!("grown {grown}");
}
