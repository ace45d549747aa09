//! Risky and dangerous pairs, escape addresses and good sub-instances.
//!
//! A pair `(a, b)` of an instance is risky when some `b' >= a` has its
//! leftmost path left of `W_L(b)` and some `b'' >= a` has its rightmost path
//! right of `W_R(b)`. Dangerous pairs satisfy the same with the left-of order
//! on `B`. The pairs failing either condition split into two reversible
//! sets. Risky pairs are grouped by the shadow they escape from; each group
//! lives in the sub-instance above the initial element of that shadow, where
//! its pairs avoid the shadows of their upper elements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::embed::NONE;
use crate::error::{Error, Result};
use crate::instance::{induced_plane, Instance, ShadowLocation};
use crate::poset::{find_strict_alternating_cycle, is_strict_cycle, Pair};

/// Escape number `j` of a pair and the initial element `x` of `shad_j(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Address {
    pub j: usize,
    pub x: usize,
}

/// Some `b' >= a` in `B` has `W_L(b')` left of `W_L(b)`.
fn has_left_witness(inst: &Instance, p: Pair) -> bool {
    let up = inst.poset().up_set(p.a);
    inst.b_elements().iter().any(|&b1| up.contains(b1) && inst.wl_left_of(b1, p.b))
}

/// Some `b'' >= a` in `B` has `W_R(b)` left of `W_R(b'')`.
fn has_right_witness(inst: &Instance, p: Pair) -> bool {
    let up = inst.poset().up_set(p.a);
    inst.b_elements().iter().any(|&b2| up.contains(b2) && inst.wr_left_of(p.b, b2))
}

/// Some `b' >= a` in `B` is left of `b`.
fn has_left_danger(inst: &Instance, p: Pair) -> bool {
    let up = inst.poset().up_set(p.a);
    inst.b_elements().iter().any(|&b1| up.contains(b1) && inst.left_of(b1, p.b))
}

/// Some `b'' >= a` in `B` has `b` left of it.
fn has_right_danger(inst: &Instance, p: Pair) -> bool {
    let up = inst.poset().up_set(p.a);
    inst.b_elements().iter().any(|&b2| up.contains(b2) && inst.left_of(p.b, b2))
}

/// True if `p` is risky.
pub fn is_risky(inst: &Instance, p: Pair) -> bool {
    has_left_witness(inst, p) && has_right_witness(inst, p)
}

/// True if `p` is dangerous.
pub fn is_dangerous(inst: &Instance, p: Pair) -> bool {
    has_left_danger(inst, p) && has_right_danger(inst, p)
}

/// The least `j` with `a` outside `shad_j(b)`, with the initial element of
/// that shadow. For `j = sd(b) + 1` the shadow is empty and `x` is `b`.
pub fn escape_address(inst: &Instance, p: Pair) -> Result<Address> {
    let s = inst.shadow_decomposition(p.b)?;
    let mut j = 0;
    while s.locate(p.a, j) != ShadowLocation::Outside {
        j += 1;
    }
    let x = s.shadows.get(j).map_or(p.b, |sh| sh.initial);
    Ok(Address { j, x })
}

/// Checks that no pair has its lower element in the shadow of its upper one.
fn check_shadow_avoiding(inst: &Instance) -> Result<()> {
    match inst.pairs().iter().find(|p| inst.in_shadow(p.a, p.b)) {
        Some(p) => Err(Error::InvariantViolation(format!("{} lies in shad({})", p.a, p.b))),
        None => Ok(()),
    }
}

/// Checks that every pair is dangerous.
fn check_all_dangerous(inst: &Instance) -> Result<()> {
    match inst.pairs().iter().find(|&&p| !is_dangerous(inst, p)) {
        Some(p) => Err(Error::InvariantViolation(format!("pair ({}, {}) is not dangerous", p.a, p.b))),
        None => Ok(()),
    }
}

/// Pair sets larger than this only get the size-two cycle check.
const CYCLE_SAMPLE_LIMIT: usize = 24;

/// Checks that the upper elements of every strict alternating cycle of
/// length at most `max_len` are pairwise related by left-of.
pub fn check_cycle_targets(inst: &Instance, max_len: usize) -> Result<()> {
    let pairs = inst.pairs();
    let mut cycle = Vec::new();
    fn extend(inst: &Instance, pairs: &[Pair], cycle: &mut Vec<Pair>, max_len: usize) -> Result<()> {
        let poset = inst.poset();
        if cycle.len() >= 2 && poset.leq(cycle[cycle.len() - 1].a, cycle[0].b) && is_strict_cycle(poset, cycle) {
            for x in cycle.iter() {
                for y in cycle.iter() {
                    if x.b != y.b && !inst.left_of(x.b, y.b) && !inst.left_of(y.b, x.b) {
                        return Err(Error::InvariantViolation(format!(
                            "upper elements {} and {} of a strict cycle are not left-of related",
                            x.b, y.b
                        )));
                    }
                }
            }
        }
        if cycle.len() == max_len {
            return Ok(());
        }
        let last = cycle[cycle.len() - 1];
        for &q in pairs {
            // The first pair is the least, so every cycle is seen once per rotation start.
            if q > cycle[0] && poset.leq(last.a, q.b) && !cycle.contains(&q) {
                cycle.push(q);
                extend(inst, pairs, cycle, max_len)?;
                cycle.pop();
            }
        }
        Ok(())
    }
    for &p in pairs {
        cycle.push(p);
        extend(inst, pairs, &mut cycle, max_len)?;
        cycle.pop();
    }
    Ok(())
}

/// An instance whose pairs avoid their shadows and are all dangerous.
#[derive(Clone, Debug)]
pub struct GoodInstance {
    inst: Instance,
}

impl GoodInstance {
    /// Checks shadow avoidance and danger for every pair, and the left-of
    /// relation on targets of strict cycles of length 2, or up to 4 on pair
    /// sets of at most 24 pairs.
    pub fn new(inst: Instance) -> Result<GoodInstance> {
        check_shadow_avoiding(&inst)?;
        check_all_dangerous(&inst)?;
        let max_len = if inst.pairs().len() <= CYCLE_SAMPLE_LIMIT { 4 } else { 2 };
        check_cycle_targets(&inst, max_len)?;
        Ok(GoodInstance { inst })
    }

    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    pub fn into_instance(self) -> Instance {
        self.inst
    }
}

/// A good instance holding every dangerous, shadow-avoiding incomparable
/// pair of `π1(I) × π2(I)`.
#[derive(Clone, Debug)]
pub struct MaximalGoodInstance {
    good: GoodInstance,
}

/// Extends the pair set of a good instance to the maximal one.
pub fn maximalize(good: &GoodInstance) -> Result<MaximalGoodInstance> {
    let inst = good.instance();
    let pairs = maximal_pairs(inst);
    let extended = inst.with_pairs(pairs)?;
    Ok(MaximalGoodInstance { good: GoodInstance::new(extended)? })
}

fn maximal_pairs(inst: &Instance) -> Vec<Pair> {
    let poset = inst.poset();
    let a_set = inst.a_elements();
    let mut b_set: Vec<usize> = inst.pairs().iter().map(|p| p.b).collect();
    b_set.sort_unstable();
    b_set.dedup();
    let mut out = Vec::new();
    for &a in &a_set {
        for &b in &b_set {
            let p = Pair::new(a, b);
            if poset.incomparable(a, b) && !inst.in_shadow(a, b) && is_dangerous(inst, p) {
                out.push(p);
            }
        }
    }
    out
}

impl MaximalGoodInstance {
    /// Wraps a good instance after checking that no pair can be added.
    pub fn new(good: GoodInstance) -> Result<MaximalGoodInstance> {
        let expected = maximal_pairs(good.instance());
        if expected != good.instance().pairs() {
            return Err(Error::InvariantViolation("good instance is not maximal".into()));
        }
        Ok(MaximalGoodInstance { good })
    }

    pub fn instance(&self) -> &Instance {
        self.good.instance()
    }

    pub fn good(&self) -> &GoodInstance {
        &self.good
    }
}

/// Risky pairs sharing an address, moved to the sub-instance above `x`.
#[derive(Clone, Debug)]
pub struct AddressClass {
    pub theta: usize,
    pub address: Address,
    /// The class pairs in the ids of the parent instance.
    pub pairs: Vec<Pair>,
    /// Parent id of every sub-instance element.
    pub origin: Vec<usize>,
    /// Dangerous class pairs on the sub-instance, absent when there are none.
    pub good: Option<GoodInstance>,
    /// Class pairs that fail the left and the right danger condition, in parent ids.
    pub nondangerous: [Vec<Pair>; 2],
}

impl AddressClass {
    /// Maps a sub-instance pair to parent ids.
    pub fn lift(&self, p: Pair) -> Pair {
        Pair::new(self.origin[p.a], self.origin[p.b])
    }
}

/// Result of [`good_reduction`].
#[derive(Clone, Debug)]
pub struct GoodReduction {
    /// Non-risky pairs failing the left and the right witness condition.
    pub nonrisky: [Vec<Pair>; 2],
    /// Address classes ordered by parity, then address.
    pub classes: Vec<AddressClass>,
}

/// Splits the pairs of `inst` into two non-risky reversible sets and
/// address classes, each moved to its good sub-instance.
pub fn good_reduction(inst: &Instance) -> Result<GoodReduction> {
    let mut nonrisky = [Vec::new(), Vec::new()];
    let mut by_address: BTreeMap<(usize, Address), Vec<Pair>> = BTreeMap::new();
    for &p in inst.pairs() {
        if !has_left_witness(inst, p) {
            nonrisky[0].push(p);
        } else if !has_right_witness(inst, p) {
            nonrisky[1].push(p);
        } else {
            let addr = escape_address(inst, p)?;
            by_address.entry((addr.j % 2, addr)).or_default().push(p);
        }
    }
    for set in &nonrisky {
        if let Some(c) = find_strict_alternating_cycle(inst.poset(), set)? {
            return Err(Error::InvariantViolation(format!(
                "non-risky set has a strict cycle of length {}",
                c.pairs.len()
            )));
        }
    }
    let mut classes = Vec::with_capacity(by_address.len());
    for ((theta, address), pairs) in by_address {
        classes.push(address_class(inst, theta, address, pairs)?);
    }
    Ok(GoodReduction { nonrisky, classes })
}

fn address_class(inst: &Instance, theta: usize, address: Address, pairs: Vec<Pair>) -> Result<AddressClass> {
    let poset = inst.poset();
    let x = address.x;
    let n = poset.n();
    let keep: Vec<usize> = (0..n).filter(|&p| !poset.lt(p, x)).collect();
    let after = if x == inst.x0() {
        inst.plane().anchor_spec().after
    } else {
        // The anchor takes the place of the last edge of W_L(x): right after
        // the surviving neighbour that precedes it clockwise.
        let pred = inst.wl_parent(x);
        let plane = inst.plane();
        let d = plane.dart_between(x, pred).expect("tree edge");
        let rot = plane.rotation(x);
        let k = rot.len();
        let i = rot.iter().position(|&e| e == d).expect("dart at x");
        (1..k).map(|t| plane.head(rot[(i + k - t) % k])).find(|&w| w != NONE && !poset.lt(w, x))
    };
    let (sub_poset, sub_plane, origin) = induced_plane(poset, inst.plane(), &keep, x, after)?;
    let mut new_id = vec![NONE; n];
    for (i, &v) in origin.iter().enumerate() {
        new_id[v] = i;
    }
    let mut sub_pairs = Vec::with_capacity(pairs.len());
    for p in &pairs {
        if new_id[p.a] == NONE || new_id[p.b] == NONE {
            return Err(Error::InvariantViolation(format!(
                "pair ({}, {}) leaves the sub-instance above {x}",
                p.a, p.b
            )));
        }
        sub_pairs.push(Pair::new(new_id[p.a], new_id[p.b]));
    }
    let sub = Instance::new(sub_poset, sub_plane, sub_pairs.clone())?;
    check_shadow_avoiding(&sub)?;
    let mut dangerous = Vec::new();
    let mut nondangerous = [Vec::new(), Vec::new()];
    for &p in &sub_pairs {
        let parent = Pair::new(origin[p.a], origin[p.b]);
        if !has_left_danger(&sub, p) {
            nondangerous[0].push(parent);
        } else if !has_right_danger(&sub, p) {
            nondangerous[1].push(parent);
        } else {
            dangerous.push(p);
        }
    }
    for set in &nondangerous {
        if let Some(c) = find_strict_alternating_cycle(poset, set)? {
            return Err(Error::InvariantViolation(format!(
                "non-dangerous set has a strict cycle of length {}",
                c.pairs.len()
            )));
        }
    }
    let good = if dangerous.is_empty() { None } else { Some(GoodInstance::new(sub.with_pairs(dangerous)?)?) };
    Ok(AddressClass { theta, address, pairs, origin, good, nondangerous })
}
