//! Reversibility of pair sets, alternating cycles and realizer checks.
//!
//! A set `I` of incomparable pairs is reversed by the linear extensions of the
//! digraph formed by the cover edges plus an arc `b -> a` for every
//! `(a, b)` in `I`. That digraph is acyclic exactly when `I` contains no
//! alternating cycle.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{AlternatingCycle, LinearExtension, Pair, Poset, Realizer};
use crate::error::{Error, Result};

#[derive(Clone, Copy)]
enum Arc {
    Cover,
    Pair(usize),
}

/// Outcome of a topological sort of the reversal digraph.
enum Sorted {
    Order(Vec<usize>),
    Stuck(AlternatingCycle),
}

fn sort_reversal_digraph(poset: &Poset, pairs: &[Pair]) -> Sorted {
    let n = poset.n();
    let mut extra: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for x in 0..n {
        for &y in poset.upper_covers(x) {
            indeg[y] += 1;
        }
    }
    for p in pairs {
        extra[p.b].push(p.a);
        indeg[p.a] += 1;
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &y in poset.upper_covers(v).iter().chain(&extra[v]) {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                heap.push(Reverse(y));
            }
        }
    }
    if order.len() == n {
        return Sorted::Order(order);
    }
    Sorted::Stuck(extract_cycle(poset, pairs, &indeg))
}

/// Finds a cycle among the vertices left over by Kahn's algorithm and reads
/// it as an alternating cycle, which is then shortened to a strict one.
fn extract_cycle(poset: &Poset, pairs: &[Pair], indeg: &[usize]) -> AlternatingCycle {
    let n = poset.n();
    let remaining: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
    let mut incoming: Vec<Vec<(usize, Arc)>> = vec![Vec::new(); n];
    for x in 0..n {
        for &y in poset.upper_covers(x) {
            incoming[y].push((x, Arc::Cover));
        }
    }
    for (i, p) in pairs.iter().enumerate() {
        incoming[p.a].push((p.b, Arc::Pair(i)));
    }
    let start = (0..n).find(|&v| remaining[v]).expect("stuck sort leaves vertices");
    // Walk backwards along remaining in-arcs until a vertex repeats.
    let mut seen_at = vec![usize::MAX; n];
    let mut walk: Vec<(usize, Arc)> = Vec::new();
    let mut v = start;
    loop {
        if seen_at[v] != usize::MAX {
            break;
        }
        seen_at[v] = walk.len();
        let &(u, arc) = incoming[v]
            .iter()
            .find(|(u, _)| remaining[*u])
            .expect("remaining vertex has a remaining in-arc");
        walk.push((v, arc));
        v = u;
    }
    // The cycle consists of the arcs entering walk[seen_at[v]..].
    let cycle_arcs = &walk[seen_at[v]..];
    // Forward order is the reverse of the backward walk.
    let mut cycle: Vec<Pair> = cycle_arcs
        .iter()
        .rev()
        .filter_map(|&(_, arc)| match arc {
            Arc::Pair(i) => Some(pairs[i]),
            Arc::Cover => None,
        })
        .collect();
    debug_assert!(cycle.len() >= 2);
    shorten_to_strict(poset, &mut cycle);
    AlternatingCycle { pairs: cycle, strict: true }
}

/// Repeatedly takes the lowest shortcut `a_i <= b_j` with `j != i + 1` and
/// keeps the cycle `p_j, ..., p_i` until no shortcut remains.
fn shorten_to_strict(poset: &Poset, cycle: &mut Vec<Pair>) {
    'outer: loop {
        let k = cycle.len();
        for i in 0..k {
            for j in 0..k {
                if j == i || j == (i + 1) % k {
                    continue;
                }
                if poset.leq(cycle[i].a, cycle[j].b) {
                    let len = (i + k - j) % k + 1;
                    let next: Vec<Pair> = (0..len).map(|t| cycle[(j + t) % k]).collect();
                    *cycle = next;
                    continue 'outer;
                }
            }
        }
        break;
    }
}

/// Returns a strict alternating cycle inside `pairs`, or `None` if `pairs`
/// is reversible.
pub fn find_strict_alternating_cycle(
    poset: &Poset,
    pairs: &[Pair],
) -> Result<Option<AlternatingCycle>> {
    poset.check_pairs(pairs)?;
    Ok(match sort_reversal_digraph(poset, pairs) {
        Sorted::Order(_) => None,
        Sorted::Stuck(c) => Some(c),
    })
}

/// True if `pairs` can be reversed by one linear extension.
pub fn is_reversible(poset: &Poset, pairs: &[Pair]) -> bool {
    matches!(sort_reversal_digraph(poset, pairs), Sorted::Order(_))
}

/// A linear extension placing `b` below `a` for every `(a, b)` in `pairs`.
///
/// Ties are broken by ascending element id. Fails with `NotReversible`
/// carrying a strict alternating cycle when no such extension exists.
pub fn reverse_set(poset: &Poset, pairs: &[Pair]) -> Result<LinearExtension> {
    poset.check_pairs(pairs)?;
    match sort_reversal_digraph(poset, pairs) {
        Sorted::Order(order) => Ok(LinearExtension { order }),
        Sorted::Stuck(c) => Err(Error::NotReversible(c)),
    }
}

/// True if `a_i <= b_{i+1}` holds cyclically.
pub fn is_alternating_cycle(poset: &Poset, cycle: &[Pair]) -> bool {
    let k = cycle.len();
    k >= 2
        && cycle.iter().all(|p| poset.incomparable(p.a, p.b))
        && (0..k).all(|i| poset.leq(cycle[i].a, cycle[(i + 1) % k].b))
}

/// True if the cycle is alternating and `a_i <= b_j` only for `j = i + 1`.
pub fn is_strict_cycle(poset: &Poset, cycle: &[Pair]) -> bool {
    let k = cycle.len();
    is_alternating_cycle(poset, cycle)
        && (0..k).all(|i| {
            (0..k).all(|j| j == (i + 1) % k || !poset.leq(cycle[i].a, cycle[j].b))
        })
}

/// Outcome of [`verify_realizer`] with a diagnostic for failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizerCheck {
    pub ok: bool,
    pub message: String,
}

/// Checks that every extension is a linear extension of `poset` and that
/// their intersection is exactly the order of `poset`.
pub fn verify_realizer(poset: &Poset, realizer: &Realizer) -> RealizerCheck {
    let n = poset.n();
    let mut positions = Vec::with_capacity(realizer.len());
    for (i, ext) in realizer.extensions.iter().enumerate() {
        let Some(pos) = ext.positions(n) else {
            return fail(format!("extension {i} is not a permutation of 0..{n}"));
        };
        if let Some(&(lo, hi)) = poset.covers().iter().find(|&&(lo, hi)| pos[lo] > pos[hi]) {
            return fail(format!("extension {i} places {hi} below {lo}"));
        }
        positions.push(pos);
    }
    for x in 0..n {
        for y in 0..n {
            if poset.incomparable(x, y) && !positions.iter().any(|pos| pos[y] < pos[x]) {
                return fail(format!("no extension places {y} below {x}"));
            }
        }
    }
    RealizerCheck { ok: true, message: "ok".into() }
}

fn fail(message: String) -> RealizerCheck {
    RealizerCheck { ok: false, message }
}
