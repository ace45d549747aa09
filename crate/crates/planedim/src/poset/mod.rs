//! Finite posets stored as cover DAGs with full reachability bitsets.
//!
//! Elements are dense ids `0..n`. The strict order is the transitive closure
//! of the cover edges, and every `leq` query is a single bit lookup.

mod oracle;
mod reverse;

pub use oracle::{
    critical_reduction, dim_exact, se_exact, DimOptions, DimResult, Reduction, SeOptions, SeResult,
};
pub use reverse::{
    find_strict_alternating_cycle, is_alternating_cycle, is_reversible, is_strict_cycle,
    reverse_set, verify_realizer, RealizerCheck,
};

use std::collections::{BinaryHeap, VecDeque};
use std::cmp::Reverse;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered pair of elements, used for incomparable pairs `(a, b)`.
///
/// Reversing the pair means placing `b` below `a` in a linear extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub a: usize,
    pub b: usize,
}

impl Pair {
    pub fn new(a: usize, b: usize) -> Self {
        Pair { a, b }
    }

    /// The pair with its two entries exchanged.
    pub fn swap(self) -> Self {
        Pair { a: self.b, b: self.a }
    }
}

/// A cyclic sequence of pairs with `a_i <= b_{i+1}` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingCycle {
    pub pairs: Vec<Pair>,
    pub strict: bool,
}

/// A linear extension, listed from the bottom up.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearExtension {
    pub order: Vec<usize>,
}

impl LinearExtension {
    /// Position of every element in the order, or `None` if `order` is not a
    /// permutation of `0..n`.
    pub fn positions(&self, n: usize) -> Option<Vec<usize>> {
        if self.order.len() != n {
            return None;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in self.order.iter().enumerate() {
            if x >= n || pos[x] != usize::MAX {
                return None;
            }
            pos[x] = i;
        }
        Some(pos)
    }
}

/// A family of pair sets, each tagged with the reduction step that produced it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Covering {
    pub classes: Vec<Vec<Pair>>,
    pub provenance: Vec<String>,
}

impl Covering {
    pub fn new() -> Self {
        Covering::default()
    }

    /// A covering with a single class.
    pub fn single(class: Vec<Pair>, label: impl Into<String>) -> Self {
        Covering { classes: vec![class], provenance: vec![label.into()] }
    }

    pub fn push(&mut self, class: Vec<Pair>, label: impl Into<String>) {
        self.classes.push(class);
        self.provenance.push(label.into());
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Drops empty classes, keeping the order of the rest.
    pub fn prune_empty(&mut self) {
        let mut classes = Vec::new();
        let mut provenance = Vec::new();
        for (c, p) in self.classes.drain(..).zip(self.provenance.drain(..)) {
            if !c.is_empty() {
                classes.push(c);
                provenance.push(p);
            }
        }
        self.classes = classes;
        self.provenance = provenance;
    }

    /// True if every pair of `pairs` lies in some class.
    pub fn covers(&self, pairs: &[Pair]) -> bool {
        let all: std::collections::HashSet<Pair> =
            self.classes.iter().flatten().copied().collect();
        pairs.iter().all(|p| all.contains(p))
    }
}

/// A family of linear extensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realizer {
    pub extensions: Vec<LinearExtension>,
}

impl Realizer {
    pub fn len(&self) -> usize {
        self.extensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extensions.is_empty()
    }
}

/// A finite poset on `0..n` given by its cover relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

/// Builds a poset from its cover edges `(low, high)`.
///
/// Fails with `CycleDetected` if the edges are not acyclic and with
/// `RedundantCover` if some edge is implied by the others.
pub fn build_poset(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
    let mut upper = vec![Vec::new(); n];
    let mut lower = vec![Vec::new(); n];
    for &(lo, hi) in covers {
        for v in [lo, hi] {
            if v >= n {
                return Err(Error::OutOfRange(v, n));
            }
        }
        if lo == hi {
            return Err(Error::CycleDetected(lo));
        }
        if upper[lo].contains(&hi) {
            return Err(Error::RedundantCover(lo, hi));
        }
        upper[lo].push(hi);
        lower[hi].push(lo);
    }
    let order = topological_order(n, &upper).map_err(Error::CycleDetected)?;
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for &x in order.iter().rev() {
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(x);
        for &y in &upper[x] {
            set.union_with(&up[y]);
        }
        up[x] = set;
    }
    for (lo, ups) in upper.iter().enumerate() {
        for &hi in ups {
            if ups.iter().any(|&c| c != hi && up[c].contains(hi)) {
                return Err(Error::RedundantCover(lo, hi));
            }
        }
    }
    let mut down = vec![FixedBitSet::with_capacity(n); n];
    for x in 0..n {
        for y in up[x].ones() {
            down[y].insert(x);
        }
    }
    Ok(Poset { n, covers: covers.to_vec(), upper, lower, up, down })
}

/// Kahn's algorithm with ascending-id tie-break. On failure returns some
/// vertex that lies on or behind a cycle.
fn topological_order(n: usize, out: &[Vec<usize>]) -> std::result::Result<Vec<usize>, usize> {
    let mut indeg = vec![0usize; n];
    for list in out {
        for &y in list {
            indeg[y] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = heap.pop() {
        order.push(v);
        for &y in &out[v] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                heap.push(Reverse(y));
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&v| indeg[v] > 0).unwrap_or(0))
    }
}

impl Poset {
    /// Builds a poset from arbitrary strict relations `x < y`, taking the
    /// transitive reduction as the cover relation.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Poset> {
        let mut out = vec![Vec::new(); n];
        for &(x, y) in relations {
            for v in [x, y] {
                if v >= n {
                    return Err(Error::OutOfRange(v, n));
                }
            }
            if x == y {
                return Err(Error::CycleDetected(x));
            }
            out[x].push(y);
        }
        let order = topological_order(n, &out).map_err(Error::CycleDetected)?;
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for &y in &out[x] {
                set.union_with(&up[y]);
            }
            up[x] = set;
        }
        let mut covers = Vec::new();
        for x in 0..n {
            for y in up[x].ones() {
                if y == x {
                    continue;
                }
                let between = up[x].ones().any(|z| z != x && z != y && up[z].contains(y));
                if !between {
                    covers.push((x, y));
                }
            }
        }
        build_poset(n, &covers)
    }

    /// Number of elements.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Cover edges `(low, high)` in input order.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// `x <= y` in the poset.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `x < y` in the poset.
    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.up[x].contains(y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `x` and `y` are distinct and incomparable.
    #[inline]
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.comparable(x, y)
    }

    /// Elements `>= x`, including `x`.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    /// Elements `<= x`, including `x`.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// Every ordered pair `(x, y)` with `x` incomparable to `y`, in
    /// lexicographic order.
    pub fn incomparable_pairs(&self) -> Vec<Pair> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.incomparable(x, y) {
                    out.push(Pair::new(x, y));
                }
            }
        }
        out
    }

    /// The dual poset, with every relation reversed.
    pub fn dual(&self) -> Poset {
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|&(l, h)| (h, l)).collect();
        Poset {
            n: self.n,
            covers,
            upper: self.lower.clone(),
            lower: self.upper.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// The subposet induced on `elements`. Element `i` of the result is
    /// `elements[i]` of `self`.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let mut rel = Vec::new();
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if self.lt(x, y) {
                    rel.push((i, j));
                }
            }
        }
        Poset::from_relations(elements.len(), &rel).expect("induced order is a partial order")
    }

    /// True if `x <= y <= z` with `x, z` in `set` forces `y` into `set`.
    pub fn is_convex(&self, set: &FixedBitSet) -> bool {
        for x in set.ones() {
            for z in set.ones() {
                if self.lt(x, z) {
                    let mut between = self.up[x].clone();
                    between.intersect_with(&self.down[z]);
                    if !between.is_subset(set) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Minimal elements in ascending order.
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.lower[x].is_empty()).collect()
    }

    /// Maximal elements in ascending order.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.upper[x].is_empty()).collect()
    }

    /// The linear extension given by Kahn's algorithm with ascending-id
    /// tie-break.
    pub fn linear_extension(&self) -> LinearExtension {
        let order = topological_order(self.n, &self.upper).expect("poset is acyclic");
        LinearExtension { order }
    }

    /// Connected components of the cover graph, each sorted, ordered by their
    /// least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in self.upper[v].iter().chain(&self.lower[v]) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// True if the cover graph is connected (the empty poset counts as connected).
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Checks that `pairs` are incomparable pairs of this poset.
    pub fn check_pairs(&self, pairs: &[Pair]) -> Result<()> {
        for &p in pairs {
            if p.a >= self.n || p.b >= self.n {
                return Err(Error::OutOfRange(p.a.max(p.b), self.n));
            }
            if !self.incomparable(p.a, p.b) {
                return Err(Error::PairNotIncomparable(p));
            }
        }
        Ok(())
    }
}

/// Incomparable pairs of `poset`.
pub fn incomparable_pairs(poset: &Poset) -> Vec<Pair> {
    poset.incomparable_pairs()
}

/// Sorts and deduplicates a pair list.
pub fn normalize_pairs(pairs: &mut Vec<Pair>) {
    pairs.sort_unstable();
    pairs.dedup();
}
