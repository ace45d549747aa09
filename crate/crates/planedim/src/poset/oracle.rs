//! Exact oracles for the dimension of a pair set and its standard-example
//! number.
//!
//! Both oracles first drop dominated pairs: `(a, b)` is dominated by
//! `(a', b')` when `a' <= a` and `b <= b'`. Any linear extension reversing
//! the dominator also reverses the dominated pair, and any standard example
//! survives swapping a pair for its dominator, so neither value changes.

use fixedbitset::FixedBitSet;

use super::{normalize_pairs, Covering, Pair, Poset};
use crate::error::{Error, Result};

/// Pairs that survive domination, plus the dominator of every dropped pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Undominated pairs in sorted order.
    pub kept: Vec<Pair>,
    /// Every dropped pair with the index in `kept` of an undominated dominator.
    pub dropped: Vec<(Pair, usize)>,
}

/// Splits `pairs` into undominated pairs and dominated ones. For the full set
/// of incomparable pairs the kept pairs are the critical pairs.
pub fn critical_reduction(poset: &Poset, pairs: &[Pair]) -> Reduction {
    let mut pairs = pairs.to_vec();
    normalize_pairs(&mut pairs);
    let dominates =
        |q: &Pair, p: &Pair| q != p && poset.leq(q.a, p.a) && poset.leq(p.b, q.b);
    let is_kept: Vec<bool> =
        pairs.iter().map(|p| !pairs.iter().any(|q| dominates(q, p))).collect();
    let mut index = vec![usize::MAX; pairs.len()];
    let mut kept = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        if is_kept[i] {
            index[i] = kept.len();
            kept.push(*p);
        }
    }
    let mut dropped = Vec::new();
    for (i, p) in pairs.iter().enumerate() {
        if !is_kept[i] {
            let dom = (0..pairs.len())
                .find(|&j| is_kept[j] && dominates(&pairs[j], p))
                .expect("domination is acyclic, so a kept dominator exists");
            dropped.push((*p, index[dom]));
        }
    }
    Reduction { kept, dropped }
}

/// Limits for [`se_exact`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct SeOptions {
    /// Largest admissible number of undominated pairs.
    pub cap: usize,
    /// Maximum number of search nodes.
    pub budget: u64,
}

impl Default for SeOptions {
    fn default() -> Self {
        SeOptions { cap: 512, budget: 5_000_000 }
    }
}

/// Result of [`se_exact`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeResult {
    /// Largest standard example found, at least 1.
    pub s: usize,
    /// Pairs of `I` inducing the standard example.
    pub witness: Vec<Pair>,
    /// False if the budget ran out, in which case `s` is only a lower bound.
    pub exact: bool,
}

/// Largest `J` inside `pairs` inducing a standard example, found as a
/// maximum clique of the graph joining `(a, b)` and `(a', b')` when
/// `a < b'` and `a' < b`.
pub fn se_exact(poset: &Poset, pairs: &[Pair], opts: SeOptions) -> Result<SeResult> {
    poset.check_pairs(pairs)?;
    let red = critical_reduction(poset, pairs);
    let v = &red.kept;
    if v.len() > opts.cap {
        return Err(Error::CapExceeded { size: v.len(), cap: opts.cap });
    }
    if v.is_empty() {
        return Ok(SeResult { s: 1, witness: Vec::new(), exact: true });
    }
    let m = v.len();
    let adjacent = |p: &Pair, q: &Pair| poset.lt(p.a, q.b) && poset.lt(q.a, p.b);
    let mut degree = vec![0usize; m];
    for i in 0..m {
        for j in 0..m {
            if i != j && adjacent(&v[i], &v[j]) {
                degree[i] += 1;
            }
        }
    }
    // Relabel by descending degree so that greedy colouring bounds are tight.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(degree[i]), i));
    let mut nbr = vec![FixedBitSet::with_capacity(m); m];
    for i in 0..m {
        for j in 0..m {
            if i != j && adjacent(&v[order[i]], &v[order[j]]) {
                nbr[i].insert(j);
            }
        }
    }
    let mut search = Clique { nbr: &nbr, best: vec![0], nodes: 0, budget: opts.budget };
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    let mut current = Vec::new();
    let exact = search.expand(&mut current, all);
    let mut witness: Vec<Pair> = search.best.iter().map(|&i| v[order[i]]).collect();
    witness.sort_unstable();
    Ok(SeResult { s: witness.len().max(1), witness, exact })
}

struct Clique<'a> {
    nbr: &'a [FixedBitSet],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Clique<'_> {
    /// Greedy colouring of the candidates; returns vertices in colour order
    /// with the colour of each.
    fn colour_sort(&self, cand: &FixedBitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.clone();
        let mut verts = Vec::new();
        let mut colours = Vec::new();
        let mut colour = 0;
        while uncoloured.count_ones(..) > 0 {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(x) = avail.ones().next() {
                verts.push(x);
                colours.push(colour);
                uncoloured.set(x, false);
                avail.set(x, false);
                avail.difference_with(&self.nbr[x]);
            }
        }
        (verts, colours)
    }

    /// Returns false if the budget was exhausted.
    fn expand(&mut self, current: &mut Vec<usize>, mut cand: FixedBitSet) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let (verts, colours) = self.colour_sort(&cand);
        for i in (0..verts.len()).rev() {
            if current.len() + colours[i] <= self.best.len() {
                return true;
            }
            let x = verts[i];
            current.push(x);
            let mut next = cand.clone();
            next.intersect_with(&self.nbr[x]);
            if next.count_ones(..) == 0 {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else if !self.expand(current, next) {
                current.pop();
                return false;
            }
            current.pop();
            cand.set(x, false);
        }
        true
    }
}

/// Limits for [`dim_exact`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct DimOptions {
    /// Largest admissible number of undominated pairs.
    pub cap: usize,
    /// Maximum number of search nodes over all depths.
    pub budget: u64,
}

impl Default for DimOptions {
    fn default() -> Self {
        DimOptions { cap: 64, budget: 20_000_000 }
    }
}

/// Result of [`dim_exact`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimResult {
    /// The least number of reversible sets covering the pair set.
    pub d: usize,
    /// A covering by `d` reversible sets.
    pub covering: Covering,
}

/// The least `d` such that `pairs` is covered by `d` reversible sets.
///
/// Branch and bound over colourings of the undominated pairs. Classes keep
/// their reachability closure, so a pair `(a, b)` may join a class exactly
/// when `a` does not reach `b` there. The search deepens from the
/// standard-example lower bound and picks the pair with the fewest feasible
/// classes first.
pub fn dim_exact(poset: &Poset, pairs: &[Pair], opts: DimOptions) -> Result<DimResult> {
    poset.check_pairs(pairs)?;
    let red = critical_reduction(poset, pairs);
    let v = red.kept.clone();
    if v.len() > opts.cap {
        return Err(Error::CapExceeded { size: v.len(), cap: opts.cap });
    }
    let finish = |classes: Vec<Vec<Pair>>| {
        let mut classes = classes;
        if classes.is_empty() {
            classes.push(Vec::new());
        }
        for &(p, k) in &red.dropped {
            let c = classes.iter().position(|c| c.contains(&red.kept[k])).expect("kept pair is coloured");
            classes[c].push(p);
        }
        for c in classes.iter_mut() {
            c.sort_unstable();
        }
        let d = classes.len();
        let provenance = vec!["dim_exact".to_string(); d];
        DimResult { d, covering: Covering { classes, provenance } }
    };
    if v.is_empty() || super::is_reversible(poset, &v) {
        return Ok(finish(vec![v]));
    }
    let se = se_exact(poset, &v, SeOptions { cap: usize::MAX, budget: opts.budget / 4 })?;
    let lower = se.s;
    let search = Colouring::new(poset, &v);
    let greedy = search.greedy();
    let upper = greedy.iter().copied().max().map_or(1, |c| c + 1);
    if lower >= upper {
        return Ok(finish(search.classes(&greedy, upper)));
    }
    let seed: Vec<usize> = se
        .witness
        .iter()
        .map(|p| v.iter().position(|q| q == p).expect("witness is a kept pair"))
        .collect();
    let mut nodes_left = opts.budget;
    for k in lower..upper {
        if k > 64 {
            return Err(Error::BudgetExceeded { lower: k, upper });
        }
        match search.colour_with(k, &seed, &mut nodes_left) {
            Some(Some(colours)) => return Ok(finish(search.classes(&colours, k))),
            Some(None) => continue,
            None => return Err(Error::BudgetExceeded { lower: k, upper }),
        }
    }
    Ok(finish(search.classes(&greedy, upper)))
}

struct Colouring<'a> {
    poset: &'a Poset,
    pairs: &'a [Pair],
    /// Static branching priority: descending arc degree, then index.
    rank: Vec<usize>,
}

struct State {
    colour: Vec<usize>,
    feasible: Vec<u64>,
    reach: Vec<Vec<FixedBitSet>>,
    used: usize,
}

const NONE: usize = usize::MAX;

impl<'a> Colouring<'a> {
    fn new(poset: &'a Poset, pairs: &'a [Pair]) -> Self {
        let m = pairs.len();
        let mut degree = vec![0usize; m];
        for i in 0..m {
            for j in 0..m {
                if i != j && poset.leq(pairs[i].a, pairs[j].b) {
                    degree[i] += 1;
                    degree[j] += 1;
                }
            }
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(degree[i]), i));
        let mut rank = vec![0; m];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        Colouring { poset, pairs, rank }
    }

    fn fresh_reach(&self) -> Vec<FixedBitSet> {
        (0..self.poset.n()).map(|x| self.poset.up_set(x).clone()).collect()
    }

    /// Adds the arc `b -> a` to a class closure.
    fn add_arc(reach: &mut [FixedBitSet], p: Pair) {
        let from_a = reach[p.a].clone();
        for set in reach.iter_mut() {
            if set.contains(p.b) {
                set.union_with(&from_a);
            }
        }
    }

    /// Greedy first-fit colouring in static priority order.
    fn greedy(&self) -> Vec<usize> {
        let m = self.pairs.len();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| self.rank[i]);
        let mut reach: Vec<Vec<FixedBitSet>> = Vec::new();
        let mut colour = vec![0; m];
        for i in order {
            let p = self.pairs[i];
            let c = match reach.iter().position(|r| !r[p.a].contains(p.b)) {
                Some(c) => c,
                None => {
                    reach.push(self.fresh_reach());
                    reach.len() - 1
                }
            };
            Self::add_arc(&mut reach[c], p);
            colour[i] = c;
        }
        colour
    }

    fn classes(&self, colour: &[usize], k: usize) -> Vec<Vec<Pair>> {
        let mut classes = vec![Vec::new(); k];
        for (i, &c) in colour.iter().enumerate() {
            classes[c].push(self.pairs[i]);
        }
        classes.retain(|c| !c.is_empty());
        classes
    }

    /// Tries to colour with `k` classes. `None` means the budget ran out;
    /// `Some(None)` means no colouring exists.
    fn colour_with(&self, k: usize, seed: &[usize], nodes: &mut u64) -> Option<Option<Vec<usize>>> {
        let m = self.pairs.len();
        let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let mut st = State {
            colour: vec![NONE; m],
            feasible: vec![all; m],
            reach: vec![self.fresh_reach(); k],
            used: 0,
        };
        for &i in seed.iter().take(k) {
            let c = st.used;
            if !self.assign(&mut st, i, c) {
                return Some(None);
            }
        }
        match self.dfs(&mut st, k, nodes) {
            None => None,
            Some(true) => Some(Some(st.colour)),
            Some(false) => Some(None),
        }
    }

    /// Places pair `i` in class `c` and prunes feasibility. Returns false if
    /// some uncoloured pair is left without options.
    fn assign(&self, st: &mut State, i: usize, c: usize) -> bool {
        let p = self.pairs[i];
        st.colour[i] = c;
        if c == st.used {
            st.used += 1;
        }
        Self::add_arc(&mut st.reach[c], p);
        let bit = 1u64 << c;
        for j in 0..self.pairs.len() {
            if st.colour[j] == NONE && st.feasible[j] & bit != 0 {
                let q = self.pairs[j];
                if st.reach[c][q.a].contains(q.b) {
                    st.feasible[j] &= !bit;
                }
            }
        }
        true
    }

    fn options(&self, st: &State, j: usize, k: usize) -> (u64, bool) {
        let used_mask = if st.used >= 64 { u64::MAX } else { (1u64 << st.used) - 1 };
        (st.feasible[j] & used_mask, st.used < k)
    }

    fn dfs(&self, st: &mut State, k: usize, nodes: &mut u64) -> Option<bool> {
        if *nodes == 0 {
            return None;
        }
        *nodes -= 1;
        let mut pick = None;
        let mut best = (u32::MAX, usize::MAX);
        for j in 0..self.pairs.len() {
            if st.colour[j] != NONE {
                continue;
            }
            let (mask, fresh) = self.options(st, j, k);
            let count = mask.count_ones() + fresh as u32;
            if count == 0 {
                return Some(false);
            }
            let key = (count, self.rank[j]);
            if key < best {
                best = key;
                pick = Some(j);
            }
        }
        let Some(j) = pick else { return Some(true) };
        let (mut mask, fresh) = self.options(st, j, k);
        let mut choices = Vec::new();
        while mask != 0 {
            let c = mask.trailing_zeros() as usize;
            choices.push(c);
            mask &= mask - 1;
        }
        if fresh {
            choices.push(st.used);
        }
        for c in choices {
            let saved_reach = st.reach[c].clone();
            let saved_feasible = st.feasible.clone();
            let saved_used = st.used;
            self.assign(st, j, c);
            match self.dfs(st, k, nodes) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            st.reach[c] = saved_reach;
            st.feasible = saved_feasible;
            st.used = saved_used;
            st.colour[j] = NONE;
        }
        Some(false)
    }
}
