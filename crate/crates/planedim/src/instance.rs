//! Rooted instances: a poset, a plane cover graph, a minimal root `x0` on the
//! outer face and a pair set whose upper elements all lie above `x0`.
//!
//! The module also holds the two reductions that produce instances from an
//! arbitrary connected poset: the unfolding into alternating layers and the
//! contraction of the layers below a chosen one into a single new root.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::embed::{Anchor, PathOrder, PlaneGraph, RegionSet, NONE};
use crate::error::{Error, Result};
use crate::poset::{build_poset, Pair, Poset};

/// Layers `Z_0, Z_1, ...` of an unfolding from a minimal element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unfolding {
    pub origin: usize,
    pub layers: Vec<Vec<usize>>,
    /// Layer index of every element.
    pub layer_of: Vec<usize>,
}

impl Unfolding {
    /// Elements in layers `0..k`.
    pub fn below(&self, k: usize) -> Vec<usize> {
        self.layers[..k.min(self.layers.len())].iter().flatten().copied().collect()
    }
}

/// Unfolds a connected poset from the minimal element `z0`.
///
/// `Z_0 = {z0}`; for odd `k` the layer `Z_k` is the up-set of `Z_{k-1}`
/// minus earlier layers, and for even `k` it is the down-set.
pub fn unfold(poset: &Poset, z0: usize) -> Result<Unfolding> {
    let n = poset.n();
    if z0 >= n {
        return Err(Error::OutOfRange(z0, n));
    }
    if !poset.lower_covers(z0).is_empty() {
        return Err(Error::NotMinimal(z0));
    }
    if !poset.is_connected() {
        return Err(Error::NotConnected);
    }
    let mut layer_of = vec![NONE; n];
    layer_of[z0] = 0;
    let mut layers = vec![vec![z0]];
    loop {
        let k = layers.len();
        let mut set = FixedBitSet::with_capacity(n);
        for &z in &layers[k - 1] {
            if k % 2 == 1 {
                set.union_with(poset.up_set(z));
            } else {
                set.union_with(poset.down_set(z));
            }
        }
        let layer: Vec<usize> = set.ones().filter(|&v| layer_of[v] == NONE).collect();
        if layer.is_empty() {
            break;
        }
        for &v in &layer {
            layer_of[v] = k;
        }
        layers.push(layer);
    }
    Ok(Unfolding { origin: z0, layers, layer_of })
}

/// The pair split of an unfolding.
///
/// `from_above[i]` holds the pairs with `a` in the even layer `Z_i` and
/// `layer(a) <= layer(b)`; `from_below[j]` holds the pairs with `b` in the
/// odd layer `Z_j` and `layer(a) >= layer(b)`. Pairs of one side that fall
/// in no class lie on no alternating cycle of that side and are kept in
/// `free_above` and `free_below`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SupportedSplit {
    pub from_above: BTreeMap<usize, Vec<Pair>>,
    pub from_below: BTreeMap<usize, Vec<Pair>>,
    pub free_above: Vec<Pair>,
    pub free_below: Vec<Pair>,
}

/// Splits `pairs` by the layers of `unfolding`.
pub fn supported_split(poset: &Poset, pairs: &[Pair], unfolding: &Unfolding) -> Result<SupportedSplit> {
    poset.check_pairs(pairs)?;
    let mut split = SupportedSplit::default();
    for &p in pairs {
        let (i, j) = (unfolding.layer_of[p.a], unfolding.layer_of[p.b]);
        if i == NONE || j == NONE {
            return Err(Error::NotConnected);
        }
        let above = i < j || (i == j && i % 2 == 0);
        if above {
            if i % 2 == 0 {
                split.from_above.entry(i).or_default().push(p);
            } else {
                split.free_above.push(p);
            }
        } else if j % 2 == 1 {
            split.from_below.entry(j).or_default().push(p);
        } else {
            split.free_below.push(p);
        }
    }
    Ok(split)
}

/// An instance obtained by contracting the layers below `k` into a new root.
#[derive(Clone, Debug)]
pub struct Contracted {
    pub instance: Instance,
    /// True when the contracted poset was replaced by its dual.
    pub dual_applied: bool,
    /// Original element of every instance element; `NONE` for the new root.
    pub origin: Vec<usize>,
}

impl Contracted {
    /// Maps a pair of the instance back to the original poset, undoing the
    /// dual swap.
    pub fn lift(&self, p: Pair) -> Pair {
        let q = Pair::new(self.origin[p.a], self.origin[p.b]);
        if self.dual_applied {
            q.swap()
        } else {
            q
        }
    }
}

/// Contracts `Z_0 ∪ ... ∪ Z_{k-1}` into a new element `x` and returns the
/// instance on `{x} ∪ Z_k ∪ Z_{k+1} ∪ ...` carrying `class`.
///
/// For odd `k` the new root lies below every minimal element of `Z_k`. For
/// even `k` it lies above every maximal element of `Z_k`, and the poset and
/// the pairs are dualized so that `x` becomes minimal. The rotation of `x` is
/// the merged rotation of the contracted vertices, keeping the first edge in
/// rotation order towards each surviving neighbour.
pub fn contract_to_instance(
    poset: &Poset,
    plane: &PlaneGraph,
    unfolding: &Unfolding,
    k: usize,
    class: &[Pair],
) -> Result<Contracted> {
    if class.is_empty() {
        return Err(Error::EmptyClass);
    }
    if k == 0 || k >= unfolding.layers.len() {
        return Err(Error::BadParameter(format!("contraction layer {k} is out of range")));
    }
    let n = poset.n();
    let layer = &unfolding.layer_of;
    let in_y = |v: usize| layer[v] < k;
    // Contract Y along a spanning tree, one edge at a time. Each rotation
    // entry is (neighbour, edge id).
    let mut rot: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|v| plane.rotation(v).iter().filter(|&&d| plane.head(d) != NONE).map(|&d| (plane.head(d), d / 2)).collect())
        .collect();
    let root = unfolding.origin;
    let mut merged = FixedBitSet::with_capacity(n);
    merged.insert(root);
    while let Some(&(y, e)) = rot[root].iter().find(|&&(w, _)| in_y(w) && !merged.contains(w)) {
        let i = rot[root].iter().position(|&(_, id)| id == e).expect("edge at root");
        let j = rot[y].iter().position(|&(_, id)| id == e).expect("edge at y");
        let a = &rot[root];
        let b = &rot[y];
        let mut joined: Vec<(usize, usize)> = Vec::with_capacity(a.len() + b.len());
        joined.extend((1..a.len()).map(|t| a[(i + t) % a.len()]));
        joined.extend((1..b.len()).map(|t| b[(j + t) % b.len()]));
        let y_list = std::mem::take(&mut rot[y]);
        for &(w, _) in &y_list {
            if w != root {
                for entry in rot[w].iter_mut() {
                    if entry.0 == y {
                        entry.0 = root;
                    }
                }
            }
        }
        for entry in joined.iter_mut() {
            if entry.0 == y {
                entry.0 = root;
            }
        }
        joined.retain(|&(w, _)| w != root);
        for w in 0..n {
            if w != root {
                rot[w].retain(|&(u, id)| u != root || joined.iter().any(|&(_, jd)| jd == id));
            }
        }
        rot[root] = joined;
        merged.insert(y);
    }
    if (0..n).any(|v| in_y(v) && !merged.contains(v)) {
        return Err(Error::InvariantViolation("contracted layers do not form a connected set".into()));
    }
    // Neighbours of x in Q': the minimal (odd k) or maximal (even k) elements of Z_k.
    let odd = k % 2 == 1;
    let zk = &unfolding.layers[k];
    let attach: Vec<usize> = zk
        .iter()
        .copied()
        .filter(|&z| {
            if odd {
                zk.iter().all(|&w| w == z || !poset.lt(w, z))
            } else {
                zk.iter().all(|&w| w == z || !poset.lt(z, w))
            }
        })
        .collect();
    let kept: Vec<usize> = (0..n).filter(|&v| layer[v] >= k).collect();
    let mut new_id = vec![NONE; n];
    for (t, &v) in kept.iter().enumerate() {
        new_id[v] = t + 1;
    }
    let mut origin = vec![NONE];
    origin.extend(kept.iter().copied());
    let m = kept.len() + 1;
    // First edge in the merged rotation towards each attached element.
    let mut first_edge: BTreeMap<usize, usize> = BTreeMap::new();
    let mut x_rot = Vec::new();
    for &(w, id) in &rot[root] {
        if attach.contains(&w) && !first_edge.contains_key(&w) {
            first_edge.insert(w, id);
            x_rot.push(new_id[w]);
        }
    }
    if first_edge.len() != attach.len() {
        return Err(Error::InvariantViolation("an attachment point of the contracted root has no edge".into()));
    }
    let mut rotation = vec![Vec::new(); m];
    rotation[0] = x_rot;
    for &v in &kept {
        let list = &mut rotation[new_id[v]];
        for &(w, id) in &rot[v] {
            if w == root {
                if first_edge.get(&v) == Some(&id) {
                    list.push(0);
                }
            } else if layer[w] >= k && poset.comparable(v, w) {
                list.push(new_id[w]);
            }
        }
    }
    let mut covers: Vec<(usize, usize)> = Vec::new();
    for &(lo, hi) in poset.covers() {
        if layer[lo] >= k && layer[hi] >= k {
            covers.push((new_id[lo], new_id[hi]));
        }
    }
    for &z in &attach {
        covers.push(if odd { (0, new_id[z]) } else { (new_id[z], 0) });
    }
    if !odd {
        for c in covers.iter_mut() {
            *c = (c.1, c.0);
        }
    }
    let q = build_poset(m, &covers)?;
    let anchor = Anchor { vertex: 0, after: rotation[0].first().copied() };
    let plane_q = PlaneGraph::new(m, q.covers(), &rotation, anchor, None).map_err(|e| {
        Error::InvariantViolation(format!("contraction produced an invalid embedding: {e}"))
    })?;
    let mut pairs = Vec::with_capacity(class.len());
    for &p in class {
        if layer[p.a] < k || layer[p.b] < k {
            return Err(Error::InvariantViolation(format!("pair ({}, {}) is not supported at layer {k}", p.a, p.b)));
        }
        let np = Pair::new(new_id[p.a], new_id[p.b]);
        pairs.push(if odd { np } else { np.swap() });
    }
    let instance = Instance::new(q, plane_q, pairs)?;
    Ok(Contracted { instance, dual_applied: !odd, origin })
}

/// Where an element sits relative to a shadow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShadowLocation {
    Interior,
    Boundary,
    Outside,
}

/// The part of a shadow between two consecutive common points.
#[derive(Clone, Debug)]
pub struct ShadowBlock {
    pub min: usize,
    pub max: usize,
    /// Sub-path of the leftmost path from `min` to `max`.
    pub left: Vec<usize>,
    /// Sub-path of the rightmost path from `min` to `max`.
    pub right: Vec<usize>,
    /// True when both sides are the same single edge.
    pub degenerate: bool,
    /// Closed region bounded by the two sides, absent for degenerate blocks.
    pub region: Option<RegionSet>,
}

/// A maximal run of blocks between reversing elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shadow {
    /// Blocks `first_block..end_block` of the decomposition.
    pub first_block: usize,
    pub end_block: usize,
    pub initial: usize,
    pub terminal: usize,
}

/// Common points, blocks, reversing elements and shadows of one element of `B`.
#[derive(Clone, Debug)]
pub struct ShadowDecomposition {
    pub target: usize,
    pub common_points: Vec<usize>,
    pub blocks: Vec<ShadowBlock>,
    /// Indices into `common_points` of the reversing elements.
    pub reversing: Vec<usize>,
    pub shadows: Vec<Shadow>,
}

impl ShadowDecomposition {
    /// Shadow depth: the number of reversing elements.
    pub fn depth(&self) -> usize {
        self.reversing.len()
    }

    /// The reversing elements themselves.
    pub fn reversing_elements(&self) -> Vec<usize> {
        self.reversing.iter().map(|&i| self.common_points[i]).collect()
    }

    /// Position of `v` relative to `shad_j`; every `v` is outside for `j > depth`.
    pub fn locate(&self, v: usize, j: usize) -> ShadowLocation {
        let Some(s) = self.shadows.get(j) else {
            return ShadowLocation::Outside;
        };
        if s.first_block == s.end_block {
            return if v == s.initial { ShadowLocation::Boundary } else { ShadowLocation::Outside };
        }
        let blocks = &self.blocks[s.first_block..s.end_block];
        if blocks.iter().any(|b| b.left.contains(&v) || b.right.contains(&v)) {
            return ShadowLocation::Boundary;
        }
        if blocks.iter().any(|b| b.region.as_ref().is_some_and(|r| r.interior(v))) {
            return ShadowLocation::Interior;
        }
        ShadowLocation::Outside
    }

    /// True if `v` is in the closed shadow `shad_0`.
    pub fn contains(&self, v: usize) -> bool {
        self.locate(v, 0) != ShadowLocation::Outside
    }
}

/// Relative position of two elements of `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairClass {
    /// The paths to `b1` run between the paths to `b2`.
    InsidePair,
    /// The paths to `b2` run between the paths to `b1`.
    OutsidePair,
    /// Both leftmost and rightmost paths to `b1` are left of those to `b2`.
    LeftPair,
    /// Both paths to `b1` are right of those to `b2`.
    RightPair,
    /// The leftmost paths are prefixes of one another.
    SubpathLL,
    /// The rightmost paths are prefixes of one another.
    SubpathRR,
    /// Reserved for configurations outside the four comparisons.
    Other,
}

/// Classification of `(b1, b2)` with the derived left-of relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BRelation {
    pub class: PairClass,
    pub left_of: bool,
    pub right_of: bool,
}

/// Pairwise relations on `B`, filled once per instance.
#[derive(Clone, Debug)]
struct Relations {
    index: Vec<usize>,
    wl_left: Vec<FixedBitSet>,
    wr_left: Vec<FixedBitSet>,
    left: Vec<FixedBitSet>,
}

/// A rooted instance.
#[derive(Clone, Debug)]
pub struct Instance {
    poset: Poset,
    plane: PlaneGraph,
    x0: usize,
    pairs: Vec<Pair>,
    b_set: FixedBitSet,
    b_list: Vec<usize>,
    wl_parent: Vec<usize>,
    wr_parent: Vec<usize>,
    shadows: Vec<OnceLock<ShadowDecomposition>>,
    relations: OnceLock<Relations>,
}

/// Parents of the DFS tree over upward darts from `x0`, visiting darts in
/// clockwise (leftmost) or counterclockwise (rightmost) order from the dart
/// back to the parent.
fn witness_tree(poset: &Poset, plane: &PlaneGraph, leftmost: bool) -> Vec<usize> {
    let n = poset.n();
    let x0 = plane.x0();
    let mut parent = vec![NONE; n];
    let mut seen = FixedBitSet::with_capacity(n);
    seen.insert(x0);
    let start = plane.u_ordering(x0, plane.anchor()).expect("anchor at root");
    let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(x0, start, 1)];
    while let Some(top) = stack.last_mut() {
        let (v, ref order, k) = *top;
        let deg = order.len();
        if k >= deg {
            stack.pop();
            continue;
        }
        top.2 += 1;
        let d = if leftmost { order[k] } else { order[deg - k] };
        let w = plane.head(d);
        if w == NONE || seen.contains(w) || !poset.lt(v, w) {
            continue;
        }
        seen.insert(w);
        parent[w] = v;
        let back = plane.twin(d);
        let next = plane.u_ordering(w, back).expect("dart at head");
        stack.push((w, next, 1));
    }
    parent
}

impl Instance {
    /// Validates and builds an instance. The root is the anchor vertex of
    /// `plane`, which must be minimal and on the outer face; every pair must
    /// be incomparable with `b` above the root.
    pub fn new(poset: Poset, plane: PlaneGraph, pairs: Vec<Pair>) -> Result<Instance> {
        if plane.n() != poset.n() {
            return Err(Error::RotationMismatch(format!("{} vertices for {} elements", plane.n(), poset.n())));
        }
        let mut covers: Vec<(usize, usize)> = poset.covers().to_vec();
        let mut edges: Vec<(usize, usize)> = plane.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        for c in covers.iter_mut() {
            *c = (c.0.min(c.1), c.0.max(c.1));
        }
        covers.sort_unstable();
        edges.sort_unstable();
        if covers != edges {
            return Err(Error::RotationMismatch("plane graph edges differ from the cover edges".into()));
        }
        let x0 = plane.x0();
        if !poset.lower_covers(x0).is_empty() {
            return Err(Error::NotMinimal(x0));
        }
        if !plane.on_outer_face(x0) {
            return Err(Error::AnchorNotOnOuterFace);
        }
        poset.check_pairs(&pairs)?;
        let b_set = poset.up_set(x0).clone();
        if let Some(p) = pairs.iter().find(|p| !b_set.contains(p.b)) {
            return Err(Error::NotAboveX0(p.b));
        }
        let mut pairs = pairs;
        crate::poset::normalize_pairs(&mut pairs);
        let b_list: Vec<usize> = b_set.ones().collect();
        let wl_parent = witness_tree(&poset, &plane, true);
        let wr_parent = witness_tree(&poset, &plane, false);
        let n = poset.n();
        Ok(Instance {
            poset,
            plane,
            x0,
            pairs,
            b_set,
            b_list,
            wl_parent,
            wr_parent,
            shadows: (0..n).map(|_| OnceLock::new()).collect(),
            relations: OnceLock::new(),
        })
    }

    /// The same instance with another pair set; cached paths and shadows are kept.
    pub fn with_pairs(&self, pairs: Vec<Pair>) -> Result<Instance> {
        self.poset.check_pairs(&pairs)?;
        if let Some(p) = pairs.iter().find(|p| !self.b_set.contains(p.b)) {
            return Err(Error::NotAboveX0(p.b));
        }
        let mut pairs = pairs;
        crate::poset::normalize_pairs(&mut pairs);
        Ok(Instance { pairs, ..self.clone() })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn plane(&self) -> &PlaneGraph {
        &self.plane
    }

    pub fn x0(&self) -> usize {
        self.x0
    }

    /// The pair set `I`, sorted.
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    /// True if `v` is in `B`, the up-set of the root.
    pub fn in_b(&self, v: usize) -> bool {
        self.b_set.contains(v)
    }

    /// Elements of `B` in ascending id order.
    pub fn b_elements(&self) -> &[usize] {
        &self.b_list
    }

    /// The lower elements of the pairs, sorted and deduplicated.
    pub fn a_elements(&self) -> Vec<usize> {
        let mut a: Vec<usize> = self.pairs.iter().map(|p| p.a).collect();
        a.sort_unstable();
        a.dedup();
        a
    }

    /// Parent of `v` in the tree of leftmost paths (`NONE` at the root).
    pub fn wl_parent(&self, v: usize) -> usize {
        self.wl_parent[v]
    }

    /// Parent of `v` in the tree of rightmost paths.
    pub fn wr_parent(&self, v: usize) -> usize {
        self.wr_parent[v]
    }

    fn tree_path(&self, parent: &[usize], b: usize) -> Result<Vec<usize>> {
        if b >= self.poset.n() {
            return Err(Error::OutOfRange(b, self.poset.n()));
        }
        if !self.in_b(b) {
            return Err(Error::NotAboveX0(b));
        }
        let mut path = vec![b];
        let mut v = b;
        while v != self.x0 {
            v = parent[v];
            path.push(v);
        }
        path.reverse();
        Ok(path)
    }

    /// The leftmost witnessing path from the root to `b`.
    pub fn leftmost_path(&self, b: usize) -> Result<Vec<usize>> {
        self.tree_path(&self.wl_parent, b)
    }

    /// The rightmost witnessing path from the root to `b`.
    pub fn rightmost_path(&self, b: usize) -> Result<Vec<usize>> {
        self.tree_path(&self.wr_parent, b)
    }

    /// True if `u` lies on the leftmost path to `b`.
    pub fn on_leftmost(&self, u: usize, b: usize) -> bool {
        Self::on_tree_path(&self.wl_parent, u, b)
    }

    /// True if `u` lies on the rightmost path to `b`.
    pub fn on_rightmost(&self, u: usize, b: usize) -> bool {
        Self::on_tree_path(&self.wr_parent, u, b)
    }

    fn on_tree_path(parent: &[usize], u: usize, b: usize) -> bool {
        let mut v = b;
        while v != NONE {
            if v == u {
                return true;
            }
            v = parent[v];
        }
        false
    }

    /// Compares two walks from the root in the root ordering.
    pub fn compare_from_root(&self, u: &[usize], v: &[usize]) -> PathOrder {
        self.plane.compare_unchecked(self.plane.anchor(), u, v)
    }

    /// The shadow decomposition of `b`.
    pub fn shadow_decomposition(&self, b: usize) -> Result<&ShadowDecomposition> {
        if b >= self.poset.n() {
            return Err(Error::OutOfRange(b, self.poset.n()));
        }
        if !self.in_b(b) {
            return Err(Error::NotAboveX0(b));
        }
        if let Some(s) = self.shadows[b].get() {
            return Ok(s);
        }
        let s = self.build_shadows(b)?;
        Ok(self.shadows[b].get_or_init(|| s))
    }

    /// Like [`Instance::shadow_decomposition`] for an element known to be in `B`.
    pub fn shadow(&self, b: usize) -> &ShadowDecomposition {
        self.shadow_decomposition(b).expect("element of B with a valid shadow")
    }

    fn build_shadows(&self, b: usize) -> Result<ShadowDecomposition> {
        let pl = self.leftmost_path(b)?;
        let pr = self.rightmost_path(b)?;
        let mut pos_r = vec![NONE; self.poset.n()];
        for (i, &v) in pr.iter().enumerate() {
            pos_r[v] = i;
        }
        let common: Vec<(usize, usize)> =
            pl.iter().enumerate().filter(|(_, &v)| pos_r[v] != NONE).map(|(i, &v)| (i, pos_r[v])).collect();
        let common_points: Vec<usize> = common.iter().map(|&(i, _)| pl[i]).collect();
        let mut blocks = Vec::new();
        for w in common.windows(2) {
            let left = pl[w[0].0..=w[1].0].to_vec();
            let right = pr[w[0].1..=w[1].1].to_vec();
            let degenerate = left.len() == 2 && right.len() == 2;
            let region = if degenerate {
                None
            } else {
                let mut cycle = left.clone();
                cycle.extend(right[1..right.len() - 1].iter().rev());
                Some(self.plane.region_of_cycle(&cycle)?)
            };
            blocks.push(ShadowBlock { min: left[0], max: *left.last().unwrap(), left, right, degenerate, region });
        }
        let m = blocks.len();
        let mut reversing = Vec::new();
        for i in 1..m {
            if blocks[i - 1].degenerate {
                continue;
            }
            let z = common_points[i];
            let below = &blocks[i - 1];
            let above = &blocks[i];
            let dart = |w: usize| self.plane.dart_between(z, w).expect("path edge");
            let l_minus = dart(below.left[below.left.len() - 2]);
            let r_minus = dart(below.right[below.right.len() - 2]);
            let l_plus = dart(above.left[1]);
            if self.plane.rank(l_minus, r_minus) < self.plane.rank(l_minus, l_plus) {
                reversing.push(i);
            }
        }
        let mut cuts = vec![0];
        cuts.extend(reversing.iter().copied());
        cuts.push(m);
        let shadows = cuts
            .windows(2)
            .map(|w| Shadow {
                first_block: w[0],
                end_block: w[1],
                initial: common_points[w[0]],
                terminal: common_points[w[1]],
            })
            .collect();
        Ok(ShadowDecomposition { target: b, common_points, blocks, reversing, shadows })
    }

    /// Position of `v` relative to `shad_j(b)`.
    pub fn locate_in_shadow(&self, v: usize, b: usize, j: usize) -> Result<ShadowLocation> {
        Ok(self.shadow_decomposition(b)?.locate(v, j))
    }

    /// True if `v` is in `shad(b) = shad_0(b)`.
    pub fn in_shadow(&self, v: usize, b: usize) -> bool {
        self.shadow(b).contains(v)
    }

    fn relations(&self) -> &Relations {
        self.relations.get_or_init(|| {
            let n = self.poset.n();
            let nb = self.b_list.len();
            let mut index = vec![NONE; n];
            for (i, &b) in self.b_list.iter().enumerate() {
                index[b] = i;
            }
            let wl: Vec<Vec<usize>> = self.b_list.iter().map(|&b| self.leftmost_path(b).unwrap()).collect();
            let wr: Vec<Vec<usize>> = self.b_list.iter().map(|&b| self.rightmost_path(b).unwrap()).collect();
            let mut wl_left = vec![FixedBitSet::with_capacity(nb); nb];
            let mut wr_left = vec![FixedBitSet::with_capacity(nb); nb];
            let mut left = vec![FixedBitSet::with_capacity(nb); nb];
            for i in 0..nb {
                for j in 0..nb {
                    if i == j {
                        continue;
                    }
                    if self.compare_from_root(&wl[i], &wl[j]).is_left() {
                        wl_left[i].insert(j);
                    }
                    if self.compare_from_root(&wr[i], &wr[j]).is_left() {
                        wr_left[i].insert(j);
                    }
                }
            }
            for i in 0..nb {
                for j in 0..nb {
                    if wl_left[i].contains(j) && wr_left[i].contains(j) {
                        let (bi, bj) = (self.b_list[i], self.b_list[j]);
                        if !self.in_shadow(bi, bj) && !self.in_shadow(bj, bi) {
                            left[i].insert(j);
                        }
                    }
                }
            }
            Relations { index, wl_left, wr_left, left }
        })
    }

    /// True if `W_L(b1)` is left of `W_L(b2)`.
    pub fn wl_left_of(&self, b1: usize, b2: usize) -> bool {
        let r = self.relations();
        r.wl_left[r.index[b1]].contains(r.index[b2])
    }

    /// True if `W_R(b1)` is left of `W_R(b2)`.
    pub fn wr_left_of(&self, b1: usize, b2: usize) -> bool {
        let r = self.relations();
        r.wr_left[r.index[b1]].contains(r.index[b2])
    }

    /// The left-of order on `B`: a left pair whose targets avoid each other's shadows.
    pub fn left_of(&self, b1: usize, b2: usize) -> bool {
        let r = self.relations();
        r.left[r.index[b1]].contains(r.index[b2])
    }

    /// Classifies `(b1, b2)` by the four path comparisons.
    pub fn compare_b(&self, b1: usize, b2: usize) -> Result<BRelation> {
        let (l1, l2) = (self.leftmost_path(b1)?, self.leftmost_path(b2)?);
        let (r1, r2) = (self.rightmost_path(b1)?, self.rightmost_path(b2)?);
        let wl = self.compare_from_root(&l1, &l2);
        let wr = self.compare_from_root(&r1, &r2);
        let class = if wl.is_subpath() {
            PairClass::SubpathLL
        } else if wr.is_subpath() {
            PairClass::SubpathRR
        } else {
            match (wl.is_left(), wr.is_left()) {
                (true, true) => PairClass::LeftPair,
                (false, false) => PairClass::RightPair,
                (false, true) => PairClass::InsidePair,
                (true, false) => PairClass::OutsidePair,
            }
        };
        let apart = !self.in_shadow(b1, b2) && !self.in_shadow(b2, b1);
        Ok(BRelation {
            class,
            left_of: class == PairClass::LeftPair && apart,
            right_of: class == PairClass::RightPair && apart,
        })
    }
}

/// The sub-rotation on `keep` with the root `x` anchored immediately
/// clockwise after `after`. Returns the plane graph on the renumbered
/// elements and the original id of each new element.
pub fn induced_plane(
    poset: &Poset,
    plane: &PlaneGraph,
    keep: &[usize],
    x: usize,
    after: Option<usize>,
) -> Result<(Poset, PlaneGraph, Vec<usize>)> {
    let n = poset.n();
    let mut new_id = vec![NONE; n];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    if new_id[x] == NONE {
        return Err(Error::BadParameter(format!("root {x} is not kept")));
    }
    let sub = poset.induced(keep);
    let rot = plane.neighbour_rotation();
    let rotation: Vec<Vec<usize>> = keep
        .iter()
        .map(|&v| rot[v].iter().filter(|&&w| new_id[w] != NONE).map(|&w| new_id[w]).collect())
        .collect();
    let anchor = Anchor { vertex: new_id[x], after: after.map(|w| new_id[w]) };
    let sub_plane = PlaneGraph::new(keep.len(), sub.covers(), &rotation, anchor, None)
        .map_err(|e| Error::InvariantViolation(format!("induced embedding is invalid: {e}")))?;
    Ok((sub, sub_plane, keep.to_vec()))
}
