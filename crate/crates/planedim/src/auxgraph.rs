//! Exposed paths, extreme paths, the four properties of regular pairs of
//! pairs, the six auxiliary digraphs and the colouring built from them.
//!
//! Everything here works on a maximal good instance. For a lower element
//! `a`, `Y(a)` holds the elements of `B` above `a` whose shadow avoids `a`,
//! and `Z(a)` those reachable from `a` by an exposed path, a witnessing path
//! whose only element in `B` is its top. `M_L(a)` and `M_R(a)` are the least
//! and greatest walks from the root that climb inside `B` to some `z` in
//! `Z(a)` and descend along an exposed path to `a`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::embed::{RegionSet, NONE};
use crate::error::{Error, Result};
use crate::goodinst::MaximalGoodInstance;
use crate::instance::Instance;
use crate::poset::{find_strict_alternating_cycle, se_exact, Covering, Pair, SeOptions};

/// `Y(a)` and `Z(a)` for one lower element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZData {
    pub a: usize,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

/// The extreme walks of one lower element, each listed from the root to `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MPaths {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Peak of the left walk, `z_L(a)`.
    pub z_left: usize,
    /// Peak of the right walk, `z_R(a)`.
    pub z_right: usize,
}

/// The four properties of a regular sequence `((a1, b1), (a2, b2))`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Properties {
    pub l12: bool,
    pub l21: bool,
    pub r12: bool,
    pub r21: bool,
}

/// Type of a regular alternating cycle of size two. The first word refers
/// to the rightmost paths, the second to the leftmost ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CycleType {
    InIn,
    InOut,
    OutIn,
    OutOut,
}

/// A region bounded by two witnessing paths from the root and two exposed
/// paths from `a`.
#[derive(Clone, Debug)]
pub struct RegionTuple {
    pub a: usize,
    pub u: usize,
    pub v: usize,
    /// Greatest common element of `W_L(u)` and `W_R(v)`.
    pub q: usize,
    /// Greatest common element of the two exposed paths.
    pub m: usize,
    /// Root to `u` along `W_L(u)`, then down to `m` along the first exposed path.
    pub gamma_left: Vec<usize>,
    /// Root to `v` along `W_R(v)`, then down to `m` along the second exposed path.
    pub gamma_right: Vec<usize>,
    pub region: RegionSet,
}

/// The six auxiliary digraphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AuxKind {
    OO,
    IIL,
    IIR,
    IILR,
    IO,
    OI,
}

impl AuxKind {
    pub const ALL: [AuxKind; 6] = [AuxKind::OO, AuxKind::IIL, AuxKind::IIR, AuxKind::IILR, AuxKind::IO, AuxKind::OI];

    pub fn name(self) -> &'static str {
        match self {
            AuxKind::OO => "HOO",
            AuxKind::IIL => "HIIL",
            AuxKind::IIR => "HIIR",
            AuxKind::IILR => "HIILR",
            AuxKind::IO => "HIO",
            AuxKind::OI => "HOI",
        }
    }
}

impl std::str::FromStr for AuxKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.to_ascii_uppercase();
        let t = t.strip_prefix('H').unwrap_or(&t);
        Ok(match t {
            "OO" => AuxKind::OO,
            "IIL" => AuxKind::IIL,
            "IIR" => AuxKind::IIR,
            "IILR" => AuxKind::IILR,
            "IO" => AuxKind::IO,
            "OI" => AuxKind::OI,
            _ => return Err(Error::BadParameter(format!("unknown auxiliary graph {s}"))),
        })
    }
}

/// Witness of a shifted edge, stored as elements of `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    T(usize),
    S(usize),
    ST(usize, usize),
}

/// An edge between pair indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxEdge {
    pub from: usize,
    pub to: usize,
    /// Weight on `HIO` and `HOI` edges.
    pub weight: Option<u8>,
    pub witness: Option<Witness>,
}

/// One auxiliary digraph on the pairs of the instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxDigraph {
    pub kind: AuxKind,
    pub vertices: Vec<Pair>,
    pub edges: Vec<AuxEdge>,
}

impl AuxDigraph {
    fn adjacency(&self) -> (Vec<Vec<(usize, u8)>>, Vec<Vec<(usize, u8)>>) {
        let n = self.vertices.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for e in &self.edges {
            let w = e.weight.unwrap_or(1);
            out[e.from].push((e.to, w));
            inc[e.to].push((e.from, w));
        }
        (out, inc)
    }

    /// A topological order of the vertices, or `None` if there is a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        let (out, _) = self.adjacency();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.to] += 1;
        }
        let mut stack: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &(w, _) in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    fn order_or_err(&self) -> Result<Vec<usize>> {
        self.topological_order()
            .ok_or_else(|| Error::InvariantViolation(format!("{} has a directed cycle", self.kind.name())))
    }

    /// Number of vertices of a longest path starting at each vertex.
    pub fn max_path_from(&self) -> Result<Vec<usize>> {
        let order = self.order_or_err()?;
        let (out, _) = self.adjacency();
        let mut best = vec![1usize; self.vertices.len()];
        for &v in order.iter().rev() {
            for &(w, _) in &out[v] {
                best[v] = best[v].max(best[w] + 1);
            }
        }
        Ok(best)
    }

    /// Number of vertices of a longest path.
    pub fn max_path(&self) -> Result<usize> {
        Ok(self.max_path_from()?.into_iter().max().unwrap_or(0))
    }

    /// Largest weight of a path starting at each vertex.
    pub fn max_weight_from(&self) -> Result<Vec<usize>> {
        let order = self.order_or_err()?;
        let (out, _) = self.adjacency();
        let mut best = vec![0usize; self.vertices.len()];
        for &v in order.iter().rev() {
            for &(w, wt) in &out[v] {
                best[v] = best[v].max(best[w] + wt as usize);
            }
        }
        Ok(best)
    }

    /// Largest weight of a path ending at each vertex.
    pub fn max_weight_to(&self) -> Result<Vec<usize>> {
        let order = self.order_or_err()?;
        let (_, inc) = self.adjacency();
        let mut best = vec![0usize; self.vertices.len()];
        for &v in &order {
            for &(u, wt) in &inc[v] {
                best[v] = best[v].max(best[u] + wt as usize);
            }
        }
        Ok(best)
    }

    /// Graphviz rendering: one node per pair, edges labelled by weight and witness.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", self.kind.name());
        for (i, p) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  p{i} [label=\"({}, {})\"];", p.a, p.b);
        }
        for e in &self.edges {
            let mut attrs = Vec::new();
            if let Some(w) = e.weight {
                attrs.push(format!("weight={w}"));
            }
            match e.witness {
                Some(Witness::T(t)) => attrs.push(format!("witness=\"t={t}\"")),
                Some(Witness::S(t)) => attrs.push(format!("witness=\"s={t}\"")),
                Some(Witness::ST(a, b)) => attrs.push(format!("witness=\"s={a},t={b}\"")),
                None => {}
            }
            if attrs.is_empty() {
                let _ = writeln!(s, "  p{} -> p{};", e.from, e.to);
            } else {
                let _ = writeln!(s, "  p{} -> p{} [{}];", e.from, e.to, attrs.join(", "));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// The colouring of the pairs by six-tuples.
#[derive(Clone, Debug)]
pub struct KappaColoring {
    /// Colour of every pair, aligned with the instance pairs.
    pub colors: Vec<[usize; 6]>,
    /// Pairs grouped by colour in lexicographic colour order.
    pub classes: Covering,
    /// Modulus applied to the weight coordinates, `None` if `s` was unavailable.
    pub modulus: Option<usize>,
    /// The standard-example number used for the modulus.
    pub s: Option<usize>,
}

/// Per-instance data for the auxiliary digraphs.
pub struct Analysis<'a> {
    inst: &'a Instance,
    pairs: Vec<Pair>,
    a_index: Vec<usize>,
    zdata: Vec<ZData>,
    z_sets: Vec<FixedBitSet>,
    mpaths: Vec<MPaths>,
    /// Pair indices grouped by lower element.
    by_a: Vec<Vec<usize>>,
    regular: Vec<FixedBitSet>,
    props: Vec<Vec<Properties>>,
}

impl<'a> Analysis<'a> {
    /// Computes `Z` sets, extreme paths and the properties of every regular
    /// sequence of two pairs.
    pub fn new(mgi: &'a MaximalGoodInstance) -> Result<Analysis<'a>> {
        Self::from_instance(mgi.instance())
    }

    /// Same as [`Analysis::new`] on an instance that is assumed to be maximal good.
    pub fn from_instance(inst: &'a Instance) -> Result<Analysis<'a>> {
        let n = inst.poset().n();
        let pairs = inst.pairs().to_vec();
        let a_list = inst.a_elements();
        let mut a_index = vec![NONE; n];
        for (i, &a) in a_list.iter().enumerate() {
            a_index[a] = i;
        }
        let mut zdata = Vec::with_capacity(a_list.len());
        let mut z_sets = Vec::with_capacity(a_list.len());
        for &a in &a_list {
            let zd = z_sets_of(inst, a);
            let mut bits = FixedBitSet::with_capacity(n);
            for &z in &zd.z {
                bits.insert(z);
            }
            zdata.push(zd);
            z_sets.push(bits);
        }
        let mut mpaths = Vec::with_capacity(a_list.len());
        for (i, &a) in a_list.iter().enumerate() {
            let left = extreme_walk(inst, a, &z_sets[i], true)?;
            let right = extreme_walk(inst, a, &z_sets[i], false)?;
            mpaths.push(MPaths { left: left.0, right: right.0, z_left: left.1, z_right: right.1 });
        }
        let mut by_a = vec![Vec::new(); a_list.len()];
        for (k, p) in pairs.iter().enumerate() {
            by_a[a_index[p.a]].push(k);
        }
        let np = pairs.len();
        let mut regular = vec![FixedBitSet::with_capacity(np); np];
        for i in 0..np {
            for j in 0..np {
                if inst.left_of(pairs[i].b, pairs[j].b) {
                    regular[i].insert(j);
                }
            }
        }
        let mut analysis = Analysis {
            inst,
            pairs,
            a_index,
            zdata,
            z_sets,
            mpaths,
            by_a,
            regular,
            props: Vec::new(),
        };
        let na = a_list.len();
        let mut l12 = vec![FixedBitSet::with_capacity(na); na];
        let mut r12 = vec![FixedBitSet::with_capacity(na); na];
        for i in 0..na {
            for j in 0..na {
                let (mi, mj) = (&analysis.mpaths[i], &analysis.mpaths[j]);
                if inst.compare_from_root(&mi.left, &mj.left).is_left() {
                    l12[i].insert(j);
                }
                if inst.compare_from_root(&mj.right, &mi.right).is_right() {
                    r12[i].insert(j);
                }
            }
        }
        let mut props = vec![vec![Properties::default(); np]; np];
        for i in 0..np {
            for j in analysis.regular[i].ones() {
                let (p1, p2) = (analysis.pairs[i], analysis.pairs[j]);
                let (ia, ja) = (analysis.a_index[p1.a], analysis.a_index[p2.a]);
                props[i][j] = Properties {
                    l12: l12[ia].contains(ja),
                    l21: analysis.l21(p1, p2),
                    r12: r12[ia].contains(ja),
                    r21: analysis.r21(p1, p2),
                };
            }
        }
        analysis.props = props;
        Ok(analysis)
    }

    pub fn instance(&self) -> &Instance {
        self.inst
    }

    /// The pairs, indexed as the digraph vertices.
    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    fn a_slot(&self, a: usize) -> Result<usize> {
        match self.a_index.get(a) {
            Some(&i) if i != NONE => Ok(i),
            _ => Err(Error::BadParameter(format!("{a} is not a lower element of the instance"))),
        }
    }

    /// `Y(a)` and `Z(a)`.
    pub fn z_sets(&self, a: usize) -> Result<&ZData> {
        Ok(&self.zdata[self.a_slot(a)?])
    }

    /// `M_L(a)`, `M_R(a)` and their peaks.
    pub fn m_paths(&self, a: usize) -> Result<&MPaths> {
        Ok(&self.mpaths[self.a_slot(a)?])
    }

    fn index_of(&self, p: Pair) -> Result<usize> {
        self.pairs.binary_search(&p).map_err(|_| Error::BadParameter(format!("({}, {}) is not in I", p.a, p.b)))
    }

    /// True if `b1` is left of `b2` and both pairs are in `I`.
    pub fn is_regular(&self, p1: Pair, p2: Pair) -> bool {
        match (self.index_of(p1), self.index_of(p2)) {
            (Ok(i), Ok(j)) => self.regular[i].contains(j),
            _ => false,
        }
    }

    /// The four properties of a regular sequence.
    pub fn test_properties(&self, p1: Pair, p2: Pair) -> Result<Properties> {
        let (i, j) = (self.index_of(p1).map_err(|_| Error::NotRegular)?, self.index_of(p2).map_err(|_| Error::NotRegular)?);
        if !self.regular[i].contains(j) {
            return Err(Error::NotRegular);
        }
        Ok(self.props[i][j])
    }

    /// Some `u` in `Z(a2)` on both `W_L(z_L(a1))` and `W_L(b1)` starts an
    /// exposed path down to `a2` that leaves `W_L(z_L(a1))` to the left.
    fn l21(&self, p1: Pair, p2: Pair) -> bool {
        let inst = self.inst;
        let plane = inst.plane();
        let poset = inst.poset();
        let zl = self.mpaths[self.a_index[p1.a]].z_left;
        let w = inst.leftmost_path(zl).expect("peak in B");
        let z2 = &self.z_sets[self.a_index[p2.a]];
        for t in 1..w.len() - 1 {
            let u = w[t];
            if !z2.contains(u) || !inst.on_leftmost(u, p1.b) {
                continue;
            }
            let back = plane.dart_between(u, w[t - 1]).expect("path edge");
            let along = plane.rank(back, plane.dart_between(u, w[t + 1]).expect("path edge"));
            let found = poset.lower_covers(u).iter().any(|&x| {
                poset.leq(p2.a, x)
                    && !inst.in_b(x)
                    && plane.rank(back, plane.dart_between(u, x).expect("cover edge")) < along
            });
            if found {
                return true;
            }
        }
        false
    }

    /// Mirror of [`Analysis::l21`] on rightmost paths, with `v` in `Z(a1)`.
    fn r21(&self, p1: Pair, p2: Pair) -> bool {
        let inst = self.inst;
        let plane = inst.plane();
        let poset = inst.poset();
        let zr = self.mpaths[self.a_index[p2.a]].z_right;
        let w = inst.rightmost_path(zr).expect("peak in B");
        let z1 = &self.z_sets[self.a_index[p1.a]];
        for t in 1..w.len() - 1 {
            let v = w[t];
            if !z1.contains(v) || !inst.on_rightmost(v, p2.b) {
                continue;
            }
            let back = plane.dart_between(v, w[t - 1]).expect("path edge");
            let along = plane.rank(back, plane.dart_between(v, w[t + 1]).expect("path edge"));
            let found = poset.lower_covers(v).iter().any(|&x| {
                poset.leq(p1.a, x)
                    && !inst.in_b(x)
                    && plane.rank(back, plane.dart_between(v, x).expect("cover edge")) > along
            });
            if found {
                return true;
            }
        }
        false
    }

    /// An exposed witnessing path from `a` up to `z`, choosing the least-id
    /// lower cover at each step down from `z`.
    pub fn exposed_path(&self, a: usize, z: usize) -> Result<Vec<usize>> {
        let inst = self.inst;
        let poset = inst.poset();
        if !inst.in_b(z) || !poset.lt(a, z) {
            return Err(Error::BadParameter(format!("{z} is not an exposed target of {a}")));
        }
        let mut path = vec![z];
        let mut v = z;
        while v != a {
            let next = poset
                .lower_covers(v)
                .iter()
                .copied()
                .filter(|&w| poset.leq(a, w) && !inst.in_b(w))
                .min()
                .ok_or_else(|| Error::BadParameter(format!("no exposed path from {a} to {z}")))?;
            path.push(next);
            v = next;
        }
        path.reverse();
        Ok(path)
    }

    /// The region of the tuple `(a, u, v, U, V)` where `U` and `V` run from
    /// `a` up to `u` and `v`.
    pub fn build_region(&self, a: usize, u: usize, v: usize, up_u: &[usize], up_v: &[usize]) -> Result<RegionTuple> {
        let inst = self.inst;
        if !inst.left_of(u, v) {
            return Err(Error::NotLeftOf(u, v));
        }
        let wl = inst.leftmost_path(u)?;
        let wr = inst.rightmost_path(v)?;
        let bad = |msg: &str| Error::PathNotInGraph(msg.to_string());
        if up_u.first() != Some(&a) || up_u.last() != Some(&u) || up_v.first() != Some(&a) || up_v.last() != Some(&v) {
            return Err(bad("exposed paths must run from a to u and v"));
        }
        inst.plane().check_path(up_u)?;
        inst.plane().check_path(up_v)?;
        let iq_l = (0..wl.len()).rev().find(|&i| wr.contains(&wl[i])).expect("root is common");
        let q = wl[iq_l];
        let iq_r = wr.iter().position(|&x| x == q).unwrap();
        let im_u = (0..up_u.len()).rev().find(|&i| up_v.contains(&up_u[i])).expect("a is common");
        let m = up_u[im_u];
        let im_v = up_v.iter().position(|&x| x == m).unwrap();
        let mut cycle: Vec<usize> = wr[iq_r..].to_vec();
        cycle.extend(up_v[im_v..up_v.len() - 1].iter().rev());
        cycle.extend(&up_u[im_u + 1..]);
        cycle.extend(wl[iq_l + 1..wl.len() - 1].iter().rev());
        let region = inst.plane().region_of_cycle(&cycle)?;
        let mut gamma_left = wl.clone();
        gamma_left.extend(up_u[im_u..up_u.len() - 1].iter().rev());
        let mut gamma_right = wr.clone();
        gamma_right.extend(up_v[im_v..up_v.len() - 1].iter().rev());
        Ok(RegionTuple { a, u, v, q, m, gamma_left, gamma_right, region })
    }

    /// The left region of a regular alternating cycle, using the least-id
    /// `z1` in `Z(a1)` below `b2`.
    pub fn left_region(&self, p1: Pair, p2: Pair) -> Result<RegionTuple> {
        let slot = self.a_slot(p1.a)?;
        let poset = self.inst.poset();
        let z1 = *self.zdata[slot].z.iter().find(|&&z| poset.leq(z, p2.b)).ok_or(Error::NotAlternatingCycle)?;
        let mp = &self.mpaths[slot];
        let zl = mp.z_left;
        let ip = mp.left.iter().position(|&x| x == zl).unwrap();
        let up_u: Vec<usize> = mp.left[ip..].iter().rev().copied().collect();
        let up_v = self.exposed_path(p1.a, z1)?;
        self.build_region(p1.a, zl, z1, &up_u, &up_v)
    }

    /// The right region of a regular alternating cycle, using the least-id
    /// `z2` in `Z(a2)` below `b1`.
    pub fn right_region(&self, p1: Pair, p2: Pair) -> Result<RegionTuple> {
        let slot = self.a_slot(p2.a)?;
        let poset = self.inst.poset();
        let z2 = *self.zdata[slot].z.iter().find(|&&z| poset.leq(z, p1.b)).ok_or(Error::NotAlternatingCycle)?;
        let mp = &self.mpaths[slot];
        let zr = mp.z_right;
        let ip = mp.right.iter().position(|&x| x == zr).unwrap();
        let up_v: Vec<usize> = mp.right[ip..].iter().rev().copied().collect();
        let up_u = self.exposed_path(p2.a, z2)?;
        self.build_region(p2.a, z2, zr, &up_u, &up_v)
    }

    /// Type of a regular alternating cycle of size two, read off the
    /// position of `a2` in a left region and of `a1` in a right region.
    pub fn classify_cycle2(&self, p1: Pair, p2: Pair) -> Result<CycleType> {
        if !self.is_regular(p1, p2) {
            return Err(Error::NotRegular);
        }
        let poset = self.inst.poset();
        if !poset.leq(p1.a, p2.b) || !poset.leq(p2.a, p1.b) {
            return Err(Error::NotAlternatingCycle);
        }
        let left_in = self.left_region(p1, p2)?.region.interior(p2.a);
        let right_in = self.right_region(p1, p2)?.region.interior(p1.a);
        Ok(match (right_in, left_in) {
            (true, true) => CycleType::InIn,
            (true, false) => CycleType::InOut,
            (false, true) => CycleType::OutIn,
            (false, false) => CycleType::OutOut,
        })
    }

    /// Type of a regular alternating cycle from the four properties.
    fn cycle_type(&self, i: usize, j: usize) -> Option<CycleType> {
        let (p1, p2) = (self.pairs[i], self.pairs[j]);
        let poset = self.inst.poset();
        if !self.regular[i].contains(j) || !poset.leq(p1.a, p2.b) || !poset.leq(p2.a, p1.b) {
            return None;
        }
        let pr = self.props[i][j];
        match (pr.r12, pr.r21, pr.l12, pr.l21) {
            (true, false, true, false) => Some(CycleType::InIn),
            (true, false, false, true) => Some(CycleType::InOut),
            (false, true, true, false) => Some(CycleType::OutIn),
            (false, true, false, true) => Some(CycleType::OutOut),
            _ => None,
        }
    }

    /// Builds one auxiliary digraph.
    pub fn digraph(&self, kind: AuxKind) -> AuxDigraph {
        let np = self.pairs.len();
        let poset = self.inst.poset();
        let left = |x: usize, y: usize| self.inst.left_of(x, y);
        let is_type = |i: usize, j: usize, t: CycleType| self.cycle_type(i, j) == Some(t);
        let mut edges = Vec::new();
        for i in 0..np {
            for j in self.regular[i].ones() {
                let (p1, p2) = (self.pairs[i], self.pairs[j]);
                let (ai, aj) = (self.a_index[p1.a], self.a_index[p2.a]);
                let edge = |weight: Option<u8>, witness: Option<Witness>| AuxEdge { from: i, to: j, weight, witness };
                match kind {
                    AuxKind::OO => {
                        if is_type(i, j, CycleType::OutOut) {
                            edges.push(edge(None, None));
                        }
                    }
                    AuxKind::IIL => {
                        if is_type(i, j, CycleType::InIn) {
                            edges.push(edge(None, None));
                        } else if poset.incomparable(p1.a, p2.b) {
                            let t = self.by_a[aj].iter().copied().find(|&k| {
                                self.regular[i].contains(k) && is_type(i, k, CycleType::InIn) && left(self.pairs[k].b, p2.b)
                            });
                            if let Some(k) = t {
                                edges.push(edge(None, Some(Witness::T(self.pairs[k].b))));
                            }
                        }
                    }
                    AuxKind::IIR => {
                        if is_type(i, j, CycleType::InIn) {
                            edges.push(edge(None, None));
                        } else if poset.incomparable(p2.a, p1.b) {
                            let s = self.by_a[ai].iter().copied().find(|&k| {
                                self.regular[k].contains(j) && is_type(k, j, CycleType::InIn) && left(p1.b, self.pairs[k].b)
                            });
                            if let Some(k) = s {
                                edges.push(edge(None, Some(Witness::S(self.pairs[k].b))));
                            }
                        }
                    }
                    AuxKind::IILR => {
                        if poset.incomparable(p1.a, p2.b) && poset.incomparable(p2.a, p1.b) {
                            let mut found = None;
                            'outer: for &k in &self.by_a[ai] {
                                if !left(p1.b, self.pairs[k].b) {
                                    continue;
                                }
                                for &l in &self.by_a[aj] {
                                    if left(self.pairs[l].b, p2.b) && is_type(k, l, CycleType::InIn) {
                                        found = Some((self.pairs[k].b, self.pairs[l].b));
                                        break 'outer;
                                    }
                                }
                            }
                            if let Some((s, t)) = found {
                                edges.push(edge(None, Some(Witness::ST(s, t))));
                            }
                        }
                    }
                    AuxKind::IO => {
                        let pr = self.props[i][j];
                        if pr.r12 && pr.l21 {
                            if poset.lt(p1.a, p2.b) {
                                edges.push(edge(Some(1), None));
                            } else {
                                let t = self.by_a[aj].iter().copied().find(|&k| {
                                    is_type(i, k, CycleType::InOut) && left(self.pairs[k].b, p2.b)
                                });
                                match t {
                                    Some(k) if poset.incomparable(p1.a, p2.b) => {
                                        edges.push(edge(Some(1), Some(Witness::T(self.pairs[k].b))))
                                    }
                                    _ => edges.push(edge(Some(0), None)),
                                }
                            }
                        }
                    }
                    AuxKind::OI => {
                        let pr = self.props[i][j];
                        if pr.l12 && pr.r21 {
                            if poset.lt(p2.a, p1.b) {
                                edges.push(edge(Some(1), None));
                            } else {
                                let t = self.by_a[ai].iter().copied().find(|&k| {
                                    is_type(k, j, CycleType::OutIn) && left(p1.b, self.pairs[k].b)
                                });
                                match t {
                                    Some(k) if poset.incomparable(p2.a, p1.b) => {
                                        edges.push(edge(Some(1), Some(Witness::T(self.pairs[k].b))))
                                    }
                                    _ => edges.push(edge(Some(0), None)),
                                }
                            }
                        }
                    }
                }
            }
        }
        AuxDigraph { kind, vertices: self.pairs.clone(), edges }
    }

    /// Colours every pair by the six-tuple of longest-path values, with
    /// the weight coordinates taken modulo `modulus` when given.
    pub fn kappa_with_modulus(&self, modulus: Option<usize>) -> Result<(Vec<[usize; 6]>, Covering)> {
        let np = self.pairs.len();
        let oo = self.digraph(AuxKind::OO).max_path_from()?;
        let iil = self.digraph(AuxKind::IIL).max_path_from()?;
        let iir = self.digraph(AuxKind::IIR).max_path_from()?;
        let iilr = self.digraph(AuxKind::IILR).max_path_from()?;
        let io = self.digraph(AuxKind::IO).max_weight_from()?;
        let oi = self.digraph(AuxKind::OI).max_weight_to()?;
        let md = |x: usize| modulus.map_or(x, |m| x % m);
        let colors: Vec<[usize; 6]> =
            (0..np).map(|k| [oo[k], iil[k], iir[k], iilr[k], md(io[k]), md(oi[k])]).collect();
        let mut groups: BTreeMap<[usize; 6], Vec<Pair>> = BTreeMap::new();
        for (k, c) in colors.iter().enumerate() {
            groups.entry(*c).or_default().push(self.pairs[k]);
        }
        let mut cover = Covering::new();
        for (c, class) in groups {
            if let Some(cycle) = find_strict_alternating_cycle(self.inst.poset(), &class)? {
                return Err(Error::ColoringNotReversible(cycle));
            }
            cover.push(class, format!("kappa{c:?}"));
        }
        Ok((colors, cover))
    }
}

/// `Y(a)` and `Z(a)` in an instance.
pub fn z_sets_of(inst: &Instance, a: usize) -> ZData {
    let poset = inst.poset();
    let y: Vec<usize> = inst
        .b_elements()
        .iter()
        .copied()
        .filter(|&v| poset.lt(a, v) && !inst.in_shadow(a, v))
        .collect();
    let z = y
        .iter()
        .copied()
        .filter(|&v| poset.lower_covers(v).iter().any(|&w| poset.leq(a, w) && !inst.in_b(w)))
        .collect();
    ZData { a, y, z }
}

/// The least (or greatest) walk from the root that climbs inside `B` to an
/// element of `Z(a)` and descends along an exposed path to `a`. Returns the
/// walk and its peak.
fn extreme_walk(inst: &Instance, a: usize, z_set: &FixedBitSet, leftmost: bool) -> Result<(Vec<usize>, usize)> {
    let poset = inst.poset();
    let plane = inst.plane();
    let n = poset.n();
    let mut below_z = FixedBitSet::with_capacity(n);
    for z in z_set.ones() {
        below_z.union_with(poset.down_set(z));
    }
    let x0 = inst.x0();
    let mut path = vec![x0];
    let mut v = x0;
    let mut incoming = plane.anchor();
    let mut peak = NONE;
    while v != a || peak == NONE {
        let order = plane.u_ordering(v, incoming)?;
        let deg = order.len();
        let mut chosen = None;
        for k in 1..deg.max(1) {
            let d = if leftmost { order[k] } else { order[deg - k] };
            let w = plane.head(d);
            if w == NONE {
                continue;
            }
            let ok = if peak == NONE {
                (poset.lt(v, w) && inst.in_b(w) && below_z.contains(w))
                    || (z_set.contains(v) && poset.lt(w, v) && poset.leq(a, w) && !inst.in_b(w))
            } else {
                poset.lt(w, v) && poset.leq(a, w)
            };
            if ok {
                chosen = Some(d);
                break;
            }
        }
        let Some(d) = chosen else {
            return Err(Error::InvariantViolation(format!("no extreme walk for lower element {a}")));
        };
        let w = plane.head(d);
        if peak == NONE && poset.lt(w, v) {
            peak = v;
        }
        path.push(w);
        v = w;
        incoming = plane.twin(d);
    }
    Ok((path, peak))
}

/// The colouring of a maximal good instance, with `s` computed exactly
/// when the oracle can do it within its default limits.
pub fn kappa_coloring(mgi: &MaximalGoodInstance) -> Result<KappaColoring> {
    let inst = mgi.instance();
    let analysis = Analysis::new(mgi)?;
    let s = match se_exact(inst.poset(), inst.pairs(), SeOptions::default()) {
        Ok(r) if r.exact => Some(r.s),
        _ => None,
    };
    let modulus = s.map(|s| 2 * s * (2 * s + 6));
    let (colors, classes) = analysis.kappa_with_modulus(modulus)?;
    Ok(KappaColoring { colors, classes, modulus, s })
}

/// Upper bound on the number of colour classes for a given `s`.
pub fn kappa_class_bound(s: usize) -> u128 {
    let s = s as u128;
    16 * s.pow(6) * (s + 3).pow(2)
}
