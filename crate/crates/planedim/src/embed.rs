//! Combinatorial plane embeddings of cover graphs.
//!
//! Every edge `e` has two darts, `2e` leaving its low end and `2e + 1`
//! leaving its high end. Each vertex lists its outgoing darts in clockwise
//! order. The root `x0` carries one extra dart, the anchor, which models the
//! curve from `x0` to infinity: it sits in the rotation at `x0` but has no
//! head, and face tracing steps over it.
//!
//! The face to the left of a dart `u -> v` continues with the dart that
//! follows `v -> u` clockwise at `v`. Bounded faces are therefore traced
//! counterclockwise.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Marker for a missing vertex or dart.
pub const NONE: usize = usize::MAX;

/// Where the anchor sits at the root: immediately clockwise after the dart
/// towards `after`, or alone when `after` is `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Anchor {
    pub vertex: usize,
    pub after: Option<usize>,
}

/// A face as the cyclic sequence of darts on its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<usize>,
}

/// Result of comparing two paths from a common base.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathOrder {
    /// The paths are identical.
    Equal,
    /// The first path is a proper prefix of the second.
    Prefix,
    /// The second path is a proper prefix of the first.
    Extension,
    /// The paths diverge at `divergence` and the first is left of the second.
    LeftOf { divergence: usize },
    /// The paths diverge at `divergence` and the first is right of the second.
    RightOf { divergence: usize },
}

impl PathOrder {
    pub fn is_left(self) -> bool {
        matches!(self, PathOrder::LeftOf { .. })
    }

    pub fn is_right(self) -> bool {
        matches!(self, PathOrder::RightOf { .. })
    }

    /// True when the paths are related by prefix or equal.
    pub fn is_subpath(self) -> bool {
        matches!(self, PathOrder::Equal | PathOrder::Prefix | PathOrder::Extension)
    }

    /// The common vertex where the paths part, if they do.
    pub fn divergence(self) -> Option<usize> {
        match self {
            PathOrder::LeftOf { divergence } | PathOrder::RightOf { divergence } => Some(divergence),
            _ => None,
        }
    }
}

/// A rotation system of a simple planar graph with an anchor at the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    tail: Vec<usize>,
    head: Vec<usize>,
    rotation: Vec<Vec<usize>>,
    pos: Vec<usize>,
    x0: usize,
    anchor_after: Option<usize>,
    faces: Vec<Face>,
    face_of: Vec<usize>,
    component: Vec<usize>,
    component_outer: Vec<usize>,
    outer: usize,
}

/// Validates a rotation system for the cover graph of `poset`.
///
/// `rotation[v]` lists the neighbours of `v` clockwise. `outer_face_hint`,
/// when given, is a boundary walk of the face that must contain the anchor.
pub fn build_plane_graph(
    poset: &Poset,
    rotation: &[Vec<usize>],
    anchor: Anchor,
    outer_face_hint: Option<&[usize]>,
) -> Result<PlaneGraph> {
    PlaneGraph::new(poset.n(), poset.covers(), rotation, anchor, outer_face_hint)
}

impl PlaneGraph {
    /// Builds and validates a plane graph on `0..n` with the given edges.
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        rotation: &[Vec<usize>],
        anchor: Anchor,
        outer_face_hint: Option<&[usize]>,
    ) -> Result<PlaneGraph> {
        if rotation.len() != n {
            return Err(Error::RotationMismatch(format!(
                "{} rotation lists for {} vertices",
                rotation.len(),
                n
            )));
        }
        if anchor.vertex >= n {
            return Err(Error::OutOfRange(anchor.vertex, n));
        }
        let m = edges.len();
        let mut tail = vec![NONE; 2 * m + 1];
        let mut head = vec![NONE; 2 * m + 1];
        let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::OutOfRange(u.max(v), n));
            }
            tail[2 * e] = u;
            head[2 * e] = v;
            tail[2 * e + 1] = v;
            head[2 * e + 1] = u;
            incident[u].push((v, 2 * e));
            incident[v].push((u, 2 * e + 1));
        }
        let anchor_dart = 2 * m;
        tail[anchor_dart] = anchor.vertex;
        let mut rot = vec![Vec::new(); n];
        for v in 0..n {
            if rotation[v].len() != incident[v].len() {
                return Err(Error::RotationMismatch(format!(
                    "vertex {v} has degree {} but rotation lists {}",
                    incident[v].len(),
                    rotation[v].len()
                )));
            }
            for &w in &rotation[v] {
                let Some(&(_, d)) = incident[v].iter().find(|&&(x, _)| x == w) else {
                    return Err(Error::RotationMismatch(format!("{v} -- {w} is not an edge")));
                };
                if rot[v].contains(&d) {
                    return Err(Error::RotationMismatch(format!("{w} listed twice at {v}")));
                }
                rot[v].push(d);
            }
        }
        // Insert the anchor.
        let x0 = anchor.vertex;
        match anchor.after {
            None => {
                if !rot[x0].is_empty() {
                    return Err(Error::RotationMismatch(format!(
                        "anchor at {x0} needs a neighbour to follow"
                    )));
                }
                rot[x0].push(anchor_dart);
            }
            Some(w) => {
                let Some(i) = rot[x0].iter().position(|&d| head[d] == w) else {
                    return Err(Error::RotationMismatch(format!("anchor neighbour {w} not at {x0}")));
                };
                rot[x0].insert(i + 1, anchor_dart);
            }
        }
        let mut pos = vec![0; 2 * m + 1];
        for list in &rot {
            for (i, &d) in list.iter().enumerate() {
                pos[d] = i;
            }
        }
        let mut g = PlaneGraph {
            n,
            edges: edges.to_vec(),
            tail,
            head,
            rotation: rot,
            pos,
            x0,
            anchor_after: anchor.after,
            faces: Vec::new(),
            face_of: vec![NONE; 2 * m],
            component: vec![NONE; n],
            component_outer: Vec::new(),
            outer: NONE,
        };
        g.trace_faces();
        g.compute_components();
        g.check_euler()?;
        g.resolve_outer(outer_face_hint)?;
        Ok(g)
    }

    fn trace_faces(&mut self) {
        let m2 = self.edges.len() * 2;
        for start in 0..m2 {
            if self.face_of[start] != NONE {
                continue;
            }
            let id = self.faces.len();
            let mut boundary = Vec::new();
            let mut d = start;
            loop {
                self.face_of[d] = id;
                boundary.push(d);
                d = self.face_next(d);
                if d == start {
                    break;
                }
            }
            self.faces.push(Face { boundary });
        }
    }

    fn compute_components(&mut self) {
        let mut count = 0;
        for s in 0..self.n {
            if self.component[s] != NONE {
                continue;
            }
            self.component[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &d in &self.rotation[v] {
                    let w = self.head[d];
                    if w != NONE && self.component[w] == NONE {
                        self.component[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        self.component_outer = vec![NONE; count];
    }

    fn check_euler(&self) -> Result<()> {
        let c = self.component_outer.len();
        let mut verts = vec![0i64; c];
        let mut edges = vec![0i64; c];
        let mut faces = vec![0i64; c];
        for v in 0..self.n {
            verts[self.component[v]] += 1;
        }
        for &(u, _) in &self.edges {
            edges[self.component[u]] += 1;
        }
        for f in &self.faces {
            faces[self.component[self.tail[f.boundary[0]]]] += 1;
        }
        for k in 0..c {
            // A component without edges is a single vertex in one face.
            let f = if edges[k] == 0 { 1 } else { faces[k] };
            let euler = verts[k] - edges[k] + f;
            if euler != 2 {
                let vertex = (0..self.n).find(|&v| self.component[v] == k).unwrap_or(0);
                return Err(Error::NonPlanarRotation { vertex, euler });
            }
        }
        Ok(())
    }

    fn resolve_outer(&mut self, hint: Option<&[usize]>) -> Result<()> {
        // The anchor face holds the transition from `after -> x0` to the anchor.
        let anchor_face = match self.anchor_after {
            None => NONE,
            Some(w) => {
                let d = self.dart_between(self.x0, w).expect("anchor neighbour is adjacent");
                self.face_of[d ^ 1]
            }
        };
        if let Some(walk) = hint {
            if self.anchor_after.is_some() {
                let matches = self.face_matches_walk(anchor_face, walk);
                if !matches {
                    return Err(Error::AnchorNotOnOuterFace);
                }
            } else if walk.len() > 1 || walk.first().is_some_and(|&v| v != self.x0) {
                return Err(Error::AnchorNotOnOuterFace);
            }
        }
        self.outer = anchor_face;
        let root_comp = self.component[self.x0];
        self.component_outer[root_comp] = anchor_face;
        // Components without the anchor take their longest face as the outer
        // one, ties going to the lowest face id.
        for k in 0..self.component_outer.len() {
            if k == root_comp {
                continue;
            }
            let best = (0..self.faces.len())
                .filter(|&f| self.component[self.tail[self.faces[f].boundary[0]]] == k)
                .max_by_key(|&f| (self.faces[f].boundary.len(), std::cmp::Reverse(f)));
            self.component_outer[k] = best.unwrap_or(NONE);
        }
        Ok(())
    }

    fn face_matches_walk(&self, face: usize, walk: &[usize]) -> bool {
        let verts: Vec<usize> = self.faces[face].boundary.iter().map(|&d| self.tail[d]).collect();
        if verts.len() != walk.len() {
            return false;
        }
        let k = verts.len();
        (0..k).any(|s| (0..k).all(|i| verts[(s + i) % k] == walk[i]))
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in input order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The root `x0`.
    pub fn x0(&self) -> usize {
        self.x0
    }

    /// The anchor dart.
    pub fn anchor(&self) -> usize {
        2 * self.edges.len()
    }

    /// The anchor placement as given at construction.
    pub fn anchor_spec(&self) -> Anchor {
        Anchor { vertex: self.x0, after: self.anchor_after }
    }

    /// Tail of a dart.
    pub fn tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    /// Head of a dart, or `NONE` for the anchor.
    pub fn head(&self, d: usize) -> usize {
        self.head[d]
    }

    /// The opposite dart of the same edge.
    pub fn twin(&self, d: usize) -> usize {
        d ^ 1
    }

    /// Edge carrying dart `d`.
    pub fn edge_of(&self, d: usize) -> usize {
        d / 2
    }

    /// Outgoing darts of `v` in clockwise order, the anchor included at `x0`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// Degree of `v` in the rotation, counting the anchor at `x0`.
    pub fn rotation_len(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Neighbour lists in clockwise order, without the anchor.
    pub fn neighbour_rotation(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|v| {
                self.rotation[v]
                    .iter()
                    .filter(|&&d| d != self.anchor())
                    .map(|&d| self.head[d])
                    .collect()
            })
            .collect()
    }

    /// The dart from `v` to `w`, if they are adjacent.
    pub fn dart_between(&self, v: usize, w: usize) -> Option<usize> {
        self.rotation[v].iter().copied().find(|&d| self.head[d] == w)
    }

    /// The dart following `d` clockwise around its tail, anchor included.
    pub fn next_cw(&self, d: usize) -> usize {
        let list = &self.rotation[self.tail[d]];
        list[(self.pos[d] + 1) % list.len()]
    }

    /// Face successor: skip the anchor when turning at the root.
    fn face_next(&self, d: usize) -> usize {
        let mut e = self.next_cw(d ^ 1);
        if e == self.anchor() {
            e = self.next_cw(e);
        }
        e
    }

    /// Position of dart `d` in the clockwise order at `u` that starts at `e0`.
    pub fn rank(&self, e0: usize, d: usize) -> usize {
        let deg = self.rotation[self.tail[e0]].len();
        debug_assert_eq!(self.tail[e0], self.tail[d]);
        (self.pos[d] + deg - self.pos[e0]) % deg
    }

    /// The darts at `u` in clockwise order starting with `e0`.
    pub fn u_ordering(&self, u: usize, e0: usize) -> Result<Vec<usize>> {
        if e0 >= self.tail.len() || self.tail[e0] != u {
            return Err(Error::DartNotAtVertex(e0, u));
        }
        let list = &self.rotation[u];
        let k = list.len();
        Ok((0..k).map(|i| list[(self.pos[e0] + i) % k]).collect())
    }

    /// Checks that `path` follows edges of the graph.
    pub fn check_path(&self, path: &[usize]) -> Result<()> {
        for w in path.windows(2) {
            if self.dart_between(w[0], w[1]).is_none() {
                return Err(Error::PathNotInGraph(format!("{} -- {} is not an edge", w[0], w[1])));
            }
        }
        Ok(())
    }

    /// Compares walks `u` and `v` that both start at `base.0`, where `base.1`
    /// is the dart at the start vertex that begins the ordering.
    ///
    /// At the last common vertex the ordering starts at the dart back along
    /// the shared prefix, or at `base.1` if the prefix is a single vertex.
    pub fn compare_paths(&self, base: (usize, usize), u: &[usize], v: &[usize]) -> Result<PathOrder> {
        self.check_path(u)?;
        self.check_path(v)?;
        if u.first() != Some(&base.0) || v.first() != Some(&base.0) {
            return Err(Error::PathNotInGraph("paths must start at the base vertex".into()));
        }
        Ok(self.compare_unchecked(base.1, u, v))
    }

    /// [`PlaneGraph::compare_paths`] without validation.
    pub fn compare_unchecked(&self, e0: usize, u: &[usize], v: &[usize]) -> PathOrder {
        let common = u.iter().zip(v).take_while(|(x, y)| x == y).count();
        if common == u.len() && common == v.len() {
            return PathOrder::Equal;
        }
        if common == u.len() {
            return PathOrder::Prefix;
        }
        if common == v.len() {
            return PathOrder::Extension;
        }
        let i = common - 1;
        let w = u[i];
        let start = if i == 0 { e0 } else { self.dart_between(w, u[i - 1]).expect("walk edge") };
        let du = self.dart_between(w, u[i + 1]).expect("walk edge");
        let dv = self.dart_between(w, v[i + 1]).expect("walk edge");
        if self.rank(start, du) < self.rank(start, dv) {
            PathOrder::LeftOf { divergence: w }
        } else {
            PathOrder::RightOf { divergence: w }
        }
    }

    /// All faces.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Face to the left of a real dart.
    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    /// Outer face of the root component (`NONE` if the root is isolated).
    pub fn outer_face(&self) -> usize {
        self.outer
    }

    /// Component id of a vertex.
    pub fn component(&self, v: usize) -> usize {
        self.component[v]
    }

    /// Outer face of the component containing `v`.
    pub fn component_outer(&self, v: usize) -> usize {
        self.component_outer[self.component[v]]
    }

    /// True if `v` lies on the outer face of its component.
    pub fn on_outer_face(&self, v: usize) -> bool {
        let f = self.component_outer(v);
        f == NONE || self.faces[f].boundary.iter().any(|&d| self.tail[d] == v)
    }

    /// Region bounded by the closed walk `cycle` (first vertex not repeated).
    pub fn region_of_cycle(&self, cycle: &[usize]) -> Result<RegionSet> {
        let k = cycle.len();
        if k < 3 {
            return Err(Error::NotSimpleCycle(format!("length {k}")));
        }
        let mut seen = FixedBitSet::with_capacity(self.n);
        for &v in cycle {
            if v >= self.n || seen.contains(v) {
                return Err(Error::NotSimpleCycle(format!("vertex {v} repeats")));
            }
            seen.insert(v);
        }
        let mut darts = Vec::with_capacity(k);
        for i in 0..k {
            let (v, w) = (cycle[i], cycle[(i + 1) % k]);
            match self.dart_between(v, w) {
                Some(d) => darts.push(d),
                None => return Err(Error::NotSimpleCycle(format!("{v} -- {w} is not an edge"))),
            }
        }
        let mut on_cycle = FixedBitSet::with_capacity(self.edges.len());
        for &d in &darts {
            on_cycle.insert(d / 2);
        }
        // Faces reachable from the outer face without crossing the cycle.
        let nf = self.faces.len();
        let mut outside = FixedBitSet::with_capacity(nf);
        let start = self.component_outer(cycle[0]);
        outside.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &d in &self.faces[f].boundary {
                if on_cycle.contains(d / 2) {
                    continue;
                }
                let g = self.face_of[d ^ 1];
                if !outside.contains(g) {
                    outside.insert(g);
                    queue.push_back(g);
                }
            }
        }
        let comp = self.component[cycle[0]];
        let mut inner_faces = FixedBitSet::with_capacity(nf);
        for f in 0..nf {
            if !outside.contains(f) && self.component[self.tail[self.faces[f].boundary[0]]] == comp {
                inner_faces.insert(f);
            }
        }
        let (boundary, boundary_darts) = if inner_faces.contains(self.face_of[darts[0]]) {
            (cycle.to_vec(), darts)
        } else {
            let mut rev: Vec<usize> = cycle.iter().rev().copied().collect();
            rev.rotate_right(1);
            let rd: Vec<usize> = (0..k).map(|i| self.dart_between(rev[i], rev[(i + 1) % k]).unwrap()).collect();
            (rev, rd)
        };
        let mut inner_vertices = FixedBitSet::with_capacity(self.n);
        let mut inner_edges = FixedBitSet::with_capacity(self.edges.len());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if on_cycle.contains(e) {
                continue;
            }
            if inner_faces.contains(self.face_of[2 * e]) {
                inner_edges.insert(e);
                for x in [u, v] {
                    if !seen.contains(x) {
                        inner_vertices.insert(x);
                    }
                }
            }
        }
        let mut boundary_pos = vec![NONE; self.n];
        for (i, &v) in boundary.iter().enumerate() {
            boundary_pos[v] = i;
        }
        Ok(RegionSet {
            boundary,
            boundary_darts,
            boundary_pos,
            inner_faces,
            inner_vertices,
            boundary_vertices: seen,
            inner_edges,
        })
    }

    /// True if dart `e` at boundary vertex `w` lies in the closed region.
    pub fn edge_in_region(&self, region: &RegionSet, w: usize, e: usize) -> Result<bool> {
        let i = region.boundary_pos.get(w).copied().unwrap_or(NONE);
        if i == NONE {
            return Err(Error::VertexNotOnBoundary(w));
        }
        if self.tail[e] != w {
            return Err(Error::DartNotAtVertex(e, w));
        }
        let k = region.boundary.len();
        let p = region.boundary[(i + k - 1) % k];
        let q = region.boundary[(i + 1) % k];
        let minus = self.dart_between(w, p).expect("boundary edge");
        let plus = self.dart_between(w, q).expect("boundary edge");
        Ok(self.rank(minus, e) <= self.rank(minus, plus))
    }
}

/// A closed region bounded by a simple cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionSet {
    /// Boundary vertices in counterclockwise order.
    pub boundary: Vec<usize>,
    /// Boundary darts in counterclockwise order.
    pub boundary_darts: Vec<usize>,
    boundary_pos: Vec<usize>,
    /// Faces inside the cycle.
    pub inner_faces: FixedBitSet,
    /// Vertices strictly inside.
    pub inner_vertices: FixedBitSet,
    /// Vertices on the cycle.
    pub boundary_vertices: FixedBitSet,
    /// Edges strictly inside.
    pub inner_edges: FixedBitSet,
}

impl RegionSet {
    /// True if `v` is in the closed region.
    pub fn contains(&self, v: usize) -> bool {
        self.inner_vertices.contains(v) || self.boundary_vertices.contains(v)
    }

    /// True if `v` is strictly inside.
    pub fn interior(&self, v: usize) -> bool {
        self.inner_vertices.contains(v)
    }

    /// True if `v` is on the boundary.
    pub fn on_boundary(&self, v: usize) -> bool {
        self.boundary_vertices.contains(v)
    }
}
