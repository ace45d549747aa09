//! Deterministic generators for standard examples, Kelly posets, wheels,
//! chains, antichains, forests and random planar posets.
//!
//! Every generator that can draw its poset in the plane also returns a
//! validated [`PlaneGraph`]. Geometric families are laid out with explicit
//! coordinates and the rotation system is read off by sorting neighbours by
//! angle. Random planar posets are grown as stacked triangulations whose
//! rotation system is maintained combinatorially.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embed::{Anchor, PlaneGraph};
use crate::error::{Error, Result};
use crate::poset::{build_poset, Poset};

/// Generator families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Standard,
    Kelly,
    Wheel,
    Chain,
    Antichain,
    Forest,
    RandomPlanar,
    RootedPlanar,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "standard" => Family::Standard,
            "kelly" => Family::Kelly,
            "wheel" => Family::Wheel,
            "chain" => Family::Chain,
            "antichain" => Family::Antichain,
            "forest" => Family::Forest,
            "random-planar" | "randomplanar" | "random_planar" => Family::RandomPlanar,
            "rooted-planar" | "rootedplanar" | "rooted_planar" => Family::RootedPlanar,
            other => return Err(Error::BadParameter(format!("unknown family {other}"))),
        })
    }
}

/// A generated poset with its drawing, if it has one, and element labels.
#[derive(Clone, Debug)]
pub struct Generated {
    pub poset: Poset,
    pub plane: Option<PlaneGraph>,
    pub labels: Vec<String>,
}

/// Generates a member of `family` with parameter `n`. Only the random
/// families read `seed`.
pub fn generate(family: Family, n: usize, seed: u64) -> Result<Generated> {
    match family {
        Family::Standard => standard(n),
        Family::Kelly => kelly(n),
        Family::Wheel => wheel(n),
        Family::Chain => chain(n),
        Family::Antichain => antichain(n),
        Family::Forest => forest(n, seed),
        Family::RandomPlanar => random_planar(n, seed),
        Family::RootedPlanar => random_rooted_planar(n, seed),
    }
}

/// Reads a rotation system off a straight-line drawing. The anchor leaves
/// `x0` in direction `anchor_angle` (radians).
pub fn plane_from_coords(
    poset: &Poset,
    coords: &[(f64, f64)],
    x0: usize,
    anchor_angle: f64,
) -> Result<PlaneGraph> {
    let n = poset.n();
    let mut nbrs = vec![Vec::new(); n];
    for &(u, v) in poset.covers() {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let angle = |v: usize, w: usize| {
        let (dx, dy) = (coords[w].0 - coords[v].0, coords[w].1 - coords[v].1);
        dy.atan2(dx)
    };
    let mut rotation = Vec::with_capacity(n);
    for v in 0..n {
        let mut list = nbrs[v].clone();
        // Clockwise means decreasing angle.
        list.sort_by(|&p, &q| angle(v, q).total_cmp(&angle(v, p)));
        rotation.push(list);
    }
    let after = if rotation[x0].is_empty() {
        None
    } else {
        // The anchor comes right after the neighbour with the least angle
        // above `anchor_angle`, cyclically.
        let norm = |t: f64| (t - anchor_angle).rem_euclid(std::f64::consts::TAU);
        rotation[x0].iter().copied().min_by(|&p, &q| norm(angle(x0, p)).total_cmp(&norm(angle(x0, q))))
    };
    PlaneGraph::new(n, poset.covers(), &rotation, Anchor { vertex: x0, after }, None)
}

fn polar(angle_deg: f64, r: f64) -> (f64, f64) {
    let t = angle_deg.to_radians();
    (r * t.cos(), r * t.sin())
}

/// Anchors at `x0` in the sector right after its first neighbour.
fn anchor_first(poset: &Poset, rotation: &[Vec<usize>], x0: usize) -> Result<PlaneGraph> {
    let after = rotation[x0].first().copied();
    PlaneGraph::new(poset.n(), poset.covers(), rotation, Anchor { vertex: x0, after }, None)
}

/// The standard example `S_n`: `a_i = i`, `b_i = n + i`, `a_i < b_j` for
/// `i != j`. Drawings are emitted for `n <= 4` (two edges, a hexagon, the cube).
pub fn standard(n: usize) -> Result<Generated> {
    if n < 2 {
        return Err(Error::BadParameter("standard example needs n >= 2".into()));
    }
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                covers.push((i, n + j));
            }
        }
    }
    let poset = build_poset(2 * n, &covers)?;
    let labels = (0..n).map(|i| format!("a{}", i + 1)).chain((0..n).map(|i| format!("b{}", i + 1))).collect();
    let plane = match n {
        2 => {
            let coords = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
            Some(plane_from_coords(&poset, &coords, 0, -std::f64::consts::FRAC_PI_2)?)
        }
        3 => {
            // Hexagon a1 b2 a3 b1 a2 b3.
            let cycle = [0, 4, 2, 3, 1, 5];
            let mut coords = vec![(0.0, 0.0); 6];
            for (k, &v) in cycle.iter().enumerate() {
                coords[v] = polar(270.0 + 60.0 * k as f64, 1.0);
            }
            Some(plane_from_coords(&poset, &coords, 0, -std::f64::consts::FRAC_PI_2)?)
        }
        4 => {
            // The cover graph is the cube: a_i and b_i are antipodal corners.
            let bits: [usize; 8] = [0b000, 0b011, 0b101, 0b110, 0b111, 0b100, 0b010, 0b001];
            let square = |b: usize| match b & 0b011 {
                0b00 => (-1.0, -1.0),
                0b01 => (1.0, -1.0),
                0b11 => (1.0, 1.0),
                _ => (-1.0, 1.0),
            };
            let coords: Vec<(f64, f64)> = bits
                .iter()
                .map(|&b| {
                    let (x, y) = square(b);
                    let s = if b & 0b100 == 0 { 2.0 } else { 1.0 };
                    (x * s, y * s)
                })
                .collect();
            Some(plane_from_coords(&poset, &coords, 0, -3.0 * std::f64::consts::FRAC_PI_4)?)
        }
        _ => None,
    };
    Ok(Generated { poset, plane, labels })
}

/// The Kelly poset of order `n >= 2`.
///
/// Elements `a_1..a_n`, `b_1..b_n`, `c_1..c_{n-1}`, `d_1..d_{n-1}` with
/// chains `c_1 < ... < c_{n-1}` and `d_{n-1} < ... < d_1`, and
/// `a_i < c_i`, `a_i < d_{i-1}`, `c_{j-1} < b_j`, `d_j < b_j`. Then
/// `a_i < b_j` exactly when `i != j`.
///
/// The drawing nests hexagons. Hexagon `k` runs through
/// `c_k, c_{k+1}, a_{k+1}, d_k, d_{k+1}, b_{k+1}` at angles `60 k` apart,
/// and hexagon `k + 1` sits inside it, touching at `c_{k+1}` and `d_{k+1}`:
///
/// ```text
///            a2 ---- c2
///           /   ____/  \
///   b1 -- d1   / H2  \  c1 -- a1
///           \  \_____/ /
///            d2 ---- b2
/// ```
///
/// The leaves `a_1`, `b_1` hang outside, `a_n`, `b_n` inside the innermost
/// hexagon. The root is `a_1` on the outer face.
pub fn kelly(n: usize) -> Result<Generated> {
    if n < 2 {
        return Err(Error::BadParameter("Kelly poset needs n >= 2".into()));
    }
    let a = |i: usize| i - 1;
    let b = |j: usize| n + j - 1;
    let c = |k: usize| 2 * n + k - 1;
    let d = |k: usize| 3 * n - 1 + k - 1;
    let total = 4 * n - 2;
    let mut covers = Vec::new();
    for i in 1..n {
        covers.push((a(i), c(i)));
    }
    for i in 2..=n {
        covers.push((a(i), d(i - 1)));
    }
    for k in 1..n - 1 {
        covers.push((c(k), c(k + 1)));
        covers.push((d(k + 1), d(k)));
    }
    for j in 2..=n {
        covers.push((c(j - 1), b(j)));
    }
    for j in 1..n {
        covers.push((d(j), b(j)));
    }
    let poset = build_poset(total, &covers)?;
    let mut coords = vec![(0.0, 0.0); total];
    let rho: f64 = 0.5;
    coords[c(1)] = polar(0.0, 1.0);
    coords[d(1)] = polar(180.0, 1.0);
    for k in 1..n - 1 {
        let phi = 60.0 * (k - 1) as f64;
        let r = rho.powi(k as i32);
        coords[c(k + 1)] = polar(phi + 60.0, r);
        coords[a(k + 1)] = polar(phi + 120.0, r);
        coords[d(k + 1)] = polar(phi + 240.0, r);
        coords[b(k + 1)] = polar(phi + 300.0, r);
    }
    coords[a(1)] = polar(0.0, 2.0);
    coords[b(1)] = polar(180.0, 2.0);
    let inner_phi = 60.0 * (n - 2) as f64;
    let inner_r = 0.3 * rho.powi(n as i32 - 2);
    coords[b(n)] = polar(inner_phi, inner_r);
    coords[a(n)] = polar(inner_phi + 180.0, inner_r);
    let plane = plane_from_coords(&poset, &coords, a(1), 0.0)?;
    let mut labels = Vec::with_capacity(total);
    labels.extend((1..=n).map(|i| format!("a{i}")));
    labels.extend((1..=n).map(|i| format!("b{i}")));
    labels.extend((1..n).map(|i| format!("c{i}")));
    labels.extend((1..n).map(|i| format!("d{i}")));
    Ok(Generated { poset, plane: Some(plane), labels })
}

/// The wheel of order `n >= 3`.
///
/// A hub `z` sits below spokes `a_1..a_n` at angles `360 i / n`. From each
/// `a_i` an arm `y_{i,i+1} < y_{i,i+2} < ... < y_{i,i-1}` spirals outward,
/// meeting ray `k` at radius `1 + p` with `p = (k - i) mod n`. Along ray `k`
/// the arm points are chained outward and end in `b_k`:
///
/// ```text
///   b_k
///    |
///   y(p = n-1)      arms enter ray k at increasing radii
///    |
///   ...
///    |
///   y(p = 1)
///        a_k        (a_k is not on its own ray chain)
///   z
/// ```
///
/// An arm leaving ray `k` at level `p` only reaches rays before the end of
/// its own arm, so `a_i < b_j` holds exactly for `i != j`. The order grows
/// away from the hub. The root is the hub, anchored between its first two
/// spokes.
pub fn wheel(n: usize) -> Result<Generated> {
    if n < 3 {
        return Err(Error::BadParameter("wheel needs n >= 3".into()));
    }
    let z = 0;
    let a = |i: usize| 1 + i;
    let b = |k: usize| 1 + n + k;
    let y = |i: usize, p: usize| 1 + 2 * n + i * (n - 1) + (p - 1);
    let total = 1 + 2 * n + n * (n - 1);
    let mut covers = Vec::new();
    for i in 0..n {
        covers.push((z, a(i)));
        covers.push((a(i), y(i, 1)));
        for p in 1..n - 1 {
            covers.push((y(i, p), y(i, p + 1)));
        }
    }
    for k in 0..n {
        // Arm i meets ray k at level p when i = k - p.
        let arm = |p: usize| (k + n - p) % n;
        for p in 1..n - 1 {
            covers.push((y(arm(p), p), y(arm(p + 1), p + 1)));
        }
        covers.push((y(arm(n - 1), n - 1), b(k)));
    }
    let poset = build_poset(total, &covers)?;
    let mut coords = vec![(0.0, 0.0); total];
    let step = 360.0 / n as f64;
    for i in 0..n {
        coords[a(i)] = polar(step * i as f64, 1.0);
        coords[b(i)] = polar(step * i as f64, (n + 1) as f64);
        for p in 1..n {
            coords[y(i, p)] = polar(step * ((i + p) % n) as f64, (1 + p) as f64);
        }
    }
    let plane = plane_from_coords(&poset, &coords, z, step / 2.0 * std::f64::consts::PI / 180.0)?;
    let mut labels = vec!["z".to_string()];
    labels.extend((1..=n).map(|i| format!("a{i}")));
    labels.extend((1..=n).map(|i| format!("b{i}")));
    for i in 1..=n {
        for p in 1..n {
            labels.push(format!("y{i}_{p}"));
        }
    }
    Ok(Generated { poset, plane: Some(plane), labels })
}

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Result<Generated> {
    if n == 0 {
        return Err(Error::BadParameter("chain needs n >= 1".into()));
    }
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let poset = build_poset(n, &covers)?;
    let rotation: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut r = Vec::new();
            if i + 1 < n {
                r.push(i + 1);
            }
            if i > 0 {
                r.push(i - 1);
            }
            r
        })
        .collect();
    let plane = anchor_first(&poset, &rotation, 0)?;
    Ok(Generated { poset, plane: Some(plane), labels: (0..n).map(|i| i.to_string()).collect() })
}

/// The antichain on `n` elements.
pub fn antichain(n: usize) -> Result<Generated> {
    if n == 0 {
        return Err(Error::BadParameter("antichain needs n >= 1".into()));
    }
    let poset = build_poset(n, &[])?;
    let plane = anchor_first(&poset, &vec![Vec::new(); n], 0)?;
    Ok(Generated { poset, plane: Some(plane), labels: (0..n).map(|i| i.to_string()).collect() })
}

/// A random forest poset on `n` elements. Each vertex after the first picks
/// a random earlier parent or, with probability 1/8, starts a new tree, and
/// every tree edge gets a random direction.
pub fn forest(n: usize, seed: u64) -> Result<Generated> {
    if n == 0 {
        return Err(Error::BadParameter("forest needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut covers = Vec::new();
    for v in 1..n {
        if rng.gen_bool(0.125) {
            continue;
        }
        let u = rng.gen_range(0..v);
        covers.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
    }
    let poset = build_poset(n, &covers)?;
    let mut rotation = vec![Vec::new(); n];
    for &(u, v) in &covers {
        rotation[u].push(v);
        rotation[v].push(u);
    }
    let x0 = poset.minimal_elements()[0];
    let plane = anchor_first(&poset, &rotation, x0)?;
    Ok(Generated { poset, plane: Some(plane), labels: (0..n).map(|i| i.to_string()).collect() })
}

/// A random planar poset on `n >= 3` elements.
///
/// Grows a stacked triangulation by inserting each new vertex into a
/// uniformly random inner face, orients every edge along a random vertex
/// order, and keeps the cover relation of the resulting order. The
/// rotation system of the triangulation restricted to the surviving edges
/// embeds the cover graph.
pub fn random_planar(n: usize, seed: u64) -> Result<Generated> {
    if n < 3 {
        return Err(Error::BadParameter("random planar poset needs n >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rot = stacked_triangulation(n, &mut rng);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    oriented(&rot, &order)
}

/// A random planar poset on `n >= 3` elements with least element `0`.
///
/// Same triangulation as [`random_planar`], but the vertex order is a
/// random search from vertex 0: each next vertex is drawn uniformly from
/// the unvisited neighbours of the visited ones, so every element except
/// 0 has a lower cover.
pub fn random_rooted_planar(n: usize, seed: u64) -> Result<Generated> {
    if n < 3 {
        return Err(Error::BadParameter("random planar poset needs n >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rot = stacked_triangulation(n, &mut rng);
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut order = vec![0];
    let mut frontier: Vec<usize> = Vec::new();
    let push = |v: usize, frontier: &mut Vec<usize>, seen: &mut Vec<bool>| {
        for &w in &rot[v] {
            if !seen[w] && !frontier.contains(&w) {
                frontier.push(w);
            }
        }
    };
    push(0, &mut frontier, &mut seen);
    while !frontier.is_empty() {
        let v = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        seen[v] = true;
        order.push(v);
        push(v, &mut frontier, &mut seen);
    }
    oriented(&rot, &order)
}

/// Clockwise neighbour lists of a random stacked triangulation.
fn stacked_triangulation(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    // Faces are counterclockwise triangles.
    let mut rot: Vec<Vec<usize>> = vec![vec![2, 1], vec![0, 2], vec![1, 0]];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    let insert_between = |list: &mut Vec<usize>, before: usize, v: usize| {
        let i = list.iter().position(|&w| w == before).expect("neighbour present");
        list.insert(i + 1, v);
    };
    for v in 3..n {
        let fi = rng.gen_range(0..faces.len());
        let [x, y, z] = faces[fi];
        insert_between(&mut rot[x], z, v);
        insert_between(&mut rot[y], x, v);
        insert_between(&mut rot[z], y, v);
        rot.push(vec![x, z, y]);
        faces[fi] = [x, y, v];
        faces.push([y, z, v]);
        faces.push([z, x, v]);
    }
    rot
}

/// Orients the triangulation along `order`, keeps the cover edges and
/// anchors at the least-id minimal element.
fn oriented(rot: &[Vec<usize>], order: &[usize]) -> Result<Generated> {
    let n = rot.len();
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    let mut relations = Vec::new();
    for (u, list) in rot.iter().enumerate() {
        for &w in list {
            if rank[u] < rank[w] {
                relations.push((u, w));
            }
        }
    }
    let poset = Poset::from_relations(n, &relations)?;
    let mut is_cover = std::collections::HashSet::new();
    for &(l, h) in poset.covers() {
        is_cover.insert((l, h));
        is_cover.insert((h, l));
    }
    let rotation: Vec<Vec<usize>> = rot
        .iter()
        .enumerate()
        .map(|(u, list)| list.iter().copied().filter(|&w| is_cover.contains(&(u, w))).collect())
        .collect();
    let x0 = poset.minimal_elements()[0];
    let plane = anchor_first(&poset, &rotation, x0)?;
    Ok(Generated { poset, plane: Some(plane), labels: (0..n).map(|i| i.to_string()).collect() })
}

/// A seeded perturbation of an embedded poset: every cover edge is deleted
/// with probability `delete` or else subdivided by a new element with
/// probability `subdivide`, and the result is restricted to the component
/// of the root. Deleting or subdividing a cover edge keeps the remaining
/// edges covers and keeps the embedding plane.
pub fn perturb(g: &Generated, delete: f64, subdivide: f64, seed: u64) -> Result<Generated> {
    if !(0.0..=1.0).contains(&delete) || !(0.0..=1.0).contains(&subdivide) {
        return Err(Error::BadParameter("probabilities must lie in [0, 1]".into()));
    }
    let plane = g.plane.as_ref().ok_or_else(|| Error::BadParameter("perturbation needs an embedding".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot = plane.neighbour_rotation();
    let mut labels = g.labels.clone();
    let mut covers = Vec::new();
    for &(lo, hi) in g.poset.covers() {
        if rng.gen_bool(delete) {
            rot[lo].retain(|&w| w != hi);
            rot[hi].retain(|&w| w != lo);
        } else if rng.gen_bool(subdivide) {
            let w = rot.len();
            rot.push(vec![lo, hi]);
            labels.push(format!("s{w}"));
            for (v, old) in [(lo, hi), (hi, lo)] {
                let slot = rot[v].iter().position(|&x| x == old).expect("cover edge in rotation");
                rot[v][slot] = w;
            }
            covers.push((lo, w));
            covers.push((w, hi));
        } else {
            covers.push((lo, hi));
        }
    }
    let x0 = plane.x0();
    let n = rot.len();
    let mut seen = vec![false; n];
    seen[x0] = true;
    let mut stack = vec![x0];
    while let Some(v) = stack.pop() {
        for &w in &rot[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| seen[v]).collect();
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        new_id[v] = i;
    }
    // The anchor keeps its sector: step back counterclockwise from the old
    // neighbour to the first one that survived.
    let old_rot = plane.neighbour_rotation();
    let after = plane.anchor_spec().after.and_then(|a| {
        let list = &old_rot[x0];
        let start = list.iter().position(|&w| w == a)?;
        (0..list.len()).map(|k| list[(start + list.len() - k) % list.len()]).find_map(|w| {
            let now = if rot[x0].contains(&w) {
                Some(w)
            } else {
                rot[x0].iter().copied().find(|&s| s >= g.poset.n() && rot[s].contains(&w))
            };
            now.map(|v| new_id[v])
        })
    });
    let covers: Vec<(usize, usize)> = covers
        .into_iter()
        .filter(|&(lo, _)| seen[lo])
        .map(|(lo, hi)| (new_id[lo], new_id[hi]))
        .collect();
    let rotation: Vec<Vec<usize>> = keep.iter().map(|&v| rot[v].iter().map(|&w| new_id[w]).collect()).collect();
    let poset = build_poset(keep.len(), &covers)?;
    let anchor = Anchor { vertex: new_id[x0], after };
    let plane = PlaneGraph::new(keep.len(), poset.covers(), &rotation, anchor, None)?;
    let labels = keep.iter().map(|&v| labels[v].clone()).collect();
    Ok(Generated { poset, plane: Some(plane), labels })
}
