//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use planedim::gen::plane_from_coords;
use planedim::instance::Instance;
use planedim::poset::{build_poset, Pair, Poset};

/// Every upward path from the root to `b`.
pub fn witnessing_paths(inst: &Instance, b: usize) -> Vec<Vec<usize>> {
    let p = inst.poset();
    let mut out = Vec::new();
    let mut stack = vec![vec![inst.x0()]];
    while let Some(path) = stack.pop() {
        let v = *path.last().unwrap();
        if v == b {
            out.push(path);
            continue;
        }
        for &w in p.upper_covers(v) {
            if p.leq(w, b) {
                let mut q = path.clone();
                q.push(w);
                stack.push(q);
            }
        }
    }
    out
}

/// The least and greatest witnessing paths under the root ordering.
pub fn extreme_paths(inst: &Instance, b: usize) -> (Vec<usize>, Vec<usize>) {
    let paths = witnessing_paths(inst, b);
    let mut min = paths[0].clone();
    let mut max = paths[0].clone();
    for q in &paths[1..] {
        if inst.compare_from_root(q, &min).is_left() {
            min = q.clone();
        }
        if inst.compare_from_root(q, &max).is_right() {
            max = q.clone();
        }
    }
    (min, max)
}

/// A chain of eight blocks drawn as a spiral: blocks 2, 4 and 7 enclose
/// everything above them and blocks 3 and 6 are single edges.
///
/// Returns the instance and the common points `z0..z8`.
pub fn spiral_instance() -> (Instance, Vec<usize>) {
    // z_i positions along the spiral, then the two side vertices of each
    // non-degenerate block.
    let z = [(0.0, 0.0), (2.0, 0.0), (20.0, 0.0), (18.0, 0.0), (4.0, 0.0), (8.0, 0.0), (9.0, 0.0), (16.0, 0.0), (12.0, 0.0)];
    let sides: [Option<[(f64, f64); 2]>; 8] = [
        Some([(1.0, 1.0), (1.0, -1.0)]),
        Some([(11.0, 10.0), (11.0, -10.0)]),
        None,
        Some([(11.0, 6.0), (11.0, -6.0)]),
        Some([(6.0, 1.0), (6.0, -1.0)]),
        None,
        Some([(12.5, 3.0), (12.5, -3.0)]),
        Some([(14.0, 1.0), (14.0, -1.0)]),
    ];
    let mut xy: Vec<(f64, f64)> = z.to_vec();
    let mut covers = Vec::new();
    for (i, s) in sides.iter().enumerate() {
        match s {
            None => covers.push((i, i + 1)),
            Some(mids) => {
                for &m in mids {
                    let id = xy.len();
                    xy.push(m);
                    covers.push((i, id));
                    covers.push((id, i + 1));
                }
            }
        }
    }
    let p = build_poset(xy.len(), &covers).unwrap();
    let plane = plane_from_coords(&p, &xy, 0, std::f64::consts::PI).unwrap();
    (Instance::new(p, plane, Vec::new()).unwrap(), (0..9).collect())
}

/// All incomparable pairs `(a, b)` with `b` above the root.
pub fn pairs_above_root(p: &Poset, x0: usize) -> Vec<Pair> {
    p.incomparable_pairs().into_iter().filter(|q| p.leq(x0, q.b)).collect()
}

/// Instances produced by unfolding and contracting seeded random planar
/// posets, together with Kelly and wheel instances on every pair above the root.
pub fn contracted_instances(seeds: std::ops::Range<u64>, n: usize) -> Vec<Instance> {
    use planedim::gen::{kelly, random_planar, wheel};
    use planedim::instance::{contract_to_instance, supported_split, unfold};
    let mut out = Vec::new();
    for k in 3..=4 {
        for g in [kelly(k).unwrap(), wheel(k).unwrap()] {
            let x0 = g.plane.as_ref().unwrap().x0();
            let pairs = pairs_above_root(&g.poset, x0);
            out.push(Instance::new(g.poset, g.plane.unwrap(), pairs).unwrap());
        }
    }
    for seed in seeds {
        let g = random_planar(n, seed).unwrap();
        let p = g.poset;
        if !p.is_connected() {
            continue;
        }
        let plane = g.plane.unwrap();
        let u = unfold(&p, p.minimal_elements()[0]).unwrap();
        let split = supported_split(&p, &p.incomparable_pairs(), &u).unwrap();
        for (&k, class) in split.from_above.iter().chain(split.from_below.iter()) {
            if k > 0 {
                out.push(contract_to_instance(&p, &plane, &u, k, class).unwrap().instance);
            }
        }
    }
    out
}

/// Maximal good instances reached through the good reduction of the
/// contracted instances.
pub fn maximal_good_instances(seeds: std::ops::Range<u64>, n: usize) -> Vec<planedim::goodinst::MaximalGoodInstance> {
    use planedim::goodinst::{good_reduction, maximalize};
    let mut out = Vec::new();
    for inst in contracted_instances(seeds, n) {
        let red = good_reduction(&inst).unwrap();
        for class in red.classes {
            if let Some(good) = &class.good {
                out.push(maximalize(good).unwrap());
            }
        }
    }
    out
}

/// Rooted random planar instances whose pairs have a maximal upper element.
pub fn top_pair_instances(seeds: std::ops::Range<u64>, n: usize) -> Vec<Instance> {
    use planedim::gen::random_rooted_planar;
    let mut out = Vec::new();
    for seed in seeds {
        let g = random_rooted_planar(n, seed).unwrap();
        let p = g.poset;
        let top = p.maximal_elements();
        let pairs: Vec<Pair> = p.incomparable_pairs().into_iter().filter(|q| top.contains(&q.b)).collect();
        out.push(Instance::new(p, g.plane.unwrap(), pairs).unwrap());
    }
    out
}

/// Maximal good instances reached from the rooted top-pair instances.
pub fn top_pair_good_instances(seeds: std::ops::Range<u64>, n: usize) -> Vec<planedim::goodinst::MaximalGoodInstance> {
    use planedim::goodinst::{good_reduction, maximalize};
    let mut out = Vec::new();
    for inst in top_pair_instances(seeds, n) {
        for class in good_reduction(&inst).unwrap().classes {
            if let Some(good) = &class.good {
                out.push(maximalize(good).unwrap());
            }
        }
    }
    out
}

/// Wheel instances on a seeded random subset of the pairs above the root.
/// Seed 0 keeps every pair.
pub fn wheel_subset_instance(k: usize, seed: u64) -> Instance {
    use planedim::gen::wheel;
    use rand::{Rng, SeedableRng};
    let g = wheel(k).unwrap();
    let x0 = g.plane.as_ref().unwrap().x0();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let prob = if seed == 0 { 1.0 } else { rng.gen_range(0.2..0.9) };
    let pairs: Vec<Pair> = pairs_above_root(&g.poset, x0).into_iter().filter(|_| rng.gen_bool(prob)).collect();
    Instance::new(g.poset, g.plane.unwrap(), pairs).unwrap()
}

/// Maximal good instances from the good reduction of wheel subset instances.
pub fn wheel_good_instances(sizes: std::ops::RangeInclusive<usize>, seeds: std::ops::Range<u64>) -> Vec<planedim::goodinst::MaximalGoodInstance> {
    use planedim::goodinst::{good_reduction, maximalize};
    let mut out = Vec::new();
    for k in sizes {
        for seed in seeds.clone() {
            let inst = wheel_subset_instance(k, seed);
            for class in good_reduction(&inst).unwrap().classes {
                if let Some(good) = &class.good {
                    out.push(maximalize(good).unwrap());
                }
            }
        }
    }
    out
}

/// A seeded perturbation of a Kelly poset or wheel with a random subset of
/// its pairs above the root.
pub fn perturbed_instance(kelly: bool, k: usize, seed: u64) -> Instance {
    use planedim::gen::{perturb, wheel};
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let base = if kelly { planedim::gen::kelly(k).unwrap() } else { wheel(k).unwrap() };
    let g = perturb(&base, rng.gen_range(0.0..0.2), rng.gen_range(0.0..0.4), seed).unwrap();
    let x0 = g.plane.as_ref().unwrap().x0();
    let prob = rng.gen_range(0.2..1.0);
    let pairs: Vec<Pair> = pairs_above_root(&g.poset, x0).into_iter().filter(|_| rng.gen_bool(prob)).collect();
    Instance::new(g.poset, g.plane.unwrap(), pairs).unwrap()
}

/// Maximal good instances from the good reduction of perturbed Kelly posets
/// and wheels of the given orders.
pub fn perturbed_good_instances(sizes: std::ops::RangeInclusive<usize>, seeds: std::ops::Range<u64>) -> Vec<planedim::goodinst::MaximalGoodInstance> {
    use planedim::goodinst::{good_reduction, maximalize};
    let mut out = Vec::new();
    for kelly in [true, false] {
        for k in sizes.clone() {
            for seed in seeds.clone() {
                let inst = perturbed_instance(kelly, k, seed);
                for class in good_reduction(&inst).unwrap().classes {
                    if let Some(good) = &class.good {
                        out.push(maximalize(good).unwrap());
                    }
                }
            }
        }
    }
    out
}

/// Strict alternating cycles of length 2 to `max_len` inside `pairs`, each
/// listed once starting from its least pair.
pub fn strict_cycles(inst: &Instance, pairs: &[Pair], max_len: usize) -> Vec<Vec<Pair>> {
    let p = inst.poset();
    let m = pairs.len();
    // reach[i][j]: a_i <= b_j.
    let reach: Vec<Vec<bool>> = pairs.iter().map(|x| pairs.iter().map(|y| p.leq(x.a, y.b)).collect()).collect();
    let succ: Vec<Vec<usize>> = (0..m).map(|i| (0..m).filter(|&j| j != i && reach[i][j]).collect()).collect();
    struct Search<'a> {
        reach: &'a [Vec<bool>],
        succ: &'a [Vec<usize>],
        max_len: usize,
        cur: Vec<usize>,
        out: Vec<Vec<usize>>,
    }
    impl Search<'_> {
        // In a strict cycle only consecutive pairs and the closing step are
        // comparable, so every prefix is checked as it grows.
        fn go(&mut self) {
            let k = self.cur.len();
            let last = self.cur[k - 1];
            if k >= 2 && self.reach[last][self.cur[0]] {
                self.out.push(self.cur.clone());
            }
            if k == self.max_len {
                return;
            }
            for idx in 0..self.succ[last].len() {
                let q = self.succ[last][idx];
                if q <= self.cur[0] || self.cur.contains(&q) {
                    continue;
                }
                let blocked = (0..k - 1).any(|i| self.reach[self.cur[i]][q]) || (1..k).any(|j| self.reach[q][self.cur[j]]);
                if !blocked {
                    self.cur.push(q);
                    self.go();
                    self.cur.pop();
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| pairs[i]);
    let mut rank = vec![0; m];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    // Work in rank order so "least pair first" is the index order.
    let reach_r: Vec<Vec<bool>> = (0..m).map(|i| (0..m).map(|j| reach[order[i]][order[j]]).collect()).collect();
    let succ_r: Vec<Vec<usize>> = (0..m).map(|i| succ[order[i]].iter().map(|&j| rank[j]).collect()).collect();
    let mut search = Search { reach: &reach_r, succ: &succ_r, max_len, cur: Vec::new(), out: Vec::new() };
    for start in 0..m {
        search.cur = vec![start];
        search.go();
    }
    search
        .out
        .into_iter()
        .map(|c| c.into_iter().map(|r| pairs[order[r]]).collect::<Vec<Pair>>())
        .filter(|c| planedim::poset::is_strict_cycle(p, c))
        .collect()
}
