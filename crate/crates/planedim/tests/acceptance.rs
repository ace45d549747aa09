//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed.
//! The process exits with status 1 if any criterion fails. Criterion
//! numbers given as arguments restrict the run to those criteria.

mod common;

use std::collections::HashMap;
use std::time::Instant;

use rayon::prelude::*;

use common::{extreme_paths, perturbed_instance, perturbed_good_instances, spiral_instance, strict_cycles, witnessing_paths};
use planedim::auxgraph::{Analysis, AuxKind};
use planedim::embed::{Anchor, PlaneGraph};
use planedim::gen::{
    chain, forest, generate, kelly, random_planar, random_rooted_planar, standard, wheel, Family, Generated,
};
use planedim::goodinst::{escape_address, good_reduction, is_risky};
use planedim::instance::{Instance, ShadowLocation};
use planedim::io::{covering_value, parse_poset, write_poset, write_realizer};
use planedim::pipeline::{realize_planar_full, realizer_bound, PipelineOptions};
use planedim::poset::{
    build_poset, dim_exact, find_strict_alternating_cycle, incomparable_pairs, se_exact, verify_realizer, DimOptions,
    Pair, SeOptions,
};
use planedim::Error;

type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: planedim::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{}: {e}", e.kind()))
}

fn exact_dimension() -> Outcome {
    let mut times = Vec::new();
    for n in 2..=5 {
        let s = lib(standard(n))?.poset;
        let t = Instant::now();
        let d = lib(dim_exact(&s, &incomparable_pairs(&s), DimOptions::default()))?.d;
        let secs = t.elapsed().as_secs_f64();
        ensure(d == n, || format!("dim(S_{n}) = {d}"))?;
        ensure(secs < 10.0, || format!("dim(S_{n}) took {secs:.2} s"))?;
        times.push(format!("S_{n} {secs:.3}s"));
    }
    Ok(format!("dim(S_n) = n for n = 2..5; {}", times.join(", ")))
}

fn standard_example_number() -> Outcome {
    for n in 2..=6 {
        let s = lib(standard(n))?.poset;
        let r = lib(se_exact(&s, &incomparable_pairs(&s), SeOptions::default()))?;
        ensure(r.s == n && r.exact, || format!("se(S_{n}) = {} (exact {})", r.s, r.exact))?;
    }
    let k = lib(kelly(6))?.poset;
    let rk = lib(se_exact(&k, &incomparable_pairs(&k), SeOptions::default()))?;
    ensure(rk.s >= 6, || format!("se(Kelly_6) = {}", rk.s))?;
    let c = lib(chain(7))?.poset;
    let rc = lib(se_exact(&c, &incomparable_pairs(&c), SeOptions::default()))?;
    ensure(rc.s == 1, || format!("se(chain) = {}", rc.s))?;
    Ok(format!("se(S_n) = n for n = 2..6, se(Kelly_6) = {} (exact {}), se(chain_7) = 1", rk.s, rk.exact))
}

fn disjoint_chains() -> Outcome {
    let p = lib(build_poset(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]))?;
    let d = lib(dim_exact(&p, &incomparable_pairs(&p), DimOptions::default()))?.d;
    ensure(d == 2, || format!("dim = {d}"))?;
    Ok("dim(two disjoint 3-chains) = 2".into())
}

fn forests() -> Outcome {
    let dims: Vec<(usize, usize)> = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let n = 5 + (seed as usize * 7) % 36;
            let p = lib(forest(n, seed))?.poset;
            // Forests up to 40 elements keep a few hundred critical pairs.
            let opts = DimOptions { cap: 1024, ..DimOptions::default() };
            let d = lib(dim_exact(&p, &incomparable_pairs(&p), opts))?.d;
            ensure(d <= 3, || format!("seed {seed}, n = {n}: dim = {d}"))?;
            Ok((n, d))
        })
        .collect::<Result<_, String>>()?;
    let largest = dims.iter().map(|&(n, _)| n).max().unwrap_or(0);
    let worst = dims.iter().map(|&(_, d)| d).max().unwrap_or(0);
    Ok(format!("50 forests up to {largest} elements, largest dimension {worst}"))
}

/// Realizes over all incomparable pairs and checks the result; returns the
/// realizer size and whether `s` was exact.
fn realize_checked(name: &str, g: &Generated) -> Result<(usize, bool), String> {
    let plane = g.plane.as_ref().ok_or_else(|| format!("{name}: no embedding"))?;
    let pairs = incomparable_pairs(&g.poset);
    let r = lib(realize_planar_full(&g.poset, &pairs, plane, &PipelineOptions::default())).map_err(|e| format!("{name}: {e}"))?;
    let check = verify_realizer(&g.poset, &r.realizer);
    ensure(check.ok, || format!("{name}: {}", check.message))?;
    let size = r.realizer.len();
    let bound = realizer_bound(r.report.s);
    ensure(size as u128 <= bound, || format!("{name}: size {size} > bound {bound} (s = {})", r.report.s))?;
    Ok((size, r.report.s_exact))
}

fn pipeline_soundness() -> Outcome {
    let t = Instant::now();
    let mut named: Vec<(String, Generated)> = Vec::new();
    for n in 3..=6 {
        named.push((format!("Kelly({n})"), lib(kelly(n))?));
        named.push((format!("Wheel({n})"), lib(wheel(n))?));
    }
    for seed in 0..100u64 {
        let n = 10 + (seed as usize % 20) * 10;
        named.push((format!("RandomPlanar({n}, seed {seed})"), lib(random_planar(n, seed))?));
    }
    let results: Vec<(usize, bool)> =
        named.par_iter().map(|(name, g)| realize_checked(name, g)).collect::<Result<_, String>>()?;
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 600.0, || format!("suite took {secs:.1} s"))?;
    let largest = results.iter().map(|r| r.0).max().unwrap_or(0);
    let inexact = results.iter().filter(|r| !r.1).count();
    Ok(format!(
        "{} posets verified within the bound, largest realizer {largest}, {inexact} with s a lower bound",
        results.len()
    ))
}

fn oracle_sandwich() -> Outcome {
    let counts: Vec<usize> = (0..200u64)
        .into_par_iter()
        .map(|seed| {
            let n = 3 + (seed as usize % 10);
            let g = match seed % 3 {
                0 => lib(random_planar(n, seed))?,
                1 => lib(random_rooted_planar(n, seed))?,
                _ => lib(forest(n, seed))?,
            };
            ensure(g.poset.n() <= 12, || format!("seed {seed}: {} elements", g.poset.n()))?;
            let plane = g.plane.as_ref().ok_or_else(|| format!("seed {seed}: no embedding"))?;
            let pairs = incomparable_pairs(&g.poset);
            let r = lib(realize_planar_full(&g.poset, &pairs, plane, &PipelineOptions::default()))?;
            ensure(verify_realizer(&g.poset, &r.realizer).ok, || format!("seed {seed}: not a realizer"))?;
            let d = lib(dim_exact(&g.poset, &pairs, DimOptions::default()))?.d;
            ensure(d <= r.realizer.len(), || format!("seed {seed}: dim {d} > size {}", r.realizer.len()))?;
            let mut classes = r.covering.classes.clone();
            for e in &r.realizer.extensions {
                let pos = e.positions(g.poset.n()).ok_or_else(|| format!("seed {seed}: bad extension"))?;
                classes.push(pairs.iter().copied().filter(|p| pos[p.b] < pos[p.a]).collect());
            }
            for class in &classes {
                let cycle = lib(find_strict_alternating_cycle(&g.poset, class))?;
                ensure(cycle.is_none(), || format!("seed {seed}: class contains {cycle:?}"))?;
            }
            Ok(classes.len())
        })
        .collect::<Result<_, String>>()?;
    Ok(format!("200 posets sandwiched, {} classes cycle-free", counts.iter().sum::<usize>()))
}

fn topology_oracles() -> Outcome {
    let mut checked = 0;
    let mut skipped = 0;
    for seed in 0..100u64 {
        let g = lib(random_planar(12 + (seed as usize % 4) * 6, seed))?;
        let inst = lib(Instance::new(g.poset, g.plane.expect("embedded"), Vec::new()))?;
        for &b in inst.b_elements() {
            if witnessing_paths(&inst, b).len() > 10_000 {
                skipped += 1;
                continue;
            }
            let (min, max) = extreme_paths(&inst, b);
            ensure(lib(inst.leftmost_path(b))? == min, || format!("seed {seed}: W_L({b}) differs"))?;
            ensure(lib(inst.rightmost_path(b))? == max, || format!("seed {seed}: W_R({b}) differs"))?;
            checked += 1;
        }
    }
    let (spiral, z) = spiral_instance();
    let s = spiral.shadow(z[8]);
    ensure(s.depth() == 3, || format!("spiral depth {}", s.depth()))?;
    ensure(s.reversing_elements() == vec![z[2], z[4], z[7]], || format!("reversing {:?}", s.reversing_elements()))?;
    Ok(format!("{checked} targets on 100 instances match enumeration ({skipped} over 10^4 paths skipped); spiral sd = 3, reversing z2 z4 z7"))
}

/// Parents with more risky pairs than this are not enumerated: their strict
/// 4-cycles run into the millions.
const RISKY_LIMIT: usize = 1000;

/// Strict cycles of at most four risky pairs of one parity have a common
/// address, and no upper element of the cycle lies in another's shadow.
/// Returns the number of cycles checked, or `None` above [`RISKY_LIMIT`].
fn uniform_addresses(inst: &Instance) -> Result<Option<usize>, String> {
    let risky: Vec<Pair> = inst.pairs().iter().copied().filter(|&p| is_risky(inst, p)).collect();
    if risky.len() > RISKY_LIMIT {
        return Ok(None);
    }
    let mut address = HashMap::new();
    for &p in &risky {
        address.insert(p, lib(escape_address(inst, p))?);
    }
    let mut cycles = 0;
    for cycle in strict_cycles(inst, &risky, 4) {
        let addrs: Vec<_> = cycle.iter().map(|p| address[p]).collect();
        if addrs.iter().any(|a| a.j % 2 != addrs[0].j % 2) {
            continue;
        }
        cycles += 1;
        ensure(addrs.iter().all(|a| *a == addrs[0]), || format!("cycle {cycle:?} has addresses {addrs:?}"))?;
        for x in &cycle {
            for y in &cycle {
                if x != y && inst.shadow(x.b).locate(y.b, addrs[0].j) != ShadowLocation::Outside {
                    return Err(format!("{} in shadow {} of {}", y.b, addrs[0].j, x.b));
                }
            }
        }
    }
    Ok(Some(cycles))
}

/// Every prefix of a brute-force extreme path is the extreme path to its end.
fn x0_consistent(inst: &Instance) -> Result<usize, String> {
    let mut extremes = HashMap::new();
    for &b in inst.b_elements() {
        if witnessing_paths(inst, b).len() <= 10_000 {
            extremes.insert(b, extreme_paths(inst, b));
        }
    }
    let mut checked = 0;
    for (min, max) in extremes.values() {
        for (path, pick) in [(min, 0), (max, 1)] {
            for (i, v) in path.iter().enumerate() {
                if let Some(e) = extremes.get(v) {
                    let want = if pick == 0 { &e.0 } else { &e.1 };
                    ensure(&path[..=i] == want.as_slice(), || format!("prefix of {path:?} at {v} is not extreme"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn structural_properties() -> Outcome {
    let (sizes, seeds) = (4..=7, 0..40u64);
    let goods = perturbed_good_instances(sizes.clone(), seeds.clone());
    ensure(goods.len() >= 100, || format!("only {} maximal good instances", goods.len()))?;

    let mut parents = Vec::new();
    for kelly in [true, false] {
        for k in sizes.clone() {
            for seed in seeds.clone() {
                parents.push((kelly, k, seed));
            }
        }
    }
    let per_parent: Vec<(usize, Option<usize>)> = parents
        .par_iter()
        .map(|&(kelly, k, seed)| {
            let inst = perturbed_instance(kelly, k, seed);
            let good = lib(good_reduction(&inst))?.classes.iter().filter(|c| c.good.is_some()).count();
            if good == 0 {
                return Ok((0, Some(0)));
            }
            Ok((good, uniform_addresses(&inst)?))
        })
        .collect::<Result<_, String>>()?;
    let covered: usize = per_parent.iter().map(|r| r.0).sum();
    ensure(covered == goods.len(), || format!("parents give {covered} good instances, expected {}", goods.len()))?;
    let enumerated: usize = per_parent.iter().filter(|r| r.1.is_some()).map(|r| r.0).sum();
    let cycles: usize = per_parent.iter().filter_map(|r| r.1).sum();
    ensure(enumerated >= 100, || format!("only {enumerated} good instances from fully enumerated parents"))?;
    ensure(cycles > 0, || "no strict risky cycles found".into())?;

    let stats: Vec<[usize; 3]> = goods
        .par_iter()
        .map(|m| {
            let inst = m.instance();
            let an = lib(Analysis::new(m))?;
            let s = lib(se_exact(inst.poset(), inst.pairs(), SeOptions::default()))?;
            ensure(s.exact, || "se not exact on a good instance".into())?;
            let mut nonempty = 0;
            for kind in [AuxKind::OO, AuxKind::IIL, AuxKind::IIR, AuxKind::IILR] {
                let h = an.digraph(kind);
                nonempty += usize::from(!h.edges.is_empty());
                let longest = lib(h.max_path())?;
                ensure(longest <= s.s, || format!("{}: max-path {longest} > s = {}", kind.name(), s.s))?;
            }
            let modulus = 2 * s.s * (2 * s.s + 6);
            let io = an.digraph(AuxKind::IO);
            let oi = an.digraph(AuxKind::OI);
            let from = lib(io.max_weight_from())?;
            let to = lib(oi.max_weight_to())?;
            let mut heavy = 0;
            for (h, f) in [(&io, &from), (&oi, &to)] {
                for e in h.edges.iter().filter(|e| e.weight == Some(1)) {
                    ensure(f[e.from] % modulus != f[e.to] % modulus, || format!("{} edge {e:?} not separated", h.kind.name()))?;
                    heavy += 1;
                }
            }
            let bs = inst.b_elements();
            for &x in bs {
                ensure(!inst.left_of(x, x), || format!("{x} left of itself"))?;
                for &y in bs.iter().filter(|&&y| inst.left_of(x, y)) {
                    for &w in bs.iter().filter(|&&w| inst.left_of(y, w)) {
                        ensure(inst.left_of(x, w), || format!("{x} < {y} < {w} but not {x} < {w}"))?;
                    }
                }
            }
            let prefixes = x0_consistent(inst)?;
            Ok([nonempty, heavy, prefixes])
        })
        .collect::<Result<_, String>>()?;
    let nonempty: usize = stats.iter().map(|s| s[0]).sum();
    let heavy: usize = stats.iter().map(|s| s[1]).sum();
    let prefixes: usize = stats.iter().map(|s| s[2]).sum();
    Ok(format!(
        "{} maximal good instances: {cycles} uniform risky cycles from the parents of {enumerated}, {nonempty} nonempty bounded graphs, \
         {heavy} weight-one edges separated, left-of transitive, {prefixes} prefixes consistent",
        goods.len()
    ))
}

fn embedding_validation() -> Outcome {
    let mut checked = 0;
    let families = [
        Family::Standard,
        Family::Kelly,
        Family::Wheel,
        Family::Chain,
        Family::Antichain,
        Family::Forest,
        Family::RandomPlanar,
        Family::RootedPlanar,
    ];
    for family in families {
        for n in [2, 3, 4, 5, 6, 12, 40] {
            for seed in 0..5 {
                let g = match generate(family, n, seed) {
                    Ok(g) => g,
                    Err(Error::BadParameter(_)) => continue,
                    Err(e) => return Err(format!("{family:?}({n}): {e}")),
                };
                let Some(plane) = &g.plane else { continue };
                // Each component with an edge contributes E - V + 2 faces.
                let mut faces = 0;
                for comp in g.poset.components() {
                    let edges = comp.iter().map(|&v| g.poset.upper_covers(v).len()).sum::<usize>();
                    if edges > 0 {
                        faces += edges + 2 - comp.len();
                    }
                }
                ensure(plane.faces().len() == faces, || {
                    format!("{family:?}({n}, seed {seed}): {} faces, Euler wants {faces}", plane.faces().len())
                })?;
                checked += 1;
            }
        }
    }
    let edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)];
    // K4 drawn with 3 inside the triangle 0 1 2; rotations are clockwise.
    let xy = [(0.0, 0.0), (4.0, 0.0), (2.0, 4.0), (2.0, 1.5)];
    let mut rot: Vec<Vec<usize>> = (0..4)
        .map(|v| {
            let mut nbrs: Vec<usize> = (0..4).filter(|&w| w != v).collect();
            let ang = |w: usize| f64::atan2(xy[w].1 - xy[v].1, xy[w].0 - xy[v].0);
            nbrs.sort_by(|&p, &q| ang(q).total_cmp(&ang(p)));
            nbrs
        })
        .collect();
    let anchor = Anchor { vertex: 0, after: Some(2) };
    let k4 = lib(PlaneGraph::new(4, &edges, &rot, anchor, None))?;
    ensure(k4.faces().len() == 4, || format!("K4 has {} faces", k4.faces().len()))?;
    rot[3].swap(0, 1);
    match PlaneGraph::new(4, &edges, &rot, anchor, None) {
        Err(Error::NonPlanarRotation { .. }) => {}
        other => return Err(format!("twisted K4 gave {:?}", other.map(|g| g.faces().len()))),
    }
    Ok(format!("{checked} generator embeddings satisfy Euler; twisted K4 rejected"))
}

/// The bytes `realize` writes: realizer, covering and report without timings.
fn realize_bytes(text: &str, parallel: bool) -> Result<String, String> {
    let input = lib(parse_poset(text))?;
    let plane = lib(input.require_plane("realize"))?;
    let opts = PipelineOptions { parallel, ..PipelineOptions::default() };
    let r = lib(realize_planar_full(&input.poset, &input.pairs_or_all(), plane, &opts))?;
    let mut report = serde_json::to_value(&r.report).map_err(|e| e.to_string())?;
    report.as_object_mut().ok_or("report is not an object")?.remove("timings_ms");
    Ok(format!("{}{}\n{}\n", write_realizer(&r.realizer), covering_value(&r.covering), serde_json::json!({ "report": report })))
}

fn determinism() -> Outcome {
    let g = lib(random_planar(120, 11))?;
    let text = write_poset(&g.poset, g.plane.as_ref(), None, None);
    let first = realize_bytes(&text, true)?;
    let second = realize_bytes(&text, true)?;
    let sequential = realize_bytes(&text, false)?;
    ensure(first == second, || "two parallel runs differ".into())?;
    ensure(first == sequential, || "parallel and sequential runs differ".into())?;
    Ok(format!("{} output bytes identical across three runs", first.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("exact dimension of S_n", exact_dimension),
        ("standard example number", standard_example_number),
        ("disjoint chains", disjoint_chains),
        ("forests", forests),
        ("pipeline soundness", pipeline_soundness),
        ("oracle sandwich", oracle_sandwich),
        ("topology oracles", topology_oracles),
        ("structural properties", structural_properties),
        ("embedding validation", embedding_validation),
        ("determinism", determinism),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        ran += 1;
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1} s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1} s]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {ran} criteria pass", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
