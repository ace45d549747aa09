//! Composition of coverings and the end-to-end realizer for posets with a
//! planar cover graph.
//!
//! The pipeline splits the pairs by connected component and then by the
//! layers of an unfolding, contracts every layer class into an instance,
//! reduces each instance to good sub-instances by address, colours their
//! maximal extensions and assembles the pieces back. Every merged class is
//! checked for strict alternating cycles, and the final family of linear
//! extensions is verified against the poset.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::auxgraph::Analysis;
use crate::embed::{PlaneGraph, NONE};
use crate::error::{Error, Result};
use crate::goodinst::{good_reduction, maximalize, AddressClass};
use crate::instance::{contract_to_instance, induced_plane, supported_split, unfold, Instance};
use crate::poset::{
    find_strict_alternating_cycle, is_reversible, normalize_pairs, reverse_set, se_exact, verify_realizer,
    Covering, Pair, Poset, Realizer, SeOptions,
};

/// How several coverings are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComposeMode {
    /// Classes of all parts, one after the other.
    Sum,
    /// Class `i` of the result is the union of the classes `i` of all parts.
    /// Callers must know that no strict alternating cycle meets two parts.
    MaxMerge,
    /// The first part followed by every class of the others, most often
    /// fixed reversible sets.
    AddSets,
}

/// Combines `parts` and checks every resulting class for a strict
/// alternating cycle in `poset`.
pub fn compose_coverings(poset: &Poset, mode: ComposeMode, parts: &[Covering]) -> Result<Covering> {
    let mut out = Covering::new();
    match mode {
        ComposeMode::Sum | ComposeMode::AddSets => {
            for part in parts {
                for (class, label) in part.classes.iter().zip(&part.provenance) {
                    out.push(class.clone(), label.clone());
                }
            }
        }
        ComposeMode::MaxMerge => {
            let width = parts.iter().map(Covering::len).max().unwrap_or(0);
            for i in 0..width {
                let mut class = Vec::new();
                let mut labels: Vec<&str> = Vec::new();
                for part in parts.iter().filter(|p| i < p.len()) {
                    class.extend_from_slice(&part.classes[i]);
                    if !part.classes[i].is_empty() && !labels.contains(&part.provenance[i].as_str()) {
                        labels.push(&part.provenance[i]);
                    }
                }
                normalize_pairs(&mut class);
                let label = match labels.len() {
                    0 => format!("merge#{i}"),
                    1 => labels[0].to_string(),
                    k => format!("merge#{i}({} +{})", labels[0], k - 1),
                };
                out.push(class, label);
            }
        }
    }
    for class in &out.classes {
        if let Some(cycle) = find_strict_alternating_cycle(poset, class)? {
            return Err(Error::MergeUnsound(cycle));
        }
    }
    Ok(out)
}

/// Size bound `64 s^6 (s+3)^2 + 12`.
pub fn realizer_bound(s: usize) -> u128 {
    let s = s as u128;
    64 * s.pow(6) * (s + 3).pow(2) + 12
}

/// Knobs of [`realize_planar`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOptions {
    /// Run independent branches on the rayon pool.
    pub parallel: bool,
    /// Limits for the standard-example oracle used in the bound.
    pub se: SeOptions,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { parallel: true, se: SeOptions::default() }
    }
}

/// Counters collected along the way.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageSizes {
    /// Components of the cover graph that carry pairs.
    pub components: usize,
    /// Non-empty layer classes of the unfoldings, over all components.
    pub unfolding_classes: usize,
    /// Contracted instances built.
    pub instances: usize,
    /// Address classes over all instances.
    pub address_classes: usize,
    /// Good sub-instances coloured.
    pub good_instances: usize,
    /// Pairs added by maximalization, summed.
    pub maximal_pairs_added: usize,
    /// Largest colouring on a single maximal good instance.
    pub max_kappa_classes: usize,
    /// Largest covering of a single contracted instance.
    pub max_instance_cover: usize,
    /// Largest covering of a single component.
    pub max_component_cover: usize,
    /// Size of the final covering.
    pub covering: usize,
}

impl StageSizes {
    fn absorb(&mut self, other: &StageSizes) {
        self.components += other.components;
        self.unfolding_classes += other.unfolding_classes;
        self.instances += other.instances;
        self.address_classes += other.address_classes;
        self.good_instances += other.good_instances;
        self.maximal_pairs_added += other.maximal_pairs_added;
        self.max_kappa_classes = self.max_kappa_classes.max(other.max_kappa_classes);
        self.max_instance_cover = self.max_instance_cover.max(other.max_instance_cover);
        self.max_component_cover = self.max_component_cover.max(other.max_component_cover);
    }
}

/// Summary of one run of [`realize_planar`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    /// Number of requested pairs.
    pub pairs: usize,
    /// Standard-example number used for the bound.
    pub s: usize,
    /// False when the oracle only produced a lower bound on `s`.
    pub s_exact: bool,
    /// The bound `64 s^6 (s+3)^2 + 12`.
    pub bound: u128,
    pub stages: StageSizes,
    /// Extensions that reverse a class of the covering.
    pub class_extensions: usize,
    /// True if a plain linear extension was appended.
    pub appended_extension: bool,
    /// Number of extensions in the realizer.
    pub realizer_size: usize,
    /// True if the pairs are all of `Inc(P)` and the realizer was checked
    /// to intersect to `P`; otherwise it was checked to reverse every pair.
    pub full_realizer: bool,
    /// Wall-clock time per stage in milliseconds. Not deterministic.
    pub timings_ms: Vec<(String, f64)>,
}

/// Output of [`realize_planar_full`].
#[derive(Clone, Debug)]
pub struct Realization {
    pub realizer: Realizer,
    /// The reversible sets behind the realizer, one per class extension.
    pub covering: Covering,
    pub report: PipelineReport,
}

/// A realizer for `pairs` in `poset` with its report. With every
/// incomparable pair requested the output realizes `poset`.
pub fn realize_planar(
    poset: &Poset,
    pairs: &[Pair],
    plane: &PlaneGraph,
    opts: &PipelineOptions,
) -> Result<(Realizer, PipelineReport)> {
    let r = realize_planar_full(poset, pairs, plane, opts)?;
    Ok((r.realizer, r.report))
}

/// Same as [`realize_planar`], also returning the covering.
pub fn realize_planar_full(
    poset: &Poset,
    pairs: &[Pair],
    plane: &PlaneGraph,
    opts: &PipelineOptions,
) -> Result<Realization> {
    let start = Instant::now();
    let mut timings = Vec::new();
    if plane.n() != poset.n() {
        return Err(Error::RotationMismatch(format!("{} vertices for {} elements", plane.n(), poset.n())));
    }
    poset.check_pairs(pairs)?;
    let mut pairs = pairs.to_vec();
    normalize_pairs(&mut pairs);
    let (covering, stages) = cover_pairs(poset, plane, &pairs, opts)?;
    timings.push(("covering".to_string(), start.elapsed().as_secs_f64() * 1e3));
    if !covering.covers(&pairs) {
        return Err(Error::InvariantViolation("covering misses requested pairs".into()));
    }

    let t = Instant::now();
    let mut extensions = Vec::with_capacity(covering.len() + 1);
    for class in &covering.classes {
        extensions.push(reverse_set(poset, class)?);
    }
    let class_extensions = extensions.len();
    let full = pairs.len() == poset.incomparable_pairs().len();
    let appended = !full || extensions.is_empty();
    if appended {
        extensions.push(poset.linear_extension());
    }
    let realizer = Realizer { extensions };
    if full {
        let check = verify_realizer(poset, &realizer);
        if !check.ok {
            return Err(Error::InvariantViolation(format!("realizer check failed: {}", check.message)));
        }
    } else {
        check_reverses(poset, &realizer, &pairs)?;
    }
    timings.push(("realizer".to_string(), t.elapsed().as_secs_f64() * 1e3));

    let t = Instant::now();
    let (s, s_exact) = se_for_bound(poset, &pairs, opts.se)?;
    let bound = realizer_bound(s);
    timings.push(("se".to_string(), t.elapsed().as_secs_f64() * 1e3));
    if class_extensions as u128 > bound {
        return Err(Error::BoundViolated(format!("{class_extensions} extensions exceed the bound {bound} for s = {s}")));
    }
    let mut stages = stages;
    stages.covering = covering.len();
    let report = PipelineReport {
        pairs: pairs.len(),
        s,
        s_exact,
        bound,
        stages,
        class_extensions,
        appended_extension: appended,
        realizer_size: realizer.len(),
        full_realizer: full,
        timings_ms: timings,
    };
    Ok(Realization { realizer, covering, report })
}

/// Runs [`realize_planar`] on every incomparable pair.
pub fn realize(poset: &Poset, plane: &PlaneGraph) -> Result<(Realizer, PipelineReport)> {
    realize_planar(poset, &poset.incomparable_pairs(), plane, &PipelineOptions::default())
}

/// Checks that every extension is linear and every pair is reversed by one.
fn check_reverses(poset: &Poset, realizer: &Realizer, pairs: &[Pair]) -> Result<()> {
    let n = poset.n();
    let mut positions = Vec::new();
    for ext in &realizer.extensions {
        let pos = ext
            .positions(n)
            .ok_or_else(|| Error::InvariantViolation("extension is not a permutation".into()))?;
        if poset.covers().iter().any(|&(lo, hi)| pos[lo] > pos[hi]) {
            return Err(Error::InvariantViolation("extension is not linear".into()));
        }
        positions.push(pos);
    }
    if let Some(p) = pairs.iter().find(|p| !positions.iter().any(|pos| pos[p.b] < pos[p.a])) {
        return Err(Error::InvariantViolation(format!("pair ({}, {}) is not reversed", p.a, p.b)));
    }
    Ok(())
}

/// `se` over the incomparable pairs between the lower and upper elements
/// of `pairs`. When the oracle gives up, its best lower bound is used,
/// which only makes the bound smaller.
pub fn se_for_bound(poset: &Poset, pairs: &[Pair], opts: SeOptions) -> Result<(usize, bool)> {
    if pairs.is_empty() {
        return Ok((0, true));
    }
    let n = poset.n();
    let mut lower = vec![false; n];
    let mut upper = vec![false; n];
    for p in pairs {
        lower[p.a] = true;
        upper[p.b] = true;
    }
    let span: Vec<Pair> = poset.incomparable_pairs().into_iter().filter(|p| lower[p.a] && upper[p.b]).collect();
    match se_exact(poset, &span, opts) {
        Ok(r) => Ok((r.s, r.exact)),
        Err(Error::CapExceeded { .. }) => {
            let relaxed = SeOptions { cap: usize::MAX, budget: opts.budget.min(200_000) };
            let r = se_exact(poset, &span, relaxed)?;
            Ok((r.s, false))
        }
        Err(e) => Err(e),
    }
}

/// A covering of `pairs` by reversible sets.
fn cover_pairs(poset: &Poset, plane: &PlaneGraph, pairs: &[Pair], opts: &PipelineOptions) -> Result<(Covering, StageSizes)> {
    let mut stages = StageSizes::default();
    if pairs.is_empty() {
        return Ok((Covering::new(), stages));
    }
    if is_reversible(poset, pairs) {
        stages.components = 1;
        return Ok((Covering::single(pairs.to_vec(), "reversible"), stages));
    }
    let comps = poset.components();
    if comps.len() == 1 {
        let (cover, st) = cover_connected(poset, plane, pairs, opts)?;
        stages.absorb(&st);
        stages.components = 1;
        stages.max_component_cover = cover.len();
        return Ok((cover, stages));
    }
    let mut comp_of = vec![NONE; poset.n()];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let mut inside = vec![Vec::new(); comps.len()];
    let mut cross = [Vec::new(), Vec::new()];
    for &p in pairs {
        let (ca, cb) = (comp_of[p.a], comp_of[p.b]);
        if ca == cb {
            inside[ca].push(p);
        } else {
            cross[usize::from(ca > cb)].push(p);
        }
    }
    let jobs: Vec<usize> = (0..comps.len()).filter(|&c| !inside[c].is_empty()).collect();
    let run = |&c: &usize| -> Result<(Covering, StageSizes)> {
        let members = &comps[c];
        let mut local = vec![NONE; poset.n()];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let root = members[0];
        let after = plane.neighbour_rotation()[root].first().copied();
        let (sub, sub_plane, origin) = induced_plane(poset, plane, members, root, after)?;
        let sub_pairs: Vec<Pair> = inside[c].iter().map(|p| Pair::new(local[p.a], local[p.b])).collect();
        let (cover, mut st) = if is_reversible(&sub, &sub_pairs) {
            (Covering::single(sub_pairs, "reversible"), StageSizes::default())
        } else {
            cover_connected(&sub, &sub_plane, &sub_pairs, opts)?
        };
        st.components = 1;
        st.max_component_cover = cover.len();
        Ok((lift_covering(&cover, |p| Pair::new(origin[p.a], origin[p.b]), &format!("component{c}")), st))
    };
    let results: Vec<Result<(Covering, StageSizes)>> =
        if opts.parallel { jobs.par_iter().map(run).collect() } else { jobs.iter().map(run).collect() };
    let mut parts = Vec::new();
    for r in results {
        let (cover, st) = r?;
        stages.absorb(&st);
        parts.push(cover);
    }
    if !cross[0].is_empty() || !cross[1].is_empty() {
        let mut c = Covering::new();
        c.push(std::mem::take(&mut cross[0]), "across components, lower first");
        c.push(std::mem::take(&mut cross[1]), "across components, upper first");
        parts.push(c);
    }
    let mut cover = compose_coverings(poset, ComposeMode::MaxMerge, &parts)?;
    cover.prune_empty();
    Ok((cover, stages))
}

/// Relabels the pairs of every class and prefixes the provenance.
fn lift_covering(cover: &Covering, map: impl Fn(Pair) -> Pair, prefix: &str) -> Covering {
    let mut out = Covering::new();
    for (class, label) in cover.classes.iter().zip(&cover.provenance) {
        let mut lifted: Vec<Pair> = class.iter().map(|&p| map(p)).collect();
        normalize_pairs(&mut lifted);
        out.push(lifted, format!("{prefix}/{label}"));
    }
    out
}

/// Covering of the pairs of a connected poset through an unfolding from
/// its least minimal element.
fn cover_connected(poset: &Poset, plane: &PlaneGraph, pairs: &[Pair], opts: &PipelineOptions) -> Result<(Covering, StageSizes)> {
    let z0 = poset.minimal_elements()[0];
    let unf = unfold(poset, z0)?;
    let split = supported_split(poset, pairs, &unf)?;
    let mut stages = StageSizes::default();
    let jobs: Vec<(bool, usize, &Vec<Pair>)> = split
        .from_above
        .iter()
        .map(|(&k, c)| (true, k, c))
        .chain(split.from_below.iter().map(|(&k, c)| (false, k, c)))
        .filter(|(_, _, c)| !c.is_empty())
        .collect();
    stages.unfolding_classes = jobs.len();
    let run = |&(above, k, class): &(bool, usize, &Vec<Pair>)| -> Result<(bool, Covering, StageSizes)> {
        let side = if above { "above" } else { "below" };
        if k == 0 {
            // Every pair here has the origin as its lower element.
            return Ok((above, Covering::single(class.clone(), format!("layer{k}{side}")), StageSizes::default()));
        }
        let contracted = contract_to_instance(poset, plane, &unf, k, class)?;
        let (cover, mut st) = cover_instance(&contracted.instance, opts)?;
        st.instances += 1;
        st.max_instance_cover = st.max_instance_cover.max(cover.len());
        let lifted = lift_covering(&cover, |p| contracted.lift(p), &format!("layer{k}{side}"));
        Ok((above, lifted, st))
    };
    let results: Vec<Result<(bool, Covering, StageSizes)>> =
        if opts.parallel { jobs.par_iter().map(run).collect() } else { jobs.iter().map(run).collect() };
    let mut sides = [Vec::new(), Vec::new()];
    for r in results {
        let (above, cover, st) = r?;
        stages.absorb(&st);
        sides[usize::from(!above)].push(cover);
    }
    for (side, free) in [(0, &split.free_above), (1, &split.free_below)] {
        if !free.is_empty() {
            sides[side].push(Covering::single(free.clone(), if side == 0 { "free above" } else { "free below" }));
        }
    }
    let above = compose_coverings(poset, ComposeMode::MaxMerge, &sides[0])?;
    let below = compose_coverings(poset, ComposeMode::MaxMerge, &sides[1])?;
    let mut cover = compose_coverings(poset, ComposeMode::Sum, &[above, below])?;
    cover.prune_empty();
    Ok((cover, stages))
}

/// Covering of the pairs of an instance, in the ids of the instance.
pub fn cover_instance(inst: &Instance, opts: &PipelineOptions) -> Result<(Covering, StageSizes)> {
    let poset = inst.poset();
    let mut stages = StageSizes::default();
    if inst.pairs().is_empty() {
        return Ok((Covering::new(), stages));
    }
    let red = good_reduction(inst)?;
    stages.address_classes = red.classes.len();
    let run = |class: &AddressClass| -> Result<(usize, Covering, StageSizes)> {
        let (cover, st) = cover_address_class(inst, class)?;
        Ok((class.theta, cover, st))
    };
    let results: Vec<Result<(usize, Covering, StageSizes)>> =
        if opts.parallel { red.classes.par_iter().map(run).collect() } else { red.classes.iter().map(run).collect() };
    let mut by_theta = [Vec::new(), Vec::new()];
    for r in results {
        let (theta, cover, st) = r?;
        stages.absorb(&st);
        by_theta[theta % 2].push(cover);
    }
    let even = compose_coverings(poset, ComposeMode::MaxMerge, &by_theta[0])?;
    let odd = compose_coverings(poset, ComposeMode::MaxMerge, &by_theta[1])?;
    let mut fixed = Covering::new();
    fixed.push(red.nonrisky[0].clone(), "not risky on the left");
    fixed.push(red.nonrisky[1].clone(), "not risky on the right");
    let summed = compose_coverings(poset, ComposeMode::Sum, &[even, odd])?;
    let mut cover = compose_coverings(poset, ComposeMode::AddSets, &[summed, fixed])?;
    cover.prune_empty();
    Ok((cover, stages))
}

/// Colour classes of the good part of an address class followed by its two
/// non-dangerous sets, in the ids of the parent instance.
fn cover_address_class(parent: &Instance, class: &AddressClass) -> Result<(Covering, StageSizes)> {
    let mut stages = StageSizes::default();
    let mut parts = Vec::new();
    if let Some(good) = &class.good {
        let mgi = maximalize(good)?;
        stages.good_instances = 1;
        stages.maximal_pairs_added = mgi.instance().pairs().len() - good.instance().pairs().len();
        let analysis = Analysis::new(&mgi)?;
        let (s, exact) = match se_exact(mgi.instance().poset(), mgi.instance().pairs(), SeOptions::default()) {
            Ok(r) => (r.s, r.exact),
            Err(_) => (0, false),
        };
        let modulus = exact.then(|| 2 * s * (2 * s + 6));
        let (_, kappa) = analysis.kappa_with_modulus(modulus)?;
        stages.max_kappa_classes = kappa.len();
        let wanted = good.instance().pairs();
        let mut restricted = Covering::new();
        for (c, label) in kappa.classes.iter().zip(&kappa.provenance) {
            let kept: Vec<Pair> = c.iter().copied().filter(|p| wanted.binary_search(p).is_ok()).collect();
            restricted.push(kept, label.clone());
        }
        restricted.prune_empty();
        let at = format!("address({},{})", class.address.j, class.address.x);
        parts.push(lift_covering(&restricted, |p| class.lift(p), &at));
    }
    let mut fixed = Covering::new();
    fixed.push(class.nondangerous[0].clone(), "not dangerous on the left");
    fixed.push(class.nondangerous[1].clone(), "not dangerous on the right");
    parts.push(fixed);
    let mut cover = compose_coverings(parent.poset(), ComposeMode::AddSets, &parts)?;
    cover.prune_empty();
    Ok((cover, stages))
}
