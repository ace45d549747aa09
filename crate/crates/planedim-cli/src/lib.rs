//! Command-line front end for `planedim`.
//!
//! [`run`] parses the arguments, reads inputs (`-` is stdin), writes to
//! the given streams and returns the process exit code: 0 on success, 1 for
//! a domain error, 2 for a usage error and 3 when an internal invariant
//! fails. Errors go to stderr as one JSON object.

use std::fs;
use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use planedim::auxgraph::{Analysis, AuxKind};
use planedim::gen::{generate, Family};
use planedim::goodinst::{good_reduction, maximalize};
use planedim::instance::Instance;
use planedim::io::{covering_value, cover_dot, pairs_value, parse_poset, parse_realizer, write_poset, write_realizer, PosetInput};
use planedim::pipeline::{realize_planar_full, PipelineOptions};
use planedim::poset::{dim_exact, se_exact, verify_realizer, DimOptions, SeOptions};
use planedim::Error;

#[derive(Parser, Debug)]
#[command(name = "planedim", version, about = "Realizers for posets with planar cover graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a poset file.
    Gen {
        /// standard, kelly, wheel, chain, antichain, forest, random-planar or rooted-planar.
        family: String,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact dimension and a minimum covering.
    Dim {
        file: String,
        /// Use the pairs listed in the file instead of every incomparable pair.
        #[arg(long)]
        pairs: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Standard-example number with a witness.
    Se {
        file: String,
        #[arg(long)]
        pairs: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the planar pipeline and write a realizer.
    Realize {
        file: String,
        /// Write the realizer here instead of stdout.
        #[arg(short, long)]
        output: Option<String>,
        /// Write the pipeline report here; `-` is stderr.
        #[arg(long)]
        report: Option<String>,
        /// Write the covering with provenance here.
        #[arg(long)]
        covering: Option<String>,
        /// Include wall-clock timings in the report.
        #[arg(long)]
        timings: bool,
        /// Run every branch on the calling thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Check that a realizer intersects to the poset.
    Verify { poset: String, realizer: String },
    /// Dump the shadow decomposition of an element.
    Explain {
        file: String,
        #[arg(long)]
        element: usize,
    },
    /// Write a graph in DOT form.
    ExportDot {
        file: String,
        /// cover, HOO, HIIL, HIIR, HIILR, HIO or HOI.
        #[arg(long, default_value = "cover")]
        graph: String,
        /// Index of the good address class for the auxiliary graphs.
        #[arg(long, default_value_t = 0)]
        class: usize,
    },
    /// Run the invariant suite on a poset file.
    Check { file: String },
}

/// Failure of a subcommand.
enum Failure {
    Lib(Error),
    Io(String),
    Usage(String),
    /// The reader of stdout went away; not reported.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Io(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run(args: &[String], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = writeln!(stderr, "{}", json!({"error": {"kind": "Usage", "message": e.to_string()}}));
            return 2;
        }
    };
    let mut ctx = Ctx { stdin, stdout, stderr, stdin_used: false };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => 0,
        Err(Failure::Closed) => 0,
        Err(f) => {
            let (code, kind, message) = match f {
                Failure::Lib(e) => (if e.is_internal() { 3 } else { 1 }, e.kind().to_string(), e.to_string()),
                Failure::Io(m) => (1, "Io".to_string(), m),
                Failure::Usage(m) => (2, "Usage".to_string(), m),
                Failure::Closed => unreachable!("handled above"),
            };
            let _ = writeln!(ctx.stderr, "{}", json!({"error": {"kind": kind, "message": message}}));
            code
        }
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    stdin_used: bool,
}

impl Ctx<'_> {
    fn read(&mut self, path: &str) -> std::result::Result<String, Failure> {
        if path == "-" {
            if self.stdin_used {
                return Err(Failure::Usage("stdin can only be read once".into()));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
        }
    }

    fn poset(&mut self, path: &str) -> std::result::Result<PosetInput, Failure> {
        let text = self.read(path)?;
        Ok(parse_poset(&text)?)
    }

    fn write_to(&mut self, path: Option<&str>, text: &str) -> Outcome {
        match path {
            None | Some("-") => self.stdout.write_all(text.as_bytes())?,
            Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{p}: {e}")))?,
        }
        Ok(())
    }
}

fn line(v: &Value) -> String {
    format!("{v}\n")
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Outcome {
    match cmd {
        Command::Gen { family, n, seed } => {
            let family: Family = family.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let g = generate(family, n, seed)?;
            let text = write_poset(&g.poset, g.plane.as_ref(), None, Some(&g.labels));
            ctx.write_to(None, &text)
        }
        Command::Dim { file, pairs, budget } => {
            let input = ctx.poset(&file)?;
            let set = pair_set(&input, pairs)?;
            let mut opts = DimOptions::default();
            if let Some(b) = budget {
                opts.budget = b;
            }
            let r = dim_exact(&input.poset, &set, opts)?;
            let d = if set.is_empty() { 1 } else { r.d };
            writeln!(ctx.stdout, "{d}")?;
            ctx.write_to(None, &line(&json!({"dim": d, "covering": covering_value(&r.covering)})))
        }
        Command::Se { file, pairs, budget } => {
            let input = ctx.poset(&file)?;
            let set = pair_set(&input, pairs)?;
            let mut opts = SeOptions::default();
            if let Some(b) = budget {
                opts.budget = b;
            }
            let r = se_exact(&input.poset, &set, opts)?;
            writeln!(ctx.stdout, "{}", r.s)?;
            ctx.write_to(None, &line(&json!({"s": r.s, "exact": r.exact, "witness": pairs_value(&r.witness)})))
        }
        Command::Realize { file, output, report, covering, timings, sequential } => {
            let input = ctx.poset(&file)?;
            let plane = input.require_plane("realize")?;
            let pairs = input.pairs_or_all();
            let opts = PipelineOptions { parallel: !sequential, ..Default::default() };
            let r = realize_planar_full(&input.poset, &pairs, plane, &opts)?;
            ctx.write_to(output.as_deref(), &write_realizer(&r.realizer))?;
            if let Some(path) = covering {
                ctx.write_to(Some(&path), &line(&covering_value(&r.covering)))?;
            }
            let mut rep = serde_json::to_value(&r.report).expect("serializable");
            if !timings {
                rep.as_object_mut().expect("object").remove("timings_ms");
            }
            let text = line(&json!({ "report": rep }));
            match report.as_deref() {
                Some("-") => ctx.stderr.write_all(text.as_bytes())?,
                Some(p) => ctx.write_to(Some(p), &text)?,
                None => {}
            }
            Ok(())
        }
        Command::Verify { poset, realizer } => {
            let input = ctx.poset(&poset)?;
            let text = ctx.read(&realizer)?;
            let r = parse_realizer(&text)?;
            let check = verify_realizer(&input.poset, &r);
            if !check.ok {
                return Err(Failure::Lib(Error::BadParameter(format!("not a realizer: {}", check.message))));
            }
            writeln!(ctx.stdout, "OK {}", r.len())?;
            Ok(())
        }
        Command::Explain { file, element } => {
            let input = ctx.poset(&file)?;
            let plane = input.require_plane("explain")?.clone();
            let inst = Instance::new(input.poset.clone(), plane, Vec::new())?;
            let s = inst.shadow_decomposition(element)?;
            let blocks: Vec<Value> = s
                .blocks
                .iter()
                .map(|b| json!({"min": b.min, "max": b.max, "left": b.left, "right": b.right, "degenerate": b.degenerate}))
                .collect();
            let shadows: Vec<Value> = s
                .shadows
                .iter()
                .map(|sh| json!({"blocks": [sh.first_block, sh.end_block], "initial": sh.initial, "terminal": sh.terminal}))
                .collect();
            let out = json!({
                "element": element,
                "root": inst.x0(),
                "leftmost_path": inst.leftmost_path(element)?,
                "rightmost_path": inst.rightmost_path(element)?,
                "common_points": s.common_points,
                "blocks": blocks,
                "reversing_elements": s.reversing_elements(),
                "shadow_depth": s.depth(),
                "shadows": shadows,
            });
            ctx.write_to(None, &line(&out))
        }
        Command::ExportDot { file, graph, class } => {
            let input = ctx.poset(&file)?;
            if graph.eq_ignore_ascii_case("cover") {
                let dot = cover_dot(&input.poset, input.labels.as_deref());
                return ctx.write_to(None, &dot);
            }
            let kind: AuxKind = graph.parse()?;
            let plane = input.require_plane("export-dot")?.clone();
            let x0 = plane.x0();
            let pairs = match &input.pairs {
                Some(p) => p.clone(),
                None => input.poset.incomparable_pairs().into_iter().filter(|p| input.poset.leq(x0, p.b)).collect(),
            };
            let inst = Instance::new(input.poset.clone(), plane, pairs)?;
            let red = good_reduction(&inst)?;
            let goods: Vec<_> = red.classes.iter().filter_map(|c| c.good.as_ref()).collect();
            let good = goods.get(class).ok_or_else(|| {
                Error::BadParameter(format!("good address class {class} requested, {} available", goods.len()))
            })?;
            let mgi = maximalize(good)?;
            let an = Analysis::new(&mgi)?;
            ctx.write_to(None, &an.digraph(kind).to_dot())
        }
        Command::Check { file } => {
            let input = ctx.poset(&file)?;
            let results = planedim_check(&input);
            let failed = results.iter().filter(|c| !c.ok).count();
            let list: Vec<Value> = results.iter().map(|c| json!({"name": c.name, "ok": c.ok, "detail": c.detail})).collect();
            ctx.write_to(None, &line(&json!({"checks": list, "failed": failed})))?;
            match results.iter().find(|c| !c.ok) {
                None => Ok(()),
                Some(c) if c.internal => Err(Failure::Lib(Error::InvariantViolation(format!("{}: {}", c.name, c.detail)))),
                Some(c) => Err(Failure::Lib(Error::BadParameter(format!("{}: {}", c.name, c.detail)))),
            }
        }
    }
}

fn pair_set(input: &PosetInput, from_file: bool) -> std::result::Result<Vec<planedim::poset::Pair>, Failure> {
    if from_file {
        input.pairs.clone().ok_or_else(|| Failure::Usage("--pairs given but the file lists no pairs".into()))
    } else {
        Ok(input.poset.incomparable_pairs())
    }
}

/// Outcome of one invariant check.
struct CheckResult {
    name: &'static str,
    ok: bool,
    internal: bool,
    detail: String,
}

fn planedim_check(input: &PosetInput) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut push = |name: &'static str, r: std::result::Result<String, Error>| {
        let (ok, internal, detail) = match r {
            Ok(d) => (true, false, d),
            Err(e) => (false, e.is_internal(), e.to_string()),
        };
        out.push(CheckResult { name, ok, internal, detail });
    };
    let poset = &input.poset;
    push("poset", Ok(format!("{} elements, {} covers", poset.n(), poset.covers().len())));
    let Some(plane) = &input.plane else {
        push("embedding", Err(Error::BadParameter("no rotation system".into())));
        return out;
    };
    push("embedding", Ok(format!("{} faces", plane.faces().len())));
    let pairs = input.pairs_or_all();
    let x0 = plane.x0();
    let above: Vec<_> = pairs.iter().copied().filter(|p| poset.leq(x0, p.b)).collect();
    let inst = Instance::new(poset.clone(), plane.clone(), above.clone());
    match inst {
        Err(e) => push("instance", Err(e)),
        Ok(inst) => {
            push("instance", Ok(format!("root {x0}, {} pairs above the root", above.len())));
            push("witness trees", check_trees(&inst));
            push("shadows", check_shadows(&inst));
            push("left-of order", check_left_of(&inst));
            push("good reduction", check_reduction(&inst));
        }
    }
    let r = realize_planar_full(poset, &pairs, plane, &PipelineOptions::default());
    push(
        "pipeline",
        r.and_then(|r| {
            if r.report.full_realizer && !verify_realizer(poset, &r.realizer).ok {
                return Err(Error::InvariantViolation("realizer does not verify".into()));
            }
            Ok(format!("{} extensions, bound {}", r.realizer.len(), r.report.bound))
        }),
    );
    out
}

/// Every prefix of a leftmost or rightmost path is the leftmost or rightmost path of its end.
fn check_trees(inst: &Instance) -> std::result::Result<String, Error> {
    for &b in inst.b_elements() {
        for (path, left) in [(inst.leftmost_path(b)?, true), (inst.rightmost_path(b)?, false)] {
            for k in 1..path.len() {
                let prefix = if left { inst.leftmost_path(path[k])? } else { inst.rightmost_path(path[k])? };
                if prefix != path[..=k] {
                    return Err(Error::InvariantViolation(format!("witness tree is inconsistent at {}", path[k])));
                }
            }
        }
    }
    Ok(format!("{} elements above the root", inst.b_elements().len()))
}

fn check_shadows(inst: &Instance) -> std::result::Result<String, Error> {
    let mut deepest = 0;
    for &b in inst.b_elements() {
        let s = inst.shadow_decomposition(b)?;
        if s.common_points.first() != Some(&inst.x0()) || s.common_points.last() != Some(&b) {
            return Err(Error::InvariantViolation(format!("common points of {b} do not span the root and {b}")));
        }
        deepest = deepest.max(s.depth());
    }
    Ok(format!("largest shadow depth {deepest}"))
}

fn check_left_of(inst: &Instance) -> std::result::Result<String, Error> {
    let b = inst.b_elements();
    let mut related = 0;
    for &x in b {
        if inst.left_of(x, x) {
            return Err(Error::InvariantViolation(format!("{x} is left of itself")));
        }
        for &y in b {
            if !inst.left_of(x, y) {
                continue;
            }
            related += 1;
            if inst.left_of(y, x) {
                return Err(Error::InvariantViolation(format!("{x} and {y} are left of each other")));
            }
            for &z in b {
                if inst.left_of(y, z) && !inst.left_of(x, z) {
                    return Err(Error::InvariantViolation(format!("left-of is not transitive on {x}, {y}, {z}")));
                }
            }
        }
    }
    Ok(format!("{related} related pairs"))
}

fn check_reduction(inst: &Instance) -> std::result::Result<String, Error> {
    let red = good_reduction(inst)?;
    let goods = red.classes.iter().filter(|c| c.good.is_some()).count();
    for class in &red.classes {
        if let Some(good) = &class.good {
            maximalize(good)?;
        }
    }
    Ok(format!("{} address classes, {goods} with dangerous pairs", red.classes.len()))
}
