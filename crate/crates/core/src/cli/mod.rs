//! Batch front-end: job documents in, one report per job out.

mod suites;

use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::galaxy::{
    boundary_ray_witness, build_galaxy_chain, closer_than, in_principal_galaxy, konig_ray_witness, limitedly_distant,
    path_neighbors, GalaxyError, GalaxyVerdict, Relation,
};
use crate::graph::{Distance, Edit, FamilyKind, GraphInstance};
use crate::node::NodeRef;
use crate::transfinite::{OneFamily, OneGraph};
use crate::ultrapower::{
    hyperdistance, make_hyperbranch, HyperClass, Hypernode, Space, Trivalent, UltraError, DEFAULT_HORIZON,
};

pub use suites::SUITES;

/// Default breadth-first search budget, in visited nodes.
pub const DEFAULT_BUDGET: u64 = 4_000_000;

/// Indices at which hypernode values and distances are echoed.
const SAMPLE_AT: [u64; 6] = [0, 1, 2, 5, 10, 50];

/// `{"family": "ladder", "edits": [...]}`, or just the family name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "GraphRepr")]
pub struct GraphSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edits: Vec<Edit>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GraphRepr {
    Name(String),
    Full {
        family: String,
        #[serde(default)]
        edits: Vec<Edit>,
    },
}

impl From<GraphRepr> for GraphSpec {
    fn from(r: GraphRepr) -> Self {
        match r {
            GraphRepr::Name(family) => GraphSpec { family, edits: vec![] },
            GraphRepr::Full { family, edits } => GraphSpec { family, edits },
        }
    }
}

impl GraphSpec {
    pub fn named(family: &str) -> Self {
        GraphSpec { family: family.into(), edits: vec![] }
    }

    pub fn build(&self) -> Result<Arc<Space>> {
        let name = Value::String(self.family.trim().to_lowercase().replace('-', "_"));
        if let Ok(kind) = serde_json::from_value::<FamilyKind>(name.clone()) {
            return Ok(Arc::new(Space::Zero(GraphInstance::make_family(kind, self.edits.clone())?)));
        }
        if let Ok(fam) = serde_json::from_value::<OneFamily>(name) {
            if !self.edits.is_empty() {
                bail!("edits apply to perturbed_grid only");
            }
            return Ok(Arc::new(Space::One(OneGraph::make_one_graph(fam))));
        }
        bail!("unknown graph family `{}`", self.family)
    }
}

/// A node or hypernode operand: a literal string or a JSON hypernode object.
pub type Operand = Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    /// Distance between standard nodes, or the hyperdistance of hypernodes.
    Distance {
        x: Operand,
        y: Operand,
    },
    /// Walk distance in a 1-graph, with the search witness.
    Wdistance {
        x: String,
        y: String,
    },
    /// Galaxy verdict for `x` and `y`, or for `x` and the principal galaxy.
    Classify {
        x: Operand,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y: Option<Operand>,
    },
    Closer {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<Operand>,
        y: Operand,
        z: Operand,
    },
    Chain {
        seed: Operand,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<Operand>,
        #[serde(default = "default_m")]
        m: usize,
    },
    Witness {
        kind: WitnessKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        from: Option<Operand>,
    },
    Check {
        suite: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<usize>,
    },
    Describe,
}

fn default_m() -> usize {
    3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Konig,
    Boundary,
    Neighbors,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Job {
    pub graph: GraphSpec,
    #[serde(flatten)]
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl Job {
    fn name(&self) -> &'static str {
        match self.command {
            Command::Distance { .. } => "distance",
            Command::Wdistance { .. } => "wdistance",
            Command::Classify { .. } => "classify",
            Command::Closer { .. } => "closer",
            Command::Chain { .. } => "chain",
            Command::Witness { .. } => "witness",
            Command::Check { .. } => "check",
            Command::Describe => "describe",
        }
    }
}

/// Batch-wide settings; per-job fields override them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub budget: u64,
    pub horizon: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: 0, budget: DEFAULT_BUDGET, horizon: DEFAULT_HORIZON }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// The answer depends on the ultrafilter or could not be decided.
    Caveat,
    /// A check suite found counterexamples.
    Failed,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Caveat => 2,
            Status::Failed | Status::Error => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub index: usize,
    /// The job document as given.
    pub job: Value,
    pub command: String,
    pub status: Status,
    pub exit_code: i32,
    pub summary: String,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

/// What a command produced, before timing and echo are attached.
pub(crate) struct Outcome {
    pub status: Status,
    pub summary: String,
    pub result: Value,
}

impl Outcome {
    pub(crate) fn ok(summary: impl Into<String>, result: Value) -> Self {
        Outcome { status: Status::Ok, summary: summary.into(), result }
    }
}

/// Parse and run one job document. Never fails: errors become reports with
/// exit code 1.
pub fn run_job_value(index: usize, doc: &Value, settings: &Settings) -> Report {
    let start = Instant::now();
    let parsed: Result<Job> = serde_json::from_value(doc.clone()).context("invalid job document");
    let command = parsed.as_ref().map_or_else(
        |_| doc.get("command").and_then(Value::as_str).unwrap_or("?").to_string(),
        |j| j.name().to_string(),
    );
    let outcome = parsed.and_then(|job| run(&job, settings));
    let elapsed_ms = start.elapsed().as_millis() as u64;
    match outcome {
        Ok(o) => Report {
            index,
            job: doc.clone(),
            command,
            status: o.status,
            exit_code: o.status.exit_code(),
            summary: o.summary,
            result: o.result,
            error: None,
            elapsed_ms,
        },
        Err(e) => Report {
            index,
            job: doc.clone(),
            command,
            status: Status::Error,
            exit_code: 1,
            summary: "error".into(),
            result: Value::Null,
            error: Some(format!("{e:#}")),
            elapsed_ms,
        },
    }
}

pub fn run_job(job: &Job, settings: &Settings) -> Report {
    let doc = serde_json::to_value(job).expect("jobs serialize");
    run_job_value(0, &doc, settings)
}

/// Run one invariant suite against a graph.
pub fn run_check_suite(graph: &GraphSpec, suite: &str, settings: &Settings) -> Report {
    let job = Job {
        graph: graph.clone(),
        command: Command::Check { suite: suite.into(), samples: None },
        rank: None,
        horizon: None,
        budget: None,
    };
    run_job(&job, settings)
}

/// Run every job of a batch concurrently; reports keep the input order.
pub fn run_batch(docs: &[Value], settings: &Settings) -> Vec<Report> {
    std::thread::scope(|s| {
        let handles: Vec<_> =
            docs.iter().enumerate().map(|(i, d)| s.spawn(move || run_job_value(i, d, settings))).collect();
        handles.into_iter().map(|h| h.join().expect("job thread panicked")).collect()
    })
}

/// Parse a job file: a JSON array of jobs, or a single job object.
pub fn parse_job_file(text: &str) -> Result<Vec<Value>> {
    match serde_json::from_str::<Value>(text).context("job file is not valid JSON")? {
        Value::Array(v) => Ok(v),
        v @ Value::Object(_) => Ok(vec![v]),
        _ => bail!("job file must hold an array of job objects"),
    }
}

/// 1 if any job errored or failed, else 2 if any carries a caveat, else 0.
pub fn batch_exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.exit_code == 1) {
        1
    } else if reports.iter().any(|r| r.exit_code == 2) {
        2
    } else {
        0
    }
}

pub fn render_table(reports: &[Report]) -> String {
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            let graph = r.job.get("graph").map_or(String::new(), |g| match g {
                Value::String(s) => s.clone(),
                g => g.get("family").and_then(Value::as_str).unwrap_or("?").to_string(),
            });
            let summary = r.error.clone().unwrap_or_else(|| r.summary.clone());
            let status = format!("{:?}", r.status).to_lowercase();
            [r.index.to_string(), r.command.clone(), graph, status, format!("{summary} ({} ms)", r.elapsed_ms)]
        })
        .collect();
    let head = ["#", "command", "graph", "status", "result"].map(String::from);
    let mut width = head.clone().map(|h| h.len());
    for row in &rows {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |row: &[String; 5]| {
        let cells: Vec<String> = row.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
        cells.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&head);
    out += &line(&width.map(|w| "-".repeat(w)));
    for row in &rows {
        out += &line(row);
    }
    out
}

pub(crate) struct Ctx {
    pub space: Arc<Space>,
    pub rank: u8,
    pub horizon: u64,
    pub budget: u64,
    pub rng: ChaCha8Rng,
}

impl Ctx {
    fn node(&self, v: &Operand) -> Result<Hypernode> {
        Hypernode::from_json(self.space.clone(), v, self.horizon).with_context(|| format!("operand {v}"))
    }

    fn base(&self, v: &Option<Operand>) -> Result<Hypernode> {
        match v {
            Some(v) => self.node(v),
            None => Ok(Hypernode::standard(self.space.clone(), &self.space.anchor(self.rank))?),
        }
    }

    fn zero(&self) -> Result<&GraphInstance> {
        match &*self.space {
            Space::Zero(g) => Ok(g),
            Space::One(_) => bail!("{} is a 1-graph; this command needs a 0-graph", self.space.name()),
        }
    }

    fn one(&self) -> Result<&OneGraph> {
        match &*self.space {
            Space::One(g) => Ok(g),
            Space::Zero(_) => bail!("{} is a 0-graph; this command needs a 1-graph", self.space.name()),
        }
    }
}

fn run(job: &Job, settings: &Settings) -> Result<Outcome> {
    let space = job.graph.build()?;
    let rank = job.rank.unwrap_or(space.rank());
    if rank > space.rank() {
        bail!("rank {rank} exceeds the rank of {}", space.name());
    }
    let mut ctx = Ctx {
        space,
        rank,
        horizon: job.horizon.unwrap_or(settings.horizon),
        budget: job.budget.unwrap_or(settings.budget),
        rng: ChaCha8Rng::seed_from_u64(settings.seed),
    };
    match &job.command {
        Command::Distance { x, y } => distance(&ctx, x, y),
        Command::Wdistance { x, y } => wdistance(&ctx, x, y),
        Command::Classify { x, y } => classify(&ctx, x, y.as_ref()),
        Command::Closer { base, y, z } => closer(&ctx, base, y, z),
        Command::Chain { seed, base, m } => chain(&ctx, seed, base, *m),
        Command::Witness { kind, from } => witness(&ctx, *kind, from.as_ref()),
        Command::Check { suite, samples } => suites::run_suite(&mut ctx, suite, *samples),
        Command::Describe => describe(&ctx),
    }
}

fn literal(v: &Operand) -> Option<NodeRef> {
    v.as_str()?.trim().parse().ok()
}

fn samples(x: &Hypernode) -> Vec<(u64, String)> {
    SAMPLE_AT.iter().map(|&n| (n, x.at(n).to_string())).collect()
}

fn distance(ctx: &Ctx, x: &Operand, y: &Operand) -> Result<Outcome> {
    if let (Some(a), Some(b)) = (literal(x), literal(y)) {
        for v in [&a, &b] {
            if !ctx.space.contains(v) {
                bail!("node {v} is not in {}", ctx.space.name());
            }
        }
        let d = match &*ctx.space {
            Space::Zero(g) => {
                let (a, b) = (a.as_zero().expect("member"), b.as_zero().expect("member"));
                match g.distance(a, b, ctx.budget)? {
                    Distance::Exact(d) => d.to_string(),
                    Distance::Exhausted => {
                        return Ok(Outcome {
                            status: Status::Caveat,
                            summary: format!("budget of {} nodes exhausted", ctx.budget),
                            result: json!({"distance": null, "exhausted": true}),
                        })
                    }
                }
            }
            Space::One(g) => g.wdistance(&a, &b)?.to_string(),
        };
        return Ok(Outcome::ok(format!("d = {d}"), json!({"distance": d})));
    }
    let (a, b) = (ctx.node(x)?, ctx.node(y)?);
    let d = hyperdistance(&a, &b)?;
    let class = d.class_at_rank(ctx.rank);
    let vals: Vec<(u64, String)> =
        SAMPLE_AT.iter().map(|&n| d.at(n).map(|o| (n, o.to_string()))).collect::<Result<_, _>>()?;
    let status = match class {
        HyperClass::ParitySplit | HyperClass::Indeterminate => Status::Caveat,
        _ => Status::Ok,
    };
    let summary = match class {
        HyperClass::Bounded { bound, tight: true } => format!("d = {bound}"),
        HyperClass::Bounded { bound, .. } => format!("d <= {bound}"),
        c => format!("{c:?}"),
    };
    Ok(Outcome {
        status,
        summary,
        result: json!({"x": a.to_string(), "y": b.to_string(), "class": class, "samples": vals}),
    })
}

fn wdistance(ctx: &Ctx, x: &str, y: &str) -> Result<Outcome> {
    let g = ctx.one()?;
    let parse = |s: &str| s.trim().parse::<NodeRef>().map_err(|e| anyhow!("{e}"));
    let (a, b) = (parse(x)?, parse(y)?);
    let w = g.wdistance_witness(&a, &b)?;
    let closed = g.closed_form_wdistance(&a, &b).ok();
    Ok(Outcome::ok(
        format!("d = {}", w.distance),
        json!({
            "distance": w.distance,
            "closed_form": closed,
            "sections": w.sections().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            "steps": w.steps,
            "crosses_sections_through_tips": w.tip_rule_holds(),
        }),
    ))
}

/// Kernel indeterminacy is a caveat, not an error.
fn verdict_outcome(r: Result<GalaxyVerdict, GalaxyError>, extra: Value) -> Result<Outcome> {
    let v = match r {
        Err(GalaxyError::Ultra(UltraError::Kernel(e))) => {
            return Ok(Outcome {
                status: Status::Caveat,
                summary: "Indeterminate".into(),
                result: json!({"relation": "Indeterminate", "reason": e.to_string(), "operands": extra}),
            })
        }
        r => r?,
    };
    let summary = match (v.relation, v.bound) {
        (Relation::SameGalaxy, Some(b)) => format!("SameGalaxy, d <= {b}"),
        (r, _) => format!("{r:?}"),
    };
    let status = if v.relation == Relation::FilterDependent { Status::Caveat } else { Status::Ok };
    Ok(Outcome {
        status,
        summary,
        result: json!({"relation": v.relation, "bound": v.bound, "tight": v.tight, "operands": extra}),
    })
}

fn classify(ctx: &Ctx, x: &Operand, y: Option<&Operand>) -> Result<Outcome> {
    let a = ctx.node(x)?;
    match y {
        Some(y) => {
            let b = ctx.node(y)?;
            let echo =
                json!({"x": a.to_string(), "y": b.to_string(), "x_samples": samples(&a), "y_samples": samples(&b)});
            verdict_outcome(limitedly_distant(&a, &b, ctx.rank), echo)
        }
        None => {
            let echo = json!({"x": a.to_string(), "anchor": ctx.space.anchor(ctx.rank).to_string()});
            verdict_outcome(in_principal_galaxy(&a, ctx.rank), echo)
        }
    }
}

fn trivalent_outcome(t: Trivalent, what: &str, result: Value) -> Outcome {
    let status = if t == Trivalent::FilterDependent { Status::Caveat } else { Status::Ok };
    Outcome { status, summary: format!("{what}: {t:?}"), result }
}

fn closer(ctx: &Ctx, base: &Option<Operand>, y: &Operand, z: &Operand) -> Result<Outcome> {
    let (b, y, z) = (ctx.base(base)?, ctx.node(y)?, ctx.node(z)?);
    let echo = json!({"base": b.to_string(), "y": y.to_string(), "z": z.to_string()});
    match closer_than(&b, &y, &z, ctx.rank) {
        Err(GalaxyError::Ultra(UltraError::Kernel(e))) => Ok(Outcome {
            status: Status::Caveat,
            summary: "Indeterminate".into(),
            result: json!({"closer": "Indeterminate", "reason": e.to_string(), "operands": echo}),
        }),
        r => {
            let t = r?;
            Ok(trivalent_outcome(t, "closer", json!({"closer": t, "operands": echo})))
        }
    }
}

fn chain(ctx: &Ctx, seed: &Operand, base: &Option<Operand>, m: usize) -> Result<Outcome> {
    let (b, s) = (ctx.base(base)?, ctx.node(seed)?);
    let c = build_galaxy_chain(&b, &s, m, ctx.rank)?;
    let anchor = c.base.at(0);
    let entries: Vec<Value> = c
        .entries
        .iter()
        .map(|e| {
            let d: Vec<(u64, String)> = [16u64, 64, 256]
                .iter()
                .map(|&n| {
                    (n, ctx.space.distance(&e.node.at(n), &anchor).map_or_else(|e| e.to_string(), |o| o.to_string()))
                })
                .collect();
            json!({"level": e.level, "node": e.node.to_string(), "distance_to_base": d})
        })
        .collect();
    let mut checked = 0;
    let mut misordered = vec![];
    for (i, a) in c.entries.iter().enumerate() {
        for z in &c.entries[i + 1..] {
            checked += 1;
            let t = closer_than(&c.base, &a.node, &z.node, ctx.rank)?;
            if t != Trivalent::True {
                misordered.push((a.level, z.level, format!("{t:?}")));
            }
        }
    }
    let status = if misordered.is_empty() { Status::Ok } else { Status::Failed };
    Ok(Outcome {
        status,
        summary: format!("{} entries, {}/{} pairs ordered", c.len(), checked - misordered.len(), checked),
        result: json!({
            "base": c.base.to_string(),
            "seed": s.to_string(),
            "rank": c.rank,
            "entries": entries,
            "certificates": c.certificates,
            "seed_reindexed": c.seed_reindexed,
            "pairs_checked": checked,
            "misordered": misordered,
        }),
    })
}

fn witness(ctx: &Ctx, kind: WitnessKind, from: Option<&Operand>) -> Result<Outcome> {
    let w = match kind {
        WitnessKind::Konig => {
            let g = ctx.zero()?;
            let x0 = match from {
                Some(v) => {
                    literal(v).and_then(|x| x.as_zero().cloned()).ok_or_else(|| anyhow!("`from` must be a 0-node"))?
                }
                None => g.anchor(),
            };
            konig_ray_witness(g, &x0)?
        }
        WitnessKind::Boundary => {
            let g = ctx.one()?;
            let x0 = match from {
                Some(v) => match literal(v) {
                    Some(NodeRef::One(x)) => x,
                    _ => bail!("`from` must be a 1-node"),
                },
                None => g.anchor_one(),
            };
            boundary_ray_witness(g, x0)?
        }
        WitnessKind::Neighbors => {
            let x = ctx.node(from.ok_or_else(|| anyhow!("`from` hypernode is required"))?)?;
            let (p, s) = path_neighbors(&x)?;
            let adjacent = [&p, &s].iter().all(|v| make_hyperbranch(&x, v).is_ok());
            return Ok(Outcome::ok(
                format!("{p} < {x} < {s}"),
                json!({"node": x.to_string(), "predecessor": p.to_string(), "successor": s.to_string(),
                       "predecessor_samples": samples(&p), "successor_samples": samples(&s), "hyperbranches": adjacent}),
            ));
        }
    };
    let principal = in_principal_galaxy(&w, ctx.rank)?;
    let rank = if kind == WitnessKind::Boundary { 1 } else { 0 };
    let start = ctx.space.anchor(rank);
    let d: Vec<(u64, String)> = SAMPLE_AT
        .iter()
        .map(|&n| (n, ctx.space.distance(&w.at(n), &start).map_or_else(|e| e.to_string(), |o| o.to_string())))
        .collect();
    Ok(Outcome::ok(
        format!("{w}, {:?} from the principal galaxy", principal.relation),
        json!({"witness": w.to_string(), "samples": samples(&w), "distance_from_anchor": d, "principal": principal}),
    ))
}

fn describe(ctx: &Ctx) -> Result<Outcome> {
    let r = match &*ctx.space {
        Space::Zero(g) => {
            let k = g.kind();
            json!({
                "rank": 0,
                "family": k,
                "anchor": g.anchor().to_string(),
                "locally_finite": k.locally_finite(),
                "closed_form_distance": k.has_closed_form(),
                "diameter": k.diameter(),
                "edits": g.perturbation().map_or(0, |p| p.edits().len()),
                "distortion_bound": g.perturbation().map(|p| p.distortion_bound()),
            })
        }
        Space::One(g) => {
            let boundary: Vec<String> = g.boundary_one_nodes().take(8).map(|x| x.to_string()).collect();
            let sections: Vec<String> = g.sections().take(6).map(|s| s.to_string()).collect();
            json!({
                "rank": 1,
                "family": g.family(),
                "anchor_zero": g.anchor_zero().to_string(),
                "anchor_one": g.anchor_one().to_string(),
                "locally_1_finite": g.is_locally_1_finite(),
                "finite_boundary_adjacency": g.has_finite_boundary_adjacency(),
                "infinitely_many_boundary_nodes": g.has_infinitely_many_boundary_nodes(),
                "one_wconnected": g.is_1_wconnected(),
                "boundary_nodes": boundary,
                "sections": sections,
            })
        }
    };
    Ok(Outcome::ok(ctx.space.name(), r))
}
