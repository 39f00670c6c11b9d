//! Hypernodes: sequences of nodes of one graph, up to agreement on a set in
//! the ultrafilter.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;
use serde_json::Value;

use super::form::{lcm, Ev, Form, Periodic};
use super::hyperordinal::Hyperordinal;
use super::kernel::{classify, Trivalent};
use super::sequence::IndexSequence;
use super::UltraError;
use crate::arith::{Arith, Logic};
use crate::graph::{catalog_distance, Distance, FamilyKind, GraphInstance};
use crate::node::{split_literal, Ctor, NodeRef};
use crate::ordinal::Ordinal;
use crate::transfinite::{rank1_distance, OneFamily, OneGraph};

/// Membership of `a_n` is checked for `n <= DEFAULT_HORIZON`.
pub const DEFAULT_HORIZON: u64 = 512;

const BFS_BUDGET: u64 = 4_000_000;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// The graph a hypernode lives over.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Zero(GraphInstance),
    One(OneGraph),
}

impl Space {
    pub fn rank(&self) -> u8 {
        match self {
            Space::Zero(_) => 0,
            Space::One(_) => 1,
        }
    }

    pub fn contains(&self, x: &NodeRef) -> bool {
        match (self, x) {
            (Space::Zero(g), NodeRef::Zero(z)) => g.contains(z),
            (Space::One(g), x) => g.contains(x),
            _ => false,
        }
    }

    /// Standard anchor of the principal galaxy of the given rank.
    pub fn anchor(&self, rank: u8) -> NodeRef {
        match self {
            Space::Zero(g) => g.anchor().into(),
            Space::One(g) if rank == 0 => g.anchor_zero().into(),
            Space::One(g) => g.anchor_one().into(),
        }
    }

    /// Exact distance between two standard nodes.
    pub fn distance(&self, x: &NodeRef, y: &NodeRef) -> Result<Ordinal, UltraError> {
        match self {
            Space::Zero(g) => {
                let bad = |v: &NodeRef| UltraError::NotMember { n: 0, node: v.to_string() };
                let (a, b) = (x.as_zero().ok_or_else(|| bad(x))?, y.as_zero().ok_or_else(|| bad(y))?);
                match g.distance(a, b, BFS_BUDGET)? {
                    Distance::Exact(d) => Ok(Ordinal::from_finite(d)),
                    Distance::Exhausted => Err(crate::graph::GraphError::Exhausted.into()),
                }
            }
            Space::One(g) => Ok(g.closed_form_wdistance(x, y)?),
        }
    }

    /// Eventual `(ω-coefficient, finite part)` of the distance between nodes
    /// given by constructors and eventual parameter forms.
    fn symbolic_distance(&self, a: Ctor, pa: &[Form], b: Ctor, pb: &[Form]) -> Result<(Form, Form), UltraError> {
        match self {
            Space::Zero(g) => {
                let kind = g.kind();
                let d = if kind == FamilyKind::PerturbedGrid {
                    // finitely many edits move any distance by at most the bound
                    let c = g.perturbation().map_or(0, |p| p.distortion_bound());
                    catalog_distance(FamilyKind::Grid2D, a, pa, b, pb)?.add(&Form::Bounded { lo: -c, hi: c })
                } else {
                    catalog_distance(kind, a, pa, b, pb)?
                };
                let d = match kind.diameter() {
                    Some(diam) => d.clamp(0, diam as i64),
                    None => d.at_least(0),
                };
                Ok((Form::constant(0), d))
            }
            Space::One(g) => {
                let (o, f) = rank1_distance(g.family(), a, pa, b, pb)?;
                Ok((o.at_least(0), f.at_least(0)))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Space::Zero(g) => format!("{:?}", g.kind()),
            Space::One(g) => format!("{:?}", g.family()),
        }
    }
}

/// Identifies the entries of one galaxy chain: all share `root`, and
/// `level` orders them by distance from the chain's base point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainTag {
    pub root: u64,
    pub level: i64,
}

/// A non-decreasing unbounded map `n -> m(n)`.
#[derive(Clone)]
pub struct IndexMap(Arc<dyn Fn(u64) -> u64 + Send + Sync>);

impl IndexMap {
    pub fn new(f: impl Fn(u64) -> u64 + Send + Sync + 'static) -> Self {
        IndexMap(Arc::new(f))
    }

    pub fn apply(&self, n: u64) -> u64 {
        (self.0)(n)
    }
}

#[derive(Clone)]
pub enum Repr {
    Term {
        ctor: Ctor,
        params: Vec<IndexSequence>,
    },
    /// Even entries from the first, odd entries from the second.
    Interleaved(Box<Repr>, Box<Repr>),
    /// `n -> base_{map(n)}`.
    Reindexed {
        base: Box<Hypernode>,
        map: IndexMap,
    },
}

/// Per residue class: the eventual constructor and parameter forms, or
/// `None` when nothing is known.
pub type Sym = Option<(Ctor, Vec<Form>)>;

impl Repr {
    fn at(&self, n: u64) -> NodeRef {
        match self {
            Repr::Term { ctor, params } => {
                let p: Vec<i64> = params.iter().map(|s| s.eval(n)).collect();
                NodeRef::build(*ctor, &p).expect("arity checked at construction")
            }
            Repr::Interleaved(e, o) => {
                if n.is_multiple_of(2) {
                    e.at(n)
                } else {
                    o.at(n)
                }
            }
            Repr::Reindexed { base, map } => base.at(map.apply(n)),
        }
    }

    fn symbolic(&self) -> Periodic<Sym> {
        match self {
            Repr::Term { ctor, params } => {
                let forms: Vec<Periodic<Form>> = params.iter().map(|p| p.form()).collect();
                let period = forms.iter().fold(1, |acc, f| lcm(acc, f.period()));
                Periodic::from_classes(
                    (0..period).map(|r| Some((*ctor, forms.iter().map(|f| *f.at(r)).collect()))).collect(),
                )
            }
            Repr::Interleaved(e, o) => Periodic::interleave(&e.symbolic(), &o.symbolic()),
            Repr::Reindexed { base, .. } => Periodic::uniform(coarsen(&base.symbolic())),
        }
    }

    fn validate(&self, horizon: u64) -> Result<(), UltraError> {
        match self {
            Repr::Term { ctor, params } => {
                if params.len() != ctor.arity() {
                    return Err(UltraError::Parse(format!("{} takes {} parameters", ctor.prefix(), ctor.arity())));
                }
                params.iter().try_for_each(|p| p.validate(horizon))
            }
            Repr::Interleaved(e, o) => {
                e.validate(horizon)?;
                o.validate(horizon)
            }
            Repr::Reindexed { .. } => Ok(()),
        }
    }

    fn fmt_into(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Repr::Term { ctor, params } => match ctor {
                Ctor::Ground => write!(f, "lad:g"),
                Ctor::OneGround => write!(f, "x1:g"),
                Ctor::Hub => write!(f, "hub"),
                c => {
                    write!(f, "{}:", c.prefix())?;
                    for (i, p) in params.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{p}")?;
                    }
                    Ok(())
                }
            },
            Repr::Interleaved(e, o) => {
                write!(f, "parity(")?;
                e.fmt_into(f)?;
                write!(f, ", ")?;
                o.fmt_into(f)?;
                write!(f, ")")
            }
            Repr::Reindexed { base, .. } => write!(f, "reindex({base})"),
        }
    }
}

/// Forms of `base_{m(n)}` for an unknown non-decreasing unbounded `m`: the
/// residue classes get mixed, and affine growth only survives as a direction.
fn coarsen(p: &Periodic<Sym>) -> Sym {
    let mut out: Option<(Ctor, Vec<Form>)> = None;
    for s in p.classes() {
        let (c, forms) = s.as_ref()?;
        let forms: Vec<Form> = forms
            .iter()
            .map(|f| match f.divergence() {
                Some(up) => Form::Diverges { up },
                None => *f,
            })
            .collect();
        out = match out {
            None => Some((*c, forms)),
            Some((c0, f0)) if c0 == *c => Some((c0, f0.iter().zip(&forms).map(|(a, b)| a.hull(b)).collect())),
            Some(_) => return None,
        };
    }
    out
}

/// An element of the ultrapower `*V`.
#[derive(Clone)]
pub struct Hypernode {
    id: u64,
    space: Arc<Space>,
    repr: Repr,
    overrides: Arc<BTreeMap<u64, NodeRef>>,
    tag: Option<ChainTag>,
}

impl fmt::Debug for Hypernode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypernode({self})")
    }
}

impl fmt::Display for Hypernode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.repr.fmt_into(f)?;
        if !self.overrides.is_empty() {
            let k = self.overrides.len();
            write!(f, " [{k} {} perturbed]", if k == 1 { "entry" } else { "entries" })?;
        }
        Ok(())
    }
}

impl Hypernode {
    /// Build and check membership of `a_n` for `n <= horizon`.
    pub fn new(space: Arc<Space>, repr: Repr, horizon: u64) -> Result<Self, UltraError> {
        Hypernode::with_overrides(space, repr, BTreeMap::new(), horizon)
    }

    /// Like [`Hypernode::new`], with finitely many entries replaced before
    /// membership is checked.
    pub fn with_overrides(
        space: Arc<Space>,
        repr: Repr,
        overrides: BTreeMap<u64, NodeRef>,
        horizon: u64,
    ) -> Result<Self, UltraError> {
        repr.validate(horizon)?;
        let h = Hypernode { id: fresh_id(), space, repr, overrides: Arc::new(overrides), tag: None };
        h.check_members(horizon.max(h.overrides.keys().last().copied().unwrap_or(0)))?;
        Ok(h)
    }

    fn check_members(&self, horizon: u64) -> Result<(), UltraError> {
        for n in 0..=horizon {
            let x = self.at(n);
            if !self.space.contains(&x) {
                return Err(UltraError::NotMember { n, node: x.to_string() });
            }
        }
        Ok(())
    }

    /// The image `*x` of a standard node.
    pub fn standard(space: Arc<Space>, x: &NodeRef) -> Result<Self, UltraError> {
        let params = x.params().into_iter().map(IndexSequence::Constant).collect();
        Hypernode::new(space, Repr::Term { ctor: x.ctor(), params }, 0)
    }

    pub fn term(space: Arc<Space>, ctor: Ctor, params: Vec<IndexSequence>) -> Result<Self, UltraError> {
        Hypernode::new(space, Repr::Term { ctor, params }, DEFAULT_HORIZON)
    }

    /// `n -> base_{map(n)}` for a non-decreasing unbounded `map`; membership
    /// is inherited from `base`.
    pub fn reindexed(base: &Hypernode, map: IndexMap) -> Self {
        Hypernode {
            id: fresh_id(),
            space: base.space.clone(),
            repr: Repr::Reindexed { base: Box::new(base.clone()), map },
            overrides: Arc::new(BTreeMap::new()),
            tag: None,
        }
    }

    /// Parse a hypernode literal such as `p:2n+1`, `lad:g`, `grid:n,-n` or
    /// `parity(p:n, p:0)`.
    pub fn parse(space: Arc<Space>, s: &str, horizon: u64) -> Result<Self, UltraError> {
        let repr = parse_repr(s, &|_| None)?;
        Hypernode::new(space, repr, horizon)
    }

    /// Parse the JSON form: a literal string, `{"parity": [a, b]}`, or
    /// `{"term": "lad:x[k]", "k": <sequence>, "perturb": {"3": "lad:0"}}`.
    pub fn from_json(space: Arc<Space>, v: &Value, horizon: u64) -> Result<Self, UltraError> {
        let repr = json_repr(v)?;
        let h = Hypernode::new(space, repr, horizon)?;
        match v.get("perturb") {
            None => Ok(h),
            Some(p) => {
                let map = p.as_object().ok_or_else(|| UltraError::Parse("perturb must be an object".into()))?;
                let mut over = BTreeMap::new();
                for (k, node) in map {
                    let n: u64 = k.parse().map_err(|_| UltraError::Parse(format!("bad index `{k}`")))?;
                    let lit =
                        node.as_str().ok_or_else(|| UltraError::Parse("perturbed entry must be a node".into()))?;
                    let x: NodeRef = lit.parse().map_err(|e| UltraError::Parse(format!("{e}")))?;
                    over.insert(n, x);
                }
                h.perturbed(over)
            }
        }
    }

    /// Shared by a representative and its perturbations; two hypernodes with
    /// the same id are at hyperdistance 0.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn tag(&self) -> Option<ChainTag> {
        self.tag
    }

    pub fn with_tag(mut self, tag: ChainTag) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn at(&self, n: u64) -> NodeRef {
        match self.overrides.get(&n) {
            Some(x) => x.clone(),
            None => self.repr.at(n),
        }
    }

    /// The same hypernode with finitely many entries replaced. The result is
    /// a different sequence but an equal hypernode, and keeps the id.
    pub fn perturbed(&self, overrides: BTreeMap<u64, NodeRef>) -> Result<Self, UltraError> {
        if let Some((n, x)) = overrides.iter().find(|(_, x)| !self.space.contains(x)) {
            return Err(UltraError::NotMember { n: *n, node: x.to_string() });
        }
        let mut all = (*self.overrides).clone();
        all.extend(overrides);
        Ok(Hypernode { overrides: Arc::new(all), ..self.clone() })
    }

    pub fn overrides(&self) -> &BTreeMap<u64, NodeRef> {
        &self.overrides
    }

    pub fn symbolic(&self) -> Periodic<Sym> {
        self.repr.symbolic()
    }
}

fn parse_err(s: &str) -> UltraError {
    UltraError::Parse(format!("bad hypernode literal `{s}`"))
}

fn parse_repr(s: &str, lookup: &dyn Fn(&str) -> Option<IndexSequence>) -> Result<Repr, UltraError> {
    let t = s.trim();
    let t = t.strip_prefix("const ").or_else(|| t.strip_prefix("affine ")).unwrap_or(t).trim();
    if let Some(inner) = t.strip_prefix("parity(").and_then(|r| r.strip_suffix(')')) {
        let (a, b) = split_top_level(inner).ok_or_else(|| parse_err(s))?;
        return Ok(Repr::Interleaved(Box::new(parse_repr(a, lookup)?), Box::new(parse_repr(b, lookup)?)));
    }
    let (ctor, args) = split_literal(t).map_err(|_| parse_err(s))?;
    let params = args.iter().map(|a| IndexSequence::parse_param(a, lookup)).collect::<Result<Vec<_>, _>>()?;
    Ok(Repr::Term { ctor, params })
}

/// Split `a, b` at the comma that is not nested in parentheses.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut commas = vec![];
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => commas.push(i),
            _ => {}
        }
    }
    // node literals carry commas of their own; the separator is the one
    // followed by a new literal head
    commas.into_iter().find_map(|i| {
        let (a, b) = (&s[..i], &s[i + 1..]);
        let head_ok = |x: &str| x.trim().starts_with("parity(") || split_literal(x.trim()).is_ok();
        (head_ok(a) && head_ok(b)).then_some((a, b))
    })
}

fn json_repr(v: &Value) -> Result<Repr, UltraError> {
    match v {
        Value::String(s) => parse_repr(s, &|_| None),
        Value::Object(m) => {
            if let Some(p) = m.get("parity") {
                let arr = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| parse_err(&p.to_string()))?;
                return Ok(Repr::Interleaved(Box::new(json_repr(&arr[0])?), Box::new(json_repr(&arr[1])?)));
            }
            let term = m.get("term").and_then(|t| t.as_str()).ok_or_else(|| parse_err(&v.to_string()))?;
            let lookup = |name: &str| -> Option<IndexSequence> {
                m.get(name).and_then(|s| serde_json::from_value::<IndexSequence>(s.clone()).ok())
            };
            parse_repr(term, &lookup)
        }
        _ => Err(parse_err(&v.to_string())),
    }
}

fn same_space(x: &Hypernode, y: &Hypernode) -> Result<(), UltraError> {
    if Arc::ptr_eq(&x.space, &y.space) || x.space == y.space {
        Ok(())
    } else {
        Err(UltraError::SpaceMismatch)
    }
}

fn all_constant(forms: &[Form]) -> Option<Vec<i64>> {
    forms
        .iter()
        .map(|f| match f {
            Form::Exact { slope: 0, offset } => Some(*offset),
            _ => None,
        })
        .collect()
}

/// The hyperdistance `⟨d(x_n, y_n)⟩`.
pub fn hyperdistance(x: &Hypernode, y: &Hypernode) -> Result<Hyperordinal, UltraError> {
    same_space(x, y)?;
    let space = x.space.clone();
    let forms = if x.id == y.id {
        Periodic::uniform((Form::constant(0), Form::constant(0)))
    } else {
        let (sx, sy) = (x.symbolic(), y.symbolic());
        let period = lcm(sx.period(), sy.period());
        let mut classes = Vec::with_capacity(period);
        for r in 0..period {
            let f = match (sx.at(r), sy.at(r)) {
                (Some((a, pa)), Some((b, pb))) => match (all_constant(pa), all_constant(pb)) {
                    // eventually the same standard pair: compute it outright
                    (Some(va), Some(vb)) => {
                        let (na, nb) = (NodeRef::build(*a, &va), NodeRef::build(*b, &vb));
                        let (na, nb) = (na.expect("arity"), nb.expect("arity"));
                        let d = space.distance(&na, &nb)?;
                        (Form::constant(d.omega_coeff() as i64), Form::constant(d.finite_part() as i64))
                    }
                    _ => space.symbolic_distance(*a, pa, *b, pb)?,
                },
                _ => (Form::Unknown, Form::Unknown),
            };
            classes.push(f);
        }
        Periodic::from_classes(classes)
    };
    let (a, b) = (x.clone(), y.clone());
    Ok(Hyperordinal::new(forms, move |n| space.distance(&a.at(n), &b.at(n))))
}

/// Truth, per residue class, that the two hypernodes coincide.
fn eq_truth(x: &Hypernode, y: &Hypernode) -> Result<Periodic<Ev>, UltraError> {
    let d = hyperdistance(x, y)?;
    Ok(d.forms().map(|(o, f)| o.eq_to(&Form::constant(0)).and(&f.eq_to(&Form::constant(0)))))
}

/// Is `x = y` in the ultrapower?
pub fn hypernode_eq(x: &Hypernode, y: &Hypernode) -> Result<Trivalent, UltraError> {
    if let (Some(a), Some(b)) = (x.tag, y.tag) {
        if a.root == b.root {
            return Ok(Trivalent::from_bool(a.level == b.level));
        }
    }
    Ok(classify(&eq_truth(x, y)?)?)
}

/// Is `x` the image of a standard node? Bounded parameter sequences take
/// finitely many values, so one of them is hit on a set in the ultrafilter.
pub fn is_standard(x: &Hypernode) -> Result<Trivalent, UltraError> {
    let truth = x.symbolic().map(|s| match s {
        None => Ev::Unknown,
        Some((_, forms)) => {
            if forms.iter().all(|f| f.range().is_some()) {
                Ev::True
            } else if forms.iter().any(|f| f.divergence().is_some()) {
                Ev::False
            } else {
                Ev::Unknown
            }
        }
    });
    Ok(classify(&truth)?)
}

/// The standard node `x` equals on a cofinite set, if its parameters are
/// eventually constant (the same constant on every residue class).
pub fn standard_value(x: &Hypernode) -> Option<NodeRef> {
    let sym = x.symbolic();
    let (c, forms) = sym.at(0).clone()?;
    let vals = all_constant(&forms)?;
    if sym.classes().iter().any(|s| s.as_ref() != Some(&(c, forms.clone()))) {
        return None;
    }
    NodeRef::build(c, &vals)
}

/// A branch of the ultrapower: endpoints adjacent for almost all `n`.
#[derive(Debug, Clone)]
pub struct Hyperbranch {
    pub a: Hypernode,
    pub b: Hypernode,
}

pub fn make_hyperbranch(a: &Hypernode, b: &Hypernode) -> Result<Hyperbranch, UltraError> {
    let d = hyperdistance(a, b)?;
    let truth = d.forms().map(|(o, f)| o.eq_to(&Form::constant(0)).and(&f.eq_to(&Form::constant(1))));
    match classify(&truth)? {
        Trivalent::True => Ok(Hyperbranch { a: a.clone(), b: b.clone() }),
        Trivalent::False => Err(UltraError::NotAHyperbranch),
        Trivalent::FilterDependent => Err(UltraError::HyperbranchFilterDependent),
    }
}

/// A random hypernode mixing standard, affine, parity and explicit
/// parameter sequences, valid on every index.
pub fn random_hypernode<R: Rng>(space: &Arc<Space>, rng: &mut R) -> Hypernode {
    const R0: i64 = 20;
    let nn = |rng: &mut R| IndexSequence::random_nonneg(rng, R0);
    let sg = |rng: &mut R| IndexSequence::random_signed(rng, R0);
    let term = |ctor: Ctor, params: Vec<IndexSequence>| Repr::Term { ctor, params };
    let repr = match &**space {
        Space::Zero(g) => match g.kind() {
            FamilyKind::EndlessPath => term(Ctor::Path, vec![sg(rng)]),
            FamilyKind::OneEndedPath => term(Ctor::Path, vec![nn(rng)]),
            FamilyKind::Ladder => match rng.gen_range(0..8) {
                0 => term(Ctor::Ground, vec![]),
                1 => Repr::Interleaved(Box::new(term(Ctor::Ground, vec![])), Box::new(term(Ctor::Rung, vec![nn(rng)]))),
                _ => term(Ctor::Rung, vec![nn(rng)]),
            },
            FamilyKind::LadderWithRay => match rng.gen_range(0..8) {
                0 => term(Ctor::Ground, vec![]),
                1..=3 => term(Ctor::Ray, vec![nn(rng).shifted(1)]),
                _ => term(Ctor::Rung, vec![nn(rng)]),
            },
            FamilyKind::Grid2D | FamilyKind::PerturbedGrid => term(Ctor::Grid, vec![sg(rng), sg(rng)]),
        },
        Space::One(g) => {
            let one = rng.gen_ratio(1, 3);
            match g.family() {
                OneFamily::DiamondChain if one => term(Ctor::One, vec![nn(rng)]),
                OneFamily::DiamondChain => {
                    let c = [Ctor::DiamondJ, Ctor::DiamondL, Ctor::DiamondR][rng.gen_range(0..3)];
                    term(c, vec![nn(rng), nn(rng)])
                }
                OneFamily::OnePathOfEndlessPaths if one => term(Ctor::One, vec![sg(rng)]),
                OneFamily::OnePathOfEndlessPaths => term(Ctor::Segment, vec![sg(rng), sg(rng)]),
                OneFamily::LadderOfEndlessPaths if one => {
                    if rng.gen_ratio(1, 5) {
                        term(Ctor::OneGround, vec![])
                    } else {
                        term(Ctor::One, vec![nn(rng)])
                    }
                }
                OneFamily::LadderOfEndlessPaths => {
                    let c = if rng.gen_bool(0.5) { Ctor::Spoke } else { Ctor::Rail };
                    term(c, vec![nn(rng), sg(rng)])
                }
                OneFamily::PartialLadder if one => term(Ctor::One, vec![nn(rng)]),
                OneFamily::PartialLadder => match rng.gen_range(0..6) {
                    0 => term(Ctor::Hub, vec![]),
                    1 => term(Ctor::SpokeEnd, vec![nn(rng)]),
                    _ => term(Ctor::Rail, vec![nn(rng), sg(rng)]),
                },
            }
        }
    };
    Hypernode::new(space.clone(), repr, 64).expect("random hypernodes are valid by construction")
}

/// Convenience for tests and the CLI: a standard node by literal.
pub fn standard_node(space: &Arc<Space>, lit: &str) -> Result<Hypernode, UltraError> {
    let x: NodeRef = lit.parse().map_err(|e| UltraError::Parse(format!("{e}")))?;
    Hypernode::standard(space.clone(), &x)
}
