//! 1-graphs: 0-sections, 0-tips, 1-nodes and ordinal walk distances.
//!
//! The four catalog 1-graphs are presented lazily. `wdistance` runs a
//! lexicographic Dijkstra over a finite quotient (query 0-nodes and 1-nodes,
//! joined through shared sections); `rank1_distance` is the matching closed
//! form, written against [`Arith`] so the ultrapower module can lift it.

pub mod oracle;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, VecDeque};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Arith, Logic};
use crate::node::{Ctor, NodeId, NodeRef, OneNodeId};
use crate::ordinal::{Ordinal, OrdinalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransfiniteError {
    #[error("node {0} is not a member of the 1-graph")]
    NotMember(String),
    #[error("no walk found between {0} and {1}")]
    Unreachable(String, String),
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OneFamily {
    DiamondChain,
    OnePathOfEndlessPaths,
    LadderOfEndlessPaths,
    #[serde(rename = "partial_ladder_of_endless_paths")]
    PartialLadder,
}

impl OneFamily {
    pub const ALL: [OneFamily; 4] = [
        OneFamily::DiamondChain,
        OneFamily::OnePathOfEndlessPaths,
        OneFamily::LadderOfEndlessPaths,
        OneFamily::PartialLadder,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SectionId {
    Chain(i64),
    Segment(i64),
    Spoke(i64),
    Rail(i64),
    Star,
}

impl fmt::Display for SectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionId::Chain(k) => write!(f, "C{k}"),
            SectionId::Segment(k) => write!(f, "E{k}"),
            SectionId::Spoke(k) => write!(f, "S{k}"),
            SectionId::Rail(k) => write!(f, "R{k}"),
            SectionId::Star => write!(f, "star"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RayName {
    /// Diamond chain ray through the `L` nodes.
    LeftRay,
    /// Diamond chain ray through the `R` nodes.
    RightRay,
    /// Endless-path end with decreasing position.
    Down,
    /// Endless-path end with increasing position.
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TipId {
    pub section: SectionId,
    pub ray: RayName,
}

impl fmt::Display for TipId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.ray, self.section) {
            (RayName::LeftRay, SectionId::Chain(k)) => write!(f, "LeftRay({k})"),
            (RayName::RightRay, SectionId::Chain(k)) => write!(f, "RightRay({k})"),
            (r, s) => write!(f, "{r:?}({s})"),
        }
    }
}

/// How a 1-node meets a section: through a tip, or through its embedded 0-node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attach {
    Tip(TipId),
    Embedded(NodeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneNode {
    pub id: OneNodeId,
    pub tips: Vec<TipId>,
    pub embedded: Option<NodeId>,
}

/// Range of section / 1-node indices the quotient search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    fn contains(&self, k: i64) -> bool {
        self.lo <= k && k <= self.hi
    }
}

/// One leg of a search witness: a 0-walk inside `section`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkStep {
    pub from: NodeRef,
    pub to: NodeRef,
    pub section: SectionId,
    pub length: Ordinal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkSummary {
    pub distance: Ordinal,
    pub steps: Vec<WalkStep>,
}

impl WalkSummary {
    pub fn sections(&self) -> Vec<SectionId> {
        let mut s: Vec<SectionId> = self.steps.iter().map(|st| st.section).collect();
        s.dedup();
        s
    }

    /// A walk that meets two different sections must traverse a tip.
    pub fn tip_rule_holds(&self) -> bool {
        let mut secs = self.sections();
        secs.sort();
        secs.dedup();
        secs.len() < 2 || self.distance >= Ordinal::OMEGA
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LemmaVerdict {
    Pass { distance: Ordinal },
    Fail { distance: Ordinal },
    Inapplicable { reason: String },
}

/// One of the catalog 1-graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneGraph {
    family: OneFamily,
}

impl OneGraph {
    pub fn make_one_graph(family: OneFamily) -> Self {
        OneGraph { family }
    }

    pub fn family(&self) -> OneFamily {
        self.family
    }

    pub fn contains_zero(&self, x: &NodeId) -> bool {
        use OneFamily::*;
        match (self.family, x) {
            (DiamondChain, NodeId::DiamondJ(k, d) | NodeId::DiamondL(k, d) | NodeId::DiamondR(k, d)) => {
                *k >= 0 && *d >= 0
            }
            (OnePathOfEndlessPaths, NodeId::Segment(..)) => true,
            (LadderOfEndlessPaths, NodeId::Spoke(k, _) | NodeId::Rail(k, _)) => *k >= 0,
            (PartialLadder, NodeId::Rail(k, _) | NodeId::SpokeEnd(k)) => *k >= 0,
            (PartialLadder, NodeId::Hub) => true,
            _ => false,
        }
    }

    pub fn contains_one(&self, x: &OneNodeId) -> bool {
        match (self.family, x) {
            (OneFamily::OnePathOfEndlessPaths, OneNodeId::Index(_)) => true,
            (OneFamily::LadderOfEndlessPaths, OneNodeId::Ground) => true,
            (_, OneNodeId::Index(k)) => *k >= 0,
            (_, OneNodeId::Ground) => false,
        }
    }

    pub fn contains(&self, x: &NodeRef) -> bool {
        match x {
            NodeRef::Zero(z) => self.contains_zero(z),
            NodeRef::One(o) => self.contains_one(o),
        }
    }

    fn require(&self, x: &NodeRef) -> Result<(), TransfiniteError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(TransfiniteError::NotMember(x.to_string()))
        }
    }

    /// Nonmaximal 0-nodes stand for the 1-node containing them.
    pub fn maximal(&self, x: &NodeRef) -> NodeRef {
        match x {
            NodeRef::Zero(NodeId::SpokeEnd(k)) => NodeRef::One(OneNodeId::Index(*k)),
            other => other.clone(),
        }
    }

    pub fn is_maximal(&self, x: &NodeRef) -> bool {
        self.maximal(x) == *x
    }

    /// Canonical standard anchors for rank-0 and rank-1 galaxy questions.
    pub fn anchor_zero(&self) -> NodeId {
        match self.family {
            OneFamily::DiamondChain => NodeId::DiamondJ(0, 0),
            OneFamily::OnePathOfEndlessPaths => NodeId::Segment(0, 0),
            OneFamily::LadderOfEndlessPaths => NodeId::Rail(0, 0),
            OneFamily::PartialLadder => NodeId::Hub,
        }
    }

    pub fn anchor_one(&self) -> OneNodeId {
        OneNodeId::Index(0)
    }

    /// 0-adjacency inside the 0-graph; lazy (and infinite) for the star hub.
    pub fn zero_neighbors(&self, x: &NodeId) -> Result<Box<dyn Iterator<Item = NodeId>>, TransfiniteError> {
        self.require(&NodeRef::Zero(x.clone()))?;
        let it: Box<dyn Iterator<Item = NodeId>> = match *x {
            NodeId::DiamondJ(k, d) => {
                let mut v = vec![NodeId::DiamondL(k, d), NodeId::DiamondR(k, d)];
                if d > 0 {
                    v.extend([NodeId::DiamondL(k, d - 1), NodeId::DiamondR(k, d - 1)]);
                }
                Box::new(v.into_iter())
            }
            NodeId::DiamondL(k, d) | NodeId::DiamondR(k, d) => {
                Box::new([NodeId::DiamondJ(k, d), NodeId::DiamondJ(k, d + 1)].into_iter())
            }
            NodeId::Segment(k, i) => Box::new([NodeId::Segment(k, i - 1), NodeId::Segment(k, i + 1)].into_iter()),
            NodeId::Spoke(k, i) => Box::new([NodeId::Spoke(k, i - 1), NodeId::Spoke(k, i + 1)].into_iter()),
            NodeId::Rail(k, i) => Box::new([NodeId::Rail(k, i - 1), NodeId::Rail(k, i + 1)].into_iter()),
            NodeId::Hub => Box::new((0..).map(NodeId::SpokeEnd)),
            NodeId::SpokeEnd(_) => Box::new(std::iter::once(NodeId::Hub)),
            _ => unreachable!("membership checked"),
        };
        Ok(it)
    }

    pub fn section_of(&self, x: &NodeId) -> Result<SectionId, TransfiniteError> {
        self.require(&NodeRef::Zero(x.clone()))?;
        Ok(match *x {
            NodeId::DiamondJ(k, _) | NodeId::DiamondL(k, _) | NodeId::DiamondR(k, _) => SectionId::Chain(k),
            NodeId::Segment(k, _) => SectionId::Segment(k),
            NodeId::Spoke(k, _) => SectionId::Spoke(k),
            NodeId::Rail(k, _) => SectionId::Rail(k),
            _ => SectionId::Star,
        })
    }

    /// Sections in index order (0, 1, -1, 2, -2, ... for the two-way family).
    pub fn sections(&self) -> Box<dyn Iterator<Item = SectionId>> {
        match self.family {
            OneFamily::DiamondChain => Box::new((0..).map(SectionId::Chain)),
            OneFamily::OnePathOfEndlessPaths => Box::new(zigzag().map(SectionId::Segment)),
            OneFamily::LadderOfEndlessPaths => Box::new((0..).flat_map(|k| [SectionId::Spoke(k), SectionId::Rail(k)])),
            OneFamily::PartialLadder => Box::new(std::iter::once(SectionId::Star).chain((0..).map(SectionId::Rail))),
        }
    }

    pub fn one_nodes(&self) -> Box<dyn Iterator<Item = OneNodeId>> {
        match self.family {
            OneFamily::OnePathOfEndlessPaths => Box::new(zigzag().map(OneNodeId::Index)),
            OneFamily::LadderOfEndlessPaths => {
                Box::new(std::iter::once(OneNodeId::Ground).chain((0..).map(OneNodeId::Index)))
            }
            _ => Box::new((0..).map(OneNodeId::Index)),
        }
    }

    /// 1-nodes incident to `s`, restricted to `window` where a section has
    /// infinitely many.
    pub fn incidences(&self, s: SectionId, window: Window) -> Vec<(OneNodeId, Attach)> {
        let tip = |ray| Attach::Tip(TipId { section: s, ray });
        let ix = OneNodeId::Index;
        match (self.family, s) {
            (OneFamily::DiamondChain, SectionId::Chain(k)) => {
                vec![(ix(k), tip(RayName::LeftRay)), (ix(k + 1), tip(RayName::RightRay))]
            }
            (OneFamily::OnePathOfEndlessPaths, SectionId::Segment(k)) => {
                vec![(ix(k), tip(RayName::Down)), (ix(k + 1), tip(RayName::Up))]
            }
            (OneFamily::LadderOfEndlessPaths, SectionId::Spoke(k)) => {
                vec![(ix(k), tip(RayName::Down)), (OneNodeId::Ground, tip(RayName::Up))]
            }
            (OneFamily::LadderOfEndlessPaths | OneFamily::PartialLadder, SectionId::Rail(k)) => {
                vec![(ix(k), tip(RayName::Down)), (ix(k + 1), tip(RayName::Up))]
            }
            (OneFamily::PartialLadder, SectionId::Star) => {
                (window.lo.max(0)..=window.hi).map(|k| (ix(k), Attach::Embedded(NodeId::SpokeEnd(k)))).collect()
            }
            _ => vec![],
        }
    }

    /// Sections incident to a 1-node, with the attachment used; the ladder
    /// ground meets infinitely many and is cut to `window`.
    pub fn incident_sections(&self, x: OneNodeId, window: Window) -> Vec<(SectionId, Attach)> {
        let tip = |section, ray| Attach::Tip(TipId { section, ray });
        match (self.family, x) {
            (OneFamily::DiamondChain, OneNodeId::Index(k)) => {
                let mut v = vec![];
                if k >= 1 {
                    v.push((SectionId::Chain(k - 1), tip(SectionId::Chain(k - 1), RayName::RightRay)));
                }
                v.push((SectionId::Chain(k), tip(SectionId::Chain(k), RayName::LeftRay)));
                v
            }
            (OneFamily::OnePathOfEndlessPaths, OneNodeId::Index(k)) => vec![
                (SectionId::Segment(k - 1), tip(SectionId::Segment(k - 1), RayName::Up)),
                (SectionId::Segment(k), tip(SectionId::Segment(k), RayName::Down)),
            ],
            (OneFamily::LadderOfEndlessPaths, OneNodeId::Index(k)) => {
                let mut v = vec![
                    (SectionId::Spoke(k), tip(SectionId::Spoke(k), RayName::Down)),
                    (SectionId::Rail(k), tip(SectionId::Rail(k), RayName::Down)),
                ];
                if k >= 1 {
                    v.push((SectionId::Rail(k - 1), tip(SectionId::Rail(k - 1), RayName::Up)));
                }
                v
            }
            (OneFamily::LadderOfEndlessPaths, OneNodeId::Ground) => (window.lo.max(0)..=window.hi)
                .map(|k| (SectionId::Spoke(k), tip(SectionId::Spoke(k), RayName::Up)))
                .collect(),
            (OneFamily::PartialLadder, OneNodeId::Index(k)) => {
                let mut v = vec![
                    (SectionId::Star, Attach::Embedded(NodeId::SpokeEnd(k))),
                    (SectionId::Rail(k), tip(SectionId::Rail(k), RayName::Down)),
                ];
                if k >= 1 {
                    v.push((SectionId::Rail(k - 1), tip(SectionId::Rail(k - 1), RayName::Up)));
                }
                v
            }
            _ => vec![],
        }
    }

    pub fn one_node(&self, x: OneNodeId) -> Result<OneNode, TransfiniteError> {
        self.require(&NodeRef::One(x))?;
        let all = self.incident_sections(x, Window { lo: 0, hi: 64 });
        let mut tips = vec![];
        let mut embedded = None;
        for (_, a) in all {
            match a {
                Attach::Tip(t) => tips.push(t),
                Attach::Embedded(z) => embedded = Some(z),
            }
        }
        tips.sort();
        Ok(OneNode { id: x, tips, embedded })
    }

    /// Finite distance between two 0-nodes of the same section.
    pub fn section_distance(&self, a: &NodeId, b: &NodeId) -> Result<u64, TransfiniteError> {
        let (sa, sb) = (self.section_of(a)?, self.section_of(b)?);
        if sa != sb {
            return Err(TransfiniteError::Inapplicable(format!("{a} and {b} lie in different sections")));
        }
        let d = match (a, b) {
            (NodeId::Hub, NodeId::Hub) => 0,
            (NodeId::Hub, NodeId::SpokeEnd(_)) | (NodeId::SpokeEnd(_), NodeId::Hub) => 1,
            (NodeId::SpokeEnd(i), NodeId::SpokeEnd(j)) => {
                if i == j {
                    0
                } else {
                    2
                }
            }
            _ => {
                let (pa, pb) = (a.params(), b.params());
                if self.family == OneFamily::DiamondChain {
                    diamond_inner::<i64>(a.ctor(), &pa[1], b.ctor(), &pb[1]) as u64
                } else {
                    (pa[1] - pb[1]).unsigned_abs()
                }
            }
        };
        Ok(d)
    }

    pub fn is_boundary(&self, x: OneNodeId) -> bool {
        self.contains_one(&x) && self.incident_sections(x, Window { lo: 0, hi: 2 }).len() >= 2
    }

    /// Boundary 1-nodes in enumeration order.
    pub fn boundary_one_nodes(&self) -> impl Iterator<Item = OneNodeId> + '_ {
        self.one_nodes().filter(|x| self.is_boundary(*x))
    }

    /// Family flag: every section has finitely many incident boundary 1-nodes.
    pub fn is_locally_1_finite(&self) -> bool {
        self.family != OneFamily::PartialLadder
    }

    /// Family flag: every 1-node is 1-adjacent to only finitely many boundary
    /// 1-nodes. Fails for the ladder of endless paths, whose ground meets
    /// infinitely many sections.
    pub fn has_finite_boundary_adjacency(&self) -> bool {
        matches!(self.family, OneFamily::DiamondChain | OneFamily::OnePathOfEndlessPaths)
    }

    pub fn has_infinitely_many_boundary_nodes(&self) -> bool {
        true
    }

    pub fn is_1_wconnected(&self) -> bool {
        true
    }

    /// 1-adjacent: incident to a common section.
    pub fn one_adjacent(&self, x: OneNodeId, y: OneNodeId) -> bool {
        let idx = [x, y].iter().filter_map(|o| o.index()).collect::<Vec<_>>();
        let hi = idx.iter().copied().max().unwrap_or(0).max(0) + 1;
        let w = Window { lo: idx.iter().copied().min().unwrap_or(0) - 1, hi };
        let sx = self.incident_sections(x, w);
        let sy = self.incident_sections(y, w);
        sx.iter().any(|(s, _)| sy.iter().any(|(t, _)| s == t))
    }

    /// Finite prefix of a representative one-ended path of a tip.
    pub fn tip_ray(&self, tip: TipId, len: usize) -> Vec<NodeId> {
        match (tip.section, tip.ray) {
            (SectionId::Chain(k), ray) => (0..len as i64)
                .map(|i| {
                    let d = i / 2;
                    match (i % 2, ray) {
                        (0, _) => NodeId::DiamondJ(k, d),
                        (_, RayName::LeftRay) => NodeId::DiamondL(k, d),
                        _ => NodeId::DiamondR(k, d),
                    }
                })
                .collect(),
            (s, ray) => {
                let sign = if ray == RayName::Up { 1 } else { -1 };
                (0..len as i64)
                    .map(|i| match s {
                        SectionId::Segment(k) => NodeId::Segment(k, sign * i),
                        SectionId::Spoke(k) => NodeId::Spoke(k, sign * i),
                        _ => NodeId::Rail(s_index(s), sign * i),
                    })
                    .collect()
            }
        }
    }

    fn index_of(&self, x: &NodeRef) -> i64 {
        match x {
            NodeRef::One(OneNodeId::Index(k)) => *k,
            NodeRef::One(OneNodeId::Ground) => 0,
            NodeRef::Zero(z) => match z {
                NodeId::Hub => 0,
                _ => z.params()[0],
            },
        }
    }

    fn window_for(&self, x: &NodeRef, y: &NodeRef) -> Window {
        let (a, b) = (self.index_of(x), self.index_of(y));
        let lo = a.min(b) - 2;
        let lo = if self.family == OneFamily::OnePathOfEndlessPaths { lo } else { lo.max(0) };
        Window { lo, hi: a.max(b) + 2 }
    }

    /// Attachments of a search vertex: a query 0-node sits inside its own
    /// section, a 1-node meets each incident section.
    fn attachments(&self, v: &NodeRef, w: Window) -> Vec<(SectionId, Attach)> {
        match v {
            NodeRef::Zero(z) => {
                let s = self.section_of(z).expect("members only");
                vec![(s, Attach::Embedded(z.clone()))]
            }
            NodeRef::One(o) => self
                .incident_sections(*o, w)
                .into_iter()
                .filter(|(s, _)| w.contains(s_index(*s)) || *s == SectionId::Star)
                .collect(),
        }
    }

    fn leg_cost(&self, a: &Attach, b: &Attach) -> Result<Ordinal, TransfiniteError> {
        Ok(match (a, b) {
            (Attach::Tip(_), Attach::Tip(_)) => Ordinal::from_omega_multiple(2),
            (Attach::Tip(_), Attach::Embedded(_)) | (Attach::Embedded(_), Attach::Tip(_)) => Ordinal::OMEGA,
            (Attach::Embedded(p), Attach::Embedded(q)) => Ordinal::from_finite(self.section_distance(p, q)?),
        })
    }

    /// Ordinal walk distance between two nodes of either rank.
    pub fn wdistance(&self, x: &NodeRef, y: &NodeRef) -> Result<Ordinal, TransfiniteError> {
        Ok(self.wdistance_witness(x, y)?.distance)
    }

    /// Lexicographic Dijkstra on the section quotient, with the witness legs.
    pub fn wdistance_witness(&self, x: &NodeRef, y: &NodeRef) -> Result<WalkSummary, TransfiniteError> {
        self.require(x)?;
        self.require(y)?;
        let (src, dst) = (self.maximal(x), self.maximal(y));
        if src == dst {
            return Ok(WalkSummary { distance: Ordinal::ZERO, steps: vec![] });
        }
        let w = self.window_for(&src, &dst);
        let mut best: HashMap<NodeRef, Ordinal> = HashMap::from([(src.clone(), Ordinal::ZERO)]);
        let mut pred: HashMap<NodeRef, (NodeRef, SectionId, Ordinal)> = HashMap::new();
        let mut heap = BinaryHeap::from([Reverse((Ordinal::ZERO, src.clone()))]);
        while let Some(Reverse((d, v))) = heap.pop() {
            if best.get(&v).is_some_and(|b| *b < d) {
                continue;
            }
            if v == dst {
                let mut steps = vec![];
                let mut cur = v;
                while let Some((p, s, len)) = pred.get(&cur) {
                    steps.push(WalkStep { from: p.clone(), to: cur.clone(), section: *s, length: *len });
                    cur = p.clone();
                }
                steps.reverse();
                return Ok(WalkSummary { distance: d, steps });
            }
            for (s, a) in self.attachments(&v, w) {
                let mut parties: Vec<(NodeRef, Attach)> =
                    self.incidences(s, w).into_iter().map(|(o, at)| (NodeRef::One(o), at)).collect();
                if let NodeRef::Zero(t) = &dst {
                    if self.section_of(t)? == s {
                        parties.push((dst.clone(), Attach::Embedded(t.clone())));
                    }
                }
                for (u, b) in parties {
                    if u == v {
                        continue;
                    }
                    let leg = self.leg_cost(&a, &b)?;
                    let nd = d.natural_sum(leg)?;
                    if best.get(&u).is_none_or(|old| nd < *old) {
                        best.insert(u.clone(), nd);
                        pred.insert(u.clone(), (v.clone(), s, leg));
                        heap.push(Reverse((nd, u)));
                    }
                }
            }
        }
        Err(TransfiniteError::Unreachable(x.to_string(), y.to_string()))
    }

    /// A connecting walk between two 1-nodes that stays inside one section.
    pub fn walk_within_section(&self, s: SectionId, x: OneNodeId, y: OneNodeId) -> Option<Ordinal> {
        let (a, b) = (x.index().unwrap_or(0), y.index().unwrap_or(0));
        let inc = self.incidences(s, Window { lo: a.min(b) - 1, hi: a.max(b) + 1 });
        let ax = inc.iter().find(|(o, _)| *o == x)?;
        let ay = inc.iter().find(|(o, _)| *o == y)?;
        if x == y {
            return Some(Ordinal::ZERO);
        }
        self.leg_cost(&ax.1, &ay.1).ok()
    }

    /// Distance of at least ω between two 1-wconnected 1-nodes that share no
    /// section.
    pub fn check_lemma_10_2(&self, x: OneNodeId, y: OneNodeId) -> Result<LemmaVerdict, TransfiniteError> {
        if self.one_adjacent(x, y) {
            return Ok(LemmaVerdict::Inapplicable { reason: format!("{x} and {y} are 1-adjacent") });
        }
        let d = self.wdistance(&NodeRef::One(x), &NodeRef::One(y))?;
        Ok(if d >= Ordinal::OMEGA { LemmaVerdict::Pass { distance: d } } else { LemmaVerdict::Fail { distance: d } })
    }

    /// Closed-form walk distance; agrees with [`OneGraph::wdistance`].
    pub fn closed_form_wdistance(&self, x: &NodeRef, y: &NodeRef) -> Result<Ordinal, TransfiniteError> {
        self.require(x)?;
        self.require(y)?;
        let (a, b) = (self.maximal(x), self.maximal(y));
        if a == b {
            return Ok(Ordinal::ZERO);
        }
        let (o, f) = rank1_distance::<i64>(self.family, a.ctor(), &a.params(), b.ctor(), &b.params())?;
        Ok(Ordinal::new(o as u64, f as u64))
    }

    /// A random maximal node with parameters of magnitude at most `radius`.
    pub fn random_node<R: Rng>(&self, rng: &mut R, radius: i64) -> NodeRef {
        let k = rng.gen_range(0..=radius);
        let i = rng.gen_range(-radius..=radius);
        let one = rng.gen_ratio(1, 3);
        match self.family {
            OneFamily::DiamondChain if one => NodeRef::One(OneNodeId::Index(k)),
            OneFamily::DiamondChain => {
                let d = i.abs();
                match rng.gen_range(0..3) {
                    0 => NodeId::DiamondJ(k, d).into(),
                    1 => NodeId::DiamondL(k, d).into(),
                    _ => NodeId::DiamondR(k, d).into(),
                }
            }
            OneFamily::OnePathOfEndlessPaths if one => NodeRef::One(OneNodeId::Index(i)),
            OneFamily::OnePathOfEndlessPaths => NodeId::Segment(rng.gen_range(-radius..=radius), i).into(),
            OneFamily::LadderOfEndlessPaths if one => {
                if rng.gen_ratio(1, 5) {
                    NodeRef::One(OneNodeId::Ground)
                } else {
                    NodeRef::One(OneNodeId::Index(k))
                }
            }
            OneFamily::LadderOfEndlessPaths => {
                if rng.gen_bool(0.5) {
                    NodeId::Spoke(k, i).into()
                } else {
                    NodeId::Rail(k, i).into()
                }
            }
            OneFamily::PartialLadder if one => NodeRef::One(OneNodeId::Index(k)),
            OneFamily::PartialLadder => {
                if rng.gen_ratio(1, 6) {
                    NodeId::Hub.into()
                } else {
                    NodeId::Rail(k, i).into()
                }
            }
        }
    }

    /// Single-source 0-distances on the truncation `norm <= radius` of one
    /// section; the hub's infinite star is cut at the radius as well.
    pub fn truncated_section_bfs(&self, x: &NodeId, radius: i64) -> Result<BTreeMap<NodeId, u64>, TransfiniteError> {
        let mut dist = BTreeMap::from([(x.clone(), 0u64)]);
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            let nbrs: Vec<NodeId> = if u == NodeId::Hub {
                (0..=radius).map(NodeId::SpokeEnd).collect()
            } else {
                self.zero_neighbors(&u)?.filter(|v| v.norm() <= radius).collect()
            };
            for v in nbrs {
                if self.contains_zero(&v) && !dist.contains_key(&v) {
                    dist.insert(v.clone(), du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }
}

fn s_index(s: SectionId) -> i64 {
    match s {
        SectionId::Chain(k) | SectionId::Segment(k) | SectionId::Spoke(k) | SectionId::Rail(k) => k,
        SectionId::Star => 0,
    }
}

fn zigzag() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|k| [k, -k]))
}

/// In-chain distance of two diamond nodes given constructor and depth:
/// levels `J = 2d`, `L/R = 2d+1`, except `L` and `R` of one diamond are two
/// apart.
fn diamond_inner<T: Arith>(ca: Ctor, da: &T, cb: Ctor, db: &T) -> T {
    let level = |c: Ctor, d: &T| if c == Ctor::DiamondJ { d.scale(2) } else { d.scale(2).add(&T::lit(1)) };
    let plain = level(ca, da).sub(&level(cb, db)).abs();
    let across = matches!((ca, cb), (Ctor::DiamondL, Ctor::DiamondR) | (Ctor::DiamondR, Ctor::DiamondL));
    if across {
        T::select(&da.eq_to(db), T::lit(2), plain)
    } else {
        plain
    }
}

enum LadderEnd<T> {
    X(T),
    G,
}

fn ladder_d<T: Arith>(a: &LadderEnd<T>, b: &LadderEnd<T>) -> T {
    match (a, b) {
        (LadderEnd::G, LadderEnd::G) => T::lit(0),
        (LadderEnd::G, LadderEnd::X(_)) | (LadderEnd::X(_), LadderEnd::G) => T::lit(1),
        (LadderEnd::X(p), LadderEnd::X(q)) => {
            let d = p.sub(q).abs();
            let far = T::select(&d.eq_to(&T::lit(1)), T::lit(1), T::lit(2));
            T::select(&d.eq_to(&T::lit(0)), T::lit(0), far)
        }
    }
}

fn min_all<T: Arith>(xs: Vec<T>) -> T {
    let mut it = xs.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |m, x| m.min_with(&x))
}

/// Closed-form walk distance `(ω-coefficient, finite part)` between two
/// maximal catalog nodes given by constructor and parameters.
pub fn rank1_distance<T: Arith>(
    family: OneFamily,
    a: Ctor,
    pa: &[T],
    b: Ctor,
    pb: &[T],
) -> Result<(T, T), TransfiniteError> {
    use Ctor::*;
    let lit = T::lit;
    let bad = || TransfiniteError::NotMember(format!("{a:?}/{b:?} in {family:?}"));
    // nonmaximal spoke ends stand for their 1-nodes
    let (a, b) = (if a == SpokeEnd { One } else { a }, if b == SpokeEnd { One } else { b });
    match family {
        OneFamily::DiamondChain | OneFamily::OnePathOfEndlessPaths => {
            let zero_ok = |c: Ctor| match family {
                OneFamily::DiamondChain => matches!(c, DiamondJ | DiamondL | DiamondR),
                _ => c == Segment,
            };
            match (a, b) {
                (One, One) => Ok((pa[0].sub(&pb[0]).abs().scale(2), lit(0))),
                (One, z) if zero_ok(z) => {
                    let (k, c) = (&pa[0], &pb[0]);
                    let up = c.sub(k).scale(2).add(&lit(1));
                    let down = k.sub(&lit(1)).sub(c).scale(2).add(&lit(1));
                    Ok((T::select(&k.le(c), up, down), lit(0)))
                }
                (z, One) if zero_ok(z) => rank1_distance(family, b, pb, a, pa),
                (za, zb) if zero_ok(za) && zero_ok(zb) => {
                    let same = pa[0].eq_to(&pb[0]);
                    let inner = if family == OneFamily::DiamondChain {
                        diamond_inner(za, &pa[1], zb, &pb[1])
                    } else {
                        pa[1].sub(&pb[1]).abs()
                    };
                    let across = pa[0].sub(&pb[0]).abs().scale(2);
                    Ok((T::select(&same, lit(0), across), T::select(&same, inner, lit(0))))
                }
                _ => Err(bad()),
            }
        }
        OneFamily::LadderOfEndlessPaths => {
            let end = |c: Ctor, p: &[T]| -> Option<LadderEnd<T>> {
                match c {
                    One => Some(LadderEnd::X(p[0].clone())),
                    OneGround => Some(LadderEnd::G),
                    _ => None,
                }
            };
            let ends = |c: Ctor, p: &[T]| -> Option<[LadderEnd<T>; 2]> {
                match c {
                    Spoke => Some([LadderEnd::X(p[0].clone()), LadderEnd::G]),
                    Rail => Some([LadderEnd::X(p[0].clone()), LadderEnd::X(p[0].add(&lit(1)))]),
                    _ => None,
                }
            };
            if let (Some(x), Some(y)) = (end(a, pa), end(b, pb)) {
                return Ok((ladder_d(&x, &y).scale(2), lit(0)));
            }
            if let (Some(es), Some(y)) = (ends(a, pa), end(b, pb)) {
                let m = min_all(es.iter().map(|e| ladder_d(e, &y)).collect());
                return Ok((m.scale(2).add(&lit(1)), lit(0)));
            }
            if end(a, pa).is_some() && ends(b, pb).is_some() {
                return rank1_distance(family, b, pb, a, pa);
            }
            let (Some(ea), Some(eb)) = (ends(a, pa), ends(b, pb)) else { return Err(bad()) };
            let m = min_all(ea.iter().flat_map(|x| eb.iter().map(move |y| ladder_d(x, y))).collect());
            let across = m.scale(2).add(&lit(2));
            if a != b {
                return Ok((across, lit(0)));
            }
            let same = pa[0].eq_to(&pb[0]);
            let inner = pa[1].sub(&pb[1]).abs();
            Ok((T::select(&same, lit(0), across), T::select(&same, inner, lit(0))))
        }
        OneFamily::PartialLadder => match (a, b) {
            (Hub, Hub) => Ok((lit(0), lit(0))),
            (Hub, One) => Ok((lit(0), lit(1))),
            (One, One) => Ok((lit(0), T::select(&pa[0].eq_to(&pb[0]), lit(0), lit(2)))),
            (Hub, Rail) => Ok((lit(1), lit(1))),
            (One, Rail) => {
                let (m, k) = (&pa[0], &pb[0]);
                let near = m.eq_to(k).or(&m.eq_to(&k.add(&lit(1))));
                Ok((lit(1), T::select(&near, lit(0), lit(2))))
            }
            (Rail, Rail) => {
                let dk = pa[0].sub(&pb[0]).abs();
                let same = dk.eq_to(&lit(0));
                let inner = pa[1].sub(&pb[1]).abs();
                let far = T::select(&dk.eq_to(&lit(1)), lit(0), lit(2));
                Ok((T::select(&same, lit(0), lit(2)), T::select(&same, inner, far)))
            }
            (One | Rail, Hub) | (Rail, One) => rank1_distance(family, b, pb, a, pa),
            _ => Err(bad()),
        },
    }
}

#[cfg(test)]
mod tests;
