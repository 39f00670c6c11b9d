//! Finitely presented infinite 0-graphs.
//!
//! Graphs are adjacency oracles over structured [`NodeId`] terms. Distances
//! come from per-family closed forms where installed, otherwise from a
//! budgeted bidirectional breadth-first search that reports
//! [`Distance::Exhausted`] instead of guessing.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Arith;
use crate::node::{Ctor, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {0} is not a member of the graph")]
    NotMember(String),
    #[error("edit list disconnects the graph")]
    Disconnected,
    #[error("invalid graph parameters: {0}")]
    Validation(String),
    #[error("unsupported oracle: {0}")]
    Unsupported(String),
    #[error("search budget exhausted")]
    Exhausted,
}

pub type Point = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EditOp {
    Add,
    Remove,
}

/// A branch insertion or deletion between two grid nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edit {
    pub op: EditOp,
    pub a: Point,
    pub b: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    EndlessPath,
    OneEndedPath,
    Ladder,
    LadderWithRay,
    #[serde(rename = "grid2d")]
    Grid2D,
    PerturbedGrid,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::EndlessPath,
        FamilyKind::OneEndedPath,
        FamilyKind::Ladder,
        FamilyKind::LadderWithRay,
        FamilyKind::Grid2D,
        FamilyKind::PerturbedGrid,
    ];

    /// Ladder-type graphs have a ground node of infinite degree.
    pub fn locally_finite(self) -> bool {
        !matches!(self, FamilyKind::Ladder | FamilyKind::LadderWithRay)
    }

    pub fn has_closed_form(self) -> bool {
        self != FamilyKind::PerturbedGrid
    }

    pub fn anchor(self) -> NodeId {
        match self {
            FamilyKind::EndlessPath | FamilyKind::OneEndedPath => NodeId::Path(0),
            FamilyKind::Ladder | FamilyKind::LadderWithRay => NodeId::Ground,
            FamilyKind::Grid2D | FamilyKind::PerturbedGrid => NodeId::Grid(0, 0),
        }
    }

    /// Uniform bound on all distances, when the family has one.
    pub fn diameter(self) -> Option<u64> {
        match self {
            FamilyKind::Ladder => Some(2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distance {
    Exact(u64),
    Exhausted,
}

impl Distance {
    pub fn exact(self) -> Option<u64> {
        match self {
            Distance::Exact(d) => Some(d),
            Distance::Exhausted => None,
        }
    }
}

fn norm_pair(a: Point, b: Point) -> (Point, Point) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn manhattan(a: Point, b: Point) -> i64 {
    (a.0 - b.0).abs() + (a.1 - b.1).abs()
}

/// Finite branch edits applied to the 2-dimensional grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    edits: Vec<Edit>,
    added: BTreeMap<Point, BTreeSet<Point>>,
    removed: BTreeSet<(Point, Point)>,
    /// Edit bounding box grown by a one-branch collar: `(min, max)` corners.
    collar: Option<(Point, Point)>,
}

impl Perturbation {
    pub fn new(edits: Vec<Edit>) -> Result<Self, GraphError> {
        let mut p =
            Perturbation { edits: edits.clone(), added: BTreeMap::new(), removed: BTreeSet::new(), collar: None };
        for e in &edits {
            if e.a == e.b {
                return Err(GraphError::Validation(format!("self-loop edit at {:?}", e.a)));
            }
            let present = p.has_branch(e.a, e.b);
            let key = norm_pair(e.a, e.b);
            match e.op {
                EditOp::Add => {
                    if present {
                        return Err(GraphError::Validation(format!("branch {:?}-{:?} already present", e.a, e.b)));
                    }
                    if manhattan(e.a, e.b) == 1 {
                        p.removed.remove(&key);
                    } else {
                        p.added.entry(e.a).or_default().insert(e.b);
                        p.added.entry(e.b).or_default().insert(e.a);
                    }
                }
                EditOp::Remove => {
                    if !present {
                        return Err(GraphError::Validation(format!("branch {:?}-{:?} absent", e.a, e.b)));
                    }
                    if manhattan(e.a, e.b) == 1 {
                        p.removed.insert(key);
                    } else {
                        p.added.get_mut(&e.a).map(|s| s.remove(&e.b));
                        p.added.get_mut(&e.b).map(|s| s.remove(&e.a));
                    }
                }
            }
        }
        p.added.retain(|_, s| !s.is_empty());
        if !edits.is_empty() {
            let pts = edits.iter().flat_map(|e| [e.a, e.b]);
            let (mut lo, mut hi) = ((i64::MAX, i64::MAX), (i64::MIN, i64::MIN));
            for (x, y) in pts {
                lo = (lo.0.min(x), lo.1.min(y));
                hi = (hi.0.max(x), hi.1.max(y));
            }
            p.collar = Some(((lo.0 - 1, lo.1 - 1), (hi.0 + 1, hi.1 + 1)));
        }
        p.check_connected()?;
        Ok(p)
    }

    pub fn edits(&self) -> &[Edit] {
        &self.edits
    }

    fn has_branch(&self, a: Point, b: Point) -> bool {
        if manhattan(a, b) == 1 {
            !self.removed.contains(&norm_pair(a, b))
        } else {
            self.added.get(&a).is_some_and(|s| s.contains(&b))
        }
    }

    fn neighbors(&self, a: Point) -> Vec<Point> {
        let mut out: Vec<Point> = [(a.0 + 1, a.1), (a.0 - 1, a.1), (a.0, a.1 + 1), (a.0, a.1 - 1)]
            .into_iter()
            .filter(|&b| !self.removed.contains(&norm_pair(a, b)))
            .collect();
        if let Some(s) = self.added.get(&a) {
            out.extend(s.iter().copied());
        }
        out
    }

    fn in_collar(&self, p: Point) -> bool {
        match self.collar {
            Some((lo, hi)) => p.0 >= lo.0 && p.0 <= hi.0 && p.1 >= lo.1 && p.1 <= hi.1,
            None => false,
        }
    }

    /// Outside the collar box the graph is the pristine grid and its ring is
    /// untouched, so global connectivity is equivalent to connectivity of the
    /// box-induced subgraph.
    fn check_connected(&self) -> Result<(), GraphError> {
        let Some((lo, hi)) = self.collar else { return Ok(()) };
        let total = ((hi.0 - lo.0 + 1) * (hi.1 - lo.1 + 1)) as usize;
        let mut seen = BTreeSet::from([lo]);
        let mut queue = VecDeque::from([lo]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if self.in_collar(v) && seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        if seen.len() == total {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// A constant `C` with `|d_G(x,y) - d_grid(x,y)| <= C` for all node pairs:
    /// added branches save at most their grid length minus one, and a removed
    /// branch costs at most a detour around the collar ring.
    pub fn distortion_bound(&self) -> i64 {
        let saving: i64 = self
            .added
            .iter()
            .flat_map(|(a, s)| s.iter().filter(move |b| a < *b).map(move |b| manhattan(*a, *b) - 1))
            .sum();
        let detour = match self.collar {
            Some((lo, hi)) => 2 * ((hi.0 - lo.0) + (hi.1 - lo.1)),
            None => 0,
        };
        saving.max(detour)
    }

    pub fn radius(&self) -> i64 {
        match self.collar {
            Some((lo, hi)) => [lo.0, lo.1, hi.0, hi.1].iter().map(|v| v.abs()).max().unwrap_or(0),
            None => 0,
        }
    }
}

/// One of the catalog graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInstance {
    kind: FamilyKind,
    perturbation: Option<Perturbation>,
}

pub type Neighbors<'a> = Box<dyn Iterator<Item = NodeId> + 'a>;

impl GraphInstance {
    pub fn make_family(kind: FamilyKind, edits: Vec<Edit>) -> Result<Self, GraphError> {
        match kind {
            FamilyKind::PerturbedGrid => Ok(GraphInstance { kind, perturbation: Some(Perturbation::new(edits)?) }),
            _ if !edits.is_empty() => Err(GraphError::Validation(format!("{kind:?} takes no edits"))),
            _ => Ok(GraphInstance { kind, perturbation: None }),
        }
    }

    pub fn new(kind: FamilyKind) -> Self {
        Self::make_family(kind, vec![]).expect("unperturbed families are always valid")
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn perturbation(&self) -> Option<&Perturbation> {
        self.perturbation.as_ref()
    }

    pub fn locally_finite(&self) -> bool {
        self.kind.locally_finite()
    }

    pub fn anchor(&self) -> NodeId {
        self.kind.anchor()
    }

    pub fn contains(&self, x: &NodeId) -> bool {
        use FamilyKind::*;
        match (self.kind, x) {
            (EndlessPath, NodeId::Path(_)) => true,
            (OneEndedPath, NodeId::Path(k)) => *k >= 0,
            (Ladder | LadderWithRay, NodeId::Rung(k)) => *k >= 0,
            (Ladder | LadderWithRay, NodeId::Ground) => true,
            (LadderWithRay, NodeId::Ray(j)) => *j >= 1,
            (Grid2D | PerturbedGrid, NodeId::Grid(..)) => true,
            _ => false,
        }
    }

    fn require(&self, x: &NodeId) -> Result<(), GraphError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GraphError::NotMember(x.to_string()))
        }
    }

    /// Lazy neighbor stream; infinite for the ladder ground.
    pub fn neighbors(&self, x: &NodeId) -> Result<Neighbors<'_>, GraphError> {
        self.require(x)?;
        use FamilyKind::*;
        let it: Neighbors<'_> = match (self.kind, x) {
            (EndlessPath, &NodeId::Path(k)) => Box::new([NodeId::Path(k - 1), NodeId::Path(k + 1)].into_iter()),
            (OneEndedPath, &NodeId::Path(k)) => {
                let mut v = vec![NodeId::Path(k + 1)];
                if k > 0 {
                    v.insert(0, NodeId::Path(k - 1));
                }
                Box::new(v.into_iter())
            }
            (Ladder | LadderWithRay, &NodeId::Rung(k)) => {
                let mut v = vec![NodeId::Ground, NodeId::Rung(k + 1)];
                if k > 0 {
                    v.insert(1, NodeId::Rung(k - 1));
                }
                Box::new(v.into_iter())
            }
            (Ladder, NodeId::Ground) => Box::new((0..).map(NodeId::Rung)),
            (LadderWithRay, NodeId::Ground) => Box::new(std::iter::once(NodeId::Ray(1)).chain((0..).map(NodeId::Rung))),
            (LadderWithRay, &NodeId::Ray(j)) => {
                let back = if j == 1 { NodeId::Ground } else { NodeId::Ray(j - 1) };
                Box::new([back, NodeId::Ray(j + 1)].into_iter())
            }
            (Grid2D, &NodeId::Grid(k, l)) => Box::new(
                [NodeId::Grid(k + 1, l), NodeId::Grid(k - 1, l), NodeId::Grid(k, l + 1), NodeId::Grid(k, l - 1)]
                    .into_iter(),
            ),
            (PerturbedGrid, &NodeId::Grid(k, l)) => {
                let p = self.perturbation.as_ref().expect("perturbed grid carries its edits");
                Box::new(p.neighbors((k, l)).into_iter().map(|(a, b)| NodeId::Grid(a, b)))
            }
            _ => unreachable!("membership checked"),
        };
        Ok(it)
    }

    /// Neighbors inside the truncation `norm <= radius`; always finite.
    pub fn truncated_neighbors(&self, x: &NodeId, radius: i64) -> Result<Vec<NodeId>, GraphError> {
        if *x == NodeId::Ground {
            self.require(x)?;
            let mut v: Vec<NodeId> = Vec::new();
            if self.kind == FamilyKind::LadderWithRay && radius >= 1 {
                v.push(NodeId::Ray(1));
            }
            v.extend((0..=radius).map(NodeId::Rung));
            return Ok(v);
        }
        Ok(self.neighbors(x)?.filter(|y| y.norm() <= radius).collect())
    }

    /// Closed-form distance; unsupported for the perturbed grid.
    pub fn closed_form_distance(&self, x: &NodeId, y: &NodeId) -> Result<u64, GraphError> {
        self.require(x)?;
        self.require(y)?;
        let d = catalog_distance::<i64>(self.kind, x.ctor(), &x.params(), y.ctor(), &y.params())?;
        Ok(d as u64)
    }

    /// Exact distance: the closed form when installed, otherwise a
    /// bidirectional breadth-first search capped at `budget` expansions.
    pub fn distance(&self, x: &NodeId, y: &NodeId, budget: u64) -> Result<Distance, GraphError> {
        if self.kind.has_closed_form() {
            return self.closed_form_distance(x, y).map(Distance::Exact);
        }
        self.bfs_distance(x, y, budget)
    }

    pub fn bfs_distance(&self, x: &NodeId, y: &NodeId, budget: u64) -> Result<Distance, GraphError> {
        self.require(x)?;
        self.require(y)?;
        if x == y {
            return Ok(Distance::Exact(0));
        }
        let mut dist = [HashMap::from([(x.clone(), 0u64)]), HashMap::from([(y.clone(), 0u64)])];
        let mut frontier = [vec![x.clone()], vec![y.clone()]];
        let mut expansions = 0u64;
        loop {
            let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
            if frontier[side].is_empty() {
                return Ok(Distance::Exhausted);
            }
            let mut next = Vec::new();
            let mut best: Option<u64> = None;
            for u in std::mem::take(&mut frontier[side]) {
                let du = dist[side][&u];
                for v in self.neighbors(&u)? {
                    expansions += 1;
                    if expansions > budget {
                        return Ok(Distance::Exhausted);
                    }
                    if dist[side].contains_key(&v) {
                        continue;
                    }
                    if let Some(dv) = dist[1 - side].get(&v) {
                        let cand = du + 1 + dv;
                        best = Some(best.map_or(cand, |b| b.min(cand)));
                    }
                    dist[side].insert(v.clone(), du + 1);
                    next.push(v);
                }
            }
            if let Some(b) = best {
                return Ok(Distance::Exact(b));
            }
            frontier[side] = next;
        }
    }

    /// Single-source distances on the truncation `norm <= radius`.
    pub fn truncated_bfs(&self, x: &NodeId, radius: i64) -> Result<HashMap<NodeId, u64>, GraphError> {
        self.require(x)?;
        let mut dist = HashMap::from([(x.clone(), 0u64)]);
        let mut queue = VecDeque::from([x.clone()]);
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            for v in self.truncated_neighbors(&u, radius)? {
                if !dist.contains_key(&v) {
                    dist.insert(v.clone(), du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Sample-level check of the finitely-dispersed property: every pairwise
    /// distance within `sample` is at most `k`.
    pub fn is_finitely_dispersed(&self, sample: &[NodeId], k: u64, budget: u64) -> Result<bool, GraphError> {
        for (i, a) in sample.iter().enumerate() {
            for b in &sample[i + 1..] {
                match self.distance(a, b, budget)? {
                    Distance::Exact(d) if d <= k => {}
                    Distance::Exact(_) => return Ok(false),
                    Distance::Exhausted => return Err(GraphError::Exhausted),
                }
            }
        }
        Ok(true)
    }

    /// A random member node with parameters of magnitude at most `radius`.
    pub fn random_node<R: Rng>(&self, rng: &mut R, radius: i64) -> NodeId {
        use FamilyKind::*;
        match self.kind {
            EndlessPath => NodeId::Path(rng.gen_range(-radius..=radius)),
            OneEndedPath => NodeId::Path(rng.gen_range(0..=radius)),
            Ladder => {
                if rng.gen_ratio(1, 8) {
                    NodeId::Ground
                } else {
                    NodeId::Rung(rng.gen_range(0..=radius))
                }
            }
            LadderWithRay => match rng.gen_range(0..8) {
                0 => NodeId::Ground,
                1..=3 => NodeId::Ray(rng.gen_range(1..=radius.max(1))),
                _ => NodeId::Rung(rng.gen_range(0..=radius)),
            },
            Grid2D | PerturbedGrid => NodeId::Grid(rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius)),
        }
    }
}

/// Closed-form distance between two catalog nodes given by constructor and
/// parameters, generic so it can be evaluated on eventual forms.
pub fn catalog_distance<T: Arith>(kind: FamilyKind, a: Ctor, pa: &[T], b: Ctor, pb: &[T]) -> Result<T, GraphError> {
    use Ctor::*;
    let bad = || GraphError::NotMember(format!("{a:?}/{b:?} in {kind:?}"));
    let one = || T::lit(1);
    match kind {
        FamilyKind::EndlessPath | FamilyKind::OneEndedPath => match (a, b) {
            (Path, Path) => Ok(pa[0].sub(&pb[0]).abs()),
            _ => Err(bad()),
        },
        FamilyKind::Grid2D => match (a, b) {
            (Grid, Grid) => Ok(pa[0].sub(&pb[0]).abs().add(&pa[1].sub(&pb[1]).abs())),
            _ => Err(bad()),
        },
        FamilyKind::Ladder | FamilyKind::LadderWithRay => {
            let ray_ok = kind == FamilyKind::LadderWithRay;
            match (a, b) {
                (Ground, Ground) => Ok(T::lit(0)),
                (Ground, Rung) | (Rung, Ground) => Ok(one()),
                (Rung, Rung) => {
                    let d = pa[0].sub(&pb[0]).abs();
                    let far = T::select(&d.eq_to(&one()), one(), T::lit(2));
                    Ok(T::select(&d.eq_to(&T::lit(0)), T::lit(0), far))
                }
                (Ray, Ray) if ray_ok => Ok(pa[0].sub(&pb[0]).abs()),
                (Ray, Ground) if ray_ok => Ok(pa[0].clone()),
                (Ground, Ray) if ray_ok => Ok(pb[0].clone()),
                (Ray, Rung) if ray_ok => Ok(pa[0].add(&one())),
                (Rung, Ray) if ray_ok => Ok(pb[0].add(&one())),
                _ => Err(bad()),
            }
        }
        FamilyKind::PerturbedGrid => Err(GraphError::Unsupported("perturbed grid has no closed form".into())),
    }
}
