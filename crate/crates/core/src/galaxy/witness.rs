//! Constructive witnesses of galaxies outside the principal one.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use super::GalaxyError;
use crate::graph::{FamilyKind, GraphInstance};
use crate::node::{Ctor, NodeId, NodeRef, OneNodeId};
use crate::transfinite::{OneGraph, Window};
use crate::ultrapower::hypernode::Repr;
use crate::ultrapower::{Hypernode, IndexSequence, SeqClass, Space, DEFAULT_HORIZON};

/// Ray entries computed before fitting a closed form.
const RAY_HORIZON: usize = 128;
/// Depth of the geodesic continuation required of every chosen node.
const LOOKAHEAD: u32 = 24;
/// Layers of boundary 1-nodes computed for the rank-1 witness.
const LAYERS: usize = 64;

/// Express computed values as an eventually affine sequence, with the
/// irregular prefix kept verbatim.
fn fit(values: &[i64]) -> Option<IndexSequence> {
    let h = values.len() - 1;
    let slope = values[h] - values[h - 1];
    let offset = values[h] - slope * h as i64;
    let start = (0..=h).rev().take_while(|&n| values[n] == slope * n as i64 + offset).last()?;
    if start > h / 2 {
        return None;
    }
    let tail = if slope == 0 { IndexSequence::Constant(offset) } else { IndexSequence::Affine(slope, offset) };
    if start == 0 {
        return Some(tail);
    }
    let class = match slope {
        s if s > 0 => SeqClass::MonotoneUnbounded,
        0 => SeqClass::Bounded(values.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)),
        _ => return None,
    };
    Some(IndexSequence::explicit(values[..start].to_vec(), tail, class))
}

fn fit_all(ctor: Ctor, rows: &[Vec<i64>]) -> Result<Vec<IndexSequence>, GalaxyError> {
    (0..ctor.arity())
        .map(|i| {
            let col: Vec<i64> = rows.iter().map(|r| r[i]).collect();
            fit(&col).ok_or_else(|| {
                GalaxyError::Construction(format!("parameter {i} is not eventually affine on the computed range"))
            })
        })
        .collect()
}

/// A one-ended geodesic ray from `x0`, as a hypernode: `d(x_n, x0) = n`.
/// Each step takes the least neighbor (in canonical order) one shell further
/// out that still has a geodesic continuation.
pub fn konig_ray_witness(g: &GraphInstance, x0: &NodeId) -> Result<Hypernode, GalaxyError> {
    if !g.locally_finite() {
        return Err(GalaxyError::Inapplicable(format!("{:?} is not locally finite", g.kind())));
    }
    let slack = g.perturbation().map_or(0, |p| p.distortion_bound() + p.radius());
    let radius = x0.norm() + RAY_HORIZON as i64 + LOOKAHEAD as i64 + slack + 2;
    let dist = g.truncated_bfs(x0, radius).map_err(crate::ultrapower::UltraError::from)?;
    let nbrs = |v: &NodeId| -> Vec<NodeId> { g.truncated_neighbors(v, radius).unwrap_or_default() };
    let mut dead: HashSet<(NodeId, u32)> = HashSet::new();
    fn extendable(
        v: &NodeId,
        depth: u32,
        dist: &HashMap<NodeId, u64>,
        nbrs: &dyn Fn(&NodeId) -> Vec<NodeId>,
        dead: &mut HashSet<(NodeId, u32)>,
    ) -> bool {
        if depth == 0 {
            return true;
        }
        if dead.contains(&(v.clone(), depth)) {
            return false;
        }
        let dv = dist[v];
        let ok = nbrs(v)
            .iter()
            .filter(|w| dist.get(*w) == Some(&(dv + 1)))
            .any(|w| extendable(w, depth - 1, dist, nbrs, dead));
        if !ok {
            dead.insert((v.clone(), depth));
        }
        ok
    }
    let mut path = vec![x0.clone()];
    for n in 0..RAY_HORIZON as u64 {
        let cur = path.last().expect("nonempty").clone();
        let mut cands: Vec<NodeId> = nbrs(&cur).into_iter().filter(|w| dist.get(w) == Some(&(n + 1))).collect();
        cands.sort_by_key(|w| NodeRef::Zero(w.clone()).canonical_key());
        let next = cands
            .into_iter()
            .find(|w| extendable(w, LOOKAHEAD, &dist, &nbrs, &mut dead))
            .ok_or_else(|| GalaxyError::Construction(format!("no geodesic continuation from {cur}")))?;
        path.push(next);
    }
    let rows: Vec<Vec<i64>> = path.iter().map(|v| v.params()).collect();
    let params = fit_all(x0.ctor(), &rows)?;
    let space = Arc::new(Space::Zero(g.clone()));
    Ok(Hypernode::new(space, Repr::Term { ctor: x0.ctor(), params }, RAY_HORIZON as u64)?)
}

fn one_neighbors(g: &OneGraph, x: OneNodeId) -> Vec<OneNodeId> {
    let k = x.index().unwrap_or(0);
    let w = Window { lo: k - 4, hi: k + 4 };
    let mut out: Vec<OneNodeId> = g
        .incident_sections(x, w)
        .into_iter()
        .flat_map(|(s, _)| g.incidences(s, w))
        .map(|(y, _)| y)
        .filter(|y| *y != x)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A 1-hypernode `⟨x_{m_k}¹⟩` of boundary 1-nodes with `d(x0, x_{m_k}) >= ω·k`:
/// `x_{m_k}` is the least boundary 1-node `k` section-steps away from `x0`.
pub fn boundary_ray_witness(g: &OneGraph, x0: OneNodeId) -> Result<Hypernode, GalaxyError> {
    let flags = [
        (g.is_locally_1_finite(), "locally 1-finite"),
        (g.is_1_wconnected(), "1-wconnected"),
        (g.has_infinitely_many_boundary_nodes(), "infinitely many boundary 1-nodes"),
        (g.has_finite_boundary_adjacency(), "finitely many boundary 1-nodes 1-adjacent to each 1-node"),
    ];
    if let Some((_, name)) = flags.iter().find(|(ok, _)| !ok) {
        return Err(GalaxyError::Inapplicable(format!("{:?} is not {name}", g.family())));
    }
    if !g.contains_one(&x0) {
        return Err(GalaxyError::Inapplicable(format!("x1:{x0:?} is not a 1-node")));
    }
    let mut seen: HashSet<OneNodeId> = HashSet::from([x0]);
    let mut layer = vec![x0];
    let mut picks = vec![x0];
    for k in 1..=LAYERS {
        let next: Vec<OneNodeId> =
            layer.iter().flat_map(|x| one_neighbors(g, *x)).filter(|y| seen.insert(*y)).collect();
        let pick = next
            .iter()
            .filter(|y| g.is_boundary(**y))
            .min_by_key(|y| NodeRef::One(**y).canonical_key())
            .copied()
            .ok_or_else(|| GalaxyError::Construction(format!("no boundary 1-node in layer {k}")))?;
        let d = g.wdistance(&x0.into(), &pick.into()).map_err(crate::ultrapower::UltraError::from)?;
        if d.omega_coeff() < k as u64 {
            return Err(GalaxyError::Construction(format!("layer {k} pick x1:{pick:?} is only {d} away")));
        }
        picks.push(pick);
        layer = next;
    }
    let rows: Vec<Vec<i64>> = picks.iter().map(|x| vec![x.index().unwrap_or(0)]).collect();
    let params = fit_all(Ctor::One, &rows)?;
    let space = Arc::new(Space::One(*g));
    Ok(Hypernode::new(space, Repr::Term { ctor: Ctor::One, params }, LAYERS as u64)?)
}

/// The hypernodes at hyperdistance 1 from `x` on a path: `⟨x_n - 1⟩` and
/// `⟨x_n + 1⟩`. On the one-ended path, entries that would fall off the end
/// are replaced by the other neighbor; there are finitely many when `x` is
/// outside the principal galaxy.
pub fn path_neighbors(x: &Hypernode) -> Result<(Hypernode, Hypernode), GalaxyError> {
    let kind = match &**x.space() {
        Space::Zero(g) if matches!(g.kind(), FamilyKind::EndlessPath | FamilyKind::OneEndedPath) => g.kind(),
        _ => return Err(GalaxyError::Inapplicable("path neighbors need a path graph".into())),
    };
    let shift =
        |d: i64| shift_path(x.repr(), d).ok_or_else(|| GalaxyError::Inapplicable(format!("{x} is not a path term")));
    let (down, up) = (shift(-1)?, shift(1)?);
    let mut fix = BTreeMap::new();
    if kind == FamilyKind::OneEndedPath {
        for n in 0..=DEFAULT_HORIZON {
            let v = x.at(n).params()[0];
            if v < 1 {
                fix.insert(n, NodeRef::Zero(NodeId::Path(v + 1)));
            }
        }
        if fix.contains_key(&DEFAULT_HORIZON) {
            return Err(GalaxyError::Inapplicable(format!("{x} has no predecessor")));
        }
    }
    let space = x.space().clone();
    let pred = Hypernode::with_overrides(space.clone(), down, fix, DEFAULT_HORIZON)?;
    let succ = Hypernode::new(space, up, DEFAULT_HORIZON)?;
    Ok((pred, succ))
}

fn shift_path(r: &Repr, delta: i64) -> Option<Repr> {
    match r {
        Repr::Term { ctor: Ctor::Path, params } => {
            Some(Repr::Term { ctor: Ctor::Path, params: vec![params[0].shifted(delta)] })
        }
        Repr::Interleaved(e, o) => {
            Some(Repr::Interleaved(Box::new(shift_path(e, delta)?), Box::new(shift_path(o, delta)?)))
        }
        _ => None,
    }
}
