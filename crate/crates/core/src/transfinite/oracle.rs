//! Brute-force walk enumeration on a truncated diamond chain.
//!
//! Independent of the quotient search: walks are generated from raw
//! 0-adjacency and tip moves, and lengths follow the walk-length rules
//! directly (a two-ended 0-walk counts its branches, a one-ended extended
//! 0-walk counts ω, an endless one ω·2). The reachable closure is bounded by
//! `tau1_max` tip traversals and `tau0_max` branch traversals.

use std::collections::{HashSet, VecDeque};

use crate::node::{NodeId, NodeRef, OneNodeId};
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum State {
    AtOne(i64),
    /// Inside a 0-walk at `node`. `extended` once the walk came in through a
    /// tip; otherwise `pending` counts branch traversals since the start.
    Walk {
        node: NodeId,
        extended: bool,
        pending: u64,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct WalkOracle {
    /// Chains `C_0 ..= C_chains`.
    pub chains: i64,
    /// Diamonds `0 ..= depth` of each chain are materialized.
    pub depth: i64,
    pub tau1_max: u64,
    pub tau0_max: u64,
}

impl WalkOracle {
    pub fn new(chains: i64) -> Self {
        WalkOracle { chains, depth: 2, tau1_max: 2 * chains as u64 + 2, tau0_max: 12 }
    }

    fn in_trunc(&self, x: &NodeId) -> bool {
        match *x {
            NodeId::DiamondJ(k, d) | NodeId::DiamondL(k, d) | NodeId::DiamondR(k, d) => {
                (0..=self.chains).contains(&k) && (0..=self.depth).contains(&d)
            }
            _ => false,
        }
    }

    fn neighbors(&self, x: &NodeId) -> Vec<NodeId> {
        let v = match *x {
            NodeId::DiamondJ(k, d) => vec![
                NodeId::DiamondL(k, d),
                NodeId::DiamondR(k, d),
                NodeId::DiamondL(k, d - 1),
                NodeId::DiamondR(k, d - 1),
            ],
            NodeId::DiamondL(k, d) | NodeId::DiamondR(k, d) => vec![NodeId::DiamondJ(k, d), NodeId::DiamondJ(k, d + 1)],
            _ => vec![],
        };
        v.into_iter().filter(|y| self.in_trunc(y)).collect()
    }

    /// The 1-node a walk reaches when it leaves `x` along a tip, if `x` is
    /// the last truncated node of a ray.
    fn exit(&self, x: &NodeId) -> Option<i64> {
        match *x {
            NodeId::DiamondL(k, d) if d == self.depth => Some(k),
            NodeId::DiamondR(k, d) if d == self.depth => Some(k + 1),
            _ => None,
        }
    }

    /// Entry points for walks leaving a 1-node through one of its tips.
    fn entries(&self, k: i64) -> Vec<NodeId> {
        let mut v = vec![];
        if k <= self.chains {
            v.push(NodeId::DiamondL(k, self.depth));
        }
        if k >= 1 && k - 1 <= self.chains {
            v.push(NodeId::DiamondR(k - 1, self.depth));
        }
        v
    }

    /// Minimum walk length between two nodes over the bounded closure, or
    /// `None` if no walk fits the bounds.
    pub fn wdistance(&self, x: &NodeRef, y: &NodeRef) -> Option<Ordinal> {
        if x == y {
            return Some(Ordinal::ZERO);
        }
        let start = match x {
            NodeRef::One(OneNodeId::Index(k)) => State::AtOne(*k),
            NodeRef::Zero(z) if self.in_trunc(z) => State::Walk { node: z.clone(), extended: false, pending: 0 },
            _ => return None,
        };
        let mut seen: HashSet<(State, u64)> = HashSet::from([(start.clone(), 0)]);
        let mut queue = VecDeque::from([(start, 0u64)]);
        let mut best: Option<Ordinal> = None;
        let mut offer = |o: Ordinal| {
            if best.is_none_or(|b| o < b) {
                best = Some(o);
            }
        };
        while let Some((st, t1)) = queue.pop_front() {
            let mut next: Vec<(State, u64)> = vec![];
            match &st {
                State::AtOne(k) => {
                    if *y == NodeRef::One(OneNodeId::Index(*k)) {
                        offer(Ordinal::from_omega_multiple(t1));
                    }
                    for e in self.entries(*k) {
                        next.push((State::Walk { node: e, extended: true, pending: 0 }, t1 + 1));
                    }
                }
                State::Walk { node, extended, pending } => {
                    if *y == NodeRef::Zero(node.clone()) {
                        let f = if *extended { 0 } else { *pending };
                        offer(Ordinal::new(t1, f));
                    }
                    for v in self.neighbors(node) {
                        let p = if *extended { 0 } else { pending + 1 };
                        if p <= self.tau0_max {
                            next.push((State::Walk { node: v, extended: *extended, pending: p }, t1));
                        }
                    }
                    if let Some(k) = self.exit(node) {
                        next.push((State::AtOne(k), t1 + 1));
                    }
                }
            }
            for (s, t) in next {
                if t <= self.tau1_max && seen.insert((s.clone(), t)) {
                    queue.push_back((s, t));
                }
            }
        }
        best
    }

    /// Named nodes of the truncation: chain bases and 1-nodes, plus the first
    /// diamond of every chain.
    pub fn named_nodes(&self) -> Vec<NodeRef> {
        let mut v: Vec<NodeRef> = vec![];
        for k in 0..=self.chains {
            v.push(NodeId::DiamondJ(k, 0).into());
            v.push(NodeId::DiamondL(k, 0).into());
            v.push(NodeId::DiamondR(k, 0).into());
            v.push(NodeId::DiamondJ(k, 1).into());
            v.push(OneNodeId::Index(k).into());
        }
        v
    }
}
