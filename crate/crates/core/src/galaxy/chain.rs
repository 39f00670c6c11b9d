//! Two-way chains of galaxies ordered by closeness to the principal galaxy.
//!
//! Every entry re-indexes the seed sequence `y`. With `D(n) = d(y_n, x)`
//! (ω-coefficient at rank 1):
//!
//! * expansion: `z_n = y_{σ(n)}`, `σ(n)` the least `m >= σ(n-1)` with
//!   `D(m) >= D(n) + n`;
//! * compression: thresholds `n_0 = n_{-1} = 0`, `n_k` the least `n` with
//!   `D(n) - D(n_{k-1}) > k`, and `w_n = y_{n_{k-2}}` for
//!   `n_{k-1} <= n < n_k`.
//!
//! Both are applied to the previous level, so level `j` is `|j|` steps away
//! from the seed.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::{in_principal_galaxy, GalaxyError, Relation};
use crate::node::NodeRef;
use crate::ultrapower::hypernode::standard_value;
use crate::ultrapower::hypernode::{ChainTag, IndexMap};
use crate::ultrapower::{hyperdistance, HyperClass, Hypernode, Space};

static NEXT_ROOT: AtomicU64 = AtomicU64::new(1);

/// Indices at which adjacent levels are compared numerically.
const SAMPLES: [u64; 5] = [64, 128, 256, 512, 1024];

/// `n -> D(n)` for the seed, memoized.
struct SeedDist {
    space: Arc<Space>,
    seed: Hypernode,
    base: NodeRef,
    rank: u8,
    memo: Mutex<HashMap<u64, i64>>,
}

impl SeedDist {
    fn eval(&self, n: u64) -> Result<i64, GalaxyError> {
        if let Some(v) = self.memo.lock().expect("memo").get(&n) {
            return Ok(*v);
        }
        let d = self.space.distance(&self.seed.at(n), &self.base)?;
        let v = if self.rank == 1 { d.omega_coeff() } else { d.finite_part() } as i64;
        if self.rank == 0 && d.omega_coeff() > 0 {
            return Err(GalaxyError::Construction(format!("rank-0 distance {d} at n = {n} is infinite")));
        }
        self.memo.lock().expect("memo").insert(n, v);
        Ok(v)
    }

    fn d(&self, n: u64) -> i64 {
        // evaluation errors are ruled out on the sampled range before any
        // level is built; later failures mean the budget ran out
        self.eval(n).expect("seed distance")
    }
}

type Map = Arc<dyn Fn(u64) -> u64 + Send + Sync>;

#[derive(Clone)]
struct Level {
    map: Map,
    dist: Arc<SeedDist>,
}

/// Least `m >= from` with `d(m) >= target`, assuming `d` non-decreasing.
fn gallop(d: &dyn Fn(u64) -> i64, from: u64, target: i64) -> u64 {
    if d(from) >= target {
        return from;
    }
    let (mut lo, mut step) = (from, 1u64);
    let mut hi = from + 1;
    while d(hi) < target {
        lo = hi;
        step *= 2;
        hi = from + step;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if d(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

impl Level {
    fn idx(&self, n: u64) -> u64 {
        (self.map)(n)
    }

    fn d(&self, n: u64) -> i64 {
        self.dist.d(self.idx(n))
    }

    fn expand(&self) -> Level {
        let parent = self.clone();
        let sigma: Arc<Mutex<Vec<u64>>> = Arc::new(Mutex::new(vec![]));
        let map = move |n: u64| -> u64 {
            let mut s = sigma.lock().expect("sigma");
            while s.len() as u64 <= n {
                let i = s.len() as u64;
                let from = s.last().copied().unwrap_or(0);
                let target = parent.d(i) + i as i64;
                s.push(gallop(&|m| parent.d(m), from, target));
            }
            parent.idx(s[n as usize])
        };
        Level { map: Arc::new(map), dist: self.dist.clone() }
    }

    fn compress(&self) -> (Level, Thresholds) {
        let th = Thresholds { parent: self.clone(), n: Arc::new(Mutex::new(vec![0])) };
        let t = th.clone();
        let parent = self.clone();
        let map = move |n: u64| -> u64 {
            let k = t.k_of(n);
            parent.idx(if k >= 2 { t.nth(k - 2) } else { 0 })
        };
        (Level { map: Arc::new(map), dist: self.dist.clone() }, th)
    }
}

/// The compression thresholds `n_0 < n_1 < ...` of one level.
#[derive(Clone)]
struct Thresholds {
    parent: Level,
    n: Arc<Mutex<Vec<u64>>>,
}

impl Thresholds {
    fn extend_past(&self, bound: u64, k_min: usize) {
        let mut v = self.n.lock().expect("thresholds");
        while *v.last().expect("n_0") <= bound || v.len() <= k_min {
            let k = v.len() as i64;
            let prev = *v.last().expect("n_0");
            let target = self.parent.d(prev) + k + 1;
            v.push(gallop(&|m| self.parent.d(m), prev, target));
        }
    }

    fn nth(&self, k: usize) -> u64 {
        self.extend_past(0, k);
        self.n.lock().expect("thresholds")[k]
    }

    /// The `k >= 1` with `n_{k-1} <= n < n_k`.
    fn k_of(&self, n: u64) -> usize {
        self.extend_past(n, 1);
        let v = self.n.lock().expect("thresholds");
        v.partition_point(|t| *t <= n)
    }
}

/// Numeric evidence that level `outer` outgrows level `inner`:
/// `D_outer(n) - D_inner(n) >= required(n)` at the sampled indices, with
/// `required` unbounded.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Certificate {
    pub inner: i64,
    pub outer: i64,
    /// `(n, D_outer(n) - D_inner(n), required)`
    pub samples: Vec<(u64, i64, i64)>,
}

#[derive(Debug, Clone)]
pub struct ChainEntry {
    pub level: i64,
    pub node: Hypernode,
}

#[derive(Debug, Clone)]
pub struct GalaxyChain {
    pub base: Hypernode,
    pub rank: u8,
    /// Ordered by level, `-m ..= m`.
    pub entries: Vec<ChainEntry>,
    pub certificates: Vec<Certificate>,
    /// The seed's distances were not monotone on the checked range and a
    /// monotone subsequence was extracted first.
    pub seed_reindexed: bool,
}

impl GalaxyChain {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, level: i64) -> Option<&Hypernode> {
        self.entries.iter().find(|e| e.level == level).map(|e| &e.node)
    }

    pub fn nodes(&self) -> Vec<Hypernode> {
        self.entries.iter().map(|e| e.node.clone()).collect()
    }
}

/// Build the chain `Γ_{-m} < ... < Γ_0 < ... < Γ_m` through the seed's galaxy.
pub fn build_galaxy_chain(base: &Hypernode, seed: &Hypernode, m: usize, rank: u8) -> Result<GalaxyChain, GalaxyError> {
    super::check_rank(rank)?;
    let base_node = standard_value(base)
        .ok_or_else(|| GalaxyError::Inapplicable(format!("base {base} is not an eventually constant standard node")))?;
    if in_principal_galaxy(seed, rank)?.relation != Relation::DifferentGalaxy {
        return Err(GalaxyError::Construction(format!("seed {seed} is not outside the principal galaxy")));
    }
    if hyperdistance(seed, base)?.class_at_rank(rank) != HyperClass::MonotoneUnbounded {
        return Err(GalaxyError::Construction("seed distance is not unbounded on every residue class".into()));
    }
    let space = seed.space().clone();
    let dist = Arc::new(SeedDist {
        space: space.clone(),
        seed: seed.clone(),
        base: base_node,
        rank,
        memo: Mutex::new(HashMap::new()),
    });
    let horizon = 2 * SAMPLES[SAMPLES.len() - 1];
    let mut prev = i64::MIN;
    let mut monotone = true;
    for n in 0..=horizon {
        let v = dist.eval(n)?;
        monotone &= v >= prev;
        prev = v;
    }
    let identity = Level { map: Arc::new(|n| n), dist: dist.clone() };
    let level0 = if monotone {
        identity
    } else {
        // least later index not below the running value
        let id = identity.clone();
        let mu: Arc<Mutex<Vec<u64>>> = Arc::new(Mutex::new(vec![0]));
        let map = move |n: u64| -> u64 {
            let mut v = mu.lock().expect("mu");
            while v.len() as u64 <= n {
                let last = *v.last().expect("mu_0");
                let floor = id.d(last);
                let mut j = last + 1;
                while id.d(j) < floor {
                    j += 1;
                }
                v.push(j);
            }
            v[n as usize]
        };
        Level { map: Arc::new(map), dist: dist.clone() }
    };

    let root = NEXT_ROOT.fetch_add(1, Ordering::Relaxed);
    let tag = |level: i64| ChainTag { root, level };
    let entry = |level: i64, l: &Level| -> ChainEntry {
        let node = if monotone && level == 0 {
            seed.clone()
        } else {
            let f = l.map.clone();
            Hypernode::reindexed(seed, IndexMap::new(move |n| f(n)))
        };
        ChainEntry { level, node: node.with_tag(tag(level)) }
    };

    let mut entries = vec![entry(0, &level0)];
    let mut certificates = vec![];
    let (mut up, mut down) = (level0.clone(), level0.clone());
    for j in 1..=m as i64 {
        let next = up.expand();
        let samples = SAMPLES.iter().map(|&n| (n, next.d(n) - up.d(n), n as i64)).collect();
        certificates.push(certify(j - 1, j, samples)?);
        entries.push(entry(j, &next));
        up = next;

        let (next, th) = down.compress();
        // D(n) - D(n_{k-2}) >= D(n_{k-1}) - D(n_{k-2}) > k - 1 once k >= 2
        let samples = SAMPLES
            .iter()
            .filter(|&&n| n >= th.nth(2))
            .map(|&n| (n, down.d(n) - next.d(n), th.k_of(n) as i64))
            .collect();
        certificates.push(certify(-j, 1 - j, samples)?);
        entries.push(entry(-j, &next));
        down = next;
    }
    entries.sort_by_key(|e| e.level);
    certificates.sort_by_key(|c| c.inner);
    Ok(GalaxyChain { base: base.clone(), rank, entries, certificates, seed_reindexed: !monotone })
}

/// Check `diff >= required` everywhere and that `required` keeps growing.
fn certify(inner: i64, outer: i64, samples: Vec<(u64, i64, i64)>) -> Result<Certificate, GalaxyError> {
    let c = Certificate { inner, outer, samples };
    if let Some((n, diff, req)) = c.samples.iter().find(|(_, d, r)| d < r) {
        return Err(GalaxyError::Certificate(format!(
            "levels {inner} -> {outer}: difference {diff} < {req} at n = {n}"
        )));
    }
    let growing = c.samples.len() >= 2 && c.samples.windows(2).all(|w| w[1].2 >= w[0].2) && {
        let (first, last) = (c.samples[0].2, c.samples[c.samples.len() - 1].2);
        last > first
    };
    if !growing {
        return Err(GalaxyError::Certificate(format!(
            "levels {inner} -> {outer}: thresholds do not grow on the sampled range"
        )));
    }
    Ok(c)
}
