//! Galaxies of the ultrapower: limited-distance classes of hypernodes, the
//! closeness order among them, and constructive witnesses.

mod chain;
mod witness;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{Arith, Logic};
use crate::ordinal::Ordinal;
use crate::ultrapower::{classify, hyperdistance, Ev, Form, HyperClass, Hypernode, KernelError, Trivalent, UltraError};

pub use chain::{build_galaxy_chain, Certificate, ChainEntry, GalaxyChain};
pub use witness::{boundary_ray_witness, konig_ray_witness, path_neighbors};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalaxyError {
    #[error(transparent)]
    Ultra(#[from] UltraError),
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
}

impl From<KernelError> for GalaxyError {
    fn from(e: KernelError) -> Self {
        GalaxyError::Ultra(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    SameGalaxy,
    DifferentGalaxy,
    FilterDependent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GalaxyVerdict {
    pub relation: Relation,
    /// For `SameGalaxy`: a standard bound on the hyperdistance, finite at
    /// rank 0 and below ω² at rank 1.
    pub bound: Option<Ordinal>,
    /// The bound is the eventual value itself.
    pub tight: bool,
}

impl GalaxyVerdict {
    fn different() -> Self {
        GalaxyVerdict { relation: Relation::DifferentGalaxy, bound: None, tight: false }
    }
}

fn check_rank(rank: u8) -> Result<(), GalaxyError> {
    if rank > 1 {
        return Err(GalaxyError::Inapplicable(format!("rank {rank}: only ranks 0 and 1 are supported")));
    }
    Ok(())
}

/// Are `x` and `y` in the same galaxy of the given rank?
pub fn limitedly_distant(x: &Hypernode, y: &Hypernode, rank: u8) -> Result<GalaxyVerdict, GalaxyError> {
    check_rank(rank)?;
    if let (Some(a), Some(b)) = (x.tag(), y.tag()) {
        if a.root == b.root && a.level != b.level {
            return Ok(GalaxyVerdict::different());
        }
    }
    let d = hyperdistance(x, y)?;
    match d.class_at_rank(rank) {
        HyperClass::Bounded { bound, tight } => {
            Ok(GalaxyVerdict { relation: Relation::SameGalaxy, bound: Some(bound), tight })
        }
        HyperClass::MonotoneUnbounded => Ok(GalaxyVerdict::different()),
        HyperClass::ParitySplit => Ok(GalaxyVerdict { relation: Relation::FilterDependent, bound: None, tight: false }),
        HyperClass::Indeterminate => Err(KernelError::Indeterminate(format!(
            "hyperdistance between {x} and {y} has no decidable class at rank {rank}"
        ))
        .into()),
    }
}

/// Galaxy verdict against the graph's standard anchor.
pub fn in_principal_galaxy(x: &Hypernode, rank: u8) -> Result<GalaxyVerdict, GalaxyError> {
    check_rank(rank)?;
    let anchor = Hypernode::standard(x.space().clone(), &x.space().anchor(rank))?;
    limitedly_distant(x, &anchor, rank)
}

/// Eventual truth that `dz - dy` exceeds every standard threshold of the rank.
fn outgrows(oy: &Form, fy: &Form, oz: &Form, fz: &Form, rank: u8) -> Ev {
    let od = oz.sub(oy);
    let grows = |f: &Form| match (f.divergence(), f.range()) {
        (Some(up), _) => Ev::from_bool(up),
        (None, Some(_)) => Ev::False,
        _ => Ev::Unknown,
    };
    if rank == 1 {
        return grows(&od);
    }
    match od.range() {
        Some((0, 0)) => grows(&fz.sub(fy)),
        Some((lo, _)) if lo > 0 => Ev::True,
        Some((_, hi)) if hi < 0 => Ev::False,
        _ => match od.divergence() {
            Some(up) => Ev::from_bool(up),
            None => Ev::Unknown,
        },
    }
}

/// Is the galaxy of `y` strictly closer to the principal galaxy (through the
/// standard `base`) than the galaxy of `z`?
pub fn closer_than(base: &Hypernode, y: &Hypernode, z: &Hypernode, rank: u8) -> Result<Trivalent, GalaxyError> {
    check_rank(rank)?;
    if is_standard_verdict(base)? != Trivalent::True {
        return Err(GalaxyError::Inapplicable(format!("base {base} is not standard")));
    }
    for v in [y, z] {
        if in_principal_galaxy(v, rank)?.relation == Relation::SameGalaxy {
            return Err(GalaxyError::Inapplicable(format!("{v} lies in the principal galaxy")));
        }
    }
    if let (Some(a), Some(b)) = (y.tag(), z.tag()) {
        if a.root == b.root {
            // chain entries: the order was certified when the chain was built
            return Ok(Trivalent::from_bool(a.level < b.level));
        }
    }
    let (dy, dz) = (hyperdistance(y, base)?, hyperdistance(z, base)?);
    let truth = dy.forms().zip(dz.forms(), |(oy, fy), (oz, fz)| outgrows(oy, fy, oz, fz, rank));
    Ok(classify(&truth)?)
}

fn is_standard_verdict(x: &Hypernode) -> Result<Trivalent, GalaxyError> {
    Ok(crate::ultrapower::is_standard(x)?)
}

/// Outcome of checking the closeness order on a finite sample.
#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct OrderReport {
    pub size: usize,
    pub reflexive: bool,
    pub antisymmetry_violations: Vec<(usize, usize)>,
    pub transitivity_violations: Vec<(usize, usize, usize)>,
    /// Pairs in different galaxies with neither one closer.
    pub incomparable: Vec<(usize, usize)>,
    /// Pairs whose order depends on the ultrafilter.
    pub filter_dependent: Vec<(usize, usize)>,
    /// Pairs the kernel could not decide.
    pub undecided: Vec<(usize, usize)>,
}

impl OrderReport {
    pub fn violations(&self) -> usize {
        self.antisymmetry_violations.len() + self.transitivity_violations.len() + usize::from(!self.reflexive)
    }
}

/// Check reflexivity, antisymmetry and transitivity of "closer or equal" on
/// a sample of hypernodes outside the principal galaxy. Never fails: pairs
/// that cannot be decided are listed instead.
pub fn verify_partial_order(sample: &[Hypernode], base: &Hypernode, rank: u8) -> OrderReport {
    let n = sample.len();
    let mut rep = OrderReport { size: n, reflexive: true, ..Default::default() };
    let mut closer = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            closer[i][j] = closer_than(base, &sample[i], &sample[j], rank).ok();
        }
        let same = limitedly_distant(&sample[i], &sample[i], rank).map(|v| v.relation);
        if same != Ok(Relation::SameGalaxy) || closer[i][i] != Some(Trivalent::False) {
            rep.reflexive = false;
        }
    }
    let is_true = |c: &Option<Trivalent>| *c == Some(Trivalent::True);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&closer[i][j], &closer[j][i]);
            if is_true(a) && is_true(b) {
                rep.antisymmetry_violations.push((i, j));
            }
            if a.is_none() || b.is_none() {
                rep.undecided.push((i, j));
            } else if *a == Some(Trivalent::FilterDependent) || *b == Some(Trivalent::FilterDependent) {
                rep.filter_dependent.push((i, j));
            } else if !is_true(a) && !is_true(b) {
                match limitedly_distant(&sample[i], &sample[j], rank).map(|v| v.relation) {
                    Ok(Relation::SameGalaxy) => {}
                    Ok(Relation::FilterDependent) => rep.filter_dependent.push((i, j)),
                    Ok(Relation::DifferentGalaxy) => rep.incomparable.push((i, j)),
                    Err(_) => rep.undecided.push((i, j)),
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // an undecided `i < k` is listed above, not counted against transitivity
                let refuted = matches!(closer[i][k], Some(Trivalent::False | Trivalent::FilterDependent));
                if is_true(&closer[i][j]) && is_true(&closer[j][k]) && refuted {
                    rep.transitivity_violations.push((i, j, k));
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests;
