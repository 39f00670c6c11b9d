//! Deciding membership of index sets in a free ultrafilter on ℕ.
//!
//! Any free ultrafilter contains every cofinite set and no finite set. An
//! eventually periodic set that is neither (some residue classes in, some
//! out) lands on one side or the other depending on which ultrafilter was
//! picked; we report that as [`Trivalent::FilterDependent`] rather than
//! choosing one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::form::{Ev, Periodic};
use super::sequence::Predicate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Trivalent {
    True,
    False,
    FilterDependent,
}

impl Trivalent {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Trivalent::True
        } else {
            Trivalent::False
        }
    }
}

impl std::ops::Not for Trivalent {
    type Output = Trivalent;

    fn not(self) -> Self {
        match self {
            Trivalent::True => Trivalent::False,
            Trivalent::False => Trivalent::True,
            Trivalent::FilterDependent => Trivalent::FilterDependent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("indeterminate: {0}")]
    Indeterminate(String),
}

/// Classify an index set from the eventual truth on each residue class.
pub fn classify(truth: &Periodic<Ev>) -> Result<Trivalent, KernelError> {
    let cs = truth.classes();
    let has = |e: Ev| cs.contains(&e);
    match (has(Ev::True), has(Ev::False), has(Ev::Unknown)) {
        (true, true, _) => Ok(Trivalent::FilterDependent),
        (true, false, false) => Ok(Trivalent::True),
        (false, true, false) => Ok(Trivalent::False),
        _ => Err(KernelError::Indeterminate(format!(
            "eventual truth unknown on {} of {} residue classes",
            cs.iter().filter(|c| **c == Ev::Unknown).count(),
            cs.len()
        ))),
    }
}

/// Is `{n : p(n)}` in the ultrafilter?
pub fn in_filter(p: &Predicate) -> Result<Trivalent, KernelError> {
    classify(&p.truth())
}
