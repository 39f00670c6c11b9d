//! Hyperordinals: ordinal-valued sequences below ω² modulo the ultrafilter.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::form::{Ev, Form, Periodic};
use super::kernel::{KernelError, Trivalent};
use super::sequence::IndexSequence;
use super::UltraError;
use crate::arith::{Arith, Logic};
use crate::ordinal::Ordinal;

type Gen = Arc<dyn Fn(u64) -> Result<Ordinal, UltraError> + Send + Sync>;

/// `⟨ω·a_n + b_n⟩`, carried as eventual forms of `(a_n, b_n)` per residue
/// class plus a generator for the actual values.
#[derive(Clone)]
pub struct Hyperordinal {
    forms: Periodic<(Form, Form)>,
    gen: Gen,
}

impl fmt::Debug for Hyperordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hyperordinal").field("forms", &self.forms).finish()
    }
}

/// Asymptotic shape of a hyperordinal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HyperClass {
    /// Below a standard ordinal; `tight` when `bound` is the eventual value.
    Bounded {
        bound: Ordinal,
        tight: bool,
    },
    MonotoneUnbounded,
    /// Bounded on some residue classes, unbounded on others.
    ParitySplit,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trichotomy {
    Less,
    Equal,
    Greater,
    FilterDependent,
}

enum Shape {
    Limited(Ordinal, bool),
    Unbounded,
    Unknown,
}

fn shape(o: &Form, f: &Form, rank: u8) -> Shape {
    if o.divergence() == Some(true) || (rank == 0 && f.divergence() == Some(true)) {
        return Shape::Unbounded;
    }
    if rank == 0 && o.range().is_some_and(|r| r != (0, 0)) {
        return Shape::Unknown;
    }
    let Some((olo, ohi)) = o.range() else { return Shape::Unknown };
    let (olo, ohi) = (olo.max(0) as u64, ohi.max(0) as u64);
    if let Some((flo, fhi)) = f.range() {
        let tight = olo == ohi && flo == fhi;
        Shape::Limited(Ordinal::new(ohi, fhi.max(0) as u64), tight)
    } else if f.divergence() == Some(true) {
        Shape::Limited(Ordinal::new(ohi + 1, 0), false)
    } else {
        Shape::Unknown
    }
}

impl Hyperordinal {
    pub fn new(
        forms: Periodic<(Form, Form)>,
        gen: impl Fn(u64) -> Result<Ordinal, UltraError> + Send + Sync + 'static,
    ) -> Self {
        Hyperordinal { forms, gen: Arc::new(gen) }
    }

    /// The constant hyperordinal `*o`.
    pub fn standard(o: Ordinal) -> Self {
        let f = (Form::constant(o.omega_coeff() as i64), Form::constant(o.finite_part() as i64));
        Hyperordinal::new(Periodic::uniform(f), move |_| Ok(o))
    }

    /// `⟨ω·a_n + b_n⟩` from two index sequences; negative entries read as 0.
    pub fn from_parts(omega: IndexSequence, finite: IndexSequence) -> Self {
        let forms = omega.form().zip(&finite.form(), |a, b| (*a, *b));
        Hyperordinal::new(forms, move |n| Ok(Ordinal::new(omega.eval(n).max(0) as u64, finite.eval(n).max(0) as u64)))
    }

    pub fn forms(&self) -> &Periodic<(Form, Form)> {
        &self.forms
    }

    pub fn at(&self, n: u64) -> Result<Ordinal, UltraError> {
        (self.gen)(n)
    }

    /// Shape with respect to standard ordinals of the given rank: below ω
    /// for rank 0, below ω² for rank 1.
    pub fn class_at_rank(&self, rank: u8) -> HyperClass {
        let shapes: Vec<Shape> = self.forms.classes().iter().map(|(o, f)| shape(o, f, rank)).collect();
        if shapes.iter().any(|s| matches!(s, Shape::Unknown)) {
            return HyperClass::Indeterminate;
        }
        let limited: Vec<(Ordinal, bool)> = shapes
            .iter()
            .filter_map(|s| match s {
                Shape::Limited(b, t) => Some((*b, *t)),
                _ => None,
            })
            .collect();
        if limited.is_empty() {
            return HyperClass::MonotoneUnbounded;
        }
        if limited.len() < shapes.len() {
            return HyperClass::ParitySplit;
        }
        let bound = limited.iter().map(|(b, _)| *b).max().expect("nonempty");
        let tight = limited.iter().all(|(b, t)| *t && *b == bound);
        HyperClass::Bounded { bound, tight }
    }

    pub fn class(&self) -> HyperClass {
        self.class_at_rank(1)
    }

    /// Eventual truth, per class, of `self < other`, `self = other`, `self > other`.
    fn relations(&self, other: &Hyperordinal) -> Periodic<[Ev; 3]> {
        self.forms.zip(&other.forms, |(oa, fa), (ob, fb)| {
            let less = oa.lt(ob).or(&oa.eq_to(ob).and(&fa.lt(fb)));
            let equal = oa.eq_to(ob).and(&fa.eq_to(fb));
            let greater = ob.lt(oa).or(&oa.eq_to(ob).and(&fb.lt(fa)));
            [less, equal, greater]
        })
    }
}

/// Compare two hyperordinals in the ultrapower. Exactly one of the three
/// relations holds for a fixed ultrafilter; when different residue classes
/// disagree the answer depends on which ultrafilter.
pub fn compare_hyperordinals(a: &Hyperordinal, b: &Hyperordinal) -> Result<Trichotomy, UltraError> {
    let rel = a.relations(b);
    let outcomes = [Trichotomy::Less, Trichotomy::Equal, Trichotomy::Greater];
    let mut distinct: Vec<Trichotomy> = vec![];
    let mut undecided = false;
    for class in rel.classes() {
        match class.iter().position(|e| *e == Ev::True) {
            Some(i) if !distinct.contains(&outcomes[i]) => distinct.push(outcomes[i]),
            Some(_) => {}
            None => undecided = true,
        }
    }
    match (distinct.len(), undecided) {
        (0, _) | (1, true) => {
            let unknown = rel.classes().iter().filter(|c| !c.contains(&Ev::True)).count();
            Err(KernelError::Indeterminate(format!(
                "comparison undecided on {unknown} of {} residue classes",
                rel.period()
            ))
            .into())
        }
        (1, false) => Ok(distinct[0]),
        _ => Ok(Trichotomy::FilterDependent),
    }
}

impl Trichotomy {
    pub fn as_trivalent(self, want: Trichotomy) -> Trivalent {
        match self {
            Trichotomy::FilterDependent => Trivalent::FilterDependent,
            t => Trivalent::from_bool(t == want),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ultrapower::sequence::IndexSequence as S;
    use proptest::prelude::*;

    fn h(o: S, f: S) -> Hyperordinal {
        Hyperordinal::from_parts(o, f)
    }

    #[test]
    fn classes() {
        let b = h(S::Constant(2), S::Constant(3));
        assert_eq!(b.class(), HyperClass::Bounded { bound: Ordinal::new(2, 3), tight: true });
        assert_eq!(
            h(S::Constant(0), S::Affine(1, 0)).class(),
            HyperClass::Bounded { bound: Ordinal::OMEGA, tight: false }
        );
        assert_eq!(h(S::Constant(0), S::Affine(1, 0)).class_at_rank(0), HyperClass::MonotoneUnbounded);
        assert_eq!(h(S::Affine(1, 0), S::Constant(0)).class(), HyperClass::MonotoneUnbounded);
        let split = S::parity(S::Affine(1, 0), S::Constant(1));
        assert_eq!(h(split, S::Constant(0)).class(), HyperClass::ParitySplit);
        let g = S::generated(|n| n as i64 % 3, crate::ultrapower::SeqClass::Bounded(2));
        assert_eq!(h(S::Constant(0), g).class(), HyperClass::Bounded { bound: Ordinal::new(0, 2), tight: false });
    }

    #[test]
    fn infinite_hyperordinals_exceed_standard_ones() {
        let nu = h(S::Constant(0), S::Affine(1, 0));
        for k in [0, 5, 1000] {
            let std = Hyperordinal::standard(Ordinal::from_finite(k));
            assert_eq!(compare_hyperordinals(&std, &nu).unwrap(), Trichotomy::Less);
        }
        let w = Hyperordinal::standard(Ordinal::OMEGA);
        assert_eq!(compare_hyperordinals(&nu, &w).unwrap(), Trichotomy::Less);
        let alt = h(S::Constant(0), S::parity(S::Constant(0), S::Constant(9)));
        assert_eq!(
            compare_hyperordinals(&alt, &Hyperordinal::standard(Ordinal::new(0, 4))).unwrap(),
            Trichotomy::FilterDependent
        );
    }

    fn seq() -> impl Strategy<Value = S> {
        let leaf = prop_oneof![(0i64..6).prop_map(S::Constant), (0i64..3, 0i64..6).prop_map(|(a, b)| S::Affine(a, b)),];
        leaf.prop_recursive(2, 4, 2, |inner| (inner.clone(), inner).prop_map(|(e, o)| S::parity(e, o)))
    }

    proptest! {
        #[test]
        fn trichotomy_matches_far_values(a in seq(), b in seq(), c in seq(), d in seq()) {
            let (x, y) = (h(a, b), h(c, d));
            let t = compare_hyperordinals(&x, &y).unwrap();
            let far: Vec<std::cmp::Ordering> =
                (5000u64..5012).map(|n| x.at(n).unwrap().cmp(&y.at(n).unwrap())).collect();
            let all = |o: std::cmp::Ordering| far.iter().all(|v| *v == o);
            match t {
                Trichotomy::Less => prop_assert!(all(std::cmp::Ordering::Less)),
                Trichotomy::Equal => prop_assert!(all(std::cmp::Ordering::Equal)),
                Trichotomy::Greater => prop_assert!(all(std::cmp::Ordering::Greater)),
                Trichotomy::FilterDependent => prop_assert!(far.iter().any(|v| *v != far[0])),
            }
            let back = compare_hyperordinals(&y, &x).unwrap();
            let flipped = match t {
                Trichotomy::Less => Trichotomy::Greater,
                Trichotomy::Greater => Trichotomy::Less,
                o => o,
            };
            prop_assert_eq!(back, flipped);
        }
    }
}
