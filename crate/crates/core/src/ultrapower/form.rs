//! Eventual forms of integer sequences, one per residue class.
//!
//! A [`Form`] says what a sequence does for all large `n` in one residue
//! class: equals `slope*n + offset`, stays within `[lo, hi]`, tends to ±∞,
//! or nothing known. Finite prefixes never matter, which is exactly the
//! information a free ultrafilter cannot see past.

use crate::arith::{Arith, Logic};

/// Eventual truth of a statement on one residue class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ev {
    True,
    False,
    Unknown,
}

impl Logic for Ev {
    fn from_bool(b: bool) -> Self {
        if b {
            Ev::True
        } else {
            Ev::False
        }
    }
    fn and(&self, other: &Self) -> Self {
        match (self, other) {
            (Ev::False, _) | (_, Ev::False) => Ev::False,
            (Ev::True, Ev::True) => Ev::True,
            _ => Ev::Unknown,
        }
    }
    fn or(&self, other: &Self) -> Self {
        match (self, other) {
            (Ev::True, _) | (_, Ev::True) => Ev::True,
            (Ev::False, Ev::False) => Ev::False,
            _ => Ev::Unknown,
        }
    }
    fn not(&self) -> Self {
        match self {
            Ev::True => Ev::False,
            Ev::False => Ev::True,
            Ev::Unknown => Ev::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    /// `slope*n + offset` for all large `n` of the class.
    Exact {
        slope: i64,
        offset: i64,
    },
    /// Eventually within `[lo, hi]`.
    Bounded {
        lo: i64,
        hi: i64,
    },
    /// Tends to +∞ (`up`) or −∞.
    Diverges {
        up: bool,
    },
    Unknown,
}

impl Form {
    pub const fn constant(c: i64) -> Form {
        Form::Exact { slope: 0, offset: c }
    }

    pub const fn affine(slope: i64, offset: i64) -> Form {
        Form::Exact { slope, offset }
    }

    fn bounded(lo: i64, hi: i64) -> Form {
        if lo == hi {
            Form::constant(lo)
        } else {
            Form::Bounded { lo, hi }
        }
    }

    /// Eventual bounds, if the form is bounded.
    pub fn range(&self) -> Option<(i64, i64)> {
        match *self {
            Form::Exact { slope: 0, offset } => Some((offset, offset)),
            Form::Bounded { lo, hi } => Some((lo, hi)),
            _ => None,
        }
    }

    /// Eventual direction when the form is unbounded.
    pub fn divergence(&self) -> Option<bool> {
        match *self {
            Form::Exact { slope, .. } if slope != 0 => Some(slope > 0),
            Form::Diverges { up } => Some(up),
            _ => None,
        }
    }

    pub fn is_unknown(&self) -> bool {
        *self == Form::Unknown
    }

    /// Eventual sign of the form: `Some(-1 | 0 | 1)` when fixed.
    fn sign(&self) -> Option<i8> {
        if let Some(up) = self.divergence() {
            return Some(if up { 1 } else { -1 });
        }
        match self.range()? {
            (0, 0) => Some(0),
            (lo, _) if lo > 0 => Some(1),
            (_, hi) if hi < 0 => Some(-1),
            _ => None,
        }
    }

    /// Least form covering both (pointwise either one or the other).
    pub fn hull(&self, other: &Form) -> Form {
        if self == other {
            return *self;
        }
        if let (Some((a, b)), Some((c, d))) = (self.range(), other.range()) {
            return Form::bounded(a.min(c), b.max(d));
        }
        match (self.divergence(), other.divergence()) {
            (Some(u), Some(v)) if u == v => Form::Diverges { up: u },
            _ => Form::Unknown,
        }
    }

    /// Clamp to `[lo, hi]`, a bound known from elsewhere.
    pub fn clamp(&self, lo: i64, hi: i64) -> Form {
        match self.range() {
            Some((a, b)) => Form::bounded(a.max(lo), b.min(hi).max(a.max(lo))),
            None => Form::bounded(lo, hi),
        }
    }

    /// Raise the lower bound to `lo` (distances are never negative).
    pub fn at_least(&self, lo: i64) -> Form {
        match *self {
            Form::Bounded { lo: a, hi } => Form::bounded(a.max(lo), hi.max(lo)),
            f => f,
        }
    }
}

impl Arith for Form {
    type Bool = Ev;

    fn lit(v: i64) -> Self {
        Form::constant(v)
    }

    fn add(&self, other: &Self) -> Self {
        use Form::*;
        match (*self, *other) {
            (Exact { slope: a, offset: b }, Exact { slope: c, offset: d }) => Exact { slope: a + c, offset: b + d },
            (Unknown, _) | (_, Unknown) => Unknown,
            (x, y) => match (x.range(), y.range()) {
                (Some((a, b)), Some((c, d))) => Form::bounded(a + c, b + d),
                (Some(_), None) => Diverges { up: y.divergence().expect("unbounded") },
                (None, Some(_)) => Diverges { up: x.divergence().expect("unbounded") },
                (None, None) => match (x.divergence(), y.divergence()) {
                    (Some(u), Some(v)) if u == v => Diverges { up: u },
                    _ => Unknown,
                },
            },
        }
    }

    fn neg(&self) -> Self {
        match *self {
            Form::Exact { slope, offset } => Form::Exact { slope: -slope, offset: -offset },
            Form::Bounded { lo, hi } => Form::Bounded { lo: -hi, hi: -lo },
            Form::Diverges { up } => Form::Diverges { up: !up },
            Form::Unknown => Form::Unknown,
        }
    }

    fn abs(&self) -> Self {
        match *self {
            Form::Exact { slope, offset } if slope < 0 || (slope == 0 && offset < 0) => self.neg(),
            Form::Exact { .. } => *self,
            Form::Bounded { lo, .. } if lo >= 0 => *self,
            Form::Bounded { lo, hi } if hi <= 0 => Form::bounded(-hi, -lo),
            Form::Bounded { lo, hi } => Form::bounded(0, (-lo).max(hi)),
            Form::Diverges { .. } => Form::Diverges { up: true },
            Form::Unknown => Form::Unknown,
        }
    }

    fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Form::constant(0);
        }
        match *self {
            Form::Exact { slope, offset } => Form::Exact { slope: slope * k, offset: offset * k },
            Form::Bounded { lo, hi } => {
                let (a, b) = (lo * k, hi * k);
                Form::bounded(a.min(b), a.max(b))
            }
            Form::Diverges { up } => Form::Diverges { up: up == (k > 0) },
            Form::Unknown => Form::Unknown,
        }
    }

    fn eq_to(&self, other: &Self) -> Ev {
        let d = self.sub(other);
        match d {
            Form::Exact { slope: 0, offset: 0 } => Ev::True,
            Form::Exact { .. } | Form::Diverges { .. } => Ev::False,
            Form::Bounded { lo, hi } if lo > 0 || hi < 0 => Ev::False,
            _ => Ev::Unknown,
        }
    }

    fn lt(&self, other: &Self) -> Ev {
        match self.sub(other).sign() {
            Some(s) => Ev::from_bool(s < 0),
            None => match self.sub(other).range() {
                Some((_, hi)) if hi < 0 => Ev::True,
                Some((lo, _)) if lo >= 0 => Ev::False,
                _ => Ev::Unknown,
            },
        }
    }

    fn select(cond: &Ev, then: Self, otherwise: Self) -> Self {
        match cond {
            Ev::True => then,
            Ev::False => otherwise,
            Ev::Unknown => then.hull(&otherwise),
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// One value per residue class modulo `period()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Periodic<T> {
    classes: Vec<T>,
}

impl<T: Clone> Periodic<T> {
    pub fn uniform(v: T) -> Self {
        Periodic { classes: vec![v] }
    }

    pub fn from_classes(classes: Vec<T>) -> Self {
        assert!(!classes.is_empty(), "at least one residue class");
        Periodic { classes }
    }

    pub fn period(&self) -> usize {
        self.classes.len()
    }

    pub fn at(&self, r: usize) -> &T {
        &self.classes[r % self.classes.len()]
    }

    pub fn classes(&self) -> &[T] {
        &self.classes
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Periodic<U> {
        Periodic { classes: self.classes.iter().map(f).collect() }
    }

    pub fn zip<U: Clone, V: Clone>(&self, other: &Periodic<U>, f: impl Fn(&T, &U) -> V) -> Periodic<V> {
        let p = lcm(self.period(), other.period());
        Periodic { classes: (0..p).map(|r| f(self.at(r), other.at(r))).collect() }
    }

    /// Even classes from `even`, odd classes from `odd`.
    pub fn interleave(even: &Periodic<T>, odd: &Periodic<T>) -> Periodic<T> {
        let p = lcm(2, lcm(even.period(), odd.period()));
        Periodic { classes: (0..p).map(|r| if r % 2 == 0 { even.at(r).clone() } else { odd.at(r).clone() }).collect() }
    }
}
