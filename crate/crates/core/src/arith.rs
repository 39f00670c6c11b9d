//! Arithmetic interface for closed-form distance formulas.
//!
//! The catalog's distance formulas are written once against [`Arith`] and run
//! either on plain integers or on the eventual forms of index sequences
//! (`ultrapower::Form`), which is how hyperdistance classes are derived.

/// Truth values produced by comparisons in an [`Arith`] domain.
pub trait Logic: Clone {
    fn from_bool(b: bool) -> Self;
    fn and(&self, other: &Self) -> Self;
    fn or(&self, other: &Self) -> Self;
    fn not(&self) -> Self;
}

pub trait Arith: Clone {
    type Bool: Logic;

    fn lit(v: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn scale(&self, k: i64) -> Self;
    /// `self == other`
    fn eq_to(&self, other: &Self) -> Self::Bool;
    /// `self < other`
    fn lt(&self, other: &Self) -> Self::Bool;
    fn select(cond: &Self::Bool, then: Self, otherwise: Self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn le(&self, other: &Self) -> Self::Bool {
        other.lt(self).not()
    }

    fn min_with(&self, other: &Self) -> Self {
        Self::select(&self.le(other), self.clone(), other.clone())
    }

    fn max_with(&self, other: &Self) -> Self {
        Self::select(&self.le(other), other.clone(), self.clone())
    }
}

impl Logic for bool {
    fn from_bool(b: bool) -> Self {
        b
    }
    fn and(&self, other: &Self) -> Self {
        *self && *other
    }
    fn or(&self, other: &Self) -> Self {
        *self || *other
    }
    fn not(&self) -> Self {
        !*self
    }
}

impl Arith for i64 {
    type Bool = bool;

    fn lit(v: i64) -> Self {
        v
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        i64::abs(*self)
    }
    fn scale(&self, k: i64) -> Self {
        self * k
    }
    fn eq_to(&self, other: &Self) -> bool {
        self == other
    }
    fn lt(&self, other: &Self) -> bool {
        self < other
    }
    fn select(cond: &bool, then: Self, otherwise: Self) -> Self {
        if *cond {
            then
        } else {
            otherwise
        }
    }
}
