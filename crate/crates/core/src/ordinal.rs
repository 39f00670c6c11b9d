//! Ordinals below ω², stored as `ω·omega + finite`.
//!
//! Every walk length and walk distance in a rank-1 graph is of this shape, so
//! two naturals are enough and the representation is canonical.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("ordinal coefficient overflow")]
    Overflow,
    #[error("cannot parse ordinal `{0}`")]
    Parse(String),
}

/// `ω·omega + finite`. The derived `Ord` is lexicographic on the two
/// coefficients, which is exactly the ordinal order below ω².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Ordinal {
    omega: u64,
    finite: u64,
}

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal { omega: 0, finite: 0 };
    pub const OMEGA: Ordinal = Ordinal { omega: 1, finite: 0 };

    pub const fn new(omega: u64, finite: u64) -> Self {
        Ordinal { omega, finite }
    }

    pub const fn from_finite(n: u64) -> Self {
        Ordinal { omega: 0, finite: n }
    }

    pub const fn from_omega_multiple(k: u64) -> Self {
        Ordinal { omega: k, finite: 0 }
    }

    /// Coefficient of ω (the number of tip traversals of a walk).
    pub const fn omega_coeff(&self) -> u64 {
        self.omega
    }

    /// Finite part (the number of branch traversals).
    pub const fn finite_part(&self) -> u64 {
        self.finite
    }

    pub const fn is_finite(&self) -> bool {
        self.omega == 0
    }

    pub const fn is_zero(&self) -> bool {
        self.omega == 0 && self.finite == 0
    }

    /// Natural (Hessenberg) sum: componentwise addition of normal forms.
    pub fn natural_sum(self, other: Ordinal) -> Result<Ordinal, OrdinalError> {
        Ok(Ordinal {
            omega: self.omega.checked_add(other.omega).ok_or(OrdinalError::Overflow)?,
            finite: self.finite.checked_add(other.finite).ok_or(OrdinalError::Overflow)?,
        })
    }

    pub fn compare(&self, other: &Ordinal) -> Ordering {
        self.cmp(other)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.omega, self.finite) {
            (0, b) => write!(f, "{b}"),
            (a, 0) => write!(f, "w*{a}"),
            (a, b) => write!(f, "w*{a}+{b}"),
        }
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || OrdinalError::Parse(s.to_string());
        let t = s.trim();
        let nat = |x: &str| x.trim().parse::<u64>().map_err(|_| err());
        match t.strip_prefix("w*") {
            None => Ok(Ordinal::from_finite(nat(t)?)),
            Some(rest) => match rest.split_once('+') {
                None => Ok(Ordinal::from_omega_multiple(nat(rest)?)),
                Some((a, b)) => Ok(Ordinal::new(nat(a)?, nat(b)?)),
            },
        }
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
