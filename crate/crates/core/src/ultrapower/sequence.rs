//! Computable index sequences `⟨a_n⟩` and predicates over them.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::form::{Ev, Form, Periodic};
use super::UltraError;
use crate::arith::{Arith, Logic};

/// Declared asymptotic class of an explicit sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeqClass {
    /// `|a_n| <= k` for all n.
    Bounded(u64),
    /// Non-decreasing past the prefix and tending to +∞.
    MonotoneUnbounded,
    ParityInterleaved(Box<SeqClass>, Box<SeqClass>),
}

impl SeqClass {
    fn form(&self) -> Periodic<Form> {
        match self {
            SeqClass::Bounded(k) => Periodic::uniform(Form::Bounded { lo: -(*k as i64), hi: *k as i64 }),
            SeqClass::MonotoneUnbounded => Periodic::uniform(Form::Diverges { up: true }),
            SeqClass::ParityInterleaved(e, o) => Periodic::interleave(&e.form(), &o.form()),
        }
    }

    /// Check sampled `(n, a_n)` pairs; monotonicity is checked from `start` on.
    fn check(&self, samples: &[(u64, i64)], start: u64) -> Result<(), String> {
        match self {
            SeqClass::Bounded(k) => match samples.iter().find(|(_, v)| v.unsigned_abs() > *k) {
                Some((n, v)) => Err(format!("a_{n} = {v} exceeds declared bound {k}")),
                None => Ok(()),
            },
            SeqClass::MonotoneUnbounded => {
                let tail: Vec<&(u64, i64)> = samples.iter().filter(|(n, _)| *n >= start).collect();
                for w in tail.windows(2) {
                    if w[1].1 < w[0].1 {
                        return Err(format!("a_{} = {} drops below a_{} = {}", w[1].0, w[1].1, w[0].0, w[0].1));
                    }
                }
                match (tail.first(), tail.last()) {
                    (Some(a), Some(b)) if b.1 > a.1 => Ok(()),
                    _ => Err("declared unbounded but constant on the sampled horizon".into()),
                }
            }
            SeqClass::ParityInterleaved(e, o) => {
                let ev: Vec<(u64, i64)> = samples.iter().copied().filter(|(n, _)| n % 2 == 0).collect();
                let od: Vec<(u64, i64)> = samples.iter().copied().filter(|(n, _)| n % 2 == 1).collect();
                e.check(&ev, start)?;
                o.check(&od, start)
            }
        }
    }
}

/// A finite prefix followed by a tail sequence, with a declared class.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExplicitSeq {
    #[serde(default)]
    pub prefix: Vec<i64>,
    pub then: Box<IndexSequence>,
    pub class: SeqClass,
}

/// A sequence given by a Rust closure and a declared class.
#[derive(Clone)]
pub struct Generated {
    f: Arc<dyn Fn(u64) -> i64 + Send + Sync>,
    class: SeqClass,
}

impl fmt::Debug for Generated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generated({:?})", self.class)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexSequence {
    #[serde(rename = "const")]
    Constant(i64),
    /// `a*n + b`
    Affine(i64, i64),
    /// Even-indexed entries from the first, odd-indexed from the second.
    Parity(Box<IndexSequence>, Box<IndexSequence>),
    Explicit(ExplicitSeq),
    #[serde(skip)]
    Generated(Generated),
}

impl IndexSequence {
    pub fn parity(even: IndexSequence, odd: IndexSequence) -> Self {
        IndexSequence::Parity(Box::new(even), Box::new(odd))
    }

    pub fn explicit(prefix: Vec<i64>, then: IndexSequence, class: SeqClass) -> Self {
        IndexSequence::Explicit(ExplicitSeq { prefix, then: Box::new(then), class })
    }

    pub fn generated(f: impl Fn(u64) -> i64 + Send + Sync + 'static, class: SeqClass) -> Self {
        IndexSequence::Generated(Generated { f: Arc::new(f), class })
    }

    pub fn eval(&self, n: u64) -> i64 {
        match self {
            IndexSequence::Constant(c) => *c,
            IndexSequence::Affine(a, b) => a * n as i64 + b,
            IndexSequence::Parity(e, o) => {
                if n.is_multiple_of(2) {
                    e.eval(n)
                } else {
                    o.eval(n)
                }
            }
            IndexSequence::Explicit(x) => match x.prefix.get(n as usize) {
                Some(v) => *v,
                None => x.then.eval(n),
            },
            IndexSequence::Generated(g) => (g.f)(n),
        }
    }

    /// Eventual form per residue class.
    pub fn form(&self) -> Periodic<Form> {
        match self {
            IndexSequence::Constant(c) => Periodic::uniform(Form::constant(*c)),
            IndexSequence::Affine(a, b) => Periodic::uniform(Form::affine(*a, *b)),
            IndexSequence::Parity(e, o) => Periodic::interleave(&e.form(), &o.form()),
            IndexSequence::Explicit(x) => x.then.form(),
            IndexSequence::Generated(g) => g.class.form(),
        }
    }

    /// Check declared classes against the values on `n <= horizon`.
    pub fn validate(&self, horizon: u64) -> Result<(), UltraError> {
        let (class, start) = match self {
            IndexSequence::Parity(e, o) => {
                e.validate(horizon)?;
                return o.validate(horizon);
            }
            IndexSequence::Explicit(x) => {
                x.then.validate(horizon)?;
                (&x.class, x.prefix.len() as u64)
            }
            IndexSequence::Generated(g) => (&g.class, 0),
            _ => return Ok(()),
        };
        let samples: Vec<(u64, i64)> = (0..=horizon).map(|n| (n, self.eval(n))).collect();
        class.check(&samples, start).map_err(UltraError::ClassViolation)
    }

    /// The sequence `a_n + delta`.
    pub fn shifted(&self, delta: i64) -> IndexSequence {
        match self {
            IndexSequence::Constant(c) => IndexSequence::Constant(c + delta),
            IndexSequence::Affine(a, b) => IndexSequence::Affine(*a, b + delta),
            IndexSequence::Parity(e, o) => IndexSequence::parity(e.shifted(delta), o.shifted(delta)),
            IndexSequence::Explicit(x) => IndexSequence::explicit(
                x.prefix.iter().map(|v| v + delta).collect(),
                x.then.shifted(delta),
                shift_class(&x.class, delta),
            ),
            IndexSequence::Generated(g) => {
                let f = g.f.clone();
                IndexSequence::Generated(Generated {
                    f: Arc::new(move |n| f(n) + delta),
                    class: shift_class(&g.class, delta),
                })
            }
        }
    }

    /// Parse a parameter literal: an integer, an affine term in `n`
    /// (`n`, `-n`, `2n+1`, `3*n-2`), or a named sequence `x[k]` / `k`
    /// resolved through `lookup`.
    pub fn parse_param(s: &str, lookup: &dyn Fn(&str) -> Option<IndexSequence>) -> Result<IndexSequence, UltraError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || UltraError::Parse(format!("bad index literal `{s}`"));
        if let Ok(c) = t.parse::<i64>() {
            return Ok(IndexSequence::Constant(c));
        }
        if let (Some(open), true) = (t.find('['), t.ends_with(']')) {
            return lookup(&t[open + 1..t.len() - 1]).ok_or_else(bad);
        }
        if let Some(pos) = t.find('n') {
            let (coef, rest) = (t[..pos].trim_end_matches('*'), &t[pos + 1..]);
            let a = match coef {
                "" | "+" => 1,
                "-" => -1,
                c => c.parse::<i64>().map_err(|_| bad())?,
            };
            let b = match rest {
                "" => 0,
                r if r.starts_with('+') || r.starts_with('-') => r.parse::<i64>().map_err(|_| bad())?,
                _ => return Err(bad()),
            };
            return Ok(IndexSequence::Affine(a, b));
        }
        lookup(&t).ok_or_else(bad)
    }

    /// A random sequence with non-negative values on every index, mixing
    /// the constant, affine, parity and explicit classes.
    pub fn random_nonneg<R: Rng>(rng: &mut R, radius: i64) -> IndexSequence {
        match rng.gen_range(0..5) {
            0 => IndexSequence::Constant(rng.gen_range(0..=radius)),
            1 => IndexSequence::Affine(rng.gen_range(0..=3), rng.gen_range(0..=radius)),
            2 => IndexSequence::parity(Self::random_simple(rng, radius), Self::random_simple(rng, radius)),
            _ => {
                let prefix: Vec<i64> = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..=radius)).collect();
                let then = Self::random_simple(rng, radius);
                let class = match then {
                    IndexSequence::Affine(a, _) if a > 0 => SeqClass::MonotoneUnbounded,
                    _ => {
                        let top = prefix.iter().copied().chain([then.eval(0)]).max().unwrap_or(0);
                        SeqClass::Bounded(top as u64)
                    }
                };
                IndexSequence::explicit(prefix, then, class)
            }
        }
    }

    fn random_simple<R: Rng>(rng: &mut R, radius: i64) -> IndexSequence {
        if rng.gen_bool(0.5) {
            IndexSequence::Constant(rng.gen_range(0..=radius))
        } else {
            IndexSequence::Affine(rng.gen_range(0..=3), rng.gen_range(0..=radius))
        }
    }

    /// A random sequence that may take negative values.
    pub fn random_signed<R: Rng>(rng: &mut R, radius: i64) -> IndexSequence {
        let s = Self::random_nonneg(rng, radius);
        if rng.gen_bool(0.5) {
            match s {
                IndexSequence::Constant(c) => IndexSequence::Constant(-c),
                IndexSequence::Affine(a, b) => IndexSequence::Affine(-a, -b),
                other => other.shifted(-radius),
            }
        } else {
            s
        }
    }
}

fn shift_class(c: &SeqClass, delta: i64) -> SeqClass {
    match c {
        SeqClass::Bounded(k) => SeqClass::Bounded(k + delta.unsigned_abs()),
        SeqClass::MonotoneUnbounded => SeqClass::MonotoneUnbounded,
        SeqClass::ParityInterleaved(e, o) => {
            SeqClass::ParityInterleaved(Box::new(shift_class(e, delta)), Box::new(shift_class(o, delta)))
        }
    }
}

impl fmt::Display for IndexSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSequence::Constant(c) => write!(f, "{c}"),
            IndexSequence::Affine(a, b) => {
                match a {
                    1 => write!(f, "n")?,
                    -1 => write!(f, "-n")?,
                    a => write!(f, "{a}n")?,
                }
                if *b != 0 {
                    write!(f, "{b:+}")?;
                }
                Ok(())
            }
            IndexSequence::Parity(e, o) => write!(f, "parity({e}, {o})"),
            IndexSequence::Explicit(x) => write!(f, "explicit({:?} then {})", x.prefix, x.then),
            IndexSequence::Generated(g) => write!(f, "generated({:?})", g.class),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

/// A decidable predicate over the index `n`, built from comparisons of
/// index sequences.
#[derive(Debug, Clone)]
pub enum Predicate {
    Cmp(IndexSequence, CmpOp, IndexSequence),
    Not(Box<Predicate>),
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
}

pub fn compare_forms(a: &Form, op: CmpOp, b: &Form) -> Ev {
    match op {
        CmpOp::Lt => a.lt(b),
        CmpOp::Le => a.le(b),
        CmpOp::Eq => a.eq_to(b),
        CmpOp::Ne => a.eq_to(b).not(),
        CmpOp::Ge => a.lt(b).not(),
        CmpOp::Gt => b.lt(a),
    }
}

impl Predicate {
    pub fn cmp(a: IndexSequence, op: CmpOp, b: IndexSequence) -> Self {
        Predicate::Cmp(a, op, b)
    }

    pub fn negate(self) -> Self {
        Predicate::Not(Box::new(self))
    }

    /// Eventual truth per residue class.
    pub fn truth(&self) -> Periodic<Ev> {
        match self {
            Predicate::Cmp(a, op, b) => a.form().zip(&b.form(), |x, y| compare_forms(x, *op, y)),
            Predicate::Not(p) => p.truth().map(|e| e.not()),
            Predicate::And(p, q) => p.truth().zip(&q.truth(), |a, b| a.and(b)),
            Predicate::Or(p, q) => p.truth().zip(&q.truth(), |a, b| a.or(b)),
        }
    }

    pub fn holds_at(&self, n: u64) -> bool {
        match self {
            Predicate::Cmp(a, op, b) => {
                let (x, y) = (a.eval(n), b.eval(n));
                match op {
                    CmpOp::Lt => x < y,
                    CmpOp::Le => x <= y,
                    CmpOp::Eq => x == y,
                    CmpOp::Ne => x != y,
                    CmpOp::Ge => x >= y,
                    CmpOp::Gt => x > y,
                }
            }
            Predicate::Not(p) => !p.holds_at(n),
            Predicate::And(p, q) => p.holds_at(n) && q.holds_at(n),
            Predicate::Or(p, q) => p.holds_at(n) || q.holds_at(n),
        }
    }
}
