//! Structured node terms shared by the 0-graph and 1-graph catalogs.
//!
//! A node is a constructor tag plus integer parameters. The literal syntax
//! (`p:5`, `lad:g`, `grid:3,4`, `x1:2`, ...) is used by the CLI and job files.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad node literal `{0}`")]
pub struct NodeParseError(pub String);

/// Constructor tags. The first group are 0-nodes of the conventional catalog,
/// the second 0-nodes of the 1-graph catalog, the last two are 1-nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ctor {
    Path,
    Rung,
    Ground,
    Ray,
    Grid,
    DiamondJ,
    DiamondL,
    DiamondR,
    Segment,
    Spoke,
    Rail,
    Hub,
    SpokeEnd,
    One,
    OneGround,
}

impl Ctor {
    pub const ALL: [Ctor; 15] = [
        Ctor::Path,
        Ctor::Rung,
        Ctor::Ground,
        Ctor::Ray,
        Ctor::Grid,
        Ctor::DiamondJ,
        Ctor::DiamondL,
        Ctor::DiamondR,
        Ctor::Segment,
        Ctor::Spoke,
        Ctor::Rail,
        Ctor::Hub,
        Ctor::SpokeEnd,
        Ctor::One,
        Ctor::OneGround,
    ];

    pub fn arity(self) -> usize {
        match self {
            Ctor::Ground | Ctor::Hub | Ctor::OneGround => 0,
            Ctor::Path | Ctor::Rung | Ctor::Ray | Ctor::SpokeEnd | Ctor::One => 1,
            _ => 2,
        }
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Ctor::Path => "p",
            Ctor::Rung | Ctor::Ground => "lad",
            Ctor::Ray => "ray",
            Ctor::Grid => "grid",
            Ctor::DiamondJ => "j",
            Ctor::DiamondL => "l",
            Ctor::DiamondR => "r",
            Ctor::Segment => "e",
            Ctor::Spoke => "sp",
            Ctor::Rail => "rl",
            Ctor::Hub => "hub",
            Ctor::SpokeEnd => "u",
            Ctor::One | Ctor::OneGround => "x1",
        }
    }

    pub fn is_one_node(self) -> bool {
        matches!(self, Ctor::One | Ctor::OneGround)
    }

    /// Resolve a literal head (`lad`, `x1`, ...) and its argument count to a
    /// constructor; `g` arguments select the nullary ground variants.
    fn from_head(head: &str, args: &[&str]) -> Option<Ctor> {
        let ground = args.len() == 1 && args[0].trim() == "g";
        let c = match head {
            "p" => Ctor::Path,
            "lad" if ground => Ctor::Ground,
            "lad" => Ctor::Rung,
            "ray" => Ctor::Ray,
            "grid" => Ctor::Grid,
            "j" => Ctor::DiamondJ,
            "l" => Ctor::DiamondL,
            "r" => Ctor::DiamondR,
            "e" => Ctor::Segment,
            "sp" => Ctor::Spoke,
            "rl" => Ctor::Rail,
            "hub" => Ctor::Hub,
            "u" => Ctor::SpokeEnd,
            "x1" if ground => Ctor::OneGround,
            "x1" => Ctor::One,
            _ => return None,
        };
        Some(c)
    }
}

/// Split a literal `head:a,b` into its head and raw argument strings.
/// `x0:k` is an alias for the chain base `j:k,0`, returned with the extra `0`.
pub(crate) fn split_literal(s: &str) -> Result<(Ctor, Vec<String>), NodeParseError> {
    let err = || NodeParseError(s.to_string());
    let t = s.trim();
    if t == "hub" {
        return Ok((Ctor::Hub, vec![]));
    }
    let (head, rest) = t.split_once(':').ok_or_else(err)?;
    let mut args: Vec<String> = rest.split(',').map(|a| a.trim().to_string()).collect();
    if head == "x0" {
        if args.len() != 1 {
            return Err(err());
        }
        args.push("0".into());
        return Ok((Ctor::DiamondJ, args));
    }
    let refs: Vec<&str> = args.iter().map(|a| a.as_str()).collect();
    let ctor = Ctor::from_head(head, &refs).ok_or_else(err)?;
    if ctor.arity() == 0 {
        return Ok((ctor, vec![]));
    }
    if args.len() != ctor.arity() {
        return Err(err());
    }
    Ok((ctor, args))
}

/// A 0-node of any catalog graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeId {
    Path(i64),
    Rung(i64),
    Ground,
    Ray(i64),
    Grid(i64, i64),
    DiamondJ(i64, i64),
    DiamondL(i64, i64),
    DiamondR(i64, i64),
    Segment(i64, i64),
    Spoke(i64, i64),
    Rail(i64, i64),
    Hub,
    SpokeEnd(i64),
}

/// A 1-node label: indexed, or the ladder ground of the ladder-of-endless-paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OneNodeId {
    Index(i64),
    Ground,
}

/// A node of either rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeRef {
    Zero(NodeId),
    One(OneNodeId),
}

impl NodeId {
    pub fn ctor(&self) -> Ctor {
        match self {
            NodeId::Path(_) => Ctor::Path,
            NodeId::Rung(_) => Ctor::Rung,
            NodeId::Ground => Ctor::Ground,
            NodeId::Ray(_) => Ctor::Ray,
            NodeId::Grid(..) => Ctor::Grid,
            NodeId::DiamondJ(..) => Ctor::DiamondJ,
            NodeId::DiamondL(..) => Ctor::DiamondL,
            NodeId::DiamondR(..) => Ctor::DiamondR,
            NodeId::Segment(..) => Ctor::Segment,
            NodeId::Spoke(..) => Ctor::Spoke,
            NodeId::Rail(..) => Ctor::Rail,
            NodeId::Hub => Ctor::Hub,
            NodeId::SpokeEnd(_) => Ctor::SpokeEnd,
        }
    }

    pub fn params(&self) -> Vec<i64> {
        match *self {
            NodeId::Ground | NodeId::Hub => vec![],
            NodeId::Path(a) | NodeId::Rung(a) | NodeId::Ray(a) | NodeId::SpokeEnd(a) => vec![a],
            NodeId::Grid(a, b)
            | NodeId::DiamondJ(a, b)
            | NodeId::DiamondL(a, b)
            | NodeId::DiamondR(a, b)
            | NodeId::Segment(a, b)
            | NodeId::Spoke(a, b)
            | NodeId::Rail(a, b) => vec![a, b],
        }
    }

    /// Largest absolute parameter; used for truncations.
    pub fn norm(&self) -> i64 {
        self.params().iter().map(|p| p.abs()).max().unwrap_or(0)
    }
}

impl OneNodeId {
    pub fn index(&self) -> Option<i64> {
        match self {
            OneNodeId::Index(k) => Some(*k),
            OneNodeId::Ground => None,
        }
    }
}

impl NodeRef {
    pub fn ctor(&self) -> Ctor {
        match self {
            NodeRef::Zero(z) => z.ctor(),
            NodeRef::One(OneNodeId::Index(_)) => Ctor::One,
            NodeRef::One(OneNodeId::Ground) => Ctor::OneGround,
        }
    }

    pub fn params(&self) -> Vec<i64> {
        match self {
            NodeRef::Zero(z) => z.params(),
            NodeRef::One(OneNodeId::Index(k)) => vec![*k],
            NodeRef::One(OneNodeId::Ground) => vec![],
        }
    }

    /// Build a node from a constructor and parameters of matching arity.
    pub fn build(ctor: Ctor, p: &[i64]) -> Option<NodeRef> {
        if p.len() != ctor.arity() {
            return None;
        }
        let z = |n: NodeId| Some(NodeRef::Zero(n));
        match ctor {
            Ctor::Path => z(NodeId::Path(p[0])),
            Ctor::Rung => z(NodeId::Rung(p[0])),
            Ctor::Ground => z(NodeId::Ground),
            Ctor::Ray => z(NodeId::Ray(p[0])),
            Ctor::Grid => z(NodeId::Grid(p[0], p[1])),
            Ctor::DiamondJ => z(NodeId::DiamondJ(p[0], p[1])),
            Ctor::DiamondL => z(NodeId::DiamondL(p[0], p[1])),
            Ctor::DiamondR => z(NodeId::DiamondR(p[0], p[1])),
            Ctor::Segment => z(NodeId::Segment(p[0], p[1])),
            Ctor::Spoke => z(NodeId::Spoke(p[0], p[1])),
            Ctor::Rail => z(NodeId::Rail(p[0], p[1])),
            Ctor::Hub => z(NodeId::Hub),
            Ctor::SpokeEnd => z(NodeId::SpokeEnd(p[0])),
            Ctor::One => Some(NodeRef::One(OneNodeId::Index(p[0]))),
            Ctor::OneGround => Some(NodeRef::One(OneNodeId::Ground)),
        }
    }

    pub fn as_zero(&self) -> Option<&NodeId> {
        match self {
            NodeRef::Zero(z) => Some(z),
            NodeRef::One(_) => None,
        }
    }

    /// Deterministic tie-break order: constructor, then parameters with
    /// non-negative values before negative ones of equal magnitude.
    pub fn canonical_key(&self) -> (Ctor, Vec<(bool, u64)>) {
        let key = self.params().iter().map(|&v| (v < 0, v.unsigned_abs())).collect();
        (self.ctor(), key)
    }
}

impl From<NodeId> for NodeRef {
    fn from(z: NodeId) -> Self {
        NodeRef::Zero(z)
    }
}

impl From<OneNodeId> for NodeRef {
    fn from(o: OneNodeId) -> Self {
        NodeRef::One(o)
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.ctor();
        match c {
            Ctor::Ground | Ctor::OneGround => write!(f, "{}:g", c.prefix()),
            Ctor::Hub => write!(f, "hub"),
            _ => {
                let ps: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
                write!(f, "{}:{}", c.prefix(), ps.join(","))
            }
        }
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        NodeRef::Zero(self.clone()).fmt(f)
    }
}

impl fmt::Display for OneNodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        NodeRef::One(*self).fmt(f)
    }
}

impl FromStr for NodeRef {
    type Err = NodeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (ctor, args) = split_literal(s)?;
        let params = args
            .iter()
            .map(|a| a.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| NodeParseError(s.to_string()))?;
        NodeRef::build(ctor, &params).ok_or_else(|| NodeParseError(s.to_string()))
    }
}

impl FromStr for NodeId {
    type Err = NodeParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<NodeRef>()? {
            NodeRef::Zero(z) => Ok(z),
            NodeRef::One(_) => Err(NodeParseError(s.to_string())),
        }
    }
}

impl Serialize for NodeRef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for NodeRef {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_parse_and_render() {
        for lit in [
            "p:5", "p:-3", "lad:7", "lad:g", "ray:4", "grid:3,4", "j:2,5", "l:0,1", "r:3,3", "e:-1,4", "sp:2,-7",
            "rl:0,0", "hub", "u:3", "x1:3", "x1:g",
        ] {
            let n: NodeRef = lit.parse().unwrap();
            assert_eq!(n.to_string(), lit);
        }
        assert_eq!("x0:2".parse::<NodeRef>().unwrap(), NodeRef::Zero(NodeId::DiamondJ(2, 0)));
    }

    #[test]
    fn bad_literals() {
        for lit in ["", "q:1", "grid:1", "p:1,2", "p:x", "x0:1,2", "lad"] {
            assert!(lit.parse::<NodeRef>().is_err(), "{lit}");
        }
    }

    #[test]
    fn canonical_key_prefers_non_negative() {
        let a: NodeRef = "p:1".parse().unwrap();
        let b: NodeRef = "p:-1".parse().unwrap();
        assert!(a.canonical_key() < b.canonical_key());
    }
}
