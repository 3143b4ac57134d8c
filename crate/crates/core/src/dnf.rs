//! Literals, conjunctions and disjunctive normal forms over at most 63 variables.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest variable count representable by a [`Conjunction`].
pub const MAX_VARS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A variable (0-based index) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub polarity: Polarity,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            polarity: Polarity::Positive,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            polarity: Polarity::Negative,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.polarity == Polarity::Positive
    }

    pub fn negated(&self) -> Self {
        Literal {
            var: self.var,
            polarity: match self.polarity {
                Polarity::Positive => Polarity::Negative,
                Polarity::Negative => Polarity::Positive,
            },
        }
    }

    /// `+j` for `x_j`, `-j` for its negation, with 1-based `j`.
    pub fn to_signed(&self) -> i64 {
        let j = self.var as i64 + 1;
        if self.is_positive() {
            j
        } else {
            -j
        }
    }

    pub fn from_signed(s: i64) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidConjunction("literal 0 is not allowed".into()));
        }
        let var = (s.unsigned_abs() - 1) as usize;
        if var >= MAX_VARS {
            return Err(Error::LimitExceeded {
                what: "variable index",
                value: var + 1,
                limit: MAX_VARS,
            });
        }
        Ok(if s > 0 {
            Literal::pos(var)
        } else {
            Literal::neg(var)
        })
    }

    /// Value of the literal at a packed point.
    pub fn eval(&self, point: u64) -> bool {
        (point >> self.var & 1 == 1) == self.is_positive()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var + 1)
        } else {
            write!(f, "~x{}", self.var + 1)
        }
    }
}

/// A nonempty conjunction of literals with at most one literal per variable.
///
/// Its face `N_K` is the subcube of points where every literal is true.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Conjunction {
    pos: u64,
    neg: u64,
}

impl Conjunction {
    pub fn new<I: IntoIterator<Item = Literal>>(literals: I) -> Result<Self> {
        let (mut pos, mut neg) = (0u64, 0u64);
        for l in literals {
            if l.var >= MAX_VARS {
                return Err(Error::LimitExceeded {
                    what: "variable index",
                    value: l.var + 1,
                    limit: MAX_VARS,
                });
            }
            let bit = 1u64 << l.var;
            if (pos | neg) & bit != 0 {
                return Err(Error::InvalidConjunction(format!(
                    "variable x{} repeated",
                    l.var + 1
                )));
            }
            if l.is_positive() {
                pos |= bit;
            } else {
                neg |= bit;
            }
        }
        Self::from_masks(pos, neg)
    }

    pub fn from_masks(pos: u64, neg: u64) -> Result<Self> {
        if pos & neg != 0 {
            return Err(Error::InvalidConjunction(
                "a variable occurs with both polarities".into(),
            ));
        }
        if pos | neg == 0 {
            return Err(Error::InvalidConjunction("empty conjunction".into()));
        }
        if (pos | neg) >> MAX_VARS != 0 {
            return Err(Error::LimitExceeded {
                what: "variable index",
                value: 64,
                limit: MAX_VARS,
            });
        }
        Ok(Conjunction { pos, neg })
    }

    pub fn from_signed(lits: &[i64]) -> Result<Self> {
        Self::new(
            lits.iter()
                .map(|&s| Literal::from_signed(s))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn positive_mask(&self) -> u64 {
        self.pos
    }

    pub fn negative_mask(&self) -> u64 {
        self.neg
    }

    /// Variables mentioned by the conjunction.
    pub fn support(&self) -> u64 {
        self.pos | self.neg
    }

    pub fn rank(&self) -> usize {
        self.support().count_ones() as usize
    }

    pub fn rank_pos(&self) -> usize {
        self.pos.count_ones() as usize
    }

    pub fn rank_neg(&self) -> usize {
        self.neg.count_ones() as usize
    }

    /// Highest variable index used plus one.
    pub fn arity(&self) -> usize {
        64 - self.support().leading_zeros() as usize
    }

    pub fn contains(&self, l: Literal) -> bool {
        let bit = 1u64 << l.var;
        if l.is_positive() {
            self.pos & bit != 0
        } else {
            self.neg & bit != 0
        }
    }

    /// Literals ordered by variable index.
    pub fn literals(&self) -> Vec<Literal> {
        let mut out = Vec::with_capacity(self.rank());
        let mut s = self.support();
        while s != 0 {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            out.push(if self.pos >> v & 1 == 1 {
                Literal::pos(v)
            } else {
                Literal::neg(v)
            });
        }
        out
    }

    /// Conjunction with `l` removed; `None` if that leaves it empty.
    pub fn without(&self, l: Literal) -> Option<Self> {
        let bit = 1u64 << l.var;
        Self::from_masks(self.pos & !bit, self.neg & !bit).ok()
    }

    pub fn covers(&self, point: u64) -> bool {
        point & self.pos == self.pos && point & self.neg == 0
    }

    /// The face of `self` contains the face of `other`.
    pub fn subsumes(&self, other: &Conjunction) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.literals().iter().map(Literal::to_signed).collect()
    }

    /// Calls `visit` on every point of the face inside the `n`-cube.
    pub fn for_each_point(&self, n: usize, mut visit: impl FnMut(u64)) {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let free = full & !self.support();
        let mut sub = 0u64;
        loop {
            visit(self.pos | sub);
            if sub == free {
                break;
            }
            sub = (sub.wrapping_sub(free)) & free;
        }
    }
}

impl Ord for Conjunction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.literals().cmp(&other.literals())
    }
}

impl PartialOrd for Conjunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.literals().iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Which size measure of a DNF to minimize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Total number of literals.
    Rank,
    /// Number of conjunctions.
    Length,
}

impl Objective {
    pub fn cost(&self, c: &Conjunction) -> u64 {
        match self {
            Objective::Rank => c.rank() as u64,
            Objective::Length => 1,
        }
    }

    pub fn measure(&self, d: &Dnf) -> u64 {
        d.iter().map(|c| self.cost(c)).sum()
    }
}

impl std::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rank" => Ok(Objective::Rank),
            "length" => Ok(Objective::Length),
            other => Err(Error::InvalidParameter(format!(
                "unknown objective {other:?}"
            ))),
        }
    }
}

/// A set of conjunctions, kept sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Dnf {
    conjunctions: Vec<Conjunction>,
}

impl Dnf {
    pub fn new<I: IntoIterator<Item = Conjunction>>(conjunctions: I) -> Self {
        let mut conjunctions: Vec<Conjunction> = conjunctions.into_iter().collect();
        conjunctions.sort();
        conjunctions.dedup();
        Dnf { conjunctions }
    }

    pub fn from_signed(lists: &[Vec<i64>]) -> Result<Self> {
        Ok(Dnf::new(
            lists
                .iter()
                .map(|l| Conjunction::from_signed(l))
                .collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn conjunctions(&self) -> &[Conjunction] {
        &self.conjunctions
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Conjunction> {
        self.conjunctions.iter()
    }

    pub fn length(&self) -> usize {
        self.conjunctions.len()
    }

    pub fn rank(&self) -> usize {
        self.iter().map(Conjunction::rank).sum()
    }

    pub fn rank_pos(&self) -> usize {
        self.iter().map(Conjunction::rank_pos).sum()
    }

    pub fn rank_neg(&self) -> usize {
        self.iter().map(Conjunction::rank_neg).sum()
    }

    pub fn arity(&self) -> usize {
        self.iter().map(Conjunction::arity).max().unwrap_or(0)
    }

    pub fn evaluate(&self, point: u64) -> bool {
        self.iter().any(|c| c.covers(point))
    }

    /// Number of conjunctions containing `l`.
    pub fn multiplicity(&self, l: Literal) -> usize {
        self.iter().filter(|c| c.contains(l)).count()
    }

    pub fn union(&self, other: &Dnf) -> Dnf {
        Dnf::new(self.iter().chain(other.iter()).copied())
    }

    pub fn to_signed(&self) -> Vec<Vec<i64>> {
        self.iter().map(Conjunction::to_signed).collect()
    }
}

impl Serialize for Conjunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}

impl Serialize for Dnf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}

impl<'a> IntoIterator for &'a Dnf {
    type Item = &'a Conjunction;
    type IntoIter = std::slice::Iter<'a, Conjunction>;

    fn into_iter(self) -> Self::IntoIter {
        self.conjunctions.iter()
    }
}

impl fmt::Display for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjunctions.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" | "))
    }
}

impl fmt::Debug for Dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dnf({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjunction_rejects_repeated_variables() {
        assert!(Conjunction::new([Literal::pos(0), Literal::neg(0)]).is_err());
        assert!(Conjunction::new([Literal::pos(0), Literal::pos(0)]).is_err());
        assert!(Conjunction::new([]).is_err());
        assert!(Conjunction::from_signed(&[0]).is_err());
    }

    #[test]
    fn signed_round_trip_and_order() {
        let c = Conjunction::from_signed(&[-2, 1]).unwrap();
        assert_eq!(c.to_signed(), vec![1, -2]);
        assert_eq!(c.rank(), 2);
        assert_eq!((c.rank_pos(), c.rank_neg()), (1, 1));
        let d = Dnf::from_signed(&[vec![2, 3], vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(d.to_signed(), vec![vec![1, 2], vec![2, 3]]);
        assert_eq!(d.to_string(), "x1 x2 | x2 x3");
    }

    #[test]
    fn face_enumeration() {
        let c = Conjunction::from_signed(&[1, -3]).unwrap();
        let mut pts = Vec::new();
        c.for_each_point(4, |p| pts.push(p));
        assert_eq!(pts.len(), 4);
        assert!(pts.iter().all(|&p| c.covers(p)));
        pts.sort();
        pts.dedup();
        assert_eq!(pts.len(), 4);
    }
}
