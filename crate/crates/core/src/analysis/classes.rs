//! Own literals, the six structural conjunction classes and the counting
//! inequalities built on them.

use std::collections::BTreeMap;

use serde::Serialize;

use super::bounds::{epsilon, serialize_ratio, Rational};
use crate::dnf::{Conjunction, Dnf, Literal};
use crate::error::{Error, Result};
use crate::model::{classify_matrix, FewZeroFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ConjunctionClass {
    K1,
    K2,
    K3,
    K4,
    K5,
    K6,
    #[serde(rename = "UNCLASSIFIED")]
    Unclassified,
}

impl ConjunctionClass {
    fn slot(self) -> Option<usize> {
        match self {
            ConjunctionClass::K1 => Some(0),
            ConjunctionClass::K2 => Some(1),
            ConjunctionClass::K3 => Some(2),
            ConjunctionClass::K4 => Some(3),
            ConjunctionClass::K5 => Some(4),
            ConjunctionClass::K6 => Some(5),
            ConjunctionClass::Unclassified => None,
        }
    }
}

/// Which parts of the class-membership precondition hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassPrecondition {
    pub reduced: bool,
    pub no_adjacent_zeros: bool,
    pub ones_le_zeros: bool,
    /// Minimum column weight of the zero matrix.
    pub min_column_weight: usize,
    /// `floor(k/3) + 1`.
    pub required_weight: usize,
    pub holds: bool,
}

impl ClassPrecondition {
    pub fn of(f: &FewZeroFunction) -> Self {
        let c = classify_matrix(f);
        let required_weight = f.k() / 3 + 1;
        let holds = c.in_phi(required_weight) && c.ones_le_zeros_all_columns;
        ClassPrecondition {
            reduced: c.is_reduced,
            no_adjacent_zeros: !c.has_adjacent_zeros,
            ones_le_zeros: c.ones_le_zeros_all_columns,
            min_column_weight: c.min_column_weight,
            required_weight,
            holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiteralCount {
    /// Signed 1-based literal (`-3` is `~x3`).
    pub literal: i64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifiedConjunction {
    pub conjunction: Conjunction,
    pub class: ConjunctionClass,
    pub own_literals: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub precondition: ClassPrecondition,
    pub conjunctions: Vec<ClassifiedConjunction>,
    /// Class sizes `mu_1 .. mu_6`.
    pub mu: [usize; 6],
    pub unclassified_count: usize,
    pub own_literal_table: Vec<LiteralCount>,
}

/// Class of `c` given the multiplicities of all literals in its DNF.
/// Rank-2 shapes are decided first, then the own-negative shapes, then the
/// single-positive shape.
pub fn conjunction_class(
    c: &Conjunction,
    multiplicity: &BTreeMap<Literal, usize>,
) -> ConjunctionClass {
    let own: Vec<Literal> = c
        .literals()
        .into_iter()
        .filter(|l| multiplicity.get(l) == Some(&1))
        .collect();
    let (pos, neg) = (c.rank_pos(), c.rank_neg());
    if c.rank() == 2 {
        return match (pos, neg) {
            (2, 0) => ConjunctionClass::K5,
            (1, 1) => ConjunctionClass::K6,
            _ => ConjunctionClass::Unclassified,
        };
    }
    if own.len() == 1 && !own[0].is_positive() {
        return if pos == 0 && c.rank() >= 3 {
            ConjunctionClass::K2
        } else if pos >= 1 && neg >= 2 && c.rank() >= 3 {
            ConjunctionClass::K3
        } else {
            ConjunctionClass::K4
        };
    }
    if pos == 1 && neg >= 2 && own.iter().all(|l| l.is_positive()) {
        return ConjunctionClass::K1;
    }
    ConjunctionClass::Unclassified
}

fn literal_table(d: &Dnf) -> BTreeMap<Literal, usize> {
    let mut table = BTreeMap::new();
    for c in d {
        for l in c.literals() {
            *table.entry(l).or_insert(0) += 1;
        }
    }
    table
}

/// Classifies every conjunction of `d`, whether or not `f` satisfies the
/// precondition; the report says which parts of it hold.
pub fn classification_report(f: &FewZeroFunction, d: &Dnf) -> Result<ClassificationReport> {
    if d.arity() > f.n() {
        return Err(Error::ArityMismatch {
            expected: f.n(),
            got: d.arity(),
        });
    }
    let table = literal_table(d);
    let mut mu = [0usize; 6];
    let mut unclassified_count = 0;
    let conjunctions = d
        .iter()
        .map(|c| {
            let class = conjunction_class(c, &table);
            match class.slot() {
                Some(s) => mu[s] += 1,
                None => unclassified_count += 1,
            }
            ClassifiedConjunction {
                conjunction: *c,
                class,
                own_literals: c
                    .literals()
                    .into_iter()
                    .filter(|l| table.get(l) == Some(&1))
                    .map(|l| l.to_signed())
                    .collect(),
            }
        })
        .collect();
    Ok(ClassificationReport {
        precondition: ClassPrecondition::of(f),
        conjunctions,
        mu,
        unclassified_count,
        own_literal_table: table
            .iter()
            .map(|(l, &m)| LiteralCount {
                literal: l.to_signed(),
                multiplicity: m,
            })
            .collect(),
    })
}

/// Like [`classification_report`] but rejects functions outside the class.
pub fn classify_conjunctions(f: &FewZeroFunction, d: &Dnf) -> Result<ClassificationReport> {
    let report = classification_report(f, d)?;
    let p = &report.precondition;
    if !p.holds {
        return Err(Error::PreconditionViolated(format!(
            "function must be reduced with pairwise non-adjacent zeros, at most as many ones as zeros per column and column weights >= {} (reduced: {}, non-adjacent: {}, ones <= zeros: {}, min weight: {})",
            p.required_weight, p.reduced, p.no_adjacent_zeros, p.ones_le_zeros, p.min_column_weight
        )));
    }
    Ok(report)
}

/// One side-by-side comparison `lhs > rhs` (or `>=` for the rank bounds).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(serialize_with = "serialize_ratio")]
    pub lhs: Rational,
    #[serde(serialize_with = "serialize_ratio")]
    pub rhs: Rational,
    pub holds: bool,
}

impl Verdict {
    fn strict(lhs: Rational, rhs: Rational) -> Self {
        Verdict {
            holds: lhs > rhs,
            lhs,
            rhs,
        }
    }

    fn weak(lhs: Rational, rhs: Rational) -> Self {
        Verdict {
            holds: lhs >= rhs,
            lhs,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub epsilon: Rational,
    /// `None` when some conjunction is unclassified.
    pub counting_negative: Option<Verdict>,
    pub counting_positive: Option<Verdict>,
    /// `rank+ D` against its lower bound.
    pub rank_positive: Option<Verdict>,
    /// `rank- D` against its lower bound.
    pub rank_negative: Option<Verdict>,
}

impl InequalityReport {
    /// Every evaluated verdict holds; `None` when nothing was evaluated.
    pub fn all_hold(&self) -> Option<bool> {
        let v = [
            &self.counting_negative,
            &self.counting_positive,
            &self.rank_positive,
            &self.rank_negative,
        ];
        if v.iter().any(|x| x.is_none()) {
            return None;
        }
        Some(v.iter().all(|x| x.as_ref().is_some_and(|x| x.holds)))
    }
}

/// Evaluates the four inequalities for class sizes `mu` at
/// `eps = (k - 2m) / k`:
///
/// * `(1+3e)mu2 + 2e mu1 + mu6 + mu4 + mu3 > n(1-e)`,
/// * `(1+e)mu1 + (1+e)mu6 + 2mu5 + e mu4 + 2e mu3 > n`,
/// * `rank+ >= max(2n - mu1, mu1 + 2mu5 + mu6 + 2mu4 + mu3)`,
/// * `rank- >= max(2n - mu2 - mu4 - mu3, 3mu2 + 2mu1 + mu6 + mu4 + 2mu3)`.
pub fn inequality_verdicts(
    n: usize,
    k: usize,
    m: usize,
    mu: [usize; 6],
    rank_pos: usize,
    rank_neg: usize,
) -> Result<InequalityReport> {
    let e = epsilon(k, m)?;
    let r = |v: usize| Rational::from_integer(v as i128);
    let one = Rational::from_integer(1);
    let [m1, m2, m3, m4, m5, m6] = mu.map(r);
    let nn = r(n);
    let first = (one + e * 3) * m2 + e * 2 * m1 + m6 + m4 + m3;
    let second = (one + e) * m1 + (one + e) * m6 + m5 * 2 + e * m4 + e * 2 * m3;
    let plus = (nn * 2 - m1).max(m1 + m5 * 2 + m6 + m4 * 2 + m3);
    let minus = (nn * 2 - m2 - m4 - m3).max(m2 * 3 + m1 * 2 + m6 + m4 + m3 * 2);
    Ok(InequalityReport {
        n,
        k,
        m,
        epsilon: e,
        counting_negative: Some(Verdict::strict(first, nn * (one - e))),
        counting_positive: Some(Verdict::strict(second, nn)),
        rank_positive: Some(Verdict::weak(r(rank_pos), plus)),
        rank_negative: Some(Verdict::weak(r(rank_neg), minus)),
    })
}

/// Inequalities for `d` with `m` taken as the minimum column weight of `f`
/// (capped at `k/2`). Verdicts are `None` while any conjunction is
/// unclassified.
pub fn check_inequalities(
    f: &FewZeroFunction,
    d: &Dnf,
    report: &ClassificationReport,
) -> Result<InequalityReport> {
    let m = report.precondition.min_column_weight.min(f.k() / 2);
    check_inequalities_at(f, d, report, m)
}

pub fn check_inequalities_at(
    f: &FewZeroFunction,
    d: &Dnf,
    report: &ClassificationReport,
    m: usize,
) -> Result<InequalityReport> {
    let mut out = inequality_verdicts(f.n(), f.k(), m, report.mu, d.rank_pos(), d.rank_neg())?;
    if report.unclassified_count > 0 {
        out.counting_negative = None;
        out.counting_positive = None;
        out.rank_positive = None;
        out.rank_negative = None;
    }
    Ok(out)
}
