//! Ones of `f` at Hamming distance one from a zero.
//!
//! Flipping coordinate `j` of zero `i` gives the point `theta(i, j)`. It is
//! a near-zero point of type 1 when the zero had a one in that coordinate
//! and of type 0 otherwise. Flips that land on another zero are dropped.

use serde::Serialize;

use crate::dnf::Dnf;
use crate::error::{Error, Result};
use crate::model::FewZeroFunction;

/// A `(zero row, coordinate)` pair whose flip is a one of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Incidence {
    pub zero: usize,
    pub coordinate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearZeroReport {
    pub n: usize,
    pub k: usize,
    pub theta0_incidences: Vec<Incidence>,
    pub theta1_incidences: Vec<Incidence>,
    /// Sorted, deduplicated points as packed words (bit `j` = coordinate `j`).
    pub theta0_points: Vec<u64>,
    pub theta1_points: Vec<u64>,
    pub theta_points: Vec<u64>,
}

/// `theta(i, j)` for zero `i` (in matrix row order) and coordinate `j`.
pub fn theta(f: &FewZeroFunction, zero: usize, coordinate: usize) -> Result<u64> {
    f.require_word_points()?;
    if zero >= f.k() {
        return Err(Error::IndexOutOfRange {
            index: zero,
            size: f.k(),
        });
    }
    if coordinate >= f.n() {
        return Err(Error::IndexOutOfRange {
            index: coordinate,
            size: f.n(),
        });
    }
    Ok(row_point(f, zero) ^ (1 << coordinate))
}

fn row_point(f: &FewZeroFunction, i: usize) -> u64 {
    let row = f.matrix().row(i);
    (0..f.n())
        .filter(|&j| row.get(j))
        .fold(0, |p, j| p | 1 << j)
}

pub fn near_zero_sets(f: &FewZeroFunction) -> Result<NearZeroReport> {
    f.require_word_points()?;
    let mut report = NearZeroReport {
        n: f.n(),
        k: f.k(),
        theta0_incidences: Vec::new(),
        theta1_incidences: Vec::new(),
        theta0_points: Vec::new(),
        theta1_points: Vec::new(),
        theta_points: Vec::new(),
    };
    for i in 0..f.k() {
        let z = row_point(f, i);
        for j in 0..f.n() {
            let p = z ^ (1 << j);
            if !f.evaluate_point(p) {
                continue;
            }
            let inc = Incidence {
                zero: i,
                coordinate: j,
            };
            if z >> j & 1 == 1 {
                report.theta1_incidences.push(inc);
                report.theta1_points.push(p);
            } else {
                report.theta0_incidences.push(inc);
                report.theta0_points.push(p);
            }
        }
    }
    for v in [&mut report.theta0_points, &mut report.theta1_points] {
        v.sort_unstable();
        v.dedup();
    }
    let mut all = report.theta0_points.clone();
    all.extend_from_slice(&report.theta1_points);
    all.sort_unstable();
    all.dedup();
    report.theta_points = all;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DyakonovEntry {
    /// Index into the DNF's sorted conjunction list.
    pub conjunction: usize,
    pub zero: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DyakonovReport {
    /// Largest number of near-zero points of a single zero inside a single face.
    pub max_incidence: usize,
    /// Pairs with more than one such point.
    pub violations: Vec<DyakonovEntry>,
}

/// For every conjunction `K` of `d` and zero `i`, counts the coordinates `j`
/// with `theta(i, j)` inside the face of `K`.
pub fn dyakonov_check(f: &FewZeroFunction, d: &Dnf) -> Result<DyakonovReport> {
    let report = near_zero_sets(f)?;
    if d.arity() > f.n() {
        return Err(Error::ArityMismatch {
            expected: f.n(),
            got: d.arity(),
        });
    }
    let mut counts = vec![vec![0usize; f.k()]; d.length()];
    for inc in report
        .theta0_incidences
        .iter()
        .chain(&report.theta1_incidences)
    {
        let p = row_point(f, inc.zero) ^ (1 << inc.coordinate);
        for (c, conj) in d.iter().enumerate() {
            if conj.covers(p) {
                counts[c][inc.zero] += 1;
            }
        }
    }
    let mut max_incidence = 0;
    let mut violations = Vec::new();
    for (c, row) in counts.iter().enumerate() {
        for (zero, &count) in row.iter().enumerate() {
            max_incidence = max_incidence.max(count);
            if count > 1 {
                violations.push(DyakonovEntry {
                    conjunction: c,
                    zero,
                    count,
                });
            }
        }
    }
    Ok(DyakonovReport {
        max_incidence,
        violations,
    })
}
