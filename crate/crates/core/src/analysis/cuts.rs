//! Cuts of the zero matrix (partitions of its rows) and the literal
//! multiplicity check built on them.

use serde::Serialize;

use crate::dnf::{Literal, Objective};
use crate::error::{Error, Result};
use crate::implicants::packed_literal_vector;
use crate::model::{FewZeroFunction, ZeroMatrix};
use crate::solver::all_minimal_dnfs;

/// Largest `k` for which cuts are enumerated.
pub const MAX_CUT_ROWS: usize = 10;

/// A partition of the rows `0..k` into nonempty parts, each part sorted and
/// parts ordered by their first row.
pub type Cut = Vec<Vec<usize>>;

/// All partitions of the rows of `m` into exactly `t` nonempty parts.
pub fn enumerate_cuts(m: &ZeroMatrix, t: usize) -> Result<Vec<Cut>> {
    let k = m.k();
    if k > MAX_CUT_ROWS {
        return Err(Error::LimitExceeded {
            what: "k",
            value: k,
            limit: MAX_CUT_ROWS,
        });
    }
    if t == 0 || t > k {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= t <= k = {k}, got t = {t}"
        )));
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; k];
    restricted_growth(&mut labels, 1, 1, t, &mut out);
    Ok(out)
}

/// Restricted growth strings: `labels[i] <= 1 + max(labels[..i])`.
fn restricted_growth(labels: &mut [usize], i: usize, used: usize, t: usize, out: &mut Vec<Cut>) {
    let k = labels.len();
    if i == k {
        if used == t {
            let mut cut = vec![Vec::new(); t];
            for (row, &b) in labels.iter().enumerate() {
                cut[b].push(row);
            }
            out.push(cut);
        }
        return;
    }
    // Not enough rows left to open the missing parts.
    if t - used > k - i {
        return;
    }
    for b in 0..used.min(t) {
        labels[i] = b;
        restricted_growth(labels, i + 1, used, t, out);
    }
    if used < t {
        labels[i] = used;
        restricted_growth(labels, i + 1, used + 1, t, out);
    }
    labels[i] = 0;
}

/// Whether the vector of `l` restricted to `rows` is the union of the
/// restricted vectors of literals on other variables lying inside it.
/// A restriction that is all zeros counts as decomposable.
pub fn decomposable_on(f: &FewZeroFunction, l: Literal, rows: u64) -> bool {
    let alpha = packed_literal_vector(f, l) & rows;
    if alpha == 0 {
        return true;
    }
    let mut union = 0;
    for var in (0..f.n()).filter(|&v| v != l.var) {
        for other in [Literal::pos(var), Literal::neg(var)] {
            let v = packed_literal_vector(f, other) & rows;
            if v & !alpha == 0 {
                union |= v;
            }
        }
    }
    union == alpha
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutLemmaReport {
    pub literal: i64,
    pub t: usize,
    pub cuts_checked: usize,
    /// Every cut has a part on which the literal is not decomposable.
    pub hypothesis_holds: bool,
    /// A cut on which every part is decomposable, when the hypothesis fails.
    pub counterexample_cut: Option<Cut>,
    /// Optimal prime-implicant DNFs (both objectives) checked.
    pub dnfs_checked: usize,
    pub min_multiplicity: Option<usize>,
    /// Every checked DNF contains the literal at least `t + 1` times;
    /// `None` when the hypothesis fails and nothing is claimed.
    pub conclusion_holds_on_all_checked_dnfs: Option<bool>,
}

/// Evaluates the cut hypothesis for `l` and, when it holds, checks that `l`
/// occurs at least `t + 1` times in every optimal DNF of rank and of length.
/// Only optimal prime-implicant DNFs are checked.
pub fn verify_cut_lemma(f: &FewZeroFunction, l: Literal, t: usize) -> Result<CutLemmaReport> {
    if f.k() > 6 {
        return Err(Error::LimitExceeded {
            what: "k",
            value: f.k(),
            limit: 6,
        });
    }
    if f.n() > 10 {
        return Err(Error::LimitExceeded {
            what: "n",
            value: f.n(),
            limit: 10,
        });
    }
    if l.var >= f.n() {
        return Err(Error::IndexOutOfRange {
            index: l.var,
            size: f.n(),
        });
    }
    let cuts = enumerate_cuts(f.matrix(), t)?;
    let counterexample = cuts.iter().find(|cut| {
        cut.iter()
            .all(|part| decomposable_on(f, l, part.iter().fold(0, |m, &r| m | 1 << r)))
    });
    let mut report = CutLemmaReport {
        literal: l.to_signed(),
        t,
        cuts_checked: cuts.len(),
        hypothesis_holds: counterexample.is_none(),
        counterexample_cut: counterexample.cloned(),
        dnfs_checked: 0,
        min_multiplicity: None,
        conclusion_holds_on_all_checked_dnfs: None,
    };
    if report.hypothesis_holds {
        let mut min = usize::MAX;
        for objective in [Objective::Rank, Objective::Length] {
            for d in all_minimal_dnfs(f, objective)? {
                report.dnfs_checked += 1;
                min = min.min(d.multiplicity(l));
            }
        }
        if report.dnfs_checked > 0 {
            report.min_multiplicity = Some(min);
            report.conclusion_holds_on_all_checked_dnfs = Some(min > t);
        }
    }
    Ok(report)
}
