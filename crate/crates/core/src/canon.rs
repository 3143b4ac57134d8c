//! Variable permutations with negation, proper and reduced forms, and the
//! reconstruction of a DNF from the reduced function.

use std::cmp::Ordering;
use std::ops::Range;

use serde::Serialize;

use crate::bits::BitVector;
use crate::dnf::{Conjunction, Dnf, Literal};
use crate::error::{Error, Result};
use crate::model::{classify_matrix, has_adjacent_rows, FewZeroFunction, Limits, ZeroMatrix};

/// `y_j = x_{perm[j]} XOR neg[j]`: column `j` of the image is column
/// `perm[j]` of the source, complemented when `neg[j]` is set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpTransform {
    perm: Vec<usize>,
    neg: BitVector,
}

impl SpTransform {
    pub fn identity(n: usize) -> Self {
        SpTransform {
            perm: (0..n).collect(),
            neg: BitVector::zeros(n),
        }
    }

    pub fn new(perm: Vec<usize>, neg: BitVector) -> Result<Self> {
        let n = perm.len();
        if neg.len() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: neg.len(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidParameter(format!(
                    "{perm:?} is not a permutation of 0..{n}"
                )));
            }
            seen[p] = true;
        }
        Ok(SpTransform { perm, neg })
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn neg(&self) -> &BitVector {
        &self.neg
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| j == p) && self.neg.is_zero()
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut neg = BitVector::zeros(n);
        for (j, &p) in self.perm.iter().enumerate() {
            perm[p] = j;
            neg.set(p, self.neg.get(j));
        }
        SpTransform { perm, neg }
    }

    /// The transform equivalent to applying `self` and then `next`.
    pub fn then(&self, next: &SpTransform) -> Result<Self> {
        if self.n() != next.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: next.n(),
            });
        }
        let n = self.n();
        let mut perm = Vec::with_capacity(n);
        let mut neg = BitVector::zeros(n);
        for j in 0..n {
            let mid = next.perm[j];
            perm.push(self.perm[mid]);
            neg.set(j, self.neg.get(mid) ^ next.neg.get(j));
        }
        Ok(SpTransform { perm, neg })
    }

    /// Image of a point of the source cube.
    pub fn map_point(&self, p: &BitVector) -> Result<BitVector> {
        if p.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: p.len(),
            });
        }
        Ok(BitVector::from_bools(
            (0..self.n()).map(|j| p.get(self.perm[j]) ^ self.neg.get(j)),
        ))
    }

    /// Rewrites a conjunction over the source variables in terms of the
    /// image variables.
    pub fn map_conjunction(&self, c: &Conjunction) -> Result<Conjunction> {
        let inv = self.inverse();
        Conjunction::new(c.literals().into_iter().map(|l| {
            let j = inv.perm[l.var];
            let positive = l.is_positive() ^ self.neg.get(j);
            if positive {
                Literal::pos(j)
            } else {
                Literal::neg(j)
            }
        }))
    }

    pub fn map_dnf(&self, d: &Dnf) -> Result<Dnf> {
        Ok(Dnf::new(
            d.iter()
                .map(|c| self.map_conjunction(c))
                .collect::<Result<Vec<_>>>()?,
        ))
    }
}

fn limits_for(f: &FewZeroFunction) -> Limits {
    Limits::wide(f.n().max(Limits::default().max_vars))
}

/// Lexicographic comparison of two packed `k`-bit columns (row 0 first).
fn column_lex(a: u64, b: u64) -> Ordering {
    a.reverse_bits().cmp(&b.reverse_bits())
}

/// Representative of `{c, !c}`: fewer ones, ties broken by lexicographic order.
pub fn class_representative(c: u64, k: usize) -> u64 {
    let mask = (1u64 << k) - 1;
    let comp = c ^ mask;
    let ones = c.count_ones() as usize;
    if 2 * ones > k || (2 * ones == k && column_lex(comp, c) == Ordering::Less) {
        comp
    } else {
        c
    }
}

/// Representatives of all non-constant complementary classes of length `k`,
/// lexicographically sorted, filtered by minimum weight.
pub(crate) fn class_representatives(k: usize, min_weight: usize) -> Vec<u64> {
    let mut reps: Vec<u64> = (1..(1u64 << k) - 1)
        .filter(|&c| class_representative(c, k) == c && c.count_ones() as usize >= min_weight)
        .collect();
    reps.sort_by(|&a, &b| column_lex(a, b));
    reps
}

pub fn apply_transform(f: &FewZeroFunction, t: &SpTransform) -> Result<FewZeroFunction> {
    if t.n() != f.n() {
        return Err(Error::ArityMismatch {
            expected: f.n(),
            got: t.n(),
        });
    }
    let m = f.matrix();
    let mask = m.row_mask();
    let cols: Vec<u64> = (0..t.n())
        .map(|j| {
            let c = m.packed_column(t.perm[j]);
            if t.neg.get(j) {
                c ^ mask
            } else {
                c
            }
        })
        .collect();
    Ok(FewZeroFunction::new(ZeroMatrix::from_columns(
        f.k(),
        &cols,
        limits_for(f),
    )?))
}

/// Sorts columns by value, re-sorting rows each round, until the column
/// order is stable. Returns the final function and the permutation applied.
fn sort_columns(f: FewZeroFunction) -> Result<(FewZeroFunction, SpTransform)> {
    let mut current = f;
    let mut total = SpTransform::identity(current.n());
    for _ in 0..8 {
        let cols = current.matrix().packed_columns();
        let mut order: Vec<usize> = (0..cols.len()).collect();
        order.sort_by(|&a, &b| column_lex(cols[a], cols[b]));
        if order.iter().enumerate().all(|(j, &p)| j == p) {
            break;
        }
        let step = SpTransform::new(order, BitVector::zeros(current.n()))?;
        current = apply_transform(&current, &step)?;
        total = total.then(&step)?;
    }
    Ok((current, total))
}

/// Normalizes polarity and order of columns: every column is replaced by its
/// class representative (fewer ones, ties to the lexicographically smaller),
/// which unifies complementary columns, and equal columns are made
/// contiguous by sorting columns by value.
pub fn to_proper(f: &FewZeroFunction) -> Result<(FewZeroFunction, SpTransform)> {
    let m = f.matrix();
    let k = m.k();
    let mask = m.row_mask();
    let mut neg = BitVector::zeros(f.n());
    for (j, &c) in m.packed_columns().iter().enumerate() {
        if c == 0 || c == mask {
            return Err(Error::ConstantColumn { column: j });
        }
        neg.set(j, class_representative(c, k) != c);
    }
    let flip = SpTransform::new((0..f.n()).collect(), neg)?;
    let flipped = apply_transform(f, &flip)?;
    let (proper, order) = sort_columns(flipped)?;
    Ok((proper, flip.then(&order)?))
}

/// Runs of equal columns of a proper function and one representative per run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnGrouping {
    /// Half-open column ranges, in order, partitioning `0..n`.
    pub groups: Vec<Range<usize>>,
    /// First column of each group.
    pub representatives: Vec<usize>,
}

impl ColumnGrouping {
    pub fn n(&self) -> usize {
        self.groups.last().map_or(0, |g| g.end)
    }

    /// Columns that belong to a group with at least two members.
    pub fn grouped_columns(&self) -> usize {
        self.groups
            .iter()
            .filter(|g| g.len() >= 2)
            .map(|g| g.len())
            .sum()
    }
}

/// Keeps the first column of every run of equal columns.
pub fn extract_reduced(f: &FewZeroFunction) -> Result<(FewZeroFunction, ColumnGrouping)> {
    if !classify_matrix(f).is_proper {
        return Err(Error::NotProper);
    }
    let cols = f.matrix().packed_columns();
    let mut groups: Vec<Range<usize>> = Vec::new();
    for j in 0..cols.len() {
        match groups.last_mut() {
            Some(g) if cols[g.start] == cols[j] => g.end = j + 1,
            _ => groups.push(j..j + 1),
        }
    }
    let representatives: Vec<usize> = groups.iter().map(|g| g.start).collect();
    let reduced_cols: Vec<u64> = representatives.iter().map(|&j| cols[j]).collect();
    let reduced = FewZeroFunction::new(ZeroMatrix::from_columns(
        f.k(),
        &reduced_cols,
        limits_for(f),
    )?);
    Ok((
        reduced,
        ColumnGrouping {
            groups,
            representatives,
        },
    ))
}

/// The cyclic chain `x_{v1} ~x_{v2} | x_{v2} ~x_{v3} | ... | x_{vm} ~x_{v1}`,
/// which is true exactly when the listed variables are not all equal.
pub fn d2_chain(vars: &[usize]) -> Result<Dnf> {
    if vars.len() < 2 {
        return Err(Error::InvalidParameter(
            "a chain needs at least two variables".into(),
        ));
    }
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter(format!(
            "chain variables must be distinct: {vars:?}"
        )));
    }
    let m = vars.len();
    Ok(Dnf::new(
        (0..m)
            .map(|s| Conjunction::new([Literal::pos(vars[s]), Literal::neg(vars[(s + 1) % m])]))
            .collect::<Result<Vec<_>>>()?,
    ))
}

/// Lifts a DNF of the reduced function back to the proper function: reduced
/// variable `s` becomes the representative of group `s`, and every group with
/// two or more columns contributes its chain.
pub fn compose_reduction(reduced_dnf: &Dnf, grouping: &ColumnGrouping) -> Result<Dnf> {
    let t = grouping.representatives.len();
    if reduced_dnf.arity() > t {
        return Err(Error::ArityMismatch {
            expected: t,
            got: reduced_dnf.arity(),
        });
    }
    let mut conjunctions: Vec<Conjunction> = reduced_dnf
        .iter()
        .map(|c| {
            Conjunction::new(c.literals().into_iter().map(|l| Literal {
                var: grouping.representatives[l.var],
                polarity: l.polarity,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    for g in grouping.groups.iter().filter(|g| g.len() >= 2) {
        let vars: Vec<usize> = g.clone().collect();
        conjunctions.extend(d2_chain(&vars)?.iter().copied());
    }
    Ok(Dnf::new(conjunctions))
}

/// The reduced function whose columns are one representative of every
/// non-constant complementary class of length `k` (`n = 2^(k-1) - 1`).
pub fn complete_function(k: usize) -> Result<FewZeroFunction> {
    complete_function_with_limits(k, Limits::default())
}

pub fn complete_function_with_limits(k: usize, limits: Limits) -> Result<FewZeroFunction> {
    if !(2..=20).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "complete function needs 2 <= k <= 20, got {k}"
        )));
    }
    let n = (1usize << (k - 1)) - 1;
    if n > limits.max_vars {
        return Err(Error::LimitExceeded {
            what: "n",
            value: n,
            limit: limits.max_vars,
        });
    }
    let cols = class_representatives(k, 1);
    let f = FewZeroFunction::new(ZeroMatrix::from_columns(k, &cols, limits)?);
    Ok(sort_columns(f)?.0)
}

/// The extremal example: all classes whose weight is at least
/// `max(1, ceil(k/2 - sqrt(k ln k)))`.
#[derive(Debug, Clone)]
pub struct HkFunction {
    pub function: FewZeroFunction,
    pub k: usize,
    pub weight_threshold: usize,
    pub column_count: usize,
    /// `column_count >= 2^(k-1) (1 - 2/k)`, compared in integers.
    pub meets_count_claim: bool,
    pub has_adjacent_zeros: bool,
}

/// Smallest admissible column weight for the extremal example.
pub fn hk_weight_threshold(k: usize) -> usize {
    let kf = k as f64;
    let raw = (kf / 2.0 - (kf * kf.ln()).sqrt()).ceil();
    if raw < 1.0 {
        1
    } else {
        raw as usize
    }
}

pub fn hk_function(k: usize) -> Result<HkFunction> {
    if !(4..=20).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "extremal example needs 4 <= k <= 20, got {k}"
        )));
    }
    let threshold = hk_weight_threshold(k);
    let cols = class_representatives(k, threshold);
    let n = cols.len();
    let function = FewZeroFunction::new(ZeroMatrix::from_columns(k, &cols, Limits::wide(n))?);
    let function = sort_columns(function)?.0;
    let meets = (k as u128) * (n as u128) >= (1u128 << (k - 1)) * (k as u128 - 2);
    let has_adjacent_zeros = has_adjacent_rows(function.matrix());
    Ok(HkFunction {
        function,
        k,
        weight_threshold: threshold,
        column_count: n,
        meets_count_claim: meets,
        has_adjacent_zeros,
    })
}
