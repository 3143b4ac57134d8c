//! Literal vectors, vector decompositions and prime implicants.
//!
//! Each literal is associated with a length-`k` vector: the column of the
//! zero matrix for `x_j`, its complement for `~x_j`. A literal is false at
//! zero `i` exactly when bit `i` of its complemented vector is set, so a
//! conjunction is an implicant iff the complements of its literal vectors
//! cover every row.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::bits::BitVector;
use crate::dnf::{Conjunction, Literal, MAX_VARS};
use crate::error::{Error, Result};
use crate::model::FewZeroFunction;

/// Default cap on the number of prime implicants enumerated.
pub const DEFAULT_PRIME_LIMIT: usize = 2_000_000;

fn check_var(f: &FewZeroFunction, l: Literal) -> Result<()> {
    if l.var >= f.n() {
        return Err(Error::IndexOutOfRange {
            index: l.var,
            size: f.n(),
        });
    }
    Ok(())
}

/// Packed literal vector (bit `i` is row `i`).
pub(crate) fn packed_literal_vector(f: &FewZeroFunction, l: Literal) -> u64 {
    let col = f.matrix().packed_column(l.var);
    if l.is_positive() {
        col
    } else {
        col ^ f.matrix().row_mask()
    }
}

/// Rows where the literal is false, i.e. zeros excluded from its face.
pub(crate) fn kill_set(f: &FewZeroFunction, l: Literal) -> u64 {
    packed_literal_vector(f, l) ^ f.matrix().row_mask()
}

pub fn literal_vector(f: &FewZeroFunction, l: Literal) -> Result<BitVector> {
    check_var(f, l)?;
    Ok(BitVector::from_u64(packed_literal_vector(f, l), f.k()))
}

fn check_parts(alpha: &BitVector, parts: &[BitVector]) -> Result<()> {
    for p in parts {
        if p.len() != alpha.len() {
            return Err(Error::LengthMismatch {
                left: alpha.len(),
                right: p.len(),
            });
        }
    }
    if alpha.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// `alpha` is the OR of `parts` and no part meets the complement of `alpha`.
///
/// Zero parts are accepted; they satisfy both conditions vacuously.
pub fn is_decomposition(alpha: &BitVector, parts: &[BitVector]) -> Result<bool> {
    check_parts(alpha, parts)?;
    let outside = alpha.complement();
    let mut union = BitVector::zeros(alpha.len());
    for p in parts {
        if outside.inner(p)? != 0 {
            return Ok(false);
        }
        union = union.or(p)?;
    }
    Ok(&union == alpha)
}

/// `alpha` equals both the XOR and the OR of `parts` (disjoint supports).
pub fn is_orthogonal_decomposition(alpha: &BitVector, parts: &[BitVector]) -> Result<bool> {
    check_parts(alpha, parts)?;
    let mut union = BitVector::zeros(alpha.len());
    let mut sum = BitVector::zeros(alpha.len());
    for p in parts {
        union = union.or(p)?;
        sum = sum.xor(p)?;
    }
    Ok(&union == alpha && &sum == alpha)
}

fn covered_rows(f: &FewZeroFunction, k: &Conjunction) -> u64 {
    k.literals()
        .into_iter()
        .fold(0, |acc, l| acc | kill_set(f, l))
}

/// The face of `k` avoids every zero of `f`.
pub fn is_implicant(f: &FewZeroFunction, k: &Conjunction) -> bool {
    assert!(
        k.arity() <= f.n(),
        "conjunction mentions x{} but f has {} variables",
        k.arity(),
        f.n()
    );
    covered_rows(f, k) == f.matrix().row_mask()
}

/// An implicant from which no literal can be dropped.
pub fn is_prime_implicant(f: &FewZeroFunction, k: &Conjunction) -> bool {
    if !is_implicant(f, k) {
        return false;
    }
    k.literals()
        .into_iter()
        .all(|l| k.without(l).is_none_or(|rest| !is_implicant(f, &rest)))
}

/// All prime implicants, sorted, with the default size cap.
pub fn enumerate_prime_implicants(f: &FewZeroFunction) -> Result<Vec<Conjunction>> {
    enumerate_prime_implicants_limited(f, DEFAULT_PRIME_LIMIT)
}

/// Literal index `2j` is `x_j`, `2j + 1` is `~x_j`.
fn literal_of(index: usize) -> Literal {
    if index.is_multiple_of(2) {
        Literal::pos(index / 2)
    } else {
        Literal::neg(index / 2)
    }
}

struct PrimeSearch<'a> {
    kills: Vec<u64>,
    all_rows: u64,
    count: &'a AtomicUsize,
    overflow: &'a AtomicBool,
    limit: usize,
}

impl PrimeSearch<'_> {
    /// Literals that can still be added and kill `row`.
    fn available(
        &self,
        row: usize,
        excluded: u128,
        used_vars: u64,
    ) -> impl Iterator<Item = usize> + '_ {
        (0..self.kills.len()).filter(move |&li| {
            self.kills[li] >> row & 1 == 1
                && excluded >> li & 1 == 0
                && used_vars >> (li / 2) & 1 == 0
        })
    }

    fn pick_row(&self, covered: u64, excluded: u128, used_vars: u64) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut open = self.all_rows & !covered;
        while open != 0 {
            let r = open.trailing_zeros() as usize;
            open &= open - 1;
            let c = self.available(r, excluded, used_vars).count();
            if best.is_none_or(|(_, bc)| c < bc) {
                best = Some((r, c));
                if c == 0 {
                    break;
                }
            }
        }
        best
    }

    /// Every chosen literal still kills a row no other chosen literal kills.
    fn irredundant(&self, chosen: &[usize]) -> bool {
        chosen.iter().enumerate().all(|(a, &la)| {
            let others = chosen
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != a)
                .fold(0u64, |acc, (_, &lb)| acc | self.kills[lb]);
            self.kills[la] & !others != 0
        })
    }

    fn dfs(
        &self,
        chosen: &mut Vec<usize>,
        covered: u64,
        excluded: u128,
        used_vars: u64,
        out: &mut Vec<Conjunction>,
    ) {
        if self.overflow.load(Ordering::Relaxed) {
            return;
        }
        if covered == self.all_rows {
            if self.count.fetch_add(1, Ordering::Relaxed) >= self.limit {
                self.overflow.store(true, Ordering::Relaxed);
                return;
            }
            let lits = chosen.iter().map(|&li| literal_of(li));
            out.push(Conjunction::new(lits).expect("distinct variables"));
            return;
        }
        let Some((row, c)) = self.pick_row(covered, excluded, used_vars) else {
            return;
        };
        if c == 0 {
            return;
        }
        let candidates: Vec<usize> = self.available(row, excluded, used_vars).collect();
        let mut excluded = excluded;
        for li in candidates {
            chosen.push(li);
            if self.irredundant(chosen) {
                self.dfs(
                    chosen,
                    covered | self.kills[li],
                    excluded | 1 << li,
                    used_vars | 1 << (li / 2),
                    out,
                );
            }
            chosen.pop();
            excluded |= 1 << li;
        }
    }
}

/// All prime implicants as irredundant covers of the zero rows by literal
/// kill sets. Fails with [`Error::ResourceLimit`] past `limit` results.
pub fn enumerate_prime_implicants_limited(
    f: &FewZeroFunction,
    limit: usize,
) -> Result<Vec<Conjunction>> {
    let n = f.n();
    if n > MAX_VARS {
        return Err(Error::LimitExceeded {
            what: "n",
            value: n,
            limit: MAX_VARS,
        });
    }
    let kills: Vec<u64> = (0..2 * n).map(|li| kill_set(f, literal_of(li))).collect();
    let count = AtomicUsize::new(0);
    let overflow = AtomicBool::new(false);
    let search = PrimeSearch {
        kills,
        all_rows: f.matrix().row_mask(),
        count: &count,
        overflow: &overflow,
        limit,
    };

    // Split on the most constrained row; branches are independent once the
    // earlier candidates are excluded.
    let (row, _) = search.pick_row(0, 0, 0).expect("at least one row");
    let candidates: Vec<usize> = search.available(row, 0, 0).collect();
    let mut primes: Vec<Conjunction> = candidates
        .par_iter()
        .enumerate()
        .flat_map_iter(|(pos, &li)| {
            let excluded = candidates[..pos].iter().fold(0u128, |acc, &e| acc | 1 << e) | 1 << li;
            let mut out = Vec::new();
            let mut chosen = vec![li];
            search.dfs(
                &mut chosen,
                search.kills[li],
                excluded,
                1 << (li / 2),
                &mut out,
            );
            out
        })
        .collect();
    if overflow.load(Ordering::Relaxed) {
        return Err(Error::ResourceLimit(format!(
            "more than {limit} prime implicants"
        )));
    }
    primes.sort();
    Ok(primes)
}

/// The conjunction built from a literal decomposition, with a point of its face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionConjunction {
    pub conjunction: Conjunction,
    /// Point that agrees with every literal of the conjunction and is 0 elsewhere.
    pub witness: u64,
}

/// Builds `K = l & parts` when the negations of `parts` decompose `l`.
///
/// A literal whose vector is zero is its own implicant; it is accepted with
/// no parts.
pub fn conjunction_from_decomposition(
    f: &FewZeroFunction,
    l: Literal,
    parts: &[Literal],
) -> Result<DecompositionConjunction> {
    check_var(f, l)?;
    for p in parts {
        check_var(f, *p)?;
    }
    let alpha = literal_vector(f, l)?;
    let hypothesis = if alpha.is_zero() {
        parts.is_empty()
    } else {
        let vectors = parts
            .iter()
            .map(|p| literal_vector(f, p.negated()))
            .collect::<Result<Vec<_>>>()?;
        is_decomposition(&alpha, &vectors)?
    };
    if !hypothesis {
        return Err(Error::DecompositionHypothesisFails(format!(
            "negated parts do not decompose {l}"
        )));
    }
    let conjunction = Conjunction::new(std::iter::once(l).chain(parts.iter().copied()))
        .map_err(|e| Error::DecompositionHypothesisFails(e.to_string()))?;
    debug_assert!(is_implicant(f, &conjunction));
    Ok(DecompositionConjunction {
        conjunction,
        witness: conjunction.positive_mask(),
    })
}
