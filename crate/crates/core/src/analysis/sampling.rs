//! Seeded random functions and the experiments run on them.
//!
//! Every trial draws from its own ChaCha stream selected by the trial
//! index, so results do not depend on how trials are scheduled.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bounds::{ratio_to_string, theorem2_bound, Rational};
use crate::canon::{class_representatives, extract_reduced, to_proper};
use crate::dnf::Objective;
use crate::error::{Error, Result};
use crate::model::{classify_matrix, has_adjacent_rows, FewZeroFunction, Limits, ZeroMatrix};
use crate::solver::{minimal_dnf_with_budget, Budget};

/// Attempts per sample before giving up.
pub const REJECTION_BUDGET: usize = 100_000;

/// Largest `k` for which column classes are listed explicitly.
pub const MAX_SAMPLE_ZEROS: usize = 24;

/// RNG for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn rows_ok(m: &ZeroMatrix) -> bool {
    !has_adjacent_rows(m)
}

/// Draws a member of the class of reduced functions with `k` pairwise
/// non-adjacent zeros and all column weights at least `lambda`, in proper
/// form.
///
/// Conditioning uniformly random `k`-row sets on these properties gives the
/// same distribution over proper forms as drawing `n` distinct column
/// classes of weight at least `lambda` uniformly and rejecting when rows
/// collide or are adjacent: all conditions are invariant under column
/// permutation and negation. The second procedure is what runs.
pub fn sample_phi_with_rng<R: Rng>(
    n: usize,
    k: usize,
    lambda: usize,
    rng: &mut R,
) -> Result<FewZeroFunction> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "k = {k} admits no non-constant columns"
        )));
    }
    if k > MAX_SAMPLE_ZEROS {
        return Err(Error::LimitExceeded {
            what: "k",
            value: k,
            limit: MAX_SAMPLE_ZEROS,
        });
    }
    if 2 * lambda > k {
        return Err(Error::InvalidParameter(format!(
            "column weight {lambda} exceeds k/2 = {}",
            k as f64 / 2.0
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let classes = class_representatives(k, lambda.max(1));
    if n > classes.len() {
        return Err(Error::InvalidParameter(format!(
            "only {} column classes of weight >= {lambda} exist for k = {k}, need n = {n}",
            classes.len()
        )));
    }
    let limits = Limits::wide(n.max(Limits::default().max_vars));
    for _ in 0..REJECTION_BUDGET {
        let cols: Vec<u64> = sample(rng, classes.len(), n)
            .iter()
            .map(|i| classes[i])
            .collect();
        let m = match ZeroMatrix::from_columns(k, &cols, limits) {
            Ok(m) => m,
            Err(Error::DuplicateRow { .. }) => continue,
            Err(e) => return Err(e),
        };
        if rows_ok(&m) {
            return Ok(to_proper(&FewZeroFunction::new(m))?.0);
        }
    }
    Err(Error::ResourceLimit(format!(
        "no sample accepted in {REJECTION_BUDGET} attempts"
    )))
}

pub fn sample_phi(n: usize, k: usize, lambda: usize, seed: u64) -> Result<FewZeroFunction> {
    sample_phi_with_rng(n, k, lambda, &mut trial_rng(seed, 0))
}

/// `k < log2 n - log2 log2 n + 1`.
pub fn theorem1_threshold(n: usize) -> f64 {
    let l = (n as f64).log2();
    l - l.log2() + 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Theorem1Report {
    pub n: usize,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub complete: usize,
    pub fraction: f64,
    pub threshold: f64,
    /// `k` lies below the threshold where almost all reductions are complete.
    pub below_threshold: bool,
    pub measure: &'static str,
}

const THEOREM1_MEASURE: &str =
    "uniform k x n matrices with distinct rows and no constant columns, brought to proper form";

/// One random proper function: columns uniform over non-constant vectors,
/// rows required distinct.
fn random_proper<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<FewZeroFunction> {
    let limits = Limits::wide(n.max(Limits::default().max_vars));
    let top = (1u64 << k) - 1;
    for _ in 0..REJECTION_BUDGET {
        let cols: Vec<u64> = (0..n).map(|_| rng.gen_range(1..top)).collect();
        match ZeroMatrix::from_columns(k, &cols, limits) {
            Ok(m) => return Ok(to_proper(&FewZeroFunction::new(m))?.0),
            Err(Error::DuplicateRow { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResourceLimit(format!(
        "no matrix with distinct rows in {REJECTION_BUDGET} attempts"
    )))
}

/// Fraction of random proper functions whose reduced form is complete.
pub fn experiment_theorem1(n: usize, k: usize, trials: usize, seed: u64) -> Result<Theorem1Report> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    if !(2..=MAX_SAMPLE_ZEROS).contains(&k) || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and 2 <= k <= {MAX_SAMPLE_ZEROS}, got n = {n}, k = {k}"
        )));
    }
    let outcomes: Vec<bool> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let f = random_proper(n, k, &mut trial_rng(seed, t as u64))?;
            let (reduced, _) = extract_reduced(&f)?;
            Ok(classify_matrix(&reduced).is_complete)
        })
        .collect::<Result<_>>()?;
    let complete = outcomes.iter().filter(|&&c| c).count();
    let threshold = theorem1_threshold(n);
    Ok(Theorem1Report {
        n,
        k,
        trials,
        seed,
        complete,
        fraction: complete as f64 / trials as f64,
        threshold,
        below_threshold: (k as f64) < threshold,
        measure: THEOREM1_MEASURE,
    })
}

/// Exact probability behind [`experiment_theorem1`], by enumerating every
/// column sequence. Limited to `(2^k - 2)^n <= 10^7`.
pub fn theorem1_exact(n: usize, k: usize) -> Result<Rational> {
    if !(2..=MAX_SAMPLE_ZEROS).contains(&k) || n == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and k >= 2, got n = {n}, k = {k}"
        )));
    }
    let choices = (1u64 << k) - 2;
    let total = (choices as u128)
        .checked_pow(n as u32)
        .filter(|&t| t <= 10_000_000)
        .ok_or(Error::LimitExceeded {
            what: "column sequences",
            value: usize::MAX,
            limit: 10_000_000,
        })?;
    let mut distinct = 0i128;
    let mut complete = 0i128;
    let mut cols = vec![1u64; n];
    for _ in 0..total {
        if let Ok(m) = ZeroMatrix::from_columns(k, &cols, Limits::default()) {
            distinct += 1;
            let (proper, _) = to_proper(&FewZeroFunction::new(m))?;
            if classify_matrix(&extract_reduced(&proper)?.0).is_complete {
                complete += 1;
            }
        }
        for c in cols.iter_mut() {
            if *c < choices {
                *c += 1;
                break;
            }
            *c = 1;
        }
    }
    if distinct == 0 {
        return Err(Error::InvalidParameter(format!(
            "no {k} x {n} matrix has distinct rows"
        )));
    }
    Ok(Rational::new(complete, distinct))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub function_id: usize,
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub epsilon: String,
    pub exact_rank: u64,
    pub bound: String,
    pub margin: String,
    pub proved_optimal: bool,
    /// `exact_rank > bound`, only meaningful when `proved_optimal`.
    #[serde(skip)]
    pub exceeds_bound: bool,
    #[serde(skip)]
    pub function: Option<FewZeroFunction>,
}

/// Samples `trials` functions with column weights at least `m`, solves each
/// for minimum rank and compares with the closed-form bound.
pub fn theorem2_sweep(
    n: usize,
    k: usize,
    m: usize,
    trials: usize,
    seed: u64,
    budget: &Budget,
) -> Result<Vec<SweepRow>> {
    let bound = theorem2_bound(n, k, m)?;
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let f = sample_phi_with_rng(n, k, m, &mut trial_rng(seed, t as u64))?;
            let r = minimal_dnf_with_budget(&f, Objective::Rank, budget)?;
            let rank = Rational::from_integer(r.optimum as i128);
            Ok(SweepRow {
                function_id: t,
                n,
                k,
                m,
                epsilon: ratio_to_string(&bound.epsilon),
                exact_rank: r.optimum,
                bound: ratio_to_string(&bound.value),
                margin: ratio_to_string(&(rank - bound.value)),
                proved_optimal: r.proved_optimal,
                exceeds_bound: rank > bound.value,
                function: Some(f),
            })
        })
        .collect()
}
