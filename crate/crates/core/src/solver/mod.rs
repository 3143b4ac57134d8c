//! Exact minimum-rank and minimum-length DNFs.
//!
//! Both objectives are solved over prime implicants only. This loses
//! nothing: every implicant lies inside a prime implicant with no more
//! literals, so replacing each conjunction of an optimal DNF by such a prime
//! keeps the DNF valid without increasing rank or length.

mod bitset;
mod cover;
mod coverage;

use serde::Serialize;

use crate::dnf::{Dnf, Objective};
use crate::error::{Error, Result};
use crate::implicants::{enumerate_prime_implicants_limited, is_implicant, DEFAULT_PRIME_LIMIT};
use crate::model::FewZeroFunction;

use cover::{CoverTable, Mode};

/// Explicit resource limits; the same budget always gives the same answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    /// Branch-and-bound nodes before giving up on a proof of optimality.
    pub max_nodes: Option<u64>,
    pub max_primes: usize,
    /// Largest `n` for which every point of the cube is enumerated.
    pub max_enumerated_vars: usize,
    /// Live cube pieces allowed in the coverage certificate.
    pub max_cubes: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: None,
            max_primes: DEFAULT_PRIME_LIMIT,
            max_enumerated_vars: 24,
            max_cubes: 4_000_000,
        }
    }
}

impl Budget {
    pub fn with_nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            ..Budget::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub dnf: Dnf,
    /// Objective value of `dnf`; the optimum when `proved_optimal`.
    pub optimum: u64,
    pub objective: Objective,
    pub nodes_explored: u64,
    pub proved_optimal: bool,
    pub prime_count: usize,
}

/// `d` and `f` agree on every point of the cube.
pub fn realizes(f: &FewZeroFunction, d: &Dnf) -> Result<bool> {
    realizes_with_budget(f, d, &Budget::default())
}

pub fn realizes_with_budget(f: &FewZeroFunction, d: &Dnf, budget: &Budget) -> Result<bool> {
    let n = f.n();
    let zeros = f.zero_points()?;
    if d.arity() > n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: d.arity(),
        });
    }
    if d.iter().any(|c| zeros.iter().any(|&z| c.covers(z))) {
        return Ok(false);
    }
    if n <= budget.max_enumerated_vars {
        let size = 1u64 << n;
        let mut covered = vec![0u64; size.div_ceil(64) as usize];
        for c in d {
            c.for_each_point(n, |p| covered[(p / 64) as usize] |= 1 << (p % 64));
        }
        let count: u64 = covered.iter().map(|w| w.count_ones() as u64).sum();
        return Ok(count == size - f.k() as u64);
    }
    // Every conjunction avoids the zeros; what is left uncovered must be
    // exactly the zeros.
    let rest = coverage::uncovered_cubes(d.conjunctions(), budget.max_cubes)?;
    for cube in rest {
        let free = !cube.mask & ((1u64 << n) - 1);
        if free.count_ones() as usize > 6 {
            return Ok(false);
        }
        let mut sub = 0u64;
        loop {
            if f.evaluate_point(cube.value | sub) {
                return Ok(false);
            }
            if sub == free {
                break;
            }
            sub = sub.wrapping_sub(free) & free;
        }
    }
    Ok(true)
}

fn table(
    f: &FewZeroFunction,
    objective: Objective,
    mode: Mode,
    budget: &Budget,
) -> Result<(CoverTable, usize)> {
    f.require_word_points()?;
    let primes = enumerate_prime_implicants_limited(f, budget.max_primes)?;
    let count = primes.len();
    debug_assert!(primes.iter().all(|p| is_implicant(f, p)));
    Ok((
        CoverTable::build(f, primes, objective, mode, budget.max_enumerated_vars)?,
        count,
    ))
}

fn to_dnf(table: &CoverTable, chosen: &[usize]) -> Dnf {
    Dnf::new(chosen.iter().map(|&p| table.primes[p]))
}

/// Minimum-rank or minimum-length DNF with the default (unbounded) budget.
pub fn minimal_dnf(f: &FewZeroFunction, objective: Objective) -> Result<SolveResult> {
    minimal_dnf_with_budget(f, objective, &Budget::default())
}

/// Branch and bound seeded with the greedy cover. When the node budget runs
/// out the best cover found so far is returned with `proved_optimal = false`.
pub fn minimal_dnf_with_budget(
    f: &FewZeroFunction,
    objective: Objective,
    budget: &Budget,
) -> Result<SolveResult> {
    let (table, prime_count) = table(f, objective, Mode::One, budget)?;
    let outcome = cover::solve(&table, Mode::One, table.greedy(), budget.max_nodes);
    let best = outcome.solutions.first().expect("incumbent always present");
    Ok(SolveResult {
        dnf: to_dnf(&table, best),
        optimum: outcome.best_cost,
        objective,
        nodes_explored: outcome.nodes,
        proved_optimal: outcome.complete,
        prime_count,
    })
}

/// Every optimal DNF made of prime implicants, sorted.
pub fn all_minimal_dnfs(f: &FewZeroFunction, objective: Objective) -> Result<Vec<Dnf>> {
    all_minimal_dnfs_with_budget(f, objective, &Budget::default())
}

pub fn all_minimal_dnfs_with_budget(
    f: &FewZeroFunction,
    objective: Objective,
    budget: &Budget,
) -> Result<Vec<Dnf>> {
    let (table, _) = table(f, objective, Mode::All, budget)?;
    let outcome = cover::solve(&table, Mode::All, table.greedy(), budget.max_nodes);
    if !outcome.complete {
        return Err(Error::ResourceLimit(format!(
            "enumeration of optima stopped after {} nodes",
            outcome.nodes
        )));
    }
    let mut out: Vec<Dnf> = outcome
        .solutions
        .iter()
        .map(|s| to_dnf(&table, s))
        .collect();
    out.sort();
    Ok(out)
}

/// Greedy cover over prime implicants; an upper bound for both objectives.
pub fn greedy_dnf(f: &FewZeroFunction, objective: Objective) -> Result<Dnf> {
    let (table, _) = table(f, objective, Mode::One, &Budget::default())?;
    Ok(to_dnf(&table, &table.greedy()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::complete_function;

    fn parity3() -> FewZeroFunction {
        FewZeroFunction::from_rows(&["000", "011", "101", "110"]).unwrap()
    }

    fn dnf(lists: &[&[i64]]) -> Dnf {
        Dnf::from_signed(&lists.iter().map(|l| l.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn realizes_examples() {
        let f = complete_function(3).unwrap();
        let full = dnf(&[&[1, 2], &[1, 3], &[2, 3], &[-1, -2, -3]]);
        assert!(realizes(&f, &full).unwrap());
        let missing = dnf(&[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(!realizes(&f, &missing).unwrap());
        let bad = dnf(&[&[1, 2], &[1, 3], &[2, 3], &[-1, -2]]);
        assert!(!realizes(&f, &bad).unwrap());
        assert!(realizes(&f, &dnf(&[&[4]])).is_err());
    }

    #[test]
    fn coverage_certificate_agrees_with_enumeration() {
        let f = complete_function(3).unwrap();
        let tight = Budget {
            max_enumerated_vars: 0,
            ..Budget::default()
        };
        for d in [
            dnf(&[&[1, 2], &[1, 3], &[2, 3], &[-1, -2, -3]]),
            dnf(&[&[1, 2], &[1, 3], &[2, 3]]),
            dnf(&[&[1, 2], &[1, 3], &[-1, -2, -3]]),
        ] {
            assert_eq!(
                realizes_with_budget(&f, &d, &tight).unwrap(),
                realizes(&f, &d).unwrap()
            );
        }
    }

    #[test]
    fn single_zero_needs_every_variable() {
        for n in 3..=8 {
            let f = FewZeroFunction::from_points(n, &[0]).unwrap();
            let r = minimal_dnf(&f, Objective::Rank).unwrap();
            assert!(r.proved_optimal);
            assert_eq!(r.optimum, n as u64);
            assert_eq!(r.dnf.length(), n);
            assert_eq!(all_minimal_dnfs(&f, Objective::Rank).unwrap().len(), 1);
            assert_eq!(
                Objective::Rank.measure(&greedy_dnf(&f, Objective::Rank).unwrap()),
                n as u64
            );
        }
    }

    #[test]
    fn parity_and_complete_optima() {
        let p = parity3();
        let r = minimal_dnf(&p, Objective::Rank).unwrap();
        assert_eq!((r.optimum, r.dnf.length()), (12, 4));
        assert_eq!(minimal_dnf(&p, Objective::Length).unwrap().optimum, 4);
        assert_eq!(all_minimal_dnfs(&p, Objective::Rank).unwrap().len(), 1);
        assert_eq!(
            Objective::Rank.measure(&greedy_dnf(&p, Objective::Rank).unwrap()),
            12
        );

        let c = complete_function(3).unwrap();
        let r = minimal_dnf(&c, Objective::Rank).unwrap();
        assert_eq!(r.optimum, 9);
        assert!(realizes(&c, &r.dnf).unwrap());
        assert_eq!(minimal_dnf(&c, Objective::Length).unwrap().optimum, 4);
        let all = all_minimal_dnfs(&c, Objective::Rank).unwrap();
        assert_eq!(all, vec![dnf(&[&[1, 2], &[1, 3], &[2, 3], &[-1, -2, -3]])]);
    }

    #[test]
    fn greedy_bounds_exact_on_complete4() {
        let c = complete_function(4).unwrap();
        for objective in [Objective::Rank, Objective::Length] {
            let exact = minimal_dnf(&c, objective).unwrap();
            let greedy = greedy_dnf(&c, objective).unwrap();
            assert!(realizes(&c, &greedy).unwrap());
            assert!(objective.measure(&greedy) >= exact.optimum);
        }
    }

    #[test]
    fn node_budget_returns_unproved_incumbent() {
        let c = complete_function(4).unwrap();
        let r = minimal_dnf_with_budget(&c, Objective::Rank, &Budget::with_nodes(1)).unwrap();
        assert!(!r.proved_optimal);
        assert!(realizes(&c, &r.dnf).unwrap());
        assert!(matches!(
            all_minimal_dnfs_with_budget(&c, Objective::Rank, &Budget::with_nodes(1)),
            Err(Error::ResourceLimit(_))
        ));
    }
}

#[cfg(test)]
mod constant_false {
    use super::*;

    #[test]
    fn constant_false_has_empty_dnf() {
        let f = FewZeroFunction::from_rows(&["0", "1"]).unwrap();
        assert!(enumerate_prime_implicants_limited(&f, 10)
            .unwrap()
            .is_empty());
        let r = minimal_dnf(&f, Objective::Rank).unwrap();
        assert_eq!(r.optimum, 0);
        assert!(realizes(&f, &r.dnf).unwrap());
    }
}
