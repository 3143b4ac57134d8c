//! Weighted set cover of the ones of `f` by prime-implicant faces.
//!
//! Points with identical or larger sets of covering primes are dropped
//! (covering the smaller set covers them too), and primes whose rows are a
//! subset of a no-more-expensive prime's rows are dropped. What remains is
//! solved by branch and bound on the row with the fewest candidate primes,
//! bounded by a Lagrangian relaxation whose multipliers are passed down the
//! tree.

use std::collections::HashSet;

use rayon::prelude::*;

use super::bitset::BitSet;
use crate::dnf::{Conjunction, Objective};
use crate::error::{Error, Result};
use crate::model::FewZeroFunction;

/// Which optima the reductions must preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// At least one optimum.
    One,
    /// Every optimum.
    All,
}

pub(crate) struct CoverTable {
    pub primes: Vec<Conjunction>,
    pub costs: Vec<u64>,
    /// Per row: indices of primes covering it.
    pub rows: Vec<BitSet>,
    /// Per prime: rows it covers.
    pub prime_rows: Vec<BitSet>,
}

/// Keeps only inclusion-minimal sets, sorted by size then content.
fn minimal_sets(mut sets: Vec<BitSet>) -> Vec<BitSet> {
    sets.sort_by(|a, b| {
        a.count()
            .cmp(&b.count())
            .then_with(|| a.iter().cmp(b.iter()))
    });
    sets.dedup();
    let mut kept: Vec<BitSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

fn transpose(rows: &[BitSet], columns: usize) -> Vec<BitSet> {
    let mut out = vec![BitSet::new(rows.len()); columns];
    for (r, row) in rows.iter().enumerate() {
        for p in row.iter() {
            out[p].insert(r);
        }
    }
    out
}

impl CoverTable {
    pub fn build(
        f: &FewZeroFunction,
        primes: Vec<Conjunction>,
        objective: Objective,
        mode: Mode,
        max_vars: usize,
    ) -> Result<Self> {
        let n = f.n();
        if n > max_vars {
            return Err(Error::LimitExceeded {
                what: "n",
                value: n,
                limit: max_vars,
            });
        }
        let p_count = primes.len();
        let masks: Vec<(u64, u64)> = primes
            .iter()
            .map(|c| (c.support(), c.positive_mask()))
            .collect();

        let distinct: HashSet<BitSet> = (0..1u64 << n)
            .into_par_iter()
            .filter(|&p| f.evaluate_point(p))
            .fold(HashSet::new, |mut acc, p| {
                let mut s = BitSet::new(p_count);
                for (i, &(support, pos)) in masks.iter().enumerate() {
                    if p & support == pos {
                        s.insert(i);
                    }
                }
                acc.insert(s);
                acc
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        if distinct.iter().any(BitSet::is_empty) {
            return Err(Error::InvalidParameter(
                "prime implicants do not cover every one of f".into(),
            ));
        }
        let mut rows = minimal_sets(distinct.into_iter().collect());
        let costs: Vec<u64> = primes.iter().map(|c| objective.cost(c)).collect();

        let mut active = BitSet::full(p_count);
        loop {
            let prime_rows = transpose(&rows, p_count);
            let mut changed = false;
            let candidates: Vec<usize> = active.iter().collect();
            for &a in &candidates {
                let ca = &prime_rows[a];
                let dominated = ca.is_empty()
                    || candidates.iter().any(|&b| {
                        b != a
                            && active.contains(b)
                            && ca.is_subset(&prime_rows[b])
                            && match mode {
                                Mode::All => costs[b] < costs[a],
                                Mode::One => {
                                    costs[b] < costs[a]
                                        || (costs[b] == costs[a] && (*ca != prime_rows[b] || b < a))
                                }
                            }
                    });
                if dominated {
                    active.remove(a);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            rows = minimal_sets(rows.iter().map(|r| r.intersection(&active)).collect());
        }

        // Reindex to active primes only.
        let kept: Vec<usize> = active.iter().collect();
        let mut index = vec![usize::MAX; p_count];
        for (new, &old) in kept.iter().enumerate() {
            index[old] = new;
        }
        let rows: Vec<BitSet> = rows
            .iter()
            .map(|r| {
                let mut s = BitSet::new(kept.len());
                for p in r.iter() {
                    s.insert(index[p]);
                }
                s
            })
            .collect();
        let prime_rows = transpose(&rows, kept.len());
        Ok(CoverTable {
            primes: kept.iter().map(|&i| primes[i]).collect(),
            costs: kept.iter().map(|&i| costs[i]).collect(),
            rows,
            prime_rows,
        })
    }

    pub fn cost_of(&self, chosen: &[usize]) -> u64 {
        chosen.iter().map(|&p| self.costs[p]).sum()
    }

    /// Greedy cover by best cost per newly covered row, followed by removal
    /// of redundant picks. Ties go to the lower prime index.
    pub fn greedy(&self) -> Vec<usize> {
        let mut uncovered = BitSet::full(self.rows.len());
        let mut chosen = Vec::new();
        while !uncovered.is_empty() {
            let mut best: Option<(usize, usize)> = None;
            for (p, pr) in self.prime_rows.iter().enumerate() {
                let gain = pr.intersection_count(&uncovered);
                if gain == 0 {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bp, bg)) => (gain as u64) * self.costs[bp] > (bg as u64) * self.costs[p],
                };
                if better {
                    best = Some((p, gain));
                }
            }
            let (p, _) = best.expect("every row has a covering prime");
            uncovered.difference_with(&self.prime_rows[p]);
            chosen.push(p);
        }
        for i in (0..chosen.len()).rev() {
            let mut covered = BitSet::new(self.rows.len());
            for (j, &p) in chosen.iter().enumerate() {
                if j != i {
                    covered.union_with(&self.prime_rows[p]);
                }
            }
            if covered.count() == self.rows.len() {
                chosen.remove(i);
            }
        }
        chosen.sort_unstable();
        chosen
    }
}

pub(crate) struct SearchOutcome {
    pub best_cost: u64,
    pub solutions: Vec<Vec<usize>>,
    pub nodes: u64,
    pub complete: bool,
}

/// Subgradient steps per node; the root gets more since its multipliers
/// seed every descendant.
const ROOT_STEPS: usize = 300;
const NODE_STEPS: usize = 25;

struct Search<'a> {
    table: &'a CoverTable,
    mode: Mode,
    best_cost: u64,
    solutions: Vec<Vec<usize>>,
    nodes: u64,
    max_nodes: Option<u64>,
    aborted: bool,
}

/// Lagrangian bound for the rows still uncovered, over allowed primes.
struct Relaxation {
    bound: f64,
    /// `cost - sum of multipliers of uncovered rows`, per prime.
    reduced: Vec<f64>,
}

impl Search<'_> {
    fn prunes(&self, cost: u64) -> bool {
        match self.mode {
            Mode::One => cost >= self.best_cost,
            Mode::All => cost > self.best_cost,
        }
    }

    fn evaluate(&self, rows: &[usize], primes: &[usize], u: &[f64], reduced: &mut [f64]) -> f64 {
        let t = self.table;
        let mut value: f64 = rows.iter().map(|&r| u[r]).sum();
        for &p in primes {
            reduced[p] = t.costs[p] as f64;
        }
        for &r in rows {
            for p in t.rows[r].iter() {
                reduced[p] -= u[r];
            }
        }
        for &p in primes {
            value += reduced[p].min(0.0);
        }
        value
    }

    /// Improves `u` by subgradient steps and returns the best bound seen.
    /// Stops early once the bound prunes at `cost`.
    /// With `repair_from`, every step also tries the repair heuristic on the
    /// current reduced costs.
    fn relax(
        &mut self,
        uncovered: &BitSet,
        allowed: &BitSet,
        u: &mut Vec<f64>,
        cost: u64,
        steps: usize,
        repair_from: Option<&[usize]>,
    ) -> Relaxation {
        let t = self.table;
        let rows: Vec<usize> = uncovered.iter().collect();
        let primes: Vec<usize> = allowed
            .iter()
            .filter(|&p| t.prime_rows[p].intersects(uncovered))
            .collect();
        let mut reduced = vec![0f64; t.primes.len()];
        let mut best = Relaxation {
            bound: f64::NEG_INFINITY,
            reduced: Vec::new(),
        };
        let mut target = self.best_cost.saturating_sub(cost) as f64;
        let mut best_u = u.clone();
        let mut lambda = 2.0;
        let mut stale = 0;
        let mut g = vec![0f64; t.rows.len()];
        for step in 0..=steps {
            let value = self.evaluate(&rows, &primes, u, &mut reduced);
            if let Some(chosen) = repair_from {
                self.repair(uncovered, allowed, chosen, cost, &reduced);
            }
            if value > best.bound + 1e-9 {
                best.bound = value;
                best.reduced.clone_from(&reduced);
                best_u.clone_from(u);
                stale = 0;
            } else {
                stale += 1;
                if stale >= 4 {
                    lambda /= 2.0;
                    stale = 0;
                }
            }
            if step == steps || self.prunes(cost + ceil(best.bound)) || lambda < 1e-3 {
                break;
            }
            for &r in &rows {
                g[r] = 1.0;
            }
            for &p in &primes {
                if reduced[p] < 0.0 {
                    for r in t.prime_rows[p].iter() {
                        g[r] -= 1.0;
                    }
                }
            }
            let norm: f64 = rows.iter().map(|&r| g[r] * g[r]).sum();
            if norm == 0.0 {
                break;
            }
            target = target.min(self.best_cost.saturating_sub(cost) as f64);
            let gap = (target - value).max(1.0);
            let stepsize = lambda * gap / norm;
            for &r in &rows {
                u[r] = (u[r] + stepsize * g[r]).max(0.0);
            }
        }
        *u = best_u;
        best
    }

    /// Completes `chosen` to a cover: primes with negative reduced cost
    /// first, then greedy by cost per new row, then drops redundant picks.
    fn repair(
        &mut self,
        uncovered: &BitSet,
        allowed: &BitSet,
        chosen: &[usize],
        cost: u64,
        reduced: &[f64],
    ) {
        let t = self.table;
        let mut left = uncovered.clone();
        let mut picks: Vec<usize> = allowed
            .iter()
            .filter(|&p| {
                reduced.get(p).is_some_and(|&rc| rc < 0.0) && t.prime_rows[p].intersects(uncovered)
            })
            .collect();
        for &p in &picks {
            left.difference_with(&t.prime_rows[p]);
        }
        while !left.is_empty() {
            let best = allowed
                .iter()
                .filter_map(|p| {
                    let gain = t.prime_rows[p].intersection_count(&left);
                    (gain > 0).then_some((p, gain))
                })
                .min_by(|&(a, ga), &(b, gb)| {
                    ((t.costs[a] as u128) * (gb as u128))
                        .cmp(&((t.costs[b] as u128) * (ga as u128)))
                        .then(a.cmp(&b))
                });
            let Some((p, _)) = best else { return };
            left.difference_with(&t.prime_rows[p]);
            picks.push(p);
        }
        // Drop redundant picks, most expensive first.
        picks.sort_by(|&a, &b| t.costs[b].cmp(&t.costs[a]).then(a.cmp(&b)));
        let mut i = 0;
        while i < picks.len() {
            let mut covered = BitSet::new(t.rows.len());
            for (j, &p) in picks.iter().enumerate() {
                if j != i {
                    covered.union_with(&t.prime_rows[p]);
                }
            }
            if uncovered.is_subset(&covered) {
                picks.remove(i);
            } else {
                i += 1;
            }
        }
        let total = cost + t.cost_of(&picks);
        if total < self.best_cost {
            let mut sol = chosen.to_vec();
            sol.extend(picks);
            self.record(&sol, total);
        }
    }

    fn record(&mut self, chosen: &[usize], cost: u64) {
        let mut sol = chosen.to_vec();
        sol.sort_unstable();
        if cost < self.best_cost {
            self.best_cost = cost;
            self.solutions.clear();
        }
        self.solutions.push(sol);
    }

    fn dfs(
        &mut self,
        uncovered: &BitSet,
        allowed: &mut BitSet,
        chosen: &mut Vec<usize>,
        cost: u64,
        u: &[f64],
        steps: usize,
    ) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.nodes > m) {
            self.aborted = true;
            return;
        }
        if uncovered.is_empty() {
            let accept = match self.mode {
                Mode::One => cost < self.best_cost,
                Mode::All => cost <= self.best_cost,
            };
            if accept {
                self.record(chosen, cost);
            }
            return;
        }
        let t = self.table;
        let mut u = u.to_vec();
        let root = chosen.is_empty();
        let relax = self.relax(
            uncovered,
            allowed,
            &mut u,
            cost,
            steps,
            root.then_some(&chosen[..]),
        );
        if self.prunes(cost + ceil(relax.bound)) {
            return;
        }
        self.repair(uncovered, allowed, chosen, cost, &relax.reduced);
        // A prime whose reduced cost lifts the bound past the incumbent
        // cannot appear in a better cover.
        let mut removed = Vec::new();
        for p in allowed.iter().collect::<Vec<_>>() {
            let rc = relax.reduced.get(p).copied().unwrap_or(0.0).max(0.0);
            if !t.prime_rows[p].intersects(uncovered) || self.prunes(cost + ceil(relax.bound + rc))
            {
                allowed.remove(p);
                removed.push(p);
            }
        }
        let pick = uncovered
            .iter()
            .map(|r| (t.rows[r].intersection_count(allowed), r))
            .min();
        // A row left without candidates ends the branch.
        if let Some((_, row)) = pick.filter(|&(c, _)| c > 0) {
            let mut candidates: Vec<usize> = t.rows[row]
                .iter()
                .filter(|&p| allowed.contains(p))
                .collect();
            // Smallest reduced cost first.
            candidates.sort_by(|&a, &b| {
                relax.reduced[a]
                    .total_cmp(&relax.reduced[b])
                    .then(a.cmp(&b))
            });
            for p in candidates {
                allowed.remove(p);
                removed.push(p);
                let mut next = uncovered.clone();
                next.difference_with(&t.prime_rows[p]);
                chosen.push(p);
                self.dfs(&next, allowed, chosen, cost + t.costs[p], &u, NODE_STEPS);
                chosen.pop();
                if self.aborted {
                    break;
                }
            }
        }
        for p in removed {
            allowed.insert(p);
        }
    }
}

/// Smallest integer not below `x`, with slack for rounding.
fn ceil(x: f64) -> u64 {
    (x - 1e-6).ceil().max(0.0) as u64
}

/// Exact search. `incumbent` seeds the upper bound and is returned if the
/// search cannot improve on it.
///
/// The optimum is found by deepening: for each target cost from the root
/// bound upward, search for a cover no more expensive than the target. A
/// failed target is a proof, and pruning against a target below the
/// optimum is as tight as it gets. Mode::All then collects every cover at
/// the optimum.
pub(crate) fn solve(
    table: &CoverTable,
    mode: Mode,
    incumbent: Vec<usize>,
    max_nodes: Option<u64>,
) -> SearchOutcome {
    let incumbent_cost = table.cost_of(&incumbent);
    let uncovered = BitSet::full(table.rows.len());
    let full = BitSet::full(table.primes.len());
    // Start every row at its cheapest per-row price.
    let mut u: Vec<f64> = table
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|p| table.costs[p] as f64 / table.prime_rows[p].count() as f64)
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut search = Search {
        table,
        mode: Mode::One,
        best_cost: incumbent_cost,
        solutions: vec![incumbent],
        nodes: 0,
        max_nodes,
        aborted: false,
    };
    let root = search.relax(&uncovered, &full, &mut u, 0, ROOT_STEPS, Some(&[]));
    let mut target = ceil(root.bound);
    while target < search.best_cost {
        let (cost, solutions) = (search.best_cost, std::mem::take(&mut search.solutions));
        search.best_cost = target + 1;
        search.dfs(
            &uncovered,
            &mut full.clone(),
            &mut Vec::new(),
            0,
            &u,
            NODE_STEPS,
        );
        if search.aborted || search.best_cost <= target {
            if search.best_cost > target {
                (search.best_cost, search.solutions) = (cost, solutions);
            }
            break;
        }
        (search.best_cost, search.solutions) = (cost, solutions);
        target += 1;
    }
    if mode == Mode::All && !search.aborted {
        search.mode = Mode::All;
        search.solutions.clear();
        search.dfs(
            &uncovered,
            &mut full.clone(),
            &mut Vec::new(),
            0,
            &u,
            NODE_STEPS,
        );
        search.solutions.sort();
        search.solutions.dedup();
    }
    SearchOutcome {
        best_cost: search.best_cost,
        solutions: search.solutions,
        nodes: search.nodes,
        complete: !search.aborted,
    }
}
