//! Complete enumeration of nondecreasing positive solutions of
//! `sigma_k(x) = sigma_n(x)`.
//!
//! Depth-first search over prefixes `x_1 <= ... <= x_t`, `t <= n - 2`, each
//! coordinate restricted by [`expand_range`]; the last two coordinates come
//! from divisor pairs ([`complete_last_two`]). The tree is cut at depth two
//! and the resulting subtrees are searched independently, then concatenated
//! in frontier order, so the output does not depend on scheduling.

mod prefix;

pub use prefix::{
    complete_last_one, complete_last_two, completion_parts, expand_range, tail_cap_v,
    CompletionParts, PrefixState,
};

use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use crate::arith::Natural;
use crate::par::{map_ordered, Execution};
use crate::symfunc::{product, residual, SolutionTuple};
use crate::{Error, Result};
use prefix::Problem;

/// Depth at which the search tree is split into independent work items.
const SPLIT_DEPTH: usize = 2;

/// How the final coordinates are filled in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    /// Search `n - 2` coordinates, solve the last two from divisor pairs.
    #[default]
    DivisorPair,
    /// Search `n - 1` coordinates, solve the last one linearly. Slower; used as
    /// an independent cross-check of the divisor route.
    LinearLast,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Cap on visited search nodes, summed over all workers.
    pub max_nodes: u64,
    pub max_duration: Option<Duration>,
    pub execution: Execution,
    pub completion: Completion,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_nodes: 200_000_000,
            max_duration: None,
            execution: Execution::default(),
            completion: Completion::default(),
        }
    }
}

/// Extremal values over a complete solution set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    /// `M_{k,n}`: largest last coordinate.
    pub max_last: Natural,
    /// `N^(0)_{k,n}`: largest full product.
    pub max_product: Natural,
    /// `N^(2)_{k,n}`: largest product of the first `n - 2` coordinates.
    pub max_head_product: Natural,
    pub min_product: Natural,
}

impl Stats {
    fn from_solutions(n: usize, solutions: &[SolutionTuple]) -> Option<Stats> {
        let products: Vec<Natural> = solutions.iter().map(SolutionTuple::product).collect();
        Some(Stats {
            max_last: solutions.iter().map(|s| s.last()).max()?.clone(),
            max_product: products.iter().max()?.clone(),
            min_product: products.iter().min()?.clone(),
            max_head_product: solutions
                .iter()
                .map(|s| product(&s.entries()[..n - 2]))
                .max()?,
        })
    }
}

/// Sorted, deduplicated solutions for one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub n: usize,
    pub k: usize,
    pub solutions: Vec<SolutionTuple>,
    /// Only sets produced by the exhaustive search are complete.
    pub complete: bool,
    pub stats: Stats,
}

impl SolutionSet {
    /// Checks every tuple (length `n`, residual zero), sorts and deduplicates.
    pub fn new(
        n: usize,
        k: usize,
        mut solutions: Vec<SolutionTuple>,
        complete: bool,
    ) -> Result<Self> {
        if n < 2 || k >= n {
            return Err(Error::invalid(format!(
                "need n >= 2 and k < n, got n = {n}, k = {k}"
            )));
        }
        for s in &solutions {
            if s.len() != n {
                return Err(Error::invalid(format!("{s} does not have length {n}")));
            }
            if !residual(s, k)?.is_zero() {
                return Err(Error::Verification(format!(
                    "{s} does not solve the equation for k = {k}"
                )));
            }
        }
        solutions.sort();
        solutions.dedup();
        let stats = Stats::from_solutions(n, &solutions)
            .ok_or_else(|| Error::Verification(format!("no solutions for n = {n}, k = {k}")))?;
        Ok(SolutionSet {
            n,
            k,
            solutions,
            complete,
            stats,
        })
    }

    pub fn count(&self) -> usize {
        self.solutions.len()
    }
}

pub fn enumerate(n: usize, k: usize) -> Result<SolutionSet> {
    enumerate_with(n, k, &SearchConfig::default())
}

pub fn enumerate_with(n: usize, k: usize, cfg: &SearchConfig) -> Result<SolutionSet> {
    let problem = Problem::new(n, k)?;
    let target = match cfg.completion {
        Completion::DivisorPair => n - 2,
        Completion::LinearLast => n - 1,
    };
    let started = Instant::now();
    let deadline = cfg.max_duration.map(|d| started + d);

    let mut frontier_worker = Worker::new(&problem, target, cfg.max_nodes, deadline);
    let frontier = frontier_worker.frontier(SPLIT_DEPTH.min(target));
    let results = map_ordered(frontier, cfg.execution, |state| {
        let mut w = Worker::new(&problem, target, cfg.max_nodes, deadline);
        w.descend(state);
        w
    })?;

    let mut nodes = frontier_worker.nodes;
    let mut exhausted = frontier_worker.exhausted;
    let mut solutions = frontier_worker.found;
    for w in results {
        nodes += w.nodes;
        exhausted |= w.exhausted;
        solutions.extend(w.found);
    }
    if exhausted || nodes > cfg.max_nodes {
        return Err(Error::BudgetExhausted {
            nodes,
            elapsed: started.elapsed(),
        });
    }
    let set = SolutionSet::new(n, k, solutions, true)?;
    Ok(set)
}

/// `f_k(n)`, the number of solutions.
pub fn count_solutions(n: usize, k: usize) -> Result<Natural> {
    let set = enumerate(n, k)?;
    let count = Natural::from(set.count());
    if count < Natural::one() {
        return Err(Error::Verification(format!(
            "f_{k}({n}) = 0 contradicts existence"
        )));
    }
    Ok(count)
}

pub fn extremal_stats(set: &SolutionSet) -> Result<Stats> {
    if !set.complete {
        return Err(Error::invalid(
            "extremal statistics need a complete solution set",
        ));
    }
    Ok(set.stats.clone())
}

/// Single-threaded search state; one per work item.
struct Worker<'a> {
    problem: &'a Problem,
    target: usize,
    max_nodes: u64,
    deadline: Option<Instant>,
    nodes: u64,
    exhausted: bool,
    found: Vec<SolutionTuple>,
}

impl<'a> Worker<'a> {
    fn new(problem: &'a Problem, target: usize, max_nodes: u64, deadline: Option<Instant>) -> Self {
        Worker {
            problem,
            target,
            max_nodes,
            deadline,
            nodes: 0,
            exhausted: false,
            found: Vec::new(),
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes || self.deadline.is_some_and(|d| Instant::now() > d) {
            self.exhausted = true;
        }
        !self.exhausted
    }

    /// Breadth-first expansion to `depth`. Nodes that already sit at the
    /// completion depth are completed here.
    fn frontier(&mut self, depth: usize) -> Vec<PrefixState> {
        let mut level = vec![PrefixState::empty()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for state in &level {
                if !self.tick() {
                    return Vec::new();
                }
                self.children(state, |child| next.push(child));
            }
            level = next;
        }
        level
    }

    fn children(&self, state: &PrefixState, mut f: impl FnMut(PrefixState)) {
        if let Some((lo, hi)) = self.problem.expand_range(state) {
            let mut w = lo;
            while w <= hi {
                f(state.push(&w));
                w += 1u32;
            }
        }
    }

    fn descend(&mut self, state: PrefixState) {
        if self.exhausted || !self.tick() {
            return;
        }
        if state.len() == self.target {
            self.complete(&state);
            return;
        }
        let Some((lo, hi)) = self.problem.expand_range(&state) else {
            return;
        };
        let mut w = lo;
        while w <= hi && !self.exhausted {
            self.descend(state.push(&w));
            w += 1u32;
        }
    }

    fn complete(&mut self, state: &PrefixState) {
        let head = state.values();
        if head.len() + 2 == self.problem.n {
            for (y, z) in self.problem.complete_last_two(state) {
                let mut full = head.to_vec();
                full.push(y);
                full.push(z);
                self.found
                    .push(SolutionTuple::new(full).expect("completion keeps order"));
            }
        } else if let Some(z) = self.problem.complete_last_one(state) {
            let mut full = head.to_vec();
            full.push(z);
            let t = SolutionTuple::new(full).expect("completion keeps order");
            if residual(&t, self.problem.k).is_ok_and(|r| r.is_zero()) {
                self.found.push(t);
            }
        }
    }
}
