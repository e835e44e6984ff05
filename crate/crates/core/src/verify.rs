//! Exact checks of the known inequalities for solutions, the dominance property
//! of the `v` tuple, and equality cases of the product lower bound.
//!
//! Fractional powers are removed by raising both sides to an integer power, so
//! every verdict is an integer or rational comparison.

use std::fmt;

use num_traits::{One, Pow, Zero};

use crate::arith::{binomial, exact_root, factorial, nat, ratio_int, Natural, Ratio};
use crate::par::{map_ordered, Execution};
use crate::sequences::{sylvester_u, v_sequence, VMethod};
use crate::solver::SolutionSet;
use crate::symfunc::{pair_sum, product, reciprocal_sum, residual, SolutionTuple};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `lhs <= rhs`
    Upper,
    /// `lhs >= rhs`
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub lhs: Ratio,
    pub rhs: Ratio,
    pub kind: BoundKind,
    pub holds: bool,
    /// Nonnegative exactly when the check holds.
    pub slack: Ratio,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: Ratio, rhs: Ratio, kind: BoundKind) -> Self {
        let slack = match kind {
            BoundKind::Upper => &rhs - &lhs,
            BoundKind::Lower => &lhs - &rhs,
        };
        Check {
            name: name.into(),
            holds: slack >= Ratio::zero(),
            lhs,
            rhs,
            kind,
            slack,
        }
    }

    fn upper(name: impl Into<String>, lhs: &Natural, rhs: &Natural) -> Self {
        Check::new(name, ratio_int(lhs), ratio_int(rhs), BoundKind::Upper)
    }

    fn lower(name: impl Into<String>, lhs: &Natural, rhs: &Natural) -> Self {
        Check::new(name, ratio_int(lhs), ratio_int(rhs), BoundKind::Lower)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            BoundKind::Upper => "<=",
            BoundKind::Lower => ">=",
        };
        let verdict = if self.holds { "ok" } else { "FAILED" };
        write!(
            f,
            "{}: {} {op} {} (slack {}) {verdict}",
            self.name, self.lhs, self.rhs, self.slack
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub subject: SolutionTuple,
    pub k: usize,
    pub checks: Vec<Check>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluates every inequality that applies to a solution `t` for `k`.
pub fn check_bounds(t: &SolutionTuple, k: usize) -> Result<BoundReport> {
    if !residual(t, k)?.is_zero() {
        return Err(Error::invalid(format!("{t} is not a solution for k = {k}")));
    }
    let n = t.len();
    let n64 = n as u64;
    let x = t.entries();
    let last = t.last();
    let prod = t.product();
    let mut checks = vec![Check::lower(
        "sigma_n^(n-k) >= C(n,k)^n",
        &Pow::pow(&prod, (n - k) as u32),
        &Pow::pow(binomial(n64, k as u64), n as u32),
    )];

    if k == 1 {
        checks.push(Check::upper("x_n <= n", last, &nat(n64)));
        checks.push(Check::upper("x_1...x_n <= 2n", &prod, &nat(2 * n64)));
    }
    if k == 2 && n >= 3 {
        checks.push(Check::upper(
            "x_n <= n(3n-5)/2",
            last,
            &nat(n64 * (3 * n64 - 5) / 2),
        ));
        checks.push(Check::upper(
            "x_1...x_n <= n^2(3n-5)",
            &prod,
            &nat(n64 * n64 * (3 * n64 - 5)),
        ));
    }
    if k + 1 == n {
        let u = sylvester_u(n)?;
        checks.push(Check::upper("x_n <= u_n - 1", last, &(u.value(n) - 1u32)));
        for j in 0..n {
            checks.push(Check::upper(
                format!("x_{} <= {}u_{}", n - j, j + 1, n - j),
                &x[n - j - 1],
                &(nat(j as u64 + 1) * u.value(n - j)),
            ));
        }
        checks.push(Check::upper(
            "x_1...x_n <= n! u_1...u_n",
            &prod,
            &(factorial(n64) * u.product(n)),
        ));
    }
    if k + 2 == n {
        let v = v_sequence(n.max(2), VMethod::Rec2)?;
        checks.push(Check::upper("x_n <= v_n - 1", last, &(v.value(n) - 1u32)));
        for j in 0..n {
            checks.push(Check::upper(
                format!("x_{} <= {}v_{}", n - j, 2 * (j + 1), n - j),
                &x[n - j - 1],
                &(nat(2 * (j as u64 + 1)) * v.value(n - j)),
            ));
        }
        let pow2 = |e: usize| Natural::one() << e;
        checks.push(Check::upper(
            "x_1...x_n <= 2^(n-1) n! v_1...v_n",
            &prod,
            &(pow2(n - 1) * factorial(n64) * v.product(n)),
        ));
        checks.push(Check::upper(
            "x_1...x_(n-2) <= 2^(n-2) (n-1)! v_1...v_(n-2)",
            &product(&x[..n - 2]),
            &(pow2(n - 2) * factorial(n64 - 1) * v.product(n - 2)),
        ));
    }
    Ok(BoundReport {
        subject: t.clone(),
        k,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dominance {
    /// False when the pair sum is at least 1 and the comparison says nothing.
    pub applies: bool,
    pub q_ok: bool,
    pub s_ok: bool,
    pub pair_sum: Ratio,
    pub reciprocal_sum: Ratio,
}

/// Compares the pair sum and reciprocal sum of `b` with those of
/// `(v_1, ..., v_n)`, provided the pair sum of `b` is below 1.
pub fn check_dominance(b: &SolutionTuple) -> Result<Dominance> {
    let n = b.len();
    let q = if n >= 2 { pair_sum(b)? } else { Ratio::zero() };
    let s = reciprocal_sum(b);
    if q >= Ratio::one() {
        return Ok(Dominance {
            applies: false,
            q_ok: false,
            s_ok: false,
            pair_sum: q,
            reciprocal_sum: s,
        });
    }
    let v = v_sequence(n.max(2), VMethod::Rec2)?;
    Ok(Dominance {
        applies: true,
        q_ok: &q <= v.q(n),
        s_ok: &s <= v.s(n),
        pair_sum: q,
        reciprocal_sum: s,
    })
}

/// Largest pair sum below 1 and largest reciprocal sum among those tuples,
/// with the lexicographically first tuple attaining each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRecord {
    pub n: usize,
    pub cap: u64,
    pub scanned: u64,
    pub max_pair_sum: Ratio,
    pub pair_argmax: SolutionTuple,
    pub max_reciprocal_sum: Ratio,
    pub reciprocal_argmax: SolutionTuple,
}

impl SweepRecord {
    /// Both maxima are attained by `(v_1, ..., v_n)` with its exact values.
    pub fn matches_v(&self) -> Result<bool> {
        let v = v_sequence(self.n.max(2), VMethod::Rec2)?;
        let vt = SolutionTuple::new(v.values()[..self.n].to_vec())?;
        Ok(self.pair_argmax == vt
            && self.reciprocal_argmax == vt
            && &self.max_pair_sum == v.q(self.n)
            && &self.max_reciprocal_sum == v.s(self.n))
    }

    fn absorb(&mut self, other: SweepRecord) {
        self.scanned += other.scanned;
        if other.max_pair_sum > self.max_pair_sum {
            self.max_pair_sum = other.max_pair_sum;
            self.pair_argmax = other.pair_argmax;
        }
        if other.max_reciprocal_sum > self.max_reciprocal_sum {
            self.max_reciprocal_sum = other.max_reciprocal_sum;
            self.reciprocal_argmax = other.reciprocal_argmax;
        }
    }
}

pub fn dominance_sweep(n: usize, cap: u64) -> Result<SweepRecord> {
    dominance_sweep_with(n, cap, Execution::default())
}

/// Scans every nondecreasing tuple of length `n` (3 or 4) with entries at most
/// `cap` and pair sum below 1.
pub fn dominance_sweep_with(n: usize, cap: u64, exec: Execution) -> Result<SweepRecord> {
    if !(3..=4).contains(&n) {
        return Err(Error::invalid(format!(
            "sweep supports n = 3 or 4, got {n}"
        )));
    }
    let v = v_sequence(n, VMethod::Rec2)?;
    if nat(cap) < *v.value(n) {
        return Err(Error::Config(format!(
            "cap {cap} is below v_{n} = {}",
            v.value(n)
        )));
    }
    let parts = map_ordered((1..=cap).collect(), exec, |first| sweep_from(n, cap, first))?;
    let mut it = parts.into_iter().flatten();
    let mut best = it
        .next()
        .ok_or_else(|| Error::Verification("no tuple with pair sum below 1".into()))?;
    for r in it {
        best.absorb(r);
    }
    Ok(best)
}

fn sweep_from(n: usize, cap: u64, first: u64) -> Option<SweepRecord> {
    let mut best: Option<SweepRecord> = None;
    let mut tuple = vec![first; n];
    loop {
        let t = SolutionTuple::from_u64(&tuple).expect("nondecreasing positive");
        let q = pair_sum(&t).expect("n >= 3");
        if q < Ratio::one() {
            let s = reciprocal_sum(&t);
            let rec = SweepRecord {
                n,
                cap,
                scanned: 1,
                max_pair_sum: q,
                pair_argmax: t.clone(),
                max_reciprocal_sum: s,
                reciprocal_argmax: t,
            };
            match &mut best {
                None => best = Some(rec),
                Some(b) => b.absorb(rec),
            }
        }
        // next nondecreasing tuple with fixed first entry, in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| tuple[i] < cap) else {
            return best;
        };
        tuple[i] += 1;
        for j in i + 1..n {
            tuple[j] = tuple[i];
        }
    }
}

/// The constant tuple with equality in the product lower bound, if any.
pub fn equality_case(n: usize, k: usize) -> Result<Option<SolutionTuple>> {
    if k == 0 || k >= n {
        return Err(Error::invalid(format!(
            "need 1 <= k < n, got n = {n}, k = {k}"
        )));
    }
    // a constant tuple x solves the equation iff x^(n-k) = C(n,k)
    let c = binomial(n as u64, k as u64);
    let Some(x) = exact_root(&c, (n - k) as u32) else {
        return Ok(None);
    };
    let t = SolutionTuple::new(vec![x; n])?;
    let report = check_bounds(&t, k)?;
    if !report.checks[0].slack.is_zero() {
        return Err(Error::Verification(format!("{t} is not an equality case")));
    }
    Ok(Some(t))
}

/// Informational checks over a complete solution set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetReport {
    /// `f_k(n) <= M^n`.
    pub count_bound: Check,
    /// For k = n - 2: observed max product against `v_1...v_{n-1}(v_n - 1)`.
    /// An open question, so it is reported and never required.
    pub product_conjecture: Option<Check>,
}

pub fn check_set(set: &SolutionSet) -> Result<SetReport> {
    if !set.complete {
        return Err(Error::invalid("set checks need a complete solution set"));
    }
    let n = set.n;
    let count_bound = Check::upper(
        "f_k(n) <= M^n",
        &Natural::from(set.count()),
        &Pow::pow(&set.stats.max_last, n as u32),
    );
    let product_conjecture = if set.k + 2 == n {
        let v = v_sequence(n.max(2), VMethod::Rec2)?;
        let bound = v.product(n - 1) * (v.value(n) - 1u32);
        Some(Check::upper(
            "max x_1...x_n <= v_1...v_(n-1)(v_n - 1)",
            &set.stats.max_product,
            &bound,
        ))
    } else {
        None
    };
    Ok(SetReport {
        count_bound,
        product_conjecture,
    })
}
